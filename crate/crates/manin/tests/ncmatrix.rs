use manin::ncmatrix::{
    adjugate, det_col, det_col_laplace, det_col_perm_sum, det_row, is_manin, perm_col, perm_norm, perm_row,
    permutation_sign, permutations, rat_det, RatMat,
};
use manin::{rings, Error, Matrix, Poly, Q};
use num_rational::Ratio;
use proptest::prelude::*;

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Leibniz formula over `Ratio<i64>` with permutations built by hand.
fn leibniz(a: &[Vec<i64>]) -> Ratio<i64> {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for pos in 0..=p.len() {
                let mut v = p.clone();
                v.insert(pos, n - 1);
                out.push(v);
            }
        }
        out
    }
    let n = a.len();
    let mut total = Ratio::from(0);
    for p in perms(n) {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        total += Ratio::from(sign * (0..n).map(|i| a[i][p[i]]).product::<i64>());
    }
    total
}

fn int_matrix(max_n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_n).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-6i64..7, n), n))
}

fn entry_words() -> impl Strategy<Value = Vec<(Vec<u16>, i64)>> {
    prop::collection::vec((prop::collection::vec(0u16..8, 0..3), -3i64..4), 0..3)
}

fn poly_from(ring: &std::sync::Arc<manin::Ring>, raw: &[(Vec<u16>, i64)]) -> Poly {
    let g = ring.sys().names().len() as u16;
    raw.iter().fold(Poly::zero(ring), |acc, (w, c)| {
        let w: Vec<u16> = w.iter().map(|x| x % g).collect();
        acc.add(&Poly::word(ring, &w).unwrap().scale(&q(*c))).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_det_matches_leibniz(a in int_matrix(5)) {
        let rows: Vec<Vec<Q>> = a.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        let want = leibniz(&a);
        prop_assert_eq!(rat_det(&rows), Q::new((*want.numer()).into(), (*want.denom()).into()));
        prop_assert_eq!(RatMat::from_rows(rows).unwrap().det(), Q::new((*want.numer()).into(), (*want.denom()).into()));
    }

    #[test]
    fn scalar_det_col_matches_leibniz(a in int_matrix(4)) {
        let ring = rings::commutative(2, 2).unwrap();
        let rows: Vec<Vec<Q>> = a.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        let m: Matrix<Poly> = Matrix::scalars(&ring, &rows).unwrap();
        let want = leibniz(&a);
        let got = det_col(&m).unwrap();
        prop_assert_eq!(got.as_scalar().unwrap(), Q::new((*want.numer()).into(), (*want.denom()).into()));
    }

    #[test]
    fn laplace_matches_permutation_sum(r in 0usize..3, n in 1usize..4, raw in prop::collection::vec(entry_words(), 9)) {
        let ring = [rings::free(2, 2).unwrap(), rings::weyl(2).unwrap(), rings::manin_generic(2, 2).unwrap()][r].clone();
        let m = Matrix::try_from_fn(&ring, n, n, |i, j| Ok(poly_from(&ring, &raw[i * 3 + j]))).unwrap();
        prop_assert_eq!(det_col_laplace(&m).unwrap(), det_col_perm_sum(&m).unwrap());
    }

    #[test]
    fn inverse_times_matrix_is_identity(a in int_matrix(4)) {
        let rows: Vec<Vec<Q>> = a.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        let m = RatMat::from_rows(rows).unwrap();
        match m.inverse() {
            None => prop_assert_eq!(m.det(), q(0)),
            Some(inv) => {
                let n = m.dim();
                for i in 0..n {
                    for j in 0..n {
                        let s: Q = (0..n).map(|k| m.get(i, k) * inv.get(k, j)).sum();
                        prop_assert_eq!(s, q((i == j) as i64));
                    }
                }
            }
        }
    }
}

#[test]
fn permutations_and_signs() {
    let ps = permutations(4);
    assert_eq!(ps.len(), 24);
    assert_eq!(ps.iter().filter(|(_, s)| *s == 1).count(), 12);
    for (p, s) in &ps {
        assert_eq!(permutation_sign(p), *s);
    }
    assert_eq!(permutation_sign(&[1, 0, 2]), -1);
    assert_eq!(permutation_sign(&[1, 2, 0]), 1);
}

#[test]
fn det_col_orders_factors_by_column() {
    let f = rings::free(2, 2).unwrap();
    let m = Matrix::generic(&f, "M", 2, 2).unwrap();
    assert_eq!(det_col(&m).unwrap().render(), "1·M[1,1]·M[2,2] − 1·M[2,1]·M[1,2]");
    assert_eq!(det_row(&m).unwrap().render(), "1·M[1,1]·M[2,2] − 1·M[1,2]·M[2,1]");
    assert_eq!(perm_row(&m).unwrap().render(), "1·M[1,1]·M[2,2] + 1·M[1,2]·M[2,1]");
    assert_eq!(perm_col(&m).unwrap().render(), "1·M[1,1]·M[2,2] + 1·M[2,1]·M[1,2]");
}

#[test]
fn column_determinant_is_antisymmetric_on_manin_matrices() {
    for n in 2..=3 {
        let ring = rings::manin_generic(n, n).unwrap();
        let m = Matrix::generic(&ring, "M", n, n).unwrap();
        assert!(is_manin(&m).unwrap().is_empty());
        let d = det_col(&m).unwrap();
        for a in 0..n {
            for b in a + 1..n {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.swap(a, b);
                assert_eq!(det_col(&m.permute_cols(&perm)).unwrap(), d.neg(), "columns {a},{b}");
                assert_eq!(det_col(&m.permute_rows(&perm)).unwrap(), d.neg(), "rows {a},{b}");
            }
        }
    }
}

#[test]
fn column_antisymmetry_fails_on_free_matrices() {
    let ring = rings::free(2, 2).unwrap();
    let m = Matrix::generic(&ring, "M", 2, 2).unwrap();
    let d = det_col(&m).unwrap();
    assert_ne!(det_col(&m.permute_cols(&[1, 0])).unwrap(), d.neg());
    assert!(!is_manin(&m).unwrap().is_empty());
}

#[test]
fn repeated_column_gives_zero_for_manin() {
    let ring = rings::manin_generic(3, 3).unwrap();
    let m = Matrix::generic(&ring, "M", 3, 3).unwrap();
    let rep = m.select(&[1, 2, 3], &[1, 1, 2]);
    assert!(det_col(&rep).unwrap().is_zero());
}

#[test]
fn adjugate_on_commutative_matrix() {
    let ring = rings::commutative(3, 3).unwrap();
    let m = Matrix::generic(&ring, "M", 3, 3).unwrap();
    let d = det_col(&m).unwrap();
    let adj = adjugate(&m).unwrap();
    let prod = adj.mul(&m).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            let want = if i == j { d.clone() } else { Poly::zero(&ring) };
            assert_eq!(prod.get(i, j), &want);
        }
    }
}

#[test]
fn perm_norm_divides_by_multiplicities() {
    let ring = rings::commutative(2, 2).unwrap();
    let m = Matrix::generic(&ring, "M", 2, 2).unwrap();
    let a = Poly::gen(&ring, "M[1,1]").unwrap();
    let b = Poly::gen(&ring, "M[1,2]").unwrap();
    // I = (1,1), J = (1,2): perm [[a,b],[a,b]] = 2ab, halved
    assert_eq!(perm_norm(&m, &[1, 1], &[1, 2]).unwrap(), a.mul(&b).unwrap());
    // I = (1,1,1), J = (1,1,1): 6a³ / 3!
    assert_eq!(perm_norm(&m, &[1, 1, 1], &[1, 1, 1]).unwrap(), a.pow(3).unwrap());
    assert!(matches!(perm_norm(&m, &[2, 1], &[1, 2]), Err(Error::Precondition(_))));
    assert!(matches!(perm_norm(&m, &[1], &[1, 2]), Err(Error::Shape(_))));
}

#[test]
fn json_roundtrip() {
    let ring = rings::weyl(2).unwrap();
    let m = Matrix::parse(&ring, &[&["x1", "d1·x1"], &["1/2·x2·d2 − 3", "0"]]).unwrap();
    let v = m.to_json();
    assert_eq!(v["rows"], 2);
    assert_eq!(v["entries"][0][1], "1 + 1·x1·d1");
    assert_eq!(Matrix::from_json(&ring, &v).unwrap(), m);
    let text = serde_json::to_string(&v).unwrap();
    let back: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(Matrix::from_json(&ring, &back).unwrap(), m);
}

#[test]
fn shape_errors() {
    let ring = rings::free(2, 3).unwrap();
    let m = Matrix::generic(&ring, "M", 2, 3).unwrap();
    assert!(matches!(det_col(&m), Err(Error::Shape(_))));
    assert!(m.mul(&m).is_err());
    assert!(matches!(RatMat::from_rows(vec![vec![q(1)], vec![q(1), q(2)]]), Err(Error::Shape(_))));
}

#[test]
fn product_of_manin_with_commuting_scalars_is_manin() {
    let ring = rings::manin_generic(2, 2).unwrap();
    let m = Matrix::generic(&ring, "M", 2, 2).unwrap();
    let c = Matrix::scalars(&ring, &[vec![q(2), q(-1)], vec![q(3), q(5)]]).unwrap();
    assert!(is_manin(&m.mul(&c).unwrap()).unwrap().is_empty());
    assert!(is_manin(&c.mul(&m).unwrap()).unwrap().is_empty());
    // det(MC) = det M · det C
    let dm = det_col(&m).unwrap();
    assert_eq!(det_col(&m.mul(&c).unwrap()).unwrap(), dm.scale(&q(13)));
}

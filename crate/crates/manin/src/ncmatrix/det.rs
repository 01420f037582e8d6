//! Column determinants, permanents, minors and characteristic data.

use super::{factorial, Alg, Matrix};
use crate::error::{Error, Result};
use crate::ncpoly::{Param, Poly, Q};
use std::collections::HashMap;

/// Order in which columns are multiplied in a column determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColOrder {
    Natural,
    Reverse,
    /// 0-based column sequence.
    Permuted(Vec<usize>),
}

/// Functional applied to a selected submatrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Functional {
    DetCol,
    PermNorm,
}

/// All permutations of `0..n` in lexicographic order with their signs.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i8)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push((cur.clone(), permutation_sign(&cur)));
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

pub fn permutation_sign(p: &[usize]) -> i8 {
    let mut inv = 0usize;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn require_square<T: Alg>(m: &Matrix<T>, what: &str) -> Result<()> {
    if !m.is_square() {
        return Err(Error::Shape(format!("{what} of a {}×{} matrix", m.rows(), m.cols())));
    }
    Ok(())
}

fn product<T: Alg>(ctx: &T::Ctx, factors: impl Iterator<Item = T>) -> Result<T> {
    let mut acc = T::one_in(ctx);
    for f in factors {
        if f.is_zero() {
            return Ok(T::zero_in(ctx));
        }
        acc = acc.mul(&f)?;
    }
    Ok(acc)
}

fn signed<T: Alg>(x: T, s: i8) -> T {
    if s < 0 {
        x.neg()
    } else {
        x
    }
}

/// `Σ_σ sign(σ) M_{σ(1),1}·M_{σ(2),2}···M_{σ(n),n}` by direct enumeration.
pub fn det_col_perm_sum<T: Alg>(m: &Matrix<T>) -> Result<T> {
    require_square(m, "det_col")?;
    let ctx = m.ctx();
    let mut s = T::zero_in(ctx);
    for (p, sg) in permutations(m.rows()) {
        let term = product(ctx, (0..m.cols()).map(|c| m.get(p[c], c).clone()))?;
        if !term.is_zero() {
            s = s.add(&signed(term, sg))?;
        }
    }
    Ok(s)
}

/// First-column Laplace expansion, memoized on the set of rows already used.
pub fn det_col_laplace<T: Alg>(m: &Matrix<T>) -> Result<T> {
    require_square(m, "det_col")?;
    let n = m.rows();
    if n > 31 {
        return Err(Error::Shape("det_col is limited to 31 rows".into()));
    }
    let mut memo: HashMap<u32, T> = HashMap::new();
    laplace(m, 0, &mut memo)
}

fn laplace<T: Alg>(m: &Matrix<T>, used: u32, memo: &mut HashMap<u32, T>) -> Result<T> {
    let n = m.rows();
    let col = used.count_ones() as usize;
    if col == n {
        return Ok(T::one_in(m.ctx()));
    }
    if let Some(v) = memo.get(&used) {
        return Ok(v.clone());
    }
    let mut s = T::zero_in(m.ctx());
    let mut pos = 0usize;
    for r in 0..n {
        if used & (1 << r) != 0 {
            continue;
        }
        let e = m.get(r, col);
        if !e.is_zero() {
            let rest = laplace(m, used | (1 << r), memo)?;
            if !rest.is_zero() {
                let t = e.mul(&rest)?;
                s = s.add(&if pos.is_multiple_of(2) { t } else { t.neg() })?;
            }
        }
        pos += 1;
    }
    memo.insert(used, s.clone());
    Ok(s)
}

/// Column determinant, columns taken left to right.
pub fn det_col<T: Alg>(m: &Matrix<T>) -> Result<T> {
    if m.rows() <= 3 {
        det_col_perm_sum(m)
    } else {
        det_col_laplace(m)
    }
}

/// Column determinant with the columns multiplied in the given order.
pub fn det_col_order<T: Alg>(m: &Matrix<T>, order: &ColOrder) -> Result<T> {
    require_square(m, "det_col")?;
    let n = m.cols();
    let tau: Vec<usize> = match order {
        ColOrder::Natural => return det_col(m),
        ColOrder::Reverse => (0..n).rev().collect(),
        ColOrder::Permuted(p) => p.clone(),
    };
    let mut seen = vec![false; n];
    if tau.len() != n || tau.iter().any(|&c| c >= n || std::mem::replace(&mut seen[c], true)) {
        return Err(Error::Shape(format!("{tau:?} is not a permutation of {n} columns")));
    }
    // σ(τ(p)) = ρ(p), so sign(σ) = sign(ρ)·sign(τ)
    Ok(signed(det_col(&m.permute_cols(&tau))?, permutation_sign(&tau)))
}

/// Row determinant `Σ_σ sign(σ) M_{1,σ(1)}···M_{n,σ(n)}`.
pub fn det_row<T: Alg>(m: &Matrix<T>) -> Result<T> {
    det_col(&m.transpose())
}

/// Row permanent `Σ_σ M_{1,σ(1)}···M_{n,σ(n)}`.
pub fn perm_row<T: Alg>(m: &Matrix<T>) -> Result<T> {
    require_square(m, "perm_row")?;
    let ctx = m.ctx();
    let mut s = T::zero_in(ctx);
    for (p, _) in permutations(m.rows()) {
        s = s.add(&product(ctx, (0..m.rows()).map(|r| m.get(r, p[r]).clone()))?)?;
    }
    Ok(s)
}

/// Column permanent `Σ_σ M_{σ(1),1}···M_{σ(n),n}`.
pub fn perm_col<T: Alg>(m: &Matrix<T>) -> Result<T> {
    perm_row(&m.transpose())
}

/// Column permanent of `M_IJ` divided by the factorials of the
/// multiplicities in `I`. Indices are 1-based; `I` must be weakly increasing.
pub fn perm_norm<T: Alg>(m: &Matrix<T>, i: &[usize], j: &[usize]) -> Result<T> {
    if i.len() != j.len() {
        return Err(Error::Shape(format!("|I| = {} but |J| = {}", i.len(), j.len())));
    }
    if i.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::Precondition(format!("I = {i:?} is not weakly increasing")));
    }
    let p = perm_col(&m.select(i, j))?;
    Ok(p.scale(&(Q::from_integer(1.into()) / multiplicity_factor(i))))
}

/// `∏ (multiplicity)!` over the distinct values of a sequence.
pub(crate) fn multiplicity_factor(i: &[usize]) -> Q {
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for &x in i {
        *counts.entry(x).or_default() += 1;
    }
    counts.values().fold(Q::from_integer(1.into()), |acc, &c| acc * factorial(c))
}

/// Functional of the zero-padded selection `M_IJ` (1-based indices).
pub fn minor<T: Alg>(m: &Matrix<T>, i: &[usize], j: &[usize], f: Functional) -> Result<T> {
    if i.len() != j.len() {
        return Err(Error::Shape(format!("|I| = {} but |J| = {}", i.len(), j.len())));
    }
    match f {
        Functional::DetCol => det_col(&m.select(i, j)),
        Functional::PermNorm => perm_norm(m, i, j),
    }
}

/// `(adj M)_kl = (−1)^{k+l} det_col(M without row l and column k)`.
pub fn adjugate<T: Alg>(m: &Matrix<T>) -> Result<Matrix<T>> {
    require_square(m, "adjugate")?;
    let n = m.rows();
    if n == 1 {
        return Ok(Matrix::identity(m.ctx(), 1));
    }
    Matrix::try_from_fn(m.ctx(), n, n, |k, l| {
        let d = det_col(&m.without(l, k))?;
        Ok(if (k + l) % 2 == 0 { d } else { d.neg() })
    })
}

/// `e_0..e_n` from `det_col(1 − tM) = Σ (−t)^k e_k`.
pub fn char_coeffs(m: &Matrix<Poly>) -> Result<Vec<Poly>> {
    require_square(m, "char_coeffs")?;
    let n = m.rows();
    let e = det_col(&super::one_minus_t(m, Param::T, n))?;
    Ok((0..=n)
        .map(|k| {
            let c = e.coeff(k);
            if k % 2 == 0 {
                c
            } else {
                c.neg()
            }
        })
        .collect())
}

/// `e_k` as the sum of principal column-determinant minors; agrees with
/// [`char_coeffs`] for Manin matrices.
pub fn char_coeffs_by_minors(m: &Matrix<Poly>) -> Result<Vec<Poly>> {
    require_square(m, "char_coeffs")?;
    let n = m.rows();
    let mut out = vec![Poly::one(m.ctx())];
    for k in 1..=n {
        let mut s = Poly::zero(m.ctx());
        for set in subsets(n, k) {
            s = s.add(&det_col(&m.submatrix(&set, &set))?)?;
        }
        out.push(s);
    }
    Ok(out)
}

/// Strictly increasing `k`-subsets of `0..n`.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Weakly increasing `k`-sequences over `0..n`.
pub(crate) fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All `k`-tuples over `0..n`.
pub(crate) fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// `Tr(M^k)`.
pub fn trace_power<T: Alg>(m: &Matrix<T>, k: u32) -> Result<T> {
    require_square(m, "trace_power")?;
    m.pow(k)?.trace()
}

/// `(1/k!) Σ_L perm_row(M_LL)` over all `k`-tuples `L`, repeats allowed.
pub fn trace_sym_power<T: Alg>(m: &Matrix<T>, k: usize) -> Result<T> {
    require_square(m, "trace_sym_power")?;
    let mut s = T::zero_in(m.ctx());
    for l in tuples(m.rows(), k) {
        s = s.add(&perm_row(&m.submatrix(&l, &l))?)?;
    }
    Ok(s.scale(&(Q::from_integer(1.into()) / factorial(k))))
}

/// `Σ_L perm_row(M_LL) / ∏ n_i!` over weakly increasing `L`.
pub fn trace_sym_power_sorted<T: Alg>(m: &Matrix<T>, k: usize) -> Result<T> {
    require_square(m, "trace_sym_power")?;
    let mut s = T::zero_in(m.ctx());
    for l in multisets(m.rows(), k) {
        let p = perm_row(&m.submatrix(&l, &l))?;
        s = s.add(&p.scale(&(Q::from_integer(1.into()) / multiplicity_factor(&l))))?;
    }
    Ok(s)
}

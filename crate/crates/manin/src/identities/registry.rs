use super::{basic, capelli, golden, judge, leningrad, numeric, series, Expect, Outcome, Report, Verdict};
use crate::error::{Error, Result};
use crate::rings::{self, Ring};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

/// Parameters of a single check run.
#[derive(Clone, Debug)]
pub struct CheckCtx {
    pub n: usize,
    pub variant: Option<String>,
    pub degree: usize,
    pub seed: u64,
    /// Ring family override, e.g. `free` or `commutative`.
    pub ring: Option<String>,
    pub golden_dir: Option<PathBuf>,
}

impl CheckCtx {
    pub fn new(n: usize) -> Self {
        CheckCtx {
            n,
            variant: None,
            degree: 4,
            seed: 0,
            ring: None,
            golden_dir: None,
        }
    }

    /// Generator seeded from the run seed, the check name and its instance.
    pub fn rng(&self, name: &str) -> ChaCha8Rng {
        let mut h: u64 = 0xcbf29ce484222325;
        let tag = format!("{name}/{}/{}", self.n, self.variant.as_deref().unwrap_or(""));
        for b in tag.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        ChaCha8Rng::seed_from_u64(self.seed ^ h)
    }

    pub(crate) fn family(&self, default: Family) -> Result<Family> {
        match &self.ring {
            None => Ok(default),
            Some(s) => Family::parse(s),
        }
    }

    pub(crate) fn variant_or<'a>(&'a self, default: &'a str) -> &'a str {
        self.variant.as_deref().unwrap_or(default)
    }

    /// Zero on Manin families; on the free ring, the golden file `key` if
    /// one exists and a plain nonzero expectation otherwise.
    pub(crate) fn expect(&self, family: Family, key: &str) -> Expect {
        if family.is_manin() {
            Expect::Zero
        } else if golden::has_golden(key, self.golden_dir.as_deref()) {
            Expect::Golden(key.to_string())
        } else {
            Expect::Nonzero
        }
    }

    pub(crate) fn degree(&self) -> Result<usize> {
        if self.degree < 2 {
            return Err(Error::Precondition(format!("degree must be at least 2, got {}", self.degree)));
        }
        Ok(self.degree)
    }
}

/// Ring families a square generic matrix can live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Family {
    Manin,
    Free,
    Commutative,
    CartierFoata,
}

impl Family {
    pub(crate) fn parse(s: &str) -> Result<Self> {
        let base = s.split('(').next().unwrap_or(s).trim();
        match base {
            "manin_generic" | "manin" => Ok(Family::Manin),
            "free" => Ok(Family::Free),
            "commutative" => Ok(Family::Commutative),
            "cartier_foata" => Ok(Family::CartierFoata),
            other => Err(Error::Preset(format!("unknown ring `{other}` for this check"))),
        }
    }

    pub(crate) fn is_manin(self) -> bool {
        self != Family::Free
    }

    pub(crate) fn ring(self, n: usize, m: usize) -> Result<Arc<Ring>> {
        match self {
            Family::Manin => rings::manin_generic(n, m),
            Family::Free => rings::free(n, m),
            Family::Commutative => rings::commutative(n, m),
            Family::CartierFoata => rings::cartier_foata(n, m),
        }
    }
}

/// One instance in a suite expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub n: usize,
    pub variant: Option<String>,
}

fn sizes(range: impl Iterator<Item = usize>) -> Vec<Instance> {
    range.map(|n| Instance { n, variant: None }).collect()
}

fn variants(list: &[(usize, &str)]) -> Vec<Instance> {
    list.iter()
        .map(|(n, v)| Instance {
            n: *n,
            variant: Some(v.to_string()),
        })
        .collect()
}

/// A registered checker.
pub struct CheckDef {
    pub name: &'static str,
    pub about: &'static str,
    /// Whether `--ring` may replace the default ring family.
    pub ring_override: bool,
    /// Instances run by a suite with the given `n_max`.
    pub instances: fn(usize) -> Vec<Instance>,
    pub run: fn(&CheckCtx) -> Result<Outcome>,
}

pub fn registry() -> &'static [CheckDef] {
    REGISTRY
}

static REGISTRY: &[CheckDef] = &[
    CheckDef {
        name: "confluence",
        about: "local confluence of every shipped preset at overlap bound 3",
        ring_override: false,
        instances: |_| sizes(3..=3),
        run: basic::confluence,
    },
    CheckDef {
        name: "confluence_broken",
        about: "a deliberately non-confluent rule file is reported divergent",
        ring_override: false,
        instances: |_| sizes(3..=3),
        run: basic::confluence_broken,
    },
    CheckDef {
        name: "det_oracle",
        about: "memoized Laplace determinant against the permutation sum",
        ring_override: false,
        instances: |_| sizes(4..=4),
        run: basic::det_oracle,
    },
    CheckDef {
        name: "examples_manin",
        about: "every example constructor yields a Manin matrix",
        ring_override: false,
        instances: |_| sizes(2..=2),
        run: basic::examples_manin,
    },
    CheckDef {
        name: "coaction",
        about: "coaction on polynomial and Grassmann variables, q = 1 and generic q",
        ring_override: true,
        instances: |m| sizes(2..=m.min(3)),
        run: basic::coaction,
    },
    CheckDef {
        name: "q_manin",
        about: "q-Manin relations and the quantum group relations",
        ring_override: false,
        instances: |m| sizes(2..=m.min(3)),
        run: basic::q_manin,
    },
    CheckDef {
        name: "cramer",
        about: "adj(M)·M = det(M)·1, and the row variant",
        ring_override: true,
        instances: |m| sizes(2..=m.clamp(2, 4)),
        run: basic::cramer,
    },
    CheckDef {
        name: "cramer_right",
        about: "M·adj(M) − det(M)·1 in the 2×2 Manin ring (pinned residual)",
        ring_override: false,
        instances: |_| sizes(2..=2),
        run: basic::cramer_right,
    },
    CheckDef {
        name: "cayley_hamilton",
        about: "Σ (−1)^i σ_i M^{n−i} = 0 with left coefficients",
        ring_override: true,
        instances: |m| sizes(2..=m.clamp(2, 4)),
        run: basic::cayley_hamilton,
    },
    CheckDef {
        name: "newton",
        about: "E(t)T(t) + ∂E(t) = 0",
        ring_override: true,
        instances: |m| sizes(2..=m.clamp(2, 3)),
        run: basic::newton,
    },
    CheckDef {
        name: "second_newton",
        about: "∂S(t) − T(t)S(t) = 0",
        ring_override: true,
        instances: |m| sizes(2..=m.clamp(2, 3)),
        run: basic::second_newton,
    },
    CheckDef {
        name: "macmahon",
        about: "E(t)S(t) = S(t)E(t) = 1",
        ring_override: true,
        instances: |m| sizes(2..=m.clamp(2, 3)),
        run: basic::macmahon,
    },
    CheckDef {
        name: "det_multiplicativity",
        about: "det(MN) = det M det N and block-unitriangular invariance",
        ring_override: true,
        instances: |m| sizes(2..=m.clamp(2, 3)),
        run: basic::det_multiplicativity,
    },
    CheckDef {
        name: "frobenius",
        about: "M_Frob·D = D·M for the Frobenius pair",
        ring_override: true,
        instances: |m| sizes(2..=m.clamp(2, 3)),
        run: basic::frobenius,
    },
    CheckDef {
        name: "plucker",
        about: "quadratic Plücker relation for a 2×4 matrix with Manin transpose",
        ring_override: true,
        instances: |_| sizes(2..=2),
        run: basic::plucker,
    },
    CheckDef {
        name: "nogo_exp_det",
        about: "det exp(εM) ≠ exp Tr(εM) at order ε³ (pinned residual)",
        ring_override: false,
        instances: |_| sizes(2..=2),
        run: basic::nogo_exp_det,
    },
    CheckDef {
        name: "nogo_det_log",
        about: "det(1 + εM) ≠ exp Tr log(1 + εM)",
        ring_override: false,
        instances: |_| sizes(2..=2),
        run: basic::nogo_det_log,
    },
    CheckDef {
        name: "nogo_trace_det",
        about: "[Tr M, det M] ≠ 0",
        ring_override: false,
        instances: |_| sizes(2..=2),
        run: basic::nogo_trace_det,
    },
    CheckDef {
        name: "nogo_square",
        about: "M² is not a Manin matrix",
        ring_override: false,
        instances: |_| sizes(2..=2),
        run: basic::nogo_square,
    },
    CheckDef {
        name: "leningrad",
        about: "the four tensor forms of the Manin relations and [M⊗1, 1⊗M]² = 0",
        ring_override: true,
        instances: |m| sizes(2..=m.clamp(2, 3)),
        run: leningrad::leningrad,
    },
    CheckDef {
        name: "silantiev",
        about: "A_m X = A_m X A_m/m! and X S_m = S_m X S_m/m! for X = M⁽¹⁾···M⁽ᵐ⁾",
        ring_override: true,
        instances: |m| {
            let mut v = Vec::new();
            for n in 2..=m.clamp(2, 3) {
                for k in 2..=3 {
                    v.push(Instance { n, variant: Some(format!("m={k}")) });
                }
            }
            v
        },
        run: leningrad::silantiev,
    },
    CheckDef {
        name: "curious_corollary",
        about: "P[M1⁻¹, M2⁻¹][M1, M2] = 0 for series Manin M",
        ring_override: true,
        instances: |_| sizes(2..=2),
        run: leningrad::curious_corollary,
    },
    CheckDef {
        name: "schur_block",
        about: "the four block determinant factorizations, and det M det M⁻¹ = 1",
        ring_override: true,
        instances: |m| sizes(2..=m.clamp(2, 3)),
        run: series::schur_block,
    },
    CheckDef {
        name: "jacobi_ratio",
        about: "minors of M⁻¹ against complementary minors of M",
        ring_override: true,
        instances: |m| sizes(2..=m.clamp(2, 3)),
        run: series::jacobi_ratio,
    },
    CheckDef {
        name: "ldjlc",
        about: "2×2 minors of M⁻¹ and column commutativity",
        ring_override: true,
        instances: |m| sizes(2..=m.clamp(2, 3)),
        run: series::ldjlc,
    },
    CheckDef {
        name: "inverse_manin",
        about: "M⁻¹ is a Manin matrix",
        ring_override: true,
        instances: |m| sizes(2..=m.clamp(2, 3)),
        run: series::inverse_manin,
    },
    CheckDef {
        name: "sylvester",
        about: "Sylvester's identity for bordered minors, m = 3",
        ring_override: true,
        instances: |_| variants(&[(3, "n=1"), (3, "n=2")]),
        run: series::sylvester,
    },
    CheckDef {
        name: "weinstein_aronszajn",
        about: "det(1 − tAB) = det(1 − tBA)",
        ring_override: false,
        instances: |m| {
            let mut v = variants(&[(2, "k=1"), (2, "k=2")]);
            if m >= 3 {
                v.extend(variants(&[(3, "k=1")]));
            }
            v
        },
        run: series::weinstein_aronszajn,
    },
    CheckDef {
        name: "gauss_det",
        about: "determinant as a product of Gauss quasideterminants",
        ring_override: true,
        instances: |m| sizes(2..=m.clamp(2, 3)),
        run: series::gauss_det_check,
    },
    CheckDef {
        name: "poisson_inverse",
        about: "the inverse of a Poisson-Manin series is Poisson-Manin",
        ring_override: false,
        instances: |n_max| sizes(2..=n_max.clamp(2, 3)),
        run: series::poisson_inverse,
    },
    CheckDef {
        name: "capelli",
        about: "det(XD + diag(n−1..0)) = det X det D over the Weyl algebra",
        ring_override: false,
        instances: |m| sizes(2..=m.clamp(2, 3)),
        run: capelli::capelli,
    },
    CheckDef {
        name: "cauchy_binet_det",
        about: "Cauchy–Binet with correction for CSS, Turnbull and zero-correction pairs",
        ring_override: false,
        instances: |_| {
            variants(&[
                (2, "capelli(2,2,2)"),
                (2, "capelli(2,1,2)"),
                (3, "capelli(3,2,3)"),
                (2, "turnbull(2)"),
                (2, "css_shift(2)"),
                (2, "zero_correction(2)"),
                (2, "commuting(2)"),
            ])
        },
        run: capelli::cauchy_binet_det,
    },
    CheckDef {
        name: "cauchy_binet_perm",
        about: "permanent Cauchy–Binet with multiplicity normalization",
        ring_override: false,
        instances: |_| variants(&[(2, "commuting(2)"), (2, "capelli(2)"), (3, "antisymmetric(3)")]),
        run: capelli::cauchy_binet_perm,
    },
    CheckDef {
        name: "toy_identity",
        about: "(MB − (r−1)Q)···(MB − Q)MB = M^r B^r",
        ring_override: false,
        instances: |_| sizes(1..=4),
        run: capelli::toy_identity,
    },
    CheckDef {
        name: "numeric_block_det",
        about: "det of an nm×nm rational matrix against det_m of the column determinant",
        ring_override: false,
        instances: |_| variants(&[(2, "m=1"), (2, "m=2"), (3, "m=2")]),
        run: numeric::numeric_block_det,
    },
];

pub fn find_check(name: &str) -> Result<&'static CheckDef> {
    REGISTRY
        .iter()
        .find(|d| d.name == name)
        .ok_or_else(|| Error::UnknownCheck(name.to_string()))
}

/// Run one check and decide its verdict.
pub fn run_check(def: &CheckDef, ctx: &CheckCtx, timings: bool) -> Result<Report> {
    let start = Instant::now();
    let out = (def.run)(ctx)?;
    let millis = timings.then(|| start.elapsed().as_millis() as u64);
    judge(def.name, out, ctx.golden_dir.as_deref(), millis)
}

/// Suite selection and run parameters.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Check names; `None` runs every registered check.
    pub checks: Option<Vec<String>>,
    /// Run only this size instead of the suite expansion.
    pub n: Option<usize>,
    pub n_max: usize,
    pub variant: Option<String>,
    pub degree: usize,
    pub seed: u64,
    pub ring: Option<String>,
    pub golden_dir: Option<PathBuf>,
    pub jobs: usize,
    pub timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            checks: None,
            n: None,
            n_max: 3,
            variant: None,
            degree: 4,
            seed: 0,
            ring: None,
            golden_dir: None,
            jobs: 0,
            timings: false,
        }
    }
}

fn error_report(def: &CheckDef, ctx: &CheckCtx, e: &Error) -> Report {
    let mut params = serde_json::Map::new();
    params.insert("n".into(), ctx.n.into());
    if let Some(v) = &ctx.variant {
        params.insert("variant".into(), v.clone().into());
    }
    Report {
        name: def.name.to_string(),
        ring: ctx.ring.clone().unwrap_or_default(),
        params,
        verdict: Verdict::Error,
        residuals: vec![format!("error: {e}")],
        millis: None,
    }
}

/// Expand and run a suite. Usage errors (unknown check or ring, violated
/// preconditions) abort the run; other failures become error reports.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    if cfg.degree < 2 {
        return Err(Error::Precondition(format!("degree must be at least 2, got {}", cfg.degree)));
    }
    if let Some(r) = &cfg.ring {
        Family::parse(r)?;
    }
    let defs: Vec<&CheckDef> = match &cfg.checks {
        // A ring override on the whole suite keeps only the checks it applies to.
        None => REGISTRY.iter().filter(|d| cfg.ring.is_none() || d.ring_override).collect(),
        Some(names) => names.iter().map(|n| find_check(n)).collect::<Result<_>>()?,
    };
    let mut jobs = Vec::new();
    for def in defs {
        let insts = match cfg.n {
            None => (def.instances)(cfg.n_max),
            Some(n) => {
                let listed: Vec<Instance> = (def.instances)(n.max(cfg.n_max))
                    .into_iter()
                    .filter(|i| i.n == n && i.variant.is_some())
                    .collect();
                if listed.is_empty() || cfg.variant.is_some() {
                    vec![Instance { n, variant: None }]
                } else {
                    listed
                }
            }
        };
        for inst in insts {
            let ctx = CheckCtx {
                n: inst.n,
                variant: cfg.variant.clone().or(inst.variant),
                degree: cfg.degree,
                seed: cfg.seed,
                ring: cfg.ring.clone(),
                golden_dir: cfg.golden_dir.clone(),
            };
            jobs.push((def, ctx));
        }
    }
    let run = |(def, ctx): &(&CheckDef, CheckCtx)| -> Result<Report> {
        match run_check(def, ctx, cfg.timings) {
            Ok(r) => Ok(r),
            Err(e) if e.is_usage() => Err(e),
            Err(e) => Ok(error_report(def, ctx, &e)),
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    let mut reports = pool.install(|| jobs.par_iter().map(run).collect::<Result<Vec<_>>>())?;
    reports.sort_by_key(|r| r.sort_key());
    Ok(reports)
}

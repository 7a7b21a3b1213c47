//! Checking family predictions against the recurrence, singly and in sweeps.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::draws::{draw_map, SweepConfig};
use super::formulas::{family_lambda, oracle_map, pn_with_oracle};
use super::{Family, FamilyMap, XDomain};
use crate::error::{Error, Result};
use crate::realizations::build;
use crate::recurrence::{extract, run};
use crate::scalars::{Mode, Scalar};

/// Tolerance on the scaled recurrence residual in floating point: each row's
/// residual is divided by the largest of its terms (and 1), so it measures
/// how well the identity holds regardless of how fast `p_n` grows.
pub const FLOAT_TOL: f64 = 1e-9;

/// Environment variable capping the number of sweep worker threads.
pub const THREADS_ENV: &str = "AW_FORGE_THREADS";

/// Outcome of one family check.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    /// Exact mode: the series value differs from the recurrence at degree
    /// `n`. `n == dim` denotes the boundary value `p_N`, expected to vanish.
    FailAt {
        n: usize,
        x: Scalar,
        expected: Scalar,
        got: Scalar,
    },
    /// Float mode: the scaled residual of recurrence row `n` exceeds
    /// [`FLOAT_TOL`]. Row 0 with no lower neighbour also covers `p_0 = 1`.
    ResidualExceeds {
        n: usize,
        x: Scalar,
        residual: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyCheck {
    pub family: Family,
    pub kls_section: &'static str,
    pub realization: String,
    pub rep: crate::reps::RepSpec,
    pub mode: Mode,
    pub params: BTreeMap<&'static str, Scalar>,
    pub max_degree: usize,
    pub points: usize,
    pub boundary_checked: bool,
    #[serde(flatten)]
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

impl FamilyCheck {
    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

/// `count` distinct rationals in `]-1, 1[`, none of them zero.
fn interval_points(count: usize) -> Vec<Scalar> {
    let c = count as i64;
    (0..c).map(|k| Scalar::ratio(6 * k + 4 - 3 * c, 3 * (c + 1))).collect()
}

fn sample_points(map: &FamilyMap, max_degree: usize) -> Vec<Scalar> {
    match map.x_domain {
        XDomain::FiniteGrid => (0..map.rep.dim() as i64).map(Scalar::int).collect(),
        XDomain::InfiniteGrid => (0..=max_degree as i64).map(Scalar::int).collect(),
        XDomain::RealInterval | XDomain::UnitCircleAngle => interval_points(max_degree + 1),
    }
}

#[derive(Default)]
struct Tally {
    worst: f64,
    first_failure: Option<CheckStatus>,
}

impl Tally {
    fn fail(&mut self, status: CheckStatus) {
        self.first_failure.get_or_insert(status);
    }

    fn compare_exact(&mut self, n: usize, x: &Scalar, expected: &Scalar, got: &Scalar) {
        if expected != got {
            self.fail(CheckStatus::FailAt { n, x: x.clone(), expected: expected.clone(), got: got.clone() });
        }
    }

    fn residual(&mut self, n: usize, x: &Scalar, terms: &[Scalar]) {
        let total: Scalar = terms.iter().cloned().sum();
        let scale = terms.iter().map(Scalar::abs_f64).fold(1.0, f64::max);
        let residual = total.abs_f64() / scale;
        self.worst = self.worst.max(residual);
        // NaN fails too.
        if residual.is_nan() || residual > FLOAT_TOL {
            self.fail(CheckStatus::ResidualExceeds { n, x: x.clone(), residual });
        }
    }
}

/// Compares the family's series with the recurrence carried by its
/// realization, at `λ = family_lambda(x)` for every sample point `x`.
///
/// Finite representations use every grid point and every `n <= 2j`;
/// truncated ones use `n <= N-4` (or `max_degree`) at `max_degree + 1`
/// points, enough to pin down a polynomial of that degree.
///
/// When the map and the recurrence are exact, `family_pn(n, x)` must equal
/// `run(rec, λ(x))[n]` exactly, including the boundary `p_{2j+1} = 0`.
/// Otherwise the series values are substituted into each recurrence row
/// `p_{n+1} + B_n p_n + C_n p_{n-1} - λ p_n` (with `p_N = 0` in the last row
/// of a finite representation) and the scaled residual must stay within
/// [`FLOAT_TOL`]. Forward evaluation of the recurrence in floating point is
/// not used as the reference: it cancels catastrophically wherever `p_n(x)`
/// is much smaller than earlier terms.
pub fn verify_family(map: &FamilyMap, max_degree: Option<usize>) -> Result<FamilyCheck> {
    let pair = build(&map.kind, &map.rep)?;
    let rec = extract(&pair)?;
    let size = rec.size;
    let finite = map.rep.is_finite();
    let limit = if finite { size - 1 } else { size.saturating_sub(4) };
    let max_degree = max_degree.unwrap_or(limit);
    if max_degree > limit {
        return Err(Error::IndexOutOfRange { index: max_degree, limit });
    }
    let exact = map.mode() == Mode::Exact && rec.mode() == Mode::Exact;
    let boundary_checked = finite && (exact || max_degree == size - 1);
    let points = sample_points(map, max_degree);
    let oracle = oracle_map(map);
    let mut tally = Tally::default();
    for x in &points {
        let lambda = family_lambda(map, x)?;
        let values =
            (0..=max_degree).map(|n| pn_with_oracle(map, oracle.as_ref(), n, x)).collect::<Result<Vec<_>>>()?;
        if exact {
            let p = run(&rec, &lambda, if finite { size } else { max_degree })?;
            for (n, (expected, got)) in values.iter().zip(&p).enumerate() {
                tally.compare_exact(n, x, expected, got);
            }
            if finite {
                tally.compare_exact(size, x, &Scalar::zero(), &p[size]);
            }
            if tally.first_failure.is_some() {
                break;
            }
        } else {
            tally.residual(0, x, &[values[0].clone(), -Scalar::one()]);
            let zero = Scalar::zero();
            let rows = if boundary_checked { size } else { max_degree };
            for n in 0..rows {
                let next = values.get(n + 1).unwrap_or(&zero);
                let mut terms = vec![next.clone(), &rec.diag[n] * &values[n], -(&lambda * &values[n])];
                if n > 0 {
                    terms.push(&rec.sub[n] * &values[n - 1]);
                }
                tally.residual(n, x, &terms);
            }
        }
    }
    Ok(FamilyCheck {
        family: map.family,
        kls_section: map.kls_section,
        realization: map.kind.to_string(),
        rep: map.rep.clone(),
        mode: if exact { Mode::Exact } else { map.mode().max(rec.mode()).max(Mode::Float) },
        params: map.params().into_iter().collect(),
        max_degree,
        points: points.len(),
        boundary_checked,
        status: tally.first_failure.unwrap_or(CheckStatus::Pass),
        max_residual: (!exact).then_some(tally.worst),
        tolerance: (!exact).then_some(FLOAT_TOL),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub family: Family,
    pub kls_section: &'static str,
    pub seed: u64,
    pub draws: usize,
    pub passed: usize,
    pub failed: usize,
    /// Draws discarded because they violated a precondition.
    pub rejected: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
    pub checks: Vec<FamilyCheck>,
}

impl SweepReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0 && self.passed == self.draws
    }
}

fn is_precondition(e: &Error) -> bool {
    matches!(
        e,
        Error::DenominatorVanishes { .. }
            | Error::PoleInDenominator { .. }
            | Error::SideConditionViolated(_)
            | Error::DivisionByZero
            | Error::ZeroParameterA
            | Error::DegenerateBase
            | Error::RootOfUnity(_)
    )
}

/// Worker count from [`THREADS_ENV`], if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|&n| n > 0)
}

/// Verifies `cfg.draws` admissible parameter draws.
///
/// Draws are generated sequentially from a ChaCha stream seeded with
/// `cfg.seed` and verified in parallel; results keep draw order, so the
/// report depends only on the configuration. Draws that violate a
/// precondition are replaced by the next ones in the stream.
pub fn sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    match thread_cap() {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::UnknownCase(format!("thread pool: {e}")))?
            .install(|| sweep_inner(cfg)),
        None => sweep_inner(cfg),
    }
}

fn sweep_inner(cfg: &SweepConfig) -> Result<SweepReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut checks = Vec::with_capacity(cfg.draws);
    let mut rejected = 0;
    let max_attempts = 50 * cfg.draws + 50;
    let mut attempts = 0;
    while checks.len() < cfg.draws {
        if attempts >= max_attempts {
            return Err(Error::UnknownCase(format!(
                "no admissible parameters for {} after {attempts} draws",
                cfg.family
            )));
        }
        let need = cfg.draws - checks.len();
        attempts += need;
        let batch: Vec<Result<FamilyMap>> = (0..need).map(|_| draw_map(cfg, &mut rng)).collect();
        let results: Vec<Result<FamilyCheck>> =
            batch.into_par_iter().map(|m| m.and_then(|m| verify_family(&m, cfg.max_degree))).collect();
        for r in results {
            match r {
                Ok(c) => checks.push(c),
                Err(e) if is_precondition(&e) => rejected += 1,
                Err(e) => return Err(e),
            }
        }
    }
    let passed = checks.iter().filter(|c| c.passed()).count();
    let max_residual = checks.iter().filter_map(|c| c.max_residual).reduce(f64::max);
    Ok(SweepReport {
        family: cfg.family,
        kls_section: cfg.family.kls_section(),
        seed: cfg.seed,
        draws: cfg.draws,
        passed,
        failed: checks.len() - passed,
        rejected,
        max_residual,
        note: (cfg.family == Family::ContinuousHahn)
            .then_some("d is a free parameter of this identification and is drawn with the others"),
        checks,
    })
}

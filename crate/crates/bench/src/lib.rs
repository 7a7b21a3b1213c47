//! Fixed workloads shared by the benchmarks.

use aw_forge::{Family, Mode, RealizationKind, RepSpec, Result, Scalar, SweepConfig};

/// A realization together with the representation it is built on.
#[derive(Debug, Clone)]
pub struct Case {
    pub label: String,
    pub kind: RealizationKind,
    pub rep: RepSpec,
}

fn r(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d)
}

/// Racah realization on su(2) with spin `j = twice_j / 2`.
pub fn racah(twice_j: i64, mode: Mode) -> Result<Case> {
    let to = |s: Scalar| s.to_mode(mode);
    Ok(Case {
        label: format!("racah/su2/2j={twice_j}/{mode}"),
        kind: RealizationKind::Racah { a: to(r(7, 2))?, b: to(r(1, 3))?, c: to(r(-2, 5))? },
        rep: RepSpec::su2(to(r(twice_j, 2))?)?,
    })
}

/// Askey–Wilson realization on a truncated U_q(su(1,1)) of size `n`.
pub fn aw_truncated(n: usize, mode: Mode) -> Result<Case> {
    let to = |s: Scalar| s.to_mode(mode);
    Ok(Case {
        label: format!("aw/uq_su11/n={n}/{mode}"),
        kind: RealizationKind::Aw { a: to(r(-3, 1))?, b: to(r(1, 7))?, c: to(r(2, 9))? },
        rep: RepSpec::uq_su11(Scalar::one(), to(r(3, 2))?, n)?,
    })
}

/// A small seeded sweep of `family`.
pub fn sweep_config(family: Family, draws: usize) -> SweepConfig {
    let mut cfg = SweepConfig::new(family);
    cfg.draws = draws;
    cfg.seed = 7;
    cfg
}

//! Seeded random parameter draws for family sweeps.

use rand::Rng;
use serde::Serialize;

use super::{Family, FamilyMap};
use crate::error::Result;
use crate::reps::{Algebra, RepSpec};
use crate::scalars::{Mode, Scalar};

/// Bases drawn when a quantum sweep does not fix `q`.
const Q_CHOICES: [(i64, i64); 4] = [(2, 1), (3, 2), (5, 3), (1, 2)];

/// What a sweep draws over. Unset fields take family-appropriate defaults.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    pub family: Family,
    /// `j` or `ℓ`; defaults to 2 for compact algebras and 1 otherwise.
    pub label: Option<Scalar>,
    /// Fixed base; drawn from `{2, 3/2, 5/3, 1/2}` when unset.
    pub q: Option<Scalar>,
    /// Truncation size for su(1,1) and oscillator representations.
    pub trunc: usize,
    /// `Some(Mode::Float)` converts every draw to floating point.
    pub mode: Option<Mode>,
    pub draws: usize,
    pub seed: u64,
    /// Highest `n` checked; defaults to the whole admissible window.
    pub max_degree: Option<usize>,
}

impl SweepConfig {
    pub fn new(family: Family) -> Self {
        SweepConfig { family, label: None, q: None, trunc: 16, mode: None, draws: 20, seed: 0, max_degree: None }
    }

    pub fn default_label(algebra: Algebra) -> Scalar {
        if algebra.is_compact() {
            Scalar::int(2)
        } else {
            Scalar::one()
        }
    }

    pub fn rep(&self, q: Option<Scalar>) -> Result<RepSpec> {
        let alg = self.family.algebra();
        let label = self.label.clone().unwrap_or_else(|| Self::default_label(alg));
        match alg {
            Algebra::Su2 => RepSpec::su2(label),
            Algebra::Su11 => RepSpec::su11(label, self.trunc),
            Algebra::Osc => RepSpec::osc(self.trunc),
            Algebra::UqSu2 => RepSpec::uq_su2(label, q.unwrap_or_else(Scalar::one)),
            Algebra::UqSu11 => RepSpec::uq_su11(label, q.unwrap_or_else(Scalar::one), self.trunc),
        }
    }
}

fn rational<R: Rng>(rng: &mut R) -> Scalar {
    let mut num = rng.gen_range(-9..=8);
    if num >= 0 {
        num += 1;
    }
    Scalar::ratio(num, rng.gen_range(1..=6))
}

fn positive<R: Rng>(rng: &mut R) -> Scalar {
    Scalar::ratio(rng.gen_range(1..=9), rng.gen_range(1..=6))
}

fn sign<R: Rng>(rng: &mut R) -> Scalar {
    if rng.gen_bool(0.5) {
        Scalar::one()
    } else {
        Scalar::int(-1)
    }
}

/// A rational in `]0, 1[`.
fn unit<R: Rng>(rng: &mut R) -> Scalar {
    let den = rng.gen_range(2..=9);
    Scalar::ratio(rng.gen_range(1..den), den)
}

/// `p = m^2 / (m^2 + k^2)`, for which `√(p(1-p)) = mk / (m^2 + k^2)` is rational.
fn square_friendly_probability<R: Rng>(rng: &mut R) -> Scalar {
    let m: i64 = rng.gen_range(1..=4);
    let k: i64 = rng.gen_range(1..=4);
    Scalar::ratio(m * m, m * m + k * k)
}

fn square_rational<R: Rng>(rng: &mut R) -> Scalar {
    let r = Scalar::ratio(rng.gen_range(1..=4), rng.gen_range(1..=3));
    &r * &r
}

fn angle<R: Rng>(rng: &mut R) -> Scalar {
    let u = unit(rng).to_f64().expect("rational");
    Scalar::float(std::f64::consts::PI * u)
}

/// Draws one parameter set. Errors are precondition failures (side
/// conditions, degenerate bases) that the caller may treat as rejections.
pub fn draw_map<R: Rng>(cfg: &SweepConfig, rng: &mut R) -> Result<FamilyMap> {
    use Family::*;
    let fam = cfg.family;
    let q = if fam.algebra().is_quantum() {
        Some(cfg.q.clone().unwrap_or_else(|| {
            let (n, d) = Q_CHOICES[rng.gen_range(0..Q_CHOICES.len())];
            Scalar::ratio(n, d)
        }))
    } else {
        None
    };
    let rep = cfg.rep(q.clone())?;
    let params = match fam {
        Racah | Wilson | QRacah => vec![rational(rng), rational(rng), rational(rng)],
        Hahn | DualHahn | ContinuousDualHahn | DualQHahnPoly => vec![rational(rng), rational(rng)],
        ContinuousHahn => vec![rational(rng), rational(rng), rational(rng)],
        Jacobi => vec![&positive(rng) - &Scalar::one()],
        Krawtchouk => vec![square_friendly_probability(rng), sign(rng)],
        Meixner => vec![unit(rng), sign(rng)],
        MeixnerPollaczek | QMeixnerPollaczek => vec![angle(rng), sign(rng)],
        Laguerre => vec![sign(rng)],
        Charlier => vec![square_rational(rng), sign(rng)],
        Hermite => vec![],
        QKrawtchouk | DualQKrawtchouk => vec![rational(rng)],
        QuantumQKrawtchouk | AffineQKrawtchouk => {
            let q = q.clone().unwrap_or_else(Scalar::one);
            let j2 = (&rep.label * &Scalar::int(2)).as_integer().unwrap_or(0);
            let exponent = if fam == QuantumQKrawtchouk { 1 - j2 } else { j2 - 1 };
            vec![&(-q.powi(exponent)?) - &positive(rng)]
        }
        AlSalamChihara => vec![&Scalar::one() + &positive(rng), sign(rng)],
    };
    let map = FamilyMap::new(fam, rep, params)?;
    if cfg.mode == Some(Mode::Float) && map.mode() == Mode::Exact {
        map.into_float()
    } else {
        Ok(map)
    }
}

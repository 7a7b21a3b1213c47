//! Askey-scheme identifications of the recurrence components.
//!
//! A [`FamilyMap`] fixes one polynomial family, its parameters and the
//! representation it lives on. From these it determines the realization whose
//! `Y` carries the family's recurrence, the eigenvalue `λ(x)` attached to a
//! point `x` of the spectrum, and the normalized `p_n(x)` expressed through a
//! (basic) hypergeometric series. [`verify_family`] checks that the two sides
//! agree, and [`sweep`] repeats the check over seeded random parameter draws.

mod draws;
mod formulas;
mod verify;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::realizations::RealizationKind;
use crate::reps::{Algebra, RepSpec};
use crate::scalars::{Mode, Scalar};

pub use draws::{draw_map, SweepConfig};
pub use formulas::{family_lambda, family_pn};
pub use verify::{sweep, verify_family, CheckStatus, FamilyCheck, SweepReport, FLOAT_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Racah,
    Wilson,
    Hahn,
    ContinuousHahn,
    DualHahn,
    ContinuousDualHahn,
    Jacobi,
    Krawtchouk,
    Meixner,
    MeixnerPollaczek,
    Laguerre,
    Charlier,
    Hermite,
    QRacah,
    QKrawtchouk,
    QuantumQKrawtchouk,
    AffineQKrawtchouk,
    DualQHahnPoly,
    DualQKrawtchouk,
    AlSalamChihara,
    QMeixnerPollaczek,
}

/// Where the spectral variable `x` lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum XDomain {
    /// `x = 0, 1, ..., 2j`.
    FiniteGrid,
    /// `x = 0, 1, 2, ...`, cut off at the verification window.
    InfiniteGrid,
    /// `x` real; polynomial identities are checked at sampled points.
    RealInterval,
    /// `x = cos θ` for an angle `θ`.
    UnitCircleAngle,
}

impl Family {
    pub const ALL: [Family; 21] = [
        Family::Racah,
        Family::Wilson,
        Family::Hahn,
        Family::ContinuousHahn,
        Family::DualHahn,
        Family::ContinuousDualHahn,
        Family::Jacobi,
        Family::Krawtchouk,
        Family::Meixner,
        Family::MeixnerPollaczek,
        Family::Laguerre,
        Family::Charlier,
        Family::Hermite,
        Family::QRacah,
        Family::QKrawtchouk,
        Family::QuantumQKrawtchouk,
        Family::AffineQKrawtchouk,
        Family::DualQHahnPoly,
        Family::DualQKrawtchouk,
        Family::AlSalamChihara,
        Family::QMeixnerPollaczek,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Racah => "racah",
            Family::Wilson => "wilson",
            Family::Hahn => "hahn",
            Family::ContinuousHahn => "continuous_hahn",
            Family::DualHahn => "dual_hahn",
            Family::ContinuousDualHahn => "continuous_dual_hahn",
            Family::Jacobi => "jacobi",
            Family::Krawtchouk => "krawtchouk",
            Family::Meixner => "meixner",
            Family::MeixnerPollaczek => "meixner_pollaczek",
            Family::Laguerre => "laguerre",
            Family::Charlier => "charlier",
            Family::Hermite => "hermite",
            Family::QRacah => "q_racah",
            Family::QKrawtchouk => "q_krawtchouk",
            Family::QuantumQKrawtchouk => "quantum_q_krawtchouk",
            Family::AffineQKrawtchouk => "affine_q_krawtchouk",
            Family::DualQHahnPoly => "dual_q_hahn_poly",
            Family::DualQKrawtchouk => "dual_q_krawtchouk",
            Family::AlSalamChihara => "al_salam_chihara",
            Family::QMeixnerPollaczek => "q_meixner_pollaczek",
        }
    }

    /// Section of the Koekoek–Swarttouw Askey-scheme catalogue whose series
    /// definition is encoded.
    pub fn kls_section(self) -> &'static str {
        match self {
            Family::Wilson => "1.1",
            Family::Racah => "1.2",
            Family::ContinuousDualHahn => "1.3",
            Family::ContinuousHahn => "1.4",
            Family::Hahn => "1.5",
            Family::DualHahn => "1.6",
            Family::MeixnerPollaczek => "1.7",
            Family::Jacobi => "1.8",
            Family::Meixner => "1.9",
            Family::Krawtchouk => "1.10",
            Family::Laguerre => "1.11",
            Family::Charlier => "1.12",
            Family::Hermite => "1.13",
            Family::QRacah => "3.2",
            Family::DualQHahnPoly => "3.7",
            Family::AlSalamChihara => "3.8",
            Family::QMeixnerPollaczek => "3.9",
            Family::QuantumQKrawtchouk => "3.14",
            Family::QKrawtchouk => "3.15",
            Family::AffineQKrawtchouk => "3.16",
            Family::DualQKrawtchouk => "3.17",
        }
    }

    pub fn algebra(self) -> Algebra {
        use Family::*;
        match self {
            Racah | Hahn | DualHahn | Krawtchouk => Algebra::Su2,
            Wilson | ContinuousHahn | ContinuousDualHahn | Jacobi | Meixner | MeixnerPollaczek | Laguerre => {
                Algebra::Su11
            }
            Charlier | Hermite => Algebra::Osc,
            QRacah | QKrawtchouk | QuantumQKrawtchouk | AffineQKrawtchouk | DualQHahnPoly | DualQKrawtchouk => {
                Algebra::UqSu2
            }
            AlSalamChihara | QMeixnerPollaczek => Algebra::UqSu11,
        }
    }

    /// Names of the polynomial-side parameters, in the order
    /// [`FamilyMap::new`] expects them.
    pub fn param_names(self) -> &'static [&'static str] {
        use Family::*;
        match self {
            Racah | Wilson | QRacah => &["a", "b", "c"],
            Hahn => &["alpha", "beta"],
            ContinuousHahn => &["alpha", "beta", "d"],
            DualHahn | ContinuousDualHahn | DualQHahnPoly => &["mu", "nu"],
            Jacobi => &["alpha"],
            Krawtchouk => &["p", "eps"],
            Meixner | AlSalamChihara => &["c", "eps"],
            MeixnerPollaczek | QMeixnerPollaczek => &["phi", "eps"],
            Laguerre => &["eps"],
            Charlier => &["a", "eps"],
            Hermite => &[],
            QKrawtchouk => &["a"],
            QuantumQKrawtchouk | AffineQKrawtchouk => &["mu"],
            DualQKrawtchouk => &["c"],
        }
    }

    pub fn x_domain(self) -> XDomain {
        use Family::*;
        match self {
            Racah | Hahn | DualHahn | Krawtchouk | QRacah | QKrawtchouk | QuantumQKrawtchouk | AffineQKrawtchouk
            | DualQHahnPoly | DualQKrawtchouk => XDomain::FiniteGrid,
            Meixner | Charlier => XDomain::InfiniteGrid,
            Wilson | ContinuousHahn | ContinuousDualHahn | Jacobi | MeixnerPollaczek | Laguerre | Hermite => {
                XDomain::RealInterval
            }
            AlSalamChihara | QMeixnerPollaczek => XDomain::UnitCircleAngle,
        }
    }

    /// Families whose identification involves `i` or transcendental
    /// parameters and so is only checked in floating point.
    pub fn required_mode(self) -> Mode {
        match self {
            Family::ContinuousHahn | Family::MeixnerPollaczek | Family::QMeixnerPollaczek => Mode::Complex,
            Family::Hermite => Mode::Float,
            _ => Mode::Exact,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownCase(format!("unknown family '{s}'")))
    }
}

/// One family identification with concrete parameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyMap {
    pub family: Family,
    pub kls_section: &'static str,
    pub rep: RepSpec,
    params: Vec<Scalar>,
    /// The realization whose `Y` carries this family's recurrence.
    pub kind: RealizationKind,
    pub x_domain: XDomain,
}

impl FamilyMap {
    /// Validates the representation and the family's side conditions and
    /// derives the realization parameters.
    pub fn new(family: Family, rep: RepSpec, params: Vec<Scalar>) -> Result<Self> {
        if rep.algebra != family.algebra() {
            return Err(Error::WrongAlgebra { realization: family.name(), algebra: rep.algebra });
        }
        let names = family.param_names();
        if params.len() != names.len() {
            return Err(Error::DimensionMismatch { left: names.len(), right: params.len() });
        }
        let rep = rep.validated()?;
        let mut map = FamilyMap {
            family,
            kls_section: family.kls_section(),
            rep,
            params,
            kind: RealizationKind::LieType { b: Scalar::zero() },
            x_domain: family.x_domain(),
        };
        formulas::check_side_conditions(&map)?;
        map.kind = formulas::realization_for(&map)?;
        Ok(map)
    }

    /// Like [`FamilyMap::new`] with named parameters in any order.
    pub fn from_named(family: Family, rep: RepSpec, named: &[(&str, Scalar)]) -> Result<Self> {
        let params = family
            .param_names()
            .iter()
            .map(|n| {
                named
                    .iter()
                    .find(|(k, _)| k == n)
                    .map(|(_, v)| v.clone())
                    .ok_or_else(|| Error::UnknownCase(format!("missing parameter '{n}' for {family}")))
            })
            .collect::<Result<Vec<_>>>()?;
        FamilyMap::new(family, rep, params)
    }

    /// Converts every parameter (and `q`) to floats.
    pub fn into_float(self) -> Result<Self> {
        let params = self.params.iter().map(|p| p.to_mode(Mode::Float)).collect::<Result<Vec<_>>>()?;
        let mut rep = self.rep;
        rep.q = rep.q.map(|q| q.to_mode(Mode::Float)).transpose()?;
        FamilyMap::new(self.family, rep, params)
    }

    /// The same map with every float parameter (and `q`) replaced by the exact
    /// rational it represents.
    pub fn lifted(&self) -> Result<Self> {
        let params = self.params.iter().map(Scalar::lift_exact).collect::<Result<Vec<_>>>()?;
        let mut rep = self.rep.clone();
        rep.q = rep.q.map(|q| q.lift_exact()).transpose()?;
        FamilyMap::new(self.family, rep, params)
    }

    pub fn params(&self) -> Vec<(&'static str, Scalar)> {
        self.family.param_names().iter().copied().zip(self.params.iter().cloned()).collect()
    }

    /// Panics on a name the family does not have; names come from
    /// [`Family::param_names`].
    pub fn param(&self, name: &str) -> &Scalar {
        let idx = self
            .family
            .param_names()
            .iter()
            .position(|n| *n == name)
            .unwrap_or_else(|| panic!("{} has no parameter '{name}'", self.family));
        &self.params[idx]
    }

    /// Widest mode among the parameters, `q` and the family's own needs.
    pub fn mode(&self) -> Mode {
        let own = self.params.iter().chain(self.rep.q.as_ref()).map(Scalar::mode).max().unwrap_or(Mode::Exact);
        own.max(self.family.required_mode())
    }
}

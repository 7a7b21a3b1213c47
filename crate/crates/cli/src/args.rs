//! Command-line flags and their conversion into library types.

use std::path::PathBuf;

use aw_forge::{Algebra, Error, Family, Mode, RealizationKind, RepSpec, Scalar};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{CliError, CliResult};

/// Truncation size of su(1,1), U_q(su(1,1)) and oscillator representations
/// when `--n` is not given.
pub const DEFAULT_TRUNC: usize = 16;

/// Draw count of a family sweep when `--draws` is not given.
pub const DEFAULT_DRAWS: usize = 20;

#[derive(Debug, Parser)]
#[command(
    name = "aw-forge",
    version,
    about = "Build explicit realizations of the Racah and Askey-Wilson algebras and verify them exactly."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check both cubic relations of a realization as matrix identities.
    Verify(RealizationArgs),
    /// Print the three-term recurrence coefficients carried by Y.
    Recurrence {
        #[command(flatten)]
        realization: RealizationArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Floating-point eigenvalues of Y.
    Spectrum(RealizationArgs),
    /// Compare an Askey-scheme family with the recurrence, for given parameters
    /// or a seeded sweep of random ones.
    FamilyCheck(FamilyArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Verify(_) => "verify",
            Command::Recurrence { .. } => "recurrence",
            Command::Spectrum(_) => "spectrum",
            Command::FamilyCheck(_) => "family-check",
        }
    }

    pub fn output(&self) -> &OutputArgs {
        match self {
            Command::Verify(r) | Command::Spectrum(r) | Command::Recurrence { realization: r, .. } => &r.output,
            Command::FamilyCheck(f) => &f.output,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
    Complex,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
            ModeArg::Complex => Mode::Complex,
        }
    }
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Arithmetic mode. Exact mode accepts integers and "p/q" only; decimals
    /// need an explicit float mode.
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Add wall-clock timing to the report.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct RepArgs {
    /// Spin j (compact algebras) or lowest weight l (non-compact ones).
    #[arg(long, alias = "l", allow_hyphen_values = true)]
    pub j: Option<String>,
    /// Deformation parameter of the quantum algebras.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Truncation size of infinite-dimensional representations.
    #[arg(long)]
    pub n: Option<usize>,
}

/// Realization and family parameters. Each command accepts only the ones its
/// realization or family uses.
#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<String>,
}

impl ParamArgs {
    /// The parameters that were given, by name.
    pub fn given(&self) -> Vec<(&'static str, &str)> {
        let all = [
            ("a", &self.a),
            ("b", &self.b),
            ("c", &self.c),
            ("d", &self.d),
            ("alpha", &self.alpha),
            ("beta", &self.beta),
            ("mu", &self.mu),
            ("nu", &self.nu),
            ("p", &self.p),
            ("eps", &self.eps),
            ("phi", &self.phi),
        ];
        all.into_iter().filter_map(|(k, v)| v.as_deref().map(|v| (k, v))).collect()
    }

    /// Parses the given parameters, rejecting any not in `allowed`.
    fn parse_only(&self, allowed: &[&str], owner: &str, mode: Mode) -> CliResult<Vec<(&'static str, Scalar)>> {
        self.given()
            .into_iter()
            .map(|(k, v)| {
                if !allowed.contains(&k) {
                    return Err(CliError::Usage(format!("{owner} takes no parameter --{k}")));
                }
                Ok((k, parse_value(v, mode)?))
            })
            .collect()
    }
}

#[derive(Debug, Args)]
pub struct RealizationArgs {
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(RealizationKind::NAMES))]
    pub realization: String,
    #[arg(long, value_parser = parse_algebra)]
    pub algebra: Algebra,
    #[command(flatten)]
    pub rep: RepArgs,
    /// Unset realization parameters default to 0.
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

impl RealizationArgs {
    pub fn mode(&self) -> Mode {
        self.output.mode.into()
    }

    pub fn kind(&self) -> CliResult<RealizationKind> {
        let names = RealizationKind::param_names(&self.realization)?;
        let given = self.params.parse_only(names, &self.realization, self.mode())?;
        let zero = Scalar::zero().to_mode(self.mode())?;
        let values: Vec<Scalar> = names
            .iter()
            .map(|n| given.iter().find(|(k, _)| k == n).map_or_else(|| zero.clone(), |(_, v)| v.clone()))
            .collect();
        Ok(RealizationKind::from_params(&self.realization, &values)?)
    }

    pub fn rep_spec(&self) -> CliResult<RepSpec> {
        rep_spec(self.algebra, &self.rep, self.mode())
    }
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[command(flatten)]
    pub rep: RepArgs,
    /// Fix every family parameter to check one identification; leave them
    /// all unset to sweep random draws instead.
    #[command(flatten)]
    pub params: ParamArgs,
    /// Number of random parameter draws in a sweep.
    #[arg(long)]
    pub draws: Option<usize>,
    /// Seed of the sweep's random stream.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Highest degree n compared; defaults to the whole admissible window.
    #[arg(long)]
    pub max_degree: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

impl FamilyArgs {
    pub fn mode(&self) -> Mode {
        self.output.mode.into()
    }

    pub fn label(&self) -> CliResult<Option<Scalar>> {
        if self.family.algebra() == Algebra::Osc && self.rep.j.is_some() {
            return Err(CliError::Usage("the oscillator representation takes no --j/--l".into()));
        }
        self.rep.j.as_deref().map(|s| parse_label(s, self.mode())).transpose()
    }

    pub fn q(&self) -> CliResult<Option<Scalar>> {
        let quantum = self.family.algebra().is_quantum();
        match &self.rep.q {
            Some(_) if !quantum => Err(CliError::Usage(format!("{} takes no --q", self.family))),
            Some(s) => Ok(Some(parse_value(s, self.mode().min(Mode::Float))?)),
            None => Ok(None),
        }
    }

    pub fn trunc(&self) -> CliResult<usize> {
        check_trunc(self.family.algebra(), self.rep.n)
    }

    pub fn named_params(&self) -> CliResult<Vec<(&'static str, Scalar)>> {
        self.params.parse_only(self.family.param_names(), self.family.name(), self.mode())
    }
}

fn parse_algebra(s: &str) -> Result<Algebra, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Integers and `p/q` are exact; decimals are accepted outside exact mode.
pub fn parse_value(s: &str, mode: Mode) -> CliResult<Scalar> {
    Scalar::parse(s, mode).map_err(|_| match mode {
        Mode::Exact => CliError::Usage(format!("{s:?} is not an integer or p/q rational (decimals need --mode float)")),
        _ => CliError::Usage(format!("cannot parse {s:?} as a number")),
    })
}

/// Labels stay exact whenever they are written as rationals, since `2j`
/// must be an integer.
fn parse_label(s: &str, mode: Mode) -> CliResult<Scalar> {
    Scalar::parse(s, Mode::Exact).or_else(|_| parse_value(s, mode.min(Mode::Float)))
}

fn check_trunc(algebra: Algebra, n: Option<usize>) -> CliResult<usize> {
    match (algebra.is_compact(), n) {
        (true, Some(_)) => Err(CliError::Usage(format!("{algebra} representations are finite; --n does not apply"))),
        (_, n) => Ok(n.unwrap_or(DEFAULT_TRUNC)),
    }
}

pub fn rep_spec(algebra: Algebra, args: &RepArgs, mode: Mode) -> CliResult<RepSpec> {
    let trunc = check_trunc(algebra, args.n)?;
    let label = || -> CliResult<Scalar> {
        let s = args.j.as_deref().ok_or_else(|| CliError::Usage(format!("{algebra} needs --j (or --l)")))?;
        parse_label(s, mode)
    };
    let q = || -> CliResult<Scalar> {
        let s = args.q.as_deref().ok_or_else(|| CliError::Usage(format!("{algebra} needs --q")))?;
        parse_value(s, mode.min(Mode::Float))
    };
    if !algebra.is_quantum() && args.q.is_some() {
        return Err(CliError::Usage(format!("{algebra} takes no --q")));
    }
    Ok(match algebra {
        Algebra::Su2 => RepSpec::su2(label()?)?,
        Algebra::Su11 => RepSpec::su11(label()?, trunc)?,
        Algebra::Osc => {
            if args.j.is_some() {
                return Err(CliError::Usage("the oscillator representation takes no --j/--l".into()));
            }
            RepSpec::osc(trunc)?
        }
        Algebra::UqSu2 => RepSpec::uq_su2(label()?, q()?)?,
        Algebra::UqSu11 => RepSpec::uq_su11(label()?, q()?, trunc)?,
    })
}

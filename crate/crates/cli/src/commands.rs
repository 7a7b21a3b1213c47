//! The four subcommands.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use aw_forge::{
    build, expected_constants, extract, relation_residuals, spectrum_float, sweep, verify_family, FamilyCheck,
    FamilyMap, Mode, OperatorPair, RealizationKind, RepSpec, Residual, Scalar, SweepConfig, SweepReport,
    RESIDUAL_REL_TOL,
};
use serde::Serialize;

use crate::args::{FamilyArgs, Format, RealizationArgs, DEFAULT_DRAWS};
use crate::error::{CliError, CliResult};
use crate::report::{Context, Status};

/// Outcome of one relation. Exact residuals either vanish or name their first
/// nonzero entry; only float residuals carry sizes and a tolerance, the
/// scaled size being each entry's residual relative to the terms that cancel
/// in it.
#[derive(Debug, Serialize)]
pub struct RelationStatus {
    pub name: String,
    pub window: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fail_at: Option<Entry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_abs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_scaled: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct Entry {
    pub row: usize,
    pub col: usize,
    pub value: Scalar,
}

impl RelationStatus {
    fn of(r: &Residual, tol: f64) -> Self {
        let exact = r.mode == Mode::Exact;
        let passed = r.passes(tol);
        RelationStatus {
            name: r.name.clone(),
            window: r.window,
            status: Status::from_pass(passed),
            fail_at: match (&r.first_nonzero, exact || !passed) {
                (Some((row, col, value)), true) => Some(Entry { row: *row, col: *col, value: value.clone() }),
                _ => None,
            },
            max_abs: (!exact).then_some(r.max_abs),
            max_scaled: (!exact).then_some(r.max_scaled),
            tolerance: (!exact).then_some(tol),
        }
    }
}

#[derive(Serialize)]
struct VerifyBody<'a> {
    realization: &'a RealizationKind,
    rep: &'a RepSpec,
    mode: Mode,
    structure_constants: BTreeMap<&'static str, Scalar>,
    relations: Vec<RelationStatus>,
}

#[derive(Serialize)]
struct RecurrenceBody<'a> {
    realization: &'a RealizationKind,
    rep: &'a RepSpec,
    mode: Mode,
    size: usize,
    /// Leading indices on which the truncated recurrence is exact.
    exact_window: usize,
    diag: &'a [Scalar],
    sub: &'a [Scalar],
}

#[derive(Serialize)]
struct SpectrumBody<'a> {
    realization: &'a RealizationKind,
    rep: &'a RepSpec,
    mode: Mode,
    dim: usize,
    /// Eigenvalues of a truncated matrix, not of the operator.
    truncated: bool,
    eigenvalues: Vec<Scalar>,
}

#[derive(Serialize)]
struct CheckBody<'a> {
    check: &'a FamilyCheck,
}

#[derive(Serialize)]
struct SweepBody<'a> {
    sweep: &'a SweepReport,
}

fn pair_mode(pair: &OperatorPair) -> Mode {
    pair.x.mode().max(pair.y.mode())
}

fn build_pair(args: &RealizationArgs) -> CliResult<(RealizationKind, OperatorPair)> {
    let kind = args.kind()?;
    let rep = args.rep_spec()?;
    let pair = build(&kind, &rep)?;
    Ok((kind, pair))
}

/// Exit status `Ok(true)` iff every relation residual passes.
pub fn verify(args: &RealizationArgs, ctx: &Context) -> CliResult<bool> {
    let (kind, pair) = build_pair(args)?;
    let sc = expected_constants(&kind, &pair.rep)?;
    let report = relation_residuals(&pair, &sc)?;
    let relations: Vec<RelationStatus> =
        report.residuals.iter().map(|r| RelationStatus::of(r, RESIDUAL_REL_TOL)).collect();
    let passed = relations.iter().all(|r| r.status == Status::Pass);
    let body = VerifyBody {
        realization: &kind,
        rep: &pair.rep,
        mode: pair_mode(&pair),
        structure_constants: sc.slots().into_iter().collect(),
        relations,
    };
    ctx.emit(Status::from_pass(passed), &body)?;
    Ok(passed)
}

pub fn recurrence(args: &RealizationArgs, format: Format, ctx: &Context) -> CliResult<bool> {
    let (kind, pair) = build_pair(args)?;
    let rec = extract(&pair)?;
    match format {
        Format::Json => ctx.emit(
            Status::Pass,
            &RecurrenceBody {
                realization: &kind,
                rep: &pair.rep,
                mode: rec.mode(),
                size: rec.size,
                exact_window: rec.exact_window,
                diag: &rec.diag,
                sub: &rec.sub,
            },
        )?,
        Format::Csv => {
            let mut text = String::from("n,diag,sub\n");
            for (n, (d, s)) in rec.diag.iter().zip(&rec.sub).enumerate() {
                writeln!(text, "{n},{d},{s}").expect("writing to a String cannot fail");
            }
            ctx.write_text(&text)?;
        }
    }
    Ok(true)
}

pub fn spectrum(args: &RealizationArgs, ctx: &Context) -> CliResult<bool> {
    let (kind, pair) = build_pair(args)?;
    let eigenvalues = spectrum_float(&pair)?
        .into_iter()
        .map(|z| if z.im == 0.0 { Scalar::float(z.re) } else { Scalar::complex(z.re, z.im) })
        .collect();
    let body = SpectrumBody {
        realization: &kind,
        rep: &pair.rep,
        mode: pair_mode(&pair).max(Mode::Float),
        dim: pair.dim(),
        truncated: !pair.rep.is_finite(),
        eigenvalues,
    };
    ctx.emit(Status::Pass, &body)?;
    Ok(true)
}

pub fn family_check(args: &FamilyArgs, ctx: &Context) -> CliResult<bool> {
    let mode = args.mode();
    if mode == Mode::Complex {
        return Err(CliError::Usage(
            "family-check runs in exact or float mode; complex arithmetic is used automatically where needed".into(),
        ));
    }
    let mut cfg = SweepConfig::new(args.family);
    cfg.label = args.label()?;
    cfg.q = args.q()?;
    cfg.trunc = args.trunc()?;
    cfg.mode = (mode == Mode::Float).then_some(Mode::Float);
    cfg.max_degree = args.max_degree;

    let named = args.named_params()?;
    if named.is_empty() {
        cfg.draws = args.draws.unwrap_or(DEFAULT_DRAWS);
        cfg.seed = args.seed.unwrap_or(0);
        let report = sweep(&cfg)?;
        let passed = report.all_pass();
        ctx.emit(Status::from_pass(passed), &SweepBody { sweep: &report })?;
        return Ok(passed);
    }

    if args.draws.is_some() || args.seed.is_some() {
        return Err(CliError::Usage("--draws and --seed apply to sweeps; drop the family parameters to sweep".into()));
    }
    if args.family.algebra().is_quantum() && cfg.q.is_none() {
        return Err(CliError::Usage(format!("{} needs --q when its parameters are fixed", args.family)));
    }
    let rep = cfg.rep(cfg.q.clone())?;
    let mut map = FamilyMap::from_named(args.family, rep, &named)?;
    if mode == Mode::Float && map.mode() == Mode::Exact {
        map = map.into_float()?;
    }
    let check = verify_family(&map, cfg.max_degree)?;
    let passed = check.passed();
    ctx.emit(Status::from_pass(passed), &CheckBody { check: &check })?;
    Ok(passed)
}

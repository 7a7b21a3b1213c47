//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so every line is printed; the process
//! exits nonzero when any criterion fails. Draws are seeded, so a failure is
//! reproducible as is.

use std::fmt::Display;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use aw_forge::algcheck::commutator;
use aw_forge::families::{draw_map, XDomain};
use aw_forge::{
    build, expected_constants, extract, family_lambda, family_pn, relation_residuals, run, spectrum_float, sweep,
    verify_family, Error, Family, FamilyMap, Matrix, Mode, OperatorPair, RealizationKind, RepSpec, Residual, Scalar,
    SweepConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Runtime budgets. Debug builds of the workspace stay well inside them.
const CLASSICAL_BUDGET: Duration = Duration::from_secs(5);
const SPECIALIZATION_BUDGET: Duration = Duration::from_secs(5);
const QUANTUM_BUDGET: Duration = Duration::from_secs(10);

/// Absolute eigenvalue tolerances.
const RACAH_SPECTRUM_TOL: f64 = 1e-9;
const LIE_SPECTRUM_TOL: f64 = 1e-10;
/// Largest admissible scaled recurrence residual of a float family check.
const WILSON_RESIDUAL_TOL: f64 = 1e-9;

/// Draws per realization where a count is prescribed.
const RELATION_DRAWS: usize = 50;
const ORACLE_DRAWS: usize = 20;
/// Draws for criteria that do not prescribe a count.
const SUPPORT_DRAWS: usize = 10;

const TRUNC: usize = 16;
const Q_TRUNC: usize = 12;
const WIDE_TRUNC: usize = 24;
const BASES: [(i64, i64); 4] = [(2, 1), (3, 2), (5, 3), (1, 2)];
const SEED: u64 = 7;

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;
type Draw = fn(&mut ChaCha8Rng) -> RealizationKind;

fn r(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d)
}

fn rational(rng: &mut impl Rng) -> Scalar {
    r(rng.gen_range(-12..=12), rng.gen_range(1..=7))
}

fn nonzero_rational(rng: &mut impl Rng) -> Scalar {
    loop {
        let x = rational(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

fn base(rng: &mut impl Rng) -> Scalar {
    let (n, d) = BASES[rng.gen_range(0..BASES.len())];
    r(n, d)
}

fn spins() -> Vec<Scalar> {
    (1..=6).map(|k| r(k, 2)).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_budget(start: Instant, budget: Duration) -> Result<Duration, String> {
    let elapsed = start.elapsed();
    ensure(elapsed < budget, || format!("took {elapsed:.2?}, budget {budget:?}"))?;
    Ok(elapsed)
}

fn ctx<T, E: Display>(res: Result<T, E>, what: impl Display) -> Result<T, String> {
    res.map_err(|e| format!("{what}: {e}"))
}

/// Builds a pair, redrawing while the parameters hit a vanishing denominator.
fn build_admissible(
    rng: &mut ChaCha8Rng,
    rep: &RepSpec,
    draw: impl Fn(&mut ChaCha8Rng) -> RealizationKind,
) -> Result<(RealizationKind, OperatorPair), String> {
    for _ in 0..1000 {
        let kind = draw(rng);
        match build(&kind, rep) {
            Ok(pair) => return Ok((kind, pair)),
            Err(Error::DenominatorVanishes { .. } | Error::ZeroParameterA) => continue,
            Err(e) => return Err(format!("{kind} on {rep:?}: {e}")),
        }
    }
    Err(format!("no admissible draw for {rep:?}"))
}

/// Exact residuals of every relation, plus the smallest window checked.
fn exact_residuals(kind: &RealizationKind, pair: &OperatorPair) -> Result<usize, String> {
    let sc = ctx(expected_constants(kind, &pair.rep), kind)?;
    let report = ctx(relation_residuals(pair, &sc), kind)?;
    for res in &report.residuals {
        ensure(res.is_exact_zero(), || match &res.first_nonzero {
            Some((i, j, v)) => format!("{kind}: {} nonzero at ({i}, {j}): {v}", res.name),
            None => format!("{kind}: {} is not an exact zero", res.name),
        })?;
    }
    Ok(report.residuals.iter().map(|res| res.window).min().unwrap_or(0))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let spins = [r(1, 1), r(3, 2), r(2, 1), r(5, 2), r(3, 1)];
    for j in &spins {
        let rep = ctx(RepSpec::su2(j.clone()), "su2")?;
        for _ in 0..RELATION_DRAWS {
            let (kind, pair) = build_admissible(&mut rng, &rep, |g| RealizationKind::Racah {
                a: rational(g),
                b: rational(g),
                c: rational(g),
            })?;
            exact_residuals(&kind, &pair)?;
        }
    }
    let elapsed = within_budget(start, CLASSICAL_BUDGET)?;
    Ok(format!("{} exact Racah realizations over j ∈ {{1, ..., 3}} in {elapsed:.2?}", spins.len() * RELATION_DRAWS))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let draws: [(&str, Draw); 5] = [
        ("hahn", |g| RealizationKind::Hahn { alpha: rational(g), beta: rational(g) }),
        ("dual_hahn", |g| RealizationKind::DualHahn { mu: rational(g), nu: rational(g) }),
        ("jacobi", |g| RealizationKind::Jacobi { alpha: rational(g) }),
        ("lie_type", |g| RealizationKind::LieType { b: rational(g) }),
        ("oscillator", |g| RealizationKind::Oscillator { b: rational(g) }),
    ];
    let mut checked = 0;
    for (name, draw) in draws {
        let mut reps = Vec::new();
        if name == "oscillator" {
            reps.push(ctx(RepSpec::osc(TRUNC), "osc")?);
        } else {
            for j in spins() {
                reps.push(ctx(RepSpec::su2(j), "su2")?);
            }
            for l in [r(1, 2), r(1, 1), r(7, 4)] {
                reps.push(ctx(RepSpec::su11(l, TRUNC), "su11")?);
            }
        }
        for rep in &reps {
            for _ in 0..SUPPORT_DRAWS {
                let (kind, pair) = build_admissible(&mut rng, rep, draw)?;
                let window = exact_residuals(&kind, &pair)?;
                if !rep.is_finite() {
                    // Indices 0..=N-4.
                    ensure(window == TRUNC - 3, || format!("{kind}: window {window}, want {}", TRUNC - 3))?;
                }
                checked += 1;
            }
        }
    }
    let elapsed = within_budget(start, SPECIALIZATION_BUDGET)?;
    Ok(format!("{checked} exact specializations (truncated windows 0..={}) in {elapsed:.2?}", TRUNC - 4))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let draws: [Draw; 3] = [
        |g| RealizationKind::Aw { a: nonzero_rational(g), b: rational(g), c: rational(g) },
        |g| RealizationKind::DualQHahn { mu: rational(g), nu: rational(g) },
        |g| RealizationKind::QLie { a: nonzero_rational(g) },
    ];
    let mut checked = 0;
    for draw in draws {
        for i in 0..RELATION_DRAWS {
            let q = base(&mut rng);
            // Alternate the compact and truncated series.
            let rep = if i % 2 == 0 {
                let j = r(rng.gen_range(1..=6), 2);
                ctx(RepSpec::uq_su2(j, q), "uq_su2")?
            } else {
                let l = r(rng.gen_range(1..=4), 2);
                ctx(RepSpec::uq_su11(l, q, Q_TRUNC), "uq_su11")?
            };
            let (kind, pair) = build_admissible(&mut rng, &rep, draw)?;
            exact_residuals(&kind, &pair)?;
            checked += 1;
        }
    }
    let elapsed = within_budget(start, QUANTUM_BUDGET)?;
    Ok(format!("{checked} exact q-realizations (aw, dual_q_hahn, q_lie) in {elapsed:.2?}"))
}

/// `τ(x) - j(1 - b + c)` with `τ(x) = x(x - 2j + c - b)`. The constant enters
/// with a minus sign: with a plus, `λ(x)` is not an eigenvalue of `Y`.
fn racah_lambda(j: &Scalar, b: &Scalar, c: &Scalar, x: &Scalar) -> Scalar {
    let tau = x * &(&(&(x - &(j * &Scalar::int(2))) + c) - b);
    &tau - &(j * &(&(&Scalar::one() - b) + c))
}

/// `family_pn` against `run` on the whole grid, degrees `0..=2j`.
fn oracle_agrees(map: &FamilyMap) -> Result<(), String> {
    let pair = ctx(build(&map.kind, &map.rep), map.family)?;
    let rec = ctx(extract(&pair), map.family)?;
    let top = rec.size - 1;
    for x in 0..=top {
        let x = Scalar::int(x as i64);
        let lambda = ctx(family_lambda(map, &x), map.family)?;
        let p = ctx(run(&rec, &lambda, top), map.family)?;
        for (n, pn) in p.iter().enumerate() {
            let want = ctx(family_pn(map, n, &x), map.family)?;
            ensure(want.is_exact() && *pn == want, || {
                format!("{}: p_{n}({x}) = {pn}, series gives {want}", map.family)
            })?;
        }
    }
    Ok(())
}

fn draw_exact_maps(cfg: &SweepConfig, count: usize, rng: &mut ChaCha8Rng) -> Result<Vec<FamilyMap>, String> {
    let mut maps = Vec::new();
    for _ in 0..count * 100 {
        if maps.len() == count {
            return Ok(maps);
        }
        let Ok(map) = draw_map(cfg, rng) else { continue };
        // A vanishing denominator in the realization or the series is a
        // precondition failure, not a mismatch.
        if build(&map.kind, &map.rep).is_ok() && verify_family(&map, None).is_ok() {
            maps.push(map);
        }
    }
    Err(format!("{}: too many rejected draws", cfg.family))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let j = Scalar::int(2);
    for family in [Family::Racah, Family::QRacah] {
        let mut cfg = SweepConfig::new(family);
        cfg.label = Some(j.clone());
        for map in draw_exact_maps(&cfg, ORACLE_DRAWS, &mut rng)? {
            ensure(map.mode() == Mode::Exact, || format!("{family}: draw is not exact"))?;
            if family == Family::Racah {
                let (b, c) = (map.param("b"), map.param("c"));
                for x in 0..=4 {
                    let x = Scalar::int(x);
                    let got = ctx(family_lambda(&map, &x), family)?;
                    let want = racah_lambda(&j, b, c, &x);
                    ensure(got == want, || format!("racah: λ({x}) = {got}, want {want}"))?;
                }
            }
            oracle_agrees(&map)?;
        }
    }
    Ok(format!("Racah and q-Racah series equal the recurrence exactly, {ORACLE_DRAWS} draws each, n ≤ 4, x = 0..4"))
}

fn sorted_real(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

fn max_gap(got: &[f64], want: &[f64]) -> f64 {
    sorted_real(got).iter().zip(&sorted_real(want)).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

fn real_spectrum(pair: &OperatorPair, tol: f64) -> Result<Vec<f64>, String> {
    let eig = ctx(spectrum_float(pair), pair.kind.name())?;
    for z in &eig {
        ensure(z.im.abs() <= tol, || format!("{}: eigenvalue {z} is not real", pair.kind))?;
    }
    Ok(eig.iter().map(|z| z.re).collect())
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let j = r(5, 2);
    let rep = ctx(RepSpec::su2(j.clone()), "su2")?;
    let mut worst: f64 = 0.0;
    for _ in 0..SUPPORT_DRAWS {
        let (kind, pair) = build_admissible(&mut rng, &rep, |g| RealizationKind::Racah {
            a: rational(g),
            b: rational(g),
            c: rational(g),
        })?;
        let RealizationKind::Racah { b, c, .. } = &kind else { unreachable!() };
        let want: Vec<f64> =
            (0..=5).map(|x| racah_lambda(&j, b, c, &Scalar::int(x)).to_f64().expect("rational")).collect();
        let gap = max_gap(&real_spectrum(&pair, RACAH_SPECTRUM_TOL)?, &want);
        ensure(gap <= RACAH_SPECTRUM_TOL, || format!("{kind}: eigenvalues off by {gap:e}"))?;
        worst = worst.max(gap);
    }

    // Krawtchouk at p = 1/2: b = 0 and λ = 2ε(x - j); the set is symmetric in ε.
    let mut lie_worst: f64 = 0.0;
    for j in spins() {
        let rep = ctx(RepSpec::su2(j.clone()), "su2")?;
        let pair = ctx(build(&RealizationKind::LieType { b: Scalar::zero() }, &rep), "lie_type")?;
        let jf = j.to_f64().expect("rational");
        let want: Vec<f64> = (0..rep.dim()).map(|x| 2.0 * (x as f64 - jf)).collect();
        let gap = max_gap(&real_spectrum(&pair, LIE_SPECTRUM_TOL)?, &want);
        ensure(gap <= LIE_SPECTRUM_TOL, || format!("lie_type j={j}: eigenvalues off by {gap:e}"))?;
        lie_worst = lie_worst.max(gap);
    }
    Ok(format!("Racah j=5/2 max gap {worst:.1e} (tol {RACAH_SPECTRUM_TOL:e}); lie_type p=1/2 max gap {lie_worst:.1e} (tol {LIE_SPECTRUM_TOL:e})"))
}

fn leading_equal(small: &Matrix, large: &Matrix, k: usize) -> bool {
    (0..k).all(|i| (0..k).all(|j| small.get(i, j) == large.get(i, j)))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let l = r(3, 4);
    let small_rep = ctx(RepSpec::su11(l.clone(), TRUNC), "su11")?;
    let large_rep = ctx(RepSpec::su11(l, WIDE_TRUNC), "su11")?;
    for _ in 0..SUPPORT_DRAWS {
        let (kind, small) = build_admissible(&mut rng, &small_rep, |g| RealizationKind::Racah {
            a: rational(g),
            b: rational(g),
            c: rational(g),
        })?;
        let large = ctx(build(&kind, &large_rep), &kind)?;
        ensure(leading_equal(&small.x, &large.x, TRUNC) && leading_equal(&small.y, &large.y, TRUNC), || {
            format!("{kind}: N={TRUNC} matrices differ from the N={WIDE_TRUNC} ones")
        })?;

        let window = exact_residuals(&kind, &small)?;
        exact_residuals(&kind, &large)?;
        // The cubic words themselves agree on the smaller window.
        let words = |p: &OperatorPair| -> Result<[Matrix; 2], String> {
            let xy = ctx(commutator(&p.x, &p.y), &kind)?;
            Ok([ctx(commutator(&p.x, &xy), &kind)?, ctx(commutator(&p.y, &xy), &kind)?])
        };
        for (s, w) in words(&small)?.iter().zip(&words(&large)?) {
            ensure(leading_equal(s, w, window), || format!("{kind}: cubic words differ inside window {window}"))?;
        }
    }

    let mut cfg = SweepConfig::new(Family::Wilson);
    cfg.trunc = TRUNC;
    cfg.mode = Some(Mode::Float);
    cfg.draws = ORACLE_DRAWS;
    cfg.seed = SEED;
    let report = ctx(sweep(&cfg), "wilson sweep")?;
    let worst = report.max_residual.unwrap_or(0.0);
    ensure(report.all_pass() && report.passed == ORACLE_DRAWS, || {
        format!("wilson float sweep: {}/{} passed", report.passed, report.draws)
    })?;
    ensure(worst < WILSON_RESIDUAL_TOL, || format!("wilson residual {worst:e}"))?;
    Ok(format!("N={TRUNC} restricts N={WIDE_TRUNC}; Wilson float residual {worst:.1e} < {WILSON_RESIDUAL_TOL:e}"))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let finite: Vec<Family> = Family::ALL
        .into_iter()
        .filter(|f| f.x_domain() == XDomain::FiniteGrid && f.required_mode() == Mode::Exact)
        .collect();
    let mut points = 0;
    for &family in &finite {
        for j in [r(1, 2), r(2, 1), r(5, 2)] {
            let mut cfg = SweepConfig::new(family);
            cfg.label = Some(j);
            for map in draw_exact_maps(&cfg, SUPPORT_DRAWS, &mut rng)? {
                let rec = ctx(extract(&ctx(build(&map.kind, &map.rep), family)?), family)?;
                let n = rec.size;
                for x in 0..n {
                    let x = Scalar::int(x as i64);
                    let lambda = ctx(family_lambda(&map, &x), family)?;
                    let p = ctx(run(&rec, &lambda, n), family)?;
                    ensure(p[n].is_exact() && p[n].is_zero(), || format!("{family}: p_{n}({x}) = {}", p[n]))?;
                    points += 1;
                }
            }
        }
    }
    Ok(format!("p_(2j+1) = 0 exactly at {points} grid points across {} finite families", finite.len()))
}

fn all_exact_zero(residuals: &[Residual]) -> bool {
    residuals.iter().all(Residual::is_exact_zero)
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let su2 = ctx(RepSpec::su2(r(2, 1)), "su2")?;
    let osc = ctx(RepSpec::osc(TRUNC), "osc")?;
    let uq = ctx(RepSpec::uq_su2(r(3, 2), r(3, 2)), "uq_su2")?;
    let cases: [(&RepSpec, Draw); 11] = [
        (&su2, |g| RealizationKind::Racah { a: rational(g), b: rational(g), c: rational(g) }),
        (&su2, |g| RealizationKind::Hahn { alpha: rational(g), beta: rational(g) }),
        (&su2, |g| RealizationKind::DualHahn { mu: rational(g), nu: rational(g) }),
        (&su2, |g| RealizationKind::Jacobi { alpha: rational(g) }),
        (&su2, |g| RealizationKind::LieType { b: rational(g) }),
        (&osc, |g| RealizationKind::Oscillator { b: rational(g) }),
        (&uq, |g| RealizationKind::Aw { a: nonzero_rational(g), b: rational(g), c: rational(g) }),
        (&uq, |g| RealizationKind::AwC0 { a: nonzero_rational(g), b: rational(g) }),
        (&uq, |g| RealizationKind::AwBc0 { a: nonzero_rational(g) }),
        (&uq, |g| RealizationKind::DualQHahn { mu: rational(g), nu: rational(g) }),
        (&uq, |g| RealizationKind::QLie { a: nonzero_rational(g) }),
    ];
    let mut perturbed = 0;
    for (rep, draw) in cases {
        let (kind, pair) = build_admissible(&mut rng, rep, draw)?;
        let sc = ctx(expected_constants(&kind, rep), &kind)?;
        for slot in sc.slot_names() {
            let bad = ctx(sc.perturbed(slot, &Scalar::one()), &kind)?;
            let report = ctx(relation_residuals(&pair, &bad), &kind)?;
            ensure(!all_exact_zero(&report.residuals), || format!("{kind}: {slot} + 1 still verifies"))?;
            perturbed += 1;
        }
    }

    // μ must lie below -q^(1-2j) (quantum) or -q^(2j-1) (affine); at j = 2, q = 2
    // these are -1/8 and -8.
    let rep = ctx(RepSpec::uq_su2(r(2, 1), r(2, 1)), "uq_su2")?;
    let violations = [
        (Family::QuantumQKrawtchouk, r(-1, 8)),
        (Family::QuantumQKrawtchouk, r(1, 1)),
        (Family::AffineQKrawtchouk, r(-8, 1)),
        (Family::AffineQKrawtchouk, r(-1, 2)),
    ];
    for (family, mu) in &violations {
        match FamilyMap::from_named(*family, rep.clone(), &[("mu", mu.clone())]) {
            Err(Error::SideConditionViolated(_)) => {}
            other => return Err(format!("{family} with μ = {mu}: expected SideConditionViolated, got {other:?}")),
        }
    }
    Ok(format!(
        "{perturbed} single-constant perturbations detected; {} side-condition violations rejected",
        violations.len()
    ))
}

fn criterion_9() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_aw-forge");
    let mut compared = Vec::new();
    for family in ["racah", "q_racah", "wilson"] {
        let args = ["family-check", "--family", family, "--seed", "7"];
        let first = ctx(Command::new(exe).args(args).output(), "spawn")?;
        let second = ctx(Command::new(exe).args(args).output(), "spawn")?;
        ensure(first.status.success() && second.status.success(), || {
            format!("{family}: exit {:?}: {}", first.status.code(), String::from_utf8_lossy(&first.stderr))
        })?;
        ensure(!first.stdout.is_empty() && first.stdout == second.stdout, || format!("{family}: outputs differ"))?;
        compared.push(format!("{family} ({} bytes)", first.stdout.len()));
    }
    Ok(format!("byte-identical reports for {}", compared.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 9] = [
        ("exact Racah verification", criterion_1),
        ("exact specialization verification", criterion_2),
        ("exact q-case verification", criterion_3),
        ("Racah and q-Racah polynomial oracle", criterion_4),
        ("spectrum check", criterion_5),
        ("truncated-window soundness", criterion_6),
        ("boundary convention", criterion_7),
        ("negative controls", criterion_8),
        ("determinism", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

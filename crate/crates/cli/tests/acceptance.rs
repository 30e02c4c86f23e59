//! Acceptance criteria 1-8, one PASS/FAIL line each. Exits nonzero if any
//! criterion fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};

use s4bell::classical::{
    bell_terms, classical_histogram, classical_max, BellExpression, ProbabilityTerm, Strategy,
};
use s4bell::context::S4Context;
use s4bell::fixtures::{orbit_table, orbit_vector, Vec3};
use s4bell::game::{game_values, WinningTable};
use s4bell::orbit::{Label, Orbit};
use s4bell::pairs::parse_pairs;
use s4bell::quantum::{
    eigenvalues_direct, eigenvalues_isotypic, expand_with_multiplicity, max_eigenvalue_sum,
    XOperator,
};
use s4bell::reference::{EXAMPLES, QUANTUM_WIN_ONE, WINNING_TABLE_ONE};
use s4bell::representation::IsotypicLabel;

const COORDINATE_EPS: f64 = 1e-9;
const REPORTED_EPS: f64 = 0.01;
const SPECTRA_EPS: f64 = 1e-6;
const WIN_EPS: f64 = 1e-4;
const PROPERTY_EPS: f64 = 1e-9;

const FAST: Duration = Duration::from_secs(1);
const HISTOGRAM_SERIAL: Duration = Duration::from_secs(60);
const HISTOGRAM_PARALLEL: Duration = Duration::from_secs(10);
const VERIFY_BUDGET: Duration = Duration::from_secs(120);

struct Outcome {
    passed: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Outcome {
        Outcome {
            passed: true,
            notes: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, note: impl Into<String>) {
        if !ok {
            self.passed = false;
            self.notes.push(note.into());
        }
    }
}

fn close(a: f64, b: f64, eps: f64) -> bool {
    (a - b).abs() <= eps
}

fn expression(ctx: &S4Context, spec: &str) -> BellExpression {
    let pairs = parse_pairs(spec).expect("reference spec parses");
    bell_terms(&pairs, &ctx.orbit, &ctx.standard).expect("reference terms")
}

fn criterion_1(ctx: &S4Context) -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    let seed = orbit_vector(Label::new(1, 0).unwrap());
    let orbit = Orbit::generate(&ctx.standard, seed).and_then(Orbit::match_reference_labels);
    let elapsed = start.elapsed();
    let orbit = match orbit {
        Ok(o) => o,
        Err(e) => {
            out.require(false, format!("orbit generation failed: {e}"));
            return out;
        }
    };
    let table = orbit_table();
    out.require(table.len() == 24, format!("table has {} rows", table.len()));
    for (label, expected) in &table {
        let got = orbit.by_label(*label);
        let worst = got
            .coords
            .iter()
            .zip(expected)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        out.require(worst <= COORDINATE_EPS, format!("{label} off by {worst:e}"));
        out.require(
            got.label == *label,
            format!("{label} carries label {}", got.label),
        );
    }
    let labels: BTreeSet<Label> = orbit.vectors().iter().map(|v| v.label).collect();
    out.require(
        labels.len() == 24,
        format!("{} distinct labels", labels.len()),
    );
    out.require(elapsed < FAST, format!("took {elapsed:?}"));
    out
}

fn criterion_2(ctx: &S4Context) -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    for example in &EXAMPLES {
        let pairs = parse_pairs(example.pairs).unwrap();
        let mut scalar_sum = 0.0;
        let mut component_sums = [0.0; 4];
        for (pair, expected) in pairs.iter().zip(example.orbit_lambdas) {
            let phi = orbit_vector(pair.phi);
            let psi = orbit_vector(pair.psi);
            let iso = eigenvalues_isotypic(&phi, &psi, &ctx.decomposition, 24);
            let scalar = iso
                .iter()
                .find(|e| e.label == IsotypicLabel::Scalar)
                .unwrap()
                .value;
            out.require(
                close(scalar, expected, REPORTED_EPS),
                format!("{} {pair}: {scalar:.4} vs {expected}", example.name),
            );
            scalar_sum += scalar;
            for (k, e) in iso.iter().enumerate() {
                component_sums[k] += e.value;
            }

            let direct = eigenvalues_direct(&XOperator::build(&phi, &psi, &ctx.square)).unwrap();
            let expanded = expand_with_multiplicity(&iso);
            let worst = expanded
                .iter()
                .zip(&direct.values)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            out.require(
                worst <= SPECTRA_EPS,
                format!("{} {pair}: spectra differ by {worst:e}", example.name),
            );
        }

        let bound = max_eigenvalue_sum(&pairs, ctx).unwrap();
        let largest_component = component_sums.iter().copied().fold(f64::MIN, f64::max);
        out.require(
            close(bound.lambda_max, largest_component, SPECTRA_EPS),
            format!(
                "{}: direct {} vs isotypic {largest_component}",
                example.name, bound.lambda_max
            ),
        );
        out.require(
            close(bound.lambda_max, scalar_sum, SPECTRA_EPS),
            format!("{}: λ_max not on the scalar component", example.name),
        );
        out.require(
            close(bound.lambda_max, example.lambda_max, REPORTED_EPS),
            format!(
                "{} λ_max {:.4} vs {} ± {REPORTED_EPS}",
                example.name, bound.lambda_max, example.lambda_max
            ),
        );
    }
    let elapsed = start.elapsed();
    out.require(elapsed < FAST, format!("took {elapsed:?}"));
    out
}

fn criterion_3(ctx: &S4Context) -> Outcome {
    let mut out = Outcome::new();
    for example in &EXAMPLES {
        let expr = expression(ctx, example.pairs);
        let start = Instant::now();
        let max = classical_max(&expr);
        let elapsed = start.elapsed();
        out.require(
            max == example.classical_max,
            format!("{}: {max} vs {}", example.name, example.classical_max),
        );
        out.require(elapsed < FAST, format!("{} took {elapsed:?}", example.name));
    }
    out
}

fn criterion_4(ctx: &S4Context) -> Outcome {
    let mut out = Outcome::new();
    let serial = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    for example in &EXAMPLES {
        let expr = expression(ctx, example.pairs);
        let start = Instant::now();
        let histogram = classical_histogram(&expr);
        let parallel_time = start.elapsed();
        let start = Instant::now();
        let serial_histogram = serial.install(|| classical_histogram(&expr));
        let serial_time = start.elapsed();

        out.require(
            histogram == serial_histogram,
            format!("{}: thread count changes result", example.name),
        );
        for (k, &expected) in example.histogram.iter().enumerate() {
            let got = histogram.count(k + 1);
            out.require(
                got == expected,
                format!("{} c={}: {got} vs {expected}", example.name, k + 1),
            );
        }
        out.require(
            histogram.total() == 3u64.pow(16),
            format!("{}: total {}", example.name, histogram.total()),
        );
        out.require(
            histogram.weighted_total() == 72 * 3u64.pow(14),
            format!(
                "{}: weighted total {}",
                example.name,
                histogram.weighted_total()
            ),
        );
        out.require(
            parallel_time < HISTOGRAM_PARALLEL,
            format!("{} parallel took {parallel_time:?}", example.name),
        );
        out.require(
            serial_time < HISTOGRAM_SERIAL,
            format!("{} serial took {serial_time:?}", example.name),
        );
    }
    let spots = [
        (0, 1, 12_960),
        (0, 16, 15_876),
        (1, 18, 144),
        (1, 8, 7_822_791),
        (2, 16, 4_761),
    ];
    for (i, c, expected) in spots {
        out.require(
            EXAMPLES[i].histogram[c - 1] == expected,
            format!("{} c={c} reference row", EXAMPLES[i].name),
        );
    }
    out
}

fn criterion_5(ctx: &S4Context) -> Outcome {
    let mut out = Outcome::new();
    for example in &EXAMPLES {
        let expr = expression(ctx, example.pairs);
        let got: BTreeSet<ProbabilityTerm> = expr.terms.iter().copied().collect();
        let expected: BTreeSet<ProbabilityTerm> = example.terms.iter().copied().collect();
        out.require(
            expected.len() == 72,
            format!("{}: {} reference terms", example.name, expected.len()),
        );
        out.require(
            expr.len() == 72,
            format!("{}: {} terms", example.name, expr.len()),
        );
        out.require(
            got == expected,
            format!("{}: term sets differ", example.name),
        );
    }
    out
}

fn criterion_6(ctx: &S4Context) -> Outcome {
    let mut out = Outcome::new();
    let expr = expression(ctx, EXAMPLES[0].pairs);
    let table = WinningTable::from_expression(&expr);
    out.require(
        table.entries.len() == 24,
        format!("{} rows", table.entries.len()),
    );
    for ((s, t), answers) in WINNING_TABLE_ONE {
        out.require(table.answers(s, t) == answers, format!("row {s}{t}"));
    }
    let bound = max_eigenvalue_sum(&parse_pairs(EXAMPLES[0].pairs).unwrap(), ctx).unwrap();
    let value = game_values(&expr, &bound);
    out.require(
        value.classical.wins == 16
            && value.classical.rounds == 64
            && value.classical.value() == 0.25,
        format!("classical {}", value.classical),
    );
    out.require(
        close(value.quantum, QUANTUM_WIN_ONE, WIN_EPS),
        format!("quantum {:.5}", value.quantum),
    );
    out
}

fn random_unit(rng: &mut impl Rng) -> Vec3 {
    loop {
        let v: Vec3 = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-3 {
            return v.map(|x| x / n);
        }
    }
}

/// Counts satisfied terms for every configuration one by one.
fn literal_histogram(expr: &BellExpression) -> Vec<u64> {
    let mut counts = vec![0u64; expr.len() + 1];
    for index in 0..3u64.pow(2 * expr.settings as u32) {
        let strategy = Strategy::decode(index, expr.settings);
        let satisfied = expr
            .terms
            .iter()
            .filter(|t| {
                strategy.alice[t.s as usize - 1] == t.a && strategy.bob[t.t as usize - 1] == t.b
            })
            .count();
        counts[satisfied] += 1;
    }
    counts
}

fn criterion_7(ctx: &S4Context) -> Outcome {
    let mut out = Outcome::new();
    let hom = ctx.standard.homomorphism_deviation();
    let orth = ctx.standard.orthogonality_deviation();
    out.require(hom <= PROPERTY_EPS, format!("homomorphism {hom:e}"));
    out.require(orth <= PROPERTY_EPS, format!("orthogonality {orth:e}"));

    let algebra = ctx.decomposition.algebra_deviation();
    out.require(
        algebra <= PROPERTY_EPS,
        format!("projector algebra {algebra:e}"),
    );
    for (label, trace) in [
        (IsotypicLabel::Standard, 3.0),
        (IsotypicLabel::Twisted, 3.0),
        (IsotypicLabel::Two, 2.0),
        (IsotypicLabel::Scalar, 1.0),
    ] {
        let got = ctx.decomposition.projector(label).trace();
        out.require(
            close(got, trace, PROPERTY_EPS),
            format!("tr P_{label} = {got}"),
        );
    }

    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    for _ in 0..100 {
        let phi = random_unit(&mut rng);
        let psi = random_unit(&mut rng);
        let iso = eigenvalues_isotypic(&phi, &psi, &ctx.decomposition, 24);
        let weighted: f64 = iso.iter().map(|e| e.dim as f64 * e.value).sum();
        out.require(
            close(weighted, 24.0, PROPERTY_EPS),
            format!("Σ d λ = {weighted}"),
        );
        let dot: f64 = phi.iter().zip(&psi).map(|(a, b)| a * b).sum();
        let scalar = iso
            .iter()
            .find(|e| e.label == IsotypicLabel::Scalar)
            .unwrap()
            .value;
        out.require(
            close(scalar, 8.0 * dot * dot, PROPERTY_EPS),
            format!("λ_D0 {scalar} vs 8(φ·ψ)²"),
        );
    }

    for example in &EXAMPLES {
        let expr = expression(ctx, example.pairs);
        for k in [3, 4] {
            let reduced = expr.restrict(k).unwrap();
            let literal = literal_histogram(&reduced);
            let fast = classical_histogram(&reduced);
            out.require(
                fast.counts == literal,
                format!("{} k={k}: separable scan differs", example.name),
            );
            let literal_max = literal.iter().rposition(|&n| n > 0).unwrap();
            out.require(
                classical_max(&reduced) == literal_max,
                format!("{} k={k}: max differs", example.name),
            );
        }
    }
    out
}

fn criterion_8() -> Outcome {
    let mut out = Outcome::new();
    let start = Instant::now();
    let result = Command::new(env!("CARGO_BIN_EXE_s4bell"))
        .arg("verify")
        .output();
    let elapsed = start.elapsed();
    match result {
        Ok(output) => {
            let stdout = String::from_utf8_lossy(&output.stdout);
            out.require(
                output.status.code() == Some(0),
                format!("exit status {:?}", output.status.code()),
            );
            for line in stdout.lines().filter(|l| l.starts_with("[FAIL]")) {
                out.notes.push(line.to_string());
            }
        }
        Err(e) => out.require(false, format!("could not run: {e}")),
    }
    out.require(elapsed < VERIFY_BUDGET, format!("took {elapsed:?}"));
    out
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() -> ExitCode {
    let ctx = S4Context::new().expect("S4 context");
    let criteria: [Criterion; 8] = [
        ("orbit reproduction", Box::new(|| criterion_1(&ctx))),
        ("quantum bounds", Box::new(|| criterion_2(&ctx))),
        ("classical bounds", Box::new(|| criterion_3(&ctx))),
        ("strategy histograms", Box::new(|| criterion_4(&ctx))),
        ("Bell expression terms", Box::new(|| criterion_5(&ctx))),
        ("nonlocal game", Box::new(|| criterion_6(&ctx))),
        ("property suites", Box::new(|| criterion_7(&ctx))),
        ("verify command", Box::new(criterion_8)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        let status = if outcome.passed { "PASS" } else { "FAIL" };
        if outcome.notes.is_empty() {
            println!("criterion {}: {status} {name}", i + 1);
        } else {
            println!(
                "criterion {}: {status} {name} ({})",
                i + 1,
                outcome.notes.join("; ")
            );
        }
        if !outcome.passed {
            failed += 1;
        }
    }
    println!(
        "{}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

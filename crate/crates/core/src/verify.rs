//! End-to-end reproduction of the reported numbers: the orbit table, the
//! change of basis, the three examples' eigenvalues, classical bounds,
//! histograms and term lists, and the first example's game.
//!
//! Every check produces a [`Check`]; a computation error inside a check is
//! recorded as a failure rather than aborting the run.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::classical::{
    bell_terms, classical_histogram, classical_max, BellExpression, ProbabilityTerm,
};
use crate::context::S4Context;
use crate::error::Result;
use crate::fixtures;
use crate::game::{game_values, WinningTable};
use crate::orbit::{Label, Orbit};
use crate::pairs::parse_pairs;
use crate::quantum::{expand_with_multiplicity, max_eigenvalue_sum, QuantumBound};
use crate::reference::{
    ReferenceExample, DIAGONAL_LAMBDA, EXAMPLES, QUANTUM_WIN_ONE, WINNING_TABLE_ONE,
};
use crate::tolerance::{EIGEN_EPS, MATRIX_EPS};

/// Tolerance on values reported to two decimals.
pub const REPORTED_EPS: f64 = 0.01;
/// Tolerance on the reported four-decimal win probability.
pub const WIN_PROBABILITY_EPS: f64 = 1e-4;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    fn from_result(name: impl Into<String>, result: Result<(bool, String)>) -> Check {
        match result {
            Ok((passed, detail)) => Check::new(name, passed, detail),
            Err(e) => Check::new(name, false, format!("error: {e}")),
        }
    }

    fn within(name: impl Into<String>, got: f64, expected: f64, tolerance: f64) -> Check {
        let passed = (got - expected).abs() <= tolerance;
        Check::new(
            name,
            passed,
            format!("expected {expected} ± {tolerance}, got {got:.4}"),
        )
    }

    fn exact<T: PartialEq + fmt::Display>(name: impl Into<String>, got: T, expected: T) -> Check {
        let passed = got == expected;
        Check::new(name, passed, format!("expected {expected}, got {got}"))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {}: {}", self.name, self.detail)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Which groups of checks to run. The histogram group dominates the runtime.
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub histograms: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { histograms: true }
    }
}

pub fn run(ctx: &S4Context, options: VerifyOptions) -> VerifyReport {
    run_with(ctx, options, |_| {})
}

/// As [`run`], handing each check to `on_check` as soon as it is decided.
pub fn run_with<F>(ctx: &S4Context, options: VerifyOptions, mut on_check: F) -> VerifyReport
where
    F: FnMut(&Check),
{
    let mut report = VerifyReport::default();
    let mut push = |check: Check, report: &mut VerifyReport| {
        on_check(&check);
        report.checks.push(check);
    };

    for check in orbit_checks(ctx) {
        push(check, &mut report);
    }
    push(change_of_basis_check(ctx), &mut report);
    push(diagonal_check(ctx), &mut report);

    for example in &EXAMPLES {
        let prepared = prepare(ctx, example);
        let (expr, bound) = match prepared {
            Ok(v) => v,
            Err(e) => {
                push(
                    Check::new(
                        format!("{}: setup", example.name),
                        false,
                        format!("error: {e}"),
                    ),
                    &mut report,
                );
                continue;
            }
        };
        for check in quantum_checks(example, &bound) {
            push(check, &mut report);
        }
        push(
            Check::exact(
                format!("{}: classical maximum", example.name),
                classical_max(&expr),
                example.classical_max,
            ),
            &mut report,
        );
        push(term_set_check(example, &expr), &mut report);
        if options.histograms {
            push(histogram_check(example, &expr), &mut report);
        }
        if example.name == EXAMPLES[0].name {
            for check in game_checks(&expr, &bound) {
                push(check, &mut report);
            }
        }
    }
    report
}

fn prepare(ctx: &S4Context, example: &ReferenceExample) -> Result<(BellExpression, QuantumBound)> {
    let pairs = parse_pairs(example.pairs)?;
    let expr = bell_terms(&pairs, &ctx.orbit, &ctx.standard)?;
    let bound = max_eigenvalue_sum(&pairs, ctx)?;
    Ok((expr, bound))
}

fn orbit_checks(ctx: &S4Context) -> Vec<Check> {
    let table = fixtures::orbit_table();
    let worst = table
        .iter()
        .map(|(label, expected)| {
            let got = ctx.orbit.by_label(*label).coords;
            got.iter()
                .zip(expected)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max);
    let coords = Check::new(
        "orbit: 24 vectors match the table",
        table.len() == 24 && worst <= MATRIX_EPS,
        format!(
            "{} vectors, max coordinate deviation {worst:.1e}",
            table.len()
        ),
    );

    let labels = Check::from_result(
        "orbit: labels assigned bijectively",
        (|| {
            let seed = fixtures::orbit_vector(Label::new(1, 0)?);
            let orbit = Orbit::generate(&ctx.standard, seed)?.match_reference_labels()?;
            let distinct: BTreeSet<Label> = orbit.vectors().iter().map(|v| v.label).collect();
            let bases_orthonormal = (1..=8u8).all(|i| {
                (0..3u8).all(|a| {
                    (0..3u8).all(|b| {
                        let x = orbit.by_label(Label::new(i, a).expect("in range")).coords;
                        let y = orbit.by_label(Label::new(i, b).expect("in range")).coords;
                        let d: f64 = x.iter().zip(&y).map(|(p, q)| p * q).sum();
                        (d - if a == b { 1.0 } else { 0.0 }).abs() <= MATRIX_EPS
                    })
                })
            });
            Ok((
                distinct.len() == 24 && bases_orthonormal && orbit.cover_count() == 1,
                format!(
                    "{} distinct labels, bases orthonormal: {bases_orthonormal}, partitions: {}",
                    distinct.len(),
                    orbit.cover_count()
                ),
            ))
        })(),
    );
    vec![coords, labels]
}

fn change_of_basis_check(ctx: &S4Context) -> Check {
    Check::from_result(
        "change of basis C: orthogonal, blocks span the isotypic components",
        ctx.decomposition.validate_change_of_basis().map(|r| {
            let worst = r.max_deviation().max(r.orthogonality_deviation);
            (worst <= MATRIX_EPS, format!("max deviation {worst:.1e}"))
        }),
    )
}

fn diagonal_check(ctx: &S4Context) -> Check {
    Check::from_result(
        "x01:x01: λ_max",
        (|| {
            let bound = max_eigenvalue_sum(&parse_pairs("x01:x01")?, ctx)?;
            let c = Check::within("", bound.lambda_max, DIAGONAL_LAMBDA, REPORTED_EPS);
            Ok((c.passed, c.detail))
        })(),
    )
}

fn quantum_checks(example: &ReferenceExample, bound: &QuantumBound) -> Vec<Check> {
    let mut checks: Vec<Check> = bound
        .per_pair
        .iter()
        .zip(example.orbit_lambdas)
        .map(|(table, expected)| {
            Check::within(
                format!("{}: {} eigenvalue", example.name, table.pair),
                table.contribution,
                expected,
                REPORTED_EPS,
            )
        })
        .collect();
    checks.push(Check::within(
        format!("{}: λ_max", example.name),
        bound.lambda_max,
        example.lambda_max,
        REPORTED_EPS,
    ));
    let expected = expand_with_multiplicity(&bound.component_sums);
    let worst = expected
        .iter()
        .zip(&bound.spectrum)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    checks.push(Check::new(
        format!("{}: isotypic and direct spectra agree", example.name),
        expected.len() == bound.spectrum.len() && worst <= EIGEN_EPS,
        format!("max deviation {worst:.1e}"),
    ));
    checks
}

fn term_set_check(example: &ReferenceExample, expr: &BellExpression) -> Check {
    let got: BTreeSet<ProbabilityTerm> = expr.terms.iter().copied().collect();
    let expected: BTreeSet<ProbabilityTerm> = example.terms.iter().copied().collect();
    let missing = expected.difference(&got).count();
    let extra = got.difference(&expected).count();
    Check::new(
        format!("{}: Bell expression terms", example.name),
        expr.len() == expected.len() && missing == 0 && extra == 0,
        format!(
            "{} terms, {missing} missing, {extra} unexpected",
            expr.len()
        ),
    )
}

fn histogram_check(example: &ReferenceExample, expr: &BellExpression) -> Check {
    let histogram = classical_histogram(expr);
    let mut diffs = Vec::new();
    for (k, &expected) in example.histogram.iter().enumerate() {
        let c = k + 1;
        let got = histogram.count(c);
        if got != expected {
            diffs.push(format!("c={c}: expected {expected}, got {got}"));
        }
    }
    let configurations = 3u64.pow(2 * expr.settings as u32);
    let expected_weight = expr.len() as u64 * 3u64.pow(2 * expr.settings as u32 - 2);
    if histogram.total() != configurations {
        diffs.push(format!("total {} ≠ {configurations}", histogram.total()));
    }
    if histogram.weighted_total() != expected_weight {
        diffs.push(format!(
            "weighted total {} ≠ {expected_weight}",
            histogram.weighted_total()
        ));
    }
    let passed = diffs.is_empty();
    let detail = if passed {
        format!(
            "c=1..20 exact, total {configurations}, c(0)={}",
            histogram.count(0)
        )
    } else {
        diffs.join("; ")
    };
    Check::new(
        format!("{}: strategy histogram", example.name),
        passed,
        detail,
    )
}

fn game_checks(expr: &BellExpression, bound: &QuantumBound) -> Vec<Check> {
    let table = WinningTable::from_expression(expr);
    let mut diffs = Vec::new();
    if table.entries.len() != WINNING_TABLE_ONE.len() {
        diffs.push(format!(
            "{} rows, expected {}",
            table.entries.len(),
            WINNING_TABLE_ONE.len()
        ));
    }
    for ((s, t), answers) in WINNING_TABLE_ONE {
        if table.answers(s, t) != answers {
            diffs.push(format!("row {s}{t}"));
        }
    }
    let rows = Check::new(
        "Example I: winning table",
        diffs.is_empty(),
        if diffs.is_empty() {
            format!("{} rows, 3 pairs each", table.entries.len())
        } else {
            format!("mismatch: {}", diffs.join(", "))
        },
    );
    let value = game_values(expr, bound);
    let classical = Check::new(
        "Example I: classical win probability",
        value.classical.wins == 16 && value.classical.rounds == 64,
        format!("expected 16/64, got {}", value.classical),
    );
    let quantum = Check::within(
        "Example I: quantum win probability",
        value.quantum,
        QUANTUM_WIN_ONE,
        WIN_PROBABILITY_EPS,
    );
    vec![rows, classical, quantum]
}

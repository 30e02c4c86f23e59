//! Output assembly for `analyze` and `game`.
//!
//! JSON goes through `serde_json::Value`, whose maps are ordered by key, so
//! every document is emitted in canonical key order and re-rendering a parsed
//! document reproduces it byte for byte.

use std::collections::BTreeMap;
use std::io::{self, Write};

use serde::Serialize;

use s4bell::classical::{BellExpression, Strategy, StrategyHistogram};
use s4bell::game::{GameValue, WinningTable};
use s4bell::pairs::{format_pairs, OrbitPairSpec};
use s4bell::quantum::QuantumBound;

/// Smallest number of histogram rows printed, matching the reference tables.
const HISTOGRAM_ROWS: usize = 20;

pub fn write_json<T: Serialize>(out: &mut impl Write, value: &T) -> Result<(), serde_json::Error> {
    let value = serde_json::to_value(value)?;
    serde_json::to_writer_pretty(&mut *out, &value)?;
    writeln!(out).map_err(serde_json::Error::io)
}

#[derive(Debug, Serialize)]
pub struct PairRow {
    pub pair: OrbitPairSpec,
    /// Eigenvalue per isotypic component, keyed by label.
    pub eigenvalues: BTreeMap<String, f64>,
    pub max: f64,
    pub contribution: f64,
}

#[derive(Debug, Serialize)]
pub struct QuantumSection {
    pub lambda_max: f64,
    pub dominant: String,
    pub components: BTreeMap<String, f64>,
    pub per_pair: Vec<PairRow>,
    pub spectrum: Vec<f64>,
    pub state: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct ClassicalSection {
    pub max: usize,
    pub strategy: Strategy,
    pub terms: usize,
}

#[derive(Debug, Serialize)]
pub struct GameReport {
    pub winning_table: BTreeMap<String, Vec<String>>,
    pub permutation_structured: bool,
    pub classical: String,
    pub classical_value: f64,
    pub quantum: f64,
    pub violation: bool,
    pub optimal_alice: Vec<u8>,
    pub optimal_bob: Vec<u8>,
}

impl GameReport {
    pub fn new(table: &WinningTable, value: &GameValue, strategy: &Strategy) -> GameReport {
        GameReport {
            winning_table: table.to_json_map(),
            permutation_structured: table.is_permutation_structured(),
            classical: value.classical.to_string(),
            classical_value: value.classical.value(),
            quantum: value.quantum,
            violation: value.violates(),
            optimal_alice: strategy.alice.clone(),
            optimal_bob: strategy.bob.clone(),
        }
    }

    pub fn write_values(&self, out: &mut impl Write) -> io::Result<()> {
        writeln!(
            out,
            "classical win probability: {} = {:.4}",
            self.classical, self.classical_value
        )?;
        writeln!(out, "quantum win probability:   {:.4}", self.quantum)?;
        writeln!(
            out,
            "optimal classical answers: Alice {}, Bob {}",
            digits(&self.optimal_alice),
            digits(&self.optimal_bob)
        )?;
        writeln!(
            out,
            "violation: {}",
            if self.violation { "yes" } else { "no" }
        )
    }
}

#[derive(Debug, Serialize)]
pub struct AnalyzeReport {
    pub pairs: String,
    pub quantum: QuantumSection,
    pub classical: ClassicalSection,
    pub gap: f64,
    pub violation: bool,
    pub game: GameReport,
    /// `counts[c]` for `c = 0..=max(20, c_max)`, present with `--histogram`.
    pub histogram: Option<Vec<u64>>,
}

impl AnalyzeReport {
    pub fn new(
        pairs: &[OrbitPairSpec],
        expr: &BellExpression,
        bound: &QuantumBound,
        histogram: Option<StrategyHistogram>,
    ) -> AnalyzeReport {
        let (strategy, classical_max) = s4bell::classical::optimal_classical_strategy(expr);
        let value = s4bell::game::game_values(expr, bound);
        let table = WinningTable::from_expression(expr);
        let per_pair = bound
            .per_pair
            .iter()
            .map(|t| PairRow {
                pair: t.pair,
                eigenvalues: t
                    .eigenvalues
                    .iter()
                    .map(|e| (e.label.to_string(), e.value))
                    .collect(),
                max: t.max,
                contribution: t.contribution,
            })
            .collect();
        let histogram = histogram.map(|h| {
            let rows = HISTOGRAM_ROWS.max(h.c_max) + 1;
            (0..rows).map(|c| h.count(c)).collect()
        });
        let gap = bound.lambda_max - classical_max as f64;
        AnalyzeReport {
            pairs: format_pairs(pairs),
            quantum: QuantumSection {
                lambda_max: bound.lambda_max,
                dominant: bound.dominant.to_string(),
                components: bound
                    .component_sums
                    .iter()
                    .map(|e| (e.label.to_string(), e.value))
                    .collect(),
                per_pair,
                spectrum: bound.spectrum.clone(),
                state: bound.eigenvector.clone(),
            },
            classical: ClassicalSection {
                max: classical_max,
                strategy: strategy.clone(),
                terms: expr.len(),
            },
            gap,
            violation: value.violates(),
            game: GameReport::new(&table, &value, &strategy),
            histogram,
        }
    }

    pub fn write_text(&self, out: &mut impl Write) -> io::Result<()> {
        writeln!(out, "pairs: {}", self.pairs)?;
        writeln!(out)?;
        writeln!(
            out,
            "{:<10} {:>8} {:>8} {:>8} {:>8} {:>8}",
            "pair", "D", "D~", "D2", "D0", "max"
        )?;
        for row in &self.quantum.per_pair {
            let e = |k: &str| row.eigenvalues.get(k).copied().unwrap_or(f64::NAN);
            writeln!(
                out,
                "{:<10} {:>8.2} {:>8.2} {:>8.2} {:>8.2} {:>8.2}",
                row.pair.to_string(),
                e("D"),
                e("D~"),
                e("D2"),
                e("D0"),
                row.max
            )?;
        }
        let c = |k: &str| self.quantum.components.get(k).copied().unwrap_or(f64::NAN);
        writeln!(
            out,
            "{:<10} {:>8.2} {:>8.2} {:>8.2} {:>8.2}",
            "sum",
            c("D"),
            c("D~"),
            c("D2"),
            c("D0")
        )?;
        writeln!(out)?;
        writeln!(
            out,
            "quantum bound:   {:.2} (component {})",
            self.quantum.lambda_max, self.quantum.dominant
        )?;
        writeln!(
            out,
            "classical bound: {} ({} terms)",
            self.classical.max, self.classical.terms
        )?;
        writeln!(
            out,
            "gap:             {:.2}{}",
            self.gap,
            if self.violation {
                " (violation)"
            } else {
                " (no violation)"
            }
        )?;
        if let Some(histogram) = &self.histogram {
            writeln!(out)?;
            writeln!(out, "{:>3} {:>10}", "c", "count")?;
            for (c, n) in histogram.iter().enumerate() {
                writeln!(out, "{c:>3} {n:>10}")?;
            }
        }
        writeln!(out)?;
        writeln!(out, "winning table")?;
        for (st, answers) in &self.game.winning_table {
            writeln!(out, "  {st}: {}", answers.join(", "))?;
        }
        self.game.write_values(out)
    }

    pub fn write_pairs_csv(&self, out: &mut impl Write) -> csv::Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(["pair", "D", "D~", "D2", "D0", "max", "contribution"])?;
        for row in &self.quantum.per_pair {
            let mut record = vec![row.pair.to_string()];
            for key in ["D", "D~", "D2", "D0"] {
                record.push(format!(
                    "{:.2}",
                    row.eigenvalues.get(key).copied().unwrap_or(f64::NAN)
                ));
            }
            record.push(format!("{:.2}", row.max));
            record.push(format!("{:.2}", row.contribution));
            writer.write_record(&record)?;
        }
        writer.flush()?;
        Ok(())
    }

    pub fn write_histogram_csv(&self, out: &mut impl Write) -> csv::Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(["c", "count"])?;
        for (c, n) in self.histogram.iter().flatten().enumerate() {
            writer.write_record([c.to_string(), n.to_string()])?;
        }
        writer.flush()?;
        Ok(())
    }
}

fn digits(answers: &[u8]) -> String {
    answers.iter().map(|d| char::from(b'0' + d)).collect()
}

//! The nonlocal game behind a Bell expression. A referee picks settings
//! `(s, t)` uniformly from the `k²` pairs; Alice answers `a`, Bob answers `b`,
//! and they win iff `P(a_s = a, b_t = b)` is a term of the expression.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DVector;
use serde::Serialize;

use crate::classical::{classical_max, BellExpression, Strategy};
use crate::orbit::{Label, Orbit};
use crate::quantum::QuantumBound;
use crate::tolerance::EIGEN_EPS;

/// Winning answer pairs `(a, b)` for each setting pair `(s, t)` that occurs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WinningTable {
    pub settings: usize,
    pub entries: BTreeMap<(u8, u8), Vec<(u8, u8)>>,
}

impl WinningTable {
    pub fn from_expression(expr: &BellExpression) -> WinningTable {
        let mut entries: BTreeMap<(u8, u8), Vec<(u8, u8)>> = BTreeMap::new();
        for term in &expr.terms {
            entries
                .entry((term.s, term.t))
                .or_default()
                .push((term.a, term.b));
        }
        for answers in entries.values_mut() {
            answers.sort_unstable();
        }
        WinningTable {
            settings: expr.settings,
            entries,
        }
    }

    pub fn answers(&self, s: u8, t: u8) -> &[(u8, u8)] {
        self.entries.get(&(s, t)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// True when every occurring `(s, t)` has exactly three winning pairs
    /// with pairwise distinct `a` and pairwise distinct `b`.
    pub fn is_permutation_structured(&self) -> bool {
        self.entries.values().all(|answers| {
            let mut a: Vec<u8> = answers.iter().map(|p| p.0).collect();
            let mut b: Vec<u8> = answers.iter().map(|p| p.1).collect();
            a.sort_unstable();
            b.sort_unstable();
            answers.len() == 3 && a == [0, 1, 2] && b == [0, 1, 2]
        })
    }

    /// `"st" -> ["ab", …]`, keyed `"s,t"`.
    pub fn to_json_map(&self) -> BTreeMap<String, Vec<String>> {
        self.entries
            .iter()
            .map(|((s, t), answers)| {
                (
                    format!("{s},{t}"),
                    answers.iter().map(|(a, b)| format!("{a}{b}")).collect(),
                )
            })
            .collect()
    }
}

/// Compact text layout, one row per setting pair: `14 | 01, 10, 22`.
impl fmt::Display for WinningTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "s,t | Alice,Bob")?;
        for ((s, t), answers) in &self.entries {
            let rendered: Vec<String> = answers.iter().map(|(a, b)| format!("{a}{b}")).collect();
            writeln!(f, "{s}{t}  | {}", rendered.join(", "))?;
        }
        Ok(())
    }
}

/// An exact win probability `wins / rounds`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WinProbability {
    pub wins: u32,
    pub rounds: u32,
}

impl WinProbability {
    pub fn value(&self) -> f64 {
        self.wins as f64 / self.rounds as f64
    }
}

impl fmt::Display for WinProbability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.wins, self.rounds)
    }
}

/// Optimal classical and quantum winning probabilities.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GameValue {
    pub classical: WinProbability,
    pub quantum: f64,
}

impl GameValue {
    /// True when the quantum value exceeds the classical one by more than
    /// eigen-solver noise.
    pub fn violates(&self) -> bool {
        (self.quantum - self.classical.value()) * self.classical.rounds as f64 > EIGEN_EPS
    }
}

/// Classical value `max c(α) / k²` and quantum value `λ_max / k²`.
pub fn game_values(expr: &BellExpression, bound: &QuantumBound) -> GameValue {
    let rounds = (expr.settings * expr.settings) as u32;
    GameValue {
        classical: WinProbability {
            wins: classical_max(expr) as u32,
            rounds,
        },
        quantum: bound.lambda_max / rounds as f64,
    }
}

/// Win probability of deterministic answers `f_A`, `f_B` against `table`.
pub fn evaluate_strategy(alice: &[u8], bob: &[u8], table: &WinningTable) -> WinProbability {
    let mut wins = 0;
    for ((s, t), answers) in &table.entries {
        let answer = (alice[*s as usize - 1], bob[*t as usize - 1]);
        if answers.contains(&answer) {
            wins += 1;
        }
    }
    WinProbability {
        wins,
        rounds: (table.settings * table.settings) as u32,
    }
}

pub fn evaluate(strategy: &Strategy, table: &WinningTable) -> WinProbability {
    evaluate_strategy(&strategy.alice, &strategy.bob, table)
}

/// `(1/k²) Σ_terms |⟨x_a^s ⊗ x_b^t | v⟩|²`: the winning probability of the
/// shared state `v` computed from the term list rather than from `X`.
pub fn quantum_probability_from_terms(state: &[f64], expr: &BellExpression, orbit: &Orbit) -> f64 {
    let v = DVector::from_column_slice(state);
    let total: f64 = expr
        .terms
        .iter()
        .map(|term| {
            let alice = orbit
                .by_label(Label::new(term.s, term.a).expect("valid term"))
                .coords;
            let bob = orbit
                .by_label(Label::new(term.t, term.b).expect("valid term"))
                .coords;
            let product =
                DVector::from_column_slice(&alice).kronecker(&DVector::from_column_slice(&bob));
            product.dot(&v).powi(2)
        })
        .sum();
    total / (expr.settings * expr.settings) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{bell_terms, optimal_classical_strategy};
    use crate::context::S4Context;
    use crate::pairs::parse_pairs;
    use crate::quantum::max_eigenvalue_sum;
    use rand::{Rng, SeedableRng};

    const EXAMPLE_ONE: &str = "x01:x14,x01:x07,x01:x15";

    fn setup(spec: &str) -> (S4Context, BellExpression, QuantumBound) {
        let ctx = S4Context::new().unwrap();
        let pairs = parse_pairs(spec).unwrap();
        let expr = bell_terms(&pairs, &ctx.orbit, &ctx.standard).unwrap();
        let bound = max_eigenvalue_sum(&pairs, &ctx).unwrap();
        (ctx, expr, bound)
    }

    #[test]
    fn example_one_rows() {
        let (_, expr, _) = setup(EXAMPLE_ONE);
        let table = WinningTable::from_expression(&expr);
        assert_eq!(table.entries.len(), 24);
        assert_eq!(table.answers(1, 4), &[(0, 1), (1, 0), (2, 2)]);
        assert_eq!(table.answers(8, 6), &[(0, 0), (1, 1), (2, 2)]);
        assert!(table.answers(1, 1).is_empty());
        assert!(table.is_permutation_structured());
        assert_eq!(table.to_json_map()["1,4"], vec!["01", "10", "22"]);
        assert!(table.to_string().contains("14  | 01, 10, 22\n"));
    }

    #[test]
    fn example_one_values() {
        let (_, expr, bound) = setup(EXAMPLE_ONE);
        let value = game_values(&expr, &bound);
        assert_eq!(
            value.classical,
            WinProbability {
                wins: 16,
                rounds: 64
            }
        );
        assert_eq!(value.classical.value(), 0.25);
        assert!((value.quantum - 0.2514).abs() < 1e-4);
        assert!(value.violates());
    }

    #[test]
    fn diagonal_pair_is_not_a_violation() {
        let (_, expr, bound) = setup("x01:x01");
        let value = game_values(&expr, &bound);
        assert_eq!(value.classical.wins, 8);
        assert!(!value.violates());
    }

    #[test]
    fn example_two_values() {
        let (_, expr, bound) = setup("x01:x23,x01:x16,x01:x01");
        let value = game_values(&expr, &bound);
        assert_eq!(value.classical.wins, 18);
        assert!((value.quantum - bound.lambda_max / 64.0).abs() < 1e-15);
        assert!((value.quantum - 0.2892).abs() < 1e-4);
    }

    #[test]
    fn strategies_against_example_one() {
        let (_, expr, _) = setup(EXAMPLE_ONE);
        let table = WinningTable::from_expression(&expr);
        let (optimal, score) = optimal_classical_strategy(&expr);
        assert_eq!(
            evaluate(&optimal, &table),
            WinProbability {
                wins: 16,
                rounds: 64
            }
        );
        assert_eq!(score, 16);

        // All-zero answers win exactly on rows containing "00".
        let rows_with_00 = table
            .entries
            .values()
            .filter(|a| a.contains(&(0, 0)))
            .count() as u32;
        assert_eq!(
            evaluate_strategy(&[0; 8], &[0; 8], &table).wins,
            rows_with_00
        );
    }

    #[test]
    fn empty_table_never_wins() {
        let expr = BellExpression::from_terms(8, vec![]).unwrap();
        let table = WinningTable::from_expression(&expr);
        assert_eq!(evaluate_strategy(&[1; 8], &[2; 8], &table).wins, 0);
    }

    #[test]
    fn evaluation_matches_configuration_score() {
        let (_, expr, _) = setup(EXAMPLE_ONE);
        let table = WinningTable::from_expression(&expr);
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let classical = classical_max(&expr) as u32;
        let mut best = 0;
        for _ in 0..1000 {
            let index = rng.gen_range(0..43_046_721u64);
            let strategy = Strategy::decode(index, 8);
            let p = evaluate(&strategy, &table);
            assert_eq!(p.wins as usize, expr.score(&strategy));
            assert_eq!(p.rounds, 64);
            best = best.max(p.wins);
        }
        assert!(best <= classical);
    }

    #[test]
    fn operator_and_term_views_agree() {
        for spec in [
            EXAMPLE_ONE,
            "x01:x23,x01:x16,x01:x01",
            "x01:x25,x01:x14,x01:x18",
        ] {
            let (ctx, expr, bound) = setup(spec);
            let from_terms = quantum_probability_from_terms(&bound.eigenvector, &expr, &ctx.orbit);
            assert!(
                (from_terms - bound.lambda_max / 64.0).abs() < 1e-9,
                "{spec}"
            );
        }
    }
}

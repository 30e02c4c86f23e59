//! Classical side of the Bell expression: probability terms
//! `P(a_s = a, b_t = b)` generated from orbit pairs, and exhaustive
//! enumeration of the deterministic joint configurations
//! `α = (a_1, …, a_k, b_1, …, b_k) ∈ {0,1,2}^{2k}`.
//!
//! `c(α)` counts the terms satisfied by `α`. For a fixed Alice tuple the
//! count separates over Bob's settings,
//! `c(α) = Σ_t M[t][b_t]` with `M[t][b] = Σ_s F[s][t][a_s][b]`,
//! so the maximum is `Σ_t max_b M[t][b]` and the full histogram needs only
//! table lookups per Bob tuple.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::orbit::{self, Orbit, OUTCOMES};
use crate::pairs::OrbitPairSpec;
use crate::representation::Representation;

/// Settings per party in the full scenario.
pub const SETTINGS: usize = 8;

/// `P(a_s = a, b_t = b)`; settings are 1-based, outcomes 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ProbabilityTerm {
    pub s: u8,
    pub a: u8,
    pub t: u8,
    pub b: u8,
}

impl ProbabilityTerm {
    pub const fn new(s: u8, a: u8, t: u8, b: u8) -> Self {
        Self { s, a, t, b }
    }
}

impl fmt::Display for ProbabilityTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P(a_{}={},b_{}={})", self.s, self.a, self.t, self.b)
    }
}

/// A sum of distinct probability terms over `settings` settings per party.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BellExpression {
    pub settings: usize,
    pub terms: Vec<ProbabilityTerm>,
    /// Orbit pairs the terms came from (24 terms each, in order).
    pub pairs: Vec<OrbitPairSpec>,
}

impl BellExpression {
    /// Validates ranges and rejects duplicate terms.
    pub fn from_terms(settings: usize, terms: Vec<ProbabilityTerm>) -> Result<BellExpression> {
        if settings == 0 || settings > SETTINGS {
            return Err(Error::Internal(format!(
                "settings per party must be in 1..={SETTINGS}, got {settings}"
            )));
        }
        let mut seen = std::collections::HashSet::with_capacity(terms.len());
        for term in &terms {
            let in_range = |setting: u8, outcome: u8| {
                (1..=settings as u8).contains(&setting) && (outcome as usize) < OUTCOMES
            };
            if !in_range(term.s, term.a) || !in_range(term.t, term.b) {
                return Err(Error::Internal(format!(
                    "term {term} outside {settings} settings × {OUTCOMES} outcomes"
                )));
            }
            if !seen.insert(*term) {
                return Err(Error::DuplicateTerm(term.to_string()));
            }
        }
        Ok(BellExpression {
            settings,
            terms,
            pairs: Vec::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Keeps only terms with both settings `≤ settings`.
    pub fn restrict(&self, settings: usize) -> Result<BellExpression> {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.s as usize <= settings && t.t as usize <= settings)
            .copied()
            .collect();
        BellExpression::from_terms(settings, terms)
    }

    /// `F[s][t][a][b]` flattened; 1 when the term is present.
    fn indicator(&self) -> Vec<u32> {
        let k = self.settings;
        let mut f = vec![0u32; k * k * OUTCOMES * OUTCOMES];
        for term in &self.terms {
            f[indicator_index(
                k,
                term.s as usize - 1,
                term.t as usize - 1,
                term.a as usize,
                term.b as usize,
            )] += 1;
        }
        f
    }

    /// Number of terms satisfied by a deterministic strategy.
    pub fn score(&self, strategy: &Strategy) -> usize {
        self.terms
            .iter()
            .filter(|t| {
                strategy.alice[t.s as usize - 1] == t.a && strategy.bob[t.t as usize - 1] == t.b
            })
            .count()
    }
}

fn indicator_index(k: usize, s: usize, t: usize, a: usize, b: usize) -> usize {
    ((s * k + t) * OUTCOMES + a) * OUTCOMES + b
}

/// Terms of `Σ_n Σ_g P(a_s = a, b_t = b)` where `(s, a)` labels `D(g)φ_n` and
/// `(t, b)` labels `D(g)ψ_n` in the reference orbit. Ordered by pair, then
/// by canonical element index.
pub fn bell_terms(
    pairs: &[OrbitPairSpec],
    orbit: &Orbit,
    standard: &Representation,
) -> Result<BellExpression> {
    let mut terms = Vec::with_capacity(pairs.len() * standard.matrices().len());
    for pair in pairs {
        let phi = orbit.by_label(pair.phi).coords;
        let psi = orbit.by_label(pair.psi).coords;
        for m in standard.matrices() {
            let image_phi = orbit::apply(m, &phi);
            let image_psi = orbit::apply(m, &psi);
            let alice = orbit
                .lookup(&image_phi)
                .ok_or(Error::OrbitLookup(image_phi))?;
            let bob = orbit
                .lookup(&image_psi)
                .ok_or(Error::OrbitLookup(image_psi))?;
            terms.push(ProbabilityTerm::new(
                alice.label.basis(),
                alice.label.outcome(),
                bob.label.basis(),
                bob.label.outcome(),
            ));
        }
    }
    let mut expr = BellExpression::from_terms(SETTINGS, terms)?;
    expr.pairs = pairs.to_vec();
    Ok(expr)
}

/// Deterministic answers `f_A(s)`, `f_B(t)`, indexed from setting 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Strategy {
    pub alice: Vec<u8>,
    pub bob: Vec<u8>,
}

impl Strategy {
    /// Base-3 index with Alice's answers in digits `0..k` and Bob's in
    /// `k..2k`, least significant digit first.
    pub fn encode(&self) -> u64 {
        self.alice
            .iter()
            .chain(&self.bob)
            .rev()
            .fold(0u64, |acc, &d| acc * 3 + d as u64)
    }

    pub fn decode(index: u64, settings: usize) -> Strategy {
        let mut rest = index;
        let mut digits = Vec::with_capacity(2 * settings);
        for _ in 0..2 * settings {
            digits.push((rest % 3) as u8);
            rest /= 3;
        }
        let bob = digits.split_off(settings);
        Strategy { alice: digits, bob }
    }
}

fn pow3(n: usize) -> usize {
    3usize.pow(n as u32)
}

/// Alice tuple from its base-3 index, setting 1 in the least significant digit.
fn alice_digits(mut index: usize, settings: usize, out: &mut [u8]) {
    for d in out.iter_mut().take(settings) {
        *d = (index % 3) as u8;
        index /= 3;
    }
}

/// `M[t][b] = Σ_s F[s][t][a_s][b]`, flattened as `t·3 + b`.
fn bob_marginals(f: &[u32], settings: usize, alice: &[u8], m: &mut [u32]) {
    m.iter_mut().for_each(|x| *x = 0);
    for (s, &a) in alice.iter().enumerate().take(settings) {
        for t in 0..settings {
            for b in 0..OUTCOMES {
                m[t * OUTCOMES + b] += f[indicator_index(settings, s, t, a as usize, b)];
            }
        }
    }
}

/// Sums `Σ_{t ∈ range} M[t][b_t]` for every assignment of the settings in `range`.
fn partial_sums(m: &[u32], range: std::ops::Range<usize>) -> Vec<u32> {
    let mut sums = vec![0u32];
    for t in range {
        sums = sums
            .iter()
            .flat_map(|&base| (0..OUTCOMES).map(move |b| base + m[t * OUTCOMES + b]))
            .collect();
    }
    sums
}

/// Distribution of `c(α)` over all `3^{2k}` configurations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrategyHistogram {
    /// `counts[c]` = number of configurations with `c(α) = c`, for `c = 0..=terms`.
    pub counts: Vec<u64>,
    pub c_max: usize,
}

impl StrategyHistogram {
    pub fn count(&self, c: usize) -> u64 {
        self.counts.get(c).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `Σ_c c·counts[c]`.
    pub fn weighted_total(&self) -> u64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(c, &n)| c as u64 * n)
            .sum()
    }
}

/// Full histogram of `c(α)`. Alice tuples are independent chunks scanned in
/// parallel; each chunk fills a private histogram and the merge is a sum, so
/// the result does not depend on scheduling.
pub fn classical_histogram(expr: &BellExpression) -> StrategyHistogram {
    classical_histogram_with_progress(expr, |_| {})
}

/// As [`classical_histogram`], calling `progress` once per finished Alice chunk.
pub fn classical_histogram_with_progress<P>(expr: &BellExpression, progress: P) -> StrategyHistogram
where
    P: Fn(usize) + Sync,
{
    let k = expr.settings;
    let f = expr.indicator();
    let bins = expr.len() + 1;
    let lo_settings = k / 2;

    let counts = (0..pow3(k))
        .into_par_iter()
        .fold(
            || vec![0u64; bins],
            |mut hist, alice_index| {
                let mut alice = [0u8; SETTINGS];
                let mut m = [0u32; SETTINGS * OUTCOMES];
                alice_digits(alice_index, k, &mut alice);
                bob_marginals(&f, k, &alice, &mut m);
                let lo = partial_sums(&m, 0..lo_settings);
                let hi = partial_sums(&m, lo_settings..k);
                for &h in &hi {
                    for &l in &lo {
                        hist[(h + l) as usize] += 1;
                    }
                }
                progress(alice_index);
                hist
            },
        )
        .reduce(
            || vec![0u64; bins],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let c_max = counts.iter().rposition(|&n| n > 0).unwrap_or(0);
    StrategyHistogram { counts, c_max }
}

/// `max_α c(α)`: for each Alice tuple Bob answers each setting independently.
pub fn classical_max(expr: &BellExpression) -> usize {
    let k = expr.settings;
    let f = expr.indicator();
    (0..pow3(k))
        .into_par_iter()
        .map(|alice_index| {
            let mut alice = [0u8; SETTINGS];
            let mut m = [0u32; SETTINGS * OUTCOMES];
            alice_digits(alice_index, k, &mut alice);
            bob_marginals(&f, k, &alice, &mut m);
            m.chunks(OUTCOMES)
                .take(k)
                .map(|row| *row.iter().max().expect("three outcomes"))
                .sum::<u32>() as usize
        })
        .max()
        .unwrap_or(0)
}

/// The lexicographically first configuration `(a_1 … a_k, b_1 … b_k)`
/// attaining `max_α c(α)`, with its score.
pub fn optimal_classical_strategy(expr: &BellExpression) -> (Strategy, usize) {
    let k = expr.settings;
    let f = expr.indicator();
    let mut best: Option<(Strategy, usize)> = None;
    let mut alice = vec![0u8; k];
    let mut m = [0u32; SETTINGS * OUTCOMES];
    for lex in 0..pow3(k) {
        // Lexicographic order puts a_1 in the most significant digit.
        let mut rest = lex;
        for d in alice.iter_mut().rev() {
            *d = (rest % 3) as u8;
            rest /= 3;
        }
        bob_marginals(&f, k, &alice, &mut m);
        let mut bob = Vec::with_capacity(k);
        let mut score = 0usize;
        for row in m.chunks(OUTCOMES).take(k) {
            let top = *row.iter().max().expect("three outcomes");
            bob.push(row.iter().position(|&x| x == top).expect("max exists") as u8);
            score += top as usize;
        }
        if best.as_ref().is_none_or(|(_, s)| score > *s) {
            best = Some((
                Strategy {
                    alice: alice.clone(),
                    bob,
                },
                score,
            ));
        }
    }
    best.expect("at least one configuration")
}

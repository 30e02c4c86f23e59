//! Exhaustive search over Bob's seeds for Bell violations.
//!
//! Alice's seed is fixed; Bob's seeds range over unordered multisets of the
//! 24 orbit labels (the operator and the term list are sums over pairs, so
//! order does not matter). Each entry gets its quantum `λ_max` and classical
//! maximum, and entries are ranked by the gap between the two.

use rayon::prelude::*;
use serde::Serialize;

use crate::classical::{bell_terms, classical_max};
use crate::context::S4Context;
use crate::error::{Error, Result};
use crate::orbit::{Label, GENERIC_ORBIT_SIZE};
use crate::pairs::OrbitPairSpec;
use crate::quantum::max_eigenvalue_sum;
use crate::tolerance::EIGEN_EPS;

pub const MAX_SCAN_ORBITS: usize = 3;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanEntry {
    pub pairs: Vec<OrbitPairSpec>,
    pub lambda_max: f64,
    pub classical_max: usize,
    /// `λ_max − classical_max`; positive means a violation.
    pub gap: f64,
}

impl ScanEntry {
    pub fn is_violation(&self) -> bool {
        self.gap > EIGEN_EPS
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub orbits: usize,
    pub phi: Label,
    /// Multisets examined, including skipped ones.
    pub candidates: usize,
    /// Multisets whose term lists collide (the same `(s, a, t, b)` twice).
    pub skipped_duplicates: usize,
    /// Evaluated entries, largest gap first.
    pub entries: Vec<ScanEntry>,
}

impl ScanReport {
    /// Entries whose gap exceeds eigen-solver noise.
    pub fn violations(&self) -> impl Iterator<Item = &ScanEntry> {
        self.entries.iter().filter(|e| e.is_violation())
    }

    pub fn find(&self, pairs: &[OrbitPairSpec]) -> Option<&ScanEntry> {
        let mut key = pairs.to_vec();
        key.sort();
        self.entries.iter().find(|e| e.pairs == key)
    }
}

/// Non-decreasing index sequences of length `k` over `0..n`.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn extend(
        start: usize,
        n: usize,
        k: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            extend(i, n, k, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    extend(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

pub fn scan(ctx: &S4Context, orbits: usize, phi: Label) -> Result<ScanReport> {
    if !(1..=MAX_SCAN_ORBITS).contains(&orbits) {
        return Err(Error::Internal(format!(
            "scan supports 1..={MAX_SCAN_ORBITS} orbits, got {orbits}"
        )));
    }
    let candidates = multisets(GENERIC_ORBIT_SIZE, orbits);
    let results: Vec<Option<ScanEntry>> = candidates
        .par_iter()
        .map(|bob| -> Result<Option<ScanEntry>> {
            let pairs: Vec<OrbitPairSpec> = bob
                .iter()
                .map(|&k| OrbitPairSpec::new(phi, Label::from_flat_index(k)))
                .collect();
            let expr = match bell_terms(&pairs, &ctx.orbit, &ctx.standard) {
                Ok(expr) => expr,
                Err(Error::DuplicateTerm(_)) => return Ok(None),
                Err(e) => return Err(e),
            };
            let bound = max_eigenvalue_sum(&pairs, ctx)?;
            let classical = classical_max(&expr);
            Ok(Some(ScanEntry {
                pairs,
                lambda_max: bound.lambda_max,
                classical_max: classical,
                gap: bound.lambda_max - classical as f64,
            }))
        })
        .collect::<Result<_>>()?;

    let skipped_duplicates = results.iter().filter(|r| r.is_none()).count();
    let mut entries: Vec<ScanEntry> = results.into_iter().flatten().collect();
    entries.sort_by(|a, b| b.gap.total_cmp(&a.gap).then_with(|| a.pairs.cmp(&b.pairs)));
    Ok(ScanReport {
        orbits,
        phi,
        candidates: candidates.len(),
        skipped_duplicates,
        entries,
    })
}

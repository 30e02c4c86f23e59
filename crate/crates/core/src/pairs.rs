//! Orbit-pair specifications `(φ_n, ψ_n)` and their textual form
//! `x<α><i>:x<β><j>[,…]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orbit::Label;

/// Alice's seed `φ` and Bob's seed `ψ`, both named by their label in the
/// reference orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrbitPairSpec {
    pub phi: Label,
    pub psi: Label,
}

impl OrbitPairSpec {
    pub fn new(phi: Label, psi: Label) -> Self {
        Self { phi, psi }
    }
}

impl fmt::Display for OrbitPairSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.phi, self.psi)
    }
}

/// Renders pairs back into the comma-separated form accepted by [`parse_pairs`].
pub fn format_pairs(pairs: &[OrbitPairSpec]) -> String {
    pairs
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Parses `"x01:x14,x01:x07,x01:x15"`. Errors report the character offset of
/// the offending token.
pub fn parse_pairs(input: &str) -> Result<Vec<OrbitPairSpec>> {
    let err = |position: usize, reason: String| Error::PairSpecParse {
        input: input.to_string(),
        position,
        reason,
    };
    let label_at = |text: &str, position: usize| -> Result<Label> {
        let trimmed = text.trim();
        let lead = text.len() - text.trim_start().len();
        trimmed.parse::<Label>().map_err(|e| match e {
            Error::InvalidLabel(reason) => err(position + lead, reason),
            other => other,
        })
    };

    if input.trim().is_empty() {
        return Err(err(0, "empty pair list".into()));
    }
    let mut pairs = Vec::new();
    let mut offset = 0;
    for chunk in input.split(',') {
        let Some((left, right)) = chunk.split_once(':') else {
            return Err(err(
                offset,
                format!("{:?} lacks ':' between the two labels", chunk.trim()),
            ));
        };
        let phi = label_at(left, offset)?;
        let psi = label_at(right, offset + left.len() + 1)?;
        pairs.push(OrbitPairSpec::new(phi, psi));
        offset += chunk.len() + 1;
    }
    Ok(pairs)
}

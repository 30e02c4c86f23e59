//! Finite permutation groups: elements of S_n in one-line notation, closure
//! under generators, parity and cycle types.
//!
//! Composition follows `(p∘q)(k) = p(q(k))` everywhere, so `p.compose(&q)`
//! applies `q` first.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{0, …, n-1}`. `images[k]` is where `k` is sent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::NotABijection { images });
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// The transposition swapping `i` and `j` (0-based).
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, j);
        Self { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, k: usize) -> usize {
        self.images[k]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &i)| k == i)
    }

    /// `self ∘ other`, i.e. `other` acts first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&k| self.images[k]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (k, &i) in self.images.iter().enumerate() {
            images[i] = k;
        }
        Permutation { images }
    }

    /// Disjoint cycles of length ≥ 2, each starting at its smallest point,
    /// ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut k = self.images[start];
            while k != start {
                seen[k] = true;
                cycle.push(k);
                k = self.images[k];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle lengths including fixed points, sorted descending: a partition of n.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lengths = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                len += 1;
                k = self.images[k];
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    /// +1 for even permutations, −1 for odd ones.
    pub fn sign(&self) -> i32 {
        let transpositions: usize = self.cycle_type().iter().map(|l| l - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Adjacent transpositions `s_{i_1}, …, s_{i_m}` (each `i` meaning the swap
    /// of `i` and `i+1`) whose product `s_{i_1} ∘ … ∘ s_{i_m}` is `self`.
    /// Obtained by bubble-sorting the one-line form.
    pub fn adjacent_factorization(&self) -> Vec<usize> {
        let mut line = self.images.clone();
        let mut swaps = Vec::new();
        loop {
            let mut swapped = false;
            for i in 0..line.len().saturating_sub(1) {
                if line[i] > line[i + 1] {
                    line.swap(i, i + 1);
                    swaps.push(i);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        // self ∘ s_{w_1} ∘ … ∘ s_{w_m} = e, hence self = s_{w_m} ∘ … ∘ s_{w_1}.
        swaps.reverse();
        swaps
    }

    /// Parses cycle notation with 1-based points: `"(1 2)(3 4)"`, `"(12)(34)"`,
    /// `"(1,2,3)"` or `"e"` for the identity. A product of overlapping cycles is
    /// composed right to left like any other product.
    pub fn parse_cycles(input: &str, n: usize) -> Result<Permutation> {
        let err = |position: usize, reason: &str| Error::CycleParse {
            input: input.to_string(),
            position,
            reason: reason.to_string(),
        };
        let trimmed = input.trim();
        if trimmed == "e" || trimmed == "()" || trimmed == "id" {
            return Ok(Permutation::identity(n));
        }
        if trimmed.is_empty() {
            return Err(err(0, "empty input"));
        }

        let mut result = Permutation::identity(n);
        let bytes = input.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let c = bytes[pos];
            if c.is_ascii_whitespace() {
                pos += 1;
                continue;
            }
            if c != b'(' {
                return Err(err(pos, "expected '('"));
            }
            let close = input[pos..]
                .find(')')
                .map(|off| pos + off)
                .ok_or_else(|| err(pos, "unclosed '('"))?;
            let body = &input[pos + 1..close];
            let tokens: Vec<(usize, &str)> =
                if body.contains(|ch: char| ch == ',' || ch.is_whitespace()) {
                    let mut toks = Vec::new();
                    let mut offset = pos + 1;
                    for piece in body.split(|ch: char| ch == ',' || ch.is_whitespace()) {
                        if !piece.is_empty() {
                            toks.push((offset, piece));
                        }
                        offset += piece.len() + 1;
                    }
                    toks
                } else {
                    body.char_indices()
                        .map(|(i, ch)| (pos + 1 + i, &body[i..i + ch.len_utf8()]))
                        .collect()
                };

            let mut points = Vec::with_capacity(tokens.len());
            for (at, tok) in tokens {
                let value: usize = tok
                    .parse()
                    .map_err(|_| err(at, "expected a point number"))?;
                if value == 0 || value > n {
                    return Err(err(at, &format!("point {value} outside 1..={n}")));
                }
                if points.contains(&(value - 1)) {
                    return Err(err(at, &format!("point {value} repeated within a cycle")));
                }
                points.push(value - 1);
            }

            let mut images: Vec<usize> = (0..n).collect();
            for (k, &p) in points.iter().enumerate() {
                images[p] = points[(k + 1) % points.len()];
            }
            let cycle = Permutation { images };
            result = result.compose(&cycle)?;
            pos = close + 1;
        }
        Ok(result)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

/// Cycle notation with 1-based points, `e` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "e");
        }
        for cycle in cycles {
            let points: Vec<String> = cycle.iter().map(|k| (k + 1).to_string()).collect();
            write!(f, "({})", points.join(" "))?;
        }
        Ok(())
    }
}

/// All elements of a finite permutation group, sorted lexicographically by
/// one-line images. Element indices into this list are the canonical
/// element indices used throughout the crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    degree: usize,
    elements: Vec<Permutation>,
}

impl GroupTable {
    /// Closure of `generators` under composition.
    pub fn generate(generators: &[Permutation]) -> Result<GroupTable> {
        let first = generators.first().ok_or(Error::NoGenerators)?;
        let degree = first.degree();
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: bad.degree(),
            });
        }

        let identity = Permutation::identity(degree);
        let mut found: BTreeSet<Permutation> = BTreeSet::new();
        found.insert(identity.clone());
        let mut queue = VecDeque::from([identity]);
        while let Some(current) = queue.pop_front() {
            for generator in generators {
                let next = current.compose(generator)?;
                if found.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        Ok(GroupTable {
            degree,
            elements: found.into_iter().collect(),
        })
    }

    /// The full symmetric group S_n, generated by all transpositions.
    pub fn symmetric(n: usize) -> GroupTable {
        let mut generators = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                generators.push(Permutation::transposition(n, i, j));
            }
        }
        if generators.is_empty() {
            generators.push(Permutation::identity(n));
        }
        GroupTable::generate(&generators).expect("transpositions share a degree")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, index: usize) -> &Permutation {
        &self.elements[index]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    pub fn identity_index(&self) -> usize {
        self.index_of(&Permutation::identity(self.degree))
            .expect("every group contains the identity")
    }

    /// Index of `element(i) ∘ element(j)`.
    pub fn product_index(&self, i: usize, j: usize) -> usize {
        let product = self.elements[i]
            .compose(&self.elements[j])
            .expect("group elements share a degree");
        self.index_of(&product).expect("group is closed")
    }

    /// Element indices grouped by cycle type. For S_n these are exactly the
    /// conjugacy classes.
    pub fn classes_by_cycle_type(&self) -> BTreeMap<Vec<usize>, Vec<usize>> {
        let mut classes: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (i, p) in self.elements.iter().enumerate() {
            classes.entry(p.cycle_type()).or_default().push(i);
        }
        classes
    }
}

//! Orbits of the standard representation: the 24-vector generic orbit split
//! into eight orthonormal measurement bases, its `x_α^i` labels, and the
//! degenerate tetrahedron orbit.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixtures::{self, Vec3};
use crate::permgroup::GroupTable;
use crate::representation::{RepMatrix, Representation};
use crate::tolerance::{MATRIX_EPS, ORTHOGONALITY_EPS, VECTOR_MATCH};

pub const BASES: usize = 8;
pub const OUTCOMES: usize = 3;
pub const GENERIC_ORBIT_SIZE: usize = 24;

/// `x_α^i`: measurement basis (setting) `i ∈ 1..=8`, outcome `α ∈ 0..=2`.
/// Written `x<α><i>`, e.g. `x01` for `x_0^1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Label {
    basis: u8,
    outcome: u8,
}

impl Label {
    pub fn new(basis: u8, outcome: u8) -> Result<Label> {
        if !(1..=BASES as u8).contains(&basis) || outcome as usize >= OUTCOMES {
            return Err(Error::InvalidLabel(format!(
                "basis {basis}, outcome {outcome}"
            )));
        }
        Ok(Label { basis, outcome })
    }

    /// Basis index `i`, 1-based.
    pub fn basis(self) -> u8 {
        self.basis
    }

    /// Outcome `α`, 0-based.
    pub fn outcome(self) -> u8 {
        self.outcome
    }

    /// `3(i−1) + α`, the position in label order.
    pub fn flat_index(self) -> usize {
        3 * (self.basis as usize - 1) + self.outcome as usize
    }

    pub fn from_flat_index(index: usize) -> Label {
        Label {
            basis: (index / 3) as u8 + 1,
            outcome: (index % 3) as u8,
        }
    }

    pub fn all() -> impl Iterator<Item = Label> {
        (0..GENERIC_ORBIT_SIZE).map(Label::from_flat_index)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}{}", self.outcome, self.basis)
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Label> {
        let bytes = s.as_bytes();
        if bytes.len() != 3 || bytes[0] != b'x' {
            return Err(Error::InvalidLabel(format!(
                "{s:?} is not of the form x<α><i>"
            )));
        }
        let digit = |b: u8| -> Result<u8> {
            if b.is_ascii_digit() {
                Ok(b - b'0')
            } else {
                Err(Error::InvalidLabel(format!(
                    "{s:?}: '{}' is not a digit",
                    b as char
                )))
            }
        };
        Label::new(digit(bytes[2])?, digit(bytes[1])?)
            .map_err(|_| Error::InvalidLabel(format!("{s:?}: need α in 0..=2 and i in 1..=8")))
    }
}

impl TryFrom<String> for Label {
    type Error = Error;
    fn try_from(s: String) -> Result<Label> {
        s.parse()
    }
}

impl From<Label> for String {
    fn from(l: Label) -> String {
        l.to_string()
    }
}

pub(crate) fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn distance(a: &Vec3, b: &Vec3) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

pub(crate) fn apply(m: &RepMatrix, v: &Vec3) -> Vec3 {
    let mut out = [0.0; 3];
    for (r, o) in out.iter_mut().enumerate() {
        *o = m[(r, 0)] * v[0] + m[(r, 1)] * v[1] + m[(r, 2)] * v[2];
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitVector {
    pub coords: Vec3,
    /// Smallest canonical element index `g` with `D(g)·seed = coords`.
    pub element: usize,
    pub label: Label,
}

/// A generic orbit with its partition into orthonormal triples. Triple `i−1`
/// holds the vectors labeled `x_0^i, x_1^i, x_2^i` in that order.
#[derive(Clone, Debug)]
pub struct Orbit {
    seed: Vec3,
    vectors: Vec<OrbitVector>,
    triples: Vec<[usize; 3]>,
    cover_count: usize,
}

/// Result of splitting vectors into mutually orthogonal triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    /// The lexicographically first exact cover.
    pub triples: Vec<[usize; 3]>,
    /// How many exact covers exist in total.
    pub cover_count: usize,
}

/// Splits `vectors` into mutually orthogonal triples by exact cover over the
/// orthogonality graph. The search always extends the lowest uncovered
/// vector, so triples come out ordered by their smallest index and sorted
/// internally.
pub fn partition_into_bases(vectors: &[Vec3]) -> Result<Partition> {
    let n = vectors.len();
    if !n.is_multiple_of(3) {
        return Err(Error::PartitionFailure(format!(
            "{n} vectors cannot form triples"
        )));
    }
    let orthogonal: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| i != j && dot(&vectors[i], &vectors[j]).abs() < ORTHOGONALITY_EPS)
                .collect()
        })
        .collect();

    struct Search<'a> {
        orthogonal: &'a [Vec<bool>],
        covered: Vec<bool>,
        current: Vec<[usize; 3]>,
        first: Option<Vec<[usize; 3]>>,
        count: usize,
    }

    impl Search<'_> {
        fn run(&mut self) {
            let Some(v) = self.covered.iter().position(|c| !c) else {
                self.count += 1;
                if self.first.is_none() {
                    self.first = Some(self.current.clone());
                }
                return;
            };
            let n = self.covered.len();
            self.covered[v] = true;
            for u in v + 1..n {
                if self.covered[u] || !self.orthogonal[v][u] {
                    continue;
                }
                for w in u + 1..n {
                    if self.covered[w] || !self.orthogonal[v][w] || !self.orthogonal[u][w] {
                        continue;
                    }
                    self.covered[u] = true;
                    self.covered[w] = true;
                    self.current.push([v, u, w]);
                    self.run();
                    self.current.pop();
                    self.covered[u] = false;
                    self.covered[w] = false;
                }
            }
            self.covered[v] = false;
        }
    }

    let mut search = Search {
        orthogonal: &orthogonal,
        covered: vec![false; n],
        current: Vec::with_capacity(n / 3),
        first: None,
        count: 0,
    };
    search.run();
    match search.first {
        Some(triples) => Ok(Partition {
            triples,
            cover_count: search.count,
        }),
        None => Err(Error::PartitionFailure(
            "no exact cover of the orthogonality graph".into(),
        )),
    }
}

/// Distinct images `D(g)·seed`, each with the smallest element index producing it.
fn distinct_images(rep: &Representation, seed: &Vec3) -> Vec<(usize, Vec3)> {
    let mut distinct: Vec<(usize, Vec3)> = Vec::new();
    for (g, m) in rep.matrices().iter().enumerate() {
        let image = apply(m, seed);
        if !distinct
            .iter()
            .any(|(_, v)| distance(v, &image) < VECTOR_MATCH)
        {
            distinct.push((g, image));
        }
    }
    distinct
}

fn check_seed(rep: &Representation, seed: &Vec3) -> Result<()> {
    if rep.dim() != 3 {
        return Err(Error::RepresentationCorrupt(format!(
            "orbits need a 3-dimensional representation, got dimension {}",
            rep.dim()
        )));
    }
    let norm = dot(seed, seed).sqrt();
    if (norm - 1.0).abs() > MATRIX_EPS {
        return Err(Error::NotUnitVector { norm });
    }
    Ok(())
}

impl Orbit {
    /// The orbit `{D(g)·seed}` with canonical labels: triples ordered by the
    /// smallest element index they contain, vectors inside a triple by
    /// element index.
    pub fn generate(rep: &Representation, seed: Vec3) -> Result<Orbit> {
        check_seed(rep, &seed)?;
        let images = distinct_images(rep, &seed);
        if images.len() != GENERIC_ORBIT_SIZE {
            return Err(Error::DegenerateOrbit {
                size: images.len(),
                expected: GENERIC_ORBIT_SIZE,
            });
        }
        let coords: Vec<Vec3> = images.iter().map(|(_, v)| *v).collect();
        let partition = partition_into_bases(&coords)?;

        let mut labels = vec![Label::from_flat_index(0); images.len()];
        for (i, triple) in partition.triples.iter().enumerate() {
            for (alpha, &v) in triple.iter().enumerate() {
                labels[v] = Label::new(i as u8 + 1, alpha as u8)?;
            }
        }
        let vectors = images
            .into_iter()
            .zip(labels)
            .map(|((element, coords), label)| OrbitVector {
                coords,
                element,
                label,
            })
            .collect();
        Ok(Orbit {
            seed,
            vectors,
            triples: partition.triples,
            cover_count: partition.cover_count,
        })
    }

    /// The orbit of `x_0^1`, labeled with the bundled `x_α^i` table.
    pub fn reference(rep: &Representation) -> Result<Orbit> {
        let seed = fixtures::orbit_vector(Label::new(1, 0)?);
        Orbit::generate(rep, seed)?.match_reference_labels()
    }

    /// Relabels every vector with its `(i, α)` from the bundled table.
    pub fn match_reference_labels(mut self) -> Result<Orbit> {
        let table = fixtures::orbit_table();
        let mut used = vec![false; table.len()];
        for v in &mut self.vectors {
            let matches: Vec<usize> = table
                .iter()
                .enumerate()
                .filter(|(_, (_, t))| distance(t, &v.coords) < VECTOR_MATCH)
                .map(|(k, _)| k)
                .collect();
            let k = match matches.as_slice() {
                [k] => *k,
                [] => {
                    return Err(Error::FixtureMismatch(format!(
                        "orbit vector {:?} matches no labeled vector",
                        v.coords
                    )))
                }
                _ => {
                    return Err(Error::FixtureMismatch(format!(
                        "orbit vector {:?} matches several labeled vectors",
                        v.coords
                    )))
                }
            };
            if used[k] {
                return Err(Error::FixtureMismatch(format!(
                    "label {} matched twice",
                    table[k].0
                )));
            }
            used[k] = true;
            v.label = table[k].0;
        }

        // The computed triples must be exactly the labeled bases.
        for triple in &self.triples {
            let basis = self.vectors[triple[0]].label.basis();
            if triple
                .iter()
                .any(|&v| self.vectors[v].label.basis() != basis)
            {
                return Err(Error::FixtureMismatch(format!(
                    "computed triple {triple:?} mixes labeled bases"
                )));
            }
        }
        let mut triples = vec![[0usize; 3]; BASES];
        for (idx, v) in self.vectors.iter().enumerate() {
            triples[v.label.basis() as usize - 1][v.label.outcome() as usize] = idx;
        }
        self.triples = triples;
        Ok(self)
    }

    pub fn seed(&self) -> Vec3 {
        self.seed
    }

    pub fn vectors(&self) -> &[OrbitVector] {
        &self.vectors
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    /// Number of distinct exact covers of the orthogonality graph.
    pub fn cover_count(&self) -> usize {
        self.cover_count
    }

    pub fn by_label(&self, label: Label) -> &OrbitVector {
        let triple = self.triples[label.basis() as usize - 1];
        &self.vectors[triple[label.outcome() as usize]]
    }

    /// The orbit vector within [`VECTOR_MATCH`] of `coords`, if any.
    pub fn lookup(&self, coords: &Vec3) -> Option<&OrbitVector> {
        self.vectors
            .iter()
            .find(|v| distance(&v.coords, coords) < VECTOR_MATCH)
    }

    pub fn export(&self, group: &GroupTable) -> OrbitExport {
        let mut vectors: Vec<ExportedVector> = self
            .vectors
            .iter()
            .map(|v| ExportedVector {
                label: v.label,
                i: v.label.basis(),
                alpha: v.label.outcome(),
                element: group.element(v.element).to_string(),
                coords: v.coords,
            })
            .collect();
        vectors.sort_by_key(|v| v.label);
        OrbitExport {
            seed: self.seed,
            cover_count: self.cover_count,
            vectors,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExportedVector {
    pub label: Label,
    pub i: u8,
    pub alpha: u8,
    /// Group element in cycle notation.
    pub element: String,
    pub coords: Vec3,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitExport {
    pub seed: Vec3,
    pub cover_count: usize,
    pub vectors: Vec<ExportedVector>,
}

/// Orbit of `(1, 0, 0)`: the four vertices of a regular tetrahedron.
pub fn tetrahedron_orbit(rep: &Representation) -> Result<Vec<Vec3>> {
    let seed = [1.0, 0.0, 0.0];
    check_seed(rep, &seed)?;
    Ok(distinct_images(rep, &seed)
        .into_iter()
        .map(|(_, v)| v)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn standard() -> Representation {
        Representation::standard(Arc::new(GroupTable::symmetric(4))).unwrap()
    }

    #[test]
    fn label_parse_and_display() {
        let l: Label = "x14".parse().unwrap();
        assert_eq!((l.basis(), l.outcome()), (4, 1));
        assert_eq!(l.to_string(), "x14");
        assert!("x31".parse::<Label>().is_err());
        assert!("x09".parse::<Label>().is_err());
        assert!("x00".parse::<Label>().is_err());
        assert!("y01".parse::<Label>().is_err());
        assert!("x011".parse::<Label>().is_err());
        for (k, l) in Label::all().enumerate() {
            assert_eq!(l.flat_index(), k);
        }
    }

    #[test]
    fn reference_orbit_matches_table() {
        let orbit = Orbit::reference(&standard()).unwrap();
        for (label, v) in fixtures::orbit_table() {
            let got = orbit.by_label(label).coords;
            for k in 0..3 {
                assert!((got[k] - v[k]).abs() < 1e-9, "{label}");
            }
        }
        let x28 = orbit.lookup(&[1.0 / 3f64.sqrt(); 3]).unwrap();
        assert_eq!(x28.label, Label::new(8, 2).unwrap());
        let r = 1.0 / 3f64.sqrt();
        assert_eq!(
            orbit.lookup(&[r, r, -r]).unwrap().label,
            Label::new(1, 0).unwrap()
        );
        assert_eq!(orbit.by_label("x01".parse().unwrap()).element, 0);
    }

    #[test]
    fn every_vector_is_unit_and_triples_resolve_identity() {
        let orbit = Orbit::reference(&standard()).unwrap();
        for v in orbit.vectors() {
            assert!((dot(&v.coords, &v.coords) - 1.0).abs() < MATRIX_EPS);
        }
        for triple in orbit.triples() {
            for r in 0..3 {
                for c in 0..3 {
                    let sum: f64 = triple
                        .iter()
                        .map(|&v| orbit.vectors()[v].coords[r] * orbit.vectors()[v].coords[c])
                        .sum();
                    let id = if r == c { 1.0 } else { 0.0 };
                    assert!((sum - id).abs() < MATRIX_EPS);
                }
            }
        }
    }

    #[test]
    fn orbit_is_group_covariant() {
        let rep = standard();
        let group = rep.group().clone();
        let orbit = Orbit::reference(&rep).unwrap();
        for g in 0..24 {
            for v in orbit.vectors() {
                let image = apply(rep.matrix(g), &v.coords);
                let found = orbit.lookup(&image).expect("image stays in the orbit");
                assert_eq!(found.element, group.product_index(g, v.element));
            }
        }
    }

    #[test]
    fn reference_partition_is_unique() {
        let orbit = Orbit::reference(&standard()).unwrap();
        assert_eq!(orbit.cover_count(), 1);
    }

    #[test]
    fn canonical_labels_without_fixture() {
        let rep = standard();
        let orbit =
            Orbit::generate(&rep, fixtures::orbit_vector(Label::new(1, 0).unwrap())).unwrap();
        // Triples ordered by smallest element, sorted within.
        let firsts: Vec<usize> = orbit
            .triples()
            .iter()
            .map(|t| orbit.vectors()[t[0]].element)
            .collect();
        assert!(firsts.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(orbit.by_label(Label::new(1, 0).unwrap()).element, 0);
    }

    #[test]
    fn tetrahedron_seed_is_degenerate() {
        let rep = standard();
        assert_eq!(
            Orbit::generate(&rep, [1.0, 0.0, 0.0]).unwrap_err(),
            Error::DegenerateOrbit {
                size: 4,
                expected: 24
            }
        );
    }

    #[test]
    fn non_unit_seed_rejected() {
        assert!(matches!(
            Orbit::generate(&standard(), [1.0, 1.0, 0.0]),
            Err(Error::NotUnitVector { .. })
        ));
    }

    #[test]
    fn tetrahedron_vertices() {
        let verts = tetrahedron_orbit(&standard()).unwrap();
        assert_eq!(verts.len(), 4);
        for expected in fixtures::tetrahedron_vertices() {
            assert!(verts.iter().any(|v| distance(v, &expected) < 1e-9));
        }
        for i in 0..4 {
            for j in i + 1..4 {
                assert!((dot(&verts[i], &verts[j]) + 1.0 / 3.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn single_triple_partition() {
        let p = partition_into_bases(&[[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]).unwrap();
        assert_eq!(p.triples, vec![[0, 1, 2]]);
        assert_eq!(p.cover_count, 1);
    }

    #[test]
    fn perturbed_vector_breaks_partition() {
        let mut vectors: Vec<Vec3> = fixtures::orbit_table()
            .into_iter()
            .map(|(_, v)| v)
            .collect();
        vectors[5][0] += 1e-3;
        assert!(matches!(
            partition_into_bases(&vectors),
            Err(Error::PartitionFailure(_))
        ));
    }

    #[test]
    fn partition_of_fixture_table_recovers_bases() {
        let vectors: Vec<Vec3> = fixtures::orbit_table()
            .into_iter()
            .map(|(_, v)| v)
            .collect();
        let p = partition_into_bases(&vectors).unwrap();
        let expected: Vec<[usize; 3]> = (0..8).map(|i| [3 * i, 3 * i + 1, 3 * i + 2]).collect();
        assert_eq!(p.triples, expected);
    }
}

//! Real orthogonal representations of S4 and the isotypic decomposition
//! `D ⊗ D = D ⊕ D̃ ⊕ D₂ ⊕ D₀` of the tensor square of the standard one.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixtures;
use crate::permgroup::GroupTable;
use crate::tolerance::MATRIX_EPS;

/// A representation matrix. Always real and (up to rounding) orthogonal.
pub type RepMatrix = DMatrix<f64>;

/// `g ↦ D(g)`, indexed by canonical element index of the group table.
#[derive(Clone, Debug)]
pub struct Representation {
    group: Arc<GroupTable>,
    dim: usize,
    matrices: Vec<RepMatrix>,
}

fn mat3(m: &fixtures::Mat3) -> RepMatrix {
    DMatrix::from_fn(3, 3, |r, c| m[r][c])
}

impl Representation {
    /// The 3-dimensional standard representation, built by factoring every
    /// element into adjacent transpositions and multiplying the bundled
    /// transposition matrices.
    pub fn standard(group: Arc<GroupTable>) -> Result<Representation> {
        if group.degree() != 4 || group.order() != 24 {
            return Err(Error::RepresentationCorrupt(format!(
                "standard representation needs S4, got a group of degree {} and order {}",
                group.degree(),
                group.order()
            )));
        }
        let adjacent: Vec<RepMatrix> = (1..4)
            .map(|i| {
                fixtures::transposition_matrix(i, i + 1)
                    .map(|m| mat3(&m))
                    .ok_or_else(|| Error::Internal(format!("no matrix for ({} {})", i, i + 1)))
            })
            .collect::<Result<_>>()?;

        let matrices = group
            .elements()
            .iter()
            .map(|g| {
                g.adjacent_factorization()
                    .into_iter()
                    .fold(RepMatrix::identity(3, 3), |acc, i| acc * &adjacent[i])
            })
            .collect();
        Ok(Representation {
            group,
            dim: 3,
            matrices,
        })
    }

    /// `g ↦ sign(g)`, the 1-dimensional alternating representation.
    pub fn alternating(group: Arc<GroupTable>) -> Representation {
        let matrices = group
            .elements()
            .iter()
            .map(|g| RepMatrix::from_element(1, 1, g.sign() as f64))
            .collect();
        Representation {
            group,
            dim: 1,
            matrices,
        }
    }

    pub fn trivial(group: Arc<GroupTable>) -> Representation {
        let matrices = vec![RepMatrix::identity(1, 1); group.order()];
        Representation {
            group,
            dim: 1,
            matrices,
        }
    }

    /// `D̃(g) = sign(g)·D(g)`.
    pub fn alternating_twist(&self) -> Representation {
        let matrices = self
            .group
            .elements()
            .iter()
            .zip(&self.matrices)
            .map(|(g, m)| m * (g.sign() as f64))
            .collect();
        Representation {
            group: Arc::clone(&self.group),
            dim: self.dim,
            matrices,
        }
    }

    /// `(A ⊗ B)(g) = A(g) ⊗ B(g)` with the row-major product basis.
    pub fn tensor_product(&self, other: &Representation) -> Result<Representation> {
        if self.group != other.group {
            return Err(Error::RepresentationCorrupt(
                "tensor product of representations of different groups".into(),
            ));
        }
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| a.kronecker(b))
            .collect();
        Ok(Representation {
            group: Arc::clone(&self.group),
            dim: self.dim * other.dim,
            matrices,
        })
    }

    pub fn group(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, element: usize) -> &RepMatrix {
        &self.matrices[element]
    }

    pub fn matrices(&self) -> &[RepMatrix] {
        &self.matrices
    }

    /// `trace(D(g))` for every element, in canonical order.
    pub fn character_values(&self) -> Vec<f64> {
        self.matrices.iter().map(|m| m.trace()).collect()
    }

    /// The character as a class function keyed by cycle type.
    pub fn character(&self) -> Result<BTreeMap<Vec<usize>, f64>> {
        class_function(&self.group, &self.character_values())
    }

    /// `max ‖D(g)D(h) − D(gh)‖_∞` over all pairs.
    pub fn homomorphism_deviation(&self) -> f64 {
        let n = self.group.order();
        let mut worst: f64 = 0.0;
        for g in 0..n {
            for h in 0..n {
                let gh = self.group.product_index(g, h);
                let diff = &self.matrices[g] * &self.matrices[h] - &self.matrices[gh];
                worst = worst.max(diff.amax());
            }
        }
        worst
    }

    /// `max ‖D(g)ᵀD(g) − I‖_∞` over all elements.
    pub fn orthogonality_deviation(&self) -> f64 {
        let id = RepMatrix::identity(self.dim, self.dim);
        self.matrices
            .iter()
            .map(|m| (m.transpose() * m - &id).amax())
            .fold(0.0, f64::max)
    }
}

/// Collapses per-element values to a class function, failing when the values
/// are not constant on a class within [`MATRIX_EPS`].
pub fn class_function(group: &GroupTable, values: &[f64]) -> Result<BTreeMap<Vec<usize>, f64>> {
    let mut out = BTreeMap::new();
    for (cycle_type, members) in group.classes_by_cycle_type() {
        let first = values[members[0]];
        for &m in &members {
            if (values[m] - first).abs() > MATRIX_EPS {
                return Err(Error::RepresentationCorrupt(format!(
                    "character not constant on class {cycle_type:?}: {} vs {first}",
                    values[m]
                )));
            }
        }
        out.insert(cycle_type, first);
    }
    Ok(out)
}

/// The four irreducible constituents of `D ⊗ D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum IsotypicLabel {
    /// The standard representation itself.
    #[serde(rename = "D")]
    Standard,
    /// `D̃ = sign ⊗ D`.
    #[serde(rename = "D~")]
    Twisted,
    /// The 2-dimensional irrep.
    #[serde(rename = "D2")]
    Two,
    /// The trivial (scalar) irrep.
    #[serde(rename = "D0")]
    Scalar,
}

impl IsotypicLabel {
    pub const ALL: [IsotypicLabel; 4] = [
        IsotypicLabel::Standard,
        IsotypicLabel::Twisted,
        IsotypicLabel::Two,
        IsotypicLabel::Scalar,
    ];

    pub fn dim(self) -> usize {
        match self {
            IsotypicLabel::Standard | IsotypicLabel::Twisted => 3,
            IsotypicLabel::Two => 2,
            IsotypicLabel::Scalar => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            IsotypicLabel::Standard => "D",
            IsotypicLabel::Twisted => "D~",
            IsotypicLabel::Two => "D2",
            IsotypicLabel::Scalar => "D0",
        }
    }
}

impl fmt::Display for IsotypicLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct IsotypicComponent {
    pub label: IsotypicLabel,
    /// Dimension `d_s` of the irrep.
    pub dim: usize,
    /// Number of copies of the irrep in `D ⊗ D`, read off `trace(P_s) / d_s`.
    pub multiplicity: usize,
    /// Irreducible character, per canonical element index.
    pub character: Vec<f64>,
    /// Orthogonal projector onto the component (9×9, symmetric).
    pub projector: DMatrix<f64>,
}

/// Projectors of `D ⊗ D` onto its isotypic components, ordered `D, D̃, D₂, D₀`.
#[derive(Clone, Debug)]
pub struct IsotypicDecomposition {
    pub components: Vec<IsotypicComponent>,
}

impl IsotypicDecomposition {
    /// Builds `P_s = (d_s/|G|) Σ_g χ_s(g) (D⊗D)(g)` for the tensor square of
    /// `standard`. The characters of `D` and `D̃` are traced from their
    /// matrices, `χ_{D₀} = 1`, and `χ_{D₂}` is what remains of `χ_{D⊗D}`.
    pub fn of_tensor_square(standard: &Representation) -> Result<IsotypicDecomposition> {
        let product = standard.tensor_product(standard)?;
        let group = standard.group();
        let order = group.order() as f64;

        let chi_d = standard.character_values();
        let chi_twisted = standard.alternating_twist().character_values();
        let chi_product = product.character_values();
        let chi_scalar = vec![1.0; group.order()];
        let chi_two: Vec<f64> = (0..group.order())
            .map(|g| chi_product[g] - chi_d[g] - chi_twisted[g] - chi_scalar[g])
            .collect();

        let characters = [chi_d, chi_twisted, chi_two, chi_scalar];
        let mut components = Vec::with_capacity(4);
        for (label, character) in IsotypicLabel::ALL.into_iter().zip(characters) {
            class_function(group, &character)?;
            // The identity carries the dimension of the irrep.
            let dim_from_character = character[group.identity_index()];
            if (dim_from_character - label.dim() as f64).abs() > MATRIX_EPS {
                return Err(Error::DecompositionFailure(format!(
                    "character of {label} has χ(e) = {dim_from_character}, expected {}",
                    label.dim()
                )));
            }
            let mut projector = DMatrix::<f64>::zeros(product.dim(), product.dim());
            for (g, m) in product.matrices().iter().enumerate() {
                projector += m * character[g];
            }
            projector *= label.dim() as f64 / order;

            let trace = projector.trace();
            let multiplicity = (trace / label.dim() as f64).round() as usize;
            if multiplicity != 1 || (trace - label.dim() as f64).abs() > MATRIX_EPS {
                return Err(Error::DecompositionFailure(format!(
                    "trace(P_{label}) = {trace}, expected {}",
                    label.dim()
                )));
            }
            components.push(IsotypicComponent {
                label,
                dim: label.dim(),
                multiplicity,
                character,
                projector,
            });
        }
        Ok(IsotypicDecomposition { components })
    }

    pub fn component(&self, label: IsotypicLabel) -> &IsotypicComponent {
        self.components
            .iter()
            .find(|c| c.label == label)
            .expect("all four labels are present")
    }

    pub fn projector(&self, label: IsotypicLabel) -> &DMatrix<f64> {
        &self.component(label).projector
    }

    /// Worst deviation from the projector algebra: symmetry, `P² = P`,
    /// `P_s P_r = 0` for `s ≠ r`, and `Σ P_s = I`.
    pub fn algebra_deviation(&self) -> f64 {
        let n = self.components[0].projector.nrows();
        let mut worst: f64 = 0.0;
        let mut sum = DMatrix::<f64>::zeros(n, n);
        for (i, a) in self.components.iter().enumerate() {
            let p = &a.projector;
            worst = worst.max((p - p.transpose()).amax());
            worst = worst.max((p * p - p).amax());
            for b in &self.components[i + 1..] {
                worst = worst.max((p * &b.projector).amax());
            }
            sum += p;
        }
        worst.max((sum - DMatrix::identity(n, n)).amax())
    }

    /// Checks the bundled change-of-basis matrix `C` against the projectors:
    /// `C` must be orthogonal and `C P_s Cᵀ` must be the indicator of the
    /// coordinate block belonging to `s`.
    pub fn validate_change_of_basis(&self) -> Result<ChangeOfBasisReport> {
        let raw = fixtures::change_of_basis();
        let c = DMatrix::from_fn(9, 9, |r, k| raw[r][k]);
        let orthogonality_deviation = (&c * c.transpose() - DMatrix::identity(9, 9)).amax();

        let mut components = Vec::with_capacity(4);
        for (component, block) in self.components.iter().zip(fixtures::CHANGE_OF_BASIS_BLOCKS) {
            let conjugated = &c * &component.projector * c.transpose();
            let indicator = DMatrix::from_fn(9, 9, |r, k| {
                if r == k && block.contains(&r) {
                    1.0
                } else {
                    0.0
                }
            });
            components.push(BlockDeviation {
                label: component.label,
                block_trace: block.len(),
                max_deviation: (conjugated - indicator).amax(),
            });
        }
        let report = ChangeOfBasisReport {
            orthogonality_deviation,
            components,
        };
        let worst = report.max_deviation();
        if worst > MATRIX_EPS {
            return Err(Error::FixtureMismatch(format!(
                "change-of-basis matrix deviates from the projectors by {worst:e}"
            )));
        }
        Ok(report)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockDeviation {
    pub label: IsotypicLabel,
    pub block_trace: usize,
    pub max_deviation: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChangeOfBasisReport {
    /// `‖C Cᵀ − I‖_∞`.
    pub orthogonality_deviation: f64,
    pub components: Vec<BlockDeviation>,
}

impl ChangeOfBasisReport {
    pub fn max_deviation(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.max_deviation)
            .fold(self.orthogonality_deviation, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::Permutation;
    use nalgebra::DVector;

    fn s4() -> Arc<GroupTable> {
        Arc::new(GroupTable::symmetric(4))
    }

    fn element(group: &GroupTable, cycles: &str) -> usize {
        group
            .index_of(&Permutation::parse_cycles(cycles, 4).unwrap())
            .unwrap()
    }

    #[test]
    fn standard_matches_bundled_transpositions() {
        let group = s4();
        let d = Representation::standard(Arc::clone(&group)).unwrap();
        assert_eq!(d.matrix(group.identity_index()), &RepMatrix::identity(3, 3));
        for (i, j) in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)] {
            let expected = mat3(&fixtures::transposition_matrix(i, j).unwrap());
            let g = element(&group, &format!("({i} {j})"));
            assert!((d.matrix(g) - expected).amax() < MATRIX_EPS, "D({i}{j})");
        }
        let d12 = d.matrix(element(&group, "(1 2)"));
        assert_eq!(
            d12,
            &RepMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 1.0, -1.0]))
        );
        let d34 = d.matrix(element(&group, "(3 4)"));
        assert!((d34[(0, 1)] - 8f64.sqrt() / 3.0).abs() < 1e-15);
        assert!((d34[(0, 0)] + 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn standard_rejects_other_groups() {
        let s3 = Arc::new(GroupTable::symmetric(3));
        assert!(Representation::standard(s3).is_err());
    }

    #[test]
    fn homomorphism_and_orthogonality() {
        let d = Representation::standard(s4()).unwrap();
        assert!(d.homomorphism_deviation() < MATRIX_EPS);
        assert!(d.orthogonality_deviation() < MATRIX_EPS);
        let twisted = d.alternating_twist();
        assert!(twisted.homomorphism_deviation() < MATRIX_EPS);
        let square = d.tensor_product(&d).unwrap();
        assert_eq!(square.dim(), 9);
        assert!(square.homomorphism_deviation() < MATRIX_EPS);
        assert!(square.orthogonality_deviation() < MATRIX_EPS);
    }

    #[test]
    fn twist_examples() {
        let group = s4();
        let d = Representation::standard(Arc::clone(&group)).unwrap();
        let t = d.alternating_twist();
        assert_eq!(t.matrix(group.identity_index()), &RepMatrix::identity(3, 3));
        let t12 = t.matrix(element(&group, "(1 2)"));
        assert_eq!(
            t12,
            &RepMatrix::from_diagonal(&DVector::from_vec(vec![-1.0, -1.0, 1.0]))
        );
        // Oracle: trace the explicit matrices on a 4-cycle.
        let g = element(&group, "(1 2 3 4)");
        let chi_d = d.matrix(g).trace();
        assert!((chi_d + 1.0).abs() < MATRIX_EPS);
        assert!((t.matrix(g).trace() - 1.0).abs() < MATRIX_EPS);
        assert!((t.character().unwrap()[&vec![4]] - 1.0).abs() < MATRIX_EPS);
    }

    #[test]
    fn tensor_square_character() {
        let group = s4();
        let d = Representation::standard(Arc::clone(&group)).unwrap();
        let square = d.tensor_product(&d).unwrap();
        assert_eq!(
            square.matrix(group.identity_index()),
            &RepMatrix::identity(9, 9)
        );
        for g in 0..24 {
            let chi = d.matrix(g).trace();
            assert!((square.matrix(g).trace() - chi * chi).abs() < MATRIX_EPS);
        }
        assert!((square.matrix(element(&group, "(1 2)")).trace() - 1.0).abs() < MATRIX_EPS);
    }

    #[test]
    fn characters_of_standard_and_trivial() {
        let group = s4();
        let trivial = Representation::trivial(Arc::clone(&group))
            .character()
            .unwrap();
        assert!(trivial.values().all(|&v| v == 1.0));

        let d = Representation::standard(Arc::clone(&group)).unwrap();
        let chi = d.character().unwrap();
        let expected = [
            (vec![1, 1, 1, 1], 3.0),
            (vec![2, 1, 1], 1.0),
            (vec![2, 2], -1.0),
            (vec![3, 1], 0.0),
            (vec![4], -1.0),
        ];
        for (class, value) in expected {
            assert!((chi[&class] - value).abs() < MATRIX_EPS, "{class:?}");
        }
        // Σ |χ|² · classSize = |G| for an irreducible character.
        let classes = group.classes_by_cycle_type();
        let norm: f64 = classes
            .iter()
            .map(|(k, members)| chi[k] * chi[k] * members.len() as f64)
            .sum();
        assert!((norm - 24.0).abs() < MATRIX_EPS);
    }

    #[test]
    fn character_rejects_non_class_function() {
        let group = GroupTable::symmetric(4);
        let mut values = vec![1.0; 24];
        values[element(&group, "(1 2)")] = 2.0;
        assert!(matches!(
            class_function(&group, &values),
            Err(Error::RepresentationCorrupt(_))
        ));
    }

    #[test]
    fn projector_algebra() {
        let d = Representation::standard(s4()).unwrap();
        let dec = IsotypicDecomposition::of_tensor_square(&d).unwrap();
        assert!(dec.algebra_deviation() < MATRIX_EPS);
        let traces: Vec<f64> = dec.components.iter().map(|c| c.projector.trace()).collect();
        for (t, e) in traces.iter().zip([3.0, 3.0, 2.0, 1.0]) {
            assert!((t - e).abs() < MATRIX_EPS);
        }
        assert!(dec.components.iter().all(|c| c.multiplicity == 1));
    }

    #[test]
    fn scalar_projector_matches_vectorized_identity() {
        let d = Representation::standard(s4()).unwrap();
        let dec = IsotypicDecomposition::of_tensor_square(&d).unwrap();
        // Row 9 of C: (1/√3)(1,0,0,0,1,0,0,0,1).
        let r = 1.0 / 3f64.sqrt();
        let v = DVector::from_vec(vec![r, 0.0, 0.0, 0.0, r, 0.0, 0.0, 0.0, r]);
        let expected = &v * v.transpose();
        assert!((dec.projector(IsotypicLabel::Scalar) - expected).amax() < MATRIX_EPS);
    }

    #[test]
    fn irreducible_characters_are_orthonormal() {
        let d = Representation::standard(s4()).unwrap();
        let dec = IsotypicDecomposition::of_tensor_square(&d).unwrap();
        for a in &dec.components {
            for b in &dec.components {
                let inner: f64 = a
                    .character
                    .iter()
                    .zip(&b.character)
                    .map(|(x, y)| x * y)
                    .sum::<f64>()
                    / 24.0;
                let expected = if a.label == b.label { 1.0 } else { 0.0 };
                assert!((inner - expected).abs() < MATRIX_EPS);
            }
        }
    }

    #[test]
    fn change_of_basis_validates() {
        let d = Representation::standard(s4()).unwrap();
        let dec = IsotypicDecomposition::of_tensor_square(&d).unwrap();
        let report = dec.validate_change_of_basis().unwrap();
        assert!(report.orthogonality_deviation < MATRIX_EPS);
        let blocks: Vec<usize> = report.components.iter().map(|c| c.block_trace).collect();
        assert_eq!(blocks, vec![3, 3, 2, 1]);
        assert!(report.max_deviation() < MATRIX_EPS);
    }

    #[test]
    fn projection_norms_match_change_of_basis_blocks() {
        use rand::{Rng, SeedableRng};
        let d = Representation::standard(s4()).unwrap();
        let dec = IsotypicDecomposition::of_tensor_square(&d).unwrap();
        let raw = fixtures::change_of_basis();
        let c = DMatrix::from_fn(9, 9, |r, k| raw[r][k]);
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..100 {
            let v = DVector::<f64>::from_fn(9, |_, _| rng.gen_range(-1.0..1.0)).normalize();
            let cv = &c * &v;
            for (comp, block) in dec.components.iter().zip(fixtures::CHANGE_OF_BASIS_BLOCKS) {
                let via_projector = (&comp.projector * &v).norm_squared();
                let via_block: f64 = block.map(|r| cv[r] * cv[r]).sum();
                assert!((via_projector - via_block).abs() < MATRIX_EPS);
            }
        }
    }
}

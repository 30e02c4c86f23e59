//! Quantum bounds: the group-averaged operator
//! `X(φ, ψ) = Σ_g (D(g)φ ⊗ D(g)ψ)(D(g)φ ⊗ D(g)ψ)ᵀ`, its spectrum from the
//! isotypic projections, and direct diagonalization of multi-orbit sums.
//!
//! By Schur's lemma `X(φ, ψ)` acts on the isotypic component `s` as the
//! scalar `(|G|/d_s)·‖P_s(φ⊗ψ)‖²`. Because every `X(φ_n, ψ_n)` is diagonal
//! in the same decomposition, the eigenvalues of a sum are the per-component
//! sums.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::context::S4Context;
use crate::eigen::{jacobi_eigen, SymmetricEigen};
use crate::error::{Error, Result};
use crate::fixtures::{self, Vec3};
use crate::pairs::OrbitPairSpec;
use crate::representation::{IsotypicDecomposition, IsotypicLabel, Representation};
use crate::tolerance::{EIGEN_EPS, MATRIX_EPS};

/// A (sum of) group-averaged operator(s) on `R³ ⊗ R³`.
#[derive(Clone, Debug)]
pub struct XOperator {
    pub matrix: DMatrix<f64>,
    /// Pairs the operator was summed from; empty when built from raw vectors.
    pub pairs: Vec<OrbitPairSpec>,
}

fn to_dvector(v: &Vec3) -> DVector<f64> {
    DVector::from_column_slice(v)
}

impl XOperator {
    /// `X(φ, ψ)` over the tensor-square representation `square`.
    pub fn build(phi: &Vec3, psi: &Vec3, square: &Representation) -> XOperator {
        let product = to_dvector(phi).kronecker(&to_dvector(psi));
        let mut matrix = DMatrix::<f64>::zeros(square.dim(), square.dim());
        for m in square.matrices() {
            let u = m * &product;
            matrix += &u * u.transpose();
        }
        XOperator {
            matrix,
            pairs: Vec::new(),
        }
    }

    /// `Σ_n X(φ_n, ψ_n)` with seeds looked up in the reference orbit.
    pub fn sum(pairs: &[OrbitPairSpec], ctx: &S4Context) -> XOperator {
        let mut matrix = DMatrix::<f64>::zeros(9, 9);
        for pair in pairs {
            let phi = ctx.orbit.by_label(pair.phi).coords;
            let psi = ctx.orbit.by_label(pair.psi).coords;
            matrix += XOperator::build(&phi, &psi, &ctx.square).matrix;
        }
        XOperator {
            matrix,
            pairs: pairs.to_vec(),
        }
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }

    pub fn asymmetry(&self) -> f64 {
        (&self.matrix - self.matrix.transpose()).amax()
    }

    /// `max_g ‖X·(D⊗D)(g) − (D⊗D)(g)·X‖_∞`.
    pub fn commutator_deviation(&self, square: &Representation) -> f64 {
        square
            .matrices()
            .iter()
            .map(|m| (&self.matrix * m - m * &self.matrix).amax())
            .fold(0.0, f64::max)
    }
}

/// One isotypic eigenvalue `λ_s` with its multiplicity `d_s`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IsotypicEigenvalue {
    pub label: IsotypicLabel,
    pub dim: usize,
    pub value: f64,
}

/// `λ_s = (|G|/d_s)·‖P_s(φ⊗ψ)‖²` for each component, in the order `D, D̃, D₂, D₀`.
pub fn eigenvalues_isotypic(
    phi: &Vec3,
    psi: &Vec3,
    decomposition: &IsotypicDecomposition,
    group_order: usize,
) -> Vec<IsotypicEigenvalue> {
    let product = to_dvector(phi).kronecker(&to_dvector(psi));
    decomposition
        .components
        .iter()
        .map(|c| IsotypicEigenvalue {
            label: c.label,
            dim: c.dim,
            value: group_order as f64 / c.dim as f64 * (&c.projector * &product).norm_squared(),
        })
        .collect()
}

/// All eigenvalues of `X`, descending, by cyclic Jacobi.
pub fn eigenvalues_direct(x: &XOperator) -> Result<SymmetricEigen> {
    jacobi_eigen(&x.matrix, MATRIX_EPS)
}

/// Expands `(λ_s, d_s)` pairs into the full spectrum, descending.
pub fn expand_with_multiplicity(values: &[IsotypicEigenvalue]) -> Vec<f64> {
    let mut out: Vec<f64> = values
        .iter()
        .flat_map(|e| std::iter::repeat_n(e.value, e.dim))
        .collect();
    out.sort_by(|a, b| b.total_cmp(a));
    out
}

/// Isotypic eigenvalues of one orbit pair.
#[derive(Clone, Debug, Serialize)]
pub struct PairTable {
    pub pair: OrbitPairSpec,
    pub eigenvalues: Vec<IsotypicEigenvalue>,
    /// Largest eigenvalue of `X(φ_n, ψ_n)` alone.
    pub max: f64,
    /// This pair's eigenvalue on the component carrying the summed `λ_max`.
    pub contribution: f64,
}

/// Quantum bound of `Σ_n X(φ_n, ψ_n)`.
#[derive(Clone, Debug, Serialize)]
pub struct QuantumBound {
    pub pairs: Vec<OrbitPairSpec>,
    pub per_pair: Vec<PairTable>,
    /// `Σ_n λ_s(n)` per component.
    pub component_sums: Vec<IsotypicEigenvalue>,
    /// Direct spectrum of the summed operator, descending.
    pub spectrum: Vec<f64>,
    pub lambda_max: f64,
    /// Component whose summed eigenvalue is `λ_max`.
    pub dominant: IsotypicLabel,
    /// Unit eigenvector of `λ_max` in the product basis, sign fixed so the
    /// largest-magnitude entry is positive.
    pub eigenvector: Vec<f64>,
}

impl QuantumBound {
    /// `‖(I − P_{D₀}) v_max‖`: how far the maximal eigenvector is from the
    /// scalar component.
    pub fn scalar_residual(&self, decomposition: &IsotypicDecomposition) -> f64 {
        let v = DVector::from_column_slice(&self.eigenvector);
        let p = decomposition.projector(IsotypicLabel::Scalar);
        (&v - p * &v).norm()
    }
}

/// Builds the summed operator, diagonalizes it directly and cross-checks the
/// spectrum against the per-component sums of isotypic eigenvalues.
pub fn max_eigenvalue_sum(pairs: &[OrbitPairSpec], ctx: &S4Context) -> Result<QuantumBound> {
    if pairs.is_empty() {
        return Err(Error::Internal(
            "quantum bound needs at least one pair".into(),
        ));
    }
    let order = ctx.group.order();
    let tables: Vec<(OrbitPairSpec, Vec<IsotypicEigenvalue>)> = pairs
        .iter()
        .map(|pair| {
            let phi = ctx.orbit.by_label(pair.phi).coords;
            let psi = ctx.orbit.by_label(pair.psi).coords;
            (
                *pair,
                eigenvalues_isotypic(&phi, &psi, &ctx.decomposition, order),
            )
        })
        .collect();

    let component_sums: Vec<IsotypicEigenvalue> = IsotypicLabel::ALL
        .iter()
        .enumerate()
        .map(|(k, &label)| IsotypicEigenvalue {
            label,
            dim: label.dim(),
            value: tables.iter().map(|(_, t)| t[k].value).sum(),
        })
        .collect();

    let x = XOperator::sum(pairs, ctx);
    let eig = eigenvalues_direct(&x)?;
    let expected = expand_with_multiplicity(&component_sums);
    let worst = expected
        .iter()
        .zip(&eig.values)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if worst > EIGEN_EPS {
        return Err(Error::Internal(format!(
            "isotypic and direct spectra disagree by {worst:e}"
        )));
    }

    let lambda_max = eig.max_value();
    let (dominant_index, _) = component_sums
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.value.total_cmp(&b.1.value))
        .expect("four components");
    let dominant = component_sums[dominant_index].label;

    let per_pair = tables
        .into_iter()
        .map(|(pair, eigenvalues)| {
            let max = eigenvalues.iter().map(|e| e.value).fold(f64::MIN, f64::max);
            let contribution = eigenvalues[dominant_index].value;
            PairTable {
                pair,
                eigenvalues,
                max,
                contribution,
            }
        })
        .collect();

    let mut v = eig.max_vector();
    let pivot = v.iamax();
    if v[pivot] < 0.0 {
        v = -v;
    }
    Ok(QuantumBound {
        pairs: pairs.to_vec(),
        per_pair,
        component_sums,
        spectrum: eig.values,
        lambda_max,
        dominant,
        eigenvector: v.iter().copied().collect(),
    })
}

/// `8(φ·ψ)²`, the scalar-component eigenvalue in closed form.
pub fn scalar_eigenvalue_closed_form(phi: &Vec3, psi: &Vec3) -> f64 {
    let d = crate::orbit::dot(phi, psi);
    8.0 * d * d
}

/// The scalar-component eigenvalue of a pair named by labels.
pub fn scalar_eigenvalue(pair: &OrbitPairSpec) -> f64 {
    scalar_eigenvalue_closed_form(
        &fixtures::orbit_vector(pair.phi),
        &fixtures::orbit_vector(pair.psi),
    )
}

//! Bundled geometric data for the S4 standard representation: the six
//! transposition matrices, the tensor-basis change matrix `C`, the labeled
//! 24-vector orbit and the tetrahedron vertices. Entries are written as
//! exact expressions in √2, √3, √6 and evaluated in double precision.
//!
//! Computation never reads the orbit table or `C`; they serve labeling and
//! validation only.

use crate::orbit::Label;

pub type Mat3 = [[f64; 3]; 3];
pub type Vec3 = [f64; 3];

const R2: f64 = std::f64::consts::SQRT_2;

fn r3() -> f64 {
    3f64.sqrt()
}

fn r6() -> f64 {
    6f64.sqrt()
}

fn r8() -> f64 {
    8f64.sqrt()
}

/// Transposition matrices, keyed by the swapped points (1-based).
pub fn transposition_matrix(i: usize, j: usize) -> Option<Mat3> {
    let (r3, r6, r8) = (r3(), r6(), r8());
    let key = if i < j { (i, j) } else { (j, i) };
    let m = match key {
        (1, 2) => [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]],
        (1, 3) => [
            [1.0, 0.0, 0.0],
            [0.0, -0.5, -r3 / 2.0],
            [0.0, -r3 / 2.0, 0.5],
        ],
        (1, 4) => [
            [-1.0 / 3.0, -R2 / 3.0, -r6 / 3.0],
            [-R2 / 3.0, 5.0 / 6.0, -r3 / 6.0],
            [-r6 / 3.0, -r3 / 6.0, 0.5],
        ],
        (2, 3) => [[1.0, 0.0, 0.0], [0.0, -0.5, r3 / 2.0], [0.0, r3 / 2.0, 0.5]],
        (2, 4) => [
            [-1.0 / 3.0, -R2 / 3.0, r6 / 3.0],
            [-R2 / 3.0, 5.0 / 6.0, r3 / 6.0],
            [r6 / 3.0, r3 / 6.0, 0.5],
        ],
        (3, 4) => [
            [-1.0 / 3.0, r8 / 3.0, 0.0],
            [r8 / 3.0, 1.0 / 3.0, 0.0],
            [0.0, 0.0, 1.0],
        ],
        _ => return None,
    };
    Some(m)
}

/// Orthogonal 9×9 matrix taking the product basis `e_i ⊗ e_j` (row-major
/// index `3i + j`) to a basis adapted to `D ⊕ D̃ ⊕ D₂ ⊕ D₀`: rows 0–2 span
/// `D`, rows 3–5 `D̃`, rows 6–7 `D₂`, row 8 `D₀`.
pub fn change_of_basis() -> [[f64; 9]; 9] {
    let a = (2.0f64 / 3.0).sqrt();
    let h = 1.0 / R2;
    let t = 1.0 / r3();
    let s = 1.0 / r6();
    [
        [a, 0.0, 0.0, 0.0, -s, 0.0, 0.0, 0.0, -s],
        [0.0, -s, 0.0, -s, t, 0.0, 0.0, 0.0, -t],
        [0.0, 0.0, -s, 0.0, 0.0, -t, -s, -t, 0.0],
        [0.0, h, 0.0, -h, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, h, 0.0, 0.0, 0.0, -h, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, h, 0.0, -h, 0.0],
        [0.0, t, 0.0, t, s, 0.0, 0.0, 0.0, -s],
        [0.0, 0.0, t, 0.0, 0.0, -s, t, -s, 0.0],
        [t, 0.0, 0.0, 0.0, t, 0.0, 0.0, 0.0, t],
    ]
}

/// Row blocks of [`change_of_basis`], in the order `D, D̃, D₂, D₀`.
pub const CHANGE_OF_BASIS_BLOCKS: [std::ops::Range<usize>; 4] = [0..3, 3..6, 6..8, 8..9];

/// The 24 labeled orbit vectors `x_α^i`, ordered by `(i, α)`.
pub fn orbit_table() -> Vec<(Label, Vec3)> {
    let (r2, r3, r6) = (R2, r3(), r6());
    let rows: [[Vec3; 3]; 8] = [
        [
            [r3 / 3.0, r3 / 3.0, -r3 / 3.0],
            [r3 / 3.0, 0.5 * (1.0 - r3 / 3.0), 0.5 * (1.0 + r3 / 3.0)],
            [r3 / 3.0, -0.5 * (1.0 + r3 / 3.0), -0.5 * (1.0 - r3 / 3.0)],
        ],
        [
            [
                (-3.0 * r2 - r3 - r6) / 9.0,
                (-3.0 + 5.0 * r3 - 2.0 * r6) / 18.0,
                (-1.0 - 2.0 * r2 + r3) / 6.0,
            ],
            [
                (-r3 + 2.0 * r6) / 9.0,
                (9.0 - r3 - 2.0 * r6) / 18.0,
                -(1.0 + 2.0 * r2 + r3) / 6.0,
            ],
            [
                (3.0 * r2 - r3 - r6) / 9.0,
                -(3.0 + 2.0 * r3 + r6) / 9.0,
                (1.0 - r2) / 3.0,
            ],
        ],
        [
            [
                (3.0 * r2 - r3 - r6) / 9.0,
                (3.0 + 5.0 * r3 - 2.0 * r6) / 18.0,
                (1.0 + 2.0 * r2 + r3) / 6.0,
            ],
            [
                (-r3 + 2.0 * r6) / 9.0,
                -(9.0 + r3 + 2.0 * r6) / 18.0,
                (1.0 + 2.0 * r2 - r3) / 6.0,
            ],
            [
                -(3.0 * r2 + r3 + r6) / 9.0,
                (3.0 - 2.0 * r3 - r6) / 9.0,
                (-1.0 + r2) / 3.0,
            ],
        ],
        [
            [
                (3.0 * r2 - r3 - r6) / 9.0,
                (3.0 - r3 + 4.0 * r6) / 18.0,
                (3.0 + r3) / 6.0,
            ],
            [(-r3 + 2.0 * r6) / 9.0, (r3 + 2.0 * r6) / 9.0, -r3 / 3.0],
            [
                -(3.0 * r2 + r3 + r6) / 9.0,
                (-3.0 - r3 + 4.0 * r6) / 18.0,
                (-3.0 + r3) / 6.0,
            ],
        ],
        [
            [
                (-r3 + 2.0 * r6) / 9.0,
                (9.0 - r3 - 2.0 * r6) / 18.0,
                (1.0 + 2.0 * r2 + r3) / 6.0,
            ],
            [
                -(3.0 * r2 + r3 + r6) / 9.0,
                (-3.0 + 5.0 * r3 - 2.0 * r6) / 18.0,
                (1.0 + 2.0 * r2 - r3) / 6.0,
            ],
            [
                (3.0 * r2 - r3 - r6) / 9.0,
                -(3.0 + 2.0 * r3 + r6) / 9.0,
                (-1.0 + r2) / 3.0,
            ],
        ],
        [
            [
                -(3.0 * r2 + r3 + r6) / 9.0,
                (-3.0 - r3 + 4.0 * r6) / 18.0,
                (3.0 - r3) / 6.0,
            ],
            [
                (3.0 * r2 - r3 - r6) / 9.0,
                (3.0 - r3 + 4.0 * r6) / 18.0,
                -(3.0 + r3) / 6.0,
            ],
            [(-r3 + 2.0 * r6) / 9.0, (r3 + 2.0 * r6) / 9.0, r3 / 3.0],
        ],
        [
            [
                (3.0 * r2 - r3 - r6) / 9.0,
                (3.0 + 5.0 * r3 - 2.0 * r6) / 18.0,
                -(1.0 + 2.0 * r2 + r3) / 6.0,
            ],
            [
                (-r3 + 2.0 * r6) / 9.0,
                -(9.0 + r3 + 2.0 * r6) / 18.0,
                (-1.0 - 2.0 * r2 + r3) / 6.0,
            ],
            [
                -(3.0 * r2 + r3 + r6) / 9.0,
                (3.0 - 2.0 * r3 - r6) / 9.0,
                (1.0 - r2) / 3.0,
            ],
        ],
        [
            [r3 / 3.0, -0.5 * (1.0 + r3 / 3.0), 0.5 * (1.0 - r3 / 3.0)],
            [r3 / 3.0, 0.5 * (1.0 - r3 / 3.0), -0.5 * (1.0 + r3 / 3.0)],
            [r3 / 3.0, r3 / 3.0, r3 / 3.0],
        ],
    ];
    let mut out = Vec::with_capacity(24);
    for (i, triple) in rows.iter().enumerate() {
        for (alpha, v) in triple.iter().enumerate() {
            out.push((Label::new(i as u8 + 1, alpha as u8).expect("valid"), *v));
        }
    }
    out
}

/// The fixture vector for a label.
pub fn orbit_vector(label: Label) -> Vec3 {
    orbit_table()[label.flat_index()].1
}

/// Vertices `a_1 … a_4` of the regular tetrahedron spanned by the orbit of `(1, 0, 0)`.
pub fn tetrahedron_vertices() -> [Vec3; 4] {
    let (r2, r6, r8) = (R2, r6(), r8());
    [
        [-1.0 / 3.0, -r2 / 3.0, -r6 / 3.0],
        [-1.0 / 3.0, -r2 / 3.0, r6 / 3.0],
        [-1.0 / 3.0, r8 / 3.0, 0.0],
        [1.0, 0.0, 0.0],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dot(a: &Vec3, b: &Vec3) -> f64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    #[test]
    fn transpositions_are_orthogonal_involutions() {
        for (i, j) in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)] {
            let m = transposition_matrix(i, j).unwrap();
            for r in 0..3 {
                for c in 0..3 {
                    assert!((m[r][c] - m[c][r]).abs() < 1e-15);
                    let sq: f64 = (0..3).map(|k| m[r][k] * m[k][c]).sum();
                    let id = if r == c { 1.0 } else { 0.0 };
                    assert!((sq - id).abs() < 1e-12, "D({i}{j})² ≠ I");
                }
            }
        }
        assert_eq!(transposition_matrix(2, 1), transposition_matrix(1, 2));
        assert!(transposition_matrix(1, 1).is_none());
    }

    #[test]
    fn orbit_table_rows_are_orthonormal_triples() {
        let table = orbit_table();
        assert_eq!(table.len(), 24);
        for i in 0..8 {
            for a in 0..3 {
                for b in 0..3 {
                    let d = dot(&table[3 * i + a].1, &table[3 * i + b].1);
                    let expected = if a == b { 1.0 } else { 0.0 };
                    assert!((d - expected).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn change_of_basis_is_orthogonal() {
        let c = change_of_basis();
        for r in 0..9 {
            for s in 0..9 {
                let d: f64 = (0..9).map(|k| c[r][k] * c[s][k]).sum();
                let expected = if r == s { 1.0 } else { 0.0 };
                assert!((d - expected).abs() < 1e-12);
            }
        }
    }
}

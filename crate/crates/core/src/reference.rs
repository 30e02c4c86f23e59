//! Values reported for the three S4 examples: orbit pairs, eigenvalues,
//! classical bounds, the reported term lists, the strategy histograms and
//! the winning table of the first example. Used by [`crate::verify`] and the
//! test suites; nothing in the computation reads them.

use crate::classical::ProbabilityTerm;

/// One worked example: three orbit pairs with reported results.
#[derive(Clone, Copy, Debug)]
pub struct ReferenceExample {
    pub name: &'static str,
    pub pairs: &'static str,
    /// Per-orbit eigenvalues, two decimals.
    pub orbit_lambdas: [f64; 3],
    /// Largest eigenvalue of the summed operator, two decimals.
    pub lambda_max: f64,
    pub classical_max: usize,
    /// Configuration counts for `c = 1..=20`.
    pub histogram: [u64; 20],
    pub terms: &'static [ProbabilityTerm],
}

const fn p(s: u8, a: u8, t: u8, b: u8) -> ProbabilityTerm {
    ProbabilityTerm::new(s, a, t, b)
}

#[rustfmt::skip]
const SUM_ONE: [ProbabilityTerm; 72] = [
    p(1, 0, 4, 1), p(1, 1, 5, 0), p(1, 2, 7, 1), p(2, 0, 4, 2), p(2, 1, 8, 1), p(2, 2, 5, 2),
    p(3, 0, 4, 0), p(3, 1, 8, 0), p(3, 2, 7, 2), p(4, 0, 3, 0), p(4, 1, 1, 0), p(4, 2, 2, 0),
    p(5, 0, 1, 1), p(5, 1, 6, 0), p(5, 2, 2, 2), p(6, 0, 5, 1), p(6, 1, 7, 0), p(6, 2, 8, 2),
    p(7, 0, 6, 1), p(7, 1, 1, 2), p(7, 2, 3, 2), p(8, 0, 3, 1), p(8, 1, 2, 1), p(8, 2, 6, 2),
    p(1, 0, 7, 0), p(1, 1, 4, 0), p(1, 2, 5, 2), p(2, 0, 5, 1), p(2, 1, 4, 1), p(2, 2, 8, 0),
    p(3, 0, 8, 2), p(3, 1, 7, 1), p(3, 2, 4, 2), p(4, 0, 1, 1), p(4, 1, 2, 1), p(4, 2, 3, 2),
    p(5, 0, 6, 2), p(5, 1, 2, 0), p(5, 2, 1, 2), p(6, 0, 7, 2), p(6, 1, 8, 1), p(6, 2, 5, 0),
    p(7, 0, 1, 0), p(7, 1, 3, 1), p(7, 2, 6, 0), p(8, 0, 2, 2), p(8, 1, 6, 1), p(8, 2, 3, 0),
    p(1, 0, 5, 1), p(1, 1, 7, 2), p(1, 2, 4, 2), p(2, 0, 8, 2), p(2, 1, 5, 0), p(2, 2, 4, 0),
    p(3, 0, 7, 0), p(3, 1, 4, 1), p(3, 2, 8, 1), p(4, 0, 2, 2), p(4, 1, 3, 1), p(4, 2, 1, 2),
    p(5, 0, 2, 1), p(5, 1, 1, 0), p(5, 2, 6, 1), p(6, 0, 8, 0), p(6, 1, 5, 2), p(6, 2, 7, 1),
    p(7, 0, 3, 0), p(7, 1, 6, 2), p(7, 2, 1, 1), p(8, 0, 6, 0), p(8, 1, 3, 2), p(8, 2, 2, 0),
];

#[rustfmt::skip]
const SUM_TWO: [ProbabilityTerm; 72] = [
    p(1, 0, 3, 2), p(1, 1, 2, 0), p(1, 2, 6, 0), p(2, 0, 1, 1), p(2, 1, 3, 0), p(2, 2, 6, 2),
    p(3, 0, 2, 1), p(3, 1, 6, 1), p(3, 2, 1, 0), p(4, 0, 7, 1), p(4, 1, 5, 2), p(4, 2, 8, 0),
    p(5, 0, 7, 0), p(5, 1, 8, 1), p(5, 2, 4, 1), p(6, 0, 1, 2), p(6, 1, 3, 1), p(6, 2, 2, 2),
    p(7, 0, 5, 0), p(7, 1, 4, 0), p(7, 2, 8, 2), p(8, 0, 4, 2), p(8, 1, 5, 1), p(8, 2, 7, 2),
    p(1, 0, 6, 1), p(1, 1, 3, 0), p(1, 2, 2, 2), p(2, 0, 6, 0), p(2, 1, 1, 0), p(2, 2, 3, 1),
    p(3, 0, 6, 2), p(3, 1, 1, 2), p(3, 2, 2, 0), p(4, 0, 5, 0), p(4, 1, 8, 1), p(4, 2, 7, 2),
    p(5, 0, 8, 2), p(5, 1, 4, 2), p(5, 2, 7, 1), p(6, 0, 3, 2), p(6, 1, 2, 1), p(6, 2, 1, 1),
    p(7, 0, 4, 1), p(7, 1, 8, 0), p(7, 2, 5, 1), p(8, 0, 5, 2), p(8, 1, 7, 0), p(8, 2, 4, 0),
    p(1, 0, 1, 0), p(1, 1, 1, 1), p(1, 2, 1, 2), p(2, 0, 2, 0), p(2, 1, 2, 1), p(2, 2, 2, 2),
    p(3, 0, 3, 0), p(3, 1, 3, 1), p(3, 2, 3, 2), p(4, 0, 4, 0), p(4, 1, 4, 1), p(4, 2, 4, 2),
    p(5, 0, 5, 0), p(5, 1, 5, 1), p(5, 2, 5, 2), p(6, 0, 6, 0), p(6, 1, 6, 1), p(6, 2, 6, 2),
    p(7, 0, 7, 0), p(7, 1, 7, 1), p(7, 2, 7, 2), p(8, 0, 8, 0), p(8, 1, 8, 1), p(8, 2, 8, 2),
];

#[rustfmt::skip]
const SUM_THREE: [ProbabilityTerm; 72] = [
    p(1, 0, 5, 2), p(1, 1, 7, 0), p(1, 2, 4, 0), p(2, 0, 8, 0), p(2, 1, 5, 1), p(2, 2, 4, 1),
    p(3, 0, 7, 1), p(3, 1, 4, 2), p(3, 2, 8, 2), p(4, 0, 2, 1), p(4, 1, 3, 2), p(4, 2, 1, 1),
    p(5, 0, 2, 0), p(5, 1, 1, 2), p(5, 2, 6, 2), p(6, 0, 8, 1), p(6, 1, 5, 0), p(6, 2, 7, 2),
    p(7, 0, 3, 1), p(7, 1, 6, 0), p(7, 2, 1, 0), p(8, 0, 6, 1), p(8, 1, 3, 0), p(8, 2, 2, 2),
    p(1, 0, 4, 1), p(1, 1, 5, 0), p(1, 2, 7, 1), p(2, 0, 4, 2), p(2, 1, 8, 1), p(2, 2, 5, 2),
    p(3, 0, 4, 0), p(3, 1, 8, 0), p(3, 2, 7, 2), p(4, 0, 3, 0), p(4, 1, 1, 0), p(4, 2, 2, 0),
    p(5, 0, 1, 1), p(5, 1, 6, 0), p(5, 2, 2, 2), p(6, 0, 5, 1), p(6, 1, 7, 0), p(6, 2, 8, 2),
    p(7, 0, 6, 1), p(7, 1, 1, 2), p(7, 2, 3, 2), p(8, 0, 3, 1), p(8, 1, 2, 1), p(8, 2, 6, 2),
    p(1, 0, 8, 1), p(1, 1, 8, 2), p(1, 2, 8, 0), p(2, 0, 7, 2), p(2, 1, 7, 0), p(2, 2, 7, 1),
    p(3, 0, 5, 0), p(3, 1, 5, 2), p(3, 2, 5, 1), p(4, 0, 6, 2), p(4, 1, 6, 1), p(4, 2, 6, 0),
    p(5, 0, 3, 0), p(5, 1, 3, 2), p(5, 2, 3, 1), p(6, 0, 4, 2), p(6, 1, 4, 1), p(6, 2, 4, 0),
    p(7, 0, 2, 1), p(7, 1, 2, 2), p(7, 2, 2, 0), p(8, 0, 1, 2), p(8, 1, 1, 0), p(8, 2, 1, 1),
];

pub const EXAMPLES: [ReferenceExample; 3] = [
    ReferenceExample {
        name: "Example I",
        pairs: "x01:x14,x01:x07,x01:x15",
        orbit_lambdas: [7.40, 4.57, 4.12],
        lambda_max: 16.09,
        classical_max: 16,
        histogram: [
            12_960, 159_408, 645_408, 1_729_188, 3_479_760, 5_424_408, 6_896_016, 7_261_569,
            6_410_016, 4_866_480, 3_176_496, 1_758_348, 808_704, 311_040, 90_720, 15_876, 0, 0, 0,
            0,
        ],
        terms: &SUM_ONE,
    },
    ReferenceExample {
        name: "Example II",
        pairs: "x01:x23,x01:x16,x01:x01",
        orbit_lambdas: [5.21, 5.30, 8.00],
        lambda_max: 18.51,
        classical_max: 18,
        histogram: [
            9_720, 126_576, 510_480, 1_514_862, 3_182_904, 5_374_584, 7_139_664, 7_822_791,
            6_903_648, 5_058_216, 3_006_000, 1_506_186, 613_800, 208_008, 55_584, 11_673, 1_656,
            144, 0, 0,
        ],
        terms: &SUM_TWO,
    },
    ReferenceExample {
        name: "Example III",
        pairs: "x01:x25,x01:x14,x01:x18",
        orbit_lambdas: [3.35, 7.40, 6.63],
        lambda_max: 17.38,
        classical_max: 16,
        histogram: [
            18_360, 115_596, 474_696, 1_445_778, 3_286_224, 5_510_160, 7_178_976, 7_670_547,
            6_795_936, 5_012_208, 3_087_504, 1_567_458, 638_280, 196_812, 41_400, 4_761, 0, 0, 0,
            0,
        ],
        terms: &SUM_THREE,
    },
];

/// Setting pair `(s, t)` and its three winning answer pairs `(a, b)`.
pub type WinningRow = ((u8, u8), [(u8, u8); 3]);

/// Winning answers `(s, t) -> [ab, ab, ab]` for the first example.
#[rustfmt::skip]
pub const WINNING_TABLE_ONE: [WinningRow; 24] = [
    ((1, 4), [(0, 1), (1, 0), (2, 2)]),
    ((1, 5), [(0, 1), (1, 0), (2, 2)]),
    ((1, 7), [(0, 0), (1, 2), (2, 1)]),
    ((2, 4), [(0, 2), (1, 1), (2, 0)]),
    ((2, 5), [(0, 1), (1, 0), (2, 2)]),
    ((2, 8), [(0, 2), (1, 1), (2, 0)]),
    ((3, 4), [(0, 0), (1, 1), (2, 2)]),
    ((3, 7), [(0, 0), (1, 1), (2, 2)]),
    ((3, 8), [(0, 2), (1, 0), (2, 1)]),
    ((4, 1), [(0, 1), (1, 0), (2, 2)]),
    ((4, 2), [(0, 2), (1, 1), (2, 0)]),
    ((4, 3), [(0, 0), (1, 1), (2, 2)]),
    ((5, 1), [(0, 1), (1, 0), (2, 2)]),
    ((5, 2), [(0, 1), (1, 0), (2, 2)]),
    ((5, 6), [(0, 2), (1, 0), (2, 1)]),
    ((6, 5), [(0, 1), (1, 2), (2, 0)]),
    ((6, 7), [(0, 2), (1, 0), (2, 1)]),
    ((6, 8), [(0, 0), (1, 1), (2, 2)]),
    ((7, 1), [(0, 0), (1, 2), (2, 1)]),
    ((7, 3), [(0, 0), (1, 1), (2, 2)]),
    ((7, 6), [(0, 1), (1, 2), (2, 0)]),
    ((8, 2), [(0, 2), (1, 1), (2, 0)]),
    ((8, 3), [(0, 1), (1, 2), (2, 0)]),
    ((8, 6), [(0, 0), (1, 1), (2, 2)]),
];

/// Reported quantum win probability of the first example.
pub const QUANTUM_WIN_ONE: f64 = 0.2514;

/// Diagonal pair `x01:x01` reported with `λ_max ≃ 8.00`.
pub const DIAGONAL_LAMBDA: f64 = 8.00;

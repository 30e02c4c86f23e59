//! Bell inequalities built from orbits of the 3-dimensional standard
//! representation of S4.
//!
//! The pieces, bottom up:
//!
//! * [`permgroup`]: permutations, group closure, cycle types.
//! * [`representation`]: the standard representation `D`, its sign twist,
//!   `D ⊗ D`, characters and isotypic projectors.
//! * [`orbit`]: the 24-vector orbit split into eight orthonormal bases.
//! * [`quantum`]: the group-averaged operator `X(φ, ψ)` and its spectrum.
//! * [`classical`]: Bell expressions and exhaustive deterministic strategies.
//! * [`game`]: the associated nonlocal game.
//! * [`scan`] and [`verify`]: batch drivers used by the command-line tool.

pub mod classical;
pub mod context;
pub mod eigen;
pub mod error;
pub mod fixtures;
pub mod game;
pub mod orbit;
pub mod pairs;
pub mod permgroup;
pub mod quantum;
pub mod reference;
pub mod representation;
pub mod scan;
pub mod tolerance;
pub mod verify;

pub use error::{Error, Result};

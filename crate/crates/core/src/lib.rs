//! Discrete octonionic analysis on the lattice `hZ^8`.
//!
//! * [`algebra`]: the octonion product, its basis table and triple census.
//! * [`lattice`]: sparse lattice functions over the whole lattice, the
//!   half-lattices `m7 >= 0`, `m7 <= 0`, and finite boxes.
//! * [`operators`]: finite differences, the discrete Cauchy-Riemann operators
//!   and the star-Laplacian.
//! * [`stokes`]: discrete Stokes pairings, with the exact correction and
//!   boundary terms and a brute-force oracle.
//! * [`harness`]: the verification routines behind the `octolab` binary.
//!
//! Every computation is generic over [`Scalar`]; [`Rational`] gives exact
//! results, `f64` gives fast approximate ones.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod error;
pub mod harness;
pub mod lattice;
pub mod operators;
pub mod reduce;
pub mod scalar;
pub mod stokes;
mod timing;

pub use algebra::{associator, basis_mul, triple_census, triple_sign, BasisTable, BasisUnit, Octonion, TripleCensus};
pub use error::{Error, Result};
pub use lattice::{BoxRegion, LatticeFunction, MultiIndex, Region};
pub use operators::{OperatorVariant, Direction, Side};
pub use scalar::{Mode, Rational, Scalar};
pub use stokes::{IdentityReport, PairingSign, Theorem};

//! Exact Schur–Weyl simulation and resource planning for one-shot compression
//! of `N` identically prepared mixed states.
//!
//! Everything here is a pure function of its inputs and runs without the
//! standard library (only `alloc` is required). File formats, the command-line
//! front end and parallel sweeps live in the companion `schur-compress-cli`
//! crate.
//!
//! Module map:
//!
//! * [`young`], [`spectrum`], [`schur`], [`su2`]: representation-theoretic
//!   combinatorics (Young diagrams, dimensions, Schur polynomials,
//!   Clebsch–Gordan coefficients, Wigner rotations).
//! * [`linalg`]: small dense complex matrices and a cyclic Jacobi Hermitian
//!   eigensolver.
//! * [`blocksim`]: permutation-invariant states as block ensembles, the
//!   encoding and decoding channels, exact trace-norm errors.
//! * [`planner`]: truncation sets, encoding dimensions, qubit counts, closed-form
//!   bounds and resource estimates.
//! * [`oracle`]: dense brute-force reference used to cross-check the block path.

#![no_std]

extern crate alloc;

pub mod blocksim;
pub mod error;
pub mod linalg;
pub mod math;
pub mod oracle;
pub mod planner;
pub mod schur;
pub mod spectrum;
pub mod su2;
pub mod young;

pub use blocksim::{BlochVector, BlockMatrix, BlockState, ErrorReport, Orientation};
pub use error::{Error, Result};
pub use planner::{CompressionPlan, ResourceEstimate};
pub use spectrum::Spectrum;
pub use young::YoungDiagram;

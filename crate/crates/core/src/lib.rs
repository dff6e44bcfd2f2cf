//! Exact computer algebra for the rank-two Heisenberg-Virasoro family.
//!
//! The crate implements, over the Gaussian rationals:
//!
//! * the Lie algebras `L(p1,p2)` (generators `T(m)`, `E(m)` for `m` in Z^2)
//!   and their extensions by the two degree derivations `D1`, `D2`;
//! * a differential-operator realization used as an independent oracle for
//!   the structure constants;
//! * the rank-one polynomial modules `Omega(...)` on `Q(i)[d1,d2]`, their
//!   distinguished codimension-one submodules, and simplicity witnesses;
//! * isomorphism decisions between module records with certifying
//!   intertwiner residuals;
//! * the classification machinery: translation-invariance solver, consistency
//!   residuals for windowed action families, an exact linear solver for the
//!   `T`-side of a family given its `E`-side, and parameter recovery from a
//!   black-box classified family.
//!
//! Every computation is exact; there is no floating point anywhere.

pub mod classify;
pub mod cli;
pub mod error;
pub mod iso;
pub mod lie;
pub mod linalg;
pub mod modules;
pub mod poly;
pub mod realization;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};

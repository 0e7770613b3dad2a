//! Exact symbolic computation of pushforwards along quotients by a free
//! rank-one group action, in the universal model where the fiber cohomology is
//! `Q[y_1, y_2, ...]`.

pub mod chern;
pub mod cli;
pub mod derivation;
pub mod error;
pub mod liealg;
pub mod linalg;
pub mod numkernel;
pub mod polyring;
pub mod pushforward;
pub mod sample;
pub mod suite;

pub use error::{Error, Result};
pub use numkernel::Rational;
pub use polyring::{Basis, GradedPoly, Monomial};

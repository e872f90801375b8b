//! Exact-arithmetic computational Lie theory for Hermitian factor types.
//!
//! The crate provides explicit root-system realizations of the classical
//! Hermitian factor types and of E6/E7, exact Weyl-group enumeration
//! through coset filtrations, exact linear algebra over Q(√2, √3), an
//! exhaustive rank-based verifier for the forced-pairing characterization
//! of the weight differences of the minuscule-side representation, and a
//! decision procedure for sufficient regularity of infinitesimal
//! characters.

pub mod bareiss;
pub mod linalg;
pub mod regularity;
pub mod roots;
pub mod scalar;
pub mod tables;
pub mod verify;
pub mod weight;
pub mod weyl;

pub use roots::{FactorType, RootSystem};
pub use scalar::{Rational, Scalar};
pub use weight::{Root, Weight};

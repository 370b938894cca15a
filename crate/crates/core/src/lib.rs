//! Exact computer algebra for nearly commuting matrices.
//!
//! The crate builds the commutator ideal of a pair of generic matrices and the
//! objects attached to it, then checks their computable properties exactly:
//! Fedder-type F-purity witnesses, the alternating binomial identities behind
//! them, the diagonal-power determinant `P(X)`, discriminants, the coefficient
//! matrix of the linear system in `Y`, linkage of the two components for 2x2
//! matrices, and a candidate system of parameters. Finite-field sampling
//! experiments and a suite runner with JSON reports sit on top.

#![allow(clippy::needless_range_loop)]

pub mod commideal;
pub mod error;
pub mod exactnum;
pub mod fedder;
pub mod ffexp;
pub mod groebner;
pub mod multipoly;
pub mod polymat;
pub mod report;
pub mod suites;

pub use error::{Error, Result};
pub use exactnum::{binomial, multinomial, Integer, PrimeField, PrimeFieldElement, Rational};
pub use multipoly::{Coeff, Domain, Monomial, Polynomial, Ring, RingRef, VariableTable};

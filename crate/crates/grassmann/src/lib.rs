//! Exact computation in the Grassmann algebra Λₙ(K) and its automorphism group.
//!
//! The crate provides sparse bitmask arithmetic over the rationals and odd
//! prime fields, skew partial derivatives, endomorphisms with Jacobians and
//! two inversion algorithms, the linear solvers used by the factorization
//! algorithms, and membership tests, factorizations, generators and
//! dimension counts for the subgroups of Aut(Λₙ).

pub mod algebra;
pub mod coeff;
pub mod endo;
pub mod error;
pub mod groups;
pub mod linsolve;
pub mod report;
pub mod sample;
pub mod skewcalc;

pub use algebra::{Component, GrassmannElement, Mask, Monomial};
pub use coeff::{Coefficient, Fp, Rational};
pub use endo::{Endomorphism, InverseStrategy, Matrix};
pub use error::{Error, Result};

#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/algebra.md")]
    pub mod algebra {}
    #[doc = include_str!("../../../book/src/calculus.md")]
    pub mod calculus {}
    #[doc = include_str!("../../../book/src/endomorphisms.md")]
    pub mod endomorphisms {}
    #[doc = include_str!("../../../book/src/subgroups.md")]
    pub mod subgroups {}
    #[doc = include_str!("../../../book/src/factorizations.md")]
    pub mod factorizations {}
    #[doc = include_str!("../../../book/src/jacobian_group.md")]
    pub mod jacobian_group {}
    #[doc = include_str!("../../../book/src/generators.md")]
    pub mod generators {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}

//! Exact arithmetic in the Grassmann algebra Λₙ(K).

mod element;
pub mod monomial;
mod parse;

pub use element::{check_index, check_n, mask_indices, Component, GrassmannElement};
pub use monomial::{Mask, Monomial, MAX_N};

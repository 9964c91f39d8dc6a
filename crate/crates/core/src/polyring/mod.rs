//! Multivariate polynomials over a field in the x- and T-variables.

mod monomial;
mod order;
mod parse;
mod poly;
mod ring;

pub use monomial::{Monomial, MAX_VARS};
pub use order::{MonomialOrder, OrderKey, OrderKind};
pub use parse::parse_poly;
pub use poly::{Bidegree, Grading, Poly};
pub use ring::RingSpec;


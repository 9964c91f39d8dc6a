//! Computational commutative algebra for Rees algebras of ideals given by a
//! linear presentation: polynomial arithmetic, Gröbner bases, ideal
//! operations and the Rees-specific analysis built on top of them.

pub mod error;
pub mod field;
pub mod groebner;
pub mod idealops;
pub mod polyring;
pub mod rees;

pub use error::{Error, Result};
pub use groebner::{buchberger, groebner_basis, membership, normal_form, trim, GroebnerBasis, Limits};
pub use idealops::{Ideal, PolyMatrix};
pub use field::{Field, FieldSpec, Zp, DEFAULT_PRIME};
pub use num_rational::BigRational;
pub use polyring::{parse_poly, Bidegree, Monomial, MonomialOrder, Poly, RingSpec};

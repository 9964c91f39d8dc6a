//! Ideals and matrices: minors, Fitting ideals, colon, saturation,
//! intersection, elimination, radicals and dimension.

mod ideal;
mod matrix;
mod ops;

pub use ideal::{ideal_equal, Ideal};
pub use matrix::{fitting_ideal, minors, PolyMatrix};
pub use ops::{
    colon, colon_by_intersection, colon_monomial, colon_poly, dimension, eliminate, height, intersect,
    max_independent_set, radical_membership, saturate, Dimension,
};

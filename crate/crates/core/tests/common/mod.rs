#![allow(dead_code)]

use std::sync::Arc;

use rees_core::rees::{validate_presentation, Presentation, ValidationOptions};
use rees_core::{Field, FieldSpec, PolyMatrix, RingSpec};

pub const LOCUS_TWO_PLANES: &[&[&str]] = &[
    &["0", "0", "0", "0", "x2"],
    &["x2", "x1+x2", "0", "x1+x2", "x1"],
    &["0", "0", "x3", "x3", "x4"],
    &["0", "x2", "x1+x2", "0", "x1+x2"],
    &["x4", "x3+x4", "0", "0", "x3"],
    &["0", "0", "x4", "0", "x1"],
];

pub const LOCUS_MIXED_HEIGHTS: &[&[&str]] = &[
    &["x1-x2", "x2", "x2", "x1"],
    &["x2", "0", "x2", "x1"],
    &["x1+x2", "0", "x2", "x1"],
    &["x4", "x1", "x3", "0"],
    &["x1", "x3", "x1", "x4"],
];

pub const SINGLE_COLON: &[&[&str]] = &[
    &["x2", "0", "x2", "0"],
    &["x2", "x1", "x4", "x2"],
    &["0", "x1", "x2", "x3"],
    &["0", "x2", "x3", "x1"],
    &["x1", "x2", "x1", "x4"],
];

pub const QUADRATIC_ENTRY: &[&[&str]] = &[
    &["x1^2", "x1", "x2", "0"],
    &["0", "0", "x1", "x1"],
    &["x2^2", "x2", "x1", "0"],
    &["0", "x1", "x2", "x2"],
    &["x2^2", "x1", "x3", "x4"],
];

pub const ZP: FieldSpec = FieldSpec::Prime(32003);

pub fn ring(field: FieldSpec, rows: &[&[&str]]) -> Arc<RingSpec> {
    RingSpec::new(4, rows.len(), field).unwrap()
}

pub fn matrix<F: Field>(field: FieldSpec, rows: &[&[&str]]) -> PolyMatrix<F> {
    let r = ring(field, rows);
    PolyMatrix::parse(&r, &rows.iter().map(|row| row.to_vec()).collect::<Vec<_>>()).unwrap()
}

pub fn presentation<F: Field>(field: FieldSpec, rows: &[&[&str]], allow_nonlinear: bool) -> Presentation<F> {
    validate_presentation(matrix(field, rows), 1, ValidationOptions { allow_nonlinear }).unwrap()
}

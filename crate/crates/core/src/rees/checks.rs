use serde::Serialize;

use super::jd::{minors_or_zero, symmetric_ideal, Submatrices};
use super::shape::ShapeKind;
use super::Presentation;
use crate::error::Result;
use crate::field::Field;
use crate::idealops::{colon, height, ideal_equal, Ideal};

/// Parts of the residual intersection description of `J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualIntersection {
    /// `L` is contained in the residual ideal.
    pub l_contained: bool,
    /// `L : I = J`.
    pub colon_matches: bool,
    /// `ht J = n - e`.
    pub height_matches: bool,
}

impl ResidualIntersection {
    pub fn holds(&self) -> bool {
        self.l_contained && self.colon_matches && self.height_matches
    }
}

/// Checks `J = L : I` with `I = (x1..xs, γ)` (column) or
/// `I = (x1..xs, x_(s+1)Tn..x_dTn)` (row).
pub fn residual_intersection_check<F: Field>(
    p: &Presentation<F>,
    sub: &Submatrices<F>,
    j: &Ideal<F>,
) -> Result<ResidualIntersection> {
    residual_intersection_with(p, &sub.residual_generators, j)
}

/// [`residual_intersection_check`] against an arbitrary residual ideal.
pub fn residual_intersection_with<F: Field>(
    p: &Presentation<F>,
    residual: &[crate::Poly<F>],
    j: &Ideal<F>,
) -> Result<ResidualIntersection> {
    let l = symmetric_ideal(p);
    let res = Ideal::new(p.ring(), residual.iter().cloned())?;
    let l_contained = res.contains_ideal(&l)?;
    let colon_matches = ideal_equal(&colon(&l, &res)?, j)?;
    let height_matches = height(j)? == Some(p.phi().cols());
    Ok(ResidualIntersection { l_contained, colon_matches, height_matches })
}

/// True iff `I_(s+1)(C) ⊆ L + I_s(B')`; holds vacuously in the column case.
pub fn fiber_type_check<F: Field>(p: &Presentation<F>, sub: &Submatrices<F>) -> Result<bool> {
    let c = match (&sub.kind, &sub.c_matrix) {
        (ShapeKind::Row, Some(c)) => c,
        _ => return Ok(true),
    };
    let base = symmetric_ideal(p).sum(&minors_or_zero(&sub.b_prime, sub.s)?)?;
    base.contains_ideal(&minors_or_zero(c, sub.s + 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldSpec, Zp};
    use crate::polyring::Poly;
    use crate::rees::{classify_shape, constructed_instance, extract_submatrices, saturation_oracle};

    fn setup(kind: ShapeKind, dims: (usize, usize, usize, usize)) -> (Presentation<Zp>, Submatrices<Zp>, Ideal<Zp>) {
        let inst = constructed_instance::<Zp>(FieldSpec::Prime(32003), kind, dims, 5).unwrap();
        let p = inst.presentation;
        let mut shape = classify_shape(&p, dims.1).unwrap();
        shape.kind = kind;
        let sub = extract_submatrices(&p, &shape).unwrap();
        let (j, _) = saturation_oracle(&p, dims.1).unwrap();
        (p, sub, j)
    }

    #[test]
    fn column_residual_intersection_and_negative_control() {
        let (p, sub, j) = setup(ShapeKind::Column, (4, 2, 5, 1));
        assert!(residual_intersection_check(&p, &sub, &j).unwrap().holds());
        assert!(fiber_type_check(&p, &sub).unwrap());
        let ring = p.ring();
        let mut res = sub.residual_generators.clone();
        let bogus = Poly::var(ring, ring.x_var(3)).add(&Poly::var(ring, ring.x_var(4)).scale(&Zp::new(2, 32003)));
        *res.last_mut().unwrap() = bogus;
        assert!(!residual_intersection_with(&p, &res, &j).unwrap().holds());
    }

    #[test]
    fn row_residual_intersection_and_fiber_type() {
        let (p, sub, j) = setup(ShapeKind::Row, (4, 2, 5, 1));
        assert!(residual_intersection_check(&p, &sub, &j).unwrap().holds());
        assert!(!fiber_type_check(&p, &sub).unwrap());
        let (p, sub, _) = setup(ShapeKind::Row, (4, 3, 5, 1));
        assert!(fiber_type_check(&p, &sub).unwrap());
    }
}

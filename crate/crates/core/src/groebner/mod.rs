//! Gröbner bases: Buchberger completion, normal forms, minimal generators.

mod buchberger;
mod limits;
mod reduce;
mod trim;

use std::sync::Arc;

pub use buchberger::Builder;
pub use limits::{current as current_limits, with_limits, Limits};
pub use trim::trim;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::polyring::{Monomial, MonomialOrder, Poly, RingSpec};
use reduce::{reduce, reduce_spoly, sort_terms, Reducer};

/// Reduced Gröbner basis: monic, sorted by increasing leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<RingSpec>,
    order: MonomialOrder,
    elems: Vec<Reducer<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    fn from_parts(ring: Arc<RingSpec>, order: MonomialOrder, elems: Vec<Reducer<F>>) -> Self {
        GroebnerBasis { ring, order, elems }
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    /// True for the basis of the zero ideal.
    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// True iff the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.elems.first().is_some_and(|r| r.lm.is_one())
    }

    pub fn generators(&self) -> Vec<Poly<F>> {
        self.elems.iter().map(|r| Poly::from_terms(&self.ring, r.terms.iter().cloned())).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elems.iter().map(|r| r.lm).collect()
    }

    /// Basis elements as term lists in decreasing order for [`Self::order`].
    pub fn ordered_terms(&self) -> impl Iterator<Item = &[(Monomial, F)]> {
        self.elems.iter().map(|r| r.terms.as_slice())
    }

    pub fn normal_form(&self, p: &Poly<F>) -> Result<Poly<F>> {
        if !p.ring().same_as(&self.ring) {
            return Err(Error::RingMismatch);
        }
        let mut terms = p.terms().to_vec();
        sort_terms(&mut terms, &self.order);
        let r = reduce(terms, self.elems.iter(), &self.order, true);
        Ok(Poly::from_terms(&self.ring, r))
    }

    pub fn contains(&self, p: &Poly<F>) -> Result<bool> {
        if self.is_unit() {
            return Ok(true);
        }
        if !p.ring().same_as(&self.ring) {
            return Err(Error::RingMismatch);
        }
        let mut terms = p.terms().to_vec();
        sort_terms(&mut terms, &self.order);
        Ok(reduce(terms, self.elems.iter(), &self.order, false).is_empty())
    }

    /// Leading monomial of `p` lies in the initial ideal.
    pub fn lm_reducible(&self, m: &Monomial) -> bool {
        self.elems.iter().any(|r| r.lm.divides(m))
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner_basis<F: Field>(
    ring: &Arc<RingSpec>,
    gens: &[Poly<F>],
    order: &MonomialOrder,
) -> Result<GroebnerBasis<F>> {
    let mut b = Builder::new(ring, order);
    for g in gens {
        b.add_generator(g)?;
    }
    b.finish()
}

/// Buchberger completion of a nonempty generator list into a reduced basis.
pub fn buchberger<F: Field>(gens: &[Poly<F>], order: &MonomialOrder) -> Result<GroebnerBasis<F>> {
    let first = gens.first().ok_or_else(|| Error::Shape("empty generator list".into()))?;
    groebner_basis(first.ring(), gens, order)
}

/// Full remainder of `f` on division by `basis`, reducing the highest
/// reducible term by the first divisor in list order.
pub fn normal_form<F: Field>(f: &Poly<F>, basis: &[Poly<F>], order: &MonomialOrder) -> Result<Poly<F>> {
    let mut reducers = Vec::with_capacity(basis.len());
    for b in basis {
        if !b.ring().same_as(f.ring()) {
            return Err(Error::RingMismatch);
        }
        if b.is_zero() {
            return Err(Error::Shape("zero polynomial in a division basis".into()));
        }
        let mut t = b.terms().to_vec();
        sort_terms(&mut t, order);
        reduce::make_monic(&mut t);
        reducers.push(Reducer::new(t));
    }
    let mut terms = f.terms().to_vec();
    sort_terms(&mut terms, order);
    Ok(Poly::from_terms(f.ring(), reduce(terms, reducers.iter(), order, true)))
}

/// `f ∈ I`, decided by the reduced basis under the ring's default order.
pub fn membership<F: Field>(f: &Poly<F>, ideal: &crate::idealops::Ideal<F>) -> Result<bool> {
    ideal.contains(f)
}

/// Checks Buchberger's criterion: every S-polynomial of `polys` reduces to
/// zero modulo `polys`.
pub fn satisfies_buchberger_criterion<F: Field>(polys: &[Poly<F>], order: &MonomialOrder) -> bool {
    let reducers: Vec<Reducer<F>> = polys
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            let mut t = p.terms().to_vec();
            sort_terms(&mut t, order);
            reduce::make_monic(&mut t);
            Reducer::new(t)
        })
        .collect();
    for i in 0..reducers.len() {
        for j in i + 1..reducers.len() {
            if !reduce_spoly(&reducers[i], &reducers[j], reducers.iter(), order).is_empty() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldSpec, Zp};
    use crate::polyring::parse_poly;
    use num_rational::BigRational;

    fn ring(n: usize) -> Arc<RingSpec> {
        RingSpec::new(n, 0, FieldSpec::Rational).unwrap()
    }

    fn polys(r: &Arc<RingSpec>, src: &[&str]) -> Vec<Poly<BigRational>> {
        src.iter().map(|s| parse_poly(r, s).unwrap()).collect()
    }

    #[test]
    fn lex_basis_of_circle_and_line() {
        let r = ring(2);
        let gens = polys(&r, &["x1^2 + x2^2 - 1", "x1 - x2"]);
        let gb = groebner_basis(&r, &gens, &MonomialOrder::lex(vec![0, 1])).unwrap();
        assert_eq!(gb.generators(), polys(&r, &["x2^2 - 1/2", "x1 - x2"]));
    }

    #[test]
    fn cyclic_four_is_a_reduced_basis() {
        let r = ring(4);
        let gens = polys(
            &r,
            &[
                "x1 + x2 + x3 + x4",
                "x1x2 + x2x3 + x3x4 + x4x1",
                "x1x2x3 + x2x3x4 + x3x4x1 + x4x1x2",
                "x1x2x3x4 - 1",
            ],
        );
        let ord = r.default_order().clone();
        let gb = groebner_basis(&r, &gens, &ord).unwrap();
        assert!(satisfies_buchberger_criterion(&gb.generators(), &ord));
        for g in &gens {
            assert!(gb.contains(g).unwrap());
        }
        // leading monomials form a minimal set and tails are reduced
        let lms = gb.leading_monomials();
        for (i, g) in gb.ordered_terms().enumerate() {
            assert!(g[0].1.is_one());
            for (j, lm) in lms.iter().enumerate() {
                for (t, _) in g.iter().skip(1) {
                    assert!(!lm.divides(t));
                }
                if i != j {
                    assert!(!lm.divides(&g[0].0));
                }
            }
        }
        assert_eq!(gb.len(), 7);
    }

    #[test]
    fn unit_ideal_detected() {
        let r = ring(2);
        let gens = polys(&r, &["x1x2 - 1", "x1"]);
        let gb = groebner_basis(&r, &gens, r.default_order()).unwrap();
        assert!(gb.is_unit());
        assert_eq!(gb.len(), 1);
    }

    #[test]
    fn prime_field_basis_agrees_with_rational() {
        let r = ring(3);
        let gens = polys(&r, &["x1^2 - x2x3", "x2^2 - x1x3", "x3^2 - x1x2 + 3x1"]);
        let q = groebner_basis(&r, &gens, r.default_order()).unwrap();
        let rp = RingSpec::new(3, 0, FieldSpec::Prime(32003)).unwrap();
        let gp: Vec<Poly<Zp>> = gens.iter().map(|g| g.reduce_mod(32003).unwrap().to_ring(&rp).unwrap()).collect();
        let p = groebner_basis(&rp, &gp, rp.default_order()).unwrap();
        assert_eq!(q.leading_monomials(), p.leading_monomials());
    }

    #[test]
    fn degree_cap_raises_resource_limit() {
        let r = ring(4);
        let gens = polys(&r, &["x1^3 - x2^2x4", "x2^3 - x3^2x1", "x3^3 - x4^2x2 + x1^2x2"]);
        let err = with_limits(Limits { max_degree: Some(4), ..Limits::none() }, || {
            groebner_basis(&r, &gens, r.default_order())
        })
        .unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { .. }), "{err}");
    }

    #[test]
    fn division_reduces_to_fixpoint() {
        let r = ring(2);
        let lex = MonomialOrder::lex(vec![0, 1]);
        let basis = polys(&r, &["x1^2 - x2", "x2^2 - 1"]);
        let f = parse_poly(&r, "x1^2x2").unwrap();
        assert_eq!(normal_form(&f, &basis, &lex).unwrap(), Poly::one(&r));
        let x = parse_poly(&r, "x1").unwrap();
        assert_eq!(normal_form(&x, &polys(&r, &["x2"]), &lex).unwrap(), x);
    }

    #[test]
    fn division_by_a_basis_of_the_ideal_gives_zero() {
        let r = ring(3);
        let gens = polys(&r, &["x1x2 - x3", "x2^2 - x1"]);
        let gb = groebner_basis(&r, &gens, r.default_order()).unwrap();
        let f = gens[0].mul(&parse_poly(&r, "x3 + 2x1").unwrap()).add(&gens[1].mul(&gens[1]));
        assert!(normal_form(&f, &gb.generators(), r.default_order()).unwrap().is_zero());
    }

    #[test]
    fn lex_substitution_basis() {
        let r = ring(3);
        let lex = MonomialOrder::lex(vec![0, 1, 2]);
        let gb = buchberger(&polys(&r, &["x1 - x2^2", "x2 - x3"]), &lex).unwrap();
        assert_eq!(gb.generators(), polys(&r, &["x2 - x3", "x1 - x3^2"]));
        assert_eq!(buchberger(&polys(&r, &["2x1x2 + 4"]), &lex).unwrap().generators(), polys(&r, &["x1x2 + 2"]));
    }

    #[test]
    fn membership_in_a_monomial_ideal() {
        let r = ring(2);
        let i = crate::idealops::Ideal::new(&r, polys(&r, &["x1^2", "x1x2"])).unwrap();
        assert!(membership(&Poly::zero(&r), &i).unwrap());
        assert!(!membership(&parse_poly(&r, "x1").unwrap(), &i).unwrap());
        assert!(membership(&parse_poly(&r, "x1x2").unwrap(), &i).unwrap());
    }
}

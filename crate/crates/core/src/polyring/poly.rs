use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::ring::RingSpec;
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, Zp};

/// Degree in the x-variables and in the T-variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Bidegree {
    pub x: u32,
    pub t: u32,
}

impl Bidegree {
    pub fn new(x: u32, t: u32) -> Self {
        Bidegree { x, t }
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.t)
    }
}

/// Result of a bigrading check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Grading {
    /// The zero polynomial, homogeneous of every bidegree.
    Any,
    Bihomogeneous(Bidegree),
    NotBihomogeneous,
}

/// Sparse polynomial. Terms are kept sorted in decreasing default order of
/// the ring, with nonzero coefficients, so structural equality is equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F: Field> {
    ring: Arc<RingSpec>,
    terms: Vec<(Monomial, F)>,
}

impl<F: Field> Poly<F> {
    pub fn zero(ring: &Arc<RingSpec>) -> Self {
        Poly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<RingSpec>, c: F) -> Self {
        Self::monomial(ring, Monomial::one(), c)
    }

    pub fn one(ring: &Arc<RingSpec>) -> Self {
        Self::constant(ring, F::one(ring.field()))
    }

    pub fn from_i64(ring: &Arc<RingSpec>, c: i64) -> Self {
        Self::constant(ring, F::from_i64(c, ring.field()))
    }

    pub fn var(ring: &Arc<RingSpec>, v: usize) -> Self {
        assert!(v < ring.nvars(), "variable index {v} out of range");
        Self::monomial(ring, Monomial::var(v), F::one(ring.field()))
    }

    pub fn monomial(ring: &Arc<RingSpec>, m: Monomial, c: F) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        Poly { ring: ring.clone(), terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(ring: &Arc<RingSpec>, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut acc: FxHashMap<Monomial, F> = FxHashMap::default();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(e) => *e = e.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Arc<RingSpec>, acc: FxHashMap<Monomial, F>) -> Self {
        let mut terms: Vec<(Monomial, F)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let ord = ring.default_order();
        terms.sort_unstable_by(|a, b| ord.cmp(&b.0, &a.0));
        Poly { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F)> {
        self.terms
    }

    /// Number of terms; `is_zero` is the emptiness test.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| F::zero(self.ring.field()))
    }

    pub fn constant_term(&self) -> F {
        self.coeff(&Monomial::one())
    }

    /// Leading term with respect to the ring's default order.
    pub fn leading(&self) -> Option<&(Monomial, F)> {
        self.terms.first()
    }

    /// Leading term with respect to an arbitrary order.
    pub fn leading_in(&self, ord: &MonomialOrder) -> Option<&(Monomial, F)> {
        self.terms.iter().max_by(|a, b| ord.cmp(&a.0, &b.0))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    /// Bidegree of a nonzero bihomogeneous polynomial; `None` for the zero
    /// polynomial or mixed bidegrees.
    pub fn bidegree(&self) -> Option<Bidegree> {
        let (first, _) = self.terms.first()?;
        let (x, t) = self.ring.bidegree_of(first);
        self.terms
            .iter()
            .all(|(m, _)| self.ring.bidegree_of(m) == (x, t))
            .then_some(Bidegree { x, t })
    }

    pub fn grading(&self) -> Grading {
        match self.bidegree() {
            Some(b) => Grading::Bihomogeneous(b),
            None if self.is_zero() => Grading::Any,
            None => Grading::NotBihomogeneous,
        }
    }

    pub fn is_bihomogeneous(&self) -> bool {
        self.is_zero() || self.bidegree().is_some()
    }

    /// Bitmask of variables that occur.
    pub fn support(&self) -> u32 {
        self.terms.iter().fold(0, |acc, (m, _)| acc | m.support_mask())
    }

    pub fn uses_aux(&self) -> bool {
        self.terms.iter().any(|(m, _)| !self.ring.is_base_monomial(m))
    }

    fn check_ring(&self, other: &Self) {
        assert!(self.ring.same_as(&other.ring), "operands live in different rings");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_ring(other);
        let ord = self.ring.default_order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match ord.cmp(&a.0, &b.0) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = a.1.add(&b.1);
                    if !c.is_zero() {
                        out.push((a.0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Poly { ring: self.ring.clone(), terms: out }
    }

    pub fn neg(&self) -> Self {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (*m, a.mul(c))).collect(),
        }
    }

    /// Multiplication by a term; monomial multiplication preserves the order.
    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.mul(c))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_ring(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: FxHashMap<Monomial, F> = FxHashMap::default();
        acc.reserve(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(e) => *e = e.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(&self.ring, acc)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Scales so the leading coefficient (default order) is one.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            Some((_, c)) if !c.is_one() => self.scale(&c.inv()),
            _ => self.clone(),
        }
    }

    /// Sets the given variables to zero.
    pub fn substitute_zero(&self, vars: &[usize]) -> Self {
        let mask: u32 = vars.iter().fold(0, |acc, &v| acc | (1 << v));
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.support_mask() & mask == 0).cloned().collect(),
        }
    }

    /// Replaces variable `v` by `value`.
    pub fn substitute(&self, v: usize, value: &Self) -> Self {
        self.check_ring(value);
        let mut powers: Vec<Self> = vec![Self::one(&self.ring)];
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap().mul(value);
                powers.push(next);
            }
            let rest = m.with_exp(v, 0);
            out = out.add(&powers[e].mul_term(&rest, c));
        }
        out
    }

    /// Evaluates at a point given for every variable of the ring.
    pub fn evaluate(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.ring.nvars());
        let spec = self.ring.field();
        let mut total = F::zero(spec);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, x) in point.iter().enumerate() {
                for _ in 0..m.exp(v) {
                    t = t.mul(x);
                }
            }
            total = total.add(&t);
        }
        total
    }

    /// Coefficient of the monomial `m` viewed as a polynomial in the
    /// variables outside `vars`: collects terms whose restriction to `vars`
    /// equals `m`, stripping that part.
    pub fn coefficient_in(&self, vars: &[usize], m: &Monomial) -> Self {
        let terms = self.terms.iter().filter_map(|(t, c)| {
            if vars.iter().all(|&v| t.exp(v) == m.exp(v)) {
                let mut rest = *t;
                for &v in vars {
                    rest = rest.with_exp(v, 0);
                }
                Some((rest, c.clone()))
            } else {
                None
            }
        });
        Self::from_terms(&self.ring, terms)
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.check_ring(divisor);
        let (lm, lc) = divisor.terms.first()?.clone();
        let lc_inv = lc.inv();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            let q = m.div(&lm)?;
            let qc = c.mul(&lc_inv);
            rem = rem.sub(&divisor.mul_term(&q, &qc));
            quot.push((q, qc));
        }
        Some(Self::from_terms(&self.ring, quot))
    }

    /// The same polynomial in another ring whose variables cover its support.
    pub fn to_ring(&self, ring: &Arc<RingSpec>) -> Result<Self> {
        if ring.field() != self.ring.field() {
            return Err(Error::RingMismatch);
        }
        let limit = ring.nvars();
        if limit < 32 && self.support() >> limit != 0 {
            return Err(Error::RingMismatch);
        }
        Ok(Self::from_terms(ring, self.terms.iter().cloned()))
    }

    /// Renames variables: variable `i` becomes `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        Self::from_terms(&self.ring, self.terms.iter().map(|(m, c)| (m.permuted(perm), c.clone())))
    }

    /// Applies a map to each coefficient, landing in another field.
    pub fn map_coeffs<G: Field>(&self, ring: &Arc<RingSpec>, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::from_terms(ring, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }
}

impl Poly<BigRational> {
    /// Reduction modulo a prime; fails if some denominator vanishes.
    pub fn reduce_mod(&self, p: u32) -> Result<Poly<Zp>> {
        let spec = FieldSpec::prime(p)?;
        let ring = RingSpec::new(self.ring.x_count(), self.ring.t_count(), spec)?;
        let ring = if self.ring.aux_count() > 0 { ring.extended(self.ring.aux_count())? } else { ring };
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let z = Zp::from_ratio(c.numer(), c.denom(), spec).ok_or(Error::DenominatorVanishes { pos: 0 })?;
            terms.push((*m, z));
        }
        Ok(Poly::from_terms(&ring, terms))
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = format_monomial(&self.ring, m);
            match (abs.is_one(), mono.is_empty()) {
                (_, true) => write!(f, "{abs}")?,
                (true, false) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn format_monomial(ring: &RingSpec, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for v in 0..ring.nvars() {
        match m.exp(v) {
            0 => {}
            1 => parts.push(ring.var_name(v)),
            e => parts.push(format!("{}^{e}", ring.var_name(v))),
        }
    }
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;

    fn ring() -> Arc<RingSpec> {
        RingSpec::new(4, 5, FieldSpec::Rational).unwrap()
    }

    fn p(src: &str) -> Poly<BigRational> {
        parse_poly(&ring(), src).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(p("x1 + x2").mul(&p("x1 - x2")), p("x1^2 - x2^2"));
        assert_eq!(Poly::one(&ring()).mul(&p("3x1T2 - 1/2")), p("3x1T2 - 1/2"));
        assert!(p("x1*x2 - x2*x1").is_zero());
    }

    #[test]
    fn bidegrees() {
        assert_eq!(p("x1*T2^2 + x3*T1*T5").grading(), Grading::Bihomogeneous(Bidegree::new(1, 2)));
        assert_eq!(p("x1*T1 + T1^2").grading(), Grading::NotBihomogeneous);
        assert_eq!(Poly::<BigRational>::zero(&ring()).grading(), Grading::Any);
        assert!(Poly::<BigRational>::zero(&ring()).is_bihomogeneous());
    }

    #[test]
    fn display_round_trip() {
        for src in ["0", "1", "-x1", "x1^2*T3 - 2/3*x2 + 5", "T1*T2 - T3^2"] {
            let f = p(src);
            assert_eq!(p(&f.to_string()), f, "{src}");
        }
        assert_eq!(p("-1 + x1").to_string(), "x1 - 1");
    }

    #[test]
    fn substitution_and_division() {
        let f = p("x1*T1 + x2*T2 + x3");
        assert_eq!(f.substitute_zero(&[0, 1]), p("x3"));
        let t = f.ring().t_var(2);
        assert_eq!(f.substitute(t, &p("x4")), p("x1*T1 + x2*x4 + x3"));
        let g = p("x1 + T1");
        assert_eq!(g.mul(&f).exact_div(&g), Some(f.clone()));
        assert_eq!(f.exact_div(&g), None);
    }

    #[test]
    fn modular_reduction() {
        let f = p("1/2*x1 + 3");
        let g = f.reduce_mod(7).unwrap();
        assert_eq!(g.coeff(&Monomial::var(0)).value(), 4);
        assert!(matches!(p("1/7*x1").reduce_mod(7), Err(Error::DenominatorVanishes { .. })));
    }

    #[test]
    fn coefficient_in_t_variables() {
        let r = ring();
        let f = p("x1*T1 + 2*x1*T2 + x2*T1");
        let x1 = Monomial::var(r.x_var(1));
        assert_eq!(f.coefficient_in(&r.x_vars().collect::<Vec<_>>(), &x1), p("T1 + 2T2"));
    }
}

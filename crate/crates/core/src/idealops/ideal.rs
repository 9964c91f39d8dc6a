use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{self, GroebnerBasis};
use crate::polyring::{parse_poly, MonomialOrder, Poly, RingSpec};

type GbCache<F> = Arc<Mutex<HashMap<MonomialOrder, Arc<GroebnerBasis<F>>>>>;

/// An ideal given by generators, with reduced Gröbner bases memoized per order.
///
/// Clones share the memo. Filling the memo concurrently is harmless since
/// reduced bases are canonical.
pub struct Ideal<F: Field> {
    ring: Arc<RingSpec>,
    gens: Vec<Poly<F>>,
    cache: GbCache<F>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        Ideal { ring: self.ring.clone(), gens: self.gens.clone(), cache: self.cache.clone() }
    }
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped.
    pub fn new(ring: &Arc<RingSpec>, gens: impl IntoIterator<Item = Poly<F>>) -> Result<Self> {
        let mut out = Vec::new();
        for g in gens {
            if !g.ring().same_as(ring) {
                return Err(Error::RingMismatch);
            }
            if !g.is_zero() {
                out.push(g);
            }
        }
        Ok(Ideal { ring: ring.clone(), gens: out, cache: Arc::default() })
    }

    pub fn parse(ring: &Arc<RingSpec>, gens: &[&str]) -> Result<Self> {
        let polys = gens.iter().map(|s| parse_poly(ring, s)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, polys)
    }

    pub fn zero(ring: &Arc<RingSpec>) -> Self {
        Ideal { ring: ring.clone(), gens: Vec::new(), cache: Arc::default() }
    }

    pub fn unit(ring: &Arc<RingSpec>) -> Self {
        Self::new(ring, [Poly::one(ring)]).expect("same ring")
    }

    /// The ideal generated by the given variables.
    pub fn of_vars(ring: &Arc<RingSpec>, vars: impl IntoIterator<Item = usize>) -> Self {
        Self::new(ring, vars.into_iter().map(|v| Poly::var(ring, v))).expect("same ring")
    }

    /// The ideal (x1..xd) of all x-variables.
    pub fn maximal_x(ring: &Arc<RingSpec>) -> Self {
        Self::of_vars(ring, ring.x_vars())
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly<F>] {
        &self.gens
    }

    pub fn into_generators(self) -> Vec<Poly<F>> {
        self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn groebner(&self, order: &MonomialOrder) -> Result<Arc<GroebnerBasis<F>>> {
        if let Some(gb) = self.cache.lock().expect("cache lock").get(order) {
            return Ok(gb.clone());
        }
        let gb = Arc::new(groebner::groebner_basis(&self.ring, &self.gens, order)?);
        self.cache.lock().expect("cache lock").entry(order.clone()).or_insert_with(|| gb.clone());
        Ok(gb)
    }

    /// Reduced Gröbner basis under the ring's default order.
    pub fn gb(&self) -> Result<Arc<GroebnerBasis<F>>> {
        self.groebner(self.ring.default_order())
    }

    pub fn contains(&self, f: &Poly<F>) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        self.gb()?.contains(f)
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal<F>) -> Result<bool> {
        let gb = self.gb()?;
        for g in &other.gens {
            if !gb.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self) -> Result<bool> {
        if self.gens.iter().any(|g| g.is_unit()) {
            return Ok(true);
        }
        Ok(self.gb()?.is_unit())
    }

    pub fn normal_form(&self, f: &Poly<F>) -> Result<Poly<F>> {
        self.gb()?.normal_form(f)
    }

    pub fn sum(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        Self::new(&self.ring, self.gens.iter().chain(&other.gens).cloned())
    }

    pub fn product(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b));
            }
        }
        Self::new(&self.ring, gens)
    }

    pub fn power(&self, k: u32) -> Result<Ideal<F>> {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    pub fn is_bihomogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_bihomogeneous())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    /// Generated by monomials.
    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(|g| g.is_monomial())
    }

    /// Minimal generators for bihomogeneous ideals, otherwise the reduced
    /// Gröbner basis. The memo carries over.
    pub fn trimmed(&self) -> Result<Ideal<F>> {
        let gens = if self.is_bihomogeneous() {
            groebner::trim(&self.ring, &self.gens)?
        } else {
            self.gb()?.generators()
        };
        Ok(Ideal { ring: self.ring.clone(), gens, cache: self.cache.clone() })
    }

    /// The same ideal with its generators viewed in another ring.
    pub fn to_ring(&self, ring: &Arc<RingSpec>) -> Result<Ideal<F>> {
        let gens = self.gens.iter().map(|g| g.to_ring(ring)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, gens)
    }

    /// Generators printed and sorted, for stable reports.
    pub fn sorted_strings(&self) -> Vec<String> {
        let mut v: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        v.sort();
        v
    }
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.gens).finish()
    }
}

impl<F: Field> fmt::Display for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// Equality of ideals, decided by comparing reduced Gröbner bases.
pub fn ideal_equal<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<bool> {
    if !a.ring.same_as(&b.ring) {
        return Err(Error::RingMismatch);
    }
    Ok(a.gb()?.generators() == b.gb()?.generators())
}

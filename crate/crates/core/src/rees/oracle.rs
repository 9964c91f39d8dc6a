use std::collections::BTreeMap;

use serde::Serialize;

use super::jd::symmetric_ideal;
use super::Presentation;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::trim;
use crate::idealops::{eliminate, height, radical_membership, saturate, Ideal};
use crate::polyring::Bidegree;

/// `p = (x1..xs)`.
pub fn first_vars_ideal<F: Field>(p: &Presentation<F>, s: usize) -> Ideal<F> {
    let ring = p.ring();
    Ideal::of_vars(ring, (1..=s).map(|i| ring.x_var(i)))
}

/// `L : (x1..xs)^∞` with its stabilization exponent.
pub fn saturation_oracle<F: Field>(p: &Presentation<F>, s: usize) -> Result<(Ideal<F>, u32)> {
    saturate_symmetric(p, &first_vars_ideal(p, s))
}

/// `L : by^∞`, trimmed.
pub fn saturate_symmetric<F: Field>(p: &Presentation<F>, by: &Ideal<F>) -> Result<(Ideal<F>, u32)> {
    let (j, k) = saturate(&symmetric_ideal(p), by)?;
    Ok((j.trimmed()?, k))
}

/// True iff `(x1..xs)` is the only minimal prime of `f`: `f ⊆ (x1..xs)`,
/// `ht f = s` and every `x_j` with `j ≤ s` lies in the radical of `f`.
pub fn unique_minimal_prime_check<F: Field>(f: &Ideal<F>, s: usize) -> Result<bool> {
    let ring = f.ring();
    if s == 0 || s > ring.x_count() {
        return Err(Error::OutOfRange { what: "s", value: s, lo: 1, hi: ring.x_count() });
    }
    let p = Ideal::of_vars(ring, (1..=s).map(|i| ring.x_var(i)));
    if !p.contains_ideal(f)? || height(f)? != Some(s) {
        return Ok(false);
    }
    for i in 1..=s {
        if !radical_membership(&crate::Poly::var(ring, ring.x_var(i)), f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of checking that given ideals are exactly the minimal primes of
/// `f`, assuming each of them is prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeCertificate {
    pub contains: bool,
    pub covers_radical: bool,
    pub incomparable: bool,
    pub heights: Vec<Option<usize>>,
}

impl PrimeCertificate {
    pub fn holds(&self) -> bool {
        self.contains && self.covers_radical && self.incomparable
    }
}

/// Checks `f ⊆ P` for each candidate, that every generator of `∏P` lies in
/// `√f` (so `V(f)` is the union of the `V(P)`) and that no candidate contains
/// another. Primality of the candidates is taken on trust.
pub fn certify_minimal_primes<F: Field>(f: &Ideal<F>, primes: &[Ideal<F>]) -> Result<PrimeCertificate> {
    let mut contains = true;
    let mut heights = Vec::with_capacity(primes.len());
    for pr in primes {
        contains &= pr.contains_ideal(f)?;
        heights.push(height(pr)?);
    }
    let mut covers_radical = !primes.is_empty();
    if covers_radical {
        let mut prod = primes[0].clone();
        for pr in &primes[1..] {
            prod = prod.product(pr)?;
        }
        for g in prod.generators() {
            if !radical_membership(g, f)? {
                covers_radical = false;
                break;
            }
        }
    }
    let mut incomparable = true;
    for (a, pa) in primes.iter().enumerate() {
        for (b, pb) in primes.iter().enumerate() {
            if a != b && pa.contains_ideal(pb)? {
                incomparable = false;
            }
        }
    }
    Ok(PrimeCertificate { contains, covers_radical, incomparable, heights })
}

/// Bidegree multiset of a minimal generating set.
pub fn bidegree_census<F: Field>(gens: &[crate::Poly<F>]) -> BTreeMap<Bidegree, usize> {
    let mut census = BTreeMap::new();
    for g in gens {
        if let Some(b) = g.bidegree() {
            *census.entry(b).or_insert(0) += 1;
        }
    }
    census
}

/// Special fiber data of a defining ideal.
#[derive(Clone, Debug)]
pub struct FiberAnalysis<F: Field> {
    /// `(J + m) ∩ k[T]`, trimmed.
    pub fiber: Ideal<F>,
    /// `n - ht(fiber)`, the Krull dimension of the special fiber ring.
    pub analytic_spread: usize,
    /// Minimal generators of `J` used for the census.
    pub minimal_generators: Vec<crate::Poly<F>>,
    pub census: BTreeMap<Bidegree, usize>,
}

pub fn fiber_analysis<F: Field>(j: &Ideal<F>, p: &Presentation<F>) -> Result<FiberAnalysis<F>> {
    let ring = p.ring();
    let minimal = trim(ring, j.generators())?;
    let census = bidegree_census(&minimal);
    let m = Ideal::maximal_x(ring);
    let keep: Vec<usize> = ring.t_vars().collect();
    let fiber = eliminate(&j.sum(&m)?, &keep)?.trimmed()?;
    let ht = height(&fiber)?.unwrap_or(ring.t_count());
    Ok(FiberAnalysis { fiber, analytic_spread: ring.t_count() - ht, minimal_generators: minimal, census })
}

use super::Ideal;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::groebner_basis;
use crate::polyring::{Monomial, MonomialOrder, Poly, RingSpec};

/// Ranking of the ring's default order restricted to `vars`.
fn default_ranking_of(ring: &RingSpec, keep: impl Fn(usize) -> bool) -> Vec<usize> {
    ring.default_order().ranking().iter().copied().filter(|&v| keep(v)).collect()
}

/// `I ∩ k[keep]`, via a block order with the other variables in front.
pub fn eliminate<F: Field>(ideal: &Ideal<F>, keep: &[usize]) -> Result<Ideal<F>> {
    let ring = ideal.ring();
    let mut keep_mask = 0u32;
    for &v in keep {
        if v >= ring.nvars() {
            return Err(Error::OutOfRange { what: "variable index", value: v, lo: 0, hi: ring.nvars() - 1 });
        }
        keep_mask |= 1 << v;
    }
    let front = default_ranking_of(ring, |v| keep_mask & (1 << v) == 0);
    let rest = default_ranking_of(ring, |v| keep_mask & (1 << v) != 0);
    let order = MonomialOrder::elimination(front, rest);
    let gb = ideal.groebner(&order)?;
    let gens = gb.generators().into_iter().filter(|g| g.support() & !keep_mask == 0);
    Ideal::new(ring, gens)
}

/// `I ∩ J` through `t·I + (1 - t)·J` in a ring with one extra variable.
pub fn intersect<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<Ideal<F>> {
    let ring = a.ring();
    if !ring.same_as(b.ring()) {
        return Err(Error::RingMismatch);
    }
    if a.is_zero() || b.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    let ext = ring.extended(1)?;
    let t = Poly::var(&ext, ext.nvars() - 1);
    let one_minus_t = Poly::one(&ext).sub(&t);
    let mut gens = Vec::with_capacity(a.generators().len() + b.generators().len());
    for g in a.generators() {
        gens.push(g.to_ring(&ext)?.mul(&t));
    }
    for g in b.generators() {
        gens.push(g.to_ring(&ext)?.mul(&one_minus_t));
    }
    let tv = ext.nvars() - 1;
    let rest = default_ranking_of(&ext, |v| v != tv);
    let gb = groebner_basis(&ext, &gens, &MonomialOrder::elimination(vec![tv], rest))?;
    let kept = gb
        .generators()
        .into_iter()
        .filter(|g| g.support() & (1 << tv) == 0)
        .map(|g| g.to_ring(ring))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, kept)
}

/// `I : (g)` for a single nonzero polynomial.
pub fn colon_poly<F: Field>(ideal: &Ideal<F>, g: &Poly<F>) -> Result<Ideal<F>> {
    if g.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if g.is_unit() {
        return Ok(ideal.clone());
    }
    if g.is_monomial() && ideal.is_homogeneous() {
        return colon_monomial(ideal, &g.terms()[0].0);
    }
    colon_by_intersection(ideal, g)
}

/// `I : (g) = (I ∩ (g)) / g`.
pub fn colon_by_intersection<F: Field>(ideal: &Ideal<F>, g: &Poly<F>) -> Result<Ideal<F>> {
    if g.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let principal = Ideal::new(ideal.ring(), [g.clone()])?;
    let inter = intersect(ideal, &principal)?;
    let quotients = inter
        .generators()
        .iter()
        .map(|h| h.exact_div(g).expect("generators of I ∩ (g) are multiples of g"))
        .collect::<Vec<_>>();
    Ideal::new(ideal.ring(), quotients)
}

/// `I : (m)` for homogeneous `I` and a monomial `m`, one variable at a time.
///
/// With `v` last in grevlex, `v` divides a homogeneous basis element iff it
/// divides its leading term, so dividing the basis by `v` where possible gives
/// a basis of `I : v`.
pub fn colon_monomial<F: Field>(ideal: &Ideal<F>, m: &Monomial) -> Result<Ideal<F>> {
    let ring = ideal.ring();
    let mut current = ideal.clone();
    for v in 0..ring.nvars() {
        for _ in 0..m.exp(v) {
            current = colon_variable(&current, v)?;
        }
    }
    Ok(current)
}

fn colon_variable<F: Field>(ideal: &Ideal<F>, v: usize) -> Result<Ideal<F>> {
    debug_assert!(ideal.is_homogeneous());
    let ring = ideal.ring();
    let order = ring.default_order().with_last(v);
    let gb = ideal.groebner(&order)?;
    let xv = Monomial::var(v);
    let gens = gb.generators().into_iter().map(|g| {
        if g.terms().iter().all(|(t, _)| xv.divides(t)) {
            Poly::from_terms(ring, g.terms().iter().map(|(t, c)| (t.div(&xv).expect("divides"), c.clone())))
        } else {
            g
        }
    });
    Ideal::new(ring, gens)
}

/// `I : J = {f : fJ ⊆ I}`, the intersection of `I : (g)` over generators `g`
/// of `J`. Bihomogeneous results are trimmed.
pub fn colon<F: Field>(ideal: &Ideal<F>, by: &Ideal<F>) -> Result<Ideal<F>> {
    if !ideal.ring().same_as(by.ring()) {
        return Err(Error::RingMismatch);
    }
    if by.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let mut acc: Option<Ideal<F>> = None;
    for g in by.generators() {
        let c = colon_poly(ideal, g)?;
        acc = Some(match acc {
            None => c,
            Some(prev) => {
                if c.contains_ideal(&prev)? {
                    prev
                } else if prev.contains_ideal(&c)? {
                    c
                } else {
                    intersect(&prev, &c)?
                }
            }
        });
    }
    let out = acc.expect("nonzero ideal has a generator");
    if out.is_bihomogeneous() {
        out.trimmed()
    } else {
        Ok(out)
    }
}

/// Iterated colon `I : J^k` until it stabilizes. Returns the stable ideal
/// and the least `k` at which it is reached (0 when `I : J = I`).
pub fn saturate<F: Field>(ideal: &Ideal<F>, by: &Ideal<F>) -> Result<(Ideal<F>, u32)> {
    let mut current = ideal.clone();
    let mut k = 0;
    loop {
        let next = colon(&current, by)?;
        // I:J^k ⊆ I:J^(k+1) always, so one containment decides equality
        if current.contains_ideal(&next)? {
            return Ok((current, k));
        }
        current = next;
        k += 1;
    }
}

/// Whether `f` lies in the radical of `I`: `1 ∈ I + (1 - y f)`.
pub fn radical_membership<F: Field>(f: &Poly<F>, ideal: &Ideal<F>) -> Result<bool> {
    let ring = ideal.ring();
    if !f.ring().same_as(ring) {
        return Err(Error::RingMismatch);
    }
    if f.is_zero() {
        return Ok(true);
    }
    let ext = ring.extended(1)?;
    let y = Poly::var(&ext, ext.nvars() - 1);
    let mut gens = ideal.generators().iter().map(|g| g.to_ring(&ext)).collect::<Result<Vec<_>>>()?;
    gens.push(Poly::one(&ext).sub(&y.mul(&f.to_ring(&ext)?)));
    Ok(groebner_basis(&ext, &gens, ext.default_order())?.is_unit())
}

/// Krull dimension of `R / I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dimension {
    /// `I = R`; the quotient is the zero ring.
    UnitIdeal,
    Dim(usize),
}

/// Dimension as the largest set of variables independent modulo the
/// initial ideal.
pub fn dimension<F: Field>(ideal: &Ideal<F>) -> Result<Dimension> {
    let n = ideal.ring().nvars();
    if ideal.is_zero() {
        return Ok(Dimension::Dim(n));
    }
    let gb = ideal.gb()?;
    if gb.is_unit() {
        return Ok(Dimension::UnitIdeal);
    }
    let masks: Vec<u32> = gb.leading_monomials().iter().map(|m| m.support_mask()).collect();
    Ok(Dimension::Dim(max_independent_set(n, &masks)))
}

/// Largest `S ⊆ {0..n}` containing the support of no mask in `masks`.
pub fn max_independent_set(n: usize, masks: &[u32]) -> usize {
    fn go(v: usize, n: usize, chosen: u32, size: usize, masks: &[u32], best: &mut usize) {
        if size + (n - v) <= *best {
            return;
        }
        if v == n {
            *best = size;
            return;
        }
        let with = chosen | (1 << v);
        if masks.iter().all(|&m| m & !with != 0) {
            go(v + 1, n, with, size + 1, masks, best);
        }
        go(v + 1, n, chosen, size, masks, best);
    }
    let mut best = 0;
    go(0, n, 0, 0, masks, &mut best);
    best
}

/// Height `nvars - dim`; `None` for the unit ideal, whose height is infinite
/// by convention.
pub fn height<F: Field>(ideal: &Ideal<F>) -> Result<Option<usize>> {
    Ok(match dimension(ideal)? {
        Dimension::UnitIdeal => None,
        Dimension::Dim(d) => Some(ideal.ring().nvars() - d),
    })
}

use std::sync::Arc;

use super::limits::{self, Limits};
use super::reduce::{make_monic, reduce, reduce_spoly, sort_terms, Reducer, Terms};
use super::GroebnerBasis;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::polyring::{Monomial, MonomialOrder, OrderKey, Poly, RingSpec};

struct Pair {
    i: usize,
    j: usize,
    deg: u32,
    key: OrderKey,
}

/// Incremental Buchberger completion with the Gebauer–Möller criteria.
///
/// Generators may be added between partial runs; [`Builder::run`] with a
/// degree bound only treats S-pairs up to that degree, which for homogeneous
/// input yields a basis that is correct through that degree.
pub struct Builder<F: Field> {
    ring: Arc<RingSpec>,
    order: MonomialOrder,
    polys: Vec<Reducer<F>>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    pairs_done: usize,
    unit: bool,
}

impl<F: Field> Builder<F> {
    pub fn new(ring: &Arc<RingSpec>, order: &MonomialOrder) -> Self {
        Builder {
            ring: ring.clone(),
            order: order.clone(),
            polys: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            pairs_done: 0,
            unit: false,
        }
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    fn reducers(&self) -> impl Iterator<Item = &Reducer<F>> + Clone {
        self.active.iter().map(move |&i| &self.polys[i])
    }

    pub(crate) fn to_terms(&self, p: &Poly<F>) -> Result<Terms<F>> {
        if !p.ring().same_as(&self.ring) {
            return Err(Error::RingMismatch);
        }
        let mut terms = p.terms().to_vec();
        sort_terms(&mut terms, &self.order);
        Ok(terms)
    }

    /// Adds a generator; returns false if it already reduces to zero.
    pub fn add_generator(&mut self, p: &Poly<F>) -> Result<bool> {
        if self.unit {
            return Ok(false);
        }
        let terms = self.to_terms(p)?;
        let mut h = reduce(terms, self.reducers(), &self.order, true);
        if h.is_empty() {
            return Ok(false);
        }
        make_monic(&mut h);
        self.insert(h);
        Ok(true)
    }

    /// Normal form against the current (possibly partial) basis.
    pub fn normal_form(&self, p: &Poly<F>) -> Result<Poly<F>> {
        let terms = self.to_terms(p)?;
        let r = reduce(terms, self.reducers(), &self.order, true);
        Ok(Poly::from_terms(&self.ring, r))
    }

    pub fn is_unit(&self) -> bool {
        self.unit
    }

    pub fn pending_pairs(&self) -> usize {
        self.pairs.len()
    }

    fn insert(&mut self, h: Terms<F>) {
        let idx = self.polys.len();
        if h[0].0.is_one() {
            self.unit = true;
            self.pairs.clear();
            self.active = vec![idx];
            self.polys.push(Reducer::new(h));
            return;
        }
        let hr = Reducer::new(h);
        let h_lm = hr.lm;

        // Pairs (h, g) surviving the chain criterion among themselves.
        let cands: Vec<(usize, Monomial)> =
            self.active.iter().map(|&g| (g, h_lm.lcm(&self.polys[g].lm))).collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for (pos, &(g, lcm)) in cands.iter().enumerate() {
            let coprime = h_lm.is_coprime(&self.polys[g].lm);
            let dominated = !coprime
                && (cands[pos + 1..].iter().any(|(_, l2)| l2.divides(&lcm))
                    || kept.iter().any(|(_, l2, _)| l2.divides(&lcm)));
            if !dominated {
                kept.push((g, lcm, coprime));
            }
        }

        let polys = &self.polys;
        self.pairs.retain(|p| {
            let lcm = polys[p.i].lm.lcm(&polys[p.j].lm);
            !(h_lm.divides(&lcm)
                && h_lm.lcm(&polys[p.i].lm) != lcm
                && h_lm.lcm(&polys[p.j].lm) != lcm)
        });
        for (g, lcm, coprime) in kept {
            if !coprime {
                self.pairs.push(Pair { i: g, j: idx, deg: lcm.degree(), key: self.order.key(&lcm) });
            }
        }
        self.active.retain(|&g| !h_lm.divides(&polys[g].lm));
        self.active.push(idx);
        self.polys.push(hr);
    }

    fn next_pair(&mut self, max_degree: Option<u32>) -> Option<Pair> {
        let best = self
            .pairs
            .iter()
            .enumerate()
            .filter(|(_, p)| max_degree.is_none_or(|d| p.deg <= d))
            .min_by(|(_, a), (_, b)| (a.deg, a.key, a.i, a.j).cmp(&(b.deg, b.key, b.i, b.j)))
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    /// Processes S-pairs, all of them or those of degree at most `max_degree`.
    pub fn run(&mut self, max_degree: Option<u32>) -> Result<()> {
        let limits: Limits = limits::current();
        while !self.unit {
            let Some(pair) = self.next_pair(max_degree) else { break };
            self.pairs_done += 1;
            limits::check(&limits, self.pairs_done, pair.deg, self.active.len(), self.pairs.len() + 1)?;
            let h = reduce_spoly(&self.polys[pair.i], &self.polys[pair.j], self.reducers(), &self.order);
            if !h.is_empty() {
                let mut h = h;
                make_monic(&mut h);
                self.insert(h);
            }
        }
        Ok(())
    }

    /// Completes the basis and returns it in reduced form.
    pub fn finish(mut self) -> Result<GroebnerBasis<F>> {
        self.run(None)?;
        let mut elems: Vec<Reducer<F>> = Vec::with_capacity(self.active.len());
        for (k, &g) in self.active.iter().enumerate() {
            let others = self
                .active
                .iter()
                .enumerate()
                .filter(move |&(k2, _)| k2 != k)
                .map(|(_, &i)| &self.polys[i]);
            let terms = reduce(self.polys[g].terms.clone(), others, &self.order, true);
            elems.push(Reducer::new(terms));
        }
        let ord = &self.order;
        elems.sort_by(|a, b| ord.cmp(&a.lm, &b.lm));
        Ok(GroebnerBasis::from_parts(self.ring, self.order, elems))
    }
}

//! Multivariate division with a heap of pending monomials.

use std::collections::BinaryHeap;

use rustc_hash::FxHashMap;

use crate::field::Field;
use crate::polyring::{Monomial, MonomialOrder, OrderKey};

/// Terms sorted in decreasing order for a fixed monomial order.
pub(crate) type Terms<F> = Vec<(Monomial, F)>;

pub(crate) fn sort_terms<F>(terms: &mut Terms<F>, ord: &MonomialOrder) {
    terms.sort_unstable_by(|a, b| ord.cmp(&b.0, &a.0));
}

/// A monic divisor together with cached leading-monomial data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Reducer<F> {
    pub terms: Terms<F>,
    pub lm: Monomial,
    pub mask: u32,
}

impl<F: Field> Reducer<F> {
    /// `terms` must be sorted, nonzero and monic.
    pub fn new(terms: Terms<F>) -> Self {
        let lm = terms[0].0;
        debug_assert!(terms[0].1.is_one());
        Reducer { mask: lm.support_mask(), lm, terms }
    }
}

/// Finds the first reducer (in slice order) whose leading monomial divides `m`.
#[inline]
pub(crate) fn find_divisor<'a, F>(
    m: &Monomial,
    reducers: impl Iterator<Item = &'a Reducer<F>>,
) -> Option<&'a Reducer<F>>
where
    F: 'a,
{
    let mask = m.support_mask();
    reducers.into_iter().find(|r| r.mask & !mask == 0 && r.lm.divides(m))
}

/// Heap entry ordered by key alone; keys determine monomials uniquely.
struct Entry(OrderKey, Monomial);

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.cmp(&other.0)
    }
}

struct Accumulator<'o, F> {
    ord: &'o MonomialOrder,
    coeffs: FxHashMap<Monomial, F>,
    heap: BinaryHeap<Entry>,
}

impl<'o, F: Field> Accumulator<'o, F> {
    fn new(ord: &'o MonomialOrder) -> Self {
        Accumulator { ord, coeffs: FxHashMap::default(), heap: BinaryHeap::new() }
    }

    fn add(&mut self, m: Monomial, c: F) {
        match self.coeffs.get_mut(&m) {
            Some(e) => *e = e.add(&c),
            None => {
                self.heap.push(Entry(self.ord.key(&m), m));
                self.coeffs.insert(m, c);
            }
        }
    }

    /// `self -= c * q * tail(r)`; monomials land strictly below `q * lm(r)`.
    fn sub_multiple(&mut self, q: &Monomial, c: &F, r: &Reducer<F>) {
        for (t, a) in &r.terms[1..] {
            let m = t.mul(q);
            match self.coeffs.get_mut(&m) {
                Some(e) => e.sub_mul_assign(c, a),
                None => {
                    self.heap.push(Entry(self.ord.key(&m), m));
                    self.coeffs.insert(m, c.mul(a).neg());
                }
            }
        }
    }

    fn pop(&mut self) -> Option<(Monomial, F)> {
        while let Some(Entry(_, m)) = self.heap.pop() {
            let c = self.coeffs.remove(&m).expect("heap and map agree");
            if !c.is_zero() {
                return Some((m, c));
            }
        }
        None
    }
}

/// Remainder of `f` on division by `reducers`.
///
/// With `full` every term is reduced; otherwise only leading terms are, and
/// the remainder is returned as soon as its leading term is irreducible.
pub(crate) fn reduce<'a, F, I>(f: Terms<F>, reducers: I, ord: &MonomialOrder, full: bool) -> Terms<F>
where
    F: Field + 'a,
    I: Iterator<Item = &'a Reducer<F>> + Clone,
{
    let mut acc = Accumulator::new(ord);
    for (m, c) in f {
        acc.add(m, c);
    }
    reduce_acc(acc, reducers, full)
}

/// Remainder of `a * (q_a * f_a) - b * (q_b * f_b)` with the leading terms
/// cancelling; `f_a`, `f_b` monic.
pub(crate) fn reduce_spoly<'a, F, I>(
    fa: &Reducer<F>,
    fb: &Reducer<F>,
    reducers: I,
    ord: &MonomialOrder,
) -> Terms<F>
where
    F: Field + 'a,
    I: Iterator<Item = &'a Reducer<F>> + Clone,
{
    let lcm = fa.lm.lcm(&fb.lm);
    let qa = lcm.div(&fa.lm).expect("lcm");
    let qb = lcm.div(&fb.lm).expect("lcm");
    let mut acc = Accumulator::new(ord);
    for (t, c) in &fa.terms[1..] {
        acc.add(t.mul(&qa), c.clone());
    }
    for (t, c) in &fb.terms[1..] {
        acc.add(t.mul(&qb), c.neg());
    }
    reduce_acc(acc, reducers, true)
}

fn reduce_acc<'a, F, I>(mut acc: Accumulator<'_, F>, reducers: I, full: bool) -> Terms<F>
where
    F: Field + 'a,
    I: Iterator<Item = &'a Reducer<F>> + Clone,
{
    let mut rem = Vec::new();
    while let Some((m, c)) = acc.pop() {
        match find_divisor(&m, reducers.clone()) {
            Some(r) => {
                let q = m.div(&r.lm).expect("divides");
                acc.sub_multiple(&q, &c, r);
            }
            None => {
                rem.push((m, c));
                if !full {
                    while let Some(t) = acc.pop() {
                        rem.push(t);
                    }
                    break;
                }
            }
        }
    }
    rem
}

/// Scales so the leading coefficient is one.
pub(crate) fn make_monic<F: Field>(terms: &mut Terms<F>) {
    if let Some((_, lc)) = terms.first() {
        if !lc.is_one() {
            let inv = lc.inv();
            for (_, c) in terms.iter_mut() {
                *c = c.mul(&inv);
            }
        }
    }
}

use std::cmp::Ordering;

use super::monomial::{Monomial, MAX_VARS};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Grevlex,
    Lex,
    /// Product of two graded reverse lexicographic orders; the first `front`
    /// ranked variables form the block that is eliminated.
    Elimination { front: usize },
}

/// A monomial order over a ranked list of variables.
///
/// `ranking[0]` is the largest variable. Variables not listed must not occur.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    ranking: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, ranking: Vec<usize>) -> Self {
        if let OrderKind::Elimination { front } = kind {
            assert!(front <= ranking.len());
        }
        let mut seen = vec![false; ranking.iter().max().map_or(0, |m| m + 1)];
        for &v in &ranking {
            assert!(!seen[v], "variable {v} ranked twice");
            seen[v] = true;
        }
        MonomialOrder { kind, ranking }
    }

    pub fn grevlex(ranking: Vec<usize>) -> Self {
        Self::new(OrderKind::Grevlex, ranking)
    }

    pub fn lex(ranking: Vec<usize>) -> Self {
        Self::new(OrderKind::Lex, ranking)
    }

    /// Elimination order with `front` ranked first, then `rest`.
    pub fn elimination(front: Vec<usize>, rest: Vec<usize>) -> Self {
        let k = front.len();
        let mut ranking = front;
        ranking.extend(rest);
        Self::new(OrderKind::Elimination { front: k }, ranking)
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    /// Same kind, with variable `v` moved to the bottom of the ranking.
    pub fn with_last(&self, v: usize) -> Self {
        let mut ranking: Vec<usize> = self.ranking.iter().copied().filter(|&u| u != v).collect();
        ranking.push(v);
        Self::new(self.kind.clone(), ranking)
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Grevlex => grevlex_cmp(a, b, a.degree(), b.degree(), &self.ranking),
            OrderKind::Lex => {
                let (ea, eb) = (a.raw(), b.raw());
                for &v in &self.ranking {
                    match ea[v].cmp(&eb[v]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Elimination { front } => {
                let (head, tail) = self.ranking.split_at(front);
                let (ea, eb) = (a.raw(), b.raw());
                let da: u32 = head.iter().map(|&v| ea[v] as u32).sum();
                let db: u32 = head.iter().map(|&v| eb[v] as u32).sum();
                match grevlex_cmp(a, b, da, db, head) {
                    Ordering::Equal => {
                        grevlex_cmp(a, b, a.degree() - da, b.degree() - db, tail)
                    }
                    o => o,
                }
            }
        }
    }
}

/// Byte string whose lexicographic order agrees with a monomial order.
///
/// Used as a heap key where repeated comparisons dominate.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct OrderKey([u8; 36]);

impl MonomialOrder {
    pub fn key(&self, m: &Monomial) -> OrderKey {
        let mut k = [0u8; 36];
        let e = m.raw();
        match self.kind {
            OrderKind::Grevlex => {
                grevlex_key(&mut k, e, &self.ranking);
            }
            OrderKind::Lex => {
                for (slot, &v) in k.iter_mut().zip(&self.ranking) {
                    *slot = e[v];
                }
            }
            OrderKind::Elimination { front } => {
                let (head, tail) = self.ranking.split_at(front);
                let used = grevlex_key(&mut k, e, head);
                grevlex_key(&mut k[used..], e, tail);
            }
        }
        OrderKey(k)
    }
}

fn grevlex_key(out: &mut [u8], e: &[u8; MAX_VARS], vars: &[usize]) -> usize {
    let d: u16 = vars.iter().map(|&v| e[v] as u16).sum();
    out[..2].copy_from_slice(&d.to_be_bytes());
    for (slot, &v) in out[2..].iter_mut().zip(vars.iter().rev()) {
        *slot = 255 - e[v];
    }
    2 + vars.len()
}

#[inline]
fn grevlex_cmp(a: &Monomial, b: &Monomial, da: u32, db: u32, ranking: &[usize]) -> Ordering {
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    let (ea, eb) = (a.raw(), b.raw());
    for &v in ranking.iter().rev() {
        match ea[v].cmp(&eb[v]) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn lex_ignores_degree() {
        let ord = MonomialOrder::lex(vec![0, 1]);
        assert_eq!(ord.cmp(&m(&[1, 0]), &m(&[0, 10])), Ordering::Greater);
    }

    #[test]
    fn grevlex_tie_break() {
        // x*z vs y^2 in k[x,y,z] with x > y > z
        let ord = MonomialOrder::grevlex(vec![0, 1, 2]);
        assert_eq!(ord.cmp(&m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[1, 0, 1]), &m(&[1, 0, 1])), Ordering::Equal);
    }

    #[test]
    fn elimination_prefers_front_block() {
        let ord = MonomialOrder::elimination(vec![2], vec![0, 1]);
        assert_eq!(ord.cmp(&m(&[0, 0, 1]), &m(&[5, 5, 0])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[2, 0, 1]), &m(&[0, 1, 1])), Ordering::Greater);
    }

    #[test]
    fn keys_agree_with_cmp() {
        let mons: Vec<Monomial> = (0..81u32)
            .map(|i| m(&[i % 3, (i / 3) % 3, (i / 9) % 3, i / 27]))
            .collect();
        let orders = [
            MonomialOrder::grevlex(vec![2, 0, 3, 1]),
            MonomialOrder::lex(vec![1, 3, 0, 2]),
            MonomialOrder::elimination(vec![3], vec![0, 1, 2]),
            MonomialOrder::elimination(vec![0, 2], vec![3, 1]),
        ];
        for ord in &orders {
            for a in &mons {
                for b in &mons {
                    assert_eq!(ord.cmp(a, b), ord.key(a).cmp(&ord.key(b)), "{ord:?} {a:?} {b:?}");
                }
            }
        }
    }
}

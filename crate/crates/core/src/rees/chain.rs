use serde::Serialize;

use super::gs::{gs_profile_of_matrix, SMax};
use super::jd::symmetric_ideal;
use super::oracle::first_vars_ideal;
use super::Presentation;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::idealops::{height, saturate, Ideal, PolyMatrix};

/// One module `E_i = coker φ_i` of the chain.
#[derive(Clone, Debug)]
pub struct ChainStep<F: Field> {
    pub i: usize,
    /// `φ` with its last `i` columns deleted.
    pub phi: PolyMatrix<F>,
    pub l: Ideal<F>,
    pub j: Ideal<F>,
    pub height_j: usize,
    pub exponent: u32,
    pub s_max: SMax,
}

/// `R(E) ← R(E_1) ← … ← R(E_depth)` through the truncated presentations.
#[derive(Clone, Debug)]
pub struct ApproximationChain<F: Field> {
    pub s: usize,
    pub steps: Vec<ChainStep<F>>,
    pub checks: ChainChecks,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ChainChecks {
    /// `ht J_i = n - e - i` for every step.
    pub heights: bool,
    /// `L_(i+1) ⊆ L_i` for every step.
    pub l_inclusions: bool,
    /// `J_(i+1) ⊆ J_i` for every step.
    pub j_inclusions: bool,
    /// `s_max(E_(i+1)) ≥ s_max(E_i)`.
    pub gs_monotone: bool,
}

impl ChainChecks {
    pub fn all(&self) -> bool {
        self.heights && self.l_inclusions && self.j_inclusions && self.gs_monotone
    }
}

/// Default number of steps: `min(3, n - e)`.
pub fn default_depth<F: Field>(p: &Presentation<F>) -> usize {
    3.min(p.phi().cols())
}

/// Builds `φ_i`, `L_i` and `J_i = L_i : (x1..xs)^∞` for `i = 0..=depth` and
/// checks heights and inclusions.
pub fn approximation_chain<F: Field>(p: &Presentation<F>, s: usize, depth: usize) -> Result<ApproximationChain<F>> {
    let cols = p.phi().cols();
    if depth > cols {
        return Err(Error::OutOfRange { what: "chain depth", value: depth, lo: 0, hi: cols });
    }
    let ring = p.ring();
    let by = first_vars_ideal(p, s);
    let mut steps: Vec<ChainStep<F>> = Vec::with_capacity(depth + 1);
    for i in 0..=depth {
        let pi = p.truncated(cols - i);
        let (l, j, exponent) = if i == cols {
            (Ideal::zero(ring), Ideal::zero(ring), 0)
        } else {
            let l = symmetric_ideal(&pi);
            let (j, k) = saturate(&l, &by)?;
            (l, j.trimmed()?, k)
        };
        let height_j = height(&j)?.ok_or_else(|| Error::Shape("J_i is the unit ideal".into()))?;
        let s_max = if i == cols { SMax::Infinity } else { gs_profile_of_matrix(pi.phi(), pi.rank_e())?.s_max };
        steps.push(ChainStep { i, phi: pi.phi().clone(), l, j, height_j, exponent, s_max });
    }
    let mut checks = ChainChecks {
        heights: steps.iter().all(|st| st.height_j + st.i == cols),
        l_inclusions: true,
        j_inclusions: true,
        gs_monotone: true,
    };
    for w in steps.windows(2) {
        checks.l_inclusions &= w[0].l.contains_ideal(&w[1].l)?;
        checks.j_inclusions &= w[0].j.contains_ideal(&w[1].j)?;
        checks.gs_monotone &= w[1].s_max >= w[0].s_max;
    }
    Ok(ApproximationChain { s, steps, checks })
}

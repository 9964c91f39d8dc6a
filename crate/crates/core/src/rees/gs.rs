use std::fmt;

use serde::{Serialize, Serializer};

use super::Presentation;
use crate::error::Result;
use crate::field::Field;
use crate::idealops::{fitting_ideal, height, PolyMatrix};

/// Largest `s` for which a module satisfies `G_s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SMax {
    Finite(usize),
    Infinity,
}

impl SMax {
    pub fn finite(self) -> Option<usize> {
        match self {
            SMax::Finite(s) => Some(s),
            SMax::Infinity => None,
        }
    }
}

impl fmt::Display for SMax {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SMax::Finite(s) => write!(f, "{s}"),
            SMax::Infinity => write!(f, "infinity"),
        }
    }
}

impl Serialize for SMax {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            SMax::Finite(v) => s.serialize_u64(*v as u64),
            SMax::Infinity => s.serialize_str("infinity"),
        }
    }
}

/// Heights of Fitting ideals and the resulting `G_s` bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GsProfile {
    pub s_max: SMax,
    /// `(i, ht Fitt_i)`; `None` marks the unit ideal (infinite height).
    pub fitting_heights: Vec<(usize, Option<usize>)>,
}

/// `G_s` holds iff `ht Fitt_i ≥ i - e + 2` for `e ≤ i ≤ s + e - 2`.
///
/// Indices are scanned upward from `e` until the first failure `i0`, giving
/// `s_max = i0 - e + 1`; with no failure up to `n - 1` (all later Fitting
/// ideals are the unit ideal) the module satisfies `G_∞`.
pub fn gs_profile<F: Field>(p: &Presentation<F>) -> Result<GsProfile> {
    gs_profile_of_matrix(p.phi(), p.rank_e())
}

pub fn gs_profile_of_matrix<F: Field>(phi: &PolyMatrix<F>, rank_e: usize) -> Result<GsProfile> {
    let n = phi.rows();
    let mut heights = Vec::new();
    for i in rank_e..n {
        let h = height(&fitting_ideal(phi, i)?)?;
        heights.push((i, h));
        let ok = h.is_none_or(|h| h + rank_e >= i + 2);
        if !ok {
            return Ok(GsProfile { s_max: SMax::Finite(i + 1 - rank_e), fitting_heights: heights });
        }
    }
    Ok(GsProfile { s_max: SMax::Infinity, fitting_heights: heights })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rees::fixtures::presentation;

    #[test]
    fn regular_sequence_column_is_g_infinity() {
        // coker of (x1, x2)^T is the ideal (x1, x2) up to a twist: free off m
        let p = presentation(2, 1, &[&["x1"], &["x2"]]);
        let g = gs_profile(&p).unwrap();
        assert_eq!(g.s_max, SMax::Infinity);
        assert_eq!(g.fitting_heights, vec![(1, Some(2))]);
    }

    #[test]
    fn square_of_the_maximal_ideal() {
        // presents (x1^2, x1x2, x2^2): Fitt_1 has height 2, Fitt_2 = m fails 2 >= 3
        let p = presentation(2, 1, &[&["x2", "0"], &["-x1", "x2"], &["0", "-x1"]]);
        let g = gs_profile(&p).unwrap();
        assert_eq!(g.fitting_heights, vec![(1, Some(2)), (2, Some(2))]);
        assert_eq!(g.s_max, SMax::Finite(2));
    }

    #[test]
    fn serializes_infinity_as_a_string() {
        assert_eq!(serde_json::to_string(&SMax::Infinity).unwrap(), "\"infinity\"");
        assert_eq!(serde_json::to_string(&SMax::Finite(3)).unwrap(), "3");
        assert!(SMax::Finite(7) < SMax::Infinity);
    }
}

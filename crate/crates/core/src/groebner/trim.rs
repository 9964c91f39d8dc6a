use std::collections::BTreeMap;
use std::sync::Arc;

use super::Builder;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::polyring::{Poly, RingSpec};

/// Minimal generating subset of a bihomogeneous ideal.
///
/// Generators are visited by increasing total degree (input order within a
/// degree); one is kept iff it is not in the ideal spanned by the kept lower
/// degree generators plus the kept generators of its own degree.
pub fn trim<F: Field>(ring: &Arc<RingSpec>, gens: &[Poly<F>]) -> Result<Vec<Poly<F>>> {
    let mut by_degree: BTreeMap<u32, Vec<&Poly<F>>> = BTreeMap::new();
    for (index, g) in gens.iter().enumerate() {
        if !g.ring().same_as(ring) {
            return Err(Error::RingMismatch);
        }
        if g.is_zero() {
            continue;
        }
        if g.bidegree().is_none() {
            return Err(Error::NonHomogeneousInput { index });
        }
        by_degree.entry(g.total_degree().expect("nonzero")).or_default().push(g);
    }
    let mut builder = Builder::new(ring, ring.default_order());
    let mut kept = Vec::new();
    for (delta, cands) in by_degree {
        builder.run(Some(delta))?;
        // Echelon rows (monic, distinct leading monomials, decreasing).
        let mut rows: Vec<Poly<F>> = Vec::new();
        let mut chosen = Vec::new();
        for c in cands {
            let mut r = builder.normal_form(c)?;
            for row in &rows {
                let (pivot, _) = row.leading().expect("nonzero row");
                let a = r.coeff(pivot);
                if !a.is_zero() {
                    r = r.sub(&row.scale(&a));
                }
            }
            if r.is_zero() {
                continue;
            }
            let row = r.monic();
            let ord = ring.default_order();
            let pos = rows
                .iter()
                .position(|x| ord.cmp(&x.leading().unwrap().0, &row.leading().unwrap().0).is_lt())
                .unwrap_or(rows.len());
            rows.insert(pos, row);
            chosen.push(c.clone());
        }
        for c in &chosen {
            builder.add_generator(c)?;
        }
        kept.extend(chosen);
    }
    Ok(kept)
}

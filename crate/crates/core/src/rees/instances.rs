use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::gs::{gs_profile, SMax};
use super::shape::{classify_shape, ShapeKind};
use super::{validate_presentation, Presentation, ValidationOptions};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::idealops::PolyMatrix;
use crate::polyring::{Monomial, Poly, RingSpec};

/// Attempts before giving up on a parameter set.
pub const MAX_ATTEMPTS: usize = 500;

/// A randomly generated presentation in column or row normal form that
/// satisfies `G_s` but not `G_(s+1)`.
#[derive(Clone, Debug)]
pub struct ConstructedInstance<F: Field> {
    pub kind: ShapeKind,
    pub d: usize,
    pub s: usize,
    pub n: usize,
    pub e: usize,
    pub seed: u64,
    /// Number of draws until the hypotheses held, counting the accepted one.
    pub attempts: usize,
    pub presentation: Presentation<F>,
}

/// The grid used by the verification suites, as `(d, s, n, e)`.
pub const INSTANCE_GRID: [(usize, usize, usize, usize); 5] = [(3, 2, 4, 1), (4, 2, 5, 1), (4, 3, 5, 1), (4, 2, 6, 2), (5, 3, 7, 1)];

fn random_form<F: Field>(ring: &std::sync::Arc<RingSpec>, s: usize, rng: &mut ChaCha8Rng) -> Poly<F> {
    let terms = (1..=s).map(|i| (Monomial::var(ring.x_var(i)), F::from_i64(rng.gen_range(-2..=2), ring.field())));
    Poly::from_terms(ring, terms.filter(|(_, c)| !c.is_zero()))
}

fn draw<F: Field>(
    ring: &std::sync::Arc<RingSpec>,
    kind: ShapeKind,
    (d, s, n, e): (usize, usize, usize, usize),
    rng: &mut ChaCha8Rng,
) -> PolyMatrix<F> {
    let cols = n - e;
    let mut m = PolyMatrix::zeros(ring, n, cols);
    for r in 0..n {
        for c in 0..cols {
            let fixed = match kind {
                // bottom d-s rows of the last column carry x_(s+1)..x_d
                ShapeKind::Column => (c == cols - 1 && r + d >= n + s).then(|| r + d - n + 1),
                // last d-s entries of the last row carry x_(s+1)..x_d
                _ => (r == n - 1 && c + d >= cols + s).then(|| c + d - cols + 1),
            };
            let v = match fixed {
                Some(i) => Poly::var(ring, ring.x_var(i)),
                None => random_form(ring, s, rng),
            };
            m.set(r, c, v);
        }
    }
    m
}

/// Draws matrices of the requested shape until the presentation is valid,
/// `s_max = s` and the shape classification returns `kind` without
/// reordering.
pub fn constructed_instance<F: Field>(
    field: FieldSpec,
    kind: ShapeKind,
    dims: (usize, usize, usize, usize),
    seed: u64,
) -> Result<ConstructedInstance<F>> {
    let (d, s, n, e) = dims;
    if !matches!(kind, ShapeKind::Column | ShapeKind::Row) {
        return Err(Error::Shape(format!("cannot construct a {kind:?} instance")));
    }
    if s == 0 || s >= d {
        return Err(Error::OutOfRange { what: "s", value: s, lo: 1, hi: d.saturating_sub(1) });
    }
    if e == 0 || n < d + e {
        return Err(Error::Shape(format!("need e >= 1 and n >= d + e, got n = {n}, d = {d}, e = {e}")));
    }
    if kind == ShapeKind::Row && n - e < d - s {
        return Err(Error::Shape("row form needs n - e >= d - s".into()));
    }
    let ring = RingSpec::new(d, n, field)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=MAX_ATTEMPTS {
        let phi = draw::<F>(&ring, kind, dims, &mut rng);
        let p = match validate_presentation(phi, e, ValidationOptions::default()) {
            Ok(p) => p,
            Err(Error::I1NotMaximal | Error::DegenerateColumnRank) => continue,
            Err(err) => return Err(err),
        };
        if gs_profile(&p)?.s_max != SMax::Finite(s) {
            continue;
        }
        let shape = classify_shape(&p, s)?;
        // for s = d - 1 the two shapes coincide and classify as Column
        let kind_ok = shape.kind == kind || (s + 1 == d && shape.is_normal_form());
        if kind_ok && shape.is_identity() {
            return Ok(ConstructedInstance { kind, d, s, n, e, seed, attempts: attempt, presentation: p });
        }
    }
    Err(Error::Shape(format!("no {kind:?} instance for (d, s, n, e) = {dims:?} after {MAX_ATTEMPTS} draws")))
}

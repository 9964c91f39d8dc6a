use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::idealops::{ideal_equal, Ideal, PolyMatrix};
use crate::polyring::{Poly, RingSpec};

/// A validated presentation `0 → R^(n-e) → R^n → E → 0` of a module of rank `e`.
///
/// The matrix lives in `k[x1..xd, T1..Tn]` but only involves the x-variables.
#[derive(Clone, Debug)]
pub struct Presentation<F: Field> {
    phi: PolyMatrix<F>,
    rank_e: usize,
    linear: bool,
    warnings: Vec<String>,
}

/// Switches for [`validate_presentation`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ValidationOptions {
    /// Admit entries of higher degree; the result is flagged as nonlinear.
    pub allow_nonlinear: bool,
}

impl<F: Field> Presentation<F> {
    pub fn phi(&self) -> &PolyMatrix<F> {
        &self.phi
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        self.phi.ring()
    }

    pub fn rank_e(&self) -> usize {
        self.rank_e
    }

    /// Number of generators of the module.
    pub fn n(&self) -> usize {
        self.phi.rows()
    }

    pub fn d(&self) -> usize {
        self.ring().x_count()
    }

    pub fn is_linear(&self) -> bool {
        self.linear
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// `[T1..Tn]` as polynomials.
    pub fn t_row(&self) -> Vec<Poly<F>> {
        let ring = self.ring();
        (1..=self.n()).map(|j| Poly::var(ring, ring.t_var(j))).collect()
    }

    /// `[l1..l_(n-e)] = [T1..Tn]·φ`.
    pub fn symmetric_forms(&self) -> Vec<Poly<F>> {
        self.phi.left_mul_vector(&self.t_row()).expect("T-row matches the row count")
    }

    /// Same hypotheses, reordered matrix.
    pub(crate) fn with_matrix(&self, phi: PolyMatrix<F>) -> Presentation<F> {
        Presentation { phi, rank_e: self.rank_e, linear: self.linear, warnings: self.warnings.clone() }
    }

    /// The presentation obtained by keeping the first `cols` columns; it
    /// presents a module of rank `n - cols`. No validation is repeated.
    pub fn truncated(&self, cols: usize) -> Presentation<F> {
        Presentation {
            phi: self.phi.first_columns(cols),
            rank_e: self.n() - cols,
            linear: self.linear,
            warnings: Vec::new(),
        }
    }
}

fn is_linear_form<F: Field>(p: &Poly<F>) -> bool {
    p.is_zero() || (p.is_homogeneous() && p.total_degree() == Some(1))
}

/// Checks the standing hypotheses on a presentation: linear entries, entries
/// generating `(x1..xd)`, full column rank, and records a warning when
/// `n < d + e`.
pub fn validate_presentation<F: Field>(
    phi: PolyMatrix<F>,
    rank_e: usize,
    opts: ValidationOptions,
) -> Result<Presentation<F>> {
    let ring = phi.ring().clone();
    let n = phi.rows();
    if n == 0 || phi.cols() == 0 {
        return Err(Error::Shape("empty presentation matrix".into()));
    }
    if rank_e == 0 || rank_e >= n {
        return Err(Error::OutOfRange { what: "rank e", value: rank_e, lo: 1, hi: n - 1 });
    }
    if phi.cols() != n - rank_e {
        return Err(Error::Shape(format!(
            "a module of rank {rank_e} on {n} generators needs {} columns, found {}",
            n - rank_e,
            phi.cols()
        )));
    }
    if ring.t_count() != n {
        return Err(Error::InvalidRing(format!("ring has {} T-variables but the matrix has {n} rows", ring.t_count())));
    }
    let x_mask: u32 = ring.x_vars().fold(0, |m, v| m | (1 << v));
    let mut linear = true;
    let mut warnings = Vec::new();
    for r in 0..n {
        for c in 0..phi.cols() {
            let e = phi.get(r, c);
            if e.support() & !x_mask != 0 {
                return Err(Error::NonLinearEntry { row: r, col: c });
            }
            if !is_linear_form(e) {
                if !opts.allow_nonlinear {
                    return Err(Error::NonLinearEntry { row: r, col: c });
                }
                if linear {
                    warnings.push(format!("entry ({r}, {c}) is not linear; Jacobian dual constructions are skipped"));
                }
                linear = false;
            }
        }
    }
    let i1 = Ideal::new(&ring, phi.entries().iter().cloned())?;
    if !ideal_equal(&i1, &Ideal::maximal_x(&ring))? {
        return Err(Error::I1NotMaximal);
    }
    if !phi.has_nonzero_minor(phi.cols())? {
        return Err(Error::DegenerateColumnRank);
    }
    let d = ring.x_count();
    if n < d + rank_e {
        warnings.push(format!("n = {n} is smaller than d + e = {}", d + rank_e));
    }
    Ok(Presentation { phi, rank_e, linear, warnings })
}

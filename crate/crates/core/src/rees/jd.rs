use super::shape::{reduce_mod_first_vars, ShapeClassification, ShapeKind};
use super::Presentation;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::idealops::{minors, Ideal, PolyMatrix};
use crate::polyring::{Monomial, Poly};

/// The ideal `L = (l1..l_(n-e))` of the symmetric algebra.
pub fn symmetric_ideal<F: Field>(p: &Presentation<F>) -> Ideal<F> {
    Ideal::new(p.ring(), p.symmetric_forms()).expect("forms live in the presentation ring")
}

fn first_nonlinear<F: Field>(p: &Presentation<F>) -> Option<(usize, usize)> {
    let phi = p.phi();
    (0..phi.rows())
        .flat_map(|r| (0..phi.cols()).map(move |c| (r, c)))
        .find(|&(r, c)| {
            let e = phi.get(r, c);
            !(e.is_zero() || (e.is_homogeneous() && e.total_degree() == Some(1)))
        })
}

fn check_row_identity<F: Field>(lhs: &[Poly<F>], row: &[Poly<F>], m: &PolyMatrix<F>, what: &str) -> Result<()> {
    let rhs = m.left_mul_vector(row)?;
    for (k, (a, b)) in lhs.iter().zip(&rhs).enumerate() {
        if a != b {
            return Err(Error::TransitionIdentityFailure {
                pos: k,
                detail: format!("{what}: l{} = {a} but the product gives {b}", k + 1),
            });
        }
    }
    Ok(())
}

/// The Jacobian dual `B(φ)`: the `d x (n-e)` matrix over `k[T]` with
/// `[x1..xd]·B(φ) = [T1..Tn]·φ`, unique for linear `φ`.
pub fn jacobian_dual<F: Field>(p: &Presentation<F>) -> Result<PolyMatrix<F>> {
    if let Some((row, col)) = first_nonlinear(p) {
        return Err(Error::NonLinearEntry { row, col });
    }
    let ring = p.ring();
    let phi = p.phi();
    let d = p.d();
    let mut b = PolyMatrix::zeros(ring, d, phi.cols());
    for j in 0..d {
        let xj = Monomial::var(ring.x_var(j + 1));
        for k in 0..phi.cols() {
            let terms = (0..phi.rows()).filter_map(|r| {
                let c = phi.get(r, k).coeff(&xj);
                (!c.is_zero()).then(|| (Monomial::var(ring.t_var(r + 1)), c))
            });
            b.set(j, k, Poly::from_terms(ring, terms));
        }
    }
    let xs: Vec<Poly<F>> = (1..=d).map(|i| Poly::var(ring, ring.x_var(i))).collect();
    check_row_identity(&p.symmetric_forms(), &xs, &b, "[x1..xd]·B(φ)")?;
    Ok(b)
}

/// Submatrices of the Jacobian dual for a presentation in normal form.
#[derive(Clone, Debug)]
pub struct Submatrices<F: Field> {
    pub kind: ShapeKind,
    pub s: usize,
    pub jacobian_dual: PolyMatrix<F>,
    /// `B'`: `s x (n-e-1)` (column) or `s x m` (row).
    pub b_prime: PolyMatrix<F>,
    /// Row case: the `s x (n-e-m)` block next to `B'`.
    pub psi: Option<PolyMatrix<F>>,
    /// Row case: `[l] = [x1..xs Tn]·C`.
    pub c_matrix: Option<PolyMatrix<F>>,
    /// `B''` with `[l] = [residual generators]·B''`.
    pub b_doubleprime: PolyMatrix<F>,
    /// Column case: `γ = x_(s+1)T_(n-d+s+1) + … + x_dT_n` in normal form.
    pub gamma: Option<Poly<F>>,
    /// Generators of the ideal `J` is residual to: `(x1..xs, γ)` or
    /// `(x1..xs, x_(s+1)Tn..x_dTn)`.
    pub residual_generators: Vec<Poly<F>>,
}

fn rows_range(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// Cuts `B'`, `C`, `ψ`, `B''` and `γ` out of the Jacobian dual and checks
/// every transition identity.
///
/// The presentation must already be in normal form for `shape` (identity
/// permutations); a Row extraction may also be requested for a Column
/// classification with a single distinguished entry.
pub fn extract_submatrices<F: Field>(p: &Presentation<F>, shape: &ShapeClassification) -> Result<Submatrices<F>> {
    let s = shape.s;
    if !shape.is_normal_form() {
        return Err(Error::ShapeNotNormalForm { s, kind: format!("{:?}", shape.kind) });
    }
    if !shape.is_identity() {
        return Err(Error::ShapeNotNormalForm { s, kind: "rows or columns need reordering first".into() });
    }
    let ring = p.ring().clone();
    let b = jacobian_dual(p)?;
    let (n, d, cols) = (p.n(), p.d(), p.phi().cols());
    let ell = p.symmetric_forms();
    let xs: Vec<Poly<F>> = (1..=s).map(|i| Poly::var(&ring, ring.x_var(i))).collect();
    let tn = Poly::var(&ring, ring.t_var(n));
    let top = rows_range(s);
    match shape.kind {
        ShapeKind::Column => {
            let last = cols - 1;
            let b_prime = b.submatrix(&top, &rows_range(last));
            check_row_identity(&ell[..last], &xs, &b_prime, "[x1..xs]·B'")?;
            let mut gamma = Poly::zero(&ring);
            for j in s..d {
                gamma = gamma.add(&Poly::var(&ring, ring.x_var(j + 1)).mul(b.get(j, last)));
            }
            let mut bdd = PolyMatrix::zeros(&ring, s + 1, cols);
            for j in 0..s {
                for k in 0..cols {
                    bdd.set(j, k, b.get(j, k).clone());
                }
            }
            bdd.set(s, last, Poly::one(&ring));
            let mut res = xs.clone();
            res.push(gamma.clone());
            check_row_identity(&ell, &res, &bdd, "[x1..xs γ]·B''")?;
            Ok(Submatrices {
                kind: ShapeKind::Column,
                s,
                jacobian_dual: b,
                b_prime,
                psi: None,
                c_matrix: None,
                b_doubleprime: bdd,
                gamma: Some(gamma),
                residual_generators: res,
            })
        }
        ShapeKind::Row => {
            let bar = reduce_mod_first_vars(p.phi(), s);
            let hot = (0..cols).filter(|&c| !bar.get(n - 1, c).is_zero()).count();
            let m = cols - hot;
            let b_prime = b.submatrix(&top, &rows_range(m));
            let psi = b.submatrix(&top, &(m..cols).collect::<Vec<_>>());
            check_row_identity(&ell[..m], &xs, &b_prime, "[x1..xs]·B'")?;
            let mut c_mat = PolyMatrix::zeros(&ring, s + 1, cols);
            for k in 0..cols {
                for j in 0..s {
                    c_mat.set(j, k, b.get(j, k).clone());
                }
                c_mat.set(s, k, bar.get(n - 1, k).clone());
            }
            let mut row = xs.clone();
            row.push(tn.clone());
            check_row_identity(&ell, &row, &c_mat, "[x1..xs Tn]·C")?;
            let mut bdd = PolyMatrix::zeros(&ring, d, cols);
            for j in 0..d {
                for k in 0..cols {
                    let e = b.get(j, k);
                    let v = if j < s {
                        e.clone()
                    } else {
                        e.exact_div(&tn).ok_or_else(|| Error::TransitionIdentityFailure {
                            pos: k,
                            detail: format!("B({}, {}) = {e} is not a multiple of T{n}", j + 1, k + 1),
                        })?
                    };
                    bdd.set(j, k, v);
                }
            }
            let mut res = xs.clone();
            for j in s..d {
                res.push(Poly::var(&ring, ring.x_var(j + 1)).mul(&tn));
            }
            check_row_identity(&ell, &res, &bdd, "[x1..xs x_(s+1)Tn..x_dTn]·B''")?;
            Ok(Submatrices {
                kind: ShapeKind::Row,
                s,
                jacobian_dual: b,
                b_prime,
                psi: Some(psi),
                c_matrix: Some(c_mat),
                b_doubleprime: bdd,
                gamma: None,
                residual_generators: res,
            })
        }
        _ => unreachable!("checked above"),
    }
}

/// `I_t(M)`, or the zero ideal when `t` exceeds the matrix size.
pub(crate) fn minors_or_zero<F: Field>(m: &PolyMatrix<F>, t: usize) -> Result<Ideal<F>> {
    if t > m.rows().min(m.cols()) {
        Ok(Ideal::zero(m.ring()))
    } else {
        minors(m, t)
    }
}

/// Formula used for a candidate defining ideal.
pub fn candidate_formula(kind: ShapeKind) -> &'static str {
    match kind {
        ShapeKind::Row => "L + I_s(B') + I_(s+1)(C)",
        _ => "L + I_s(B')",
    }
}

/// `L + I_s(B')` (column) or `L + I_s(B') + I_(s+1)(C)` (row), trimmed.
pub fn candidate_defining_ideal<F: Field>(p: &Presentation<F>, sub: &Submatrices<F>) -> Result<Ideal<F>> {
    let l = symmetric_ideal(p);
    let mut cand = l.sum(&minors_or_zero(&sub.b_prime, sub.s)?)?;
    if let Some(c) = &sub.c_matrix {
        cand = cand.sum(&minors_or_zero(c, sub.s + 1)?)?;
    }
    cand.trimmed()
}

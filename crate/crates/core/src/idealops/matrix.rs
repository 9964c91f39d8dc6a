use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::Ideal;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::polyring::{parse_poly, Poly, RingSpec};

/// Largest minor size computed by memoized cofactor expansion.
const COFACTOR_MAX: usize = 6;

/// Dense row-major matrix of polynomials over one ring.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix<F: Field> {
    ring: Arc<RingSpec>,
    rows: usize,
    cols: usize,
    entries: Vec<Poly<F>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn new(ring: &Arc<RingSpec>, rows: usize, cols: usize, entries: Vec<Poly<F>>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        if entries.iter().any(|e| !e.ring().same_as(ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(PolyMatrix { ring: ring.clone(), rows, cols, entries })
    }

    pub fn from_rows(ring: &Arc<RingSpec>, rows: Vec<Vec<Poly<F>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("rows of unequal length".into()));
        }
        Self::new(ring, r, c, rows.into_iter().flatten().collect())
    }

    pub fn parse(ring: &Arc<RingSpec>, rows: &[Vec<&str>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|row| row.iter().map(|s| parse_poly(ring, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(ring, parsed)
    }

    pub fn zeros(ring: &Arc<RingSpec>, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring: ring.clone(), rows, cols, entries: vec![Poly::zero(ring); rows * cols] }
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly<F> {
        assert!(r < self.rows && c < self.cols);
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Poly<F>) {
        assert!(r < self.rows && c < self.cols);
        self.entries[r * self.cols + c] = p;
    }

    pub fn entries(&self) -> &[Poly<F>] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[Poly<F>] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Poly<F>> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn map(&self, f: impl Fn(&Poly<F>) -> Poly<F>) -> Self {
        PolyMatrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        PolyMatrix { ring: self.ring.clone(), rows: self.cols, cols: self.rows, entries }
    }

    /// Submatrix on the given row and column indices, in that order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                entries.push(self.get(r, c).clone());
            }
        }
        PolyMatrix { ring: self.ring.clone(), rows: rows.len(), cols: cols.len(), entries }
    }

    /// Keeps the first `k` columns.
    pub fn first_columns(&self, k: usize) -> Self {
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (0..k.min(self.cols)).collect();
        self.submatrix(&rows, &cols)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.ring, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Poly::zero(&self.ring);
                for k in 0..self.cols {
                    let (a, b) = (self.get(r, k), other.get(k, c));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_mul_vector(&self, v: &[Poly<F>]) -> Result<Vec<Poly<F>>> {
        let row = Self::new(&self.ring, 1, v.len(), v.to_vec())?;
        Ok(row.mul(self)?.entries)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn determinant(&self) -> Result<Poly<F>> {
        if self.rows != self.cols {
            return Err(Error::Shape(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        if self.rows <= COFACTOR_MAX {
            let mut memo = FxHashMap::default();
            let rows: Vec<usize> = (0..self.rows).collect();
            let cols: Vec<usize> = (0..self.cols).collect();
            Ok(cofactor(self, &rows, mask(&cols), &mut memo))
        } else {
            Ok(bareiss(self))
        }
    }

    /// All `t`x`t` minors, in lexicographic order of (rows, columns).
    pub fn minor_list(&self, t: usize) -> Result<Vec<Poly<F>>> {
        if t == 0 {
            return Ok(vec![Poly::one(&self.ring)]);
        }
        if t > self.rows.min(self.cols) {
            return Err(Error::OutOfRange { what: "minor size", value: t, lo: 0, hi: self.rows.min(self.cols) });
        }
        let row_sets = subsets(self.rows, t);
        let col_sets = subsets(self.cols, t);
        let mut out = Vec::with_capacity(row_sets.len() * col_sets.len());
        if t <= COFACTOR_MAX {
            let mut memo = FxHashMap::default();
            for rs in &row_sets {
                for cs in &col_sets {
                    out.push(cofactor(self, rs, mask(cs), &mut memo));
                }
            }
        } else {
            for rs in &row_sets {
                for cs in &col_sets {
                    out.push(bareiss(&self.submatrix(rs, cs)));
                }
            }
        }
        Ok(out)
    }

    /// Whether some `t`x`t` minor is nonzero.
    pub fn has_nonzero_minor(&self, t: usize) -> Result<bool> {
        Ok(self.minor_list(t)?.iter().any(|m| !m.is_zero()))
    }

    /// Largest `t` with a nonzero `t`x`t` minor (0 for the zero matrix).
    pub fn rank(&self) -> Result<usize> {
        let mut r = 0;
        for t in 1..=self.rows.min(self.cols) {
            if self.has_nonzero_minor(t)? {
                r = t;
            } else {
                break;
            }
        }
        Ok(r)
    }

    pub fn entries_as_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| self.row(r).iter().map(|p| p.to_string()).collect()).collect()
    }
}

impl<F: Field> fmt::Debug for PolyMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries_as_strings()).finish()
    }
}

fn mask(cols: &[usize]) -> u64 {
    cols.iter().fold(0, |m, &c| m | (1 << c))
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Determinant of rows `rows` and column set `cols` by expansion along the
/// first row; sub-determinants are shared through `memo`.
fn cofactor<F: Field>(
    m: &PolyMatrix<F>,
    rows: &[usize],
    cols: u64,
    memo: &mut FxHashMap<(u64, u64), Poly<F>>,
) -> Poly<F> {
    let ring = m.ring();
    if rows.is_empty() {
        return Poly::one(ring);
    }
    let rkey = mask(rows);
    if let Some(p) = memo.get(&(rkey, cols)) {
        return p.clone();
    }
    let r = rows[0];
    let mut acc = Poly::zero(ring);
    let mut sign_neg = false;
    for c in 0..m.cols() {
        if cols & (1 << c) == 0 {
            continue;
        }
        let e = m.get(r, c);
        if !e.is_zero() {
            let sub = cofactor(m, &rows[1..], cols & !(1 << c), memo);
            if !sub.is_zero() {
                let term = e.mul(&sub);
                acc = if sign_neg { acc.sub(&term) } else { acc.add(&term) };
            }
        }
        sign_neg = !sign_neg;
    }
    memo.insert((rkey, cols), acc.clone());
    acc
}

/// Fraction-free Gaussian elimination; every division is exact.
fn bareiss<F: Field>(m: &PolyMatrix<F>) -> Poly<F> {
    let n = m.rows();
    let ring = m.ring().clone();
    let mut a: Vec<Vec<Poly<F>>> = (0..n).map(|r| m.row(r).to_vec()).collect();
    let mut prev = Poly::one(&ring);
    let mut negate = false;
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Poly::zero(&ring),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = Poly::zero(&ring);
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// The ideal `I_t(M)` of `t`x`t` minors; `I_0` is the unit ideal.
pub fn minors<F: Field>(m: &PolyMatrix<F>, t: usize) -> Result<Ideal<F>> {
    Ideal::new(m.ring(), m.minor_list(t)?)
}

/// `Fitt_i` of the module presented by `m` (generators indexed by rows):
/// the ideal of `(rows - i)`-minors, zero when that exceeds the column count.
pub fn fitting_ideal<F: Field>(m: &PolyMatrix<F>, i: usize) -> Result<Ideal<F>> {
    let n = m.rows();
    if i > n {
        return Err(Error::OutOfRange { what: "Fitting index", value: i, lo: 0, hi: n });
    }
    let t = n - i;
    if t > m.cols() {
        return Ok(Ideal::zero(m.ring()));
    }
    minors(m, t)
}

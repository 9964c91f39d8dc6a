use serde::{Deserialize, Serialize};

use super::Presentation;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::idealops::PolyMatrix;
use crate::polyring::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeKind {
    /// Modulo `(x1..xs)` all nonzero entries sit in one column.
    Column,
    /// Modulo `(x1..xs)` all nonzero entries sit in one row.
    Row,
    /// Rank other than one modulo `(x1..xs)`.
    NotRankOne,
    /// Rank one, but the entries are not confined to a row or a column.
    RankOneUnstructured,
}

/// Shape of a presentation modulo `(x1..xs)`, with the permutations that
/// bring it to normal form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeClassification {
    pub kind: ShapeKind,
    pub s: usize,
    pub residual_rank: usize,
    /// Original index of the distinguished column (Column) or row (Row).
    pub witness: Option<usize>,
    /// `row_permutation[new] = old`; moving row `old` to `new` renames
    /// `T_(old+1)` to `T_(new+1)`.
    pub row_permutation: Vec<usize>,
    /// `column_permutation[new] = old`.
    pub column_permutation: Vec<usize>,
}

impl ShapeClassification {
    pub fn is_normal_form(&self) -> bool {
        matches!(self.kind, ShapeKind::Column | ShapeKind::Row)
    }

    /// True when the input already is in normal form without reordering.
    pub fn is_identity(&self) -> bool {
        self.row_permutation.iter().enumerate().all(|(i, &j)| i == j)
            && self.column_permutation.iter().enumerate().all(|(i, &j)| i == j)
    }
}

fn check_s<F: Field>(p: &Presentation<F>, s: usize) -> Result<()> {
    let d = p.d();
    if s == 0 || s >= d {
        return Err(Error::OutOfRange { what: "s", value: s, lo: 1, hi: d.saturating_sub(1) });
    }
    Ok(())
}

/// `φ` with `x1 = … = xs = 0`.
pub fn reduce_mod_first_vars<F: Field>(phi: &PolyMatrix<F>, s: usize) -> PolyMatrix<F> {
    let vars: Vec<usize> = (0..s).collect();
    phi.map(|e| e.substitute_zero(&vars))
}

/// Rank of `φ` modulo `(x1..xs)`: the largest nonvanishing minor size.
pub fn residual_rank<F: Field>(p: &Presentation<F>, s: usize) -> Result<usize> {
    check_s(p, s)?;
    reduce_mod_first_vars(p.phi(), s).rank()
}

/// Lowest variable index occurring in a nonzero polynomial.
fn lead_var<F: Field>(e: &Poly<F>) -> u32 {
    e.support().trailing_zeros()
}

pub fn classify_shape<F: Field>(p: &Presentation<F>, s: usize) -> Result<ShapeClassification> {
    check_s(p, s)?;
    let bar = reduce_mod_first_vars(p.phi(), s);
    let rank = bar.rank()?;
    let (n, m) = (bar.rows(), bar.cols());
    let identity_rows: Vec<usize> = (0..n).collect();
    let identity_cols: Vec<usize> = (0..m).collect();
    let unstructured = |kind| ShapeClassification {
        kind,
        s,
        residual_rank: rank,
        witness: None,
        row_permutation: identity_rows.clone(),
        column_permutation: identity_cols.clone(),
    };
    if rank != 1 {
        return Ok(unstructured(ShapeKind::NotRankOne));
    }
    let nonzero: Vec<(usize, usize)> = (0..n)
        .flat_map(|r| (0..m).map(move |c| (r, c)))
        .filter(|&(r, c)| !bar.get(r, c).is_zero())
        .collect();
    let col = nonzero[0].1;
    let row = nonzero[0].0;
    if nonzero.iter().all(|&(_, c)| c == col) {
        // rows carrying the entries go last, ordered by their leading variable
        let mut hot: Vec<usize> = nonzero.iter().map(|&(r, _)| r).collect();
        hot.sort_by_key(|&r| (lead_var(bar.get(r, col)), r));
        let mut rows: Vec<usize> = (0..n).filter(|r| !hot.contains(r)).collect();
        rows.extend(hot);
        let mut cols: Vec<usize> = (0..m).filter(|&c| c != col).collect();
        cols.push(col);
        return Ok(ShapeClassification {
            kind: ShapeKind::Column,
            s,
            residual_rank: rank,
            witness: Some(col),
            row_permutation: rows,
            column_permutation: cols,
        });
    }
    if nonzero.iter().all(|&(r, _)| r == row) {
        let mut hot: Vec<usize> = nonzero.iter().map(|&(_, c)| c).collect();
        hot.sort_by_key(|&c| (lead_var(bar.get(row, c)), c));
        let mut cols: Vec<usize> = (0..m).filter(|c| !hot.contains(c)).collect();
        cols.extend(hot);
        let mut rows: Vec<usize> = (0..n).filter(|&r| r != row).collect();
        rows.push(row);
        return Ok(ShapeClassification {
            kind: ShapeKind::Row,
            s,
            residual_rank: rank,
            witness: Some(row),
            row_permutation: rows,
            column_permutation: cols,
        });
    }
    Ok(unstructured(ShapeKind::RankOneUnstructured))
}

/// Applies the row and column permutations of a classification.
pub fn normalize<F: Field>(p: &Presentation<F>, shape: &ShapeClassification) -> Presentation<F> {
    let phi = p.phi().submatrix(&shape.row_permutation, &shape.column_permutation);
    p.with_matrix(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rees::fixtures::{matrix, presentation, COLUMN, ROW};

    #[test]
    fn column_and_row_forms() {
        let c = classify_shape(&presentation(4, 1, COLUMN), 2).unwrap();
        assert_eq!((c.kind, c.residual_rank, c.witness), (ShapeKind::Column, 1, Some(3)));
        assert!(c.is_identity());
        let r = classify_shape(&presentation(4, 1, ROW), 2).unwrap();
        assert_eq!((r.kind, r.witness), (ShapeKind::Row, Some(4)));
        assert!(r.is_identity());
    }

    #[test]
    fn permuted_input_is_normalized() {
        // rows 0 and 4 swapped, last column moved to the front
        let rows: Vec<Vec<&str>> = [4, 1, 2, 3, 0]
            .iter()
            .map(|&r| {
                let row = COLUMN[r];
                vec![row[3], row[0], row[1], row[2]]
            })
            .collect();
        let refs: Vec<&[&str]> = rows.iter().map(Vec::as_slice).collect();
        let p = presentation(4, 1, &refs);
        let shape = classify_shape(&p, 2).unwrap();
        assert_eq!(shape.kind, ShapeKind::Column);
        assert_eq!(shape.witness, Some(0));
        assert!(!shape.is_identity());
        let q = normalize(&p, &shape);
        let again = classify_shape(&q, 2).unwrap();
        assert_eq!(again.kind, ShapeKind::Column);
        assert!(again.is_identity());
        // the permutations only relabel: same x-entries up to reordering
        assert_eq!(q.phi().get(4, 3).to_string(), "x4");
        assert_eq!(q.phi().get(3, 3).to_string(), "x3");
    }

    #[test]
    fn rank_one_without_structure() {
        let m: &[&[&str]] = &[
            &["x1", "x2", "x1", "0"],
            &["x2", "x1", "0", "x1"],
            &["0", "0", "x2", "x2"],
            &["x3", "x4", "x1", "0"],
            &["x3 + x1", "x4", "0", "x2"],
        ];
        let p = presentation(4, 1, m);
        assert_eq!(residual_rank(&p, 2).unwrap(), 1);
        assert_eq!(classify_shape(&p, 2).unwrap().kind, ShapeKind::RankOneUnstructured);
    }

    #[test]
    fn higher_residual_rank() {
        let m: &[&[&str]] = &[&["x1", "x3"], &["x3", "x2"], &["x2", "x1"]];
        let p = presentation(3, 1, m);
        assert_eq!(residual_rank(&p, 1).unwrap(), 2);
        assert_eq!(classify_shape(&p, 1).unwrap().kind, ShapeKind::NotRankOne);
        assert!(residual_rank(&p, 0).is_err());
        assert!(residual_rank(&p, 3).is_err());
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let m = matrix(3, &[&["x1", "0"], &["0", "x2"]]);
        assert_eq!(reduce_mod_first_vars(&m, 2).rank().unwrap(), 0);
    }
}

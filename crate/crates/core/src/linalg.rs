//! Sparse Gauss-Jordan elimination over a [`Scalar`] field.
//!
//! [`Echelon`] maintains a reduced row echelon basis incrementally. Rows are
//! kept fully reduced, so every pivot column is non-zero in exactly one row.
//! With tracking enabled each basis row also records its expression as a
//! combination of the inserted generators, which yields membership
//! certificates.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// Sorted `(column, value)` pairs with no stored zeros.
pub type SparseRow<S> = Vec<(usize, S)>;

/// `x + alpha * y` for sorted sparse rows, dropping negligible entries.
pub fn axpy<S: Scalar>(x: &[(usize, S)], alpha: &S, y: &[(usize, S)], tol: f64) -> SparseRow<S> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        let (col, val) = if take_x {
            i += 1;
            (x[i - 1].0, x[i - 1].1.clone())
        } else if take_y {
            j += 1;
            (y[j - 1].0, alpha.clone() * y[j - 1].1.clone())
        } else {
            i += 1;
            j += 1;
            (x[i - 1].0, x[i - 1].1.clone() + alpha.clone() * y[j - 1].1.clone())
        };
        if !val.is_negligible(tol) {
            out.push((col, val));
        }
    }
    out
}

/// Builds a canonical sparse row from unordered, possibly repeated entries.
pub fn sparse_from_entries<S: Scalar>(entries: impl IntoIterator<Item = (usize, S)>, tol: f64) -> SparseRow<S> {
    let mut acc: BTreeMap<usize, S> = BTreeMap::new();
    for (c, v) in entries {
        let slot = acc.entry(c).or_insert_with(S::zero);
        *slot = slot.clone() + v;
    }
    acc.into_iter().filter(|(_, v)| !v.is_negligible(tol)).collect()
}

pub fn sparse_from_dense<S: Scalar>(dense: &[S], tol: f64) -> SparseRow<S> {
    dense
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_negligible(tol))
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

pub fn dense_from_sparse<S: Scalar>(row: &[(usize, S)], len: usize) -> Vec<S> {
    let mut out = vec![S::zero(); len];
    for (c, v) in row {
        out[*c] = v.clone();
    }
    out
}

fn scale_row<S: Scalar>(row: &mut SparseRow<S>, factor: &S) {
    for (_, v) in row.iter_mut() {
        *v = v.clone() * factor.clone();
    }
}

fn entry<S: Scalar>(row: &[(usize, S)], col: usize) -> Option<&S> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|k| &row[k].1)
}

/// Incrementally maintained reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon<S> {
    ncols: usize,
    pivot_limit: usize,
    tol: f64,
    rows: Vec<SparseRow<S>>,
    pivots: Vec<usize>,
    pivot_row: Vec<Option<usize>>,
    combos: Option<Vec<SparseRow<S>>>,
    generators: usize,
}

/// Outcome of reducing a row against an [`Echelon`] basis.
#[derive(Clone, Debug)]
pub struct Reduction<S> {
    pub remainder: SparseRow<S>,
    /// `row - remainder` as a combination of basis rows: `(basis row index, coefficient)`.
    pub used: Vec<(usize, S)>,
}

impl<S: Scalar> Echelon<S> {
    pub fn new(ncols: usize, tol: f64) -> Self {
        Echelon {
            ncols,
            pivot_limit: ncols,
            tol,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_row: vec![None; ncols],
            combos: None,
            generators: 0,
        }
    }

    /// Like [`Echelon::new`] but records each basis row as a combination of the inserted rows.
    pub fn with_tracking(ncols: usize, tol: f64) -> Self {
        let mut e = Self::new(ncols, tol);
        e.combos = Some(Vec::new());
        e
    }

    /// Restricts pivots to columns `< limit`; rows whose remainder lives only in
    /// columns `>= limit` are rejected by [`Echelon::insert`].
    fn with_pivot_limit(mut self, limit: usize) -> Self {
        self.pivot_limit = limit;
        self
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow<S>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn reduce(&self, row: &[(usize, S)]) -> Reduction<S> {
        // Pivot rows are reduced against each other, so subtracting them never
        // re-introduces a pivot column: one pass over the original entries suffices.
        let hits: Vec<(usize, S)> = row
            .iter()
            .filter_map(|(c, v)| self.pivot_row.get(*c).copied().flatten().map(|r| (r, v.clone())))
            .collect();
        let mut remainder: SparseRow<S> = row.to_vec();
        for (r, v) in &hits {
            remainder = axpy(&remainder, &(-v.clone()), &self.rows[*r], self.tol);
        }
        Reduction { remainder, used: hits }
    }

    pub fn contains(&self, row: &[(usize, S)]) -> bool {
        self.reduce(row).remainder.is_empty()
    }

    /// Inserts a generator. Returns the new pivot column when the row was independent.
    pub fn insert(&mut self, row: &[(usize, S)]) -> Option<usize> {
        let gen = self.generators;
        self.generators += 1;
        let Reduction { remainder, used } = self.reduce(row);
        let candidates = remainder.iter().filter(|(c, _)| *c < self.pivot_limit);
        let pivot = if S::EXACT {
            candidates.map(|(c, _)| *c).next()
        } else {
            candidates
                .max_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap_or(std::cmp::Ordering::Equal))
                .map(|(c, _)| *c)
        }?;
        let pivot_val = entry(&remainder, pivot).cloned().expect("pivot present");
        let inv = S::one() / pivot_val;
        let mut new_row = remainder;
        scale_row(&mut new_row, &inv);
        // Pin the pivot to exactly one in float mode as well.
        if let Ok(k) = new_row.binary_search_by_key(&pivot, |(c, _)| *c) {
            new_row[k].1 = S::one();
        }

        let new_combo = self.combos.as_ref().map(|combos| {
            let mut combo: SparseRow<S> = vec![(gen, S::one())];
            for (r, v) in &used {
                combo = axpy(&combo, &(-v.clone()), &combos[*r], self.tol);
            }
            scale_row(&mut combo, &inv);
            combo
        });

        for k in 0..self.rows.len() {
            if let Some(v) = entry(&self.rows[k], pivot).cloned() {
                self.rows[k] = axpy(&self.rows[k], &(-v.clone()), &new_row, self.tol);
                if let (Some(combos), Some(nc)) = (self.combos.as_mut(), new_combo.as_ref()) {
                    combos[k] = axpy(&combos[k], &(-v), nc, self.tol);
                }
            }
        }
        self.pivot_row[pivot] = Some(self.rows.len());
        self.pivots.push(pivot);
        self.rows.push(new_row);
        if let (Some(combos), Some(nc)) = (self.combos.as_mut(), new_combo) {
            combos.push(nc);
        }
        Some(pivot)
    }

    /// Expresses `row` as a combination of the inserted generators, if it lies in their span.
    /// Requires tracking.
    pub fn express(&self, row: &[(usize, S)]) -> Option<SparseRow<S>> {
        let combos = self.combos.as_ref()?;
        let red = self.reduce(row);
        if !red.remainder.is_empty() {
            return None;
        }
        let mut out: SparseRow<S> = Vec::new();
        for (r, v) in &red.used {
            out = axpy(&out, v, &combos[*r], self.tol);
        }
        Some(out)
    }

    /// Basis of `{x : row . x = 0 for every basis row}`, one vector per free column.
    pub fn null_space(&self) -> Vec<SparseRow<S>> {
        let mut out = Vec::new();
        for free in 0..self.ncols {
            if self.pivot_row[free].is_some() {
                continue;
            }
            let mut v: Vec<(usize, S)> = vec![(free, S::one())];
            for (r, row) in self.rows.iter().enumerate() {
                if let Some(x) = entry(row, free) {
                    v.push((self.pivots[r], -x.clone()));
                }
            }
            v.sort_by_key(|(c, _)| *c);
            out.push(v);
        }
        out
    }
}

/// Null space of the matrix whose rows are `rows`.
pub fn null_space<S: Scalar>(rows: &[SparseRow<S>], ncols: usize, tol: f64) -> Vec<SparseRow<S>> {
    let mut e = Echelon::new(ncols, tol);
    for r in rows {
        e.insert(r);
    }
    e.null_space()
}

/// Reduced basis of the span of `vectors`.
pub fn span_basis<S: Scalar>(vectors: &[SparseRow<S>], ncols: usize, tol: f64) -> Echelon<S> {
    let mut e = Echelon::new(ncols, tol);
    for v in vectors {
        e.insert(v);
    }
    e
}

/// Solves `A x = b` where `A` has the given sparse rows. Free variables are set to zero.
/// Returns `None` when the system is inconsistent.
pub fn solve<S: Scalar>(rows: &[SparseRow<S>], rhs: &[S], ncols: usize, tol: f64) -> Option<Vec<S>> {
    assert_eq!(rows.len(), rhs.len(), "one right-hand side per row");
    let mut e = Echelon::new(ncols + 1, tol).with_pivot_limit(ncols);
    for (row, b) in rows.iter().zip(rhs) {
        let mut aug = row.clone();
        if !b.is_negligible(tol) {
            aug.push((ncols, b.clone()));
        }
        if e.insert(&aug).is_none() && !e.reduce(&aug).remainder.is_empty() {
            return None;
        }
    }
    let mut x = vec![S::zero(); ncols];
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        if let Some(v) = entry(row, ncols) {
            x[p] = v.clone();
        }
    }
    Some(x)
}

/// Dense matrix-vector product for a sparse row set.
pub fn apply_rows<S: Scalar>(rows: &[SparseRow<S>], x: &[S]) -> Vec<S> {
    rows.iter()
        .map(|r| r.iter().fold(S::zero(), |acc, (c, v)| acc + v.clone() * x[*c].clone()))
        .collect()
}

//! Finite-dimensional Banach bimodules over a presented algebra.

use crate::algebra::AlgebraPresentation;
use crate::element::{weighted_l1, Element, SpaceId};
use crate::error::{Error, Result};
use crate::linalg::{self, SparseRow};
use crate::scalar::Scalar;

/// Bimodule `X` over an algebra `A`, given by left and right action constants:
/// `b_a x_k = sum_l L[a][k][l] x_l` and `x_k b_a = sum_l R[k][a][l] x_l`.
#[derive(Clone, Debug)]
pub struct BimodulePresentation<S> {
    id: SpaceId,
    algebra: SpaceId,
    algebra_dim: usize,
    labels: Vec<String>,
    weights: Vec<S>,
    /// `left[a * m + k]`
    left: Vec<SparseRow<S>>,
    /// `right[k * n + a]`
    right: Vec<SparseRow<S>>,
    tol: f64,
}

impl<S: Scalar> PartialEq for BimodulePresentation<S> {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl<S: Scalar> BimodulePresentation<S> {
    /// Builds and validates a bimodule from `(a, x, y, c)` left entries
    /// (`b_a x_x` has coefficient `c` on `x_y`) and `(x, a, y, c)` right entries.
    pub fn new(
        alg: &AlgebraPresentation<S>,
        labels: Vec<String>,
        weights: Vec<S>,
        left: impl IntoIterator<Item = (usize, usize, usize, S)>,
        right: impl IntoIterator<Item = (usize, usize, usize, S)>,
    ) -> Result<Self> {
        let (n, m) = (alg.dim(), labels.len());
        if weights.len() != m {
            return Err(Error::Invariant(format!("{} weights for {m} module basis elements", weights.len())));
        }
        if weights.iter().any(|w| *w <= S::zero()) {
            return Err(Error::Invariant("module weights must be positive".into()));
        }
        let mut l_raw = vec![Vec::new(); n * m];
        for (a, x, y, c) in left {
            if a >= n || x >= m || y >= m {
                return Err(Error::Invariant(format!("left action index ({a}, {x}, {y}) out of range")));
            }
            l_raw[a * m + x].push((y, c));
        }
        let mut r_raw = vec![Vec::new(); n * m];
        for (x, a, y, c) in right {
            if a >= n || x >= m || y >= m {
                return Err(Error::Invariant(format!("right action index ({x}, {a}, {y}) out of range")));
            }
            r_raw[x * n + a].push((y, c));
        }
        let tol = alg.tol();
        let left = l_raw.into_iter().map(|e| linalg::sparse_from_entries(e, tol)).collect();
        let right = r_raw.into_iter().map(|e| linalg::sparse_from_entries(e, tol)).collect();
        let module = Self::assemble(alg, labels, weights, left, right);
        module.validate(alg)?;
        Ok(module)
    }

    fn assemble(
        alg: &AlgebraPresentation<S>,
        labels: Vec<String>,
        weights: Vec<S>,
        left: Vec<SparseRow<S>>,
        right: Vec<SparseRow<S>>,
    ) -> Self {
        let mut parts = vec![alg.id().to_string()];
        parts.extend(labels.iter().cloned());
        parts.extend(weights.iter().map(|w| w.render()));
        for (tag, table) in [("L", &left), ("R", &right)] {
            for (idx, row) in table.iter().enumerate() {
                for (k, c) in row {
                    parts.push(format!("{tag}{idx}:{k}:{}", c.render()));
                }
            }
        }
        BimodulePresentation {
            id: SpaceId::from_content("bimodule", &parts),
            algebra: alg.id(),
            algebra_dim: alg.dim(),
            labels,
            weights,
            left,
            right,
            tol: alg.tol(),
        }
    }

    /// Checks `(ab)x = a(bx)`, `x(ab) = (xa)b` and `(ax)b = a(xb)` on basis triples.
    pub fn validate(&self, alg: &AlgebraPresentation<S>) -> Result<()> {
        self.check_algebra(alg)?;
        let (n, m) = (alg.dim(), self.dim());
        for a in 0..n {
            for b in 0..n {
                let ab = alg.basis_product(a, b);
                for k in 0..m {
                    let x = self.basis(k);
                    let lhs = self.left_unchecked(&ab, &x);
                    let rhs = self.left_unchecked(&alg.basis(a), &self.left_unchecked(&alg.basis(b), &x));
                    if !lhs.approx_eq(&rhs, self.tol) {
                        return Err(self.law_error("(ab)x = a(bx)", alg, a, b, k));
                    }
                    let lhs = self.right_unchecked(&x, &ab);
                    let rhs = self.right_unchecked(&self.right_unchecked(&x, &alg.basis(a)), &alg.basis(b));
                    if !lhs.approx_eq(&rhs, self.tol) {
                        return Err(self.law_error("x(ab) = (xa)b", alg, a, b, k));
                    }
                    let lhs = self.right_unchecked(&self.left_unchecked(&alg.basis(a), &x), &alg.basis(b));
                    let rhs = self.left_unchecked(&alg.basis(a), &self.right_unchecked(&x, &alg.basis(b)));
                    if !lhs.approx_eq(&rhs, self.tol) {
                        return Err(self.law_error("(ax)b = a(xb)", alg, a, b, k));
                    }
                }
            }
        }
        Ok(())
    }

    fn law_error(&self, law: &str, alg: &AlgebraPresentation<S>, a: usize, b: usize, k: usize) -> Error {
        Error::Invariant(format!(
            "module law {law} fails for a = {}, b = {}, x = {}",
            alg.label(a),
            alg.label(b),
            self.labels[k]
        ))
    }

    /// `A` as a bimodule over itself.
    pub fn regular(alg: &AlgebraPresentation<S>) -> Self {
        let n = alg.dim();
        let mut left = vec![Vec::new(); n * n];
        let mut right = vec![Vec::new(); n * n];
        for a in 0..n {
            for k in 0..n {
                left[a * n + k] = alg.structure(a, k).to_vec();
                right[k * n + a] = alg.structure(k, a).to_vec();
            }
        }
        Self::assemble(alg, alg.labels().to_vec(), alg.weights().to_vec(), left, right)
    }

    /// `m`-dimensional module on which `A` acts by zero from both sides.
    pub fn trivial(alg: &AlgebraPresentation<S>, m: usize) -> Self {
        let n = alg.dim();
        let labels = (0..m).map(|k| format!("x{k}")).collect();
        Self::assemble(alg, labels, vec![S::one(); m], vec![Vec::new(); n * m], vec![Vec::new(); n * m])
    }

    /// Direct sum of bimodules over the same algebra.
    pub fn direct_sum(alg: &AlgebraPresentation<S>, parts: &[&Self]) -> Result<Self> {
        for p in parts {
            p.check_algebra(alg)?;
        }
        let n = alg.dim();
        let m: usize = parts.iter().map(|p| p.dim()).sum();
        let mut left = vec![Vec::new(); n * m];
        let mut right = vec![Vec::new(); n * m];
        let mut labels = Vec::with_capacity(m);
        let mut weights = Vec::with_capacity(m);
        let mut off = 0;
        for (c, p) in parts.iter().enumerate() {
            for k in 0..p.dim() {
                labels.push(format!("{}[{}]", p.labels[k], c + 1));
                weights.push(p.weights[k].clone());
                for a in 0..n {
                    left[a * m + off + k] = p.left[a * p.dim() + k].iter().map(|(y, v)| (off + y, v.clone())).collect();
                    right[(off + k) * n + a] = p.right[k * n + a].iter().map(|(y, v)| (off + y, v.clone())).collect();
                }
            }
            off += p.dim();
        }
        Ok(Self::assemble(alg, labels, weights, left, right))
    }

    /// The same space as a bimodule over `A#`, with the adjoined unit acting as the identity.
    pub fn unitized(&self, alg: &AlgebraPresentation<S>) -> Result<(AlgebraPresentation<S>, Self)> {
        self.check_algebra(alg)?;
        let sharp = alg.unitize();
        let (n, m) = (alg.dim(), self.dim());
        let n1 = n + 1;
        let mut left = vec![Vec::new(); n1 * m];
        let mut right = vec![Vec::new(); n1 * m];
        for k in 0..m {
            for a in 0..n {
                left[a * m + k] = self.left[a * m + k].clone();
                right[k * n1 + a] = self.right[k * n + a].clone();
            }
            left[n * m + k] = vec![(k, S::one())];
            right[k * n1 + n] = vec![(k, S::one())];
        }
        let module = Self::assemble(&sharp, self.labels.clone(), self.weights.clone(), left, right);
        Ok((sharp, module))
    }

    pub(crate) fn from_tables(
        alg: &AlgebraPresentation<S>,
        labels: Vec<String>,
        weights: Vec<S>,
        left: Vec<SparseRow<S>>,
        right: Vec<SparseRow<S>>,
    ) -> Self {
        Self::assemble(alg, labels, weights, left, right)
    }

    pub fn id(&self) -> SpaceId {
        self.id
    }

    pub(crate) fn left_row(&self, a: usize, k: usize) -> &[(usize, S)] {
        &self.left[a * self.dim() + k]
    }

    pub(crate) fn right_row(&self, k: usize, a: usize) -> &[(usize, S)] {
        &self.right[k * self.algebra_dim + a]
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn algebra_id(&self) -> SpaceId {
        self.algebra
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> &[S] {
        &self.weights
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn basis(&self, k: usize) -> Element<S> {
        Element::basis(self.id, k)
    }

    pub fn zero(&self) -> Element<S> {
        Element::zero(self.id)
    }

    pub fn element(&self, terms: impl IntoIterator<Item = (usize, S)>) -> Result<Element<S>> {
        let el = Element::from_terms(self.id, terms);
        self.check(&el)?;
        Ok(el)
    }

    pub fn check(&self, x: &Element<S>) -> Result<()> {
        if x.space() != self.id {
            return Err(Error::mismatch("element is not in this bimodule"));
        }
        if x.max_index().is_some_and(|i| i >= self.dim()) {
            return Err(Error::InvalidArgument("module index out of range".into()));
        }
        Ok(())
    }

    pub fn check_algebra(&self, alg: &AlgebraPresentation<S>) -> Result<()> {
        if alg.id() != self.algebra {
            return Err(Error::mismatch("bimodule is over a different algebra"));
        }
        Ok(())
    }

    pub fn left_entries(&self) -> impl Iterator<Item = (usize, usize, usize, &S)> {
        let m = self.dim();
        self.left
            .iter()
            .enumerate()
            .flat_map(move |(idx, row)| row.iter().map(move |(y, c)| (idx / m, idx % m, *y, c)))
    }

    pub fn right_entries(&self) -> impl Iterator<Item = (usize, usize, usize, &S)> {
        let n = self.algebra_dim;
        self.right
            .iter()
            .enumerate()
            .flat_map(move |(idx, row)| row.iter().map(move |(y, c)| (idx / n, idx % n, *y, c)))
    }

    pub(crate) fn left_unchecked(&self, a: &Element<S>, x: &Element<S>) -> Element<S> {
        let m = self.dim();
        let mut terms = Vec::new();
        for (i, ai) in a.terms() {
            for (k, xk) in x.terms() {
                let s = ai.clone() * xk.clone();
                for (y, c) in &self.left[i * m + k] {
                    terms.push((*y, s.clone() * c.clone()));
                }
            }
        }
        Element::from_terms(self.id, terms).chop(self.tol)
    }

    pub(crate) fn right_unchecked(&self, x: &Element<S>, a: &Element<S>) -> Element<S> {
        let n = self.algebra_dim;
        let mut terms = Vec::new();
        for (k, xk) in x.terms() {
            for (i, ai) in a.terms() {
                let s = ai.clone() * xk.clone();
                for (y, c) in &self.right[k * n + i] {
                    terms.push((*y, s.clone() * c.clone()));
                }
            }
        }
        Element::from_terms(self.id, terms).chop(self.tol)
    }

    /// `a x`.
    pub fn left_act(&self, a: &Element<S>, x: &Element<S>) -> Result<Element<S>> {
        if a.space() != self.algebra {
            return Err(Error::mismatch("algebra element is over a different algebra"));
        }
        self.check(x)?;
        Ok(self.left_unchecked(a, x))
    }

    /// `x a`.
    pub fn right_act(&self, x: &Element<S>, a: &Element<S>) -> Result<Element<S>> {
        if a.space() != self.algebra {
            return Err(Error::mismatch("algebra element is over a different algebra"));
        }
        self.check(x)?;
        Ok(self.right_unchecked(x, a))
    }

    /// `a x - x a`.
    pub fn commutator(&self, a: &Element<S>, x: &Element<S>) -> Result<Element<S>> {
        Ok(&self.left_act(a, x)? - &self.right_act(x, a)?)
    }

    pub fn norm(&self, x: &Element<S>) -> S {
        weighted_l1(x, &self.weights)
    }

    pub fn is_central(&self, x: &Element<S>) -> bool {
        (0..self.algebra_dim).all(|a| {
            let b = Element::basis(self.algebra, a);
            self.left_unchecked(&b, x).approx_eq(&self.right_unchecked(x, &b), self.tol)
        })
    }

    /// Whether `ax = xa` for all `a` and `x`.
    pub fn is_symmetric(&self) -> bool {
        (0..self.dim()).all(|k| self.is_central(&self.basis(k)))
    }

    /// Basis of `Z_A(X) = {x : ax = xa for all a}`.
    pub fn center(&self) -> Vec<Element<S>> {
        let (n, m) = (self.algebra_dim, self.dim());
        let mut raw: Vec<Vec<(usize, S)>> = vec![Vec::new(); n * m];
        for a in 0..n {
            for k in 0..m {
                for (y, c) in &self.left[a * m + k] {
                    raw[a * m + y].push((k, c.clone()));
                }
                for (y, c) in &self.right[k * n + a] {
                    raw[a * m + y].push((k, -c.clone()));
                }
            }
        }
        let rows: Vec<SparseRow<S>> = raw.into_iter().map(|r| linalg::sparse_from_entries(r, self.tol)).collect();
        linalg::null_space(&rows, m, self.tol)
            .into_iter()
            .map(|v| Element::from_terms(self.id, v))
            .collect()
    }

    /// `M_X = max over basis pairs of ||b_a x_k|| / (w_a w_k)` and the same for right actions.
    ///
    /// For weighted l1 norms this equals the sup in `||a x b|| <= M_X ||a|| ||x|| ||b||`'s
    /// one-sided form.
    pub fn action_constant(&self, alg: &AlgebraPresentation<S>) -> Result<S> {
        self.check_algebra(alg)?;
        let (n, m) = (alg.dim(), self.dim());
        let mut worst = S::zero();
        for a in 0..n {
            for k in 0..m {
                let denom = alg.weights()[a].clone() * self.weights[k].clone();
                let l = self.left[a * m + k].iter().fold(S::zero(), |s, (y, c)| s + c.abs() * self.weights[*y].clone());
                let r = self.right[k * n + a].iter().fold(S::zero(), |s, (y, c)| s + c.abs() * self.weights[*y].clone());
                worst = S::max_of(worst, S::max_of(l, r) / denom);
            }
        }
        Ok(worst)
    }
}

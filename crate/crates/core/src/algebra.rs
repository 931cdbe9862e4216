//! Finite-dimensional weighted-l1 Banach algebras given by structure constants.
//!
//! A presentation fixes a basis `b_0, ..., b_{n-1}`, sparse structure
//! constants `b_i b_j = sum_k c_{ijk} b_k`, positive norm weights `w_i`
//! (the norm is `||a|| = sum_i |a_i| w_i`) and optionally a unit.

use crate::element::{weighted_l1, Element, SpaceId};
use crate::error::{Error, Result};
use crate::linalg::{self, SparseRow};
use crate::scalar::Scalar;

/// Sparse structure-constant presentation of an associative algebra.
#[derive(Clone, Debug)]
pub struct AlgebraPresentation<S> {
    id: SpaceId,
    name: Option<String>,
    labels: Vec<String>,
    weights: Vec<S>,
    /// `table[i * n + j]` lists the non-zero `(k, c_{ijk})`, sorted by `k`.
    table: Vec<SparseRow<S>>,
    unit: Option<Element<S>>,
    tol: f64,
    submultiplicative: bool,
}

impl<S: Scalar> PartialEq for AlgebraPresentation<S> {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl<S: Scalar> AlgebraPresentation<S> {
    /// Builds and validates a presentation.
    ///
    /// `products` holds `(i, j, k, c)` meaning `b_i b_j` has coefficient `c` on `b_k`;
    /// repeated triples are summed. `unit` is a dense coefficient vector.
    /// Fails on out-of-range indices, non-positive weights, non-associativity or a
    /// unit that does not act as the identity. Presentations failing the
    /// submultiplicativity certificate are accepted with
    /// [`is_submultiplicative`](Self::is_submultiplicative) returning `false`.
    pub fn new(
        labels: Vec<String>,
        weights: Vec<S>,
        products: impl IntoIterator<Item = (usize, usize, usize, S)>,
        unit: Option<Vec<S>>,
        tol: f64,
    ) -> Result<Self> {
        let n = labels.len();
        if weights.len() != n {
            return Err(Error::Invariant(format!("{} weights for {} basis elements", weights.len(), n)));
        }
        if let Some(w) = weights.iter().position(|w| *w <= S::zero()) {
            return Err(Error::Invariant(format!("weight of `{}` is not positive", labels[w])));
        }
        let mut raw: Vec<Vec<(usize, S)>> = vec![Vec::new(); n * n];
        for (i, j, k, c) in products {
            if i >= n || j >= n || k >= n {
                return Err(Error::Invariant(format!("product index ({i}, {j}, {k}) out of range for dimension {n}")));
            }
            raw[i * n + j].push((k, c));
        }
        let table = raw.into_iter().map(|entries| linalg::sparse_from_entries(entries, tol)).collect();
        let unit = match unit {
            Some(u) if u.len() != n => {
                return Err(Error::Invariant(format!("unit has {} coefficients, expected {n}", u.len())))
            }
            Some(u) => Some(u),
            None => None,
        };
        let alg = Self::assemble(None, labels, weights, table, unit, tol);
        alg.validate()?;
        Ok(alg)
    }

    fn assemble(
        name: Option<String>,
        labels: Vec<String>,
        weights: Vec<S>,
        table: Vec<SparseRow<S>>,
        unit: Option<Vec<S>>,
        tol: f64,
    ) -> Self {
        let mut parts: Vec<String> = labels.clone();
        parts.extend(weights.iter().map(|w| w.render()));
        for (idx, entries) in table.iter().enumerate() {
            for (k, c) in entries {
                parts.push(format!("{idx}:{k}:{}", c.render()));
            }
        }
        if let Some(u) = &unit {
            parts.push("unit".into());
            parts.extend(u.iter().map(|c| c.render()));
        }
        let id = SpaceId::from_content("algebra", &parts);
        let unit = unit.map(|u| Element::from_dense(id, &u));
        let mut alg = AlgebraPresentation { id, name, labels, weights, table, unit, tol, submultiplicative: true };
        alg.submultiplicative = alg.check_submultiplicative();
        alg
    }

    fn check_submultiplicative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let lhs = self.table[i * n + j]
                    .iter()
                    .fold(S::zero(), |acc, (k, c)| acc + c.abs() * self.weights[*k].clone());
                let rhs = self.weights[i].clone() * self.weights[j].clone();
                lhs <= rhs || (lhs - rhs).is_negligible(self.tol)
            })
        })
    }

    /// Checks associativity on all basis triples and the unit laws.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let bij = self.basis_product(i, j);
                for k in 0..n {
                    let left = self.mul_element_basis(&bij, k);
                    let right = self.mul_basis_element(i, &self.basis_product(j, k));
                    if !left.approx_eq(&right, self.tol) {
                        return Err(Error::Invariant(format!(
                            "not associative on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        if let Some(u) = &self.unit {
            for i in 0..n {
                let b = self.basis(i);
                let ub = self.multiply(u, &b)?;
                let bu = self.multiply(&b, u)?;
                if !ub.approx_eq(&b, self.tol) || !bu.approx_eq(&b, self.tol) {
                    return Err(Error::Invariant(format!("unit does not fix `{}`", self.labels[i])));
                }
            }
        }
        Ok(())
    }

    pub fn id(&self) -> SpaceId {
        self.id
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Zero tolerance used for float-mode decisions (ignored for exact scalars).
    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tol = tol;
        self.submultiplicative = self.check_submultiplicative();
        self
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn weights(&self) -> &[S] {
        &self.weights
    }

    pub fn unit(&self) -> Option<&Element<S>> {
        self.unit.as_ref()
    }

    /// Whether `sum_k |c_{ijk}| w_k <= w_i w_j` holds for every basis pair.
    pub fn is_submultiplicative(&self) -> bool {
        self.submultiplicative
    }

    /// Structure constants of `b_i b_j`.
    pub fn structure(&self, i: usize, j: usize) -> &[(usize, S)] {
        &self.table[i * self.dim() + j]
    }

    /// All non-zero structure constants as `(i, j, k, c)`.
    pub fn products(&self) -> impl Iterator<Item = (usize, usize, usize, &S)> {
        let n = self.dim();
        self.table
            .iter()
            .enumerate()
            .flat_map(move |(idx, row)| row.iter().map(move |(k, c)| (idx / n, idx % n, *k, c)))
    }

    pub fn basis(&self, i: usize) -> Element<S> {
        Element::basis(self.id, i)
    }

    pub fn basis_elements(&self) -> Vec<Element<S>> {
        (0..self.dim()).map(|i| self.basis(i)).collect()
    }

    pub fn zero(&self) -> Element<S> {
        Element::zero(self.id)
    }

    /// Element from sparse `(index, coefficient)` terms; fails on out-of-range indices.
    pub fn element(&self, terms: impl IntoIterator<Item = (usize, S)>) -> Result<Element<S>> {
        let el = Element::from_terms(self.id, terms);
        self.check(&el)?;
        Ok(el)
    }

    pub fn from_dense(&self, dense: &[S]) -> Result<Element<S>> {
        if dense.len() != self.dim() {
            return Err(Error::InvalidArgument(format!("{} coefficients for dimension {}", dense.len(), self.dim())));
        }
        Ok(Element::from_dense(self.id, dense))
    }

    /// Confirms `el` lives over this presentation.
    pub fn check(&self, el: &Element<S>) -> Result<()> {
        if el.space() != self.id {
            return Err(Error::mismatch("element is not over this algebra"));
        }
        if let Some(m) = el.max_index() {
            if m >= self.dim() {
                return Err(Error::InvalidArgument(format!("basis index {m} out of range")));
            }
        }
        Ok(())
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Element<S> {
        Element::from_terms(self.id, self.structure(i, j).iter().cloned())
    }

    fn mul_element_basis(&self, a: &Element<S>, j: usize) -> Element<S> {
        let terms = a.terms().flat_map(|(i, ai)| {
            self.structure(i, j).iter().map(move |(k, c)| (*k, ai.clone() * c.clone()))
        });
        Element::from_terms(self.id, terms.collect::<Vec<_>>()).chop(self.tol)
    }

    fn mul_basis_element(&self, i: usize, b: &Element<S>) -> Element<S> {
        let terms = b.terms().flat_map(|(j, bj)| {
            self.structure(i, j).iter().map(move |(k, c)| (*k, bj.clone() * c.clone()))
        });
        Element::from_terms(self.id, terms.collect::<Vec<_>>()).chop(self.tol)
    }

    /// Product `ab`, expanded bilinearly through the structure constants.
    pub fn multiply(&self, a: &Element<S>, b: &Element<S>) -> Result<Element<S>> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn mul_unchecked(&self, a: &Element<S>, b: &Element<S>) -> Element<S> {
        let mut terms = Vec::new();
        for (i, ai) in a.terms() {
            for (j, bj) in b.terms() {
                let ab = ai.clone() * bj.clone();
                for (k, c) in self.structure(i, j) {
                    terms.push((*k, ab.clone() * c.clone()));
                }
            }
        }
        Element::from_terms(self.id, terms).chop(self.tol)
    }

    /// `[a, b] = ab - ba`.
    pub fn commutator(&self, a: &Element<S>, b: &Element<S>) -> Result<Element<S>> {
        Ok(&self.multiply(a, b)? - &self.multiply(b, a)?)
    }

    /// Weighted l1 norm `sum_i |a_i| w_i`.
    pub fn norm(&self, a: &Element<S>) -> S {
        weighted_l1(a, &self.weights)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i + 1..n).all(|j| self.basis_product(i, j).approx_eq(&self.basis_product(j, i), self.tol)))
    }

    /// l1 unitization: adjoins `e` (weight 1) as a new last basis vector, so
    /// `||a + lambda e|| = ||a|| + |lambda|`. Applied whether or not the algebra is unital.
    pub fn unitize(&self) -> Self {
        let n = self.dim();
        let m = n + 1;
        let mut table: Vec<SparseRow<S>> = vec![Vec::new(); m * m];
        for i in 0..n {
            for j in 0..n {
                table[i * m + j] = self.structure(i, j).to_vec();
            }
            table[i * m + n] = vec![(i, S::one())];
            table[n * m + i] = vec![(i, S::one())];
        }
        table[n * m + n] = vec![(n, S::one())];
        let mut labels = self.labels.clone();
        let mut e_label = "e".to_string();
        while labels.contains(&e_label) {
            e_label.push('#');
        }
        labels.push(e_label);
        let mut weights = self.weights.clone();
        weights.push(S::one());
        let mut unit = vec![S::zero(); m];
        unit[n] = S::one();
        let name = self.name.as_ref().map(|s| format!("{s}#"));
        Self::assemble(name, labels, weights, table, Some(unit), self.tol)
    }

    /// Index of the adjoined unit in [`unitize`](Self::unitize)'s output.
    pub fn unitization_index(&self) -> usize {
        self.dim()
    }

    /// Canonical inclusion `A -> A#` of an element.
    pub fn include_in_unitization(&self, a: &Element<S>, sharp: &Self) -> Result<Element<S>> {
        self.check(a)?;
        if sharp.dim() != self.dim() + 1 || sharp.id != self.unitize().id {
            return Err(Error::mismatch("target is not the unitization of this algebra"));
        }
        Ok(a.retag(sharp.id))
    }

    /// Opposite algebra: same space and weights, product `a o b = ba`.
    pub fn opposite(&self) -> Self {
        let n = self.dim();
        let mut table = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = self.structure(j, i).to_vec();
            }
        }
        let unit = self.unit.as_ref().map(|u| u.to_dense(n));
        let name = self.name.as_ref().map(|s| match s.strip_suffix("^op") {
            Some(base) => base.to_string(),
            None => format!("{s}^op"),
        });
        Self::assemble(name, self.labels.clone(), self.weights.clone(), table, unit, self.tol)
    }

    /// Basis of the centre `{a : a b_i = b_i a for all i}`, by exact elimination.
    pub fn center(&self) -> Vec<Element<S>> {
        let n = self.dim();
        // Row (i, k): coefficient of b_k in a b_i - b_i a, as a linear form in a.
        let mut rows: Vec<SparseRow<S>> = vec![Vec::new(); n * n];
        let mut raw: Vec<Vec<(usize, S)>> = vec![Vec::new(); n * n];
        for i in 0..n {
            for l in 0..n {
                for (k, c) in self.structure(l, i) {
                    raw[i * n + k].push((l, c.clone()));
                }
                for (k, c) in self.structure(i, l) {
                    raw[i * n + k].push((l, -c.clone()));
                }
            }
        }
        for (slot, entries) in rows.iter_mut().zip(raw) {
            *slot = linalg::sparse_from_entries(entries, self.tol);
        }
        linalg::null_space(&rows, n, self.tol)
            .into_iter()
            .map(|v| Element::from_terms(self.id, v))
            .collect()
    }

    /// Reduced basis of `span{b_i b_j - b_j b_i}`.
    pub fn commutator_subspace(&self) -> Vec<Element<S>> {
        self.commutator_echelon()
            .rows()
            .iter()
            .map(|r| Element::from_terms(self.id, r.iter().cloned()))
            .collect()
    }

    /// Commutators of basis pairs `i < j`, in lexicographic order.
    pub fn basis_commutators(&self) -> Vec<((usize, usize), Element<S>)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let c = &self.basis_product(i, j) - &self.basis_product(j, i);
                out.push(((i, j), c.chop(self.tol)));
            }
        }
        out
    }

    pub(crate) fn commutator_echelon(&self) -> linalg::Echelon<S> {
        let mut e = linalg::Echelon::new(self.dim(), self.tol);
        for (_, c) in self.basis_commutators() {
            e.insert(&c.to_sparse_row());
        }
        e
    }

    /// Whether `a` commutes with every basis element.
    pub fn is_central(&self, a: &Element<S>) -> Result<bool> {
        self.check(a)?;
        Ok((0..self.dim()).all(|i| {
            let b = self.basis(i);
            self.mul_unchecked(a, &b).approx_eq(&self.mul_unchecked(&b, a), self.tol)
        }))
    }
}

fn matrix_label(i: usize, j: usize, n: usize) -> String {
    if n < 10 {
        format!("E{}{}", i + 1, j + 1)
    } else {
        format!("E{},{}", i + 1, j + 1)
    }
}

/// Builders for the concrete algebras used throughout the crate.
impl<S: Scalar> AlgebraPresentation<S> {
    /// `M_n` in the matrix-unit basis `E_ij` (index `i * n + j`, zero-based), unit weights.
    pub fn matrix(n: usize) -> Self {
        let dim = n * n;
        let mut table = vec![Vec::new(); dim * dim];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    // E_ij E_jl = E_il
                    table[(i * n + j) * dim + (j * n + l)] = vec![(i * n + l, S::one())];
                }
            }
        }
        let labels = (0..dim).map(|k| matrix_label(k / n, k % n, n)).collect();
        let mut unit = vec![S::zero(); dim];
        for i in 0..n {
            unit[i * n + i] = S::one();
        }
        let unit = if n > 0 { Some(unit) } else { None };
        Self::assemble(Some(format!("M{n}")), labels, vec![S::one(); dim], table, unit, crate::scalar::DEFAULT_FLOAT_TOL)
    }

    /// Index of `E_ij` (zero-based `i`, `j`) in [`matrix`](Self::matrix)`(n)`.
    pub fn matrix_unit_index(n: usize, i: usize, j: usize) -> usize {
        i * n + j
    }

    /// Upper-triangular `n x n` matrices, basis `E_ij` with `i <= j` in row-major order.
    pub fn upper_triangular(n: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let index = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).expect("upper pair");
        let dim = pairs.len();
        let mut table = vec![Vec::new(); dim * dim];
        for (a, &(i, j)) in pairs.iter().enumerate() {
            for (b, &(k, l)) in pairs.iter().enumerate() {
                if j == k {
                    table[a * dim + b] = vec![(index(i, l), S::one())];
                }
            }
        }
        let labels = pairs.iter().map(|&(i, j)| matrix_label(i, j, n)).collect();
        let mut unit = vec![S::zero(); dim];
        for i in 0..n {
            unit[index(i, i)] = S::one();
        }
        let unit = if n > 0 { Some(unit) } else { None };
        Self::assemble(Some(format!("T{n}")), labels, vec![S::one(); dim], table, unit, crate::scalar::DEFAULT_FLOAT_TOL)
    }

    /// The one-dimensional algebra of scalars.
    pub fn scalars() -> Self {
        Self::assemble(
            Some("C".into()),
            vec!["1".into()],
            vec![S::one()],
            vec![vec![(0, S::one())]],
            Some(vec![S::one()]),
            crate::scalar::DEFAULT_FLOAT_TOL,
        )
    }

    /// The zero-dimensional algebra.
    pub fn zero_algebra() -> Self {
        Self::assemble(Some("0".into()), Vec::new(), Vec::new(), Vec::new(), None, crate::scalar::DEFAULT_FLOAT_TOL)
    }

    pub(crate) fn from_trusted_table(
        name: Option<String>,
        labels: Vec<String>,
        weights: Vec<S>,
        table: Vec<SparseRow<S>>,
        unit: Option<Vec<S>>,
        tol: f64,
    ) -> Self {
        Self::assemble(name, labels, weights, table, unit, tol)
    }
}

/// Finite direct sum with block embeddings and projections.
///
/// Norms use the l1 combination of the component weights.
#[derive(Clone, Debug)]
pub struct DirectSum<S> {
    algebra: AlgebraPresentation<S>,
    components: Vec<SpaceId>,
    offsets: Vec<usize>,
    dims: Vec<usize>,
}

impl<S: Scalar> DirectSum<S> {
    pub fn new(parts: &[&AlgebraPresentation<S>]) -> Self {
        let dims: Vec<usize> = parts.iter().map(|p| p.dim()).collect();
        let mut offsets = Vec::with_capacity(parts.len());
        let mut total = 0;
        for d in &dims {
            offsets.push(total);
            total += d;
        }
        let mut table = vec![Vec::new(); total * total];
        let mut labels = Vec::with_capacity(total);
        let mut weights = Vec::with_capacity(total);
        for (c, part) in parts.iter().enumerate() {
            let off = offsets[c];
            for i in 0..part.dim() {
                labels.push(format!("{}[{}]", part.label(i), c + 1));
                weights.push(part.weights()[i].clone());
                for j in 0..part.dim() {
                    table[(off + i) * total + off + j] =
                        part.structure(i, j).iter().map(|(k, v)| (off + k, v.clone())).collect();
                }
            }
        }
        let unit = if parts.iter().all(|p| p.unit().is_some()) && !parts.is_empty() {
            let mut u = vec![S::zero(); total];
            for (c, part) in parts.iter().enumerate() {
                for (i, v) in part.unit().expect("checked").terms() {
                    u[offsets[c] + i] = v.clone();
                }
            }
            Some(u)
        } else {
            None
        };
        let name = if parts.iter().all(|p| p.name().is_some()) {
            Some(parts.iter().map(|p| p.name().unwrap_or_default()).collect::<Vec<_>>().join("+"))
        } else {
            None
        };
        let tol = parts.iter().map(|p| p.tol()).fold(crate::scalar::DEFAULT_FLOAT_TOL, f64::max);
        let algebra = AlgebraPresentation::from_trusted_table(name, labels, weights, table, unit, tol);
        DirectSum { algebra, components: parts.iter().map(|p| p.id()).collect(), offsets, dims }
    }

    pub fn algebra(&self) -> &AlgebraPresentation<S> {
        &self.algebra
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn offset(&self, c: usize) -> usize {
        self.offsets[c]
    }

    pub fn component_dim(&self, c: usize) -> usize {
        self.dims[c]
    }

    pub fn component_id(&self, c: usize) -> SpaceId {
        self.components[c]
    }

    /// Natural embedding of component `c`.
    pub fn embed(&self, c: usize, a: &Element<S>) -> Result<Element<S>> {
        if a.space() != self.components[c] {
            return Err(Error::mismatch("element is not over the named component"));
        }
        let off = self.offsets[c];
        Ok(Element::from_terms(self.algebra.id(), a.terms().map(|(i, v)| (off + i, v.clone()))))
    }

    /// Block projection `P_c` onto component `c`.
    pub fn project(&self, c: usize, a: &Element<S>) -> Result<Element<S>> {
        self.algebra.check(a)?;
        let (off, d) = (self.offsets[c], self.dims[c]);
        Ok(Element::from_terms(
            self.components[c],
            a.terms().filter(|(i, _)| *i >= off && *i < off + d).map(|(i, v)| (i - off, v.clone())),
        ))
    }

    /// Which component a basis index of the sum belongs to.
    pub fn component_of(&self, index: usize) -> usize {
        self.offsets.iter().rposition(|&o| o <= index).expect("index in range")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Rational;

    fn q(p: i64, d: i64) -> Q {
        Q::from_ratio(p, d)
    }

    fn m2() -> AlgebraPresentation<Q> {
        AlgebraPresentation::matrix(2)
    }

    fn e(alg: &AlgebraPresentation<Q>, label: &str) -> Element<Q> {
        alg.basis(alg.index_of(label).unwrap())
    }

    #[test]
    fn matrix_unit_products() {
        let a = m2();
        assert_eq!(a.multiply(&e(&a, "E12"), &e(&a, "E21")).unwrap(), e(&a, "E11"));
        // (2 E11 + E12) E22 = E12
        let x = a.element(vec![(0, q(2, 1)), (1, q(1, 1))]).unwrap();
        assert_eq!(a.multiply(&x, &e(&a, "E22")).unwrap(), e(&a, "E12"));
        assert!(a.multiply(&a.zero(), &x).unwrap().is_zero());
    }

    #[test]
    fn norms() {
        let a = m2();
        assert_eq!(a.norm(&e(&a, "E12")), q(1, 1));
        let x = a.element(vec![(0, q(2, 1)), (3, q(-3, 1))]).unwrap();
        assert_eq!(a.norm(&x), q(5, 1));
        assert_eq!(a.norm(&a.zero()), q(0, 1));
    }

    #[test]
    fn builtins_are_valid() {
        for n in 1..=3 {
            AlgebraPresentation::<Q>::matrix(n).validate().unwrap();
            AlgebraPresentation::<Q>::upper_triangular(n).validate().unwrap();
            assert!(AlgebraPresentation::<Q>::matrix(n).is_submultiplicative());
        }
        AlgebraPresentation::<Q>::scalars().validate().unwrap();
    }

    #[test]
    fn unitization() {
        let a = m2();
        let s = a.unitize();
        assert_eq!(s.dim(), 5);
        let unit = s.unit().unwrap().clone();
        let x = s.element(vec![(4, q(1, 1)), (0, q(1, 1))]).unwrap();
        assert_eq!(s.norm(&x), q(2, 1));
        assert_eq!(s.norm(&unit), q(1, 1));
        for b in s.basis_elements() {
            assert_eq!(s.multiply(&unit, &b).unwrap(), b);
            assert_eq!(s.multiply(&b, &unit).unwrap(), b);
        }
        s.validate().unwrap();
        let z = AlgebraPresentation::<Q>::zero_algebra().unitize();
        assert_eq!(z.dim(), 1);
        assert!(z.is_commutative());
        assert_eq!(z.multiply(&z.basis(0), &z.basis(0)).unwrap(), z.basis(0));
    }

    #[test]
    fn opposite_algebra() {
        let a = m2();
        let op = a.opposite();
        assert_eq!(op.multiply(&e(&op, "E12"), &e(&op, "E21")).unwrap(), e(&op, "E22"));
        assert_eq!(op.opposite().id(), a.id());
        let c: AlgebraPresentation<Q> = AlgebraPresentation::scalars();
        assert_eq!(c.opposite().id(), c.id());
    }

    #[test]
    fn centers() {
        let a = m2();
        let z = a.center();
        assert_eq!(z.len(), 1);
        assert_eq!(z[0], a.unit().unwrap().clone());

        let t2: AlgebraPresentation<Q> = AlgebraPresentation::upper_triangular(2);
        let z = t2.center();
        assert_eq!(z.len(), 1);
        assert_eq!(z[0], t2.unit().unwrap().clone());

        let two = DirectSum::new(&[&AlgebraPresentation::<Q>::scalars(), &AlgebraPresentation::scalars()]);
        assert_eq!(two.algebra().center().len(), 2);
    }

    #[test]
    fn commutator_subspaces() {
        let a = m2();
        let c = a.commutator_subspace();
        assert_eq!(c.len(), 3);
        // every commutator is trace-zero
        for v in &c {
            assert_eq!(v.coeff(0) + v.coeff(3), q(0, 1));
        }
        assert_eq!(AlgebraPresentation::<Q>::matrix(3).commutator_subspace().len(), 8);
        assert!(AlgebraPresentation::<Q>::scalars().commutator_subspace().is_empty());
    }

    #[test]
    fn rejects_non_associative_and_bad_unit() {
        // b0 b0 = b1, b1 b0 = b0, others zero: (b0 b0) b0 = b0 but b0 (b0 b0) = 0.
        let bad = AlgebraPresentation::<Q>::new(
            vec!["a".into(), "b".into()],
            vec![q(1, 1), q(1, 1)],
            vec![(0, 0, 1, q(1, 1)), (1, 0, 0, q(1, 1))],
            None,
            0.0,
        );
        assert!(matches!(bad, Err(Error::Invariant(_))));
        let bad_unit = AlgebraPresentation::<Q>::new(
            vec!["a".into()],
            vec![q(1, 1)],
            vec![(0, 0, 0, q(1, 1))],
            Some(vec![q(2, 1)]),
            0.0,
        );
        assert!(matches!(bad_unit, Err(Error::Invariant(_))));
    }

    #[test]
    fn submultiplicativity_flag() {
        // b b = 3 b with weight 1 violates the certificate but is accepted.
        let a = AlgebraPresentation::<Q>::new(vec!["b".into()], vec![q(1, 1)], vec![(0, 0, 0, q(3, 1))], None, 0.0)
            .unwrap();
        assert!(!a.is_submultiplicative());
        let a = a.clone().with_tolerance(0.0);
        assert!(!a.is_submultiplicative());
    }

    #[test]
    fn direct_sum_blocks() {
        let m2: AlgebraPresentation<Q> = AlgebraPresentation::matrix(2);
        let m3: AlgebraPresentation<Q> = AlgebraPresentation::matrix(3);
        let sum = DirectSum::new(&[&m2, &m3]);
        assert_eq!(sum.algebra().dim(), 13);
        sum.algebra().validate().unwrap();
        let x = sum.embed(1, &m3.basis(4)).unwrap();
        assert_eq!(sum.project(1, &x).unwrap(), m3.basis(4));
        assert!(sum.project(0, &x).unwrap().is_zero());
        assert_eq!(sum.component_of(3), 0);
        assert_eq!(sum.component_of(4), 1);
        let u = sum.algebra().unit().unwrap();
        assert_eq!(sum.algebra().norm(u), q(5, 1));
    }
}

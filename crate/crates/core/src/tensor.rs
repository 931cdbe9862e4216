//! Two-leg tensors `A (x) A` and their module structure.
//!
//! For weighted-l1 presentations the projective tensor product is again a
//! weighted-l1 space on basis pairs, with weight `w_i w_j` on `b_i (x) b_j`,
//! so the projective norm is computed exactly.

use std::collections::BTreeMap;

use crate::algebra::AlgebraPresentation;
use crate::element::{Element, SpaceId};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Sparse coefficient table over basis pairs `b_i (x) b_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor2<S> {
    space: SpaceId,
    coeffs: BTreeMap<(usize, usize), S>,
}

impl<S: Scalar> Tensor2<S> {
    pub fn zero(space: SpaceId) -> Self {
        Tensor2 { space, coeffs: BTreeMap::new() }
    }

    /// Sums repeated pairs and drops zeros.
    pub fn from_terms(space: SpaceId, terms: impl IntoIterator<Item = (usize, usize, S)>) -> Self {
        let mut coeffs: BTreeMap<(usize, usize), S> = BTreeMap::new();
        for (i, j, v) in terms {
            let slot = coeffs.entry((i, j)).or_insert_with(S::zero);
            *slot = slot.clone() + v;
        }
        coeffs.retain(|_, v| !v.is_zero());
        Tensor2 { space, coeffs }
    }

    /// Elementary tensor `a (x) b`.
    pub fn elementary(a: &Element<S>, b: &Element<S>) -> Result<Self> {
        a.same_space(b)?;
        let terms = a
            .terms()
            .flat_map(|(i, x)| b.terms().map(move |(j, y)| (i, j, x.clone() * y.clone())))
            .collect::<Vec<_>>();
        Ok(Self::from_terms(a.space(), terms))
    }

    pub fn space(&self) -> SpaceId {
        self.space
    }

    pub fn coeff(&self, i: usize, j: usize) -> S {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.coeffs.iter().map(|((i, j), v)| (*i, *j, v))
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.coeffs.keys().map(|&(i, j)| i.max(j)).max()
    }

    /// The flip `(a (x) b)^o = b (x) a`.
    pub fn flip(&self) -> Self {
        Tensor2 { space: self.space, coeffs: self.coeffs.iter().map(|((i, j), v)| ((*j, *i), v.clone())).collect() }
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.terms().all(|(i, j, v)| v.approx_eq(&self.coeff(j, i), tol))
    }

    pub fn scale(&self, factor: &S) -> Self {
        Self::from_terms(self.space, self.terms().map(|(i, j, v)| (i, j, v.clone() * factor.clone())).collect::<Vec<_>>())
    }

    /// `self + alpha * other`.
    pub fn combine(&self, other: &Self, alpha: &S) -> Self {
        assert_eq!(self.space, other.space, "tensors over different spaces");
        let mut coeffs = self.coeffs.clone();
        for (k, v) in &other.coeffs {
            let slot = coeffs.entry(*k).or_insert_with(S::zero);
            *slot = slot.clone() + alpha.clone() * v.clone();
        }
        coeffs.retain(|_, v| !v.is_zero());
        Tensor2 { space: self.space, coeffs }
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        if self.space != other.space {
            return Err(Error::mismatch("tensors belong to different presentations"));
        }
        Ok(self.combine(other, &-S::one()))
    }

    pub fn chop(mut self, tol: f64) -> Self {
        self.coeffs.retain(|_, v| !v.is_negligible(tol));
        self
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.space == other.space && self.combine(other, &-S::one()).chop(tol).is_zero()
    }

    pub(crate) fn retag(&self, space: SpaceId) -> Self {
        Tensor2 { space, coeffs: self.coeffs.clone() }
    }
}

/// Module actions of the algebra on `A (x) A`.
impl<S: Scalar> AlgebraPresentation<S> {
    pub fn check_tensor(&self, t: &Tensor2<S>) -> Result<()> {
        if t.space() != self.id() {
            return Err(Error::mismatch("tensor is not over this algebra"));
        }
        if let Some(m) = t.max_index() {
            if m >= self.dim() {
                return Err(Error::InvalidArgument(format!("basis index {m} out of range")));
            }
        }
        Ok(())
    }

    fn check_pair(&self, a: &Element<S>, t: &Tensor2<S>) -> Result<()> {
        self.check(a)?;
        self.check_tensor(t)
    }

    /// `a (b (x) c) = ab (x) c`.
    pub fn left_action(&self, a: &Element<S>, t: &Tensor2<S>) -> Result<Tensor2<S>> {
        self.check_pair(a, t)?;
        let mut terms = Vec::new();
        for (i, ai) in a.terms() {
            for (j, k, c) in t.terms() {
                let s = ai.clone() * c.clone();
                for (l, v) in self.structure(i, j) {
                    terms.push((*l, k, s.clone() * v.clone()));
                }
            }
        }
        Ok(Tensor2::from_terms(self.id(), terms).chop(self.tol()))
    }

    /// `(b (x) c) a = b (x) ca`.
    pub fn right_action(&self, t: &Tensor2<S>, a: &Element<S>) -> Result<Tensor2<S>> {
        self.check_pair(a, t)?;
        let mut terms = Vec::new();
        for (i, ai) in a.terms() {
            for (j, k, c) in t.terms() {
                let s = ai.clone() * c.clone();
                for (l, v) in self.structure(k, i) {
                    terms.push((j, *l, s.clone() * v.clone()));
                }
            }
        }
        Ok(Tensor2::from_terms(self.id(), terms).chop(self.tol()))
    }

    /// `a o (b (x) c) = b (x) ac`.
    pub fn circ_left(&self, a: &Element<S>, t: &Tensor2<S>) -> Result<Tensor2<S>> {
        self.check_pair(a, t)?;
        let mut terms = Vec::new();
        for (i, ai) in a.terms() {
            for (j, k, c) in t.terms() {
                let s = ai.clone() * c.clone();
                for (l, v) in self.structure(i, k) {
                    terms.push((j, *l, s.clone() * v.clone()));
                }
            }
        }
        Ok(Tensor2::from_terms(self.id(), terms).chop(self.tol()))
    }

    /// `(b (x) c) o a = ba (x) c`.
    pub fn circ_right(&self, t: &Tensor2<S>, a: &Element<S>) -> Result<Tensor2<S>> {
        self.check_pair(a, t)?;
        let mut terms = Vec::new();
        for (i, ai) in a.terms() {
            for (j, k, c) in t.terms() {
                let s = ai.clone() * c.clone();
                for (l, v) in self.structure(j, i) {
                    terms.push((*l, k, s.clone() * v.clone()));
                }
            }
        }
        Ok(Tensor2::from_terms(self.id(), terms).chop(self.tol()))
    }

    /// Product map `pi(a (x) b) = ab`.
    pub fn pi(&self, t: &Tensor2<S>) -> Result<Element<S>> {
        self.check_tensor(t)?;
        let terms = t
            .terms()
            .flat_map(|(j, k, c)| self.structure(j, k).iter().map(move |(l, v)| (*l, c.clone() * v.clone())))
            .collect::<Vec<_>>();
        Ok(Element::from_terms(self.id(), terms).chop(self.tol()))
    }

    /// Opposite product map `pi^o(b (x) c) = cb`.
    pub fn pi_op(&self, t: &Tensor2<S>) -> Result<Element<S>> {
        self.check_tensor(t)?;
        let terms = t
            .terms()
            .flat_map(|(j, k, c)| self.structure(k, j).iter().map(move |(l, v)| (*l, c.clone() * v.clone())))
            .collect::<Vec<_>>();
        Ok(Element::from_terms(self.id(), terms).chop(self.tol()))
    }

    /// Exact projective norm `sum |c_ij| w_i w_j`.
    pub fn proj_norm(&self, t: &Tensor2<S>) -> S {
        let w = self.weights();
        t.terms().fold(S::zero(), |acc, (i, j, c)| acc + c.abs() * w[i].clone() * w[j].clone())
    }

    pub fn basis_tensor(&self, i: usize, j: usize) -> Tensor2<S> {
        Tensor2::from_terms(self.id(), [(i, j, S::one())])
    }

    pub fn tensor(&self, terms: impl IntoIterator<Item = (usize, usize, S)>) -> Result<Tensor2<S>> {
        let t = Tensor2::from_terms(self.id(), terms);
        self.check_tensor(&t)?;
        Ok(t)
    }
}

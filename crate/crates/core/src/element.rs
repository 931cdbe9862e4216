use std::collections::BTreeMap;
use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Identity of a finite-dimensional space (algebra or bimodule).
///
/// Ids are content hashes, so rebuilding the same presentation (for example
/// `opposite(opposite(A))`) yields the same id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpaceId(u64);

impl SpaceId {
    pub(crate) fn from_content(tag: &str, parts: &[String]) -> Self {
        let mut h = DefaultHasher::new();
        tag.hash(&mut h);
        parts.hash(&mut h);
        SpaceId(h.finish())
    }

    pub fn raw(self) -> u64 {
        self.0
    }
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

/// Sparse coefficient vector over the basis of an algebra or bimodule.
///
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<S> {
    space: SpaceId,
    coeffs: BTreeMap<usize, S>,
}

impl<S: Scalar> Element<S> {
    pub fn zero(space: SpaceId) -> Self {
        Element { space, coeffs: BTreeMap::new() }
    }

    pub fn basis(space: SpaceId, index: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(index, S::one());
        Element { space, coeffs }
    }

    /// Sums repeated indices and drops zeros.
    pub fn from_terms(space: SpaceId, terms: impl IntoIterator<Item = (usize, S)>) -> Self {
        let mut coeffs: BTreeMap<usize, S> = BTreeMap::new();
        for (i, v) in terms {
            let slot = coeffs.entry(i).or_insert_with(S::zero);
            *slot = slot.clone() + v;
        }
        coeffs.retain(|_, v| !v.is_zero());
        Element { space, coeffs }
    }

    pub fn from_dense(space: SpaceId, dense: &[S]) -> Self {
        Self::from_terms(space, dense.iter().cloned().enumerate())
    }

    pub fn space(&self) -> SpaceId {
        self.space
    }

    pub fn coeff(&self, index: usize) -> S {
        self.coeffs.get(&index).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &S)> {
        self.coeffs.iter().map(|(i, v)| (*i, v))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn to_dense(&self, dim: usize) -> Vec<S> {
        let mut out = vec![S::zero(); dim];
        for (i, v) in &self.coeffs {
            out[*i] = v.clone();
        }
        out
    }

    pub fn to_sparse_row(&self) -> Vec<(usize, S)> {
        self.coeffs.iter().map(|(i, v)| (*i, v.clone())).collect()
    }

    pub fn scale(&self, factor: &S) -> Self {
        Self::from_terms(self.space, self.coeffs.iter().map(|(i, v)| (*i, v.clone() * factor.clone())))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        Ok(self.combine(other, &S::one()))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_space(other)?;
        Ok(self.combine(other, &-S::one()))
    }

    /// `self + alpha * other`.
    pub fn combine(&self, other: &Self, alpha: &S) -> Self {
        assert_eq!(self.space, other.space, "elements over different spaces");
        let mut coeffs = self.coeffs.clone();
        for (i, v) in &other.coeffs {
            let slot = coeffs.entry(*i).or_insert_with(S::zero);
            *slot = slot.clone() + alpha.clone() * v.clone();
        }
        coeffs.retain(|_, v| !v.is_zero());
        Element { space: self.space, coeffs }
    }

    /// Drops coefficients within `tol` of zero (no-op for exact scalars).
    pub fn chop(mut self, tol: f64) -> Self {
        self.coeffs.retain(|_, v| !v.is_negligible(tol));
        self
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.space == other.space && self.combine(other, &-S::one()).chop(tol).is_zero()
    }

    /// Re-tags the element onto another space of at least the same dimension.
    pub(crate) fn retag(&self, space: SpaceId) -> Self {
        Element { space, coeffs: self.coeffs.clone() }
    }

    pub(crate) fn same_space(&self, other: &Self) -> Result<()> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(Error::mismatch("elements belong to different presentations"))
        }
    }
}

impl<S: Scalar> Add for &Element<S> {
    type Output = Element<S>;

    fn add(self, rhs: Self) -> Element<S> {
        self.combine(rhs, &S::one())
    }
}

impl<S: Scalar> Sub for &Element<S> {
    type Output = Element<S>;

    fn sub(self, rhs: Self) -> Element<S> {
        self.combine(rhs, &-S::one())
    }
}

impl<S: Scalar> Neg for &Element<S> {
    type Output = Element<S>;

    fn neg(self) -> Element<S> {
        self.scale(&-S::one())
    }
}

/// Weighted l1 norm of a coefficient vector.
pub(crate) fn weighted_l1<S: Scalar>(el: &Element<S>, weights: &[S]) -> S {
    el.terms().fold(S::zero(), |acc, (i, v)| acc + v.abs() * weights[i].clone())
}

use crate::element::{weighted_l1, Element, SpaceId};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Linear map between finite-dimensional spaces, stored as a dense
/// `rows x cols` matrix in row-major order (column `j` is the image of `b_j`).
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap<S> {
    domain: SpaceId,
    codomain: SpaceId,
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> LinearMap<S> {
    pub fn new(domain: SpaceId, codomain: SpaceId, rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "matrix has {} entries, expected {rows} x {cols}",
                data.len()
            )));
        }
        Ok(LinearMap { domain, codomain, rows, cols, data })
    }

    pub fn zero(domain: SpaceId, codomain: SpaceId, rows: usize, cols: usize) -> Self {
        LinearMap { domain, codomain, rows, cols, data: vec![S::zero(); rows * cols] }
    }

    /// Builds the map sending `b_j` to `images[j]`.
    pub fn from_images(domain: SpaceId, codomain: SpaceId, rows: usize, images: &[Element<S>]) -> Result<Self> {
        let cols = images.len();
        let mut m = Self::zero(domain, codomain, rows, cols);
        for (j, img) in images.iter().enumerate() {
            if img.space() != codomain {
                return Err(Error::mismatch("image is not in the codomain"));
            }
            for (i, v) in img.terms() {
                if i >= rows {
                    return Err(Error::InvalidArgument(format!("image index {i} out of range")));
                }
                m.data[i * cols + j] = v.clone();
            }
        }
        Ok(m)
    }

    /// Builds a map from a flat unknown vector indexed `r * cols + c`.
    pub(crate) fn from_flat(domain: SpaceId, codomain: SpaceId, rows: usize, cols: usize, flat: &[(usize, S)]) -> Self {
        let mut m = Self::zero(domain, codomain, rows, cols);
        for (k, v) in flat {
            m.data[*k] = v.clone();
        }
        m
    }

    pub(crate) fn to_flat(&self) -> Vec<(usize, S)> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (k, v.clone()))
            .collect()
    }

    pub fn domain(&self) -> SpaceId {
        self.domain
    }

    pub fn codomain(&self) -> SpaceId {
        self.codomain
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    /// Image of the domain basis vector `b_j`.
    pub fn column(&self, j: usize) -> Element<S> {
        Element::from_terms(self.codomain, (0..self.rows).map(|r| (r, self.data[r * self.cols + j].clone())))
    }

    pub fn apply(&self, x: &Element<S>) -> Result<Element<S>> {
        if x.space() != self.domain {
            return Err(Error::mismatch("argument is not in the map's domain"));
        }
        let mut out = vec![S::zero(); self.rows];
        for (j, v) in x.terms() {
            if j >= self.cols {
                return Err(Error::InvalidArgument(format!("index {j} out of range")));
            }
            for (r, slot) in out.iter_mut().enumerate() {
                let a = &self.data[r * self.cols + j];
                if !a.is_zero() {
                    *slot = slot.clone() + a.clone() * v.clone();
                }
            }
        }
        Ok(Element::from_dense(self.codomain, &out))
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.data.iter().all(|v| v.is_negligible(tol))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.domain == other.domain
            && self.codomain == other.codomain
            && self.data.len() == other.data.len()
            && self.data.iter().zip(&other.data).all(|(a, b)| a.approx_eq(b, tol))
    }

    /// `self + alpha * other`.
    pub fn combine(&self, other: &Self, alpha: &S) -> Result<Self> {
        if self.domain != other.domain || self.codomain != other.codomain || self.data.len() != other.data.len() {
            return Err(Error::mismatch("maps have different domain or codomain"));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.clone() + alpha.clone() * b.clone())
            .collect();
        Ok(LinearMap { data, ..self.clone() })
    }

    pub fn scale(&self, factor: &S) -> Self {
        LinearMap { data: self.data.iter().map(|a| a.clone() * factor.clone()).collect(), ..self.clone() }
    }

    /// `self o inner`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.codomain != self.domain || inner.rows != self.cols {
            return Err(Error::mismatch("maps are not composable"));
        }
        let mut data = vec![S::zero(); self.rows * inner.cols];
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[r * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..inner.cols {
                    let b = &inner.data[k * inner.cols + c];
                    if !b.is_zero() {
                        data[r * inner.cols + c] = data[r * inner.cols + c].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(LinearMap { domain: inner.domain, codomain: self.codomain, rows: self.rows, cols: inner.cols, data })
    }

    /// Operator norm between weighted-l1 spaces: `max_j ||T b_j|| / w_j`.
    pub fn op_norm(&self, domain_weights: &[S], codomain_weights: &[S]) -> S {
        (0..self.cols).fold(S::zero(), |acc, j| {
            let col = self.column(j);
            S::max_of(acc, weighted_l1(&col, codomain_weights) / domain_weights[j].clone())
        })
    }

    /// Rank of the matrix.
    pub fn rank(&self, tol: f64) -> usize {
        let mut e = crate::linalg::Echelon::new(self.cols, tol);
        for r in 0..self.rows {
            let row = crate::linalg::sparse_from_dense(&self.data[r * self.cols..(r + 1) * self.cols], tol);
            e.insert(&row);
        }
        e.rank()
    }

    /// Appends zero columns so the map is defined on a larger domain with the same leading basis.
    pub(crate) fn extend_domain(&self, domain: SpaceId, cols: usize) -> Self {
        assert!(cols >= self.cols);
        let mut data = vec![S::zero(); self.rows * cols];
        for r in 0..self.rows {
            for c in 0..self.cols {
                data[r * cols + c] = self.data[r * self.cols + c].clone();
            }
        }
        LinearMap { domain, codomain: self.codomain, rows: self.rows, cols, data }
    }

    /// Drops trailing columns, restricting to a leading block of the domain basis.
    pub(crate) fn restrict_domain(&self, domain: SpaceId, cols: usize) -> Self {
        assert!(cols <= self.cols);
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend(self.data[r * self.cols..r * self.cols + cols].iter().cloned());
        }
        LinearMap { domain, codomain: self.codomain, rows: self.rows, cols, data }
    }

    pub(crate) fn retag_codomain(&self, codomain: SpaceId) -> Self {
        LinearMap { codomain, ..self.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Rational;

    #[test]
    fn apply_compose_and_norm() {
        let a = SpaceId::from_content("a", &[]);
        let b = SpaceId::from_content("b", &[]);
        let q = |n| Q::from_int(n);
        // T: R^2 -> R^2, b0 -> b0 + 2 b1, b1 -> -b1
        let t = LinearMap::new(a, b, 2, 2, vec![q(1), q(0), q(2), q(-1)]).unwrap();
        let x = Element::from_dense(a, &[q(1), q(1)]);
        assert_eq!(t.apply(&x).unwrap(), Element::from_dense(b, &[q(1), q(1)]));
        assert_eq!(t.op_norm(&[q(1), q(1)], &[q(1), q(1)]), q(3));
        let s = LinearMap::new(b, a, 2, 2, vec![q(1), q(0), q(0), q(1)]).unwrap();
        let st = s.compose(&t).unwrap();
        assert_eq!(st.domain(), a);
        assert_eq!(st.codomain(), a);
        assert_eq!(st.data(), t.data());
        assert!(t.compose(&t).is_err());
        assert_eq!(t.rank(0.0), 2);
        assert!(t.apply(&Element::<Q>::basis(b, 0)).is_err());
    }
}

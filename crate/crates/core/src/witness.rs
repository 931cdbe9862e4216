//! Trace-like witness functionals.
//!
//! A symmetric diagonal `t` and a functional `g` with `g(z) = 1` on a central
//! `z` give `f(a) = g(pi^o(a t))`, which kills commutators. At finite
//! dimension existence of such an `f` is exactly the statement
//! `z not in span{[a, b]}`, decided here by elimination.

use crate::algebra::AlgebraPresentation;
use crate::element::{Element, SpaceId};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tensor::Tensor2;

/// Linear functional given by its values on the basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Functional<S> {
    space: SpaceId,
    values: Vec<S>,
}

impl<S: Scalar> Functional<S> {
    pub fn new(alg: &AlgebraPresentation<S>, values: Vec<S>) -> Result<Self> {
        if values.len() != alg.dim() {
            return Err(Error::InvalidArgument(format!("{} values for dimension {}", values.len(), alg.dim())));
        }
        Ok(Functional { space: alg.id(), values })
    }

    /// Coordinate functional `a -> a_i`.
    pub fn coordinate(alg: &AlgebraPresentation<S>, i: usize) -> Self {
        let mut values = vec![S::zero(); alg.dim()];
        values[i] = S::one();
        Functional { space: alg.id(), values }
    }

    pub fn space(&self) -> SpaceId {
        self.space
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn eval(&self, a: &Element<S>) -> Result<S> {
        if a.space() != self.space {
            return Err(Error::mismatch("functional and element are over different algebras"));
        }
        Ok(a.terms().fold(S::zero(), |acc, (i, v)| acc + v.clone() * self.values[i].clone()))
    }

    /// Dual norm for the weighted l1 norm: `max_i |f_i| / w_i`.
    pub fn dual_norm(&self, alg: &AlgebraPresentation<S>) -> S {
        self.values
            .iter()
            .zip(alg.weights())
            .fold(S::zero(), |m, (f, w)| S::max_of(m, f.abs() / w.clone()))
    }

    pub fn scale(&self, c: &S) -> Self {
        Functional { space: self.space, values: self.values.iter().map(|v| v.clone() * c.clone()).collect() }
    }
}

/// Largest `|f([b_i, b_j])|` over basis pairs.
pub fn commutator_defect<S: Scalar>(alg: &AlgebraPresentation<S>, f: &Functional<S>) -> Result<S> {
    let mut worst = S::zero();
    for (_, c) in alg.basis_commutators() {
        worst = S::max_of(worst, f.eval(&c)?.abs());
    }
    Ok(worst)
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessReport<S> {
    pub functional: Functional<S>,
    /// `max |f([b_i, b_j])|`.
    pub commutator_defect: S,
    /// `|f(z) - 1|`.
    pub normalization_defect: S,
    pub norm: S,
}

/// `f(a) = g(pi^o(a t))` after rescaling `g` so that `g(z) = 1`.
pub fn witness_from_diagonal<S: Scalar>(
    alg: &AlgebraPresentation<S>,
    t: &Tensor2<S>,
    z: &Element<S>,
    g: &Functional<S>,
) -> Result<WitnessReport<S>> {
    alg.check(z)?;
    alg.check_tensor(t)?;
    let gz = g.eval(z)?;
    if gz.is_negligible(alg.tol()) {
        return Err(Error::InvalidArgument("g(z) = 0, cannot normalize".into()));
    }
    let g = g.scale(&(S::one() / gz));
    let values = (0..alg.dim())
        .map(|k| g.eval(&alg.pi_op(&alg.left_action(&alg.basis(k), t)?)?))
        .collect::<Result<Vec<_>>>()?;
    let functional = Functional { space: alg.id(), values };
    let commutator_defect = commutator_defect(alg, &functional)?;
    let normalization_defect = (functional.eval(z)? - S::one()).abs();
    let norm = functional.dual_norm(alg);
    Ok(WitnessReport { functional, commutator_defect, normalization_defect, norm })
}

/// `z = sum_p c_p [b_i, b_j]` over basis pairs `p = (i, j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutatorCertificate<S> {
    pub terms: Vec<((usize, usize), S)>,
}

impl<S: Scalar> CommutatorCertificate<S> {
    /// Re-evaluates the combination; used to validate certificates independently.
    pub fn evaluate(&self, alg: &AlgebraPresentation<S>) -> Element<S> {
        self.terms.iter().fold(alg.zero(), |acc, ((i, j), c)| {
            let comm = &alg.basis_product(*i, *j) - &alg.basis_product(*j, *i);
            acc.combine(&comm, c)
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Feasibility<S> {
    /// A functional vanishing on all commutators with `f(z) = 1`.
    Feasible { functional: Functional<S>, norm: S },
    /// `z` lies in the commutator span.
    Infeasible { certificate: CommutatorCertificate<S> },
}

impl<S> Feasibility<S> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible { .. })
    }
}

/// Decides whether some functional kills `span{[a, b]}` and takes the value 1 at `z`.
pub fn trace_feasibility<S: Scalar>(alg: &AlgebraPresentation<S>, z: &Element<S>) -> Result<Feasibility<S>> {
    alg.check(z)?;
    let tol = alg.tol();
    if z.clone().chop(tol).is_zero() {
        return Err(Error::InvalidArgument("z must be non-zero".into()));
    }
    let pairs = alg.basis_commutators();
    let mut span = crate::linalg::Echelon::with_tracking(alg.dim(), tol);
    for (_, c) in &pairs {
        span.insert(&c.to_sparse_row());
    }
    if let Some(combo) = span.express(&z.to_sparse_row()) {
        let terms = combo.into_iter().map(|(g, c)| (pairs[g].0, c)).collect();
        return Ok(Feasibility::Infeasible { certificate: CommutatorCertificate { terms } });
    }
    // f annihilates the commutator basis and f(z) = 1.
    let mut rows: Vec<Vec<(usize, S)>> = span.rows().to_vec();
    let mut rhs = vec![S::zero(); rows.len()];
    rows.push(z.to_sparse_row());
    rhs.push(S::one());
    let values = crate::linalg::solve(&rows, &rhs, alg.dim(), tol)
        .ok_or_else(|| Error::Invariant("z outside the commutator span but no functional found".into()))?;
    let functional = Functional { space: alg.id(), values };
    let norm = functional.dual_norm(alg);
    Ok(Feasibility::Feasible { functional, norm })
}

//! Approximate diagonals: constructors and the four-defect diagnostic.
//!
//! For a tensor `t` and a test element `a` the defects are
//!
//! * `d1 = ||a t - t a||`
//! * `d2 = ||pi(t) a - a||`
//! * `d3 = ||a o t - t o a||`
//! * `d4 = ||a pi^o(t) - a||`
//!
//! A net is a symmetric approximate diagonal when all four tend to zero on
//! every element; here nets are finite lists and "tends to zero" becomes
//! "the final entry is within the tolerance".

use rayon::prelude::*;

use crate::algebra::{AlgebraPresentation, DirectSum};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::map::LinearMap;
use crate::scalar::{reciprocal, Scalar};
use crate::tensor::Tensor2;

/// The four defects of one tensor against one element.
#[derive(Clone, Debug, PartialEq)]
pub struct Defects<S> {
    pub d1: S,
    pub d2: S,
    pub d3: S,
    pub d4: S,
}

impl<S: Scalar> Defects<S> {
    pub fn zero() -> Self {
        Defects { d1: S::zero(), d2: S::zero(), d3: S::zero(), d4: S::zero() }
    }

    pub fn max(&self) -> S {
        [&self.d2, &self.d3, &self.d4].into_iter().fold(self.d1.clone(), |m, d| S::max_of(m, d.clone()))
    }

    pub fn as_array(&self) -> [&S; 4] {
        [&self.d1, &self.d2, &self.d3, &self.d4]
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.as_array().iter().all(|d| d.is_negligible(tol))
    }

    /// Componentwise `self <= bound` (with float slack `tol`).
    pub fn dominated_by(&self, bound: &Self, tol: f64) -> bool {
        self.as_array()
            .iter()
            .zip(bound.as_array())
            .all(|(d, b)| *d <= b || ((*d).clone() - b.clone()).is_negligible(tol))
    }

    pub fn add(&self, other: &Self) -> Self {
        Defects {
            d1: self.d1.clone() + other.d1.clone(),
            d2: self.d2.clone() + other.d2.clone(),
            d3: self.d3.clone() + other.d3.clone(),
            d4: self.d4.clone() + other.d4.clone(),
        }
    }
}

/// Computes all four defects of `t` at `a`.
pub fn defects<S: Scalar>(alg: &AlgebraPresentation<S>, a: &Element<S>, t: &Tensor2<S>) -> Result<Defects<S>> {
    let at = alg.left_action(a, t)?;
    let ta = alg.right_action(t, a)?;
    let d1 = alg.proj_norm(&at.combine(&ta, &-S::one()));
    let d2 = alg.norm(&(&alg.multiply(&alg.pi(t)?, a)? - a));
    let act = alg.circ_left(a, t)?;
    let tca = alg.circ_right(t, a)?;
    let d3 = alg.proj_norm(&act.combine(&tca, &-S::one()));
    let d4 = alg.norm(&(&alg.multiply(a, &alg.pi_op(t)?)? - a));
    Ok(Defects { d1, d2, d3, d4 })
}

/// A labelled test element.
#[derive(Clone, Debug, PartialEq)]
pub struct TestElement<S> {
    pub label: String,
    pub element: Element<S>,
}

/// Finite net `{t_lambda}` together with the test set `F` and tolerance `eps`.
#[derive(Clone, Debug)]
pub struct DiagonalNet<S> {
    entries: Vec<Tensor2<S>>,
    test_set: Vec<TestElement<S>>,
    tolerance: S,
}

impl<S: Scalar> DiagonalNet<S> {
    pub fn new(
        alg: &AlgebraPresentation<S>,
        entries: Vec<Tensor2<S>>,
        test_set: Vec<TestElement<S>>,
        tolerance: S,
    ) -> Result<Self> {
        for t in &entries {
            alg.check_tensor(t)?;
        }
        for a in &test_set {
            alg.check(&a.element)?;
        }
        if tolerance < S::zero() {
            return Err(Error::InvalidArgument("tolerance must be non-negative".into()));
        }
        Ok(DiagonalNet { entries, test_set, tolerance })
    }

    /// Test set consisting of every basis element, labelled by the basis labels.
    pub fn basis_test_set(alg: &AlgebraPresentation<S>) -> Vec<TestElement<S>> {
        (0..alg.dim()).map(|i| TestElement { label: alg.label(i).to_string(), element: alg.basis(i) }).collect()
    }

    pub fn entries(&self) -> &[Tensor2<S>] {
        &self.entries
    }

    pub fn test_set(&self) -> &[TestElement<S>] {
        &self.test_set
    }

    pub fn tolerance(&self) -> &S {
        &self.tolerance
    }

    pub fn final_entry(&self) -> Option<&Tensor2<S>> {
        self.entries.last()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DefectRow<S> {
    pub entry: usize,
    pub element: usize,
    pub label: String,
    pub defects: Defects<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntrySummary<S> {
    pub entry: usize,
    pub symmetric: bool,
    pub max_defect: S,
    pub proj_norm: S,
    pub verdict: bool,
}

/// Defects for every `(entry, test element)` pair with per-entry verdicts.
#[derive(Clone, Debug, PartialEq)]
pub struct DefectReport<S> {
    pub tolerance: S,
    pub require_symmetric: bool,
    pub rows: Vec<DefectRow<S>>,
    pub entries: Vec<EntrySummary<S>>,
    /// Per test element: whether the max defect is non-increasing along the net.
    pub monotone: Vec<bool>,
}

impl<S: Scalar> DefectReport<S> {
    pub fn final_verdict(&self) -> bool {
        self.entries.last().map(|e| e.verdict).unwrap_or(false)
    }

    pub fn row(&self, entry: usize, element: usize) -> Option<&DefectRow<S>> {
        self.rows.iter().find(|r| r.entry == entry && r.element == element)
    }
}

/// Evaluates the four defects on the whole net.
///
/// Verdict for an entry: every defect `<= eps` on `F`, and the entry is
/// flip-invariant when `require_symmetric` is set. All four defects are
/// reported regardless of the symmetry policy.
pub fn defect_report<S: Scalar>(
    alg: &AlgebraPresentation<S>,
    net: &DiagonalNet<S>,
    require_symmetric: bool,
) -> Result<DefectReport<S>> {
    if net.entries.is_empty() {
        return Err(Error::InvalidArgument("diagonal net has no entries".into()));
    }
    let n_el = net.test_set.len();
    let pairs: Vec<(usize, usize)> =
        (0..net.entries.len()).flat_map(|e| (0..n_el).map(move |k| (e, k))).collect();
    let rows: Vec<DefectRow<S>> = pairs
        .par_iter()
        .map(|&(e, k)| {
            let test = &net.test_set[k];
            defects(alg, &test.element, &net.entries[e])
                .map(|defects| DefectRow { entry: e, element: k, label: test.label.clone(), defects })
        })
        .collect::<Result<_>>()?;

    let tol = alg.tol();
    let entries = net
        .entries
        .iter()
        .enumerate()
        .map(|(e, t)| {
            let max_defect = rows[e * n_el..(e + 1) * n_el]
                .iter()
                .fold(S::zero(), |m, r| S::max_of(m, r.defects.max()));
            let symmetric = t.is_symmetric(tol);
            let within = max_defect <= net.tolerance || (max_defect.clone() - net.tolerance.clone()).is_negligible(tol);
            EntrySummary {
                entry: e,
                symmetric,
                proj_norm: alg.proj_norm(t),
                verdict: within && (symmetric || !require_symmetric),
                max_defect,
            }
        })
        .collect();
    let monotone = (0..n_el)
        .map(|k| {
            let seq: Vec<S> = (0..net.entries.len()).map(|e| rows[e * n_el + k].defects.max()).collect();
            seq.windows(2).all(|w| w[1] <= w[0] || (w[1].clone() - w[0].clone()).is_negligible(tol))
        })
        .collect();
    Ok(DefectReport { tolerance: net.tolerance.clone(), require_symmetric, rows, entries, monotone })
}

/// `t = (1/n) sum_{i,j} E_ij (x) E_ji` over `M_n`.
pub fn matrix_diagonal<S: Scalar>(n: usize) -> Result<Tensor2<S>> {
    if n < 1 {
        return Err(Error::InvalidArgument("matrix diagonal needs n >= 1".into()));
    }
    Ok(block_matrix_diagonal(&AlgebraPresentation::<S>::matrix(n), n, n))
}

fn block_matrix_diagonal<S: Scalar>(ambient: &AlgebraPresentation<S>, ambient_n: usize, n: usize) -> Tensor2<S> {
    let c: S = reciprocal(n);
    let idx = AlgebraPresentation::<S>::matrix_unit_index;
    let terms = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (idx(ambient_n, i, j), idx(ambient_n, j, i), c.clone()))
        .collect::<Vec<_>>();
    Tensor2::from_terms(ambient.id(), terms)
}

/// `t_n` for the top-left `n x n` block, embedded in the `N x N` truncation of `M_N(C)`.
/// Satisfies `pi(t_n) = I_n`.
pub fn truncated_mn_diagonal<S: Scalar>(n: usize, ambient: usize) -> Result<Tensor2<S>> {
    if n < 1 || n > ambient {
        return Err(Error::InvalidArgument(format!("need 1 <= n <= N, got n = {n}, N = {ambient}")));
    }
    Ok(block_matrix_diagonal(&AlgebraPresentation::<S>::matrix(ambient), ambient, n))
}

/// Tail bound `sum_{i > n or j > n} |a_ij|` (one-based) for `a` in the `N x N` truncation.
pub fn tail_bound<S: Scalar>(a: &Element<S>, n: usize, ambient: usize) -> S {
    a.terms()
        .filter(|(k, _)| k / ambient >= n || k % ambient >= n)
        .fold(S::zero(), |acc, (_, v)| acc + v.abs())
}

/// Smallest `n` whose top-left block contains the support of `a`.
pub fn support_radius<S: Scalar>(a: &Element<S>, ambient: usize) -> usize {
    a.support().map(|k| (k / ambient).max(k % ambient) + 1).max().unwrap_or(0)
}

/// `(1/|G|) sum_g delta_g (x) delta_{g^-1}` over `l1(G)`.
pub fn group_diagonal<S: Scalar>(group: &GroupTable) -> Result<Tensor2<S>> {
    group.validate()?;
    let alg: AlgebraPresentation<S> = group.algebra();
    let c: S = reciprocal(group.order());
    Ok(Tensor2::from_terms(alg.id(), (0..group.order()).map(|g| (g, group.inverse(g), c.clone())).collect::<Vec<_>>()))
}

/// `sum_i rho_i(t_i)`: block diagonals embedded into the direct sum.
pub fn direct_sum_diagonal<S: Scalar>(sum: &DirectSum<S>, components: &[Tensor2<S>]) -> Result<Tensor2<S>> {
    if components.len() != sum.len() {
        return Err(Error::InvalidArgument(format!(
            "{} component tensors for {} summands",
            components.len(),
            sum.len()
        )));
    }
    let mut terms = Vec::new();
    for (c, t) in components.iter().enumerate() {
        if t.space() != sum.component_id(c) {
            return Err(Error::mismatch("component tensor is not over its summand"));
        }
        let off = sum.offset(c);
        if t.max_index().is_some_and(|m| m >= sum.component_dim(c)) {
            return Err(Error::InvalidArgument("component tensor index out of range".into()));
        }
        terms.extend(t.terms().map(|(i, j, v)| (off + i, off + j, v.clone())));
    }
    Ok(Tensor2::from_terms(sum.algebra().id(), terms))
}

/// Block tensor `rho_c(t)` for a single summand.
pub fn embed_tensor<S: Scalar>(sum: &DirectSum<S>, c: usize, t: &Tensor2<S>) -> Result<Tensor2<S>> {
    if t.space() != sum.component_id(c) {
        return Err(Error::mismatch("tensor is not over the named summand"));
    }
    let off = sum.offset(c);
    Ok(Tensor2::from_terms(sum.algebra().id(), t.terms().map(|(i, j, v)| (off + i, off + j, v.clone())).collect::<Vec<_>>()))
}

/// Block-wise defect bound for `a` against `sum_i rho_i(t_i)`:
/// `sum_i defects(P_i(a), t_i)`.
pub fn direct_sum_defect_bound<S: Scalar>(
    sum: &DirectSum<S>,
    parts: &[&AlgebraPresentation<S>],
    components: &[Tensor2<S>],
    a: &Element<S>,
) -> Result<Defects<S>> {
    let mut total = Defects::zero();
    for (c, (part, t)) in parts.iter().zip(components).enumerate() {
        let pa = sum.project(c, a)?;
        total = total.add(&defects(part, &pa, t)?);
    }
    Ok(total)
}

/// Checks that `theta: A -> B` is multiplicative on basis pairs and surjective.
pub fn check_epimorphism<S: Scalar>(
    theta: &LinearMap<S>,
    source: &AlgebraPresentation<S>,
    target: &AlgebraPresentation<S>,
) -> Result<()> {
    if theta.domain() != source.id() || theta.codomain() != target.id() {
        return Err(Error::mismatch("map does not go between the given algebras"));
    }
    let images: Vec<Element<S>> = (0..source.dim()).map(|j| theta.column(j)).collect();
    for i in 0..source.dim() {
        for j in 0..source.dim() {
            let lhs = theta.apply(&source.basis_product(i, j))?;
            let rhs = target.multiply(&images[i], &images[j])?;
            if !lhs.approx_eq(&rhs, target.tol()) {
                return Err(Error::Precondition(format!(
                    "map is not multiplicative on ({}, {})",
                    source.label(i),
                    source.label(j)
                )));
            }
        }
    }
    if theta.rank(target.tol()) != target.dim() {
        return Err(Error::Precondition("map is not surjective".into()));
    }
    Ok(())
}

/// `(theta (x) theta)(t)` without any precondition checks.
pub fn tensor_image<S: Scalar>(theta: &LinearMap<S>, t: &Tensor2<S>) -> Result<Tensor2<S>> {
    if t.space() != theta.domain() {
        return Err(Error::mismatch("tensor is not over the map's domain"));
    }
    let cols: Vec<Element<S>> = (0..theta.cols()).map(|j| theta.column(j)).collect();
    let mut terms = Vec::new();
    for (i, j, c) in t.terms() {
        for (k, x) in cols[i].terms() {
            for (l, y) in cols[j].terms() {
                terms.push((k, l, c.clone() * x.clone() * y.clone()));
            }
        }
    }
    Ok(Tensor2::from_terms(theta.codomain(), terms))
}

/// Pushes a (symmetric) diagonal forward along an epimorphism.
pub fn pushforward_diagonal<S: Scalar>(
    theta: &LinearMap<S>,
    source: &AlgebraPresentation<S>,
    target: &AlgebraPresentation<S>,
    t: &Tensor2<S>,
) -> Result<Tensor2<S>> {
    check_epimorphism(theta, source, target)?;
    source.check_tensor(t)?;
    Ok(tensor_image(theta, t)?.chop(target.tol()))
}

/// Projection `P_c` of a direct sum onto summand `c` as a linear map.
pub fn projection_map<S: Scalar>(sum: &DirectSum<S>, part: &AlgebraPresentation<S>, c: usize) -> Result<LinearMap<S>> {
    if part.id() != sum.component_id(c) {
        return Err(Error::mismatch("presentation is not the named summand"));
    }
    let images: Vec<Element<S>> = (0..sum.algebra().dim())
        .map(|k| sum.project(c, &sum.algebra().basis(k)))
        .collect::<Result<_>>()?;
    LinearMap::from_images(sum.algebra().id(), part.id(), part.dim(), &images)
}

/// `m = (t o e) e`, the diagonal of the ideal with (approximate) identity `e`.
pub fn ideal_diagonal<S: Scalar>(alg: &AlgebraPresentation<S>, t: &Tensor2<S>, e: &Element<S>) -> Result<Tensor2<S>> {
    let te = alg.circ_right(t, e)?;
    alg.right_action(&te, e)
}

/// Lifts a diagonal of a unital algebra with unit `u` to its unitization:
/// `t + (e - u) (x) (e - u)`.
///
/// If `t` is an exact symmetric diagonal of `A`, the result is one of `A#`.
pub fn unitized_diagonal<S: Scalar>(alg: &AlgebraPresentation<S>, t: &Tensor2<S>) -> Result<Tensor2<S>> {
    alg.check_tensor(t)?;
    let u = alg
        .unit()
        .ok_or_else(|| Error::Precondition("algebra has no unit; supply a diagonal of the unitization".into()))?;
    let sharp = alg.unitize();
    let e = sharp.basis(alg.unitization_index());
    let lifted_u = alg.include_in_unitization(u, &sharp)?;
    let p = &e - &lifted_u;
    let corner = Tensor2::elementary(&p, &p)?;
    Ok(t.retag(sharp.id()).combine(&corner, &S::one()))
}

/// One row of the convergence table for the truncated `M_N` diagonals.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow<S> {
    pub n: usize,
    pub label: String,
    pub defects: Defects<S>,
    pub tail_bound: S,
}

/// Defects of `t_1, ..., t_N` against each test matrix, with the tail bound per row.
pub fn convergence_table<S: Scalar>(ambient: usize, tests: &[TestElement<S>]) -> Result<Vec<ConvergenceRow<S>>> {
    let alg = AlgebraPresentation::<S>::matrix(ambient);
    for t in tests {
        alg.check(&t.element)?;
    }
    let mut rows = Vec::with_capacity(ambient * tests.len());
    for n in 1..=ambient {
        let t = truncated_mn_diagonal::<S>(n, ambient)?;
        for test in tests {
            rows.push(ConvergenceRow {
                n,
                label: test.label.clone(),
                defects: defects(&alg, &test.element, &t)?,
                tail_bound: tail_bound(&test.element, n, ambient),
            });
        }
    }
    Ok(rows)
}

//! Derivation-type maps into bimodules and their decompositions through a
//! symmetric diagonal.
//!
//! With `t = sum c_ij b_i (x) b_j` over the unitization and a linear map `T`
//! extended by `T(e) = 0`:
//!
//! * `psi_x(t) = sum c_ij b_i x b_j`
//! * `Phi_T(t) = sum c_ij b_i T(b_j)`
//!
//! For a Jordan derivation `D` and `x = Phi_D(t)`,
//! `D(a) = (a x - x a) - psi_{D(a)}(t)`, and for a Lie derivation
//! `D(a) = (a x - x a) + psi_{D(a)}(t)`, up to terms bounded by the
//! diagonal's defects at `a`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::algebra::AlgebraPresentation;
use crate::bimodule::BimodulePresentation;
use crate::diagonals::{defects, unitized_diagonal, DiagonalNet};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, SparseRow};
use crate::map::LinearMap;
use crate::scalar::{half, Scalar};
use crate::tensor::Tensor2;

/// Which defining identity a linear map `A -> X` should satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapKind {
    /// `D(ab) = D(a)b + aD(b)`
    Derivation,
    /// `D(ab + ba) = D(a)b + aD(b) + D(b)a + bD(a)`
    Jordan,
    /// `D(ab - ba) = D(a)b + aD(b) - D(b)a - bD(a)`
    Lie,
    /// `a D(b) = D(b) a`
    CentralValued,
    /// Central-valued and `D([a, b]) = 0`.
    CentralTrace,
    /// Central-valued derivation.
    CentralDerivation,
}

impl MapKind {
    pub const ALL: [MapKind; 6] = [
        MapKind::Derivation,
        MapKind::Jordan,
        MapKind::Lie,
        MapKind::CentralValued,
        MapKind::CentralTrace,
        MapKind::CentralDerivation,
    ];

    fn name(self) -> &'static str {
        match self {
            MapKind::Derivation => "derivation",
            MapKind::Jordan => "jordan",
            MapKind::Lie => "lie",
            MapKind::CentralValued => "central",
            MapKind::CentralTrace => "central-trace",
            MapKind::CentralDerivation => "central-derivation",
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MapKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        MapKind::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| Error::Parse(format!("unknown map kind `{s}`")))
    }
}

fn check_map<S: Scalar>(alg: &AlgebraPresentation<S>, module: &BimodulePresentation<S>, d: &LinearMap<S>) -> Result<()> {
    module.check_algebra(alg)?;
    if d.domain() != alg.id() || d.codomain() != module.id() {
        return Err(Error::mismatch("map does not go from the algebra to the bimodule"));
    }
    if d.cols() != alg.dim() || d.rows() != module.dim() {
        return Err(Error::mismatch("map has the wrong shape"));
    }
    Ok(())
}

/// `psi_x(t) = sum c_ij b_i x b_j`; `t` must be over the module's algebra.
pub fn psi_map<S: Scalar>(module: &BimodulePresentation<S>, x: &Element<S>, t: &Tensor2<S>) -> Result<Element<S>> {
    module.check(x)?;
    if t.space() != module.algebra_id() {
        return Err(Error::mismatch("tensor is not over the bimodule's algebra"));
    }
    let mut acc = module.zero();
    for (i, j, c) in t.terms() {
        let xb = module.right_unchecked(x, &Element::basis(t.space(), j));
        let bxb = module.left_unchecked(&Element::basis(t.space(), i), &xb);
        acc = acc.combine(&bxb, c);
    }
    Ok(acc.chop(module.tol()))
}

/// `Phi_T(t) = sum c_ij b_i T(b_j)`; `T` must be defined on the tensor's algebra.
pub fn phi_map<S: Scalar>(module: &BimodulePresentation<S>, map: &LinearMap<S>, t: &Tensor2<S>) -> Result<Element<S>> {
    if t.space() != module.algebra_id() || map.domain() != t.space() {
        return Err(Error::mismatch("tensor, map and bimodule are over different algebras"));
    }
    if map.codomain() != module.id() {
        return Err(Error::mismatch("map does not land in the bimodule"));
    }
    let mut acc = module.zero();
    for (i, j, c) in t.terms() {
        if j >= map.cols() {
            return Err(Error::InvalidArgument(format!("tensor index {j} outside the map's domain")));
        }
        let tb = map.column(j);
        acc = acc.combine(&module.left_unchecked(&Element::basis(t.space(), i), &tb), c);
    }
    Ok(acc.chop(module.tol()))
}

/// The inner derivation `a -> a w - w a`.
pub fn inner_derivation<S: Scalar>(
    alg: &AlgebraPresentation<S>,
    module: &BimodulePresentation<S>,
    w: &Element<S>,
) -> Result<LinearMap<S>> {
    module.check_algebra(alg)?;
    module.check(w)?;
    let images: Vec<Element<S>> = (0..alg.dim()).map(|k| module.commutator(&alg.basis(k), w)).collect::<Result<_>>()?;
    LinearMap::from_images(alg.id(), module.id(), module.dim(), &images)
}

/// The map `a -> f(a) c` for a functional given by its values on the basis.
pub fn rank_one_map<S: Scalar>(
    alg: &AlgebraPresentation<S>,
    module: &BimodulePresentation<S>,
    values: &[S],
    c: &Element<S>,
) -> Result<LinearMap<S>> {
    module.check_algebra(alg)?;
    module.check(c)?;
    if values.len() != alg.dim() {
        return Err(Error::InvalidArgument("one functional value per basis element".into()));
    }
    let images: Vec<Element<S>> = values.iter().map(|v| c.scale(v)).collect();
    LinearMap::from_images(alg.id(), module.id(), module.dim(), &images)
}

/// Largest residual norm of the defining identity of `kind` over basis pairs.
pub fn identity_defect<S: Scalar>(
    kind: MapKind,
    alg: &AlgebraPresentation<S>,
    module: &BimodulePresentation<S>,
    d: &LinearMap<S>,
) -> Result<S> {
    check_map(alg, module, d)?;
    let n = alg.dim();
    let images: Vec<Element<S>> = (0..n).map(|k| d.column(k)).collect();
    let b = |i: usize| alg.basis(i);
    let da_b = |i: usize, j: usize| module.right_unchecked(&images[i], &b(j));
    let a_db = |i: usize, j: usize| module.left_unchecked(&b(i), &images[j]);
    let mut worst = S::zero();
    for i in 0..n {
        for j in 0..n {
            let residuals: Vec<Element<S>> = match kind {
                MapKind::Derivation => {
                    vec![&(&d.apply(&alg.basis_product(i, j))? - &da_b(i, j)) - &a_db(i, j)]
                }
                MapKind::Jordan => {
                    let sym = &alg.basis_product(i, j) + &alg.basis_product(j, i);
                    let rhs = &(&da_b(i, j) + &a_db(i, j)) + &(&da_b(j, i) + &a_db(j, i));
                    vec![&d.apply(&sym)? - &rhs]
                }
                MapKind::Lie => {
                    let comm = &alg.basis_product(i, j) - &alg.basis_product(j, i);
                    let rhs = &(&da_b(i, j) + &a_db(i, j)) - &(&da_b(j, i) + &a_db(j, i));
                    vec![&d.apply(&comm)? - &rhs]
                }
                MapKind::CentralValued => vec![&a_db(i, j) - &da_b(j, i)],
                MapKind::CentralTrace => {
                    let comm = &alg.basis_product(i, j) - &alg.basis_product(j, i);
                    vec![&a_db(i, j) - &da_b(j, i), d.apply(&comm)?]
                }
                MapKind::CentralDerivation => vec![
                    &(&d.apply(&alg.basis_product(i, j))? - &da_b(i, j)) - &a_db(i, j),
                    &a_db(i, j) - &da_b(j, i),
                ],
            };
            for r in residuals {
                worst = S::max_of(worst, module.norm(&r));
            }
        }
    }
    Ok(worst)
}

pub fn satisfies<S: Scalar>(
    kind: MapKind,
    alg: &AlgebraPresentation<S>,
    module: &BimodulePresentation<S>,
    d: &LinearMap<S>,
) -> Result<bool> {
    Ok(identity_defect(kind, alg, module, d)?.is_negligible(module.tol()))
}

pub fn is_derivation<S: Scalar>(alg: &AlgebraPresentation<S>, module: &BimodulePresentation<S>, d: &LinearMap<S>) -> Result<bool> {
    satisfies(MapKind::Derivation, alg, module, d)
}

pub fn is_jordan<S: Scalar>(alg: &AlgebraPresentation<S>, module: &BimodulePresentation<S>, d: &LinearMap<S>) -> Result<bool> {
    satisfies(MapKind::Jordan, alg, module, d)
}

pub fn is_lie<S: Scalar>(alg: &AlgebraPresentation<S>, module: &BimodulePresentation<S>, d: &LinearMap<S>) -> Result<bool> {
    satisfies(MapKind::Lie, alg, module, d)
}

pub fn is_central_valued<S: Scalar>(
    alg: &AlgebraPresentation<S>,
    module: &BimodulePresentation<S>,
    d: &LinearMap<S>,
) -> Result<bool> {
    satisfies(MapKind::CentralValued, alg, module, d)
}

/// Linear constraints on the unknown matrix of `T` (entry `(r, c)` at `r * n + c`),
/// one row per output coordinate.
struct Constraint<'a, S> {
    module: &'a BimodulePresentation<S>,
    n: usize,
    rows: Vec<BTreeMap<usize, S>>,
}

impl<'a, S: Scalar> Constraint<'a, S> {
    fn new(module: &'a BimodulePresentation<S>, n: usize) -> Self {
        Constraint { module, n, rows: vec![BTreeMap::new(); module.dim()] }
    }

    fn add(&mut self, y: usize, unknown: usize, v: S) {
        let slot = self.rows[y].entry(unknown).or_insert_with(S::zero);
        *slot = slot.clone() + v;
    }

    /// `s * T(a)`.
    fn t_of(&mut self, a: &Element<S>, s: &S) {
        for (k, ak) in a.terms() {
            for y in 0..self.module.dim() {
                self.add(y, y * self.n + k, s.clone() * ak.clone());
            }
        }
    }

    /// `s * T(b_k) b_a`.
    fn t_right(&mut self, k: usize, a: usize, s: &S) {
        for r in 0..self.module.dim() {
            for (y, c) in self.module.right_row(r, a) {
                self.add(*y, r * self.n + k, s.clone() * c.clone());
            }
        }
    }

    /// `s * b_a T(b_k)`.
    fn left_t(&mut self, a: usize, k: usize, s: &S) {
        for r in 0..self.module.dim() {
            for (y, c) in self.module.left_row(a, r) {
                self.add(*y, r * self.n + k, s.clone() * c.clone());
            }
        }
    }

    fn finish(self, tol: f64) -> Vec<SparseRow<S>> {
        self.rows
            .into_iter()
            .map(|r| linalg::sparse_from_entries(r, tol))
            .filter(|r| !r.is_empty())
            .collect()
    }
}

fn pair_constraints<S: Scalar>(
    kind: MapKind,
    alg: &AlgebraPresentation<S>,
    module: &BimodulePresentation<S>,
    i: usize,
    j: usize,
) -> Vec<SparseRow<S>> {
    let n = alg.dim();
    let tol = module.tol();
    let one = S::one();
    let neg = -S::one();
    let mut out = Vec::new();
    let derivation = |c: &mut Constraint<S>| {
        c.t_of(&alg.basis_product(i, j), &one);
        c.t_right(i, j, &neg);
        c.left_t(i, j, &neg);
    };
    let central = |c: &mut Constraint<S>| {
        c.left_t(i, j, &one);
        c.t_right(j, i, &neg);
    };
    let kills_commutator = |c: &mut Constraint<S>| {
        c.t_of(&(&alg.basis_product(i, j) - &alg.basis_product(j, i)), &one);
    };
    match kind {
        MapKind::Derivation => {
            let mut c = Constraint::new(module, n);
            derivation(&mut c);
            out.extend(c.finish(tol));
        }
        MapKind::Jordan if i <= j => {
            let mut c = Constraint::new(module, n);
            c.t_of(&(&alg.basis_product(i, j) + &alg.basis_product(j, i)), &one);
            c.t_right(i, j, &neg);
            c.left_t(i, j, &neg);
            c.t_right(j, i, &neg);
            c.left_t(j, i, &neg);
            out.extend(c.finish(tol));
        }
        MapKind::Lie if i < j => {
            let mut c = Constraint::new(module, n);
            kills_commutator(&mut c);
            c.t_right(i, j, &neg);
            c.left_t(i, j, &neg);
            c.t_right(j, i, &one);
            c.left_t(j, i, &one);
            out.extend(c.finish(tol));
        }
        MapKind::CentralValued => {
            let mut c = Constraint::new(module, n);
            central(&mut c);
            out.extend(c.finish(tol));
        }
        MapKind::CentralTrace => {
            let mut c = Constraint::new(module, n);
            central(&mut c);
            out.extend(c.finish(tol));
            if i < j {
                let mut c = Constraint::new(module, n);
                kills_commutator(&mut c);
                out.extend(c.finish(tol));
            }
        }
        MapKind::CentralDerivation => {
            let mut c = Constraint::new(module, n);
            derivation(&mut c);
            out.extend(c.finish(tol));
            let mut c = Constraint::new(module, n);
            central(&mut c);
            out.extend(c.finish(tol));
        }
        _ => {}
    }
    out
}

/// Basis of all linear maps `A -> X` satisfying the identity of `kind`, by elimination.
pub fn classify_maps<S: Scalar>(
    kind: MapKind,
    alg: &AlgebraPresentation<S>,
    module: &BimodulePresentation<S>,
) -> Result<Vec<LinearMap<S>>> {
    module.check_algebra(alg)?;
    let (n, m) = (alg.dim(), module.dim());
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let rows: Vec<SparseRow<S>> = pairs
        .par_iter()
        .flat_map_iter(|&(i, j)| pair_constraints(kind, alg, module, i, j))
        .collect();
    let basis = linalg::null_space(&rows, m * n, module.tol());
    Ok(basis
        .into_iter()
        .map(|v| LinearMap::from_flat(alg.id(), module.id(), m, n, &v))
        .collect())
}

/// Whether `d` lies in the span of `basis`.
pub fn in_span<S: Scalar>(basis: &[LinearMap<S>], d: &LinearMap<S>, tol: f64) -> bool {
    let ncols = d.rows() * d.cols();
    let mut e = Echelon::new(ncols, tol);
    for b in basis {
        e.insert(&b.to_flat());
    }
    e.contains(&d.to_flat())
}

/// Everything brought over to `A#`: the unitization, the module with `e`
/// acting as the identity, and the diagonal.
struct Lifted<S> {
    sharp: AlgebraPresentation<S>,
    module: BimodulePresentation<S>,
    t: Tensor2<S>,
    base_module: BimodulePresentation<S>,
    n: usize,
}

impl<S: Scalar> Lifted<S> {
    fn new(alg: &AlgebraPresentation<S>, module: &BimodulePresentation<S>, t: &Tensor2<S>) -> Result<Self> {
        module.check_algebra(alg)?;
        let (sharp, xs) = module.unitized(alg)?;
        let t = if t.space() == sharp.id() {
            sharp.check_tensor(t)?;
            t.clone()
        } else if t.space() == alg.id() {
            unitized_diagonal(alg, t)?
        } else {
            return Err(Error::mismatch("diagonal is over neither the algebra nor its unitization"));
        };
        Ok(Lifted { sharp, module: xs, t, base_module: module.clone(), n: alg.dim() })
    }

    fn map(&self, d: &LinearMap<S>) -> LinearMap<S> {
        d.extend_domain(self.sharp.id(), self.n + 1).retag_codomain(self.module.id())
    }

    fn unmap(&self, d: &LinearMap<S>, alg: &AlgebraPresentation<S>) -> LinearMap<S> {
        d.restrict_domain(alg.id(), self.n).retag_codomain(self.base_module.id())
    }

    fn up(&self, x: &Element<S>) -> Element<S> {
        x.retag(self.module.id())
    }

    fn down(&self, x: &Element<S>) -> Element<S> {
        x.retag(self.base_module.id())
    }

    fn basis(&self, k: usize) -> Element<S> {
        self.sharp.basis(k)
    }

    fn norm(&self, x: &Element<S>) -> S {
        self.module.norm(x)
    }

    fn comm(&self, a: &Element<S>, x: &Element<S>) -> Element<S> {
        &self.module.left_unchecked(a, x) - &self.module.right_unchecked(x, a)
    }

    fn psi(&self, x: &Element<S>) -> Result<Element<S>> {
        psi_map(&self.module, x, &self.t)
    }

    fn phi(&self, d: &LinearMap<S>) -> Result<Element<S>> {
        phi_map(&self.module, d, &self.t)
    }

    /// Largest defect of the diagonal over the basis of `A#`, plus the per-element
    /// `d1 + d3` on the basis of `A`.
    fn diagonal_quality(&self) -> Result<(S, Vec<S>)> {
        let mut worst = S::zero();
        let mut d13 = Vec::with_capacity(self.n);
        for k in 0..=self.n {
            let d = defects(&self.sharp, &self.basis(k), &self.t)?;
            worst = S::max_of(worst, d.max());
            if k < self.n {
                d13.push(d.d1.clone() + d.d3.clone());
            }
        }
        Ok((worst, d13))
    }

    /// `||pi(t) y - y||`.
    fn unit_defect(&self, y: &Element<S>) -> Result<S> {
        let pt = self.sharp.pi(&self.t)?;
        Ok(self.norm(&(&self.module.left_unchecked(&pt, y) - y)))
    }

    /// `M_X ||D||`, the constant in `||Phi_D(s)|| <= M_X ||D|| ||s||`.
    fn phi_constant(&self, d: &LinearMap<S>, alg: &AlgebraPresentation<S>) -> Result<S> {
        let mx = self.module.action_constant(&self.sharp)?;
        Ok(mx * d.op_norm(alg.weights(), self.base_module.weights()))
    }

    fn max_centrality_defect(&self, y: &Element<S>) -> S {
        (0..=self.n).fold(S::zero(), |acc, k| S::max_of(acc, self.norm(&self.comm(&self.basis(k), y))))
    }
}

fn check_diagonal_tolerance<S: Scalar>(quality: &S, diagonal_tol: &S) -> Result<()> {
    if quality > diagonal_tol {
        return Err(Error::Precondition(format!(
            "diagonal defect {} exceeds the allowed {}",
            quality.render(),
            diagonal_tol.render()
        )));
    }
    Ok(())
}

/// Outcome of the two-stage Jordan decomposition.
#[derive(Clone, Debug)]
pub struct JordanReport<S> {
    /// `Omega = x - x1 / 2`, with `D(a) = a Omega - Omega a`.
    pub omega: Element<S>,
    /// `x = Phi_D(t)`.
    pub x: Element<S>,
    /// `Delta(a) = psi_{D(a)}(t)`.
    pub delta: LinearMap<S>,
    /// `x1 = Phi_Delta(t)`.
    pub x1: Element<S>,
    pub symmetric: bool,
    /// Largest defect of the diagonal on the basis of the unitization.
    pub diagonal_defect: S,
    /// Whether the diagonal is exact, so every identity below must hold exactly.
    pub exact: bool,
    /// `max_a ||D(a) - (a x - x a) + Delta(a)||`.
    pub identity_residual: S,
    /// Bound on `identity_residual` from the diagonal's defects.
    pub identity_bound: S,
    /// `max ||b Delta(a) - Delta(a) b||`.
    pub delta_centrality: S,
    /// `max_a ||Delta(a) - (a x1 - x1 a) / 2||`.
    pub delta_residual: S,
    /// `max_a ||D(a) - (a Omega - Omega a)||`.
    pub residual: S,
}

impl<S: Scalar> JordanReport<S> {
    pub fn passes(&self, tol: f64) -> bool {
        self.residual.is_negligible(tol)
    }
}

/// Writes a Jordan derivation as an inner derivation `a -> a Omega - Omega a`.
///
/// `t` is a diagonal of `A` (lifted to `A#` when `A` is unital) or of `A#`;
/// its largest defect must not exceed `diagonal_tol`. With an exact diagonal
/// every intermediate identity is asserted.
pub fn jordan_decompose<S: Scalar>(
    alg: &AlgebraPresentation<S>,
    module: &BimodulePresentation<S>,
    d: &LinearMap<S>,
    t: &Tensor2<S>,
    diagonal_tol: &S,
) -> Result<JordanReport<S>> {
    check_map(alg, module, d)?;
    if !is_jordan(alg, module, d)? {
        return Err(Error::Precondition("map is not a Jordan derivation".into()));
    }
    let lift = Lifted::new(alg, module, t)?;
    let tol = module.tol();
    let (quality, d13) = lift.diagonal_quality()?;
    check_diagonal_tolerance(&quality, diagonal_tol)?;
    let exact = quality.is_negligible(tol);
    let symmetric = lift.t.is_symmetric(tol);

    let ds = lift.map(d);
    let x = lift.phi(&ds)?;
    let cphi = lift.phi_constant(d, alg)?;
    let n = alg.dim();

    let mut delta_images = Vec::with_capacity(n);
    let mut identity_residual = S::zero();
    let mut identity_bound = S::zero();
    for k in 0..n {
        let a = lift.basis(k);
        let da = ds.column(k);
        let delta_a = lift.psi(&da)?;
        let r = &(&da - &lift.comm(&a, &x)) + &delta_a;
        identity_residual = S::max_of(identity_residual, lift.norm(&r));
        identity_bound = S::max_of(identity_bound, cphi.clone() * d13[k].clone() + lift.unit_defect(&da)?);
        delta_images.push(delta_a);
    }
    let mut delta_images_sharp = delta_images.clone();
    delta_images_sharp.push(lift.module.zero());
    let delta_sharp = LinearMap::from_images(lift.sharp.id(), lift.module.id(), lift.module.dim(), &delta_images_sharp)?;
    let delta_centrality = delta_images.iter().fold(S::zero(), |acc, y| S::max_of(acc, lift.max_centrality_defect(y)));

    let x1 = lift.phi(&delta_sharp)?;
    let h = half::<S>();
    let omega = x.combine(&x1, &(-h.clone())).chop(tol);
    let mut delta_residual = S::zero();
    let mut residual = S::zero();
    for k in 0..n {
        let a = lift.basis(k);
        let r = delta_images[k].combine(&lift.comm(&a, &x1), &(-h.clone()));
        delta_residual = S::max_of(delta_residual, lift.norm(&r));
        let r = &ds.column(k) - &lift.comm(&a, &omega);
        residual = S::max_of(residual, lift.norm(&r));
    }

    if exact {
        let checks = [
            (&identity_residual, "D(a) = (ax - xa) - psi_{D(a)}(t)"),
            (&delta_centrality, "Delta is central"),
            (&delta_residual, "Delta(a) = (a x1 - x1 a) / 2"),
            (&residual, "D(a) = a Omega - Omega a"),
        ];
        for (v, what) in checks {
            if !v.is_negligible(tol) {
                let hint = if symmetric { "" } else { " (the diagonal is not symmetric)" };
                return Err(Error::Invariant(format!("{what} fails with residual {}{hint}", v.render())));
            }
        }
    }

    Ok(JordanReport {
        omega: lift.down(&omega),
        x: lift.down(&x),
        delta: lift.unmap(&delta_sharp, alg),
        x1: lift.down(&x1),
        symmetric,
        diagonal_defect: quality,
        exact,
        identity_residual,
        identity_bound,
        delta_centrality,
        delta_residual,
        residual,
    })
}

#[derive(Clone, Debug)]
pub struct CentralJordanReport<S> {
    /// `x = Phi_D(t)`, with `D(a) = (a x - x a) / 2`.
    pub x: Element<S>,
    pub diagonal_defect: S,
    pub exact: bool,
    /// `max_a ||D(a) - (a x - x a) / 2||`.
    pub residual: S,
    pub residual_bound: S,
    pub symmetric_module: bool,
    pub is_derivation: bool,
}

/// Central Jordan derivations: `D(a) = (a x - x a) / 2` with `x = Phi_D(t)`.
///
/// On a symmetric bimodule the right-hand side vanishes, so `D` is then the
/// zero derivation; this is asserted for exact diagonals.
pub fn central_jordan_decompose<S: Scalar>(
    alg: &AlgebraPresentation<S>,
    module: &BimodulePresentation<S>,
    d: &LinearMap<S>,
    t: &Tensor2<S>,
    diagonal_tol: &S,
) -> Result<CentralJordanReport<S>> {
    check_map(alg, module, d)?;
    if !is_jordan(alg, module, d)? || !is_central_valued(alg, module, d)? {
        return Err(Error::Precondition("map is not a central Jordan derivation".into()));
    }
    let lift = Lifted::new(alg, module, t)?;
    let tol = module.tol();
    let (quality, d13) = lift.diagonal_quality()?;
    check_diagonal_tolerance(&quality, diagonal_tol)?;
    let exact = quality.is_negligible(tol);

    let ds = lift.map(d);
    let x = lift.phi(&ds)?;
    let cphi = lift.phi_constant(d, alg)?;
    let h = half::<S>();
    let two = S::from_int(2);
    let mut residual = S::zero();
    let mut residual_bound = S::zero();
    for k in 0..alg.dim() {
        let da = ds.column(k);
        let r = da.combine(&lift.comm(&lift.basis(k), &x), &(-h.clone()));
        residual = S::max_of(residual, lift.norm(&r));
        let b = (cphi.clone() * d13[k].clone() + two.clone() * lift.unit_defect(&da)?) * h.clone();
        residual_bound = S::max_of(residual_bound, b);
    }
    let symmetric_module = module.is_symmetric();
    let is_derivation = is_derivation(alg, module, d)?;
    if exact {
        if !residual.is_negligible(tol) {
            return Err(Error::Invariant(format!("D(a) = (ax - xa) / 2 fails with residual {}", residual.render())));
        }
        if symmetric_module && !is_derivation {
            return Err(Error::Invariant("central Jordan map into a symmetric module is not a derivation".into()));
        }
    }
    Ok(CentralJordanReport {
        x: lift.down(&x),
        diagonal_defect: quality,
        exact,
        residual,
        residual_bound,
        symmetric_module,
        is_derivation,
    })
}

/// Range check against a designated subbimodule.
#[derive(Clone, Debug, PartialEq)]
pub struct SubmoduleCheck {
    pub derivation_in_submodule: bool,
    pub trace_in_submodule_center: bool,
}

#[derive(Clone, Debug)]
pub struct LieReport<S> {
    /// `x = Phi_D(t)`, so that `d(a) = a x - x a`.
    pub x: Element<S>,
    /// The derivation part.
    pub d: LinearMap<S>,
    /// The central trace part, `tau(a) = psi_{D(a)}(t)`.
    pub tau: LinearMap<S>,
    pub diagonal_defect: S,
    pub exact: bool,
    /// `max_a ||D(a) - d(a) - tau(a)||`.
    pub residual: S,
    pub residual_bound: S,
    /// Identity defect of `d` as a derivation.
    pub derivation_defect: S,
    /// `max ||b tau(a) - tau(a) b||`.
    pub tau_centrality: S,
    /// `max ||tau([b_i, b_j])||`.
    pub tau_commutator: S,
    pub tau_in_central_trace_span: bool,
    pub submodule: Option<SubmoduleCheck>,
}

/// Splits a Lie derivation as `D = d + tau` with `d` a derivation and `tau` a central trace.
///
/// When `submodule` spans a subbimodule containing `D(A)`, the report also
/// records whether `d(A)` lies in it and `tau(A)` in its center.
pub fn lie_decompose<S: Scalar>(
    alg: &AlgebraPresentation<S>,
    module: &BimodulePresentation<S>,
    d: &LinearMap<S>,
    t: &Tensor2<S>,
    diagonal_tol: &S,
    submodule: Option<&[Element<S>]>,
) -> Result<LieReport<S>> {
    check_map(alg, module, d)?;
    if !is_lie(alg, module, d)? {
        return Err(Error::Precondition("map is not a Lie derivation".into()));
    }
    let lift = Lifted::new(alg, module, t)?;
    let tol = module.tol();
    let (quality, d13) = lift.diagonal_quality()?;
    check_diagonal_tolerance(&quality, diagonal_tol)?;
    let exact = quality.is_negligible(tol);

    let ds = lift.map(d);
    let x = lift.phi(&ds)?;
    let cphi = lift.phi_constant(d, alg)?;
    let n = alg.dim();
    let mut d_images = Vec::with_capacity(n);
    let mut tau_images = Vec::with_capacity(n);
    let mut residual = S::zero();
    let mut residual_bound = S::zero();
    for k in 0..n {
        let da = ds.column(k);
        let inner = lift.comm(&lift.basis(k), &x);
        let tau_a = lift.psi(&da)?;
        let r = &(&da - &inner) - &tau_a;
        residual = S::max_of(residual, lift.norm(&r));
        residual_bound = S::max_of(residual_bound, cphi.clone() * d13[k].clone() + lift.unit_defect(&da)?);
        d_images.push(lift.down(&inner));
        tau_images.push(lift.down(&tau_a));
    }
    let dmap = LinearMap::from_images(alg.id(), module.id(), module.dim(), &d_images)?;
    let tau = LinearMap::from_images(alg.id(), module.id(), module.dim(), &tau_images)?;
    let derivation_defect = identity_defect(MapKind::Derivation, alg, module, &dmap)?;
    let tau_centrality = identity_defect(MapKind::CentralValued, alg, module, &tau)?;
    let tau_commutator = alg
        .basis_commutators()
        .iter()
        .map(|(_, c)| tau.apply(c).map(|v| module.norm(&v)))
        .collect::<Result<Vec<S>>>()?
        .into_iter()
        .fold(S::zero(), S::max_of);
    let traces = classify_maps(MapKind::CentralTrace, alg, module)?;
    let tau_in_central_trace_span = in_span(&traces, &tau, tol);

    let submodule = submodule
        .map(|sub| -> Result<SubmoduleCheck> {
            let span = subspace(module, sub)?;
            let inside = |img: &Element<S>| span.contains(&img.to_sparse_row());
            Ok(SubmoduleCheck {
                derivation_in_submodule: d_images.iter().all(inside),
                trace_in_submodule_center: tau_images.iter().all(|v| inside(v) && module.is_central(v)),
            })
        })
        .transpose()?;

    if exact {
        let checks = [
            (&residual, "D(a) = (ax - xa) + psi_{D(a)}(t)"),
            (&derivation_defect, "d is a derivation"),
            (&tau_centrality, "tau is central"),
            (&tau_commutator, "tau vanishes on commutators"),
        ];
        for (v, what) in checks {
            if !v.is_negligible(tol) {
                return Err(Error::Invariant(format!("{what} fails with residual {}", v.render())));
            }
        }
        if !tau_in_central_trace_span {
            return Err(Error::Invariant("tau is outside the central trace space".into()));
        }
    }

    Ok(LieReport {
        x: lift.down(&x),
        d: dmap,
        tau,
        diagonal_defect: quality,
        exact,
        residual,
        residual_bound,
        derivation_defect,
        tau_centrality,
        tau_commutator,
        tau_in_central_trace_span,
        submodule,
    })
}

#[derive(Clone, Debug)]
pub struct CentralDerivationReport<S> {
    pub basis: Vec<LinearMap<S>>,
    /// Whether an exact symmetric diagonal was supplied, forcing the space to vanish.
    pub diagonal_checked: bool,
}

impl<S> CentralDerivationReport<S> {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn vanishes(&self) -> bool {
        self.basis.is_empty()
    }
}

/// Central derivations `A -> X`. With an exact symmetric diagonal the space must be zero.
pub fn central_derivation_space<S: Scalar>(
    alg: &AlgebraPresentation<S>,
    module: &BimodulePresentation<S>,
    diagonal: Option<&Tensor2<S>>,
) -> Result<CentralDerivationReport<S>> {
    let basis = classify_maps(MapKind::CentralDerivation, alg, module)?;
    let mut diagonal_checked = false;
    if let Some(t) = diagonal {
        let lift = Lifted::new(alg, module, t)?;
        let (quality, _) = lift.diagonal_quality()?;
        if quality.is_negligible(module.tol()) && lift.t.is_symmetric(module.tol()) {
            diagonal_checked = true;
            if !basis.is_empty() {
                return Err(Error::Invariant(format!(
                    "{} independent central derivations despite an exact symmetric diagonal",
                    basis.len()
                )));
            }
        }
    }
    Ok(CentralDerivationReport { basis, diagonal_checked })
}

fn subspace<S: Scalar>(module: &BimodulePresentation<S>, vectors: &[Element<S>]) -> Result<Echelon<S>> {
    let mut e = Echelon::new(module.dim(), module.tol());
    for v in vectors {
        module.check(v)?;
        e.insert(&v.to_sparse_row());
    }
    Ok(e)
}

/// `W = X / Y` with its quotient map.
#[derive(Clone, Debug)]
pub struct Quotient<S> {
    pub module: BimodulePresentation<S>,
    /// The quotient map `X -> W`.
    pub map: LinearMap<S>,
    /// Coordinates of `X` kept as the basis of `W`.
    pub kept: Vec<usize>,
}

impl<S: Scalar> Quotient<S> {
    pub fn project(&self, x: &Element<S>) -> Result<Element<S>> {
        self.map.apply(x)
    }
}

/// Quotient of `X` by the subbimodule spanned by `sub`.
///
/// The basis of `W` is the image of the coordinate vectors of `X` outside the
/// pivot columns of `sub`, weighted as in `X`.
pub fn quotient_bimodule<S: Scalar>(
    alg: &AlgebraPresentation<S>,
    module: &BimodulePresentation<S>,
    sub: &[Element<S>],
) -> Result<Quotient<S>> {
    module.check_algebra(alg)?;
    let tol = module.tol();
    let span = subspace(module, sub)?;
    for row in span.rows() {
        let y = Element::from_terms(module.id(), row.iter().cloned());
        for a in 0..alg.dim() {
            let b = alg.basis(a);
            let l = module.left_unchecked(&b, &y);
            let r = module.right_unchecked(&y, &b);
            if !span.contains(&l.to_sparse_row()) || !span.contains(&r.to_sparse_row()) {
                return Err(Error::Precondition(format!(
                    "subspace is not invariant under the action of {}",
                    alg.label(a)
                )));
            }
        }
    }
    let m = module.dim();
    let pivots: std::collections::BTreeSet<usize> = span.pivots().iter().copied().collect();
    let kept: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
    let position: BTreeMap<usize, usize> = kept.iter().enumerate().map(|(p, c)| (*c, p)).collect();
    let reduce = |x: &Element<S>| -> SparseRow<S> {
        span.reduce(&x.to_sparse_row())
            .remainder
            .into_iter()
            .map(|(c, v)| (position[&c], v))
            .collect()
    };
    let n = alg.dim();
    let q = kept.len();
    let mut left = vec![Vec::new(); n * q];
    let mut right = vec![Vec::new(); n * q];
    for (p, &c) in kept.iter().enumerate() {
        let xc = module.basis(c);
        for a in 0..n {
            let b = alg.basis(a);
            left[a * q + p] = reduce(&module.left_unchecked(&b, &xc));
            right[p * n + a] = reduce(&module.right_unchecked(&xc, &b));
        }
    }
    let labels = kept.iter().map(|&c| module.labels()[c].clone()).collect();
    let weights = kept.iter().map(|&c| module.weights()[c].clone()).collect();
    let w = BimodulePresentation::from_tables(alg, labels, weights, left, right);
    w.validate(alg)?;
    let images: Vec<Element<S>> = (0..m)
        .map(|c| Element::from_terms(w.id(), reduce(&module.basis(c))).chop(tol))
        .collect();
    let map = LinearMap::from_images(module.id(), w.id(), q, &images)?;
    Ok(Quotient { module: w, map, kept })
}

/// Numerical replay of the submodule argument for `delta + tau` landing in `X`.
#[derive(Clone, Debug)]
pub struct SubmoduleReplay<S> {
    pub quotient: Quotient<S>,
    /// `pi o delta` as a map into `W`.
    pub induced: LinearMap<S>,
    /// Whether `pi o delta` is a central derivation into `W`.
    pub induced_is_central_derivation: bool,
    /// Dimension of the central derivation space of `W`.
    pub quotient_central_derivations: usize,
    pub induced_vanishes: bool,
    pub delta_in_submodule: bool,
    pub tau_in_submodule_center: bool,
}

impl<S> SubmoduleReplay<S> {
    pub fn passes(&self) -> bool {
        self.induced_is_central_derivation
            && self.quotient_central_derivations == 0
            && self.induced_vanishes
            && self.delta_in_submodule
            && self.tau_in_submodule_center
    }
}

/// With `delta: A -> Y` a derivation, `tau: A -> Z(Y)` and `(delta + tau)(A)`
/// inside the subbimodule `X` spanned by `sub`, passes to `W = Y / X` and checks
/// that `pi o delta` is a central derivation, hence zero when `W` has none.
pub fn replay_submodule<S: Scalar>(
    alg: &AlgebraPresentation<S>,
    module: &BimodulePresentation<S>,
    sub: &[Element<S>],
    delta: &LinearMap<S>,
    tau: &LinearMap<S>,
) -> Result<SubmoduleReplay<S>> {
    check_map(alg, module, delta)?;
    check_map(alg, module, tau)?;
    if !is_derivation(alg, module, delta)? {
        return Err(Error::Precondition("delta is not a derivation".into()));
    }
    if !is_central_valued(alg, module, tau)? {
        return Err(Error::Precondition("tau is not central-valued".into()));
    }
    let span = subspace(module, sub)?;
    let sum = delta.combine(tau, &S::one())?;
    if !(0..alg.dim()).all(|k| span.contains(&sum.column(k).to_sparse_row())) {
        return Err(Error::Precondition("(delta + tau)(A) is not inside the submodule".into()));
    }
    let quotient = quotient_bimodule(alg, module, sub)?;
    let induced = quotient.map.compose(delta)?;
    let w = &quotient.module;
    let induced_is_central_derivation = satisfies(MapKind::CentralDerivation, alg, w, &induced)?;
    let quotient_central_derivations = classify_maps(MapKind::CentralDerivation, alg, w)?.len();
    let tol = module.tol();
    let induced_vanishes = induced.is_zero(tol);
    let delta_in_submodule = (0..alg.dim()).all(|k| span.contains(&delta.column(k).to_sparse_row()));
    let tau_in_submodule_center = (0..alg.dim()).all(|k| {
        let v = tau.column(k);
        span.contains(&v.to_sparse_row()) && module.is_central(&v)
    });
    Ok(SubmoduleReplay {
        quotient,
        induced,
        induced_is_central_derivation,
        quotient_central_derivations,
        induced_vanishes,
        delta_in_submodule,
        tau_in_submodule_center,
    })
}

/// Largest `||psi_x(t)||` over module basis vectors and `||Phi_D(t)||` over a net.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundednessReport<S> {
    /// Indexed by module basis vector.
    pub psi_max: Vec<S>,
    pub phi_max: Option<S>,
}

pub fn net_boundedness<S: Scalar>(
    alg: &AlgebraPresentation<S>,
    module: &BimodulePresentation<S>,
    d: Option<&LinearMap<S>>,
    net: &DiagonalNet<S>,
) -> Result<BoundednessReport<S>> {
    if let Some(d) = d {
        check_map(alg, module, d)?;
    }
    let mut psi_max = vec![S::zero(); module.dim()];
    let mut phi_max = d.map(|_| S::zero());
    for t in net.entries() {
        let lift = Lifted::new(alg, module, t)?;
        for (k, slot) in psi_max.iter_mut().enumerate() {
            let v = lift.norm(&lift.psi(&lift.up(&module.basis(k)))?);
            *slot = S::max_of(slot.clone(), v);
        }
        if let (Some(d), Some(slot)) = (d, phi_max.as_mut()) {
            let v = lift.norm(&lift.phi(&lift.map(d))?);
            *slot = S::max_of(slot.clone(), v);
        }
    }
    Ok(BoundednessReport { psi_max, phi_max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagonals::{group_diagonal, matrix_diagonal};
    use crate::group::GroupTable;
    use crate::scalar::Rational;

    type Q = Rational;

    fn q(p: i64, d: i64) -> Q {
        Q::from_ratio(p, d)
    }

    fn m2() -> (AlgebraPresentation<Q>, BimodulePresentation<Q>, Tensor2<Q>) {
        let a = AlgebraPresentation::<Q>::matrix(2);
        let x = BimodulePresentation::regular(&a);
        let t = matrix_diagonal::<Q>(2).unwrap();
        (a, x, t)
    }

    fn module_el(x: &BimodulePresentation<Q>, terms: &[(usize, Q)]) -> Element<Q> {
        x.element(terms.iter().cloned()).unwrap()
    }

    /// `a -> [w, a] = w a - a w`.
    fn bracket(a: &AlgebraPresentation<Q>, x: &BimodulePresentation<Q>, w: &Element<Q>) -> LinearMap<Q> {
        inner_derivation(a, x, &w.scale(&q(-1, 1))).unwrap()
    }

    fn trace_map(a: &AlgebraPresentation<Q>, x: &BimodulePresentation<Q>, c: &Element<Q>) -> LinearMap<Q> {
        let values = vec![q(1, 1), q(0, 1), q(0, 1), q(1, 1)];
        rank_one_map(a, x, &values, c).unwrap()
    }

    #[test]
    fn psi_on_matrix_diagonal_is_half_trace() {
        let (_, x, t) = m2();
        let e12 = module_el(&x, &[(1, q(1, 1))]);
        assert!(psi_map(&x, &e12, &t).unwrap().is_zero());
        let e11 = module_el(&x, &[(0, q(1, 1))]);
        assert_eq!(psi_map(&x, &e11, &t).unwrap(), module_el(&x, &[(0, q(1, 2)), (3, q(1, 2))]));
    }

    #[test]
    fn phi_examples() {
        let (a, x, t) = m2();
        let d = bracket(&a, &x, &module_el(&x, &[(1, q(1, 1))]));
        assert_eq!(phi_map(&x, &d, &t).unwrap(), module_el(&x, &[(1, q(-1, 1))]));
        let zero = LinearMap::zero(a.id(), x.id(), 4, 4);
        assert!(phi_map(&x, &zero, &t).unwrap().is_zero());
        let id = module_el(&x, &[(0, q(1, 1)), (3, q(1, 1))]);
        let tr = trace_map(&a, &x, &id);
        assert_eq!(phi_map(&x, &tr, &t).unwrap(), id.scale(&q(1, 2)));
    }

    #[test]
    fn classification_dimensions_on_m2() {
        let (a, x, _) = m2();
        assert_eq!(classify_maps(MapKind::Derivation, &a, &x).unwrap().len(), 3);
        assert_eq!(classify_maps(MapKind::Jordan, &a, &x).unwrap().len(), 3);
        assert_eq!(classify_maps(MapKind::Lie, &a, &x).unwrap().len(), 4);
        assert_eq!(classify_maps(MapKind::CentralTrace, &a, &x).unwrap().len(), 1);
        assert_eq!(classify_maps(MapKind::CentralDerivation, &a, &x).unwrap().len(), 0);
        for d in classify_maps(MapKind::Lie, &a, &x).unwrap() {
            assert!(is_lie(&a, &x, &d).unwrap());
        }
    }

    #[test]
    fn jordan_decomposition_of_inner_derivation() {
        let (a, x, t) = m2();
        let e12 = module_el(&x, &[(1, q(1, 1))]);
        let d = bracket(&a, &x, &e12);
        let r = jordan_decompose(&a, &x, &d, &t, &q(0, 1)).unwrap();
        assert!(r.exact && r.symmetric);
        assert_eq!(r.x, e12.scale(&q(-1, 1)));
        assert!(r.delta.is_zero(0.0));
        assert_eq!(inner_derivation(&a, &x, &r.omega).unwrap(), d);
        let zero = LinearMap::zero(a.id(), x.id(), 4, 4);
        assert!(jordan_decompose(&a, &x, &zero, &t, &q(0, 1)).unwrap().omega.is_zero());
    }

    #[test]
    fn jordan_rejects_non_jordan_and_bad_diagonal() {
        let (a, x, t) = m2();
        let id = module_el(&x, &[(0, q(1, 1)), (3, q(1, 1))]);
        let tr = trace_map(&a, &x, &id);
        assert!(matches!(jordan_decompose(&a, &x, &tr, &t, &q(0, 1)), Err(Error::Precondition(_))));
        let d = bracket(&a, &x, &module_el(&x, &[(1, q(1, 1))]));
        let bad = t.scale(&q(1, 2));
        assert!(matches!(jordan_decompose(&a, &x, &d, &bad, &q(0, 1)), Err(Error::Precondition(_))));
        let r = jordan_decompose(&a, &x, &d, &bad, &q(10, 1)).unwrap();
        assert!(!r.exact);
        assert!(r.identity_residual <= r.identity_bound);
    }

    #[test]
    fn jordan_on_commutative_group_algebra() {
        let g = GroupTable::cyclic(2);
        let a: AlgebraPresentation<Q> = g.algebra();
        let x = BimodulePresentation::regular(&a);
        assert!(classify_maps(MapKind::Jordan, &a, &x).unwrap().is_empty());
        let t = group_diagonal::<Q>(&g).unwrap();
        let zero = LinearMap::zero(a.id(), x.id(), 2, 2);
        assert!(jordan_decompose(&a, &x, &zero, &t, &q(0, 1)).unwrap().omega.is_zero());
    }

    #[test]
    fn lie_decomposition_examples() {
        let (a, x, t) = m2();
        let e12 = module_el(&x, &[(1, q(1, 1))]);
        let id = module_el(&x, &[(0, q(1, 1)), (3, q(1, 1))]);
        let inner = bracket(&a, &x, &e12);
        let tr = trace_map(&a, &x, &id);
        let d = inner.combine(&tr, &q(1, 1)).unwrap();
        let r = lie_decompose(&a, &x, &d, &t, &q(0, 1), None).unwrap();
        assert_eq!(r.d, inner);
        assert_eq!(r.tau, tr);
        assert_eq!(r.x, &e12.scale(&q(-1, 1)) + &id.scale(&q(1, 2)));
        assert!(r.tau_in_central_trace_span);

        let r = lie_decompose(&a, &x, &tr, &t, &q(0, 1), None).unwrap();
        assert!(r.d.is_zero(0.0));
        assert_eq!(r.tau, tr);
    }

    #[test]
    fn lie_sign_matters() {
        // With the Jordan sign the trace part would be subtracted rather than added.
        let (a, x, t) = m2();
        let id = module_el(&x, &[(0, q(1, 1)), (3, q(1, 1))]);
        let tr = trace_map(&a, &x, &id);
        let r = lie_decompose(&a, &x, &tr, &t, &q(0, 1), None).unwrap();
        let wrong = r.d.combine(&r.tau, &q(-1, 1)).unwrap();
        assert!(!wrong.approx_eq(&tr, 0.0));
    }

    #[test]
    fn central_jordan_into_symmetric_modules() {
        let (a, _, t) = m2();
        let triv = BimodulePresentation::trivial(&a, 2);
        assert!(triv.is_symmetric());
        let zero = LinearMap::zero(a.id(), triv.id(), 2, 4);
        let r = central_jordan_decompose(&a, &triv, &zero, &t, &q(0, 1)).unwrap();
        assert!(r.symmetric_module && r.is_derivation);
        assert!(classify_maps(MapKind::Jordan, &a, &triv).unwrap().is_empty());

        let g = GroupTable::cyclic(3);
        let c3: AlgebraPresentation<Q> = g.algebra();
        let x = BimodulePresentation::regular(&c3);
        let t = group_diagonal::<Q>(&g).unwrap();
        for d in classify_maps(MapKind::Jordan, &c3, &x).unwrap() {
            let r = central_jordan_decompose(&c3, &x, &d, &t, &q(0, 1)).unwrap();
            assert!(r.is_derivation);
        }
    }

    #[test]
    fn central_derivations_vanish() {
        let (a, x, t) = m2();
        let r = central_derivation_space(&a, &x, Some(&t)).unwrap();
        assert!(r.vanishes() && r.diagonal_checked);
        let triv = BimodulePresentation::trivial(&a, 3);
        assert!(classify_maps(MapKind::Derivation, &a, &triv).unwrap().is_empty());
    }

    #[test]
    fn block_quotient() {
        let (a, x, _) = m2();
        let y = BimodulePresentation::direct_sum(&a, &[&x, &x]).unwrap();
        let first: Vec<Element<Q>> = (0..4).map(|k| y.basis(k)).collect();
        let qt = quotient_bimodule(&a, &y, &first).unwrap();
        assert_eq!(qt.module.dim(), 4);
        assert_eq!(qt.kept, vec![4, 5, 6, 7]);
        for i in 0..4 {
            for k in 0..8 {
                let v = y.basis(k);
                let lhs = qt.project(&y.left_act(&a.basis(i), &v).unwrap()).unwrap();
                let rhs = qt.module.left_act(&a.basis(i), &qt.project(&v).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        let not_sub = vec![y.basis(0)];
        assert!(matches!(quotient_bimodule(&a, &y, &not_sub), Err(Error::Precondition(_))));
    }

    #[test]
    fn submodule_replay_on_diagonal_copy() {
        let (a, x, _) = m2();
        let y = BimodulePresentation::direct_sum(&a, &[&x, &x]).unwrap();
        let sub: Vec<Element<Q>> = (0..4).map(|k| &y.basis(k) + &y.basis(k + 4)).collect();
        // w = (v, v) with v = E12 + 2 E21, so ad_w preserves the diagonal copy.
        let w = module_el(&y, &[(1, q(1, 1)), (2, q(2, 1)), (5, q(1, 1)), (6, q(2, 1))]);
        let delta = inner_derivation(&a, &y, &w).unwrap();
        let id2 = module_el(&y, &[(0, q(1, 1)), (3, q(1, 1)), (4, q(1, 1)), (7, q(1, 1))]);
        let tau = rank_one_map(&a, &y, &[q(1, 1), q(0, 1), q(0, 1), q(1, 1)], &id2).unwrap();
        let r = replay_submodule(&a, &y, &sub, &delta, &tau).unwrap();
        assert!(r.passes(), "{r:?}");
        assert_eq!(r.quotient.module.dim(), 4);
    }

    #[test]
    fn boundedness_over_net() {
        let (a, x, t) = m2();
        let net = DiagonalNet::new(&a, vec![t.scale(&q(1, 2)), t.clone()], DiagonalNet::basis_test_set(&a), q(0, 1)).unwrap();
        let d = bracket(&a, &x, &module_el(&x, &[(1, q(1, 1))]));
        let r = net_boundedness(&a, &x, Some(&d), &net).unwrap();
        assert_eq!(r.psi_max.len(), 4);
        assert_eq!(r.phi_max, Some(q(1, 1)));
    }

    #[test]
    fn kind_parsing() {
        for k in MapKind::ALL {
            assert_eq!(k.to_string().parse::<MapKind>().unwrap(), k);
        }
        assert_eq!("central_trace".parse::<MapKind>().unwrap(), MapKind::CentralTrace);
        assert!("bogus".parse::<MapKind>().is_err());
    }
}

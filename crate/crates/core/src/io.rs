//! JSON formats for presentations, tensors, nets, maps and reports.
//!
//! Scalars are written with [`Scalar::to_json`]: exact rationals as `"p/q"`
//! strings, floats as numbers. Readers accept either form. Basis indices may
//! be given as integers or as basis labels.

use serde_json::{json, Map, Value};

use crate::algebra::{AlgebraPresentation, DirectSum};
use crate::bimodule::BimodulePresentation;
use crate::derivations::{
    CentralDerivationReport, CentralJordanReport, JordanReport, LieReport, MapKind, Quotient, SubmoduleReplay,
};
use crate::diagonals::{ConvergenceRow, DefectReport, Defects, DiagonalNet, TestElement};
use crate::element::{Element, SpaceId};
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::map::LinearMap;
use crate::scalar::Scalar;
use crate::tensor::Tensor2;
use crate::witness::{Feasibility, Functional, WitnessReport};

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name).ok_or_else(|| parse_err(format!("missing field `{name}`")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(format!("`{what}` must be an array")))
}

fn string_list(v: &Value, what: &str) -> Result<Vec<String>> {
    array(v, what)?
        .iter()
        .map(|s| s.as_str().map(str::to_string).ok_or_else(|| parse_err(format!("`{what}` must hold strings"))))
        .collect()
}

fn uint(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|u| u as usize).ok_or_else(|| parse_err(format!("`{what}` must be a non-negative integer")))
}

fn scalars<S: Scalar>(v: &Value, what: &str) -> Result<Vec<S>> {
    array(v, what)?.iter().map(S::from_json).collect()
}

fn scalars_json<S: Scalar>(xs: &[S]) -> Value {
    Value::Array(xs.iter().map(S::to_json).collect())
}

/// A basis index, given as a number or a label.
fn basis_index(v: &Value, labels: &[String], what: &str) -> Result<usize> {
    let idx = match v {
        Value::Number(_) => uint(v, what)?,
        Value::String(s) => labels
            .iter()
            .position(|l| l == s)
            .ok_or_else(|| parse_err(format!("unknown basis label `{s}` in `{what}`")))?,
        _ => return Err(parse_err(format!("`{what}` entries must be indices or labels"))),
    };
    if idx >= labels.len() {
        return Err(parse_err(format!("index {idx} out of range in `{what}`")));
    }
    Ok(idx)
}

fn tuple<'a>(v: &'a Value, len: usize, what: &str) -> Result<&'a Vec<Value>> {
    let a = array(v, what)?;
    if a.len() != len {
        return Err(parse_err(format!("`{what}` entries must have {len} components")));
    }
    Ok(a)
}

/// Built-in presentations: `M<n>`, `T<n>`, `C`, `C<n>` (group algebra of the cyclic group), `S<n>`.
pub fn preset<S: Scalar>(name: &str) -> Result<AlgebraPresentation<S>> {
    let name = name.trim();
    let arg = |prefix: &str| -> Option<usize> { name.strip_prefix(prefix).and_then(|r| r.parse().ok()) };
    if name == "C" {
        return Ok(AlgebraPresentation::scalars());
    }
    if let Some(n) = arg("M").filter(|n| *n >= 1) {
        return Ok(AlgebraPresentation::matrix(n));
    }
    if let Some(n) = arg("T").filter(|n| *n >= 1) {
        return Ok(AlgebraPresentation::upper_triangular(n));
    }
    if let Some(n) = arg("C").filter(|n| *n >= 1) {
        return Ok(GroupTable::cyclic(n).algebra::<S>().with_name(name));
    }
    if let Some(n) = arg("S").filter(|n| (1..=5).contains(n)) {
        return Ok(GroupTable::symmetric(n).algebra::<S>().with_name(name));
    }
    if let Some(rest) = name.strip_suffix('#') {
        return Ok(preset::<S>(rest)?.unitize());
    }
    if name.contains('+') {
        let parts = name.split('+').map(preset::<S>).collect::<Result<Vec<_>>>()?;
        let refs: Vec<&AlgebraPresentation<S>> = parts.iter().collect();
        return Ok(DirectSum::new(&refs).algebra().clone());
    }
    Err(parse_err(format!("unknown preset `{name}`")))
}

pub fn algebra_to_json<S: Scalar>(alg: &AlgebraPresentation<S>) -> Value {
    let mul: Vec<Value> =
        alg.products().map(|(i, j, k, c)| json!([i, j, k, c.to_json()])).collect();
    let mut obj = Map::new();
    if let Some(name) = alg.name() {
        obj.insert("name".into(), json!(name));
    }
    obj.insert("id".into(), json!(alg.id().to_string()));
    obj.insert("basis".into(), json!(alg.labels()));
    obj.insert("weights".into(), scalars_json(alg.weights()));
    obj.insert("mul".into(), Value::Array(mul));
    obj.insert(
        "unit".into(),
        alg.unit().map(|u| scalars_json(&u.to_dense(alg.dim()))).unwrap_or(Value::Null),
    );
    Value::Object(obj)
}

/// Reads an algebra: either `{"preset": "M3"}`, `{"group": {...}}`, or explicit structure constants.
pub fn algebra_from_json<S: Scalar>(v: &Value, tol: f64) -> Result<AlgebraPresentation<S>> {
    let alg = if let Some(p) = v.get("preset") {
        preset(p.as_str().ok_or_else(|| parse_err("`preset` must be a string"))?)?
    } else if let Some(g) = v.get("group") {
        let table: GroupTable = serde_json::from_value(g.clone()).map_err(|e| parse_err(e.to_string()))?;
        table.validate()?;
        table.algebra()
    } else {
        let labels = string_list(field(v, "basis")?, "basis")?;
        let weights = match v.get("weights") {
            Some(w) => scalars(w, "weights")?,
            None => vec![S::one(); labels.len()],
        };
        let mut products = Vec::new();
        for entry in array(field(v, "mul")?, "mul")? {
            let e = tuple(entry, 4, "mul")?;
            products.push((
                basis_index(&e[0], &labels, "mul")?,
                basis_index(&e[1], &labels, "mul")?,
                basis_index(&e[2], &labels, "mul")?,
                S::from_json(&e[3])?,
            ));
        }
        let unit = match v.get("unit") {
            None | Some(Value::Null) => None,
            Some(u) => Some(scalars(u, "unit")?),
        };
        AlgebraPresentation::new(labels, weights, products, unit, tol)?
    };
    let alg = alg.with_tolerance(tol);
    Ok(match v.get("name").and_then(Value::as_str) {
        Some(name) => alg.with_name(name),
        None => alg,
    })
}

fn reference<S: Scalar>(alg: &AlgebraPresentation<S>) -> Value {
    json!(alg.name().map(str::to_string).unwrap_or_else(|| alg.id().to_string()))
}

fn matches_ref<S: Scalar>(alg: &AlgebraPresentation<S>, r: &str) -> bool {
    r == alg.id().to_string() || alg.name() == Some(r)
}

/// Picks the algebra (or its unitization) named by the document's `"algebra"` field.
/// A missing reference selects `alg`.
pub fn resolve_space<S: Scalar>(v: &Value, alg: &AlgebraPresentation<S>) -> Result<AlgebraPresentation<S>> {
    match v.get("algebra") {
        None | Some(Value::Null) => Ok(alg.clone()),
        Some(Value::String(r)) => {
            if matches_ref(alg, r) {
                return Ok(alg.clone());
            }
            let sharp = alg.unitize();
            if matches_ref(&sharp, r) {
                return Ok(sharp);
            }
            Err(Error::Mismatch(format!("document refers to `{r}`, not to the supplied algebra")))
        }
        Some(_) => Err(parse_err("`algebra` must be a string")),
    }
}

pub fn tensor_to_json<S: Scalar>(alg: &AlgebraPresentation<S>, t: &Tensor2<S>) -> Value {
    json!({
        "algebra": reference(alg),
        "terms": t.terms().map(|(i, j, c)| json!([i, j, c.to_json()])).collect::<Vec<_>>(),
        "symmetric": t.is_symmetric(alg.tol()),
    })
}

fn tensor_terms<S: Scalar>(v: &Value, alg: &AlgebraPresentation<S>) -> Result<Tensor2<S>> {
    let mut terms = Vec::new();
    for entry in array(field(v, "terms")?, "terms")? {
        let e = tuple(entry, 3, "terms")?;
        terms.push((
            basis_index(&e[0], alg.labels(), "terms")?,
            basis_index(&e[1], alg.labels(), "terms")?,
            S::from_json(&e[2])?,
        ));
    }
    alg.tensor(terms)
}

/// Reads a tensor over `alg` or over its unitization, as named in the document.
pub fn tensor_from_json<S: Scalar>(
    v: &Value,
    alg: &AlgebraPresentation<S>,
) -> Result<(AlgebraPresentation<S>, Tensor2<S>)> {
    let space = resolve_space(v, alg)?;
    let t = tensor_terms(v, &space)?;
    Ok((space, t))
}

pub fn element_to_json<S: Scalar>(alg: &AlgebraPresentation<S>, a: &Element<S>, label: Option<&str>) -> Value {
    let mut obj = Map::new();
    obj.insert("algebra".into(), reference(alg));
    if let Some(l) = label {
        obj.insert("label".into(), json!(l));
    }
    obj.insert("terms".into(), Value::Array(a.terms().map(|(i, c)| json!([i, c.to_json()])).collect()));
    Value::Object(obj)
}

fn element_terms<S: Scalar>(v: &Value, labels: &[String]) -> Result<Vec<(usize, S)>> {
    if let Some(dense) = v.get("dense") {
        let values = scalars::<S>(dense, "dense")?;
        if values.len() != labels.len() {
            return Err(parse_err("`dense` has the wrong length"));
        }
        return Ok(values.into_iter().enumerate().collect());
    }
    let mut out = Vec::new();
    for entry in array(field(v, "terms")?, "terms")? {
        let e = tuple(entry, 2, "terms")?;
        out.push((basis_index(&e[0], labels, "terms")?, S::from_json(&e[1])?));
    }
    Ok(out)
}

/// Reads an element of `alg` from `{"terms": [[i, c], ...]}` or `{"dense": [...]}`.
pub fn element_from_json<S: Scalar>(v: &Value, alg: &AlgebraPresentation<S>) -> Result<Element<S>> {
    let space = resolve_space(v, alg)?;
    if space.id() != alg.id() {
        return Err(Error::Mismatch("element is over the unitization".into()));
    }
    alg.element(element_terms(v, alg.labels())?)
}

pub fn module_element_to_json<S: Scalar>(module: &BimodulePresentation<S>, x: &Element<S>) -> Value {
    json!({
        "module": module.id().to_string(),
        "terms": x.terms().map(|(i, c)| json!([i, c.to_json()])).collect::<Vec<_>>(),
    })
}

pub fn module_element_from_json<S: Scalar>(v: &Value, module: &BimodulePresentation<S>) -> Result<Element<S>> {
    module.element(element_terms(v, module.labels())?)
}

pub fn net_to_json<S: Scalar>(alg: &AlgebraPresentation<S>, net: &DiagonalNet<S>) -> Value {
    json!({
        "algebra": reference(alg),
        "entries": net.entries().iter().map(|t| json!({
            "terms": t.terms().map(|(i, j, c)| json!([i, j, c.to_json()])).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "test_set": net.test_set().iter().map(|e| json!({
            "label": e.label,
            "terms": e.element.terms().map(|(i, c)| json!([i, c.to_json()])).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "tolerance": net.tolerance().to_json(),
    })
}

/// Reads a net; `test_set` defaults to the basis and `tolerance` to zero.
/// A bare tensor document is read as a one-entry net.
pub fn net_from_json<S: Scalar>(v: &Value, alg: &AlgebraPresentation<S>) -> Result<DiagonalNet<S>> {
    let space = resolve_space(v, alg)?;
    if space.id() != alg.id() {
        return Err(Error::Mismatch("net is over the unitization; load that algebra instead".into()));
    }
    let entries = match v.get("entries") {
        Some(es) => array(es, "entries")?.iter().map(|e| tensor_terms(e, alg)).collect::<Result<Vec<_>>>()?,
        None => vec![tensor_terms(v, alg)?],
    };
    let test_set = match v.get("test_set") {
        None | Some(Value::Null) => DiagonalNet::basis_test_set(alg),
        Some(ts) => array(ts, "test_set")?
            .iter()
            .enumerate()
            .map(|(k, e)| {
                let label = e.get("label").and_then(Value::as_str).map(str::to_string).unwrap_or_else(|| format!("a{k}"));
                Ok(TestElement { label, element: alg.element(element_terms(e, alg.labels())?)? })
            })
            .collect::<Result<Vec<_>>>()?,
    };
    let tolerance = match v.get("tolerance") {
        Some(t) => S::from_json(t)?,
        None => S::zero(),
    };
    DiagonalNet::new(alg, entries, test_set, tolerance)
}

fn defects_json<S: Scalar>(d: &Defects<S>) -> Value {
    json!({"d1": d.d1.to_json(), "d2": d.d2.to_json(), "d3": d.d3.to_json(), "d4": d.d4.to_json()})
}

pub fn report_to_json<S: Scalar>(report: &DefectReport<S>) -> Value {
    json!({
        "tolerance": report.tolerance.to_json(),
        "require_symmetric": report.require_symmetric,
        "verdict": report.final_verdict(),
        "entries": report.entries.iter().map(|e| json!({
            "entry": e.entry,
            "symmetric": e.symmetric,
            "max_defect": e.max_defect.to_json(),
            "proj_norm": e.proj_norm.to_json(),
            "verdict": e.verdict,
        })).collect::<Vec<_>>(),
        "rows": report.rows.iter().map(|r| json!({
            "entry": r.entry,
            "element": r.element,
            "label": r.label,
            "defects": defects_json(&r.defects),
        })).collect::<Vec<_>>(),
        "monotone": report.monotone,
    })
}

pub fn convergence_to_json<S: Scalar>(rows: &[ConvergenceRow<S>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                json!({
                    "n": r.n,
                    "label": r.label,
                    "defects": defects_json(&r.defects),
                    "tail_bound": r.tail_bound.to_json(),
                })
            })
            .collect(),
    )
}

/// Reads `{"matrices": [{"label", "entries": [[i, j, c], ...]}]}` with 1-based indices
/// as elements of `M_N`.
pub fn test_matrices_from_json<S: Scalar>(v: &Value, ambient: usize) -> Result<Vec<TestElement<S>>> {
    let mut out = Vec::new();
    for (k, m) in array(field(v, "matrices")?, "matrices")?.iter().enumerate() {
        let label = m.get("label").and_then(Value::as_str).map(str::to_string).unwrap_or_else(|| format!("A{}", k + 1));
        let mut terms = Vec::new();
        for entry in array(field(m, "entries")?, "entries")? {
            let e = tuple(entry, 3, "entries")?;
            let (i, j) = (uint(&e[0], "entries")?, uint(&e[1], "entries")?);
            if i == 0 || j == 0 {
                return Err(parse_err("matrix entries are 1-based"));
            }
            if i > ambient || j > ambient {
                return Err(Error::InvalidArgument(format!(
                    "entry ({i}, {j}) of `{label}` lies outside the {ambient} x {ambient} truncation"
                )));
            }
            terms.push((AlgebraPresentation::<S>::matrix_unit_index(ambient, i - 1, j - 1), S::from_json(&e[2])?));
        }
        out.push(TestElement { label, element: Element::from_terms(AlgebraPresentation::<S>::matrix(ambient).id(), terms) });
    }
    Ok(out)
}

pub fn functional_to_json<S: Scalar>(alg: &AlgebraPresentation<S>, f: &Functional<S>) -> Value {
    json!({"algebra": reference(alg), "values": scalars_json(f.values())})
}

pub fn functional_from_json<S: Scalar>(v: &Value, alg: &AlgebraPresentation<S>) -> Result<Functional<S>> {
    Functional::new(alg, scalars(field(v, "values")?, "values")?)
}

pub fn witness_to_json<S: Scalar>(alg: &AlgebraPresentation<S>, r: &WitnessReport<S>) -> Value {
    json!({
        "functional": functional_to_json(alg, &r.functional),
        "commutator_defect": r.commutator_defect.to_json(),
        "normalization_defect": r.normalization_defect.to_json(),
        "norm": r.norm.to_json(),
    })
}

pub fn feasibility_to_json<S: Scalar>(alg: &AlgebraPresentation<S>, f: &Feasibility<S>) -> Value {
    match f {
        Feasibility::Feasible { functional, norm } => json!({
            "decision": "FEASIBLE",
            "functional": functional_to_json(alg, functional),
            "norm": norm.to_json(),
        }),
        Feasibility::Infeasible { certificate } => json!({
            "decision": "INFEASIBLE",
            "certificate": certificate.terms.iter().map(|((i, j), c)| json!({
                "a": alg.label(*i),
                "b": alg.label(*j),
                "coeff": c.to_json(),
            })).collect::<Vec<_>>(),
        }),
    }
}

pub fn bimodule_to_json<S: Scalar>(alg: &AlgebraPresentation<S>, module: &BimodulePresentation<S>) -> Value {
    json!({
        "algebra": reference(alg),
        "id": module.id().to_string(),
        "basis": module.labels(),
        "weights": scalars_json(module.weights()),
        "left": module.left_entries().map(|(a, x, y, c)| json!([a, x, y, c.to_json()])).collect::<Vec<_>>(),
        "right": module.right_entries().map(|(x, a, y, c)| json!([x, a, y, c.to_json()])).collect::<Vec<_>>(),
    })
}

/// Reads a bimodule over `alg`: `{"preset": "regular"}`, `{"preset": "trivial", "dim": m}`,
/// `{"preset": "regular", "copies": k}`, or explicit action constants.
pub fn bimodule_from_json<S: Scalar>(v: &Value, alg: &AlgebraPresentation<S>) -> Result<BimodulePresentation<S>> {
    if let Some(p) = v.get("preset") {
        let copies = v.get("copies").map(|c| uint(c, "copies")).transpose()?.unwrap_or(1);
        let base = match p.as_str() {
            Some("regular") => BimodulePresentation::regular(alg),
            Some("trivial") => BimodulePresentation::trivial(alg, uint(field(v, "dim")?, "dim")?),
            _ => return Err(parse_err("unknown bimodule preset")),
        };
        if copies == 1 {
            return Ok(base);
        }
        let parts: Vec<&BimodulePresentation<S>> = std::iter::repeat_n(&base, copies).collect();
        return BimodulePresentation::direct_sum(alg, &parts);
    }
    let space = resolve_space(v, alg)?;
    if space.id() != alg.id() {
        return Err(Error::Mismatch("bimodule is over the unitization".into()));
    }
    let labels = string_list(field(v, "basis")?, "basis")?;
    let weights = match v.get("weights") {
        Some(w) => scalars(w, "weights")?,
        None => vec![S::one(); labels.len()],
    };
    let read = |name: &str, alg_pos: usize| -> Result<Vec<(usize, usize, usize, S)>> {
        let mut out = Vec::new();
        for entry in array(field(v, name)?, name)? {
            let e = tuple(entry, 4, name)?;
            let idx = |k: usize| {
                if k == alg_pos {
                    basis_index(&e[k], alg.labels(), name)
                } else {
                    basis_index(&e[k], &labels, name)
                }
            };
            out.push((idx(0)?, idx(1)?, idx(2)?, S::from_json(&e[3])?));
        }
        Ok(out)
    };
    let left = read("left", 0)?;
    let right = read("right", 1)?;
    BimodulePresentation::new(alg, labels, weights, left, right)
}

pub fn map_to_json<S: Scalar>(d: &LinearMap<S>) -> Value {
    let rows: Vec<Value> = (0..d.rows())
        .map(|r| Value::Array((0..d.cols()).map(|c| d.entry(r, c).to_json()).collect()))
        .collect();
    json!({
        "domain": d.domain().to_string(),
        "codomain": d.codomain().to_string(),
        "rows": d.rows(),
        "cols": d.cols(),
        "matrix": rows,
    })
}

/// Reads a dense row-major matrix as a map `domain -> codomain`.
pub fn map_from_json<S: Scalar>(
    v: &Value,
    domain: SpaceId,
    domain_dim: usize,
    codomain: SpaceId,
    codomain_dim: usize,
) -> Result<LinearMap<S>> {
    let rows = array(field(v, "matrix")?, "matrix")?;
    if rows.len() != codomain_dim {
        return Err(Error::Mismatch(format!("matrix has {} rows, codomain has dimension {codomain_dim}", rows.len())));
    }
    let mut data = Vec::with_capacity(codomain_dim * domain_dim);
    for row in rows {
        let row = scalars::<S>(row, "matrix")?;
        if row.len() != domain_dim {
            return Err(Error::Mismatch(format!("matrix row has {} entries, domain has dimension {domain_dim}", row.len())));
        }
        data.extend(row);
    }
    LinearMap::new(domain, codomain, codomain_dim, domain_dim, data)
}

pub fn jordan_report_to_json<S: Scalar>(module: &BimodulePresentation<S>, r: &JordanReport<S>) -> Value {
    json!({
        "omega": module_element_to_json(module, &r.omega),
        "x": module_element_to_json(module, &r.x),
        "x1": module_element_to_json(module, &r.x1),
        "delta": map_to_json(&r.delta),
        "symmetric": r.symmetric,
        "exact": r.exact,
        "diagonal_defect": r.diagonal_defect.to_json(),
        "identity_residual": r.identity_residual.to_json(),
        "identity_bound": r.identity_bound.to_json(),
        "delta_centrality": r.delta_centrality.to_json(),
        "delta_residual": r.delta_residual.to_json(),
        "residual": r.residual.to_json(),
    })
}

pub fn central_jordan_report_to_json<S: Scalar>(module: &BimodulePresentation<S>, r: &CentralJordanReport<S>) -> Value {
    json!({
        "x": module_element_to_json(module, &r.x),
        "exact": r.exact,
        "diagonal_defect": r.diagonal_defect.to_json(),
        "residual": r.residual.to_json(),
        "residual_bound": r.residual_bound.to_json(),
        "symmetric_module": r.symmetric_module,
        "is_derivation": r.is_derivation,
    })
}

pub fn lie_report_to_json<S: Scalar>(module: &BimodulePresentation<S>, r: &LieReport<S>) -> Value {
    json!({
        "x": module_element_to_json(module, &r.x),
        "d": map_to_json(&r.d),
        "tau": map_to_json(&r.tau),
        "exact": r.exact,
        "diagonal_defect": r.diagonal_defect.to_json(),
        "residual": r.residual.to_json(),
        "residual_bound": r.residual_bound.to_json(),
        "derivation_defect": r.derivation_defect.to_json(),
        "tau_centrality": r.tau_centrality.to_json(),
        "tau_commutator": r.tau_commutator.to_json(),
        "tau_in_central_trace_span": r.tau_in_central_trace_span,
        "submodule": r.submodule.as_ref().map(|s| json!({
            "derivation_in_submodule": s.derivation_in_submodule,
            "trace_in_submodule_center": s.trace_in_submodule_center,
        })),
    })
}

pub fn classification_to_json<S: Scalar>(kind: MapKind, basis: &[LinearMap<S>]) -> Value {
    json!({
        "kind": kind.to_string(),
        "dimension": basis.len(),
        "basis": basis.iter().map(map_to_json).collect::<Vec<_>>(),
    })
}

pub fn central_derivations_to_json<S: Scalar>(r: &CentralDerivationReport<S>) -> Value {
    json!({
        "dimension": r.dimension(),
        "vanishes": r.vanishes(),
        "diagonal_checked": r.diagonal_checked,
        "basis": r.basis.iter().map(map_to_json).collect::<Vec<_>>(),
    })
}

pub fn quotient_to_json<S: Scalar>(alg: &AlgebraPresentation<S>, q: &Quotient<S>) -> Value {
    json!({
        "module": bimodule_to_json(alg, &q.module),
        "map": map_to_json(&q.map),
        "kept": q.kept,
    })
}

pub fn replay_to_json<S: Scalar>(alg: &AlgebraPresentation<S>, r: &SubmoduleReplay<S>) -> Value {
    json!({
        "quotient": quotient_to_json(alg, &r.quotient),
        "induced": map_to_json(&r.induced),
        "induced_is_central_derivation": r.induced_is_central_derivation,
        "quotient_central_derivations": r.quotient_central_derivations,
        "induced_vanishes": r.induced_vanishes,
        "delta_in_submodule": r.delta_in_submodule,
        "tau_in_submodule_center": r.tau_in_submodule_center,
        "passes": r.passes(),
    })
}

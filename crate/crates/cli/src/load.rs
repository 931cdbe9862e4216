//! Reading command arguments: file paths, inline JSON documents and preset names.

use std::path::Path;

use amlab_core::derivations::{inner_derivation, rank_one_map};
use amlab_core::diagonals::{group_diagonal, matrix_diagonal};
use amlab_core::io::{algebra_from_json, bimodule_from_json, map_from_json, module_element_from_json, parse_json, preset};
use amlab_core::witness::Functional;
use amlab_core::{
    AlgebraPresentation, BimodulePresentation, DirectSum, Element, Error, GroupTable, LinearMap, Result, Scalar, Tensor2,
};
use serde_json::Value;

/// A JSON document from a file, or inline when the argument starts with `{` or `[`.
pub fn document(arg: &str) -> Result<Value> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return parse_json(trimmed);
    }
    let text = std::fs::read_to_string(arg).map_err(|e| Error::Parse(format!("cannot read `{arg}`: {e}")))?;
    parse_json(&text)
}

pub fn is_document(arg: &str) -> bool {
    let t = arg.trim_start();
    t.starts_with('{') || t.starts_with('[') || Path::new(arg).is_file()
}

/// An algebra file, inline document or preset name (`M3`, `T2`, `S3`, `C4`, `M2+M3`, `T2#`).
pub fn algebra<S: Scalar>(arg: &str, tol: f64) -> Result<AlgebraPresentation<S>> {
    if is_document(arg) {
        algebra_from_json(&document(arg)?, tol)
    } else {
        Ok(preset::<S>(arg)?.with_tolerance(tol))
    }
}

/// `regular`, `trivial:<m>`, `regular:<copies>`, or a bimodule document.
pub fn module<S: Scalar>(arg: Option<&str>, alg: &AlgebraPresentation<S>) -> Result<BimodulePresentation<S>> {
    let Some(arg) = arg else {
        return Ok(BimodulePresentation::regular(alg));
    };
    if is_document(arg) {
        return bimodule_from_json(&document(arg)?, alg);
    }
    let (name, count) = match arg.split_once(':') {
        Some((n, c)) => (n, Some(c.parse::<usize>().map_err(|_| Error::Parse(format!("bad count in `{arg}`")))?)),
        None => (arg, None),
    };
    let doc = match (name, count) {
        ("regular", None) => serde_json::json!({"preset": "regular"}),
        ("regular", Some(k)) => serde_json::json!({"preset": "regular", "copies": k}),
        ("trivial", Some(m)) => serde_json::json!({"preset": "trivial", "dim": m}),
        _ => return Err(Error::Parse(format!("unknown bimodule `{arg}`"))),
    };
    bimodule_from_json(&doc, alg)
}

/// An element: a basis label, `unit`, `I`, or an element document.
pub fn element<S: Scalar>(arg: &str, alg: &AlgebraPresentation<S>) -> Result<Element<S>> {
    if is_document(arg) {
        return amlab_core::io::element_from_json(&document(arg)?, alg);
    }
    if arg == "unit" || arg == "I" {
        return alg.unit().cloned().ok_or_else(|| Error::InvalidArgument("algebra has no unit".into()));
    }
    alg.index_of(arg)
        .map(|k| alg.basis(k))
        .ok_or_else(|| Error::Parse(format!("`{arg}` is neither a file nor a basis label")))
}

pub fn tensor<S: Scalar>(arg: &str, alg: &AlgebraPresentation<S>) -> Result<(AlgebraPresentation<S>, Tensor2<S>)> {
    amlab_core::io::tensor_from_json(&document(arg)?, alg)
}

fn module_vector<S: Scalar>(v: &Value, module: &BimodulePresentation<S>) -> Result<Element<S>> {
    module_element_from_json(v, module)
}

/// Maps `A -> X` from a dense matrix or a small expression language:
/// `{"matrix": [[...]]}`, `{"commutator": x}` for `a -> x a - a x`,
/// `{"inner": x}` for `a -> a x - x a`, `{"rank_one": {"values": [...], "vector": x}}`
/// and `{"sum": [map, ...]}`.
pub fn map_value<S: Scalar>(
    v: &Value,
    alg: &AlgebraPresentation<S>,
    module: &BimodulePresentation<S>,
) -> Result<LinearMap<S>> {
    if v.get("matrix").is_some() {
        return map_from_json(v, alg.id(), alg.dim(), module.id(), module.dim());
    }
    if let Some(x) = v.get("commutator") {
        let x = module_vector(x, module)?;
        return inner_derivation(alg, module, &x.scale(&-S::one()));
    }
    if let Some(x) = v.get("inner") {
        return inner_derivation(alg, module, &module_vector(x, module)?);
    }
    if let Some(r) = v.get("rank_one") {
        let values = r
            .get("values")
            .ok_or_else(|| Error::Parse("`rank_one` needs `values`".into()))
            .and_then(|vals| amlab_core::io::functional_from_json(&serde_json::json!({"values": vals}), alg))?;
        let x = module_vector(r.get("vector").ok_or_else(|| Error::Parse("`rank_one` needs `vector`".into()))?, module)?;
        return rank_one_map(alg, module, values.values(), &x);
    }
    if let Some(parts) = v.get("sum") {
        let parts = parts.as_array().ok_or_else(|| Error::Parse("`sum` must be an array".into()))?;
        let mut total = LinearMap::zero(alg.id(), module.id(), module.dim(), alg.dim());
        for p in parts {
            total = total.combine(&map_value(p, alg, module)?, &S::one())?;
        }
        return Ok(total);
    }
    Err(Error::Parse("map document needs `matrix`, `commutator`, `inner`, `rank_one` or `sum`".into()))
}

pub fn map<S: Scalar>(arg: &str, alg: &AlgebraPresentation<S>, module: &BimodulePresentation<S>) -> Result<LinearMap<S>> {
    map_value(&document(arg)?, alg, module)
}

/// Vectors spanning a submodule: `{"vectors": [x, ...]}` or a bare array.
pub fn vectors<S: Scalar>(arg: &str, module: &BimodulePresentation<S>) -> Result<Vec<Element<S>>> {
    let doc = document(arg)?;
    let list = doc.get("vectors").unwrap_or(&doc);
    list.as_array()
        .ok_or_else(|| Error::Parse("expected an array of vectors".into()))?
        .iter()
        .map(|v| module_vector(v, module))
        .collect()
}

pub fn functional<S: Scalar>(arg: &str, alg: &AlgebraPresentation<S>) -> Result<Functional<S>> {
    if let Some(k) = alg.index_of(arg) {
        return Ok(Functional::coordinate(alg, k));
    }
    amlab_core::io::functional_from_json(&document(arg)?, alg)
}

/// `C<n>`, `S<n>`, or a group table document (`{"group": {...}}` or the table itself).
pub fn group(arg: &str) -> Result<GroupTable> {
    if !is_document(arg) {
        let order = |p: &str| arg.strip_prefix(p).and_then(|r| r.parse::<usize>().ok()).filter(|n| *n >= 1);
        if let Some(n) = order("C") {
            return Ok(GroupTable::cyclic(n));
        }
        if let Some(n) = order("S").filter(|n| *n <= 5) {
            return Ok(GroupTable::symmetric(n));
        }
        return Err(Error::InvalidArgument(format!("unknown group `{arg}`")));
    }
    let doc = document(arg)?;
    let table = doc.get("group").unwrap_or(&doc).clone();
    let g: GroupTable = serde_json::from_value(table).map_err(|e| Error::Parse(e.to_string()))?;
    g.validate()?;
    Ok(g)
}

/// The standard diagonal of a preset block: `t_n` for `M<n>`, the group diagonal for `C<n>`, `S<n>`.
pub fn canonical_diagonal<S: Scalar>(name: &str) -> Result<Tensor2<S>> {
    if let Some(n) = name.strip_prefix('M').and_then(|r| r.parse::<usize>().ok()) {
        return matrix_diagonal(n);
    }
    if name == "C" {
        return Ok(Tensor2::from_terms(AlgebraPresentation::<S>::scalars().id(), [(0, 0, S::one())]));
    }
    if name.starts_with('C') || name.starts_with('S') {
        return group_diagonal(&group(name)?);
    }
    Err(Error::InvalidArgument(format!("no built-in diagonal for `{name}`; pass --tensor")))
}

/// Rebuilds the summands of a preset direct sum such as `M2+M3`.
pub fn direct_sum<S: Scalar>(name: &str, tol: f64) -> Result<(Vec<AlgebraPresentation<S>>, DirectSum<S>)> {
    let parts = name.split('+').map(|p| Ok(preset::<S>(p)?.with_tolerance(tol))).collect::<Result<Vec<_>>>()?;
    let refs: Vec<&AlgebraPresentation<S>> = parts.iter().collect();
    let sum = DirectSum::new(&refs);
    Ok((parts, sum))
}

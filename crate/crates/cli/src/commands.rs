//! Command implementations, generic over the scalar field.

use std::path::Path;

use amlab_core::derivations::{
    central_derivation_space, central_jordan_decompose, classify_maps, jordan_decompose, lie_decompose, net_boundedness,
    quotient_bimodule, replay_submodule, BoundednessReport, MapKind,
};
use amlab_core::diagonals::{
    convergence_table, defect_report, direct_sum_diagonal, group_diagonal, ideal_diagonal, matrix_diagonal,
    projection_map, pushforward_diagonal, truncated_mn_diagonal, Defects,
};
use amlab_core::io as jio;
use amlab_core::witness::{trace_feasibility, witness_from_diagonal, Functional};
use amlab_core::{AlgebraPresentation, BimodulePresentation, Error, Result, Scalar, Tensor2};
use serde_json::{json, Value};

use crate::emit::{self, Format, Output, Table};
use crate::load;
use crate::{BuildKind, Cli, Command, Decomposition};

/// Runs the command and writes its report; returns the verdict.
pub fn run<S: Scalar>(cli: &Cli, tol: f64) -> Result<bool> {
    let (name, out) = dispatch::<S>(&cli.command, tol)?;
    let default = if matches!(cli.command, Command::ConvergenceTable { .. }) { Format::Csv } else { Format::Json };
    let format = cli.session.format.unwrap_or(default);
    emit::write(&out, format, cli.session.out.as_deref(), name)?;
    Ok(out.pass)
}

fn dispatch<S: Scalar>(command: &Command, tol: f64) -> Result<(&'static str, Output)> {
    Ok(match command {
        Command::CheckDiagonal { algebra, net, require_symmetric } => {
            ("check-diagonal", check_diagonal::<S>(algebra, net, *require_symmetric, tol)?)
        }
        Command::BuildDiagonal { kind } => ("build-diagonal", build_diagonal::<S>(kind, tol)?),
        Command::ConvergenceTable { ambient, tests } => ("convergence-table", convergence::<S>(*ambient, tests)?),
        Command::Witness { algebra, z, diagonal, g } => {
            ("witness", witness::<S>(algebra, z.as_deref(), diagonal.as_deref(), g.as_deref(), tol)?)
        }
        Command::DecomposeJordan { input, central, omega_out } => {
            ("decompose-jordan", decompose_jordan::<S>(input, *central, omega_out.as_deref(), tol)?)
        }
        Command::DecomposeLie { input, submodule, d_out, tau_out } => (
            "decompose-lie",
            decompose_lie::<S>(input, submodule.as_deref(), d_out.as_deref(), tau_out.as_deref(), tol)?,
        ),
        Command::Classify { kind, algebra, module } => ("classify", classify::<S>(*kind, algebra, module.as_deref(), tol)?),
        Command::Center { algebra, module } => ("center", center::<S>(algebra, module.as_deref(), tol)?),
        Command::Quotient { algebra, submodule, module, delta, tau } => (
            "quotient",
            quotient::<S>(algebra, submodule, module.as_deref(), delta.as_deref().zip(tau.as_deref()), tol)?,
        ),
        Command::Algebra { name } => {
            let alg = load::algebra::<S>(name, tol)?;
            ("algebra", Output::new(jio::algebra_to_json(&alg), true))
        }
    })
}

fn defect_cells<S: Scalar>(d: &Defects<S>) -> [String; 4] {
    [d.d1.render(), d.d2.render(), d.d3.render(), d.d4.render()]
}

fn check_diagonal<S: Scalar>(algebra: &str, net: &str, require_symmetric: bool, tol: f64) -> Result<Output> {
    let alg = load::algebra::<S>(algebra, tol)?;
    let net = jio::net_from_json(&load::document(net)?, &alg)?;
    let report = defect_report(&alg, &net, require_symmetric)?;
    let mut table = Table { header: vec!["entry", "element", "d1", "d2", "d3", "d4"], rows: Vec::new() };
    for r in &report.rows {
        let mut row = vec![r.entry.to_string(), r.label.clone()];
        row.extend(defect_cells(&r.defects));
        table.rows.push(row);
    }
    Ok(Output::new(jio::report_to_json(&report), report.final_verdict()).with_table(table))
}

fn tensor_output<S: Scalar>(alg: &AlgebraPresentation<S>, t: &Tensor2<S>) -> Output {
    Output::new(jio::tensor_to_json(alg, t), true)
}

fn build_diagonal<S: Scalar>(kind: &BuildKind, tol: f64) -> Result<Output> {
    match kind {
        BuildKind::Matrix { n } => {
            let alg = AlgebraPresentation::<S>::matrix(*n).with_tolerance(tol);
            Ok(tensor_output(&alg, &matrix_diagonal(*n)?))
        }
        BuildKind::Truncated { n, ambient } => {
            let alg = AlgebraPresentation::<S>::matrix(*ambient).with_tolerance(tol);
            Ok(tensor_output(&alg, &truncated_mn_diagonal(*n, *ambient)?))
        }
        BuildKind::Group { group } => {
            let g = load::group(group)?;
            let alg: AlgebraPresentation<S> = g.algebra();
            let alg = alg.with_tolerance(tol);
            let alg = if load::is_document(group) { alg } else { alg.with_name(group.as_str()) };
            Ok(tensor_output(&alg, &group_diagonal(&g)?))
        }
        BuildKind::DirectSum { parts, tensors, algebra_out } => {
            let (blocks, sum) = load::direct_sum::<S>(&parts.join("+"), tol)?;
            let components = if tensors.is_empty() {
                parts.iter().map(|p| load::canonical_diagonal::<S>(p)).collect::<Result<Vec<_>>>()?
            } else if tensors.len() == parts.len() {
                blocks
                    .iter()
                    .zip(tensors)
                    .map(|(b, t)| {
                        let (space, t) = load::tensor(t, b)?;
                        if space.id() != b.id() {
                            return Err(Error::Mismatch("summand tensors must be over the summand itself".into()));
                        }
                        Ok(t)
                    })
                    .collect::<Result<Vec<_>>>()?
            } else {
                return Err(Error::InvalidArgument(format!("{} tensors for {} summands", tensors.len(), parts.len())));
            };
            let t = direct_sum_diagonal(&sum, &components)?;
            if let Some(path) = algebra_out {
                emit::json_file(path, &jio::algebra_to_json(sum.algebra()))?;
            }
            Ok(tensor_output(sum.algebra(), &t))
        }
        BuildKind::Pushforward { source, target, map, tensor } => {
            let src = load::algebra::<S>(source, tol)?;
            let tgt = load::algebra::<S>(target, tol)?;
            let theta = match map.strip_prefix("project:") {
                Some(c) => {
                    let c: usize = c.parse().map_err(|_| Error::Parse(format!("bad summand index in `{map}`")))?;
                    let (blocks, sum) = load::direct_sum::<S>(source, tol)?;
                    let part = blocks.get(c).ok_or_else(|| Error::InvalidArgument(format!("no summand {c}")))?;
                    if part.id() != tgt.id() {
                        return Err(Error::Mismatch(format!("summand {c} is not the target algebra")));
                    }
                    projection_map(&sum, part, c)?
                }
                None => jio::map_from_json(&load::document(map)?, src.id(), src.dim(), tgt.id(), tgt.dim())?,
            };
            let (space, t) = load::tensor(tensor, &src)?;
            if space.id() != src.id() {
                return Err(Error::Mismatch("tensor must be over the source algebra".into()));
            }
            Ok(tensor_output(&tgt, &pushforward_diagonal(&theta, &src, &tgt, &t)?))
        }
        BuildKind::Ideal { algebra, tensor, e } => {
            let alg = load::algebra::<S>(algebra, tol)?;
            let (space, t) = load::tensor(tensor, &alg)?;
            let e = load::element(e, &space)?;
            Ok(tensor_output(&space, &ideal_diagonal(&space, &t, &e)?))
        }
    }
}

fn convergence<S: Scalar>(ambient: usize, tests: &str) -> Result<Output> {
    if ambient == 0 {
        return Err(Error::InvalidArgument("ambient size must be positive".into()));
    }
    let tests = jio::test_matrices_from_json::<S>(&load::document(tests)?, ambient)?;
    let rows = convergence_table(ambient, &tests)?;
    let pass = rows.iter().all(|r| r.defects.as_array().iter().all(|d| **d <= r.tail_bound));
    let mut table = Table { header: vec!["n", "element", "d1", "d2", "d3", "d4", "tail_bound"], rows: Vec::new() };
    for r in &rows {
        let mut row = vec![r.n.to_string(), r.label.clone()];
        row.extend(defect_cells(&r.defects));
        row.push(r.tail_bound.render());
        table.rows.push(row);
    }
    Ok(Output::new(jio::convergence_to_json(&rows), pass).with_table(table))
}

fn witness<S: Scalar>(algebra: &str, z: Option<&str>, diagonal: Option<&str>, g: Option<&str>, tol: f64) -> Result<Output> {
    let alg = load::algebra::<S>(algebra, tol)?;
    let z = match z {
        Some(z) => load::element(z, &alg)?,
        None => alg.unit().cloned().ok_or_else(|| Error::InvalidArgument("algebra has no unit; pass --z".into()))?,
    };
    let Some(diagonal) = diagonal else {
        let f = trace_feasibility(&alg, &z)?;
        return Ok(Output::new(jio::feasibility_to_json(&alg, &f), f.is_feasible()));
    };
    let (space, t) = load::tensor(diagonal, &alg)?;
    if space.id() != alg.id() {
        return Err(Error::Mismatch("witness diagonal must be over the algebra itself".into()));
    }
    let g = match g {
        Some(g) => load::functional(g, &alg)?,
        None => {
            let k = z.support().next().ok_or_else(|| Error::InvalidArgument("z is zero".into()))?;
            Functional::coordinate(&alg, k)
        }
    };
    let r = witness_from_diagonal(&alg, &t, &z, &g)?;
    let pass = r.commutator_defect.is_negligible(tol) && r.normalization_defect.is_negligible(tol);
    Ok(Output::new(jio::witness_to_json(&alg, &r), pass))
}

struct Loaded<S> {
    alg: AlgebraPresentation<S>,
    module: BimodulePresentation<S>,
    d: amlab_core::LinearMap<S>,
    t: Tensor2<S>,
    diagonal_tol: S,
    boundedness: Option<BoundednessReport<S>>,
}

fn load_decomposition<S: Scalar>(input: &Decomposition, tol: f64) -> Result<Loaded<S>> {
    let alg = load::algebra::<S>(&input.algebra, tol)?;
    let module = load::module(input.module.as_deref(), &alg)?;
    let d = load::map(&input.map, &alg, &module)?;
    let (_, t) = load::tensor(&input.diagonal, &alg)?;
    let diagonal_tol = match &input.diagonal_tol {
        Some(s) => S::parse_str(s)?,
        None => S::zero(),
    };
    let boundedness = match &input.net {
        Some(net) => {
            let net = jio::net_from_json(&load::document(net)?, &alg)?;
            Some(net_boundedness(&alg, &module, Some(&d), &net)?)
        }
        None => None,
    };
    Ok(Loaded { alg, module, d, t, diagonal_tol, boundedness })
}

fn with_boundedness<S: Scalar>(mut report: Value, b: &Option<BoundednessReport<S>>) -> Value {
    if let (Some(b), Value::Object(obj)) = (b, &mut report) {
        obj.insert(
            "boundedness".into(),
            json!({
                "psi_max": b.psi_max.iter().map(S::to_json).collect::<Vec<_>>(),
                "phi_max": b.phi_max.as_ref().map(S::to_json),
            }),
        );
    }
    report
}

fn within<S: Scalar>(value: &S, bound: &S, tol: f64) -> bool {
    value.is_negligible(tol) || *value <= *bound || (value.clone() - bound.clone()).is_negligible(tol)
}

fn decompose_jordan<S: Scalar>(input: &Decomposition, central: bool, omega_out: Option<&Path>, tol: f64) -> Result<Output> {
    let l = load_decomposition::<S>(input, tol)?;
    let (report, pass, omega) = if central {
        let r = central_jordan_decompose(&l.alg, &l.module, &l.d, &l.t, &l.diagonal_tol)?;
        let pass = within(&r.residual, &r.residual_bound, tol);
        (jio::central_jordan_report_to_json(&l.module, &r), pass, r.x.clone())
    } else {
        let r = jordan_decompose(&l.alg, &l.module, &l.d, &l.t, &l.diagonal_tol)?;
        let pass = r.passes(tol) || (!r.exact && within(&r.identity_residual, &r.identity_bound, tol));
        (jio::jordan_report_to_json(&l.module, &r), pass, r.omega.clone())
    };
    if let Some(path) = omega_out {
        emit::json_file(path, &jio::module_element_to_json(&l.module, &omega))?;
    }
    Ok(Output::new(with_boundedness(report, &l.boundedness), pass))
}

fn decompose_lie<S: Scalar>(
    input: &Decomposition,
    submodule: Option<&str>,
    d_out: Option<&Path>,
    tau_out: Option<&Path>,
    tol: f64,
) -> Result<Output> {
    let l = load_decomposition::<S>(input, tol)?;
    let sub = submodule.map(|s| load::vectors(s, &l.module)).transpose()?;
    let r = lie_decompose(&l.alg, &l.module, &l.d, &l.t, &l.diagonal_tol, sub.as_deref())?;
    let contracts = if r.exact {
        r.residual.is_negligible(tol)
            && r.derivation_defect.is_negligible(tol)
            && r.tau_centrality.is_negligible(tol)
            && r.tau_commutator.is_negligible(tol)
    } else {
        within(&r.residual, &r.residual_bound, tol)
    };
    let sub_ok = r.submodule.as_ref().is_none_or(|s| s.derivation_in_submodule && s.trace_in_submodule_center);
    if let Some(path) = d_out {
        emit::json_file(path, &jio::map_to_json(&r.d))?;
    }
    if let Some(path) = tau_out {
        emit::json_file(path, &jio::map_to_json(&r.tau))?;
    }
    let report = with_boundedness(jio::lie_report_to_json(&l.module, &r), &l.boundedness);
    Ok(Output::new(report, contracts && sub_ok))
}

fn classify<S: Scalar>(kind: MapKind, algebra: &str, module: Option<&str>, tol: f64) -> Result<Output> {
    let alg = load::algebra::<S>(algebra, tol)?;
    let module = load::module(module, &alg)?;
    if kind == MapKind::CentralDerivation {
        let r = central_derivation_space(&alg, &module, None)?;
        let mut v = jio::central_derivations_to_json(&r);
        if let Value::Object(obj) = &mut v {
            obj.insert("kind".into(), json!(kind.to_string()));
        }
        return Ok(Output::new(v, true));
    }
    let basis = classify_maps(kind, &alg, &module)?;
    Ok(Output::new(jio::classification_to_json(kind, &basis), true))
}

fn center<S: Scalar>(algebra: &str, module: Option<&str>, tol: f64) -> Result<Output> {
    let alg = load::algebra::<S>(algebra, tol)?;
    let v = match module {
        None => {
            let basis = alg.center();
            json!({
                "algebra": jio::algebra_to_json(&alg)["name"].clone(),
                "dimension": basis.len(),
                "basis": basis.iter().map(|b| jio::element_to_json(&alg, b, None)).collect::<Vec<_>>(),
            })
        }
        Some(m) => {
            let module = load::module(Some(m), &alg)?;
            let basis = module.center();
            json!({
                "module": module.id().to_string(),
                "dimension": basis.len(),
                "basis": basis.iter().map(|b| jio::module_element_to_json(&module, b)).collect::<Vec<_>>(),
            })
        }
    };
    Ok(Output::new(v, true))
}

fn quotient<S: Scalar>(
    algebra: &str,
    submodule: &str,
    module: Option<&str>,
    replay: Option<(&str, &str)>,
    tol: f64,
) -> Result<Output> {
    let alg = load::algebra::<S>(algebra, tol)?;
    let module = load::module(module, &alg)?;
    let sub = load::vectors(submodule, &module)?;
    match replay {
        None => {
            let q = quotient_bimodule(&alg, &module, &sub)?;
            Ok(Output::new(jio::quotient_to_json(&alg, &q), true))
        }
        Some((delta, tau)) => {
            let delta = load::map(delta, &alg, &module)?;
            let tau = load::map(tau, &alg, &module)?;
            let r = replay_submodule(&alg, &module, &sub, &delta, &tau)?;
            Ok(Output::new(jio::replay_to_json(&alg, &r), r.passes()))
        }
    }
}

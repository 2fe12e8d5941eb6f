//! Trace files: a CSV of iterates and a JSON document holding the full run.
//!
//! Numbers in the CSV carry 17 significant digits. In JSON, finite numbers
//! use the shortest representation that reads back to the same `f64`;
//! non-finite ones are written as the strings `"inf"`, `"-inf"` and `"NaN"`.

use std::io::Write;

use dcakit_core::engine::IterRecord;
use dcakit_core::{DcProblem, RunConfig, Status, Trace};
use serde_json::{json, Map, Value};

use crate::config::{format_rule, format_tie, parse_rule, parse_tie};
use crate::error::CliError;

pub const FORMAT_TAG: &str = "dcakit-trace/1";

/// Problem facts the diagnostics need besides the iterates.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ProblemMeta {
    pub rho: f64,
    pub grad_lipschitz_h: Option<f64>,
    pub known_optimum: Option<(Vec<f64>, f64)>,
    pub known_theta: Option<f64>,
}

impl ProblemMeta {
    pub fn of(problem: &DcProblem) -> Self {
        ProblemMeta {
            rho: problem.rho(),
            grad_lipschitz_h: problem.h.grad_lipschitz,
            known_optimum: problem.known_optimum.clone(),
            known_theta: problem.known_theta,
        }
    }
}

pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_csv<W: Write>(trace: &Trace, mut w: W) -> std::io::Result<()> {
    let mut header = vec!["k".to_string()];
    header.extend((0..trace.dim).map(|i| format!("x_{i}")));
    header.extend(["f", "step_norm", "descent_delta", "certificate"].map(String::from));
    writeln!(w, "{}", header.join(","))?;
    let opt = |v: Option<f64>| v.map(fmt17).unwrap_or_default();
    for r in &trace.records {
        let mut row = vec![r.k.to_string()];
        row.extend(r.x.iter().map(|v| fmt17(*v)));
        row.push(fmt17(r.f));
        row.push(opt(r.step_norm));
        row.push(opt(r.descent_delta));
        row.push(opt(r.certificate));
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

pub fn num(v: f64) -> Value {
    match serde_json::Number::from_f64(v) {
        Some(n) => Value::Number(n),
        None if v.is_nan() => Value::String("NaN".into()),
        None if v > 0.0 => Value::String("inf".into()),
        None => Value::String("-inf".into()),
    }
}

fn opt_num(v: Option<f64>) -> Value {
    v.map(num).unwrap_or(Value::Null)
}

fn vec_num(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|x| num(*x)).collect())
}

pub fn config_json(cfg: &RunConfig) -> Value {
    json!({
        "max_iters": cfg.max_iters,
        "halt_step_tol": opt_num(cfg.halt_step_tol),
        "divergence_guard": num(cfg.divergence_guard),
        "selection_rule": format_rule(&cfg.selection_rule),
        "tie_break": format_tie(cfg.subsolver.tie_break),
        "subsolver_tol": num(cfg.subsolver.tol),
        "max_inner_iters": cfg.subsolver.max_inner_iters,
        "bracket_expansion": num(cfg.subsolver.bracket_expansion),
    })
}

pub fn trace_json(trace: &Trace, meta: &ProblemMeta) -> Value {
    let records: Vec<Value> = trace
        .records
        .iter()
        .map(|r| {
            json!({
                "k": r.k,
                "x": vec_num(&r.x),
                "f": num(r.f),
                "y": r.y.as_deref().map(vec_num).unwrap_or(Value::Null),
                "step_norm": opt_num(r.step_norm),
                "descent_delta": opt_num(r.descent_delta),
                "certificate": opt_num(r.certificate),
            })
        })
        .collect();
    json!({
        "format": FORMAT_TAG,
        "problem": trace.problem,
        "dim": trace.dim,
        "status": trace.status.to_string(),
        "final_k": trace.final_k(),
        "config": config_json(&trace.config),
        "problem_meta": {
            "rho": num(meta.rho),
            "grad_lipschitz_h": opt_num(meta.grad_lipschitz_h),
            "known_optimum": meta.known_optimum.as_ref().map(|(x, f)| json!({"x": vec_num(x), "f": num(*f)})).unwrap_or(Value::Null),
            "known_theta": opt_num(meta.known_theta),
        },
        "warnings": trace.warnings,
        "records": records,
    })
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Trace(msg.into())
}

pub fn parse_num_value(v: &Value, what: &str) -> Result<f64, CliError> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| bad(format!("{what}: not a float"))),
        Value::String(s) => s.parse().map_err(|_| bad(format!("{what}: `{s}` is not a number"))),
        _ => Err(bad(format!("{what}: expected a number"))),
    }
}

fn opt_value(v: Option<&Value>, what: &str) -> Result<Option<f64>, CliError> {
    match v {
        None | Some(Value::Null) => Ok(None),
        Some(v) => parse_num_value(v, what).map(Some),
    }
}

fn vec_value(v: &Value, what: &str) -> Result<Vec<f64>, CliError> {
    v.as_array().ok_or_else(|| bad(format!("{what}: expected an array")))?.iter().map(|x| parse_num_value(x, what)).collect()
}

fn config_from_json(v: Option<&Value>) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::default();
    let Some(obj) = v.and_then(Value::as_object) else { return Ok(cfg) };
    if let Some(n) = obj.get("max_iters").and_then(Value::as_u64) {
        cfg.max_iters = n as usize;
    }
    cfg.halt_step_tol = opt_value(obj.get("halt_step_tol"), "halt_step_tol")?;
    if let Some(g) = opt_value(obj.get("divergence_guard"), "divergence_guard")? {
        cfg.divergence_guard = g;
    }
    if let Some(s) = obj.get("selection_rule").and_then(Value::as_str) {
        cfg.selection_rule = parse_rule(s)?;
    }
    if let Some(s) = obj.get("tie_break").and_then(Value::as_str) {
        cfg.subsolver.tie_break = parse_tie(s)?;
    }
    if let Some(t) = opt_value(obj.get("subsolver_tol"), "subsolver_tol")? {
        cfg.subsolver.tol = t;
    }
    if let Some(n) = obj.get("max_inner_iters").and_then(Value::as_u64) {
        cfg.subsolver.max_inner_iters = n as usize;
    }
    if let Some(b) = opt_value(obj.get("bracket_expansion"), "bracket_expansion")? {
        cfg.subsolver.bracket_expansion = b;
    }
    Ok(cfg)
}

fn meta_from_json(v: Option<&Value>) -> Result<ProblemMeta, CliError> {
    let mut meta = ProblemMeta::default();
    let Some(obj) = v.and_then(Value::as_object) else { return Ok(meta) };
    meta.rho = opt_value(obj.get("rho"), "rho")?.unwrap_or(0.0);
    meta.grad_lipschitz_h = opt_value(obj.get("grad_lipschitz_h"), "grad_lipschitz_h")?;
    meta.known_theta = opt_value(obj.get("known_theta"), "known_theta")?;
    if let Some(o) = obj.get("known_optimum").and_then(Value::as_object) {
        let x = vec_value(o.get("x").ok_or_else(|| bad("known_optimum.x missing"))?, "known_optimum.x")?;
        let f = parse_num_value(o.get("f").ok_or_else(|| bad("known_optimum.f missing"))?, "known_optimum.f")?;
        meta.known_optimum = Some((x, f));
    }
    Ok(meta)
}

fn check_contiguous(records: &[IterRecord], dim: usize) -> Result<(), CliError> {
    if records.is_empty() {
        return Err(bad("no records"));
    }
    for (i, r) in records.iter().enumerate() {
        if r.k != i {
            return Err(bad(format!("record {i} has k = {}", r.k)));
        }
        if r.x.len() != dim {
            return Err(bad(format!("record {i} has {} coordinates, expected {dim}", r.x.len())));
        }
    }
    Ok(())
}

/// Reads a run document written by [`trace_json`].
pub fn read_json(text: &str) -> Result<(Trace, ProblemMeta), CliError> {
    if text.trim().is_empty() {
        return Err(bad("empty file"));
    }
    let doc: Value = serde_json::from_str(text)?;
    let obj: &Map<String, Value> = doc.as_object().ok_or_else(|| bad("top level must be an object"))?;
    let problem = obj.get("problem").and_then(Value::as_str).unwrap_or("unknown").to_string();
    let status: Status = obj
        .get("status")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("status missing"))?
        .parse()
        .map_err(|e| bad(format!("{e}")))?;
    let config = config_from_json(obj.get("config"))?;
    let meta = meta_from_json(obj.get("problem_meta"))?;
    let warnings = obj
        .get("warnings")
        .and_then(Value::as_array)
        .map(|a| a.iter().filter_map(Value::as_str).map(String::from).collect())
        .unwrap_or_default();
    let mut records = Vec::new();
    for (i, r) in obj.get("records").and_then(Value::as_array).ok_or_else(|| bad("records missing"))?.iter().enumerate() {
        let what = format!("record {i}");
        let k = r.get("k").and_then(Value::as_u64).ok_or_else(|| bad(format!("{what}: k missing")))? as usize;
        let y = match r.get("y") {
            None | Some(Value::Null) => None,
            Some(v) => Some(vec_value(v, &what)?),
        };
        records.push(IterRecord {
            k,
            x: vec_value(r.get("x").ok_or_else(|| bad(format!("{what}: x missing")))?, &what)?,
            f: parse_num_value(r.get("f").ok_or_else(|| bad(format!("{what}: f missing")))?, &what)?,
            y,
            step_norm: opt_value(r.get("step_norm"), &what)?,
            descent_delta: opt_value(r.get("descent_delta"), &what)?,
            certificate: opt_value(r.get("certificate"), &what)?,
        });
    }
    let dim = match obj.get("dim").and_then(Value::as_u64) {
        Some(d) => d as usize,
        None => records.first().map(|r| r.x.len()).unwrap_or(0),
    };
    check_contiguous(&records, dim)?;
    Ok((Trace { problem, dim, config, records, status, warnings }, meta))
}

/// Reads the iterate columns of a CSV written by [`write_csv`]. The status,
/// config and `y` values live only in the JSON document, so the trace gets
/// `MaxIters` and default settings.
pub fn read_csv(text: &str) -> Result<Trace, CliError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<&str> = lines.next().ok_or_else(|| bad("empty file"))?.split(',').map(str::trim).collect();
    let dim = header.iter().filter(|h| h.starts_with("x_")).count();
    let expected: Vec<String> = std::iter::once("k".to_string())
        .chain((0..dim).map(|i| format!("x_{i}")))
        .chain(["f", "step_norm", "descent_delta", "certificate"].map(String::from))
        .collect();
    if header != expected {
        return Err(bad(format!("unexpected header `{}`", header.join(","))));
    }
    let mut records = Vec::new();
    for (i, line) in lines.enumerate() {
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        if cells.len() != header.len() {
            return Err(bad(format!("row {} has {} cells, expected {}", i + 1, cells.len(), header.len())));
        }
        let what = format!("row {}", i + 1);
        let val = |s: &str| s.parse::<f64>().map_err(|_| bad(format!("{what}: `{s}` is not a number")));
        let opt = |s: &str| if s.is_empty() { Ok(None) } else { val(s).map(Some) };
        records.push(IterRecord {
            k: cells[0].parse().map_err(|_| bad(format!("{what}: bad k `{}`", cells[0])))?,
            x: cells[1..=dim].iter().map(|s| val(s)).collect::<Result<_, _>>()?,
            f: val(cells[dim + 1])?,
            y: None,
            step_norm: opt(cells[dim + 2])?,
            descent_delta: opt(cells[dim + 3])?,
            certificate: opt(cells[dim + 4])?,
        });
    }
    check_contiguous(&records, dim)?;
    Ok(Trace { problem: "csv".into(), dim, config: RunConfig::default(), records, status: Status::MaxIters, warnings: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use dcakit_core::zoo::zoo_build;

    #[test]
    fn json_round_trip_is_exact() {
        for name in ["quartic", "ex1_bad", "ex2_oscillate", "divergent", "level_bounded_no_min"] {
            let entry = zoo_build(name).unwrap();
            let trace = entry.run();
            let meta = ProblemMeta::of(&entry.problem);
            let text = serde_json::to_string(&trace_json(&trace, &meta)).unwrap();
            let (back, meta_back) = read_json(&text).unwrap();
            assert_eq!(back, trace, "{name}");
            assert_eq!(meta_back, meta, "{name}");
        }
    }

    #[test]
    fn csv_round_trip_keeps_iterates() {
        let trace = zoo_build("ex1_good").unwrap().run();
        let mut buf = Vec::new();
        write_csv(&trace, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("k,x_0,f,step_norm,descent_delta,certificate\n"));
        let back = read_csv(&text).unwrap();
        for (a, b) in trace.records.iter().zip(&back.records) {
            assert_eq!(a.x, b.x);
            assert_eq!(a.f.to_bits(), b.f.to_bits());
            assert_eq!(a.step_norm, b.step_norm);
        }
    }

    #[test]
    fn non_finite_values_survive() {
        assert_eq!(num(f64::INFINITY), Value::String("inf".into()));
        assert_eq!(parse_num_value(&num(f64::NEG_INFINITY), "t").unwrap(), f64::NEG_INFINITY);
        assert!(parse_num_value(&num(f64::NAN), "t").unwrap().is_nan());
        assert_eq!(fmt17(f64::INFINITY).parse::<f64>().unwrap(), f64::INFINITY);
        assert_eq!(fmt17(0.1), "1.0000000000000001e-1");
    }

    #[test]
    fn malformed_inputs_are_errors() {
        assert!(read_json("").is_err());
        assert!(read_json("{").is_err());
        assert!(read_json("{\"status\": \"MaxIters\", \"records\": []}").is_err());
        assert!(read_json("{\"status\": \"Sideways\", \"records\": []}").is_err());
        assert!(read_csv("").is_err());
        assert!(read_csv("k,x_0,f,step_norm,descent_delta,certificate\n0,1,2\n").is_err());
        assert!(read_csv("k,x_0,f,step_norm,descent_delta,certificate\n1,1,2,,,\n").is_err());
    }
}

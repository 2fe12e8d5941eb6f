//! The subcommands, written against `io::Write` so they can be tested in process.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use dcakit_core::diagnostics::{diagnose, DiagnoseOptions};
use dcakit_core::engine::run_dca;
use dcakit_core::rates::{classify, generate_extremal_sequence, predict_rates_from_theta, verdict_for, RateHypothesis};
use dcakit_core::zoo::{zoo_build, ZOO_NAMES};
use dcakit_core::{RunConfig, Tolerance, Trace};
use serde_json::json;

use crate::config::RunSpec;
use crate::error::CliError;
use crate::inline::parse_inline;
use crate::report::{describe, hypothesis_label, prediction_json, render_table, report_json, verdict_json};
use crate::trace_io::{fmt17, read_csv, read_json, trace_json, write_csv, ProblemMeta};

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e))
}

/// Paths written by a run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunFiles {
    pub csv: PathBuf,
    pub json: PathBuf,
}

impl RunFiles {
    pub fn from_prefix(prefix: &Path) -> Self {
        let with = |ext: &str| {
            let mut s = prefix.as_os_str().to_owned();
            s.push(ext);
            PathBuf::from(s)
        };
        RunFiles { csv: with(".csv"), json: with(".json") }
    }
}

/// Runs DCA as described by `spec` and writes `<out>.csv` and `<out>.json`.
/// Breakdowns and divergence are results, not errors.
pub fn cmd_run(spec: &RunSpec, out: &mut dyn Write) -> Result<(Trace, RunFiles), CliError> {
    let (problem, base_cfg, x0) = match (&spec.problem, &spec.inline) {
        (Some(_), Some(_)) => return Err(CliError::value("problem", "give either a zoo problem or an inline one, not both")),
        (None, None) => return Err(CliError::value("problem", "missing (use --problem or --inline)")),
        (Some(name), None) => {
            let entry = zoo_build(name)?;
            let scenario = match &spec.scenario {
                Some(label) => entry.scenario(label)?.clone(),
                None => entry.default_scenario().clone(),
            };
            (entry.problem, scenario.config, Some(scenario.x0))
        }
        (None, Some(src)) => {
            if spec.scenario.is_some() {
                return Err(CliError::value("scenario", "only zoo problems have scenarios"));
            }
            let p = parse_inline(src)?;
            let cfg = RunConfig::for_problem(&p);
            (p, cfg, None)
        }
    };
    let x0 = spec.x0.clone().or(x0).ok_or_else(|| CliError::value("x0", "required for inline problems"))?;
    let cfg = spec.apply(base_cfg);
    let trace = run_dca(&problem, &x0, &cfg)?;
    let meta = ProblemMeta::of(&problem);

    let prefix = spec.out.clone().unwrap_or_else(|| PathBuf::from(&problem.name));
    let files = RunFiles::from_prefix(&prefix);
    let mut csv = Vec::new();
    write_csv(&trace, &mut csv).map_err(|e| CliError::io(&files.csv, e))?;
    fs::write(&files.csv, csv).map_err(|e| CliError::io(&files.csv, e))?;
    let mut doc = serde_json::to_string_pretty(&trace_json(&trace, &meta))?;
    doc.push('\n');
    fs::write(&files.json, doc).map_err(|e| CliError::io(&files.json, e))?;

    let last = trace.last();
    let xs: Vec<String> = last.x.iter().map(|v| fmt17(*v)).collect();
    let mut summary = format!(
        "problem {}: status {} at k = {}\nx = [{}], f = {}\n",
        trace.problem,
        trace.status,
        trace.final_k(),
        xs.join(", "),
        fmt17(last.f)
    );
    for w in &trace.warnings {
        summary += &format!("warning: {w}\n");
    }
    summary += &format!("wrote {} and {}\n", files.csv.display(), files.json.display());
    write_out(out, &summary)?;
    Ok((trace, files))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagnoseArgs {
    pub path: PathBuf,
    pub rho: Option<f64>,
    pub f_star: Option<f64>,
    pub theta: Option<f64>,
    pub burn_in: f64,
    pub lipschitz: Option<f64>,
    pub json: bool,
    pub report: Option<PathBuf>,
}

impl DiagnoseArgs {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        DiagnoseArgs { path: path.into(), rho: None, f_star: None, theta: None, burn_in: 0.5, lipschitz: None, json: false, report: None }
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

/// Loads a trace from a run JSON, or from a CSV plus its sibling JSON when present.
pub fn load_trace(path: &Path) -> Result<(Trace, ProblemMeta), CliError> {
    let text = read_text(path)?;
    if path.extension().is_some_and(|e| e == "csv") {
        let mut trace = read_csv(&text)?;
        let sibling = path.with_extension("json");
        if sibling.exists() {
            let (full, meta) = read_json(&read_text(&sibling)?)?;
            if full.records.len() != trace.records.len() {
                return Err(CliError::Trace(format!("{} and {} disagree on the number of iterates", path.display(), sibling.display())));
            }
            for (r, f) in trace.records.iter_mut().zip(full.records) {
                r.y = f.y;
            }
            trace.problem = full.problem;
            trace.status = full.status;
            trace.config = full.config;
            trace.warnings = full.warnings;
            return Ok((trace, meta));
        }
        return Ok((trace, ProblemMeta::default()));
    }
    read_json(&text)
}

/// Returns whether every non-skipped check passed.
pub fn cmd_diagnose(args: &DiagnoseArgs, out: &mut dyn Write) -> Result<bool, CliError> {
    if !(0.0..1.0).contains(&args.burn_in) {
        return Err(CliError::value("burn-in", "must lie in [0, 1)"));
    }
    if let Some(t) = args.theta {
        if !(0.0..1.0).contains(&t) {
            return Err(CliError::value("theta", "must lie in [0, 1)"));
        }
    }
    let (trace, meta) = load_trace(&args.path)?;
    let f_star = args.f_star.or(meta.known_optimum.as_ref().map(|o| o.1)).unwrap_or(trace.last().f);
    let opts = DiagnoseOptions {
        rho: args.rho.unwrap_or(meta.rho),
        f_star,
        burn_in_fraction: args.burn_in,
        lipschitz: args.lipschitz.or(meta.grad_lipschitz_h),
        theta: args.theta,
        tol: Tolerance::for_trace(&trace),
    };
    let report = diagnose(&trace, &opts);
    let doc = json!({
        "trace": args.path.display().to_string(),
        "problem": trace.problem,
        "status": trace.status.to_string(),
        "rho": opts.rho,
        "f_star": crate::trace_io::num(f_star),
        "report": report_json(&report),
    });
    if let Some(p) = &args.report {
        fs::write(p, serde_json::to_string_pretty(&doc)? + "\n").map_err(|e| CliError::io(p, e))?;
    }
    if args.json {
        write_out(out, &(serde_json::to_string_pretty(&doc)? + "\n"))?;
    } else {
        let head = format!("trace {} ({}, status {}), rho = {}, f* = {}\n", args.path.display(), trace.problem, trace.status, opts.rho, f_star);
        write_out(out, &(head + &render_table(&report)))?;
    }
    Ok(report.passed())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    Next,
    Current,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RatesArgs {
    pub form: Option<Form>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub c: Option<f64>,
    pub generate: Option<usize>,
    pub r0: Option<f64>,
    pub theta: Option<f64>,
    pub json: bool,
}

fn need(v: Option<f64>, key: &str) -> Result<f64, CliError> {
    v.ok_or_else(|| CliError::value(key, "required for this form"))
}

pub fn cmd_rates(args: &RatesArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if let Some(theta) = args.theta {
        if args.form.is_some() {
            return Err(CliError::value("theta", "use either --theta or --form"));
        }
        let p = predict_rates_from_theta(theta)?;
        let text = if args.json {
            serde_json::to_string_pretty(&prediction_json(theta, &p))? + "\n"
        } else {
            format!("theta = {theta}\nf: {}  ({})\nx: {}  ({})\n", describe(&p.f_rate), p.f_rate, describe(&p.x_rate), p.x_rate)
        };
        return write_out(out, &text);
    }
    let h = match args.form.ok_or_else(|| CliError::value("form", "give --form or --theta"))? {
        Form::Next => RateHypothesis::NextPower { alpha: need(args.alpha, "alpha")?, beta: need(args.beta, "beta")? },
        Form::Current => RateHypothesis::CurrentPower { alpha: need(args.alpha, "alpha")?, beta: need(args.beta, "beta")? },
        Form::Mixed => RateHypothesis::Mixed { a: need(args.a, "a")?, b: need(args.b, "b")?, c: need(args.c, "c")? },
    };
    h.validate()?;
    let verdict = verdict_for(&h);
    let sequence = match args.generate {
        Some(n) => Some(generate_extremal_sequence(&h, args.r0.unwrap_or(1.0), n)?),
        None => None,
    };
    let empirical = match &sequence {
        Some(r) if r.len() >= 2 => Some(classify(&h, r)?),
        _ => None,
    };
    let text = if args.json {
        let doc = json!({
            "hypothesis": hypothesis_label(&h),
            "verdict": verdict_json(&verdict),
            "sequence": sequence.as_ref().map(|r| r.iter().map(|v| crate::trace_io::num(*v)).collect::<Vec<_>>()),
            "sequence_verdict": empirical.as_ref().map(verdict_json),
        });
        serde_json::to_string_pretty(&doc)? + "\n"
    } else {
        let mut t = format!("hypothesis: {}\nverdict: {}  ({})\n", hypothesis_label(&h), verdict, describe(&verdict));
        if let Some(r) = &sequence {
            t += "k,r_k\n";
            for (k, v) in r.iter().enumerate() {
                t += &format!("{k},{v:?}\n");
            }
        }
        if let Some(v) = &empirical {
            t += &format!("generated sequence classified as: {v}\n");
        }
        t
    };
    write_out(out, &text)
}

pub fn cmd_zoo_list(out: &mut dyn Write) -> Result<(), CliError> {
    let mut text = String::new();
    for name in ZOO_NAMES {
        let e = zoo_build(name)?;
        let labels: Vec<&str> = e.scenarios.iter().map(|s| s.label).collect();
        text += &format!("{name}\n    {}\n    scenarios: {}\n    expected: {}\n", e.summary, labels.join(", "), e.expected());
    }
    write_out(out, &text)
}

//! JSON and table renderings of diagnostic reports and rate verdicts.

use dcakit_core::rates::{RateHypothesis, ThetaPrediction};
use dcakit_core::{CheckResult, DiagnosticReport, LojasiewiczFit, RateVerdict};
use serde_json::{json, Value};

use crate::trace_io::num;

fn check_json(c: &CheckResult) -> Value {
    json!({
        "name": c.name,
        "outcome": c.outcome.as_str(),
        "worst_margin": num(c.worst_margin),
        "worst_iter": c.worst_iter,
        "tolerance": {"abs": num(c.tolerance.abs), "rel": num(c.tolerance.rel)},
        "note": c.note,
    })
}

fn fit_json(f: &LojasiewiczFit) -> Value {
    json!({
        "theta": num(f.theta),
        "slope": num(f.slope),
        "intercept": num(f.intercept),
        "r_squared": num(f.r_squared),
        "n_points": f.n_points,
        "start": f.start,
        "lipschitz": num(f.lipschitz),
        "lipschitz_assumed": f.lipschitz_assumed,
        "ml_central": num(f.ml_central),
        "ml_envelope": num(f.ml_envelope),
        "f_star": num(f.f_star),
    })
}

pub fn report_json(r: &DiagnosticReport) -> Value {
    json!({
        "passed": r.passed(),
        "checks": r.checks.iter().map(check_json).collect::<Vec<_>>(),
        "fit": r.fit.as_ref().map(fit_json),
        "warnings": r.warnings,
    })
}

pub fn render_table(r: &DiagnosticReport) -> String {
    let width = r.checks.iter().map(|c| c.name.len()).max().unwrap_or(5).max(5);
    let mut out = format!("{:<width$}  {:<7}  {:>13}  {:>6}  note\n", "check", "outcome", "worst margin", "iter");
    for c in &r.checks {
        let iter = c.worst_iter.map(|k| k.to_string()).unwrap_or_else(|| "-".into());
        out += &format!("{:<width$}  {:<7}  {:>13.4e}  {:>6}  {}\n", c.name, c.outcome.as_str(), c.worst_margin, iter, c.note);
    }
    if let Some(f) = &r.fit {
        out += &format!(
            "fitted theta = {:.4} (R² = {:.4}, {} points from k = {}), M·L = {:.4e}{}\n",
            f.theta,
            f.r_squared,
            f.n_points,
            f.start,
            f.ml_envelope,
            if f.lipschitz_assumed { ", L assumed 1" } else { "" }
        );
    }
    for w in &r.warnings {
        out += &format!("warning: {w}\n");
    }
    out += if r.passed() { "result: all checks passed\n" } else { "result: FAILED\n" };
    out
}

pub fn verdict_json(v: &RateVerdict) -> Value {
    match v {
        RateVerdict::Finite { step_bound } => json!({"kind": "Finite", "step_bound": step_bound.map(num)}),
        RateVerdict::Linear { q } => json!({"kind": "Linear", "q": q.map(num)}),
        RateVerdict::Sublinear { p } => json!({"kind": "Sublinear", "p": num(*p)}),
        RateVerdict::Inconclusive { reason } => json!({"kind": "Inconclusive", "reason": reason}),
    }
}

pub fn hypothesis_label(h: &RateHypothesis) -> String {
    match *h {
        RateHypothesis::NextPower { alpha, beta } => format!("r_{{k+1}}^{alpha} <= {beta} (r_k - r_{{k+1}})"),
        RateHypothesis::CurrentPower { alpha, beta } => format!("r_k^{alpha} <= {beta} (r_k - r_{{k+1}})"),
        RateHypothesis::Mixed { a, b, c } => format!("r_k <= {c} (r_{{k-1}} - r_k) + {a} (r_k - r_{{k+1}})^{b}"),
    }
}

pub fn prediction_json(theta: f64, p: &ThetaPrediction) -> Value {
    json!({"theta": num(theta), "f_rate": verdict_json(&p.f_rate), "x_rate": verdict_json(&p.x_rate)})
}

/// `O(k^p)` style description used in the rates table.
pub fn describe(v: &RateVerdict) -> String {
    match v {
        RateVerdict::Sublinear { p } => format!("O(k^{})", trim_float(*p)),
        RateVerdict::Linear { q: Some(q) } => format!("O({}^k)", trim_float(*q)),
        RateVerdict::Linear { q: None } => "O(q^k), q in (0,1)".into(),
        RateVerdict::Finite { .. } => "finitely many steps".into(),
        RateVerdict::Inconclusive { reason } => format!("inconclusive: {reason}"),
    }
}

fn trim_float(v: f64) -> String {
    let s = format!("{v:.6}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use dcakit_core::rates::predict_rates_from_theta;

    #[test]
    fn describes_quartic_prediction() {
        let p = predict_rates_from_theta(0.75).unwrap();
        assert_eq!(describe(&p.f_rate), "O(k^-2)");
        assert_eq!(describe(&p.x_rate), "O(k^-0.5)");
        assert_eq!(describe(&RateVerdict::Linear { q: Some(0.5) }), "O(0.5^k)");
    }
}

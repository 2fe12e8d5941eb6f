//! Post-hoc checks of DCA traces against the descent, rate and KL-based
//! convergence inequalities, plus Łojasiewicz exponent estimation.
//!
//! Every inequality is tested with slack `abs + rel·(1 + |q|)`, where `q` is
//! the magnitude of the quantity involved (see [`Tolerance`]). Margins are
//! reported as `rhs - lhs + slack`, so a negative worst margin is a failure.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

use crate::engine::{Status, Trace};
use crate::model::DcProblem;
use crate::stats::{fit_line, median};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiagError {
    #[error("f_star = {f_star} exceeds the smallest recorded value {min_f}")]
    InvalidFStar { f_star: f64, min_f: f64 },
    #[error("need at least {needed} usable iterates, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("Ψ_k = f(x^k) - f_star is negative at k = {k}; f_star is too large")]
    NonPositivePsi { k: usize },
    #[error("subdifferential sets are not representable at this point")]
    NotRepresentable,
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}

/// Absolute plus relative slack.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs: 1e-9, rel: 1e-11 }
    }
}

impl Tolerance {
    /// `abs = 1e-9`, `rel = 10 · subsolver_tol`.
    pub fn for_subsolver_tol(subsolver_tol: f64) -> Self {
        Tolerance { abs: 1e-9, rel: 10.0 * subsolver_tol }
    }

    pub fn for_trace(trace: &Trace) -> Self {
        Self::for_subsolver_tol(trace.config.subsolver.tol)
    }

    pub fn slack(&self, q: f64) -> f64 {
        let q = if q.is_finite() { libm::fabs(q) } else { 0.0 };
        self.abs + self.rel * (1.0 + q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    Fail,
    Skipped,
}

impl CheckOutcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckOutcome::Pass => "pass",
            CheckOutcome::Fail => "FAIL",
            CheckOutcome::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub outcome: CheckOutcome,
    /// Smallest `rhs - lhs + slack` seen; negative means violated.
    pub worst_margin: f64,
    pub worst_iter: Option<usize>,
    pub tolerance: Tolerance,
    pub note: String,
}

impl CheckResult {
    fn skipped(name: &str, tolerance: Tolerance, note: impl Into<String>) -> Self {
        CheckResult {
            name: name.to_string(),
            outcome: CheckOutcome::Skipped,
            worst_margin: f64::INFINITY,
            worst_iter: None,
            tolerance,
            note: note.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.outcome == CheckOutcome::Pass
    }
}

/// Tracks the smallest margin over a family of inequalities.
struct Worst {
    margin: f64,
    iter: Option<usize>,
}

impl Worst {
    fn new() -> Self {
        Worst { margin: f64::INFINITY, iter: None }
    }

    fn add(&mut self, k: usize, margin: f64) {
        // NaN margins come from undefined comparisons and count as violations
        let m = if margin.is_nan() { f64::NEG_INFINITY } else { margin };
        if m < self.margin || self.iter.is_none() && m == self.margin {
            self.margin = m;
            self.iter = Some(k);
        }
    }

    fn finish(self, name: &str, tolerance: Tolerance, note: String) -> CheckResult {
        let outcome = if self.margin >= 0.0 { CheckOutcome::Pass } else { CheckOutcome::Fail };
        CheckResult { name: name.to_string(), outcome, worst_margin: self.margin, worst_iter: self.iter, tolerance, note }
    }
}

/// Collection of checks plus the optional exponent fit.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DiagnosticReport {
    pub checks: Vec<CheckResult>,
    pub fit: Option<LojasiewiczFit>,
    pub warnings: Vec<String>,
}

impl DiagnosticReport {
    /// True iff no check failed (skipped checks do not count).
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.outcome != CheckOutcome::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// `f(x^{k+1}) ≤ f(x^k) + slack` for all `k`.
pub fn check_monotone_descent(trace: &Trace, tol: &Tolerance) -> CheckResult {
    let mut w = Worst::new();
    for pair in trace.records.windows(2) {
        let (a, b) = (pair[0].f, pair[1].f);
        let margin = if a == b { tol.slack(a) } else { a - b + tol.slack(a) };
        w.add(pair[0].k, margin);
    }
    if w.iter.is_none() {
        return CheckResult { worst_margin: f64::INFINITY, ..w.finish("monotone_descent", *tol, "single iterate".to_string()) };
    }
    w.finish("monotone_descent", *tol, String::new())
}

/// `f(x^k) - f(x^{k+1}) ≥ (ρ/2)‖x^k - x^{k+1}‖²` for `k ≥ 1`, plus the
/// square-summability bound `Σ_{k≥1} ‖Δ_k‖² ≤ 2(f(x^1) - f*)/ρ` with `f*` the
/// last recorded value.
pub fn check_sufficient_descent(trace: &Trace, rho: f64, tol: &Tolerance) -> CheckResult {
    const NAME: &str = "sufficient_descent";
    if !(rho > 0.0) {
        return CheckResult::skipped(NAME, *tol, "rho = 0: sufficient descent is not guaranteed");
    }
    let mut w = Worst::new();
    let mut sum_sq = 0.0;
    let mut sum_slack = 0.0;
    for rec in trace.records.iter().skip(1) {
        if let (Some(s), Some(d)) = (rec.step_norm, rec.descent_delta) {
            let slack = tol.slack(rec.f);
            w.add(rec.k, d - 0.5 * rho * s * s + slack);
            sum_sq += s * s;
            sum_slack += slack;
        }
    }
    if w.iter.is_none() {
        return CheckResult::skipped(NAME, *tol, "no steps beyond k = 0");
    }
    let mut note = String::new();
    if trace.records.len() > 1 {
        let f1 = trace.records[1].f;
        let f_last = trace.last().f;
        let bound = 2.0 * (f1 - f_last) / rho;
        let margin = if bound.is_nan() { f64::INFINITY } else { bound - sum_sq + 2.0 * sum_slack / rho };
        note = format!("square-summable: sum {:.6e} <= bound {:.6e}", sum_sq, bound);
        if margin < 0.0 {
            w.add(trace.final_k(), margin);
            note.push_str(" (violated)");
        }
    }
    w.finish(NAME, *tol, note)
}

/// `min_{k≤N} ‖Δ_k‖ ≤ sqrt(2(f(x^0) - f*)/(ρ(N+1)))` and
/// `(1/(N+1)) Σ_{k≤N} ‖Δ_k‖² ≤ 2(f(x^0) - f*)/(ρ(N+1))` for every prefix `N`.
pub fn check_sqrt_n_bound(trace: &Trace, rho: f64, f_star: f64, tol: &Tolerance) -> Result<CheckResult, DiagError> {
    const NAME: &str = "sqrt_n_bound";
    let min_f = trace.records.iter().map(|r| r.f).fold(f64::INFINITY, f64::min);
    if f_star > min_f + tol.slack(min_f) {
        return Err(DiagError::InvalidFStar { f_star, min_f });
    }
    if !(rho > 0.0) {
        return Ok(CheckResult::skipped(NAME, *tol, "rho = 0: bound not available"));
    }
    let f0 = trace.records[0].f;
    let gap = f0 - f_star;
    let slack = tol.slack(f0);
    let mut w = Worst::new();
    let mut min_step = f64::INFINITY;
    let mut sum_sq = 0.0;
    let mut n = 0usize;
    for rec in &trace.records {
        let Some(s) = rec.step_norm else { continue };
        min_step = min_step.min(s);
        sum_sq += s * s;
        let count = (n + 1) as f64;
        let rhs_sq = 2.0 * gap / (rho * count);
        w.add(rec.k, libm::sqrt(rhs_sq) + slack - min_step);
        w.add(rec.k, rhs_sq + slack - sum_sq / count);
        n += 1;
    }
    if n == 0 {
        return Ok(CheckResult::skipped(NAME, *tol, "no steps"));
    }
    Ok(w.finish(NAME, *tol, format!("checked {} prefixes", n)))
}

/// `dist(y, ∂g(x) + N_C(x)) + dist(y, ∂h(x))`; zero iff `y` certifies DC
/// criticality of `x`. Empty subdifferentials give `+inf`.
pub fn criticality_residual(problem: &DcProblem, x: &[f64], y: &[f64]) -> Result<f64, DiagError> {
    let cone = problem.constraint.normal_cone_box(x).ok_or(DiagError::NotRepresentable)?;
    let dg = problem.g.subdiff(x).plus_box(&cone).distance(y);
    let dh = problem.h.subdiff(x).distance(y);
    Ok(dg + dh)
}

/// Desingularizing function `φ(t) = M t^{1-θ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KlModel {
    pub theta: f64,
    pub m: f64,
    pub eta: f64,
}

impl KlModel {
    pub fn new(theta: f64, m: f64) -> Result<Self, DiagError> {
        if !(0.0..1.0).contains(&theta) {
            return Err(DiagError::InvalidParameter("theta must lie in [0, 1)"));
        }
        if !(m > 0.0) {
            return Err(DiagError::InvalidParameter("M must be positive"));
        }
        Ok(KlModel { theta, m, eta: f64::INFINITY })
    }

    pub fn phi(&self, t: f64) -> f64 {
        if t <= 0.0 {
            0.0
        } else {
            self.m * libm::pow(t, 1.0 - self.theta)
        }
    }

    pub fn phi_prime(&self, t: f64) -> f64 {
        if t <= 0.0 {
            f64::INFINITY
        } else {
            self.m * (1.0 - self.theta) * libm::pow(t, -self.theta)
        }
    }
}

/// Least-squares fit of `log Ψ_{k+1} = s·log‖Δ_k‖ + c`, which estimates the
/// exponent in `Ψ_{k+1}^θ ≤ M L ‖Δ_k‖` as `θ = 1/s`.
#[derive(Debug, Clone, PartialEq)]
pub struct LojasiewiczFit {
    pub theta: f64,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub n_points: usize,
    /// First step index used.
    pub start: usize,
    pub lipschitz: f64,
    /// `L` was not declared by the oracle and defaulted to 1.
    pub lipschitz_assumed: bool,
    /// `M L` read off the regression line, `exp(c/s)`.
    pub ml_central: f64,
    /// Smallest `M L` for which `Ψ_{k+1}^θ ≤ M L ‖Δ_k‖` holds on every fitted pair.
    pub ml_envelope: f64,
    pub f_star: f64,
}

impl LojasiewiczFit {
    /// Łojasiewicz constant `M` (envelope value divided by `L`).
    pub fn m(&self) -> f64 {
        self.ml_envelope / self.lipschitz
    }

    /// `φ(t) = t^{1-θ}` with the fitted exponent.
    pub fn kl_model(&self) -> Result<KlModel, DiagError> {
        KlModel::new(self.theta, 1.0)
    }

    /// `C2 = M L / (1 - θ)`, the regularity constant paired with `φ(t) = t^{1-θ}`.
    pub fn c2(&self) -> f64 {
        self.ml_envelope / (1.0 - self.theta)
    }
}

/// Minimum number of post-burn-in pairs for an exponent fit.
pub const MIN_FIT_POINTS: usize = 20;

pub fn estimate_kl_exponent(
    trace: &Trace,
    f_star: f64,
    burn_in_fraction: f64,
    lipschitz: Option<f64>,
) -> Result<LojasiewiczFit, DiagError> {
    if !(0.0..1.0).contains(&burn_in_fraction) {
        return Err(DiagError::InvalidParameter("burn_in_fraction must lie in [0, 1)"));
    }
    let recs = &trace.records;
    let n_steps = recs.iter().filter(|r| r.step_norm.is_some()).count();
    let start = libm::ceil(burn_in_fraction * n_steps as f64) as usize;
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    let mut pairs = Vec::new();
    for k in start..recs.len().saturating_sub(1) {
        let Some(s) = recs[k].step_norm else { continue };
        let psi = recs[k + 1].f - f_star;
        if psi < 0.0 {
            return Err(DiagError::NonPositivePsi { k: k + 1 });
        }
        if psi > 0.0 && s > 0.0 && psi.is_finite() {
            xs.push(libm::log(s));
            ys.push(libm::log(psi));
            pairs.push((s, psi));
        }
    }
    if xs.len() < MIN_FIT_POINTS {
        return Err(DiagError::InsufficientData { needed: MIN_FIT_POINTS, got: xs.len() });
    }
    let line = fit_line(&xs, &ys).ok_or(DiagError::InsufficientData { needed: MIN_FIT_POINTS, got: xs.len() })?;
    let theta = 1.0 / line.slope;
    let ml_central = libm::exp(line.intercept / line.slope);
    let ml_envelope = pairs.iter().map(|(s, psi)| libm::pow(*psi, theta) / s).fold(0.0, f64::max);
    let (l, assumed) = match lipschitz {
        Some(l) if l > 0.0 => (l, false),
        _ => (1.0, true),
    };
    Ok(LojasiewiczFit {
        theta,
        slope: line.slope,
        intercept: line.intercept,
        r_squared: line.r_squared,
        n_points: xs.len(),
        start,
        lipschitz: l,
        lipschitz_assumed: assumed,
        ml_central,
        ml_envelope,
        f_star,
    })
}

/// `¾‖Δ_k‖ ≤ ¼‖Δ_{k-1}‖ + (max{C1,C2}/D)(φ(Ψ_k) - φ(Ψ_{k+1}))` for `k ≥ start`,
/// and the telescoped tail bound
/// `½ Σ_{k≥start} ‖Δ_k‖ ≤ ¼‖Δ_{start-1}‖ + (max{C1,C2}/D) φ(Ψ_start)`.
#[allow(clippy::too_many_arguments)]
pub fn check_residual_relation(
    trace: &Trace,
    kl: &KlModel,
    d: f64,
    c1: f64,
    c2: f64,
    f_star: f64,
    start: usize,
    tol: &Tolerance,
) -> Result<CheckResult, DiagError> {
    const NAME: &str = "residual_relation";
    if !(d > 0.0) {
        return Err(DiagError::InvalidParameter("D must be positive"));
    }
    if !(c1 >= 0.0 && c2 >= 0.0 && c1 + c2 > 0.0) {
        return Err(DiagError::InvalidParameter("C1, C2 must be nonnegative with C1 + C2 > 0"));
    }
    let c = c1.max(c2) / d;
    let recs = &trace.records;
    let psi = |k: usize| recs[k].f - f_star;
    let first = start.max(1);
    let mut w = Worst::new();
    let mut tail_sum = 0.0;
    let mut tail_slack = 0.0;
    for k in first..recs.len().saturating_sub(1) {
        let (Some(s), Some(s_prev)) = (recs[k].step_norm, recs[k - 1].step_norm) else { continue };
        let rhs = 0.25 * s_prev + c * (kl.phi(psi(k)) - kl.phi(psi(k + 1)));
        let slack = tol.slack(s_prev);
        w.add(k, rhs - 0.75 * s + slack);
        tail_sum += s;
        tail_slack += slack;
    }
    if w.iter.is_none() {
        return Ok(CheckResult::skipped(NAME, *tol, "no post-burn-in steps"));
    }
    let s_before = recs[first - 1].step_norm.unwrap_or(0.0);
    let bound = 0.25 * s_before + c * kl.phi(psi(first));
    let tail_margin = bound + tail_slack - 0.5 * tail_sum;
    let mut note = format!("tail: sum {:.6e}, telescoped bound {:.6e}", tail_sum, 2.0 * bound);
    if !(tail_sum.is_finite()) || tail_margin < 0.0 {
        w.add(trace.final_k(), if tail_margin.is_nan() { f64::NEG_INFINITY } else { tail_margin });
        note.push_str(" (violated)");
    }
    Ok(w.finish(NAME, *tol, note))
}

/// H1 (Lyapunov), H2 (sufficient descent with `D = ρ/2`) and H3 (regularity,
/// Łojasiewicz case `C1 = 0`, `C2 = M L/(1-θ)`) from a fitted exponent.
pub fn check_h1_h2_h3(trace: &Trace, fit: &LojasiewiczFit, rho: f64, f_star: f64, tol: &Tolerance) -> DiagnosticReport {
    let mut report = DiagnosticReport::default();
    if fit.lipschitz_assumed {
        report.warnings.push("gradient Lipschitz constant of h not declared; L = 1 assumed".to_string());
    }

    // H1
    let mut w = Worst::new();
    let mut psi_max: f64 = 0.0;
    for rec in &trace.records {
        let psi = rec.f - f_star;
        psi_max = psi_max.max(psi);
        w.add(rec.k, psi + tol.slack(rec.f));
    }
    let psi_last = trace.last().f - f_star;
    let mut note = format!("Psi_last = {:.3e}, Psi_max = {:.3e}", psi_last, psi_max);
    let vanishing = psi_last <= tol.slack(f_star) || psi_last <= 1e-3 * psi_max;
    if !vanishing {
        w.add(trace.final_k(), -psi_last);
        note.push_str(" (tail not vanishing)");
    }
    report.checks.push(w.finish("H1_lyapunov", *tol, note));

    // H2
    let mut h2 = check_sufficient_descent(trace, rho, tol);
    h2.name = "H2_sufficient_descent".to_string();
    report.checks.push(h2);

    // H3
    let kl = match fit.kl_model() {
        Ok(kl) => kl,
        Err(_) => {
            report.checks.push(CheckResult::skipped(
                "H3_regularity",
                *tol,
                format!("fitted theta = {:.4} outside [0, 1)", fit.theta),
            ));
            return report;
        }
    };
    let c2 = fit.c2();
    let recs = &trace.records;
    let mut w = Worst::new();
    for k in (fit.start + 1).max(1)..recs.len() {
        let Some(s_prev) = recs[k - 1].step_norm else { continue };
        let psi = recs[k].f - f_star;
        if psi <= 0.0 {
            continue;
        }
        let lhs = kl.phi_prime(psi) * c2 * s_prev;
        w.add(k, lhs - 1.0 + tol.abs + tol.rel);
    }
    if w.iter.is_none() {
        report.checks.push(CheckResult::skipped("H3_regularity", *tol, "no usable iterates"));
    } else {
        report.checks.push(w.finish("H3_regularity", *tol, format!("C1 = 0, C2 = {:.6e}", c2)));
    }
    report
}

/// Flags a tail that does not look like a Cauchy sequence: either the step
/// lengths have not shrunk (median tail step ≥ half the median head step), or
/// the tail spreads over more than 100 median steps and over more than 1% of
/// the trajectory's diameter. Head and tail are the first and last 10%.
pub fn check_cauchy_tail(trace: &Trace, tol: &Tolerance) -> CheckResult {
    const NAME: &str = "cauchy_tail";
    if trace.status == Status::FixedPoint {
        let mut r = Worst::new();
        r.add(trace.final_k(), 0.0);
        return r.finish(NAME, *tol, "fixed point reached".to_string());
    }
    let xs: Vec<&[f64]> = trace.records.iter().map(|r| r.x.as_slice()).collect();
    let steps = trace.step_norms();
    if xs.len() < 10 || steps.len() < 10 {
        return CheckResult::skipped(NAME, *tol, "fewer than 10 iterates");
    }
    let take = |n: usize| libm::ceil((n as f64) * 0.1).max(2.0) as usize;
    let tail_pts = &xs[xs.len() - take(xs.len())..];
    let tail_steps = &steps[steps.len() - take(steps.len())..];
    let head_steps = &steps[..take(steps.len())];

    let mut spread = 0.0f64;
    for (i, a) in tail_pts.iter().enumerate() {
        for b in &tail_pts[i + 1..] {
            spread = spread.max(crate::dist(a, b));
        }
    }
    let mut diameter = 0.0f64;
    let origin = xs[0];
    for p in &xs {
        diameter = diameter.max(crate::dist(origin, p));
    }
    let med_tail = median(tail_steps);
    let med_head = median(head_steps);
    let k = trace.final_k();
    let mut w = Worst::new();

    let steps_stalled = med_tail > tol.slack(0.0) && med_tail >= 0.5 * med_head;
    let drifting = spread > 100.0 * med_tail && spread > 0.01 * diameter && spread > tol.slack(0.0);
    let note = format!(
        "tail spread {:.3e}, median tail step {:.3e}, median head step {:.3e}, diameter {:.3e}",
        spread, med_tail, med_head, diameter
    );
    if steps_stalled {
        w.add(k, 0.5 * med_head - med_tail);
    }
    if drifting {
        w.add(k, 100.0 * med_tail - spread);
    }
    if w.iter.is_none() {
        w.add(k, (0.5 * med_head - med_tail).max(0.0));
    }
    w.finish(NAME, *tol, note)
}

/// Parameters for [`diagnose`].
#[derive(Debug, Clone, PartialEq)]
pub struct DiagnoseOptions {
    pub rho: f64,
    pub f_star: f64,
    pub burn_in_fraction: f64,
    pub lipschitz: Option<f64>,
    /// Use this exponent instead of the fitted one for the KL checks.
    pub theta: Option<f64>,
    pub tol: Tolerance,
}

/// Runs every trace-only check. KL checks are skipped when no exponent can
/// be fitted or the fitted exponent leaves `[0, 1)`.
pub fn diagnose(trace: &Trace, opts: &DiagnoseOptions) -> DiagnosticReport {
    let tol = &opts.tol;
    let mut report = DiagnosticReport::default();
    report.checks.push(check_monotone_descent(trace, tol));
    report.checks.push(check_sufficient_descent(trace, opts.rho, tol));
    match check_sqrt_n_bound(trace, opts.rho, opts.f_star, tol) {
        Ok(c) => report.checks.push(c),
        Err(e) => {
            let mut c = CheckResult::skipped("sqrt_n_bound", *tol, e.to_string());
            c.outcome = CheckOutcome::Fail;
            c.worst_margin = f64::NEG_INFINITY;
            report.checks.push(c);
        }
    }
    report.checks.push(check_cauchy_tail(trace, tol));

    let kl_names = ["H1_lyapunov", "H2_sufficient_descent", "H3_regularity", "residual_relation"];
    let fit = match estimate_kl_exponent(trace, opts.f_star, opts.burn_in_fraction, opts.lipschitz) {
        Ok(mut fit) => {
            if let Some(theta) = opts.theta {
                fit.theta = theta;
                fit.ml_envelope = envelope_for(trace, &fit);
            }
            fit
        }
        Err(e) => {
            for name in kl_names {
                report.checks.push(CheckResult::skipped(name, *tol, format!("no exponent fit: {}", e)));
            }
            return report;
        }
    };
    let h = check_h1_h2_h3(trace, &fit, opts.rho, opts.f_star, tol);
    report.checks.extend(h.checks);
    report.warnings.extend(h.warnings);
    match fit.kl_model() {
        Ok(kl) if opts.rho > 0.0 => {
            let d = opts.rho / 2.0;
            match check_residual_relation(trace, &kl, d, 0.0, fit.c2(), opts.f_star, fit.start + 1, tol) {
                Ok(c) => report.checks.push(c),
                Err(e) => report.checks.push(CheckResult::skipped("residual_relation", *tol, e.to_string())),
            }
        }
        Ok(_) => report.checks.push(CheckResult::skipped("residual_relation", *tol, "rho = 0: D unavailable")),
        Err(_) => report.checks.push(CheckResult::skipped(
            "residual_relation",
            *tol,
            format!("fitted theta = {:.4} outside [0, 1)", fit.theta),
        )),
    }
    report.fit = Some(fit);
    report
}

/// Recomputes the `M L` envelope for an externally supplied exponent.
fn envelope_for(trace: &Trace, fit: &LojasiewiczFit) -> f64 {
    let recs = &trace.records;
    let mut env: f64 = 0.0;
    for k in fit.start..recs.len().saturating_sub(1) {
        let Some(s) = recs[k].step_norm else { continue };
        let psi = recs[k + 1].f - fit.f_star;
        if psi > 0.0 && s > 0.0 {
            env = env.max(libm::pow(psi, fit.theta) / s);
        }
    }
    env
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;

    fn synthetic(fs: Vec<f64>) -> Trace {
        let xs = (0..fs.len()).map(|i| vec![i as f64]).collect();
        Trace::from_iterates("syn", xs, fs, Status::MaxIters)
    }

    #[test]
    fn monotone_violation_reported_at_k0() {
        let t = synthetic(vec![1.0, 1.1]);
        let c = check_monotone_descent(&t, &Tolerance::default());
        assert_eq!(c.outcome, CheckOutcome::Fail);
        assert_eq!(c.worst_iter, Some(0));
    }

    #[test]
    fn constant_trace_passes_sufficient_descent() {
        let xs = vec![vec![2.0]; 5];
        let t = Trace::from_iterates("c", xs, vec![1.0; 5], Status::MaxIters);
        assert!(check_sufficient_descent(&t, 2.0, &Tolerance::default()).passed());
        assert_eq!(check_sufficient_descent(&t, 0.0, &Tolerance::default()).outcome, CheckOutcome::Skipped);
    }

    #[test]
    fn flat_unit_steps_violate_sqrt_n() {
        let t = synthetic(vec![0.0; 10]);
        let c = check_sqrt_n_bound(&t, 1.0, 0.0, &Tolerance::default()).unwrap();
        assert_eq!(c.outcome, CheckOutcome::Fail);
        assert!(matches!(
            check_sqrt_n_bound(&t, 1.0, 0.5, &Tolerance::default()),
            Err(DiagError::InvalidFStar { .. })
        ));
    }

    #[test]
    fn kl_model_shape() {
        let kl = KlModel::new(0.75, 2.0).unwrap();
        assert_eq!(kl.phi(0.0), 0.0);
        assert!((kl.phi(16.0) - 4.0).abs() < 1e-12);
        assert!((kl.phi_prime(16.0) - 2.0 * 0.25 / 8.0).abs() < 1e-12);
        assert!(KlModel::new(1.0, 1.0).is_err());
        assert!(KlModel::new(0.5, 0.0).is_err());
    }

    #[test]
    fn too_few_points_for_exponent() {
        let t = synthetic((0..30).map(|k| 1.0 / (1.0 + k as f64)).collect());
        assert!(matches!(estimate_kl_exponent(&t, 0.0, 0.5, None), Err(DiagError::InsufficientData { .. })));
    }

    #[test]
    fn negative_psi_is_rejected() {
        let t = synthetic((0..100).map(|k| 1.0 / (1.0 + k as f64)).collect());
        assert!(matches!(estimate_kl_exponent(&t, 0.5, 0.5, None), Err(DiagError::NonPositivePsi { .. })));
    }
}

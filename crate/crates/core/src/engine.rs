//! The DCA loop: `y^k ∈ ∂h(x^k)`, then `x^{k+1} ∈ argmin { g - <y^k, .> : C }`.
//!
//! Every run produces a [`Trace`]. Breakdowns of the iteration (an empty
//! subdifferential, a subproblem without minimizer) are recorded as the trace
//! status rather than returned as errors, since reproducing them is a
//! legitimate outcome.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::model::{eval_f, select_subgradient, DcProblem, ModelError, Point, SelectionRule};
use crate::subsolver::{solve_subproblem, SubproblemStatus, SubsolverConfig, TieBreak};

/// Relative step below which an iterative subsolver step counts as a fixed point.
pub const FIXED_POINT_REL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("invalid run configuration: {0}")]
    InvalidConfig(String),
    #[error("x0 has dimension {got}, problem has dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("x0 must be finite")]
    NonFiniteStart,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub max_iters: usize,
    /// Halt once `‖x^{k+1} - x^k‖ ≤ tol`. Off by default; a halt on this rule
    /// says nothing about optimality.
    pub halt_step_tol: Option<f64>,
    /// Bound on `‖x^k‖` and on `-f(x^k)`.
    pub divergence_guard: f64,
    pub selection_rule: SelectionRule,
    pub subsolver: SubsolverConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            max_iters: 1000,
            halt_step_tol: None,
            divergence_guard: 1e6,
            selection_rule: SelectionRule::Default,
            subsolver: SubsolverConfig::default(),
        }
    }
}

impl RunConfig {
    /// Defaults with a subsolver tuned to the problem dimension.
    pub fn for_problem(problem: &DcProblem) -> Self {
        RunConfig { subsolver: SubsolverConfig::for_dim(problem.dim), ..Self::default() }
    }

    pub fn with_max_iters(mut self, n: usize) -> Self {
        self.max_iters = n;
        self
    }

    pub fn with_rule(mut self, rule: SelectionRule) -> Self {
        self.selection_rule = rule;
        self
    }

    pub fn with_tie_break(mut self, tie: TieBreak) -> Self {
        self.subsolver.tie_break = tie;
        self
    }

    pub fn with_halt_step_tol(mut self, tol: f64) -> Self {
        self.halt_step_tol = Some(tol);
        self
    }

    pub fn with_divergence_guard(mut self, guard: f64) -> Self {
        self.divergence_guard = guard;
        self
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        if self.max_iters == 0 {
            return Err(EngineError::InvalidConfig("max_iters must be at least 1".to_string()));
        }
        if !(self.divergence_guard > 0.0) {
            return Err(EngineError::InvalidConfig("divergence_guard must be positive".to_string()));
        }
        if let Some(t) = self.halt_step_tol {
            if !(t > 0.0) {
                return Err(EngineError::InvalidConfig("halt_step_tol must be positive".to_string()));
            }
        }
        self.subsolver.validate().map_err(|e| EngineError::InvalidConfig(e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BreakdownKind {
    /// `∂h(x^k) = ∅`: `y^k` cannot be chosen.
    EmptySubdifferential,
    /// The convex subproblem has no minimizer.
    NoMinimizer,
    /// The subsolver ran out of iterations before certifying a minimizer.
    SubsolverStall,
}

impl BreakdownKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BreakdownKind::EmptySubdifferential => "EmptySubdifferential",
            BreakdownKind::NoMinimizer => "NoMinimizer",
            BreakdownKind::SubsolverStall => "SubsolverStall",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    MaxIters,
    ToleranceHalt,
    Breakdown(BreakdownKind),
    Diverged,
    FixedPoint,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::MaxIters => f.write_str("MaxIters"),
            Status::ToleranceHalt => f.write_str("ToleranceHalt (optimality not guaranteed)"),
            Status::Breakdown(kind) => write!(f, "Breakdown({})", kind.as_str()),
            Status::Diverged => f.write_str("Diverged"),
            Status::FixedPoint => f.write_str("FixedPoint"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown status `{0}`")]
pub struct ParseStatusError(pub String);

impl FromStr for Status {
    type Err = ParseStatusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        Ok(match s {
            "MaxIters" => Status::MaxIters,
            "Diverged" => Status::Diverged,
            "FixedPoint" => Status::FixedPoint,
            "Breakdown(EmptySubdifferential)" => Status::Breakdown(BreakdownKind::EmptySubdifferential),
            "Breakdown(NoMinimizer)" => Status::Breakdown(BreakdownKind::NoMinimizer),
            "Breakdown(SubsolverStall)" => Status::Breakdown(BreakdownKind::SubsolverStall),
            _ if s.starts_with("ToleranceHalt") => Status::ToleranceHalt,
            _ => return Err(ParseStatusError(s.to_string())),
        })
    }
}

/// One iterate of a trace. Step data describe the move from `x` to the next
/// iterate and are absent on the last record unless it is a fixed point.
#[derive(Debug, Clone, PartialEq)]
pub struct IterRecord {
    pub k: usize,
    pub x: Point,
    pub f: f64,
    pub y: Option<Point>,
    pub step_norm: Option<f64>,
    pub descent_delta: Option<f64>,
    pub certificate: Option<f64>,
}

impl IterRecord {
    fn bare(k: usize, x: Point, f: f64) -> Self {
        IterRecord { k, x, f, y: None, step_norm: None, descent_delta: None, certificate: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub problem: String,
    pub dim: usize,
    pub config: RunConfig,
    pub records: Vec<IterRecord>,
    pub status: Status,
    pub warnings: Vec<String>,
}

impl Trace {
    /// Index of the last record.
    pub fn final_k(&self) -> usize {
        self.records.last().map(|r| r.k).unwrap_or(0)
    }

    pub fn last(&self) -> &IterRecord {
        self.records.last().expect("a trace always holds x0")
    }

    pub fn f_values(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.f).collect()
    }

    /// Step norms of the records that have one, in order.
    pub fn step_norms(&self) -> Vec<f64> {
        self.records.iter().filter_map(|r| r.step_norm).collect()
    }

    /// Builds a trace from raw iterates, filling in step norms and descent
    /// deltas. Meant for diagnostics of externally produced sequences.
    pub fn from_iterates(name: &str, xs: Vec<Point>, fs: Vec<f64>, status: Status) -> Self {
        assert_eq!(xs.len(), fs.len(), "one f value per iterate");
        let dim = xs.first().map(|x| x.len()).unwrap_or(0);
        let n = xs.len();
        let mut records = Vec::with_capacity(n);
        for k in 0..n {
            let mut rec = IterRecord::bare(k, xs[k].clone(), fs[k]);
            if k + 1 < n {
                rec.step_norm = Some(crate::dist(&xs[k], &xs[k + 1]));
                rec.descent_delta = Some(fs[k] - fs[k + 1]);
            }
            records.push(rec);
        }
        Trace { problem: name.to_string(), dim, config: RunConfig::default(), records, status, warnings: Vec::new() }
    }
}

/// Outcome of a single DCA step.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    pub k: usize,
    pub x: Point,
    pub y: Point,
    pub x_next: Point,
    pub certificate: f64,
    pub inner_iters: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StepError {
    #[error("subdifferential of h is empty at x^k")]
    EmptySubdifferential,
    #[error("y^k could not be selected: {0}")]
    Selection(ModelError),
    #[error("subproblem has no minimizer")]
    NoMinimizer { y: Point },
    #[error("subsolver stalled with certificate {certificate:e}")]
    SubsolverStall { y: Point, certificate: f64 },
}

/// One DCA iteration from `x_k`.
pub fn dca_step(
    problem: &DcProblem,
    x_k: &[f64],
    rule: &SelectionRule,
    cfg: &SubsolverConfig,
    k: usize,
) -> Result<StepRecord, StepError> {
    let y = select_subgradient(&problem.h, x_k, rule, k).map_err(|e| match e {
        ModelError::EmptySubdifferential => StepError::EmptySubdifferential,
        other => StepError::Selection(other),
    })?;
    let res = solve_subproblem(problem, &y, x_k, cfg);
    match res.status {
        SubproblemStatus::Solved => Ok(StepRecord {
            k,
            x: x_k.to_vec(),
            y,
            x_next: res.x_next,
            certificate: res.certificate,
            inner_iters: res.inner_iters,
        }),
        SubproblemStatus::NoMinimizer => Err(StepError::NoMinimizer { y }),
        SubproblemStatus::MaxItersExceeded => Err(StepError::SubsolverStall { y, certificate: res.certificate }),
    }
}

/// Runs DCA from `x0`.
pub fn run_dca(problem: &DcProblem, x0: &[f64], cfg: &RunConfig) -> Result<Trace, EngineError> {
    cfg.validate()?;
    if x0.len() != problem.dim {
        return Err(EngineError::DimensionMismatch { expected: problem.dim, got: x0.len() });
    }
    if x0.iter().any(|c| !c.is_finite()) {
        return Err(EngineError::NonFiniteStart);
    }
    if let SelectionRule::FixedValue(v) = &cfg.selection_rule {
        if v.len() != problem.dim {
            return Err(EngineError::InvalidConfig(format!(
                "FixedValue has dimension {}, problem has dimension {}",
                v.len(),
                problem.dim
            )));
        }
    }

    let mut warnings = Vec::new();
    if !problem.h.subdiff_domain.contains(x0) {
        warnings.push(format!("x0 lies outside the declared dom ∂h = {}", problem.h.subdiff_domain));
    }

    let mut records: Vec<IterRecord> = Vec::new();
    let mut x: Point = x0.to_vec();
    let mut f = eval_f(problem, &x);
    let mut k = 0usize;
    let status = loop {
        let nx = crate::norm(&x);
        if !nx.is_finite() || nx > cfg.divergence_guard || -f > cfg.divergence_guard {
            records.push(IterRecord::bare(k, x, f));
            break Status::Diverged;
        }
        if k == cfg.max_iters {
            records.push(IterRecord::bare(k, x, f));
            break Status::MaxIters;
        }
        match dca_step(problem, &x, &cfg.selection_rule, &cfg.subsolver, k) {
            Err(StepError::EmptySubdifferential) | Err(StepError::Selection(_)) => {
                records.push(IterRecord::bare(k, x, f));
                break Status::Breakdown(BreakdownKind::EmptySubdifferential);
            }
            Err(StepError::NoMinimizer { y }) => {
                records.push(IterRecord { y: Some(y), ..IterRecord::bare(k, x, f) });
                break Status::Breakdown(BreakdownKind::NoMinimizer);
            }
            Err(StepError::SubsolverStall { y, certificate }) => {
                records.push(IterRecord { y: Some(y), certificate: Some(certificate), ..IterRecord::bare(k, x, f) });
                break Status::Breakdown(BreakdownKind::SubsolverStall);
            }
            Ok(step) => {
                let x_next = step.x_next;
                let f_next = eval_f(problem, &x_next);
                let step_norm = crate::dist(&x, &x_next);
                let delta = if f == f_next { 0.0 } else { f - f_next };
                let fixed = x_next == x
                    || (problem.closed_form.is_none() && step_norm <= FIXED_POINT_REL * (1.0 + nx));
                records.push(IterRecord {
                    k,
                    x,
                    f,
                    y: Some(step.y),
                    step_norm: Some(step_norm),
                    descent_delta: Some(delta),
                    certificate: Some(step.certificate),
                });
                if fixed {
                    break Status::FixedPoint;
                }
                if let Some(tol) = cfg.halt_step_tol {
                    if step_norm <= tol {
                        records.push(IterRecord::bare(k + 1, x_next, f_next));
                        break Status::ToleranceHalt;
                    }
                }
                x = x_next;
                f = f_next;
                k += 1;
            }
        }
    };

    Ok(Trace { problem: problem.name.clone(), dim: problem.dim, config: cfg.clone(), records, status, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ConvexOracle, SubdiffSet};
    use alloc::vec;

    #[test]
    fn status_round_trips_through_text() {
        for s in [
            Status::MaxIters,
            Status::ToleranceHalt,
            Status::Breakdown(BreakdownKind::EmptySubdifferential),
            Status::Breakdown(BreakdownKind::NoMinimizer),
            Status::Breakdown(BreakdownKind::SubsolverStall),
            Status::Diverged,
            Status::FixedPoint,
        ] {
            assert_eq!(s.to_string().parse::<Status>().unwrap(), s);
        }
        assert!(Status::ToleranceHalt.to_string().contains("optimality not guaranteed"));
        assert!("Converged".parse::<Status>().is_err());
    }

    #[test]
    fn invalid_config_is_rejected() {
        let p = DcProblem::new("z", 1, ConvexOracle::zero(1), ConvexOracle::zero(1));
        assert!(run_dca(&p, &[0.0], &RunConfig::default().with_max_iters(0)).is_err());
        assert!(run_dca(&p, &[0.0, 1.0], &RunConfig::default()).is_err());
        assert!(run_dca(&p, &[f64::NAN], &RunConfig::default()).is_err());
    }

    #[test]
    fn tolerance_halt_keeps_the_last_iterate() {
        // g = x², h = x²/2: x_{k+1} = x_k / 2
        let g = ConvexOracle::new(|x| x[0] * x[0], |x| SubdiffSet::scalar(2.0 * x[0])).with_strong_convexity(2.0);
        let h = ConvexOracle::new(|x| 0.5 * x[0] * x[0], |x| SubdiffSet::scalar(x[0])).with_strong_convexity(1.0);
        let p = DcProblem::new("q", 1, g, h);
        let t = run_dca(&p, &[1.0], &RunConfig::default().with_halt_step_tol(0.1)).unwrap();
        assert_eq!(t.status, Status::ToleranceHalt);
        assert!(t.last().step_norm.is_none());
        assert_eq!(t.records.len(), t.final_k() + 1);
    }

    #[test]
    fn warning_outside_subdiff_domain() {
        let h = ConvexOracle::zero(1).with_domain(crate::model::Region::interval(crate::model::Interval::at_least(0.0)));
        let g = ConvexOracle::new(|x| 0.5 * x[0] * x[0], |x| SubdiffSet::scalar(x[0])).with_strong_convexity(1.0);
        let p = DcProblem::new("w", 1, g, h);
        let t = run_dca(&p, &[-1.0], &RunConfig::default().with_max_iters(3)).unwrap();
        assert_eq!(t.warnings.len(), 1);
    }

    #[test]
    fn from_iterates_fills_steps() {
        let t = Trace::from_iterates("s", vec![vec![0.0], vec![3.0], vec![3.0]], vec![4.5, 0.0, 0.0], Status::FixedPoint);
        assert_eq!(t.step_norms(), vec![3.0, 0.0]);
        assert_eq!(t.records[0].descent_delta, Some(4.5));
        assert!(t.last().step_norm.is_none());
    }
}

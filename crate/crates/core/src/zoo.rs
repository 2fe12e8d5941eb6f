//! Ready-made DC problems: the classic counterexamples plus a few analytic
//! instruments with known Łojasiewicz exponents.
//!
//! | name | g | h | behavior |
//! |---|---|---|---|
//! | `ex1_bad` | `x²/2 + χ_{x≥0}` | `-√x` | `∂h(0) = ∅` after one step |
//! | `ex1_good` | `x²/2 - √x` on `x ≥ 0` | `-2√x` | decreases to 0 |
//! | `ex2_oscillate` | `max{-x, 0, x-1}` | `max{-x, 0}` | may oscillate with steps 0.8 |
//! | `ex3_weak`, `ex3_good_selection` | `max{0, x} + χ_{x≥-1}` | `max{0, -x}` | stuck at 0 or reaches -1 |
//! | `ex3_alt_decomp` | `x + χ_{x≥-1}` | `0` | reaches -1 |
//! | `no_solution` | `e^x` | `0` | subproblem has no minimizer |
//! | `divergent` | `x²/2` | `e^x` | `x^{k+1} = e^{x^k}` diverges |
//! | `level_bounded_no_min` | `χ_{x>0}` | `-ln x` | subproblem has no minimizer |
//! | `quartic` | `x²/2 + x⁴/4` | `x²/2` | `θ = 3/4` |
//! | `quadratic` | `x²` | `x²/2` | `θ = 1/2` |
//! | `convex_oneshot` | `(x-3)²/2` | `0` | solved in one step |

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::engine::{run_dca, BreakdownKind, RunConfig, Status, Trace};
use crate::functions::MaxAffine;
use crate::model::{ArgminSet, ConvexOracle, DcProblem, Interval, Point, Region, SelectionRule, SubdiffSet};
use crate::subsolver::{cardano_from_slope, solve_x_plus_cube, TieBreak};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZooError {
    #[error("unknown zoo entry `{0}`")]
    UnknownName(String),
    #[error("unknown scenario `{scenario}` for `{entry}`")]
    UnknownScenario { entry: String, scenario: String },
}

/// Machine-checkable description of what a run should do.
#[derive(Debug, Clone, PartialEq)]
pub enum ExpectedBehavior {
    ConvergesTo { x_star: Point, f_star: f64, x_tol: f64, f_tol: f64 },
    BreaksDown { kind: BreakdownKind, at_k: usize },
    Oscillates { period: usize, step: f64 },
    Diverges,
}

impl fmt::Display for ExpectedBehavior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpectedBehavior::ConvergesTo { x_star, f_star, .. } => write!(f, "ConvergesTo(x*={:?}, f*={})", x_star, f_star),
            ExpectedBehavior::BreaksDown { kind, at_k } => write!(f, "BreaksDown({}, k={})", kind.as_str(), at_k),
            ExpectedBehavior::Oscillates { period, step } => write!(f, "Oscillates(period={}, step={})", period, step),
            ExpectedBehavior::Diverges => f.write_str("Diverges"),
        }
    }
}

impl ExpectedBehavior {
    /// `Ok` iff the trace shows the expected behavior.
    pub fn check(&self, trace: &Trace) -> Result<(), String> {
        match self {
            ExpectedBehavior::ConvergesTo { x_star, f_star, x_tol, f_tol } => {
                if !matches!(trace.status, Status::MaxIters | Status::FixedPoint) {
                    return Err(format!("status {} instead of convergence", trace.status));
                }
                let last = trace.last();
                let dx = crate::dist(&last.x, x_star);
                if !(dx <= *x_tol) {
                    return Err(format!("final x {:?} is {:e} from {:?}", last.x, dx, x_star));
                }
                if !(libm::fabs(last.f - f_star) <= *f_tol) {
                    return Err(format!("final f {} differs from {}", last.f, f_star));
                }
                Ok(())
            }
            ExpectedBehavior::BreaksDown { kind, at_k } => {
                if trace.status != Status::Breakdown(*kind) {
                    return Err(format!("status {} instead of Breakdown({})", trace.status, kind.as_str()));
                }
                if trace.final_k() != *at_k {
                    return Err(format!("breakdown at k = {} instead of {}", trace.final_k(), at_k));
                }
                Ok(())
            }
            ExpectedBehavior::Oscillates { period, step } => {
                if trace.status != Status::MaxIters {
                    return Err(format!("status {} instead of MaxIters", trace.status));
                }
                for s in trace.step_norms() {
                    if libm::fabs(s - step) > 1e-12 {
                        return Err(format!("step {} differs from {}", s, step));
                    }
                }
                let recs = &trace.records;
                for k in 0..recs.len().saturating_sub(*period) {
                    if crate::dist(&recs[k].x, &recs[k + period].x) > 1e-12 {
                        return Err(format!("iterates at k = {} and k + {} differ", k, period));
                    }
                }
                Ok(())
            }
            ExpectedBehavior::Diverges => {
                if trace.status == Status::Diverged {
                    Ok(())
                } else {
                    Err(format!("status {} instead of Diverged", trace.status))
                }
            }
        }
    }
}

/// A start point and configuration with the behavior it should produce.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub label: &'static str,
    pub x0: Point,
    pub config: RunConfig,
    pub expected: ExpectedBehavior,
}

#[derive(Debug, Clone)]
pub struct ZooEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub problem: DcProblem,
    /// The first scenario is the recommended one.
    pub scenarios: Vec<Scenario>,
}

impl ZooEntry {
    pub fn default_scenario(&self) -> &Scenario {
        &self.scenarios[0]
    }

    pub fn scenario(&self, label: &str) -> Result<&Scenario, ZooError> {
        self.scenarios.iter().find(|s| s.label == label).ok_or_else(|| ZooError::UnknownScenario {
            entry: self.name.to_string(),
            scenario: label.to_string(),
        })
    }

    pub fn recommended_x0(&self) -> &[f64] {
        &self.default_scenario().x0
    }

    pub fn expected(&self) -> &ExpectedBehavior {
        &self.default_scenario().expected
    }

    pub fn known_theta(&self) -> Option<f64> {
        self.problem.known_theta
    }

    /// Runs a scenario. The zoo configurations are valid by construction.
    pub fn run_scenario(&self, s: &Scenario) -> Trace {
        run_dca(&self.problem, &s.x0, &s.config).expect("zoo scenarios are well formed")
    }

    pub fn run(&self) -> Trace {
        self.run_scenario(self.default_scenario())
    }
}

pub const ZOO_NAMES: &[&str] = &[
    "ex1_bad",
    "ex1_good",
    "ex2_oscillate",
    "ex3_weak",
    "ex3_alt_decomp",
    "ex3_good_selection",
    "no_solution",
    "divergent",
    "level_bounded_no_min",
    "quartic",
    "quadratic",
    "convex_oneshot",
];

pub fn zoo_build(name: &str) -> Result<ZooEntry, ZooError> {
    Ok(match name {
        "ex1_bad" => ex1_bad(),
        "ex1_good" => ex1_good(),
        "ex2_oscillate" => ex2_oscillate(),
        "ex3_weak" => ex3_weak(),
        "ex3_alt_decomp" => ex3_alt_decomp(),
        "ex3_good_selection" => ex3_good_selection(),
        "no_solution" => no_solution(),
        "divergent" => divergent(),
        "level_bounded_no_min" => level_bounded_no_min(),
        "quartic" => quartic(),
        "quadratic" => quadratic(),
        "convex_oneshot" => convex_oneshot(),
        other => return Err(ZooError::UnknownName(other.to_string())),
    })
}

fn scenario(label: &'static str, x0: f64, config: RunConfig, expected: ExpectedBehavior) -> Scenario {
    Scenario { label, x0: vec![x0], config, expected }
}

fn converges(x: f64, f: f64, x_tol: f64, f_tol: f64) -> ExpectedBehavior {
    ExpectedBehavior::ConvergesTo { x_star: vec![x], f_star: f, x_tol, f_tol }
}

fn nonneg() -> Region {
    Region::interval(Interval::at_least(0.0))
}

fn positive() -> Region {
    Region::interval(Interval::greater_than(0.0))
}

fn smooth(f: fn(f64) -> f64, df: fn(f64) -> f64) -> ConvexOracle {
    ConvexOracle::new(move |x| f(x[0]), move |x| SubdiffSet::scalar(df(x[0])))
}

fn ex1_bad() -> ZooEntry {
    let g = ConvexOracle::new(
        |x| if x[0] >= 0.0 { 0.5 * x[0] * x[0] } else { f64::INFINITY },
        |x| {
            if x[0] > 0.0 {
                SubdiffSet::scalar(x[0])
            } else if x[0] == 0.0 {
                SubdiffSet::interval_1d(f64::NEG_INFINITY, 0.0)
            } else {
                SubdiffSet::Empty
            }
        },
    )
    .with_strong_convexity(1.0)
    .with_domain(nonneg());
    let h = ConvexOracle::new(
        |x| if x[0] >= 0.0 { -libm::sqrt(x[0]) } else { f64::INFINITY },
        |x| if x[0] > 0.0 { SubdiffSet::scalar(-0.5 / libm::sqrt(x[0])) } else { SubdiffSet::Empty },
    )
    .with_domain(nonneg())
    .with_subdiff_domain(positive());
    let problem = DcProblem::new("ex1_bad", 1, g, h).with_known_optimum(vec![0.0], 0.0);
    ZooEntry {
        name: "ex1_bad",
        summary: "g = x²/2 + χ_{x≥0}, h = -√x: x^1 = 0 leaves dom ∂h",
        problem,
        scenarios: vec![scenario(
            "default",
            1.0,
            RunConfig::default(),
            ExpectedBehavior::BreaksDown { kind: BreakdownKind::EmptySubdifferential, at_k: 1 },
        )],
    }
}

/// `g = x²/2 - √x` and `h = -2√x` on `x ≥ 0`, without the closed-form solver.
pub fn ex1_good_generic() -> DcProblem {
    let g = ConvexOracle::new(
        |x| if x[0] >= 0.0 { 0.5 * x[0] * x[0] - libm::sqrt(x[0]) } else { f64::INFINITY },
        |x| if x[0] > 0.0 { SubdiffSet::scalar(x[0] - 0.5 / libm::sqrt(x[0])) } else { SubdiffSet::Empty },
    )
    .with_strong_convexity(1.0)
    .with_domain(nonneg())
    .with_subdiff_domain(positive());
    let h = ConvexOracle::new(
        |x| if x[0] >= 0.0 { -2.0 * libm::sqrt(x[0]) } else { f64::INFINITY },
        |x| if x[0] > 0.0 { SubdiffSet::scalar(-1.0 / libm::sqrt(x[0])) } else { SubdiffSet::Empty },
    )
    .with_domain(nonneg())
    .with_subdiff_domain(positive());
    DcProblem::new("ex1_good", 1, g, h).with_known_optimum(vec![0.0], 0.0)
}

fn ex1_good() -> ZooEntry {
    let problem = ex1_good_generic().with_closed_form(|y| ArgminSet::Point(vec![cardano_from_slope(y[0])]));
    ZooEntry {
        name: "ex1_good",
        summary: "g = x²/2 - √x, h = -2√x on x ≥ 0: Cardano updates decrease to 0",
        problem,
        scenarios: vec![scenario("default", 1.0, RunConfig::default().with_max_iters(200), converges(0.0, 0.0, 1e-3, 1e-3))],
    }
}

fn ex2_oscillate() -> ZooEntry {
    let g = MaxAffine::new(vec![(-1.0, 0.0), (0.0, 0.0), (1.0, -1.0)]);
    let h = MaxAffine::new(vec![(-1.0, 0.0), (0.0, 0.0)]);
    let gc = g.clone();
    let problem = DcProblem::new("ex2_oscillate", 1, g.to_oracle(), h.to_oracle())
        .with_known_optimum(vec![0.0], 0.0)
        .with_closed_form(move |y| gc.argmin_linearized(y[0]));
    let adversarial = RunConfig::default()
        .with_max_iters(100)
        .with_rule(SelectionRule::AdversarialAlternate)
        .with_tie_break(TieBreak::Alternate);
    ZooEntry {
        name: "ex2_oscillate",
        summary: "g = max{-x, 0, x-1}, h = max{-x, 0}: flat argmin allows a 2-cycle",
        problem,
        scenarios: vec![
            scenario("adversarial", 0.1, adversarial, ExpectedBehavior::Oscillates { period: 2, step: 0.8 }),
            scenario("default", 0.1, RunConfig::default().with_max_iters(100), converges(0.0, 0.0, 0.0, 0.0)),
        ],
    }
}

fn ex3_problem(name: &str) -> DcProblem {
    let g = MaxAffine::new(vec![(0.0, 0.0), (1.0, 0.0)]).restricted_to(-1.0, f64::INFINITY);
    let h = MaxAffine::new(vec![(-1.0, 0.0), (0.0, 0.0)]);
    let gc = g.clone();
    DcProblem::new(name, 1, g.to_oracle(), h.to_oracle())
        .with_known_optimum(vec![-1.0], -1.0)
        .with_closed_form(move |y| gc.argmin_linearized(y[0]))
}

fn ex3_weak() -> ZooEntry {
    let weak = RunConfig::default()
        .with_rule(SelectionRule::FixedValue(vec![0.0]))
        .with_tie_break(TieBreak::StayIfCurrentOptimal);
    ZooEntry {
        name: "ex3_weak",
        summary: "g = max{0, x} + χ_{x≥-1}, h = max{0, -x}: y = 0 keeps DCA at the critical point 0",
        problem: ex3_problem("ex3_weak"),
        scenarios: vec![
            scenario("stay", 0.0, weak, converges(0.0, 0.0, 0.0, 0.0)),
            scenario("default", 0.0, RunConfig::default(), converges(-1.0, -1.0, 0.0, 0.0)),
        ],
    }
}

fn ex3_good_selection() -> ZooEntry {
    let cfg = RunConfig::default().with_rule(SelectionRule::FixedValue(vec![-0.5]));
    ZooEntry {
        name: "ex3_good_selection",
        summary: "as ex3_weak with y^k chosen near -1/2: DCA reaches the minimizer -1",
        problem: ex3_problem("ex3_good_selection"),
        scenarios: vec![scenario("default", 0.0, cfg, converges(-1.0, -1.0, 0.0, 0.0))],
    }
}

fn ex3_alt_decomp() -> ZooEntry {
    let g = MaxAffine::new(vec![(1.0, 0.0)]).restricted_to(-1.0, f64::INFINITY);
    let gc = g.clone();
    let problem = DcProblem::new("ex3_alt_decomp", 1, g.to_oracle(), ConvexOracle::zero(1))
        .with_known_optimum(vec![-1.0], -1.0)
        .with_closed_form(move |y| gc.argmin_linearized(y[0]));
    ZooEntry {
        name: "ex3_alt_decomp",
        summary: "g = x + χ_{x≥-1}, h = 0: 0 is no longer critical, DCA jumps to -1",
        problem,
        scenarios: vec![scenario("default", 0.0, RunConfig::default(), converges(-1.0, -1.0, 0.0, 0.0))],
    }
}

fn no_solution() -> ZooEntry {
    let problem = DcProblem::new("no_solution", 1, smooth(libm::exp, libm::exp), ConvexOracle::zero(1));
    ZooEntry {
        name: "no_solution",
        summary: "g = e^x, h = 0: bounded below but min e^x is not attained",
        problem,
        scenarios: vec![scenario(
            "default",
            0.0,
            RunConfig::default(),
            ExpectedBehavior::BreaksDown { kind: BreakdownKind::NoMinimizer, at_k: 0 },
        )],
    }
}

fn divergent() -> ZooEntry {
    let g = smooth(|x| 0.5 * x * x, |x| x).with_strong_convexity(1.0).with_grad_lipschitz(1.0);
    let problem = DcProblem::new("divergent", 1, g, smooth(libm::exp, libm::exp))
        .with_closed_form(|y| ArgminSet::Point(vec![y[0]]));
    ZooEntry {
        name: "divergent",
        summary: "g = x²/2, h = e^x: x^{k+1} = e^{x^k} grows without bound",
        problem,
        scenarios: vec![scenario("default", 0.0, RunConfig::default().with_max_iters(100), ExpectedBehavior::Diverges)],
    }
}

fn level_bounded_no_min() -> ZooEntry {
    let g = ConvexOracle::new(
        |x| if x[0] > 0.0 { 0.0 } else { f64::INFINITY },
        |x| if x[0] > 0.0 { SubdiffSet::scalar(0.0) } else { SubdiffSet::Empty },
    )
    .with_domain(positive());
    let h = ConvexOracle::new(
        |x| if x[0] > 0.0 { -libm::log(x[0]) } else { f64::INFINITY },
        |x| if x[0] > 0.0 { SubdiffSet::scalar(-1.0 / x[0]) } else { SubdiffSet::Empty },
    )
    .with_domain(positive());
    let problem = DcProblem::new("level_bounded_no_min", 1, g, h);
    ZooEntry {
        name: "level_bounded_no_min",
        summary: "f = ln x on x > 0 as χ_{x>0} - (-ln x): no minimizer, subproblems unattained",
        problem,
        scenarios: vec![scenario(
            "default",
            1.0,
            RunConfig::default(),
            ExpectedBehavior::BreaksDown { kind: BreakdownKind::NoMinimizer, at_k: 0 },
        )],
    }
}

/// `g = x²/2 + x⁴/4`, `h = x²/2`, so `f = x⁴/4`. Without a closed form.
pub fn quartic_generic() -> DcProblem {
    let g = smooth(|x| 0.5 * x * x + 0.25 * x * x * x * x, |x| x + x * x * x).with_strong_convexity(1.0);
    let h = smooth(|x| 0.5 * x * x, |x| x).with_strong_convexity(1.0).with_grad_lipschitz(1.0);
    DcProblem::new("quartic", 1, g, h).with_known_optimum(vec![0.0], 0.0).with_known_theta(0.75)
}

fn quartic() -> ZooEntry {
    let problem = quartic_generic().with_closed_form(|y| ArgminSet::Point(vec![solve_x_plus_cube(y[0])]));
    ZooEntry {
        name: "quartic",
        summary: "g = x²/2 + x⁴/4, h = x²/2: f = x⁴/4, Łojasiewicz exponent 3/4",
        problem,
        scenarios: vec![scenario("default", 0.5, RunConfig::default().with_max_iters(2000), converges(0.0, 0.0, 0.05, 1e-6))],
    }
}

fn quadratic() -> ZooEntry {
    let g = smooth(|x| x * x, |x| 2.0 * x).with_strong_convexity(2.0).with_grad_lipschitz(2.0);
    let h = smooth(|x| 0.5 * x * x, |x| x).with_strong_convexity(1.0).with_grad_lipschitz(1.0);
    let problem = DcProblem::new("quadratic", 1, g, h)
        .with_known_optimum(vec![0.0], 0.0)
        .with_known_theta(0.5)
        .with_closed_form(|y| ArgminSet::Point(vec![y[0] / 2.0]));
    ZooEntry {
        name: "quadratic",
        summary: "g = x², h = x²/2: f = x²/2, Łojasiewicz exponent 1/2",
        problem,
        scenarios: vec![scenario("default", 1.0, RunConfig::default().with_max_iters(200), converges(0.0, 0.0, 1e-12, 1e-12))],
    }
}

fn convex_oneshot() -> ZooEntry {
    let g = smooth(|x| 0.5 * (x - 3.0) * (x - 3.0), |x| x - 3.0).with_strong_convexity(1.0).with_grad_lipschitz(1.0);
    let problem = DcProblem::new("convex_oneshot", 1, g, ConvexOracle::zero(1))
        .with_known_optimum(vec![3.0], 0.0)
        .with_known_theta(0.5)
        .with_closed_form(|y| ArgminSet::Point(vec![3.0 + y[0]]));
    ZooEntry {
        name: "convex_oneshot",
        summary: "g = (x-3)²/2, h = 0: a convex problem solved by one subproblem",
        problem,
        scenarios: vec![scenario("default", 0.0, RunConfig::default().with_max_iters(100), converges(3.0, 0.0, 0.0, 0.0))],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_scenario_behaves_as_declared() {
        for name in ZOO_NAMES {
            let entry = zoo_build(name).unwrap();
            assert_eq!(entry.name, *name);
            for s in &entry.scenarios {
                let trace = entry.run_scenario(s);
                if let Err(e) = s.expected.check(&trace) {
                    panic!("{}/{}: {}", name, s.label, e);
                }
            }
        }
    }

    #[test]
    fn unknown_name() {
        assert_eq!(zoo_build("nope").unwrap_err(), ZooError::UnknownName("nope".to_string()));
    }
}

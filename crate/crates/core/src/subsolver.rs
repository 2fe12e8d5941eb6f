//! The DCA convex subproblem `argmin { g(x) - <y, x> : x ∈ C }`.
//!
//! Three routes, tried in order:
//!
//! 1. a closed-form solver registered on the problem (exact, certificate 0);
//! 2. in one dimension, bracketing + bisection on the monotone subdifferential
//!    of `g - <y, .>` plus the normal cone of `C`;
//! 3. in several dimensions, projected gradient with backtracking, which
//!    assumes `g` is smooth and strongly convex.
//!
//! Flat argmin sets are resolved by a [`TieBreak`] policy.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::model::{ArgminSet, DcProblem, Interval, Point};

/// Largest bracket scale explored before declaring the subproblem unsolvable.
const EXPANSION_LIMIT: f64 = 1_152_921_504_606_846_976.0; // 2^60
const MAX_HALVINGS: usize = 60;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SubsolverError {
    #[error("x_k must be positive, got {0}")]
    NonPositive(f64),
    #[error("invalid subsolver configuration: {0}")]
    InvalidConfig(&'static str),
}

/// Which minimizer to return when the argmin set is a segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieBreak {
    LowestPoint,
    HighestPoint,
    /// Keep `x^k` when it is already a minimizer, otherwise the lowest point.
    StayIfCurrentOptimal,
    /// Reflect `x^k` through the midpoint of the segment (`lo + hi - x^k`).
    /// Reproduces the two-point oscillation of a flat polyhedral `g`.
    Alternate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubsolverConfig {
    /// Relative stationarity tolerance.
    pub tol: f64,
    pub max_inner_iters: usize,
    /// Initial bracket width, relative to `max(1, |x|)`.
    pub bracket_expansion: f64,
    pub tie_break: TieBreak,
}

impl Default for SubsolverConfig {
    fn default() -> Self {
        SubsolverConfig { tol: 1e-12, max_inner_iters: 1000, bracket_expansion: 1.0, tie_break: TieBreak::LowestPoint }
    }
}

impl SubsolverConfig {
    /// Defaults tuned to the dimension: `1e-12` in 1-D, `1e-9` otherwise.
    pub fn for_dim(dim: usize) -> Self {
        if dim == 1 {
            Self::default()
        } else {
            SubsolverConfig { tol: 1e-9, max_inner_iters: 100_000, ..Self::default() }
        }
    }

    pub fn with_tie_break(mut self, tie_break: TieBreak) -> Self {
        self.tie_break = tie_break;
        self
    }

    pub fn validate(&self) -> Result<(), SubsolverError> {
        if !(self.tol > 0.0) {
            return Err(SubsolverError::InvalidConfig("tol must be positive"));
        }
        if self.max_inner_iters == 0 {
            return Err(SubsolverError::InvalidConfig("max_inner_iters must be at least 1"));
        }
        if !(self.bracket_expansion > 0.0) {
            return Err(SubsolverError::InvalidConfig("bracket_expansion must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubproblemStatus {
    Solved,
    /// No minimizer exists (or none could be bracketed within `2^60`).
    NoMinimizer,
    MaxItersExceeded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubproblemResult {
    pub x_next: Point,
    pub status: SubproblemStatus,
    /// 0 for closed forms. In 1-D, the relative width of the bracket known to
    /// contain an exact minimizer; in n-D, the projected-gradient residual.
    pub certificate: f64,
    pub inner_iters: usize,
}

impl SubproblemResult {
    fn exact(x: Point) -> Self {
        SubproblemResult { x_next: x, status: SubproblemStatus::Solved, certificate: 0.0, inner_iters: 0 }
    }

    fn no_minimizer(x: Point, iters: usize) -> Self {
        SubproblemResult { x_next: x, status: SubproblemStatus::NoMinimizer, certificate: f64::INFINITY, inner_iters: iters }
    }
}

/// Solves the DCA subproblem for `y`. `x_current` seeds the bracket search and
/// feeds the tie-break policy.
pub fn solve_subproblem(problem: &DcProblem, y: &[f64], x_current: &[f64], cfg: &SubsolverConfig) -> SubproblemResult {
    if let Some(solver) = &problem.closed_form {
        return match solver(y) {
            ArgminSet::Point(x) => SubproblemResult::exact(x),
            ArgminSet::Segment { lo, hi } => {
                SubproblemResult::exact(vec![resolve_tie(lo, hi, x_current[0], cfg.tie_break)])
            }
            ArgminSet::Unattained => SubproblemResult::no_minimizer(x_current.to_vec(), 0),
        };
    }
    if problem.dim == 1 {
        solve_1d(problem, y[0], x_current[0], cfg)
    } else {
        projected_gradient(problem, y, x_current, cfg)
    }
}

/// Picks one point of the minimizing segment `[lo, hi]`.
pub fn resolve_tie(lo: f64, hi: f64, current: f64, tie: TieBreak) -> f64 {
    let lowest = if lo.is_finite() {
        lo
    } else if hi.is_finite() {
        hi
    } else {
        current
    };
    let inside = lo <= current && current <= hi;
    match tie {
        TieBreak::LowestPoint => lowest,
        TieBreak::HighestPoint => {
            if hi.is_finite() {
                hi
            } else if lo.is_finite() {
                lo
            } else {
                current
            }
        }
        TieBreak::StayIfCurrentOptimal => {
            if inside {
                current
            } else {
                lowest
            }
        }
        TieBreak::Alternate => {
            if inside && lo.is_finite() && hi.is_finite() {
                (lo + hi - current).max(lo).min(hi)
            } else {
                lowest
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    /// strictly left of the argmin: every subgradient of the objective is < 0
    Left,
    Inside,
    /// strictly right of the argmin
    Right,
}

struct Scalar<'a> {
    problem: &'a DcProblem,
    y: f64,
    feasible: Interval,
    evals: usize,
}

impl Scalar<'_> {
    /// Subdifferential bounds of `g - y x + χ_C` at `x`.
    fn slopes(&mut self, x: f64) -> (f64, f64) {
        self.evals += 1;
        let p = [x];
        let cone = self.problem.constraint.normal_cone_box(&p).map(|c| c[0]).unwrap_or((0.0, 0.0));
        match self.problem.g.subdiff(&p).bounds() {
            Some(b) => (b[0].0 + cone.0 - self.y, b[0].1 + cone.1 - self.y),
            // Empty at an end of the domain: the slope is infinite there.
            None => {
                let toward_lo = !self.feasible.lo.is_finite() || (x - self.feasible.lo) <= (self.feasible.hi - x);
                if toward_lo {
                    (f64::NEG_INFINITY, f64::NEG_INFINITY)
                } else {
                    (f64::INFINITY, f64::INFINITY)
                }
            }
        }
    }

    fn side(&mut self, x: f64) -> Side {
        let (a, b) = self.slopes(x);
        if b < 0.0 {
            Side::Left
        } else if a > 0.0 {
            Side::Right
        } else {
            Side::Inside
        }
    }
}

enum Bracket {
    /// A closed end of the feasible interval.
    End(f64),
    /// An interior point strictly on the wanted side.
    Point(f64),
}

fn clamp_into(iv: &Interval, x: f64) -> f64 {
    let x = if x.is_finite() { x } else { 0.0 };
    let mut s = x.max(iv.lo).min(iv.hi);
    if !iv.contains(s) {
        // landed on an open end: step inside
        if s <= iv.lo {
            s = if iv.hi.is_finite() { iv.lo + (iv.hi - iv.lo) / 2.0 } else { iv.lo + 1.0f64.max(libm::fabs(iv.lo)) };
        } else {
            s = if iv.lo.is_finite() { iv.hi - (iv.hi - iv.lo) / 2.0 } else { iv.hi - 1.0f64.max(libm::fabs(iv.hi)) };
        }
    }
    s
}

fn solve_1d(problem: &DcProblem, y: f64, x_current: f64, cfg: &SubsolverConfig) -> SubproblemResult {
    let domain = problem.g.domain.coord(0);
    let feasible = match problem.constraint.coord_interval(0, 1) {
        Some(c) => domain.intersect(&c),
        None => domain,
    };
    if feasible.is_empty() {
        return SubproblemResult::no_minimizer(vec![x_current], 0);
    }
    let mut s = Scalar { problem, y, feasible, evals: 0 };
    let start = clamp_into(&feasible, x_current);
    let start_side = s.side(start);

    let left = match find_bracket(&mut s, start, start_side, Side::Left, cfg) {
        Some(b) => b,
        None => return SubproblemResult::no_minimizer(vec![start], s.evals),
    };
    let right = match find_bracket(&mut s, start, start_side, Side::Right, cfg) {
        Some(b) => b,
        None => return SubproblemResult::no_minimizer(vec![start], s.evals),
    };

    let mut budget_hit = false;
    let mut widest = 0.0f64;

    // lower end of the argmin: first point that is not strictly Left
    let (lo_end, lo_exact) = match left {
        Bracket::End(e) if s.side(e) != Side::Left => (e, true),
        Bracket::End(l) | Bracket::Point(l) => {
            let (r, r_is_end) = match right {
                Bracket::End(e) => (e, true),
                Bracket::Point(r) => (r, false),
            };
            if r_is_end && s.side(r) == Side::Left {
                (r, true)
            } else {
                let (a, b, hit) = bisect(&mut s, l, r, Side::Left, cfg);
                budget_hit |= hit;
                widest = widest.max(b - a);
                (b, false)
            }
        }
    };
    // upper end: last point that is not strictly Right
    let (hi_end, hi_exact) = match right {
        Bracket::End(e) if s.side(e) != Side::Right => (e, true),
        Bracket::End(r) | Bracket::Point(r) => {
            let (l, l_is_end) = match left {
                Bracket::End(e) => (e, true),
                Bracket::Point(l) => (l, false),
            };
            if l_is_end && s.side(l) == Side::Right {
                (l, true)
            } else {
                let (a, b, hit) = bisect(&mut s, l, r, Side::Right, cfg);
                budget_hit |= hit;
                widest = widest.max(b - a);
                (a, false)
            }
        }
    };

    let scale = 1.0f64.max(libm::fabs(lo_end)).max(libm::fabs(hi_end));
    let x = if hi_end - lo_end > 2.0 * cfg.tol * scale {
        resolve_tie(lo_end, hi_end, x_current, cfg.tie_break)
    } else {
        widest = widest.max(libm::fabs(hi_end - lo_end));
        if lo_exact {
            lo_end
        } else if hi_exact {
            hi_end
        } else {
            lo_end + (hi_end - lo_end) / 2.0
        }
    };
    let certificate = widest / 1.0f64.max(libm::fabs(x));
    let status = if certificate <= cfg.tol {
        SubproblemStatus::Solved
    } else if budget_hit {
        SubproblemStatus::MaxItersExceeded
    } else {
        // bisection reached adjacent floats but the bracket is still wide in
        // relative terms, which only happens for pathological oracles
        SubproblemStatus::MaxItersExceeded
    };
    SubproblemResult { x_next: vec![x], status, certificate, inner_iters: s.evals }
}

/// Finds a point strictly on `want` side (or a closed end of the feasible
/// interval on that side). `None` means the objective never turns in that
/// direction within the expansion limit, i.e. no minimizer can be bracketed.
fn find_bracket(s: &mut Scalar<'_>, start: f64, start_side: Side, want: Side, cfg: &SubsolverConfig) -> Option<Bracket> {
    let iv = s.feasible;
    let going_left = want == Side::Left;
    let (end, end_open) = if going_left { (iv.lo, iv.lo_open) } else { (iv.hi, iv.hi_open) };
    if end.is_finite() && !end_open {
        return Some(Bracket::End(end));
    }
    if start_side == want {
        return Some(Bracket::Point(start));
    }
    let scale = 1.0f64.max(libm::fabs(start));
    if end.is_finite() {
        // open finite end: approach it geometrically
        let mut gap = start - end;
        for _ in 0..MAX_HALVINGS {
            gap /= 2.0;
            let x = end + gap;
            if x == end || !iv.contains(x) {
                break;
            }
            if s.side(x) == want {
                return Some(Bracket::Point(x));
            }
        }
        return None;
    }
    let mut w = cfg.bracket_expansion * scale;
    while w <= EXPANSION_LIMIT * scale {
        let x = if going_left { start - w } else { start + w };
        if s.side(x) == want {
            return Some(Bracket::Point(x));
        }
        w *= 2.0;
    }
    None
}

/// Bisection for the boundary of the region `{side == pred}`. For
/// `pred == Left` the region is on the left (`a` stays in it); for
/// `pred == Right` it is on the right (`b` stays in it). Returns the final
/// bracket and whether the iteration budget ran out.
fn bisect(s: &mut Scalar<'_>, mut a: f64, mut b: f64, pred: Side, cfg: &SubsolverConfig) -> (f64, f64, bool) {
    let mut iters = 0;
    loop {
        let mid = a + (b - a) / 2.0;
        if mid <= a || mid >= b || (b - a) <= 1e-3 * cfg.tol * 1.0f64.max(libm::fabs(mid)) {
            return (a, b, false);
        }
        if iters >= cfg.max_inner_iters {
            return (a, b, true);
        }
        iters += 1;
        let in_region = s.side(mid) == pred;
        let go_right = if pred == Side::Left { in_region } else { !in_region };
        if go_right {
            a = mid;
        } else {
            b = mid;
        }
    }
}

fn projected_gradient(problem: &DcProblem, y: &[f64], x_current: &[f64], cfg: &SubsolverConfig) -> SubproblemResult {
    let c = &problem.constraint;
    let start: Point = x_current.iter().map(|v| if v.is_finite() { *v } else { 0.0 }).collect();
    let mut x = c.project(&start);
    let phi = |p: &[f64]| problem.g.value(p) - crate::dot(y, p);
    let grad = |p: &[f64]| -> Option<Point> {
        let s = problem.g.subdiff(p);
        let g = s.select(&crate::model::SelectionRule::Default, 0).ok()?;
        Some(g.iter().zip(y).map(|(gi, yi)| gi - yi).collect())
    };
    let mut step = problem.g.grad_lipschitz.filter(|l| *l > 0.0).map(|l| 1.0 / l).unwrap_or(1.0);
    let mut fx = phi(&x);
    let mut iters = 0;
    loop {
        let gx = match grad(&x) {
            Some(g) => g,
            None => return SubproblemResult::no_minimizer(x, iters),
        };
        let full: Point = x.iter().zip(&gx).map(|(xi, gi)| xi - gi).collect();
        let pg = c.project(&full);
        let residual = crate::dist(&x, &pg);
        if residual <= cfg.tol * 1.0f64.max(crate::norm(&x)) {
            return SubproblemResult { x_next: x, status: SubproblemStatus::Solved, certificate: residual, inner_iters: iters };
        }
        if iters >= cfg.max_inner_iters {
            return SubproblemResult { x_next: x, status: SubproblemStatus::MaxItersExceeded, certificate: residual, inner_iters: iters };
        }
        iters += 1;
        // backtracking on the quadratic upper model
        let mut t = step * 2.0;
        let (x_new, f_new) = loop {
            let trial: Point = x.iter().zip(&gx).map(|(xi, gi)| xi - t * gi).collect();
            let cand = c.project(&trial);
            let d: Vec<f64> = cand.iter().zip(&x).map(|(p, q)| p - q).collect();
            let f_c = phi(&cand);
            let model = fx + crate::dot(&gx, &d) + crate::dot(&d, &d) / (2.0 * t);
            if f_c <= model + 1e-15 * (1.0 + libm::fabs(fx)) || t < 1e-300 {
                break (cand, f_c);
            }
            t /= 2.0;
        };
        step = t;
        if !f_new.is_finite() || crate::norm(&x_new) > EXPANSION_LIMIT {
            return SubproblemResult::no_minimizer(x_new, iters);
        }
        x = x_new;
        fx = f_new;
    }
}

/// `dist(y, ∂g(x) + N_C(x))`: zero iff `x` solves the subproblem for `y`.
/// `None` when the normal cone at `x` is not box-representable or `x ∉ C`.
pub fn stationarity_residual(problem: &DcProblem, x: &[f64], y: &[f64]) -> Option<f64> {
    let cone = problem.constraint.normal_cone_box(x)?;
    Some(problem.g.subdiff(x).plus_box(&cone).distance(y))
}

/// Closed-form DCA update for `min x²/2 + √x` with `g = x²/2 - √x`,
/// `h = -2√x` on `x ≥ 0`. The minimizer is `t²` where `t` is the real root of
/// the depressed cubic `t³ + p t - 1/2 = 0`, `p = 1/√x_k`, given by Cardano's
/// formula `t = u + v` with `u = ∛(1/4 + √Δ)`, `v = ∛(1/4 - √Δ)`,
/// `Δ = 1/16 + 1/(3√x_k)³`.
///
/// `u + v` cancels catastrophically once `x_k` is small, so it is evaluated
/// through the identity `u + v = (u³ + v³) / (u² - uv + v²)` with
/// `u³ + v³ = 1/2` and `uv = -p/3`.
pub fn cardano_update(x_k: f64) -> Result<f64, SubsolverError> {
    if !(x_k > 0.0) || !x_k.is_finite() {
        return Err(SubsolverError::NonPositive(x_k));
    }
    let root = libm::sqrt(x_k);
    let delta = 1.0 / 16.0 + 1.0 / libm::pow(3.0 * root, 3.0);
    let t = cardano_t(1.0 / root, delta);
    Ok(t * t)
}

fn cardano_t(p: f64, delta: f64) -> f64 {
    let sq = libm::sqrt(delta);
    let u = libm::cbrt(0.25 + sq);
    let v = libm::cbrt(0.25 - sq);
    0.5 / (u * u + v * v + p / 3.0)
}

/// `argmin { x²/2 - √x - y x : x ≥ 0 }` for any slope `y`. Uses the Cardano
/// form for `y < 0` and bisection on `t³ - y t - 1/2 = 0` otherwise.
pub fn cardano_from_slope(y: f64) -> f64 {
    let p = -y;
    if p > 0.0 {
        let delta = 1.0 / 16.0 + libm::pow(p / 3.0, 3.0);
        let t = cardano_t(p, delta);
        return t * t;
    }
    let h = |t: f64| t * t * t + p * t - 0.5;
    let (mut lo, mut hi) = (0.0, 1.0 + libm::fabs(p));
    loop {
        let mid = lo + (hi - lo) / 2.0;
        if mid <= lo || mid >= hi {
            break;
        }
        if h(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi * hi
}

/// Real root of `x + x³ = y` by safeguarded Newton iteration.
pub fn solve_x_plus_cube(y: f64) -> f64 {
    if y == 0.0 || !y.is_finite() {
        return y;
    }
    // bracket: the root has the sign of y and |x| ≤ min(|y|, |y|^(1/3))
    let m = libm::fabs(y);
    let bound = m.min(libm::cbrt(m));
    let (mut lo, mut hi) = if y > 0.0 { (0.0, bound) } else { (-bound, 0.0) };
    let mut x = y / (1.0 + m * m).min(1.0 + m);
    x = x.max(lo).min(hi);
    for _ in 0..200 {
        let fx = x + x * x * x - y;
        if fx == 0.0 {
            return x;
        }
        if fx > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let newton = x - fx / (1.0 + 3.0 * x * x);
        let next = if newton > lo && newton < hi { newton } else { lo + (hi - lo) / 2.0 };
        if next == x || hi - lo <= f64::EPSILON * libm::fabs(x) {
            return next;
        }
        x = next;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ConstraintSet, ConvexOracle, SubdiffSet};

    fn quad(center: f64) -> DcProblem {
        let g = ConvexOracle::new(move |x| 0.5 * (x[0] - center) * (x[0] - center), move |x| SubdiffSet::scalar(x[0] - center))
            .with_strong_convexity(1.0);
        DcProblem::new("q", 1, g, ConvexOracle::zero(1))
    }

    #[test]
    fn bisection_finds_smooth_minimizer() {
        let r = solve_subproblem(&quad(3.0), &[0.0], &[0.0], &SubsolverConfig::default());
        assert_eq!(r.status, SubproblemStatus::Solved);
        assert!((r.x_next[0] - 3.0).abs() < 1e-12);
        let r = solve_subproblem(&quad(-1e6), &[2.0], &[5.0], &SubsolverConfig::default());
        assert!((r.x_next[0] - (-1e6 + 2.0)).abs() < 1e-5);
    }

    #[test]
    fn box_constraint_clips_minimizer_exactly() {
        let p = quad(3.0).with_constraint(ConstraintSet::Box(vec![(-1.0, 2.0)]));
        let r = solve_subproblem(&p, &[0.0], &[0.0], &SubsolverConfig::default());
        assert_eq!(r.x_next, vec![2.0]);
        assert_eq!(r.status, SubproblemStatus::Solved);
    }

    #[test]
    fn exp_has_no_minimizer() {
        let g = ConvexOracle::new(|x| libm::exp(x[0]), |x| SubdiffSet::scalar(libm::exp(x[0])));
        let p = DcProblem::new("exp", 1, g, ConvexOracle::zero(1));
        let r = solve_subproblem(&p, &[0.0], &[0.0], &SubsolverConfig::default());
        assert_eq!(r.status, SubproblemStatus::NoMinimizer);
    }

    #[test]
    fn tie_break_policies() {
        assert_eq!(resolve_tie(0.0, 1.0, 0.1, TieBreak::LowestPoint), 0.0);
        assert_eq!(resolve_tie(0.0, 1.0, 0.1, TieBreak::HighestPoint), 1.0);
        assert_eq!(resolve_tie(0.0, 1.0, 0.1, TieBreak::StayIfCurrentOptimal), 0.1);
        assert_eq!(resolve_tie(0.0, 1.0, 2.0, TieBreak::StayIfCurrentOptimal), 0.0);
        assert_eq!(resolve_tie(0.0, 1.0, 0.25, TieBreak::Alternate), 0.75);
        assert_eq!(resolve_tie(f64::NEG_INFINITY, 1.0, 0.25, TieBreak::LowestPoint), 1.0);
    }

    #[test]
    fn generic_flat_argmin_uses_tie_break() {
        let g = crate::functions::MaxAffine::new(vec![(-1.0, 0.0), (0.0, 0.0), (1.0, -1.0)]).to_oracle();
        let p = DcProblem::new("flat", 1, g, ConvexOracle::zero(1));
        let lowest = solve_subproblem(&p, &[0.0], &[5.0], &SubsolverConfig::default());
        assert!(lowest.x_next[0].abs() < 1e-12, "{:?}", lowest);
        let cfg = SubsolverConfig::default().with_tie_break(TieBreak::HighestPoint);
        let highest = solve_subproblem(&p, &[0.0], &[5.0], &cfg);
        assert!((highest.x_next[0] - 1.0).abs() < 1e-12, "{:?}", highest);
    }

    #[test]
    fn cardano_rejects_nonpositive() {
        assert_eq!(cardano_update(0.0), Err(SubsolverError::NonPositive(0.0)));
        assert!(cardano_update(-1.0).is_err());
    }

    #[test]
    fn cube_solver_matches_definition() {
        for &y in &[0.5, -0.5, 1e-9, 3.0, -1e6, 1e-300] {
            let x = solve_x_plus_cube(y);
            assert!((x + x * x * x - y).abs() <= 4.0 * f64::EPSILON * y.abs().max(1e-300), "y={} x={}", y, x);
        }
    }

    #[test]
    fn projected_gradient_two_dimensional() {
        // g = ||x||² with y = (2, -4) gives x = (1, -2); box clips x_2 at -1
        let g = ConvexOracle::new(|x| x[0] * x[0] + x[1] * x[1], |x| SubdiffSet::Singleton(vec![2.0 * x[0], 2.0 * x[1]]))
            .with_strong_convexity(2.0)
            .with_grad_lipschitz(2.0);
        let p = DcProblem::new("2d", 2, g, ConvexOracle::zero(2));
        let cfg = SubsolverConfig::for_dim(2);
        let r = solve_subproblem(&p, &[2.0, -4.0], &[0.0, 0.0], &cfg);
        assert_eq!(r.status, SubproblemStatus::Solved);
        assert!(crate::dist(&r.x_next, &[1.0, -2.0]) < 1e-8);
        let p = p.with_constraint(ConstraintSet::Box(vec![(-5.0, 5.0), (-1.0, 1.0)]));
        let r = solve_subproblem(&p, &[2.0, -4.0], &[0.0, 0.0], &cfg);
        assert!(crate::dist(&r.x_next, &[1.0, -1.0]) < 1e-8);
    }
}

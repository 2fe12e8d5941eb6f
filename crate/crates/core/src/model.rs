//! Data model: convex oracles, subdifferential sets, constraint sets and DC
//! problems.
//!
//! Values are extended reals stored as `f64`; `+inf` encodes "outside the
//! effective domain". Subdifferentials are exact and limited to singletons or
//! per-coordinate intervals, which covers every problem in [`crate::zoo`].

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// A point of `R^n`.
pub type Point = Vec<f64>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    /// `∂h(x)` is empty, so DCA cannot produce `y^k`.
    #[error("subdifferential is empty at the current point")]
    EmptySubdifferential,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// A real interval with optionally open ends. Infinite ends are always open.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Interval {
    pub const REAL: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
        lo_open: true,
        hi_open: true,
    };

    pub fn new(lo: f64, hi: f64, lo_open: bool, hi_open: bool) -> Self {
        Interval {
            lo,
            hi,
            lo_open: lo_open || lo.is_infinite(),
            hi_open: hi_open || hi.is_infinite(),
        }
    }

    pub fn closed(lo: f64, hi: f64) -> Self {
        Self::new(lo, hi, false, false)
    }

    /// `[lo, +inf)`
    pub fn at_least(lo: f64) -> Self {
        Self::new(lo, f64::INFINITY, false, true)
    }

    /// `(lo, +inf)`
    pub fn greater_than(lo: f64) -> Self {
        Self::new(lo, f64::INFINITY, true, true)
    }

    /// `(-inf, hi]`
    pub fn at_most(hi: f64) -> Self {
        Self::new(f64::NEG_INFINITY, hi, true, false)
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_open { x > self.lo } else { x >= self.lo };
        let below = if self.hi_open { x < self.hi } else { x <= self.hi };
        above && below
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && (self.lo_open || self.hi_open))
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    /// Set inclusion `self ⊆ other`.
    pub fn subset_of(&self, other: &Interval) -> bool {
        if self.is_empty() {
            return true;
        }
        let lower_ok = self.lo > other.lo || (self.lo == other.lo && (self.lo_open || !other.lo_open));
        let upper_ok = self.hi < other.hi || (self.hi == other.hi && (self.hi_open || !other.hi_open));
        lower_ok && upper_ok
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        let (lo, lo_open) = if self.lo > other.lo {
            (self.lo, self.lo_open)
        } else if other.lo > self.lo {
            (other.lo, other.lo_open)
        } else {
            (self.lo, self.lo_open || other.lo_open)
        };
        let (hi, hi_open) = if self.hi < other.hi {
            (self.hi, self.hi_open)
        } else if other.hi < self.hi {
            (other.hi, other.hi_open)
        } else {
            (self.hi, self.hi_open || other.hi_open)
        };
        Interval { lo, hi, lo_open, hi_open }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_open { '(' } else { '[' };
        let r = if self.hi_open { ')' } else { ']' };
        write!(f, "{}{}, {}{}", l, self.lo, self.hi, r)
    }
}

/// Declared description of an effective domain (`dom g`, `dom ∂g`, ...).
#[derive(Debug, Clone, PartialEq)]
pub enum Region {
    All,
    Box(Vec<Interval>),
}

impl Region {
    /// One-dimensional region.
    pub fn interval(iv: Interval) -> Self {
        Region::Box(vec![iv])
    }

    pub fn coord(&self, i: usize) -> Interval {
        match self {
            Region::All => Interval::REAL,
            Region::Box(ivs) => ivs.get(i).copied().unwrap_or(Interval::REAL),
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        match self {
            Region::All => true,
            Region::Box(ivs) => x.iter().zip(ivs).all(|(xi, iv)| iv.contains(*xi)),
        }
    }

    /// Set inclusion on the declared descriptors, coordinate by coordinate.
    pub fn subset_of(&self, other: &Region, dim: usize) -> bool {
        (0..dim).all(|i| self.coord(i).subset_of(&other.coord(i)))
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::All => write!(f, "R^n"),
            Region::Box(ivs) => {
                for (i, iv) in ivs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " x ")?;
                    }
                    write!(f, "{}", iv)?;
                }
                Ok(())
            }
        }
    }
}

/// How DCA picks `y^k ∈ ∂h(x^k)`.
#[derive(Debug, Clone, PartialEq)]
pub enum SelectionRule {
    /// Minimum-norm element.
    Default,
    /// Lower endpoint on even iterations, upper endpoint on odd ones. The
    /// iteration counter is passed in explicitly, the rule itself is stateless.
    AdversarialAlternate,
    /// The given vector when it belongs to the set, otherwise the nearest
    /// element of the set.
    FixedValue(Point),
    /// An element `y` with `-y ∈ ∂(-h)(x)`. For the interval sets used here
    /// those are the endpoints; the lower endpoint is preferred.
    NegativeSide,
}

/// Exact subdifferential of a convex function at a point.
#[derive(Debug, Clone, PartialEq)]
pub enum SubdiffSet {
    Empty,
    Singleton(Point),
    /// Product of closed intervals `[lo_i, hi_i]`; ends may be infinite.
    Interval(Vec<(f64, f64)>),
}

impl SubdiffSet {
    pub fn scalar(v: f64) -> Self {
        SubdiffSet::Singleton(vec![v])
    }

    pub fn interval_1d(lo: f64, hi: f64) -> Self {
        SubdiffSet::Interval(vec![(lo, hi)])
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, SubdiffSet::Empty)
    }

    /// Coordinate bounds `(lo_i, hi_i)`; `None` for the empty set.
    pub fn bounds(&self) -> Option<Vec<(f64, f64)>> {
        match self {
            SubdiffSet::Empty => None,
            SubdiffSet::Singleton(v) => Some(v.iter().map(|c| (*c, *c)).collect()),
            SubdiffSet::Interval(b) => Some(b.clone()),
        }
    }

    pub fn contains(&self, v: &[f64]) -> bool {
        match self.bounds() {
            None => false,
            Some(b) => b.len() == v.len() && b.iter().zip(v).all(|((lo, hi), c)| *lo <= *c && *c <= *hi),
        }
    }

    /// Euclidean distance from `v` to the set; `+inf` for the empty set.
    pub fn distance(&self, v: &[f64]) -> f64 {
        match self.bounds() {
            None => f64::INFINITY,
            Some(b) => {
                let s: f64 = b
                    .iter()
                    .zip(v)
                    .map(|((lo, hi), c)| {
                        let d = if c < lo {
                            lo - c
                        } else if c > hi {
                            c - hi
                        } else {
                            0.0
                        };
                        d * d
                    })
                    .sum();
                libm::sqrt(s)
            }
        }
    }

    /// Minkowski sum with a box (typically a normal cone).
    pub fn plus_box(&self, cone: &[(f64, f64)]) -> SubdiffSet {
        match self.bounds() {
            None => SubdiffSet::Empty,
            Some(b) => {
                let sum: Vec<(f64, f64)> = b.iter().zip(cone).map(|((lo, hi), (cl, ch))| (lo + cl, hi + ch)).collect();
                if sum.iter().all(|(lo, hi)| lo == hi) {
                    SubdiffSet::Singleton(sum.into_iter().map(|(lo, _)| lo).collect())
                } else {
                    SubdiffSet::Interval(sum)
                }
            }
        }
    }

    /// Picks one element according to `rule`; `k` is the DCA iteration index.
    pub fn select(&self, rule: &SelectionRule, k: usize) -> Result<Point, ModelError> {
        let b = self.bounds().ok_or(ModelError::EmptySubdifferential)?;
        let min_norm = |(lo, hi): &(f64, f64)| 0.0f64.max(*lo).min(*hi);
        let lower = |(lo, hi): &(f64, f64)| if lo.is_finite() { *lo } else if hi.is_finite() { *hi } else { 0.0 };
        let upper = |(lo, hi): &(f64, f64)| if hi.is_finite() { *hi } else if lo.is_finite() { *lo } else { 0.0 };
        let y = match rule {
            SelectionRule::Default => b.iter().map(min_norm).collect(),
            SelectionRule::AdversarialAlternate => {
                if k.is_multiple_of(2) {
                    b.iter().map(lower).collect()
                } else {
                    b.iter().map(upper).collect()
                }
            }
            SelectionRule::FixedValue(v) => {
                if v.len() != b.len() {
                    return Err(ModelError::DimensionMismatch { expected: b.len(), got: v.len() });
                }
                b.iter().zip(v).map(|((lo, hi), c)| c.max(*lo).min(*hi)).collect()
            }
            SelectionRule::NegativeSide => b.iter().map(lower).collect(),
        };
        Ok(y)
    }
}

pub type EvalFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
pub type SubdiffFn = Arc<dyn Fn(&[f64]) -> SubdiffSet + Send + Sync>;

/// Value and subdifferential oracle for one convex function, with declared
/// structural metadata.
#[derive(Clone)]
pub struct ConvexOracle {
    eval: EvalFn,
    subdiff: SubdiffFn,
    /// Strong convexity modulus `ρ ≥ 0`.
    pub strong_convexity: f64,
    /// Lipschitz constant of the gradient on the region of interest, if known.
    pub grad_lipschitz: Option<f64>,
    /// Declared `dom`.
    pub domain: Region,
    /// Declared `dom ∂`.
    pub subdiff_domain: Region,
}

impl fmt::Debug for ConvexOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConvexOracle")
            .field("strong_convexity", &self.strong_convexity)
            .field("grad_lipschitz", &self.grad_lipschitz)
            .field("domain", &self.domain)
            .field("subdiff_domain", &self.subdiff_domain)
            .finish_non_exhaustive()
    }
}

impl ConvexOracle {
    pub fn new<E, S>(eval: E, subdiff: S) -> Self
    where
        E: Fn(&[f64]) -> f64 + Send + Sync + 'static,
        S: Fn(&[f64]) -> SubdiffSet + Send + Sync + 'static,
    {
        ConvexOracle {
            eval: Arc::new(eval),
            subdiff: Arc::new(subdiff),
            strong_convexity: 0.0,
            grad_lipschitz: None,
            domain: Region::All,
            subdiff_domain: Region::All,
        }
    }

    /// The zero function.
    pub fn zero(dim: usize) -> Self {
        ConvexOracle::new(|_| 0.0, move |_| SubdiffSet::Singleton(vec![0.0; dim])).with_grad_lipschitz(0.0)
    }

    pub fn with_strong_convexity(mut self, rho: f64) -> Self {
        assert!(rho >= 0.0, "strong convexity modulus must be nonnegative");
        self.strong_convexity = rho;
        self
    }

    pub fn with_grad_lipschitz(mut self, l: f64) -> Self {
        self.grad_lipschitz = Some(l);
        self
    }

    /// Sets both `dom` and `dom ∂`; use [`Self::with_subdiff_domain`] afterwards
    /// when they differ.
    pub fn with_domain(mut self, domain: Region) -> Self {
        self.subdiff_domain = domain.clone();
        self.domain = domain;
        self
    }

    pub fn with_subdiff_domain(mut self, region: Region) -> Self {
        self.subdiff_domain = region;
        self
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        (self.eval)(x)
    }

    pub fn subdiff(&self, x: &[f64]) -> SubdiffSet {
        (self.subdiff)(x)
    }
}

/// Picks `y ∈ ∂oracle(x)` by `rule`.
pub fn select_subgradient(oracle: &ConvexOracle, x: &[f64], rule: &SelectionRule, k: usize) -> Result<Point, ModelError> {
    oracle.subdiff(x).select(rule, k)
}

/// Closed convex feasible set `C`.
#[derive(Debug, Clone, PartialEq)]
pub enum ConstraintSet {
    AllSpace,
    /// Per-coordinate bounds; `±inf` allowed.
    Box(Vec<(f64, f64)>),
    /// `{ x : <normal, x> ≤ offset }`, with a nonzero normal.
    HalfSpace { normal: Point, offset: f64 },
}

impl ConstraintSet {
    pub fn contains(&self, x: &[f64]) -> bool {
        match self {
            ConstraintSet::AllSpace => true,
            ConstraintSet::Box(b) => x.iter().zip(b).all(|(c, (lo, hi))| *lo <= *c && *c <= *hi),
            ConstraintSet::HalfSpace { normal, offset } => crate::dot(normal, x) <= *offset,
        }
    }

    pub fn project(&self, x: &[f64]) -> Point {
        match self {
            ConstraintSet::AllSpace => x.to_vec(),
            ConstraintSet::Box(b) => x.iter().zip(b).map(|(c, (lo, hi))| c.max(*lo).min(*hi)).collect(),
            ConstraintSet::HalfSpace { normal, offset } => {
                let excess = crate::dot(normal, x) - offset;
                if excess <= 0.0 {
                    return x.to_vec();
                }
                let nn = crate::dot(normal, normal);
                let p: Point = x.iter().zip(normal).map(|(c, a)| c - excess / nn * a).collect();
                // Rounding can leave the projection a hair outside.
                if crate::dot(normal, &p) > *offset {
                    let extra = (crate::dot(normal, &p) - offset) / nn;
                    p.iter().zip(normal).map(|(c, a)| c - 2.0 * extra * a).collect()
                } else {
                    p
                }
            }
        }
    }

    /// The normal cone `N_C(x)` as a box, for `x ∈ C`. `None` when `x ∉ C` or
    /// the cone is not a product of intervals (a slanted half-space boundary).
    pub fn normal_cone_box(&self, x: &[f64]) -> Option<Vec<(f64, f64)>> {
        if !self.contains(x) {
            return None;
        }
        match self {
            ConstraintSet::AllSpace => Some(vec![(0.0, 0.0); x.len()]),
            ConstraintSet::Box(b) => Some(
                x.iter()
                    .zip(b)
                    .map(|(c, (lo, hi))| {
                        let cl = if *c == *lo { f64::NEG_INFINITY } else { 0.0 };
                        let ch = if *c == *hi { f64::INFINITY } else { 0.0 };
                        (cl, ch)
                    })
                    .collect(),
            ),
            ConstraintSet::HalfSpace { normal, offset } => {
                if crate::dot(normal, x) < *offset {
                    return Some(vec![(0.0, 0.0); x.len()]);
                }
                let nonzero: Vec<usize> = (0..normal.len()).filter(|&i| normal[i] != 0.0).collect();
                if nonzero.len() != 1 {
                    return None;
                }
                let i = nonzero[0];
                let mut cone = vec![(0.0, 0.0); x.len()];
                cone[i] = if normal[i] > 0.0 { (0.0, f64::INFINITY) } else { (f64::NEG_INFINITY, 0.0) };
                Some(cone)
            }
        }
    }

    /// Membership `v ∈ N_C(x)`.
    pub fn in_normal_cone(&self, x: &[f64], v: &[f64]) -> bool {
        if !self.contains(x) {
            return false;
        }
        match self {
            ConstraintSet::HalfSpace { normal, offset } => {
                if crate::dot(normal, x) < *offset {
                    return v.iter().all(|c| *c == 0.0);
                }
                // v = t * normal with t ≥ 0
                let nn = crate::dot(normal, normal);
                let t = crate::dot(normal, v) / nn;
                t >= 0.0 && v.iter().zip(normal).all(|(c, a)| libm::fabs(c - t * a) <= 1e-12 * (1.0 + libm::fabs(*c)))
            }
            _ => match self.normal_cone_box(x) {
                Some(cone) => v.iter().zip(cone).all(|(c, (lo, hi))| lo <= *c && *c <= hi),
                None => false,
            },
        }
    }

    /// The set restricted to coordinate `i` as an interval, when it is a
    /// product set (always true in one dimension).
    pub fn coord_interval(&self, i: usize, dim: usize) -> Option<Interval> {
        match self {
            ConstraintSet::AllSpace => Some(Interval::REAL),
            ConstraintSet::Box(b) => b.get(i).map(|(lo, hi)| Interval::closed(*lo, *hi)),
            ConstraintSet::HalfSpace { normal, offset } => {
                if dim != 1 {
                    return None;
                }
                let a = normal[0];
                if a > 0.0 {
                    Some(Interval::at_most(offset / a))
                } else {
                    Some(Interval::at_least(offset / a))
                }
            }
        }
    }

    pub fn is_bounded_box(&self) -> bool {
        match self {
            ConstraintSet::Box(b) => b.iter().all(|(lo, hi)| lo.is_finite() && hi.is_finite()),
            _ => false,
        }
    }
}

/// The set of minimizers returned by a closed-form subproblem solver.
#[derive(Debug, Clone, PartialEq)]
pub enum ArgminSet {
    Point(Point),
    /// A flat one-dimensional minimizing segment `[lo, hi]`.
    Segment { lo: f64, hi: f64 },
    /// The subproblem has no minimizer.
    Unattained,
}

/// Exact solver for `argmin { g(x) - <y, x> : x ∈ C }`.
pub type ClosedForm = Arc<dyn Fn(&[f64]) -> ArgminSet + Send + Sync>;

/// A DC program `min { g(x) - h(x) : x ∈ C }`.
#[derive(Clone)]
pub struct DcProblem {
    pub name: String,
    pub dim: usize,
    pub g: ConvexOracle,
    pub h: ConvexOracle,
    pub constraint: ConstraintSet,
    pub known_optimum: Option<(Point, f64)>,
    pub known_theta: Option<f64>,
    pub closed_form: Option<ClosedForm>,
}

impl fmt::Debug for DcProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DcProblem")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("g", &self.g)
            .field("h", &self.h)
            .field("constraint", &self.constraint)
            .field("known_optimum", &self.known_optimum)
            .field("known_theta", &self.known_theta)
            .field("closed_form", &self.closed_form.is_some())
            .finish()
    }
}

impl DcProblem {
    pub fn new(name: impl Into<String>, dim: usize, g: ConvexOracle, h: ConvexOracle) -> Self {
        DcProblem {
            name: name.into(),
            dim,
            g,
            h,
            constraint: ConstraintSet::AllSpace,
            known_optimum: None,
            known_theta: None,
            closed_form: None,
        }
    }

    pub fn with_constraint(mut self, c: ConstraintSet) -> Self {
        self.constraint = c;
        self
    }

    pub fn with_known_optimum(mut self, x: Point, f: f64) -> Self {
        self.known_optimum = Some((x, f));
        self
    }

    pub fn with_known_theta(mut self, theta: f64) -> Self {
        self.known_theta = Some(theta);
        self
    }

    pub fn with_closed_form<F>(mut self, solver: F) -> Self
    where
        F: Fn(&[f64]) -> ArgminSet + Send + Sync + 'static,
    {
        self.closed_form = Some(Arc::new(solver));
        self
    }

    /// `ρ_g + ρ_h`.
    pub fn rho(&self) -> f64 {
        self.g.strong_convexity + self.h.strong_convexity
    }

    pub fn is_strongly_convex(&self) -> bool {
        self.rho() > 0.0
    }

    pub fn eval_f(&self, x: &[f64]) -> f64 {
        eval_f(self, x)
    }
}

/// `f(x) = g(x) - h(x)`, `+inf` outside `C`. An infinite `g` dominates, so
/// `inf - inf = inf`.
pub fn eval_f(problem: &DcProblem, x: &[f64]) -> f64 {
    if !problem.constraint.contains(x) {
        return f64::INFINITY;
    }
    let g = problem.g.value(x);
    if g == f64::INFINITY || g.is_nan() {
        return f64::INFINITY;
    }
    let h = problem.h.value(x);
    if h == f64::INFINITY {
        return f64::NEG_INFINITY;
    }
    g - h
}

/// Declared-structure check of the well-definedness assumptions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AssumptionReport {
    /// `dom ∂g ⊆ dom ∂h` on the declared descriptors.
    pub subdiff_inclusion: bool,
    /// Heuristic: `ρ_g > 0` or `C` is a bounded box.
    pub subproblems_solvable: bool,
}

pub fn check_assumption_b(problem: &DcProblem) -> AssumptionReport {
    AssumptionReport {
        subdiff_inclusion: problem.g.subdiff_domain.subset_of(&problem.h.subdiff_domain, problem.dim),
        subproblems_solvable: problem.g.strong_convexity > 0.0 || problem.constraint.is_bounded_box(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_inclusion_respects_open_ends() {
        let closed = Interval::at_least(0.0);
        let open = Interval::greater_than(0.0);
        assert!(open.subset_of(&closed));
        assert!(!closed.subset_of(&open));
        assert!(Interval::closed(1.0, 2.0).subset_of(&open));
        assert!(Interval::REAL.subset_of(&Interval::REAL));
    }

    #[test]
    fn select_default_is_min_norm() {
        let s = SubdiffSet::interval_1d(-1.0, 0.0);
        assert_eq!(s.select(&SelectionRule::Default, 0).unwrap(), vec![0.0]);
        let s = SubdiffSet::interval_1d(0.5, 2.0);
        assert_eq!(s.select(&SelectionRule::Default, 0).unwrap(), vec![0.5]);
    }

    #[test]
    fn select_fixed_value_projects_when_outside() {
        let s = SubdiffSet::interval_1d(-1.0, 0.0);
        assert_eq!(s.select(&SelectionRule::FixedValue(vec![-0.5]), 0).unwrap(), vec![-0.5]);
        let s = SubdiffSet::scalar(-1.0);
        assert_eq!(s.select(&SelectionRule::FixedValue(vec![-0.5]), 3).unwrap(), vec![-1.0]);
    }

    #[test]
    fn select_alternate_and_negative_side() {
        let s = SubdiffSet::interval_1d(-1.0, 0.0);
        assert_eq!(s.select(&SelectionRule::AdversarialAlternate, 0).unwrap(), vec![-1.0]);
        assert_eq!(s.select(&SelectionRule::AdversarialAlternate, 1).unwrap(), vec![0.0]);
        assert_eq!(s.select(&SelectionRule::NegativeSide, 1).unwrap(), vec![-1.0]);
        let s = SubdiffSet::interval_1d(f64::NEG_INFINITY, 1.0);
        assert_eq!(s.select(&SelectionRule::NegativeSide, 0).unwrap(), vec![1.0]);
    }

    #[test]
    fn empty_set_breaks_selection() {
        assert_eq!(SubdiffSet::Empty.select(&SelectionRule::Default, 0), Err(ModelError::EmptySubdifferential));
        assert_eq!(SubdiffSet::Empty.distance(&[0.0]), f64::INFINITY);
    }

    #[test]
    fn box_projection_and_normal_cone() {
        let c = ConstraintSet::Box(vec![(0.0, 1.0), (f64::NEG_INFINITY, 2.0)]);
        assert_eq!(c.project(&[-3.0, 5.0]), vec![0.0, 2.0]);
        assert!(c.in_normal_cone(&[0.0, 2.0], &[-4.0, 1.0]));
        assert!(!c.in_normal_cone(&[0.0, 2.0], &[4.0, 1.0]));
        assert!(!c.in_normal_cone(&[0.5, 1.0], &[0.0, 1.0]));
        assert!(ConstraintSet::AllSpace.in_normal_cone(&[3.0], &[0.0]));
        assert!(!ConstraintSet::AllSpace.in_normal_cone(&[3.0], &[1e-300]));
    }

    #[test]
    fn halfspace_projection_lands_inside() {
        let c = ConstraintSet::HalfSpace { normal: vec![1.0, 1.0], offset: 1.0 };
        let p = c.project(&[3.0, 0.5]);
        assert!(c.contains(&p));
        assert!(crate::dist(&p, &[1.75, -0.75]) < 1e-12);
        assert!(c.normal_cone_box(&p).is_none());
        assert!(c.in_normal_cone(&p, &[2.0, 2.0]));
    }

    #[test]
    fn eval_f_extended_real_conventions() {
        let inf_g = ConvexOracle::new(|_| f64::INFINITY, |_| SubdiffSet::Empty);
        let inf_h = ConvexOracle::new(|_| f64::INFINITY, |_| SubdiffSet::Empty);
        let p = DcProblem::new("deg", 1, inf_g, inf_h.clone());
        assert_eq!(p.eval_f(&[0.0]), f64::INFINITY);
        let p = DcProblem::new("deg2", 1, ConvexOracle::zero(1), inf_h);
        assert_eq!(p.eval_f(&[0.0]), f64::NEG_INFINITY);
        let p = DcProblem::new("boxed", 1, ConvexOracle::zero(1), ConvexOracle::zero(1))
            .with_constraint(ConstraintSet::Box(vec![(0.0, 1.0)]));
        assert_eq!(p.eval_f(&[2.0]), f64::INFINITY);
        assert_eq!(p.eval_f(&[0.5]), 0.0);
    }
}

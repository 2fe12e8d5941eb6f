//! Reusable one-dimensional convex building blocks.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::model::{ArgminSet, ConvexOracle, Interval, Region, SubdiffSet};

/// `max_i (a_i x + b_i)` restricted to a closed interval (ends may be
/// infinite). Polyhedral, so every subdifferential is an exact interval and
/// linearized subproblems are solved by vertex enumeration.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxAffine {
    /// `(slope, intercept)` pairs.
    pieces: Vec<(f64, f64)>,
    domain: Interval,
}

impl MaxAffine {
    pub fn new(pieces: Vec<(f64, f64)>) -> Self {
        assert!(!pieces.is_empty(), "need at least one affine piece");
        MaxAffine { pieces, domain: Interval::REAL }
    }

    /// Adds the indicator of `[lo, hi]`.
    pub fn restricted_to(mut self, lo: f64, hi: f64) -> Self {
        self.domain = Interval::closed(lo, hi);
        self
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    fn raw(&self, x: f64) -> f64 {
        self.pieces.iter().map(|(a, b)| a * x + b).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn value(&self, x: f64) -> f64 {
        if self.domain.contains(x) {
            self.raw(x)
        } else {
            f64::INFINITY
        }
    }

    pub fn subdiff(&self, x: f64) -> SubdiffSet {
        if !self.domain.contains(x) {
            return SubdiffSet::Empty;
        }
        let top = self.raw(x);
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for (a, b) in &self.pieces {
            if a * x + b == top {
                lo = lo.min(*a);
                hi = hi.max(*a);
            }
        }
        if x == self.domain.lo {
            lo = f64::NEG_INFINITY;
        }
        if x == self.domain.hi {
            hi = f64::INFINITY;
        }
        if lo == hi {
            SubdiffSet::scalar(lo)
        } else {
            SubdiffSet::interval_1d(lo, hi)
        }
    }

    /// `argmin { self(x) - y x }`.
    pub fn argmin_linearized(&self, y: f64) -> ArgminSet {
        let min_slope = self.pieces.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        let max_slope = self.pieces.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
        let left_open = !self.domain.lo.is_finite();
        let right_open = !self.domain.hi.is_finite();
        if (left_open && min_slope > y) || (right_open && max_slope < y) {
            return ArgminSet::Unattained;
        }

        let mut candidates: Vec<f64> = Vec::new();
        if !left_open {
            candidates.push(self.domain.lo);
        }
        if !right_open {
            candidates.push(self.domain.hi);
        }
        for (i, (a1, b1)) in self.pieces.iter().enumerate() {
            for (a2, b2) in &self.pieces[i + 1..] {
                if a1 != a2 {
                    let x = (b2 - b1) / (a1 - a2);
                    if self.domain.contains(x) {
                        candidates.push(x);
                    }
                }
            }
        }
        if candidates.is_empty() {
            // single slope on the whole line, equal to y
            return ArgminSet::Segment { lo: f64::NEG_INFINITY, hi: f64::INFINITY };
        }
        candidates.sort_by(|p, q| p.total_cmp(q));

        let phi = |x: f64| self.raw(x) - y * x;
        let best = candidates.iter().map(|&x| phi(x)).fold(f64::INFINITY, f64::min);
        let eps = 1e-14 * (1.0 + libm::fabs(best));
        let on_min: Vec<f64> = candidates.iter().copied().filter(|&x| phi(x) <= best + eps).collect();
        let mut lo = on_min[0];
        let mut hi = on_min[on_min.len() - 1];
        if left_open && min_slope == y && lo == candidates[0] {
            lo = f64::NEG_INFINITY;
        }
        if right_open && max_slope == y && hi == candidates[candidates.len() - 1] {
            hi = f64::INFINITY;
        }
        if lo == hi {
            ArgminSet::Point(vec![lo])
        } else {
            ArgminSet::Segment { lo, hi }
        }
    }

    /// Wraps the function as a one-dimensional oracle.
    pub fn to_oracle(&self) -> ConvexOracle {
        let f = Arc::new(self.clone());
        let s = f.clone();
        let region = if self.domain == Interval::REAL { Region::All } else { Region::interval(self.domain) };
        ConvexOracle::new(move |x| f.value(x[0]), move |x| s.subdiff(x[0])).with_domain(region)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex2_g() -> MaxAffine {
        MaxAffine::new(vec![(-1.0, 0.0), (0.0, 0.0), (1.0, -1.0)])
    }

    #[test]
    fn subdiff_at_kinks() {
        let g = ex2_g();
        assert_eq!(g.subdiff(0.0), SubdiffSet::interval_1d(-1.0, 0.0));
        assert_eq!(g.subdiff(1.0), SubdiffSet::interval_1d(0.0, 1.0));
        assert_eq!(g.subdiff(0.3), SubdiffSet::scalar(0.0));
        let g3 = MaxAffine::new(vec![(0.0, 0.0), (1.0, 0.0)]).restricted_to(-1.0, f64::INFINITY);
        assert_eq!(g3.subdiff(-1.0), SubdiffSet::interval_1d(f64::NEG_INFINITY, 0.0));
        assert_eq!(g3.subdiff(0.0), SubdiffSet::interval_1d(0.0, 1.0));
        assert_eq!(g3.subdiff(-2.0), SubdiffSet::Empty);
        assert_eq!(g3.value(-2.0), f64::INFINITY);
    }

    #[test]
    fn flat_argmin_is_a_segment() {
        assert_eq!(ex2_g().argmin_linearized(0.0), ArgminSet::Segment { lo: 0.0, hi: 1.0 });
        assert_eq!(ex2_g().argmin_linearized(0.5), ArgminSet::Point(vec![1.0]));
        assert_eq!(ex2_g().argmin_linearized(2.0), ArgminSet::Unattained);
    }

    #[test]
    fn restricted_argmin() {
        let g3 = MaxAffine::new(vec![(0.0, 0.0), (1.0, 0.0)]).restricted_to(-1.0, f64::INFINITY);
        assert_eq!(g3.argmin_linearized(0.0), ArgminSet::Segment { lo: -1.0, hi: 0.0 });
        assert_eq!(g3.argmin_linearized(-0.5), ArgminSet::Point(vec![-1.0]));
        assert_eq!(g3.argmin_linearized(1.0), ArgminSet::Segment { lo: 0.0, hi: f64::INFINITY });
    }
}

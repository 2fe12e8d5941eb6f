//! Convergence rates of nonnegative sequences from one-step recurrences.
//!
//! Three hypothesis forms are supported:
//!
//! * `NextPower`: `r_{k+1}^α ≤ β (r_k - r_{k+1})`
//! * `CurrentPower`: `r_k^α ≤ β (r_k - r_{k+1})`
//! * `Mixed`: `r_k ≤ c (r_{k-1} - r_k) + a (r_k - r_{k+1})^b`
//!
//! Each classifier first checks the hypothesis on the sequence tail and then
//! reports the rate class it implies. Extremal sequences satisfy a hypothesis
//! with equality and are used to probe how tight the conclusions are.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::stats::fit_line;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RateError {
    #[error("sequence increases at k = {k}")]
    NotNonincreasing { k: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("root finding failed at k = {k}")]
    RootFindFailure { k: usize },
    #[error("need at least {needed} usable entries, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("theta = {0} is outside [0, 1)")]
    DomainError(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RateHypothesis {
    NextPower { alpha: f64, beta: f64 },
    CurrentPower { alpha: f64, beta: f64 },
    Mixed { a: f64, b: f64, c: f64 },
}

impl RateHypothesis {
    pub fn validate(&self) -> Result<(), RateError> {
        match *self {
            RateHypothesis::NextPower { alpha, beta } | RateHypothesis::CurrentPower { alpha, beta } => {
                if !(alpha >= 0.0) || !alpha.is_finite() {
                    return Err(RateError::InvalidParameter("alpha must be finite and >= 0"));
                }
                if !(beta > 0.0) || !beta.is_finite() {
                    return Err(RateError::InvalidParameter("beta must be finite and > 0"));
                }
            }
            RateHypothesis::Mixed { a, b, c } => {
                if !(a > 0.0 && b > 0.0 && c > 0.0) || !(a.is_finite() && b.is_finite() && c.is_finite()) {
                    return Err(RateError::InvalidParameter("a, b, c must be finite and > 0"));
                }
            }
        }
        Ok(())
    }

    /// `(lhs, rhs)` of the hypothesis at index `k`, or `None` when `k` is out of
    /// range (the mixed form needs `k ≥ 1`).
    fn sides(&self, r: &[f64], k: usize) -> Option<(f64, f64)> {
        if k + 1 >= r.len() {
            return None;
        }
        let pow = |x: f64, e: f64| if e == 0.0 { 1.0 } else { libm::pow(x, e) };
        Some(match *self {
            RateHypothesis::NextPower { alpha, beta } => (pow(r[k + 1], alpha), beta * (r[k] - r[k + 1])),
            RateHypothesis::CurrentPower { alpha, beta } => (pow(r[k], alpha), beta * (r[k] - r[k + 1])),
            RateHypothesis::Mixed { a, b, c } => {
                if k == 0 {
                    return None;
                }
                (r[k], c * (r[k - 1] - r[k]) + a * libm::pow(r[k] - r[k + 1], b))
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RateVerdict {
    /// Reaches 0 after finitely many steps; `step_bound` bounds the last index
    /// at which the sequence still decreases by the hypothesis increment.
    Finite { step_bound: Option<f64> },
    /// `r_k = O(q^k)`; `q` is `None` when only the rate class is known.
    Linear { q: Option<f64> },
    /// `r_k = O(k^p)` with `p < 0`.
    Sublinear { p: f64 },
    Inconclusive { reason: String },
}

impl fmt::Display for RateVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RateVerdict::Finite { step_bound: Some(b) } => write!(f, "Finite(k <= {})", b),
            RateVerdict::Finite { step_bound: None } => f.write_str("Finite"),
            RateVerdict::Linear { q: Some(q) } => write!(f, "Linear(q = {})", q),
            RateVerdict::Linear { q: None } => f.write_str("Linear(q unspecified)"),
            RateVerdict::Sublinear { p } => write!(f, "Sublinear(O(k^{}))", p),
            RateVerdict::Inconclusive { reason } => write!(f, "Inconclusive({})", reason),
        }
    }
}

/// Result of checking a hypothesis on a sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypothesisCheck {
    /// First index from which at least 95% of the remaining inequalities hold.
    pub onset: Option<usize>,
    pub checked: usize,
    /// Fraction holding from the onset on.
    pub holds_fraction: f64,
}

/// Fraction of the suffix that must satisfy the hypothesis.
pub const ONSET_FRACTION: f64 = 0.95;

/// Checks the hypothesis with relative tolerance `tol`. Pairs where the
/// sequence has already reached 0 count as satisfied.
pub fn check_hypothesis(h: &RateHypothesis, r: &[f64], tol: f64) -> HypothesisCheck {
    let mut holds = Vec::new();
    let mut idx = Vec::new();
    for k in 0..r.len() {
        if let Some((lhs, rhs)) = h.sides(r, k) {
            let settled = r[k] == 0.0 && r[k + 1] == 0.0;
            // the absolute floor keeps subnormal tails from failing on rounding alone
            let slack = tol * libm::fabs(lhs).max(libm::fabs(rhs)) + f64::MIN_POSITIVE;
            let ok = settled || lhs <= rhs + slack;
            holds.push(ok);
            idx.push(k);
        }
    }
    let n = holds.len();
    if n == 0 {
        return HypothesisCheck { onset: None, checked: 0, holds_fraction: 0.0 };
    }
    let mut suffix_ok = 0usize;
    let mut best: Option<(usize, f64)> = None;
    for i in (0..n).rev() {
        if holds[i] {
            suffix_ok += 1;
        }
        let frac = suffix_ok as f64 / (n - i) as f64;
        if frac >= ONSET_FRACTION {
            best = Some((i, frac));
        }
    }
    match best {
        Some((i, frac)) => HypothesisCheck { onset: Some(idx[i]), checked: n, holds_fraction: frac },
        None => HypothesisCheck { onset: None, checked: n, holds_fraction: 0.0 },
    }
}

/// Relative tolerance of the hypothesis check inside the classifiers.
pub const HYPOTHESIS_TOL: f64 = 1e-10;

fn require_nonincreasing(r: &[f64]) -> Result<(), RateError> {
    for k in 0..r.len() {
        if !(r[k] >= 0.0) {
            return Err(RateError::InvalidParameter("sequence entries must be nonnegative"));
        }
        if k + 1 < r.len() && r[k + 1] > r[k] * (1.0 + 1e-12) {
            return Err(RateError::NotNonincreasing { k });
        }
    }
    Ok(())
}

/// Checks the hypothesis and returns the onset, or the reason it failed.
fn tail_onset(h: &RateHypothesis, r: &[f64]) -> Result<usize, String> {
    let check = check_hypothesis(h, r, HYPOTHESIS_TOL);
    match check.onset {
        Some(n) if check.checked > 0 && n <= r.len() / 2 => Ok(n),
        Some(n) => Err(alloc::format!("hypothesis only holds from k = {} of {}", n, r.len())),
        None => Err("hypothesis does not hold on the tail".to_string()),
    }
}

/// Classifier for `r_{k+1}^α ≤ β (r_k - r_{k+1})`.
pub fn classify_next_power(r: &[f64], alpha: f64, beta: f64) -> Result<RateVerdict, RateError> {
    let h = RateHypothesis::NextPower { alpha, beta };
    h.validate()?;
    require_nonincreasing(r)?;
    let n = match tail_onset(&h, r) {
        Ok(n) => n,
        Err(reason) => return Ok(RateVerdict::Inconclusive { reason }),
    };
    Ok(verdict_next_power(alpha, beta, Some((n, r[n]))))
}

/// Rate implied by the `NextPower` hypothesis; `onset` is `(N, r_N)`.
pub fn verdict_next_power(alpha: f64, beta: f64, onset: Option<(usize, f64)>) -> RateVerdict {
    if alpha == 0.0 {
        RateVerdict::Finite { step_bound: onset.map(|(n, rn)| beta * rn + n as f64 - 1.0) }
    } else if alpha <= 1.0 {
        RateVerdict::Linear { q: Some(beta / (1.0 + beta)) }
    } else {
        RateVerdict::Sublinear { p: 1.0 / (1.0 - alpha) }
    }
}

/// Classifier for `r_k^α ≤ β (r_k - r_{k+1})`.
pub fn classify_current_power(r: &[f64], alpha: f64, beta: f64) -> Result<RateVerdict, RateError> {
    let h = RateHypothesis::CurrentPower { alpha, beta };
    h.validate()?;
    require_nonincreasing(r)?;
    let n = match tail_onset(&h, r) {
        Ok(n) => n,
        Err(reason) => return Ok(RateVerdict::Inconclusive { reason }),
    };
    Ok(verdict_current_power(alpha, beta, Some((n, r[n]))))
}

pub fn verdict_current_power(alpha: f64, beta: f64, onset: Option<(usize, f64)>) -> RateVerdict {
    if alpha == 0.0 {
        RateVerdict::Finite { step_bound: onset.map(|(n, rn)| beta * rn + n as f64 - 1.0) }
    } else if alpha <= 1.0 {
        if beta > 1.0 {
            RateVerdict::Linear { q: Some(1.0 - 1.0 / beta) }
        } else {
            RateVerdict::Inconclusive { reason: "linear rate 1 - 1/beta needs beta > 1".to_string() }
        }
    } else {
        RateVerdict::Sublinear { p: 1.0 / (1.0 - alpha) }
    }
}

/// Classifier for `r_k ≤ c (r_{k-1} - r_k) + a (r_k - r_{k+1})^b`.
pub fn classify_mixed(r: &[f64], a: f64, b: f64, c: f64) -> Result<RateVerdict, RateError> {
    let h = RateHypothesis::Mixed { a, b, c };
    h.validate()?;
    require_nonincreasing(r)?;
    if let Err(reason) = tail_onset(&h, r) {
        return Ok(RateVerdict::Inconclusive { reason });
    }
    Ok(verdict_mixed(b))
}

pub fn verdict_mixed(b: f64) -> RateVerdict {
    if b >= 1.0 {
        RateVerdict::Linear { q: None }
    } else {
        RateVerdict::Sublinear { p: b / (b - 1.0) }
    }
}

/// Rate implied by a hypothesis before looking at any data.
pub fn verdict_for(h: &RateHypothesis) -> RateVerdict {
    match *h {
        RateHypothesis::NextPower { alpha, beta } => verdict_next_power(alpha, beta, None),
        RateHypothesis::CurrentPower { alpha, beta } => verdict_current_power(alpha, beta, None),
        RateHypothesis::Mixed { b, .. } => verdict_mixed(b),
    }
}

/// Runs the classifier matching the hypothesis form.
pub fn classify(h: &RateHypothesis, r: &[f64]) -> Result<RateVerdict, RateError> {
    match *h {
        RateHypothesis::NextPower { alpha, beta } => classify_next_power(r, alpha, beta),
        RateHypothesis::CurrentPower { alpha, beta } => classify_current_power(r, alpha, beta),
        RateHypothesis::Mixed { a, b, c } => classify_mixed(r, a, b, c),
    }
}

/// Linear root of the mixed recurrence with `b = 1`: the `q ∈ (0,1)` with
/// `1 = c(1/q - 1) + a(1 - q)`.
pub fn mixed_linear_ratio(a: f64, c: f64) -> f64 {
    let s = 1.0 + c - a;
    (-s + libm::sqrt(s * s + 4.0 * a * c)) / (2.0 * a)
}

/// A sequence of length `n` satisfying the hypothesis with equality (until it
/// reaches 0, after which it stays 0).
pub fn generate_extremal_sequence(h: &RateHypothesis, r0: f64, n: usize) -> Result<Vec<f64>, RateError> {
    h.validate()?;
    if !(r0 > 0.0) || !r0.is_finite() {
        return Err(RateError::InvalidParameter("r0 must be finite and > 0"));
    }
    let mut r = Vec::with_capacity(n);
    if n == 0 {
        return Ok(r);
    }
    if let RateHypothesis::NextPower { alpha, beta } | RateHypothesis::CurrentPower { alpha, beta } = *h {
        // with 0^0 = 1 every step into a positive value must drop by 1/β, so
        // below 1/β no admissible successor exists
        if alpha == 0.0 && r0 < 1.0 / beta {
            return Err(RateError::InvalidParameter("alpha = 0 needs r0 >= 1/beta"));
        }
    }
    if let RateHypothesis::CurrentPower { alpha, beta } = *h {
        // a positive r_k needs r_k^α <= β r_k
        if alpha > 0.0 && alpha <= 1.0 && !current_power_admissible(r0, alpha, beta) {
            return Err(RateError::InvalidParameter("r0^(1-alpha) must be >= 1/beta"));
        }
    }
    if let RateHypothesis::Mixed { a, b, c } = *h {
        if b == 1.0 {
            // the two-term recursion amplifies rounding along its negative
            // characteristic root, so use the geometric solution directly
            let q = mixed_linear_ratio(a, c);
            r.extend((0..n as i32).map(|k| r0 * libm::pow(q, k as f64)));
            return Ok(r);
        }
    }
    r.push(r0);
    // previous value for the mixed form
    let mut prev = r0;
    for k in 0..n - 1 {
        let cur = r[k];
        let next = if cur == 0.0 {
            0.0
        } else {
            match *h {
                RateHypothesis::NextPower { alpha, beta } => next_power_step(cur, alpha, beta).ok_or(RateError::RootFindFailure { k })?,
                RateHypothesis::CurrentPower { alpha: 0.0, beta } => finite_step(cur, beta),
                RateHypothesis::CurrentPower { alpha, beta } => {
                    let next = (cur - libm::pow(cur, alpha) / beta).max(0.0);
                    if alpha <= 1.0 && next > 0.0 && !current_power_admissible(next, alpha, beta) {
                        0.0
                    } else {
                        next
                    }
                }
                RateHypothesis::Mixed { a, b, c } => {
                    let excess = ((cur - c * (prev - cur)) / a).max(0.0);
                    let next = (cur - libm::pow(excess, 1.0 / b)).max(0.0);
                    // stalling can leave no admissible successor when b > 1;
                    // dropping to 0 is admissible whenever any successor is
                    if next > 0.0 && next > c * (cur - next) + a * libm::pow(next, b) {
                        0.0
                    } else {
                        next
                    }
                }
            }
        };
        prev = cur;
        r.push(next);
    }
    Ok(r)
}

fn current_power_admissible(r: f64, alpha: f64, beta: f64) -> bool {
    libm::pow(r, alpha) <= beta * r
}

/// Drops by `1/β`, or straight to 0 when the remainder would have no admissible successor.
fn finite_step(r: f64, beta: f64) -> f64 {
    let next = r - 1.0 / beta;
    if next < 1.0 / beta {
        0.0
    } else {
        next
    }
}

/// Solves `x^α + β x = β r` for `x ∈ (0, r]`.
fn next_power_step(r: f64, alpha: f64, beta: f64) -> Option<f64> {
    if alpha == 0.0 {
        return Some(finite_step(r, beta));
    }
    if alpha == 1.0 {
        return Some(beta * r / (1.0 + beta));
    }
    let f = |x: f64| libm::pow(x, alpha) + beta * x - beta * r;
    let (mut lo, mut hi) = (0.0, r);
    if !(f(hi) >= 0.0) {
        return None;
    }
    for _ in 0..2000 {
        let mid = lo + (hi - lo) / 2.0;
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid);
        if v == 0.0 {
            return Some(mid);
        }
        if v > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    // f <= 0 is the admissible side; in the subnormal range lo collapses to 0
    Some(lo)
}

/// Both fits of [`fit_empirical_rate`] and the chosen verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalRate {
    pub verdict: RateVerdict,
    /// `exp` of the slope of `log r_k` against `k`.
    pub q: f64,
    pub r2_linear: f64,
    /// Slope of `log r_k` against `log k`.
    pub p: f64,
    pub r2_power: f64,
    pub n_points: usize,
}

pub const MIN_RATE_POINTS: usize = 20;

/// Fits `log r_k` against `k` (linear rate) and against `log k` (power law)
/// on the post-burn-in part and keeps the better fit. A tail that has hit 0,
/// or settled at a value below `1e-15·r_0`, is reported as finite convergence.
pub fn fit_empirical_rate(r: &[f64], burn_in_fraction: f64) -> Result<EmpiricalRate, RateError> {
    if !(0.0..1.0).contains(&burn_in_fraction) {
        return Err(RateError::InvalidParameter("burn_in_fraction must lie in [0, 1)"));
    }
    let start = libm::ceil(burn_in_fraction * r.len() as f64) as usize;
    let r0 = r.first().copied().unwrap_or(0.0);
    if let Some(last) = r.last() {
        // a tiny value only counts as converged once the sequence stops moving
        let settled = r.len() >= 2 && r[r.len() - 2] == *last;
        if r.len() > start && (*last == 0.0 || (settled && r0 > 0.0 && *last <= 1e-15 * r0)) {
            return Ok(EmpiricalRate {
                verdict: RateVerdict::Finite { step_bound: None },
                q: 0.0,
                r2_linear: f64::NAN,
                p: f64::NEG_INFINITY,
                r2_power: f64::NAN,
                n_points: 0,
            });
        }
    }
    let (mut ks, mut logks, mut logr) = (Vec::new(), Vec::new(), Vec::new());
    for (k, v) in r.iter().enumerate().skip(start.max(1)) {
        if *v > 0.0 && v.is_finite() {
            ks.push(k as f64);
            logks.push(libm::log(k as f64));
            logr.push(libm::log(*v));
        }
    }
    let got = ks.len();
    if got < MIN_RATE_POINTS {
        return Err(RateError::InsufficientData { needed: MIN_RATE_POINTS, got });
    }
    let lin = fit_line(&ks, &logr).ok_or(RateError::InsufficientData { needed: MIN_RATE_POINTS, got })?;
    let pow = fit_line(&logks, &logr).ok_or(RateError::InsufficientData { needed: MIN_RATE_POINTS, got })?;
    let q = libm::exp(lin.slope);
    let verdict = if lin.r_squared >= pow.r_squared && q < 1.0 {
        RateVerdict::Linear { q: Some(q) }
    } else if pow.slope < 0.0 {
        RateVerdict::Sublinear { p: pow.slope }
    } else {
        RateVerdict::Inconclusive { reason: "sequence does not decay".to_string() }
    };
    Ok(EmpiricalRate { verdict, q, r2_linear: lin.r_squared, p: pow.slope, r2_power: pow.r_squared, n_points: got })
}

/// Rates of `f(x^k) - f*` and `‖x^k - x*‖` implied by a Łojasiewicz exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaPrediction {
    pub f_rate: RateVerdict,
    pub x_rate: RateVerdict,
}

pub fn predict_rates_from_theta(theta: f64) -> Result<ThetaPrediction, RateError> {
    if !(0.0..1.0).contains(&theta) {
        return Err(RateError::DomainError(theta));
    }
    Ok(if theta == 0.0 {
        ThetaPrediction { f_rate: RateVerdict::Finite { step_bound: None }, x_rate: RateVerdict::Finite { step_bound: None } }
    } else if theta <= 0.5 {
        ThetaPrediction { f_rate: RateVerdict::Linear { q: None }, x_rate: RateVerdict::Linear { q: None } }
    } else {
        ThetaPrediction {
            f_rate: RateVerdict::Sublinear { p: 1.0 / (1.0 - 2.0 * theta) },
            x_rate: RateVerdict::Sublinear { p: (1.0 - theta) / (1.0 - 2.0 * theta) },
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn next_power_examples() {
        let h = RateHypothesis::NextPower { alpha: 1.0, beta: 1.0 };
        assert_eq!(generate_extremal_sequence(&h, 1.0, 5).unwrap(), vec![1.0, 0.5, 0.25, 0.125, 0.0625]);
        let h = RateHypothesis::NextPower { alpha: 0.5, beta: 2.0 };
        let r = generate_extremal_sequence(&h, 1.0, 40).unwrap();
        assert_eq!(classify_next_power(&r, 0.5, 2.0).unwrap(), RateVerdict::Linear { q: Some(2.0 / 3.0) });
        assert_eq!(verdict_next_power(0.0, 10.0, Some((5, 3.0))), RateVerdict::Finite { step_bound: Some(34.0) });
        assert_eq!(verdict_next_power(2.0, 1.0, None), RateVerdict::Sublinear { p: -1.0 });
    }

    #[test]
    fn current_power_examples() {
        let h = RateHypothesis::CurrentPower { alpha: 1.0, beta: 2.0 };
        assert_eq!(generate_extremal_sequence(&h, 1.0, 4).unwrap(), vec![1.0, 0.5, 0.25, 0.125]);
        let h = RateHypothesis::CurrentPower { alpha: 1.0, beta: 4.0 };
        let r = generate_extremal_sequence(&h, 1.0, 50).unwrap();
        assert_eq!(classify_current_power(&r, 1.0, 4.0).unwrap(), RateVerdict::Linear { q: Some(0.75) });
        assert_eq!(verdict_current_power(3.0, 2.0, None), RateVerdict::Sublinear { p: -0.5 });
        assert!(matches!(verdict_current_power(0.0, 2.0, None), RateVerdict::Finite { .. }));
        assert!(matches!(verdict_current_power(1.0, 0.5, None), RateVerdict::Inconclusive { .. }));
    }

    #[test]
    fn mixed_examples() {
        assert_eq!(verdict_mixed(1.0), RateVerdict::Linear { q: None });
        assert_eq!(verdict_mixed(0.5), RateVerdict::Sublinear { p: -1.0 });
        let RateVerdict::Sublinear { p } = verdict_mixed(2.0 / 3.0) else { panic!() };
        assert!((p + 2.0).abs() < 1e-12);
        let h = RateHypothesis::Mixed { a: 1.0, b: 1.0, c: 1.0 };
        let r = generate_extremal_sequence(&h, 1.0, 60).unwrap();
        assert_eq!(classify_mixed(&r, 1.0, 1.0, 1.0).unwrap(), RateVerdict::Linear { q: None });
        assert!((r[1] / r[0] - (libm::sqrt(5.0) - 1.0) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn increasing_sequence_is_rejected() {
        assert_eq!(classify_next_power(&[1.0, 2.0], 1.0, 1.0), Err(RateError::NotNonincreasing { k: 0 }));
    }

    #[test]
    fn hypothesis_violation_is_inconclusive() {
        // geometric with ratio 0.9 violates r_{k+1} ≤ (1/2) r_k
        let r: Vec<f64> = (0..50).map(|k| libm::pow(0.9, k as f64)).collect();
        assert!(matches!(classify_next_power(&r, 1.0, 1.0).unwrap(), RateVerdict::Inconclusive { .. }));
    }

    #[test]
    fn theta_predictions() {
        let p = predict_rates_from_theta(0.75).unwrap();
        assert_eq!(p.f_rate, RateVerdict::Sublinear { p: -2.0 });
        assert_eq!(p.x_rate, RateVerdict::Sublinear { p: -0.5 });
        assert!(matches!(predict_rates_from_theta(0.0).unwrap().f_rate, RateVerdict::Finite { .. }));
        assert_eq!(predict_rates_from_theta(0.5).unwrap().x_rate, RateVerdict::Linear { q: None });
        assert_eq!(predict_rates_from_theta(1.2), Err(RateError::DomainError(1.2)));
    }

    #[test]
    fn empirical_fits() {
        let geo: Vec<f64> = (0..1000).map(|k| libm::pow(0.9, k as f64)).collect();
        match fit_empirical_rate(&geo, 0.5).unwrap().verdict {
            RateVerdict::Linear { q: Some(q) } => assert!((q - 0.9).abs() < 0.01),
            v => panic!("{:?}", v),
        }
        let pw: Vec<f64> = (0..1000).map(|k| if k == 0 { 1.0 } else { 1.0 / ((k * k) as f64) }).collect();
        match fit_empirical_rate(&pw, 0.5).unwrap().verdict {
            RateVerdict::Sublinear { p } => assert!((p + 2.0).abs() < 0.1),
            v => panic!("{:?}", v),
        }
        assert!(matches!(fit_empirical_rate(&[1.0, 0.5, 0.0], 0.0).unwrap().verdict, RateVerdict::Finite { .. }));
        assert!(matches!(fit_empirical_rate(&[1.0; 10], 0.5), Err(RateError::InsufficientData { .. })));
    }
}

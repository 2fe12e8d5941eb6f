//! One-dimensional problems written on the command line, e.g.
//! `g = 0.5*quad(1) + abs(2); h = exp; box = 0, inf`.
//!
//! Terms: `quad(a[,b[,c]])` for `a x² + b x + c` (a ≥ 0), `abs([c])` for
//! `|x - c|`, `maxaff(s:i, ...)` for `max_j s_j x + i_j`, `exp`, `negsqrt`
//! for `-sqrt(x)` on `x ≥ 0`, and `zero`. A term may carry a factor `c*`
//! with `c ≥ 0`; terms are joined with `+`.

use std::sync::Arc;

use dcakit_core::functions::MaxAffine;
use dcakit_core::model::{ConstraintSet, ConvexOracle, DcProblem, Interval, Region, SubdiffSet};

use crate::error::CliError;

type Eval = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type Subdiff = Arc<dyn Fn(f64) -> Option<(f64, f64)> + Send + Sync>;

struct Term {
    eval: Eval,
    subdiff: Subdiff,
    rho: f64,
    lipschitz: Option<f64>,
    domain: Interval,
    subdiff_domain: Interval,
}

fn err(msg: impl Into<String>) -> CliError {
    CliError::Inline(msg.into())
}

fn args(inner: &str) -> Result<Vec<f64>, CliError> {
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(|s| s.trim().parse::<f64>().map_err(|_| err(format!("bad number `{}`", s.trim())))).collect()
}

fn parse_term(src: &str) -> Result<Term, CliError> {
    let src = src.trim();
    let (scale, body) = match src.split_once('*') {
        Some((c, rest)) => {
            let c: f64 = c.trim().parse().map_err(|_| err(format!("bad factor in `{src}`")))?;
            if !(c >= 0.0) || !c.is_finite() {
                return Err(err(format!("factor must be finite and >= 0 in `{src}`")));
            }
            (c, rest.trim())
        }
        None => (1.0, src),
    };
    let (name, inner) = match body.split_once('(') {
        Some((n, rest)) => {
            let inner = rest.strip_suffix(')').ok_or_else(|| err(format!("missing `)` in `{body}`")))?;
            (n.trim(), inner)
        }
        None => (body, ""),
    };
    let full = Interval::REAL;
    let mut term = match name {
        "zero" => Term {
            eval: Arc::new(|_| 0.0),
            subdiff: Arc::new(|_| Some((0.0, 0.0))),
            rho: 0.0,
            lipschitz: Some(0.0),
            domain: full,
            subdiff_domain: full,
        },
        "quad" => {
            let a = args(inner)?;
            if a.is_empty() || a.len() > 3 || !(a[0] >= 0.0) {
                return Err(err("quad takes a[,b[,c]] with a >= 0"));
            }
            let (qa, qb, qc) = (a[0], *a.get(1).unwrap_or(&0.0), *a.get(2).unwrap_or(&0.0));
            Term {
                eval: Arc::new(move |x| qa * x * x + qb * x + qc),
                subdiff: Arc::new(move |x| {
                    let d = 2.0 * qa * x + qb;
                    Some((d, d))
                }),
                rho: 2.0 * qa,
                lipschitz: Some(2.0 * qa),
                domain: full,
                subdiff_domain: full,
            }
        }
        "abs" => {
            let a = args(inner)?;
            if a.len() > 1 {
                return Err(err("abs takes at most one center"));
            }
            let c = *a.first().unwrap_or(&0.0);
            Term {
                eval: Arc::new(move |x| (x - c).abs()),
                subdiff: Arc::new(move |x| {
                    Some(if x > c {
                        (1.0, 1.0)
                    } else if x < c {
                        (-1.0, -1.0)
                    } else {
                        (-1.0, 1.0)
                    })
                }),
                rho: 0.0,
                lipschitz: None,
                domain: full,
                subdiff_domain: full,
            }
        }
        "maxaff" => {
            let mut pieces = Vec::new();
            for p in inner.split(',') {
                let (s, i) = p.split_once(':').ok_or_else(|| err(format!("maxaff piece `{}` must be slope:intercept", p.trim())))?;
                let parse = |t: &str| t.trim().parse::<f64>().map_err(|_| err(format!("bad number `{}`", t.trim())));
                pieces.push((parse(s)?, parse(i)?));
            }
            let f = Arc::new(MaxAffine::new(pieces));
            let g = f.clone();
            Term {
                eval: Arc::new(move |x| f.value(x)),
                subdiff: Arc::new(move |x| g.subdiff(x).interval_1d_bounds()),
                rho: 0.0,
                lipschitz: None,
                domain: full,
                subdiff_domain: full,
            }
        }
        "exp" => Term {
            eval: Arc::new(f64::exp),
            subdiff: Arc::new(|x| Some((x.exp(), x.exp()))),
            rho: 0.0,
            lipschitz: None,
            domain: full,
            subdiff_domain: full,
        },
        "negsqrt" => Term {
            eval: Arc::new(|x| if x >= 0.0 { -x.sqrt() } else { f64::INFINITY }),
            subdiff: Arc::new(|x| {
                if x > 0.0 {
                    let d = -0.5 / x.sqrt();
                    Some((d, d))
                } else {
                    None
                }
            }),
            rho: 0.0,
            lipschitz: None,
            domain: Interval::at_least(0.0),
            subdiff_domain: Interval::greater_than(0.0),
        },
        other => return Err(err(format!("unknown term `{other}`"))),
    };
    if !inner.is_empty() && matches!(name, "zero" | "exp" | "negsqrt") {
        return Err(err(format!("`{name}` takes no arguments")));
    }
    if scale != 1.0 {
        let (e, s) = (term.eval.clone(), term.subdiff.clone());
        term.eval = Arc::new(move |x| if scale == 0.0 { 0.0 } else { scale * e(x) });
        term.subdiff = Arc::new(move |x| s(x).map(|(lo, hi)| (scale * lo, scale * hi)));
        term.rho *= scale;
        term.lipschitz = term.lipschitz.map(|l| l * scale);
    }
    Ok(term)
}

trait Bounds1d {
    fn interval_1d_bounds(&self) -> Option<(f64, f64)>;
}

impl Bounds1d for SubdiffSet {
    fn interval_1d_bounds(&self) -> Option<(f64, f64)> {
        self.bounds().map(|b| b[0])
    }
}

fn parse_sum(src: &str) -> Result<ConvexOracle, CliError> {
    let terms: Vec<Term> = src.split('+').map(parse_term).collect::<Result<_, _>>()?;
    let rho = terms.iter().map(|t| t.rho).sum();
    let lipschitz = terms.iter().map(|t| t.lipschitz).sum::<Option<f64>>();
    let domain = terms.iter().fold(Interval::REAL, |d, t| d.intersect(&t.domain));
    let subdiff_domain = terms.iter().fold(Interval::REAL, |d, t| d.intersect(&t.subdiff_domain));
    let (evals, subs): (Vec<Eval>, Vec<Subdiff>) = terms.into_iter().map(|t| (t.eval, t.subdiff)).unzip();
    let eval = move |x: &[f64]| evals.iter().map(|e| e(x[0])).sum::<f64>();
    let subdiff = move |x: &[f64]| {
        let mut acc = (0.0, 0.0);
        for s in &subs {
            match s(x[0]) {
                Some((lo, hi)) => acc = (acc.0 + lo, acc.1 + hi),
                None => return SubdiffSet::Empty,
            }
        }
        if acc.0 == acc.1 {
            SubdiffSet::scalar(acc.0)
        } else {
            SubdiffSet::interval_1d(acc.0, acc.1)
        }
    };
    let region = |iv: Interval| if iv == Interval::REAL { Region::All } else { Region::interval(iv) };
    let mut oracle = ConvexOracle::new(eval, subdiff)
        .with_strong_convexity(rho)
        .with_domain(region(domain))
        .with_subdiff_domain(region(subdiff_domain));
    if let Some(l) = lipschitz {
        oracle = oracle.with_grad_lipschitz(l);
    }
    Ok(oracle)
}

/// Builds the problem described by `src`.
pub fn parse_inline(src: &str) -> Result<DcProblem, CliError> {
    let (mut g, mut h, mut bounds) = (None, None, None);
    for part in src.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part.split_once('=').ok_or_else(|| err(format!("expected key = value, got `{part}`")))?;
        match key.trim() {
            "g" => g = Some(parse_sum(value)?),
            "h" => h = Some(parse_sum(value)?),
            "box" => {
                let b = args(value)?;
                if b.len() != 2 || !(b[0] <= b[1]) {
                    return Err(err("box takes lo, hi with lo <= hi"));
                }
                bounds = Some((b[0], b[1]));
            }
            other => return Err(err(format!("unknown key `{other}` (g, h, box)"))),
        }
    }
    let g = g.ok_or_else(|| err("missing g"))?;
    let h = h.ok_or_else(|| err("missing h"))?;
    let mut p = DcProblem::new("inline", 1, g, h);
    if let Some(b) = bounds {
        p = p.with_constraint(ConstraintSet::Box(vec![b]));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use dcakit_core::engine::run_dca;
    use dcakit_core::RunConfig;

    #[test]
    fn convex_case_solves_in_one_step() {
        // g = (x - 3)^2 / 2, h = 0
        let p = parse_inline("g = quad(0.5, -3, 4.5); h = zero").unwrap();
        assert_eq!(p.rho(), 1.0);
        let t = run_dca(&p, &[0.0], &RunConfig::default()).unwrap();
        assert!((t.records[1].x[0] - 3.0).abs() < 1e-9);
    }

    #[test]
    fn sums_and_factors() {
        let p = parse_inline("g = 2*abs(1) + quad(1); h = maxaff(-1:0, 0:0)").unwrap();
        assert_eq!(p.g.value(&[3.0]), 2.0 * 2.0 + 9.0);
        assert_eq!(p.g.subdiff(&[1.0]), SubdiffSet::interval_1d(0.0, 4.0));
        assert_eq!(p.h.subdiff(&[0.0]), SubdiffSet::interval_1d(-1.0, 0.0));
    }

    #[test]
    fn box_and_negsqrt_domain() {
        let p = parse_inline("g = quad(0.5); h = negsqrt; box = 0, inf").unwrap();
        assert!(p.h.subdiff(&[0.0]).is_empty());
        assert_eq!(p.h.value(&[-1.0]), f64::INFINITY);
        assert_eq!(p.constraint, ConstraintSet::Box(vec![(0.0, f64::INFINITY)]));
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["g = quad(-1); h = zero", "g = cosh; h = zero", "h = zero", "g = quad(1", "g = exp(2); h = zero", "g = zero; h = zero; box = 2, 1", "g = -1*abs; h = zero"] {
            assert!(parse_inline(bad).is_err(), "{bad}");
        }
    }
}

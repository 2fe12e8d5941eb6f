use dcakit_core::diagnostics::{check_monotone_descent, estimate_kl_exponent};
use dcakit_core::engine::run_dca;
use dcakit_core::functions::MaxAffine;
use dcakit_core::model::{ConvexOracle, DcProblem, SubdiffSet};
use dcakit_core::rates::{check_hypothesis, generate_extremal_sequence, RateHypothesis};
use dcakit_core::subsolver::{cardano_update, solve_subproblem, SubproblemStatus, SubsolverConfig};
use dcakit_core::zoo::{ex1_good_generic, zoo_build};
use dcakit_core::{CheckOutcome, Status, Tolerance, Trace};
use proptest::prelude::*;

fn subgradients(s: &SubdiffSet) -> Vec<f64> {
    match s.bounds() {
        Some(b) => vec![b[0].0, b[0].1, 0.5 * (b[0].0 + b[0].1)],
        None => Vec::new(),
    }
}

fn assert_subgradient_inequality(g: &ConvexOracle, x: f64, z: f64) -> Result<(), TestCaseError> {
    let (gx, gz) = (g.value(&[x]), g.value(&[z]));
    if !gx.is_finite() {
        return Ok(());
    }
    for v in subgradients(&g.subdiff(&[x])) {
        let lower = gx + v * (z - x);
        let slack = 1e-9 * (1.0 + gx.abs() + lower.abs());
        prop_assert!(gz >= lower - slack, "g({z}) = {gz} < {gx} + {v} ({z} - {x})");
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn zoo_components_satisfy_subgradient_inequality(x in -3.0f64..3.0, z in -3.0f64..3.0) {
        for name in ["ex1_good", "ex2_oscillate", "ex3_weak", "ex3_alt_decomp", "quartic", "quadratic", "convex_oneshot"] {
            let p = zoo_build(name).unwrap().problem;
            assert_subgradient_inequality(&p.g, x, z)?;
            assert_subgradient_inequality(&p.h, x, z)?;
        }
    }

    #[test]
    fn max_affine_subgradient_inequality(
        pieces in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 1..6),
        x in -4.0f64..4.0,
        z in -4.0f64..4.0,
    ) {
        let f = MaxAffine::new(pieces);
        assert_subgradient_inequality(&f.to_oracle(), x, z)?;
    }

    #[test]
    fn certificate_bounds_distance_to_true_minimizer(xk in 1e-6f64..10.0) {
        let p = ex1_good_generic();
        let res = solve_subproblem(&p, &[-1.0 / xk.sqrt()], &[xk], &SubsolverConfig::default());
        prop_assert_eq!(res.status, SubproblemStatus::Solved);
        let cert = res.certificate;
        let exact = cardano_update(xk).unwrap();
        let err = (res.x_next[0] - exact).abs();
        prop_assert!(err <= cert * res.x_next[0].abs().max(1.0) + 1e-15, "err {err:e}, certificate {cert:e}");
    }

    #[test]
    fn runs_are_bit_reproducible(x0 in 0.01f64..5.0) {
        let entry = zoo_build("quartic").unwrap();
        let cfg = entry.default_scenario().config.clone().with_max_iters(200);
        let a = run_dca(&entry.problem, &[x0], &cfg).unwrap();
        let b = run_dca(&entry.problem, &[x0], &cfg).unwrap();
        prop_assert_eq!(a.records.len(), b.records.len());
        for (ra, rb) in a.records.iter().zip(&b.records) {
            prop_assert_eq!(ra.x[0].to_bits(), rb.x[0].to_bits());
            prop_assert_eq!(ra.f.to_bits(), rb.f.to_bits());
        }
    }

    #[test]
    fn dca_descends_from_any_start(x0 in 0.01f64..5.0, name_idx in 0usize..4) {
        let name = ["ex1_good", "quartic", "quadratic", "convex_oneshot"][name_idx];
        let entry = zoo_build(name).unwrap();
        let cfg = entry.default_scenario().config.clone().with_max_iters(100);
        let t = run_dca(&entry.problem, &[x0], &cfg).unwrap();
        let c = check_monotone_descent(&t, &Tolerance::for_trace(&t));
        prop_assert_eq!(c.outcome, CheckOutcome::Pass, "{} from {}: {}", name, x0, c.note);
    }

    #[test]
    fn extremal_sequences_satisfy_their_hypothesis(
        form in 0usize..2,
        alpha in prop::sample::select(vec![0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0]),
        beta in 1.0f64..20.0,
    ) {
        let h = if form == 0 {
            RateHypothesis::NextPower { alpha, beta }
        } else {
            RateHypothesis::CurrentPower { alpha, beta }
        };
        let r0 = match h {
            RateHypothesis::CurrentPower { alpha, beta } if alpha > 1.0 => 0.5 * beta.powf(1.0 / (alpha - 1.0)).min(1.0),
            RateHypothesis::CurrentPower { alpha, beta } if alpha < 1.0 => beta.powf(-1.0 / (1.0 - alpha)).max(1.0),
            _ => 1.0f64.max(1.0 / beta),
        };
        let r = generate_extremal_sequence(&h, r0, 500).unwrap();
        let hc = check_hypothesis(&h, &r, 1e-10);
        prop_assert_eq!(hc.onset, Some(0));
        prop_assert_eq!(hc.holds_fraction, 1.0);
    }

    #[test]
    fn mixed_extremal_sequences_satisfy_their_hypothesis(a in 0.2f64..5.0, b in 0.3f64..3.0, c in 0.2f64..5.0) {
        let h = RateHypothesis::Mixed { a, b, c };
        let r = generate_extremal_sequence(&h, 0.5, 500).unwrap();
        let hc = check_hypothesis(&h, &r, 1e-10);
        prop_assert_eq!(hc.onset, Some(1));
        prop_assert_eq!(hc.holds_fraction, 1.0);
    }
}

/// Iterates with `Ψ_k ~ k^(1/(1-2θ))` and `|x_k| ~ k^((1-θ)/(1-2θ))`, the decay of an exponent-θ problem.
fn synthetic_trace(theta: f64, n: usize) -> Trace {
    let e = 1.0 / (1.0 - 2.0 * theta);
    let xs = (1..=n).map(|k| vec![(k as f64).powf((1.0 - theta) * e)]).collect();
    let fs = (1..=n).map(|k| (k as f64).powf(e)).collect();
    Trace::from_iterates("synthetic", xs, fs, Status::MaxIters)
}

#[test]
fn kl_exponent_recovered_on_synthetic_decay() {
    for theta in [0.55, 0.6, 0.75, 0.9] {
        let fit = estimate_kl_exponent(&synthetic_trace(theta, 4000), 0.0, 0.5, None).unwrap();
        assert!((fit.theta - theta).abs() <= 0.01, "theta {theta}: fitted {}", fit.theta);
        assert!(fit.r_squared >= 0.999);
        assert!(fit.lipschitz_assumed);
    }
}

#[test]
fn custom_problem_runs_without_zoo() {
    let g = MaxAffine::new(vec![(-1.0, 0.0), (0.0, 0.0), (1.0, -1.0)]).to_oracle();
    let h = MaxAffine::new(vec![(-1.0, 0.0), (0.0, 0.0)]).to_oracle();
    let p = DcProblem::new("ex2_generic", 1, g, h);
    let t = run_dca(&p, &[0.3], &Default::default()).unwrap();
    assert!(t.records.iter().all(|r| r.f.is_finite()));
}

//! Values computed independently (high-precision arithmetic) and frozen here.

use dcakit_core::subsolver::{cardano_from_slope, cardano_update, solve_subproblem, solve_x_plus_cube, SubsolverConfig};
use dcakit_core::zoo::{ex1_good_generic, quartic_generic, zoo_build};
use dcakit_core::Status;

// root of x + 1 = 1/(2 sqrt(x)), the first step from x0 = 1
const EX1_GOOD_X1: f64 = 0.17965204298588821;
// root of x + x^3 = 1/2
const QUARTIC_X1: f64 = 0.42385379906978327;

#[test]
fn ex1_good_first_iterate_closed_form() {
    let x1 = cardano_update(1.0).unwrap();
    assert!((x1 - EX1_GOOD_X1).abs() <= 1e-15, "x1 = {x1:.17}");
    assert!((cardano_from_slope(-1.0) - EX1_GOOD_X1).abs() <= 1e-15);
}

#[test]
fn ex1_good_first_iterate_bisection() {
    let p = ex1_good_generic();
    let res = solve_subproblem(&p, &[-1.0], &[1.0], &SubsolverConfig::default());
    assert!((res.x_next[0] - EX1_GOOD_X1).abs() <= 1e-10, "x1 = {:.17}", res.x_next[0]);
}

#[test]
fn ex1_good_run_starts_with_frozen_value() {
    let t = zoo_build("ex1_good").unwrap().run();
    assert!((t.records[1].x[0] - EX1_GOOD_X1).abs() <= 1e-15);
    assert_eq!(t.status, Status::MaxIters);
}

#[test]
fn quartic_first_iterate() {
    assert!((solve_x_plus_cube(0.5) - QUARTIC_X1).abs() <= 1e-15);
    let t = zoo_build("quartic").unwrap().run();
    assert_eq!(t.records[0].y.as_deref(), Some(&[0.5][..]));
    assert!((t.records[1].x[0] - QUARTIC_X1).abs() <= 1e-15);
    let p = quartic_generic();
    let res = solve_subproblem(&p, &[0.5], &[0.5], &SubsolverConfig::default());
    assert!((res.x_next[0] - QUARTIC_X1).abs() <= 1e-10);
}

#[test]
fn quadratic_halves_each_step() {
    let t = zoo_build("quadratic").unwrap().run();
    for (k, r) in t.records.iter().take(20).enumerate() {
        assert_eq!(r.x[0], 0.5f64.powi(k as i32));
    }
}

#[test]
fn ex1_bad_first_step() {
    let t = zoo_build("ex1_bad").unwrap().run();
    assert_eq!(t.records[0].y, Some(vec![-0.5]));
    assert_eq!(t.records[1].x, vec![0.0]);
    assert_eq!(t.records[1].f, 0.0);
}

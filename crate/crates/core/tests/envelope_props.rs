use alphaconvex::{
    check_alpha_convex, compare_fields, fixed_point_oracle, make_alpha, parse_datum, Alpha,
    EnvelopeProblem, Field, Schedule, SolverSettings, StrictlyConvexDomain,
};
use proptest::prelude::*;

const H: f64 = 1.0 / 16.0;

fn alpha(a: f64) -> Alpha {
    make_alpha(a).unwrap()
}

fn solve(datum: &str, a: f64, h: f64) -> Field {
    let d = StrictlyConvexDomain::unit_disc();
    let g = parse_datum(datum).unwrap();
    let r = EnvelopeProblem::new(&d, &g, h, 2)
        .unwrap()
        .solve(alpha(a), &SolverSettings::default(), None)
        .unwrap();
    assert!(r.converged);
    r.field
}

fn le(f1: &Field, f2: &Field, tol: f64) -> bool {
    f1.values()
        .iter()
        .zip(f2.values())
        .all(|(a, b)| *a <= b + tol)
}

#[test]
fn envelope_dominates_affine_minorant_and_stays_below_max() {
    for a in [0.0, 0.5, 1.0] {
        let f = solve("x + y^2", a, H);
        for (z, v) in f.grid().points().zip(f.values()) {
            assert!(*v >= z[0] - 1e-9);
            assert!(*v <= 1.25 + 1e-9);
        }
    }
}

#[test]
fn schedules_agree() {
    let d = StrictlyConvexDomain::ellipse([0.0, 0.0], 1.0, 0.7).unwrap();
    let g = parse_datum("sin(3*theta)").unwrap();
    let p = EnvelopeProblem::new(&d, &g, H, 2).unwrap();
    for a in [0.0, 0.5, 1.0] {
        let s = SolverSettings::default();
        let cyc = p.solve(alpha(a), &s, None).unwrap();
        let fwd = p
            .solve(alpha(a), &s.with_schedule(Schedule::ForwardOnly), None)
            .unwrap();
        let diff = compare_fields(&cyc.field, &fwd.field).unwrap().sup_diff;
        assert!(diff <= 10.0 * s.tol, "alpha {a}: {diff}");
    }
}

#[test]
fn matches_fixed_point_on_small_grid() {
    let d = StrictlyConvexDomain::unit_disc();
    let g = parse_datum("x*y + 0.5*x").unwrap();
    for a in [0.3, 0.8] {
        let oracle = fixed_point_oracle(&d, &g, alpha(a), 0.25, 2).unwrap();
        let s = SolverSettings::default().with_tol(1e-15);
        let r = EnvelopeProblem::new(&d, &g, 0.25, 2)
            .unwrap()
            .solve(alpha(a), &s, None)
            .unwrap();
        assert!(compare_fields(&r.field, &oracle).unwrap().sup_diff <= 1e-12);
    }
}

#[test]
fn warm_start_reaches_same_envelope() {
    let d = StrictlyConvexDomain::unit_disc();
    let g = parse_datum("x^3").unwrap();
    let p = EnvelopeProblem::new(&d, &g, H, 2).unwrap();
    let s = SolverSettings::default();
    let upper = p.solve(alpha(0.25), &s, None).unwrap();
    let cold = p.solve(alpha(0.5), &s, None).unwrap();
    let warm = p.solve(alpha(0.5), &s, Some(&upper.field)).unwrap();
    assert!(compare_fields(&cold.field, &warm.field).unwrap().sup_diff <= 10.0 * s.tol);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn envelopes_are_ordered_and_certified(a1 in 0.0..=1.0f64, a2 in 0.0..=1.0f64, shift in 0.0..0.5f64) {
        let (small, large) = if a1 <= a2 { (a1, a2) } else { (a2, a1) };
        let upper = solve("x^3 - x*y", small, H);
        let lower = solve("x^3 - x*y", large, H);
        prop_assert!(le(&lower, &upper, 1e-9));
        let shifted = solve(&format!("x^3 - x*y + {shift}"), large, H);
        prop_assert!(le(&lower, &shifted, 1e-9));
        let g = parse_datum("x^3 - x*y").unwrap();
        let p = EnvelopeProblem::new(&StrictlyConvexDomain::unit_disc(), &g, H, 2).unwrap();
        prop_assert!(check_alpha_convex(&lower, alpha(large), p.arms(), 1e-9).is_empty());
    }

    #[test]
    fn sandwiched_between_endpoints(a in 0.0..=1.0f64) {
        let top = solve("cos(theta) * sin(2*theta)", 0.0, H);
        let bottom = solve("cos(theta) * sin(2*theta)", 1.0, H);
        let mid = solve("cos(theta) * sin(2*theta)", a, H);
        prop_assert!(le(&bottom, &mid, 1e-9) && le(&mid, &top, 1e-9));
    }
}

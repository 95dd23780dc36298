use alphaconvex::{build_grid, StrictlyConvexDomain};
use proptest::prelude::*;

fn domains() -> impl Strategy<Value = StrictlyConvexDomain> {
    prop_oneof![
        (0.2..3.0f64).prop_map(|r| StrictlyConvexDomain::disc([0.3, -0.1], r).unwrap()),
        (0.3..2.0f64, 0.3..2.0f64).prop_map(|(a, b)| StrictlyConvexDomain::ellipse(
            [0.0, 0.0],
            a,
            b
        )
        .unwrap()),
        (0.5..2.0f64, 0.5..2.0f64, 1.5..6.0f64)
            .prop_map(|(a, b, p)| StrictlyConvexDomain::superellipse([0.0, 0.0], a, b, p).unwrap()),
    ]
}

proptest! {
    #[test]
    fn ray_exit_lands_on_boundary(d in domains(), s in -0.8..0.8f64, t in -0.8..0.8f64, angle in 0.0..std::f64::consts::TAU) {
        let c = d.center();
        let z = d.boundary_point(angle);
        let inner = [c[0] + s.abs() * (z[0] - c[0]), c[1] + s.abs() * (z[1] - c[1])];
        let v = [t.cos(), t.sin()];
        let (p, dist) = d.ray_exit(inner, v).unwrap();
        prop_assert!((d.gauge(p) - 1.0).abs() <= 1e-9);
        prop_assert!(dist > 0.0 && dist <= d.diameter() + 1e-9);
    }

    #[test]
    fn grid_nodes_are_interior(d in domains(), k in 3..6u32) {
        let h = d.diameter() / f64::from(1 << k);
        let grid = build_grid(&d, h).unwrap();
        prop_assert!(!grid.is_empty());
        prop_assert!(grid.points().all(|z| d.contains(z)));
    }
}

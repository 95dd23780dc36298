//! Strictly convex planar domains and boundary data.
//!
//! Domains are described by a gauge `rho` centred at the domain centre: the
//! domain is `{rho < 1}` and its boundary `{rho = 1}`. Boundary points are
//! parameterised by the angle of the ray from the centre.

use crate::error::{Error, Result};
use crate::expr::{self, Expr};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

pub type Point = [f64; 2];

/// Slack of the strict membership test.
pub const MEMBERSHIP_SLACK: f64 = 1e-14;

/// Number of boundary samples used for data extrema and validation.
pub const BOUNDARY_SAMPLES: usize = 4096;

const BISECTION_CAP: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Shape {
    Disc { radius: f64 },
    Ellipse { semi_axes: [f64; 2] },
    Superellipse { semi_axes: [f64; 2], exponent: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrictlyConvexDomain {
    center: Point,
    shape: Shape,
}

impl StrictlyConvexDomain {
    pub fn new(center: Point, shape: Shape) -> Result<Self> {
        if !(center[0].is_finite() && center[1].is_finite()) {
            return Err(Error::Domain(format!("non-finite centre {center:?}")));
        }
        let positive = |v: f64| v > 0.0 && v.is_finite();
        match shape {
            Shape::Disc { radius } if !positive(radius) => {
                return Err(Error::Domain(format!(
                    "disc radius must be positive, got {radius}"
                )))
            }
            Shape::Ellipse { semi_axes: [a, b] } if !(positive(a) && positive(b)) => {
                return Err(Error::Domain(format!(
                    "ellipse semi-axes must be positive, got ({a}, {b})"
                )))
            }
            Shape::Superellipse {
                semi_axes: [a, b],
                exponent,
            } => {
                if !(positive(a) && positive(b)) {
                    return Err(Error::Domain(format!(
                        "superellipse semi-axes must be positive, got ({a}, {b})"
                    )));
                }
                // p = 1 is a rhombus and p = inf a rectangle; neither is strictly convex.
                if !(exponent > 1.0 && exponent.is_finite()) {
                    return Err(Error::Domain(format!(
                        "superellipse exponent must be finite and > 1, got {exponent}"
                    )));
                }
            }
            _ => {}
        }
        Ok(Self { center, shape })
    }

    pub fn disc(center: Point, radius: f64) -> Result<Self> {
        Self::new(center, Shape::Disc { radius })
    }

    pub fn unit_disc() -> Self {
        Self::disc([0.0, 0.0], 1.0).expect("unit disc")
    }

    pub fn ellipse(center: Point, a: f64, b: f64) -> Result<Self> {
        Self::new(center, Shape::Ellipse { semi_axes: [a, b] })
    }

    pub fn superellipse(center: Point, a: f64, b: f64, exponent: f64) -> Result<Self> {
        Self::new(
            center,
            Shape::Superellipse {
                semi_axes: [a, b],
                exponent,
            },
        )
    }

    pub fn center(&self) -> Point {
        self.center
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn gauge(&self, z: Point) -> f64 {
        let dx = z[0] - self.center[0];
        let dy = z[1] - self.center[1];
        match self.shape {
            Shape::Disc { radius } => dx.hypot(dy) / radius,
            Shape::Ellipse { semi_axes: [a, b] } => (dx / a).hypot(dy / b),
            Shape::Superellipse {
                semi_axes: [a, b],
                exponent: p,
            } => {
                let u = (dx / a).abs();
                let v = (dy / b).abs();
                let m = u.max(v);
                if m == 0.0 {
                    0.0
                } else {
                    m * ((u / m).powf(p) + (v / m).powf(p)).powf(1.0 / p)
                }
            }
        }
    }

    pub fn contains(&self, z: Point) -> bool {
        self.gauge(z) < 1.0 - MEMBERSHIP_SLACK
    }

    /// Diameter of the domain; for superellipses an upper bound that is exact
    /// when the semi-axes agree.
    pub fn diameter(&self) -> f64 {
        match self.shape {
            Shape::Disc { radius } => 2.0 * radius,
            Shape::Ellipse { semi_axes: [a, b] } => 2.0 * a.max(b),
            // Squarish shapes (p > 2) reach farthest along the diagonal.
            Shape::Superellipse {
                semi_axes: [a, b],
                exponent: p,
            } => 2.0 * a.max(b) * 2.0_f64.powf((0.5 - 1.0 / p).max(0.0)),
        }
    }

    /// Exit point of the ray `z + s v`, `s > 0`, and the distance travelled.
    pub fn ray_exit(&self, z: Point, v: Point) -> Result<(Point, f64)> {
        if !self.contains(z) {
            return Err(Error::Domain(format!("ray origin {z:?} is not interior")));
        }
        let norm = v[0].hypot(v[1]);
        if norm.is_nan() || (norm - 1.0).abs() > 1e-12 {
            return Err(Error::Precondition(format!(
                "ray direction must be a unit vector, |v| = {norm}"
            )));
        }
        let at = |s: f64| [z[0] + s * v[0], z[1] + s * v[1]];
        let mut lo = 0.0;
        let mut hi = self.diameter() / 1024.0;
        while self.gauge(at(hi)) < 1.0 {
            lo = hi;
            hi *= 2.0;
        }
        for _ in 0..BISECTION_CAP {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.gauge(at(mid)) < 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let s = if (self.gauge(at(lo)) - 1.0).abs() <= (self.gauge(at(hi)) - 1.0).abs() {
            lo
        } else {
            hi
        };
        Ok((at(s), s))
    }

    /// Boundary point on the ray from the centre at angle `theta`.
    pub fn boundary_point(&self, theta: f64) -> Point {
        let (p, _) = self
            .ray_exit(self.center, [theta.cos(), theta.sin()])
            .expect("the centre is interior");
        p
    }

    /// Ray angle of `p` seen from the centre, in `[0, 2 pi)`.
    pub fn theta_of(&self, p: Point) -> f64 {
        let t = (p[1] - self.center[1]).atan2(p[0] - self.center[0]);
        if t < 0.0 {
            (t + TAU) % TAU
        } else {
            t
        }
    }

    /// Whether the closed ball of radius `r` around `z` lies inside the domain.
    ///
    /// Exact for discs; other shapes are tested on 64 points of the circle.
    pub fn ball_inside(&self, z: Point, r: f64) -> bool {
        if let Shape::Disc { radius } = self.shape {
            let d = (z[0] - self.center[0]).hypot(z[1] - self.center[1]);
            return d + r < radius;
        }
        self.contains(z)
            && (0..64).all(|i| {
                let t = TAU * i as f64 / 64.0;
                self.contains([z[0] + r * t.cos(), z[1] + r * t.sin()])
            })
    }

    /// `m` boundary points uniformly spaced in the ray angle.
    pub fn boundary_samples(&self, m: usize) -> Vec<(f64, Point)> {
        (0..m)
            .map(|i| {
                let theta = TAU * i as f64 / m as f64;
                (theta, self.boundary_point(theta))
            })
            .collect()
    }
}

/// Variable names bound when evaluating boundary data.
pub const DATUM_VARIABLES: &[&str] = &["x", "y", "theta"];

/// Continuous boundary datum `g`, evaluated at boundary points.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryDatum {
    source: String,
    expr: Expr,
}

impl BoundaryDatum {
    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn constant(c: f64) -> Self {
        Self {
            source: format!("{c:?}"),
            expr: Expr::Num(c),
        }
    }

    /// Evaluates at boundary point `p`, binding `theta` to its ray angle.
    pub fn eval(&self, domain: &StrictlyConvexDomain, p: Point) -> f64 {
        self.expr.eval(&[p[0], p[1], domain.theta_of(p)])
    }

    pub fn eval_theta(&self, domain: &StrictlyConvexDomain, theta: f64) -> (Point, f64) {
        let p = domain.boundary_point(theta);
        (p, self.expr.eval(&[p[0], p[1], theta]))
    }

    /// Extrema over `BOUNDARY_SAMPLES` uniformly spaced boundary points.
    /// Fails if any sample is not finite.
    pub fn sampled_range(&self, domain: &StrictlyConvexDomain) -> Result<(f64, f64)> {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (theta, p) in domain.boundary_samples(BOUNDARY_SAMPLES) {
            let g = self.expr.eval(&[p[0], p[1], theta]);
            if !g.is_finite() {
                return Err(Error::Domain(format!(
                    "boundary datum `{}` is not finite at theta = {theta}",
                    self.source
                )));
            }
            lo = lo.min(g);
            hi = hi.max(g);
        }
        Ok((lo, hi))
    }
}

pub fn parse_datum(text: &str) -> Result<BoundaryDatum> {
    let expr = expr::parse(text, DATUM_VARIABLES)?;
    Ok(BoundaryDatum {
        source: text.to_string(),
        expr,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn domains() -> Vec<StrictlyConvexDomain> {
        vec![
            StrictlyConvexDomain::unit_disc(),
            StrictlyConvexDomain::disc([0.3, -1.0], 0.7).unwrap(),
            StrictlyConvexDomain::ellipse([0.0, 0.0], 2.0, 1.0).unwrap(),
            StrictlyConvexDomain::superellipse([1.0, 1.0], 1.0, 0.5, 4.0).unwrap(),
            StrictlyConvexDomain::superellipse([0.0, 0.0], 1.0, 1.0, 1.5).unwrap(),
        ]
    }

    fn close(p: Point, q: Point, tol: f64) -> bool {
        (p[0] - q[0]).abs() <= tol && (p[1] - q[1]).abs() <= tol
    }

    #[test]
    fn contains_examples() {
        let disc = StrictlyConvexDomain::unit_disc();
        assert!(disc.contains([0.0, 0.0]));
        assert!(!disc.contains([1.0, 0.0]));
        let ell = StrictlyConvexDomain::ellipse([0.0, 0.0], 2.0, 1.0).unwrap();
        assert!(ell.contains([1.5, 0.0]));
        assert!(!ell.contains([0.0, 1.0]));
    }

    #[test]
    fn rejects_non_strictly_convex_shapes() {
        assert!(StrictlyConvexDomain::superellipse([0.0, 0.0], 1.0, 1.0, 1.0).is_err());
        assert!(StrictlyConvexDomain::superellipse([0.0, 0.0], 1.0, 1.0, f64::INFINITY).is_err());
        assert!(StrictlyConvexDomain::disc([0.0, 0.0], 0.0).is_err());
        assert!(StrictlyConvexDomain::ellipse([0.0, 0.0], 1.0, -1.0).is_err());
    }

    #[test]
    fn ray_exit_examples() {
        let disc = StrictlyConvexDomain::unit_disc();
        let (p, s) = disc.ray_exit([0.0, 0.0], [1.0, 0.0]).unwrap();
        assert!(close(p, [1.0, 0.0], 1e-12) && (s - 1.0).abs() < 1e-12);
        let (p, s) = disc.ray_exit([0.5, 0.0], [1.0, 0.0]).unwrap();
        assert!(close(p, [1.0, 0.0], 1e-12) && (s - 0.5).abs() < 1e-12);
        let ell = StrictlyConvexDomain::ellipse([0.0, 0.0], 2.0, 1.0).unwrap();
        let (p, s) = ell.ray_exit([0.0, 0.0], [0.0, 1.0]).unwrap();
        assert!(close(p, [0.0, 1.0], 1e-12) && (s - 1.0).abs() < 1e-12);
        assert!(matches!(
            disc.ray_exit([1.0, 0.0], [1.0, 0.0]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            disc.ray_exit([0.0, 0.0], [2.0, 0.0]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn boundary_point_examples() {
        let disc = StrictlyConvexDomain::unit_disc();
        assert!(close(disc.boundary_point(0.0), [1.0, 0.0], 1e-12));
        assert!(close(disc.boundary_point(FRAC_PI_2), [0.0, 1.0], 1e-12));
        let ell = StrictlyConvexDomain::ellipse([0.0, 0.0], 2.0, 1.0).unwrap();
        assert!(close(ell.boundary_point(0.0), [2.0, 0.0], 1e-12));
        for d in domains() {
            for (theta, p) in d.boundary_samples(97) {
                assert!((d.gauge(p) - 1.0).abs() <= 1e-12);
                assert!((d.theta_of(p) - theta).abs() < 1e-9 || theta == 0.0);
            }
        }
    }

    #[test]
    fn ray_exit_brackets_the_boundary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in domains() {
            let c = d.center();
            for _ in 0..500 {
                let r: f64 = rng.gen_range(0.0..0.95);
                let theta: f64 = rng.gen_range(0.0..TAU);
                let q = d.boundary_point(theta);
                let z = [c[0] + r * (q[0] - c[0]), c[1] + r * (q[1] - c[1])];
                let phi: f64 = rng.gen_range(0.0..TAU);
                let v = [phi.cos(), phi.sin()];
                let (p, s) = d.ray_exit(z, v).unwrap();
                assert!(s > 0.0);
                assert!((d.gauge(p) - 1.0).abs() <= 1e-12);
                assert!(d.contains([z[0] + (s - 1e-9) * v[0], z[1] + (s - 1e-9) * v[1]]));
                assert!(!d.contains([z[0] + (s + 1e-9) * v[0], z[1] + (s + 1e-9) * v[1]]));
            }
        }
    }

    #[test]
    fn chords_between_boundary_points_are_interior() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in domains() {
            for _ in 0..1000 {
                let p = d.boundary_point(rng.gen_range(0.0..TAU));
                let q = d.boundary_point(rng.gen_range(0.0..TAU));
                if close(p, q, 1e-9) {
                    continue;
                }
                let t: f64 = rng.gen_range(0.01..0.99);
                let z = [t * p[0] + (1.0 - t) * q[0], t * p[1] + (1.0 - t) * q[1]];
                assert!(d.contains(z), "{d:?} {p:?} {q:?} {t}");
            }
        }
    }

    #[test]
    fn diameter_bounds_every_chord() {
        for d in domains() {
            let pts = d.boundary_samples(256);
            let mut widest = 0.0_f64;
            for (_, p) in &pts {
                for (_, q) in &pts {
                    widest = widest.max((p[0] - q[0]).hypot(p[1] - q[1]));
                }
            }
            assert!(widest <= d.diameter() + 1e-12);
            let slack = if matches!(d.shape(), Shape::Superellipse { .. }) {
                0.75
            } else {
                0.98
            };
            assert!(widest >= slack * d.diameter());
        }
    }

    #[test]
    fn datum_examples() {
        let disc = StrictlyConvexDomain::unit_disc();
        assert_eq!(parse_datum("x").unwrap().eval(&disc, [1.0, 0.0]), 1.0);
        let (_, g) = parse_datum("cos(2*theta)")
            .unwrap()
            .eval_theta(&disc, FRAC_PI_2);
        assert!((g + 1.0).abs() < 1e-15);
        let (_, g) = parse_datum("x^3").unwrap().eval_theta(&disc, PI);
        assert!((g + 1.0).abs() < 1e-12);
        let g = parse_datum("theta").unwrap().eval(&disc, [0.0, -1.0]);
        assert!((g - 1.5 * PI).abs() < 1e-15);
    }

    #[test]
    fn datum_is_deterministic_and_validated() {
        let disc = StrictlyConvexDomain::unit_disc();
        let g = parse_datum("sin(3*theta) + x*y").unwrap();
        let p = disc.boundary_point(1.234);
        assert_eq!(g.eval(&disc, p).to_bits(), g.eval(&disc, p).to_bits());
        let (lo, hi) = parse_datum("x").unwrap().sampled_range(&disc).unwrap();
        assert!((lo + 1.0).abs() < 1e-12 && (hi - 1.0).abs() < 1e-12);
        assert!(parse_datum("1 / y").unwrap().sampled_range(&disc).is_err());
        assert!(matches!(parse_datum("x+*y"), Err(Error::Parse(_))));
    }
}

//! Certification and diagnostics for computed fields.

use crate::envelope::{chord_update, Field};
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::lattice::ArmTable;
use crate::scalar::Alpha;
use serde::Serialize;

/// Tolerance of the orderings reported by `compare_fields`.
pub const ORDER_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub node: usize,
    pub point: Point,
    pub direction: [i64; 2],
    pub chord: f64,
    pub value: f64,
    pub deficit: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ViolationReport {
    pub tol: f64,
    pub checked: usize,
    /// Largest `value - chord` over every node and line, listed or not.
    pub worst_deficit: f64,
    pub violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Tests `u(z) <= chord + tol` on every stencil line of every node.
pub fn check_alpha_convex(
    field: &Field,
    alpha: Alpha,
    arms: &ArmTable,
    tol: f64,
) -> ViolationReport {
    let u = field.values();
    let grid = arms.grid();
    let dirs = arms.directions();
    let mut worst = f64::NEG_INFINITY;
    let mut violations = Vec::new();
    let mut checked = 0;
    for n in 0..u.len() {
        for (k, line) in arms.node_lines(n).iter().enumerate() {
            let chord = chord_update(alpha, line.minus.value(u), line.plus.value(u), line.t0);
            let deficit = u[n] - chord;
            worst = worst.max(deficit);
            checked += 1;
            if deficit > tol {
                violations.push(Violation {
                    node: n,
                    point: grid.point(n),
                    direction: dirs.get(k),
                    chord,
                    value: u[n],
                    deficit,
                });
            }
        }
    }
    ViolationReport {
        tol,
        checked,
        worst_deficit: worst,
        violations,
    }
}

/// Centred differences along the axes, one-sided where a neighbour is missing.
pub fn gradient(field: &Field) -> Vec<[f64; 2]> {
    let grid = field.grid();
    let u = field.values();
    let h = grid.h();
    (0..u.len())
        .map(|n| {
            let [i, j] = grid.ij(n);
            let axis = |di: i64, dj: i64| {
                let fwd = grid.index_of([i + di, j + dj]);
                let back = grid.index_of([i - di, j - dj]);
                match (back, fwd) {
                    (Some(b), Some(f)) => (u[f] - u[b]) / (2.0 * h),
                    (None, Some(f)) => (u[f] - u[n]) / h,
                    (Some(b), None) => (u[n] - u[b]) / h,
                    (None, None) => 0.0,
                }
            };
            [axis(1, 0), axis(0, 1)]
        })
        .collect()
}

/// `pi(z) = value0 + ln(1 + C t) / K` with `t = <z - base, nu>`; affine for `alpha = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaHyperplane {
    pub base: Point,
    pub nu: Point,
    pub value0: f64,
    pub slope_c: f64,
    #[serde(serialize_with = "alpha_value")]
    pub alpha: Alpha,
}

fn alpha_value<S: serde::Serializer>(a: &Alpha, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(a.value())
}

impl AlphaHyperplane {
    fn coordinate(&self, z: Point) -> f64 {
        (z[0] - self.base[0]) * self.nu[0] + (z[1] - self.base[1]) * self.nu[1]
    }

    /// Lower end of the admissible range of `<z - base, nu>`.
    pub fn lower_limit(&self) -> f64 {
        match self.alpha.k() {
            Some(k) if k > 0.0 && self.slope_c > 0.0 => -1.0 / self.slope_c,
            _ => f64::NEG_INFINITY,
        }
    }

    pub fn value(&self, z: Point) -> Result<f64> {
        let t = self.coordinate(z);
        if t <= self.lower_limit() {
            return Err(Error::Domain(format!(
                "{z:?} lies outside the half-plane of definition"
            )));
        }
        Ok(match self.alpha.k() {
            Some(k) if k > 0.0 => self.value0 + (self.slope_c * t).ln_1p() / k,
            _ => self.value0 + self.slope_c * t,
        })
    }

    pub fn gradient_at_base(&self) -> Point {
        let s = match self.alpha.k() {
            Some(k) if k > 0.0 => self.slope_c / k,
            _ => self.slope_c,
        };
        [s * self.nu[0], s * self.nu[1]]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TouchCertificate {
    pub plane: AlphaHyperplane,
    /// `max (pi - u)` over nodes where the plane is defined with margin.
    pub gap: f64,
    pub gap_at_base: f64,
    pub worst_node: usize,
    pub nodes_checked: usize,
}

/// Alpha-hyperplane through `(z0, u(z0))` matching the discrete gradient,
/// with the signed gap by which it exceeds the field.
pub fn support_hyperplane(
    field: &Field,
    alpha: Alpha,
    z0: usize,
    delta_margin: f64,
) -> Result<TouchCertificate> {
    if alpha.is_quasiconvex() {
        return Err(Error::Unsupported(
            "alpha-hyperplanes need alpha > 0".into(),
        ));
    }
    let grid = field.grid();
    if z0 >= grid.len() {
        return Err(Error::Domain(format!("node {z0} is not on the grid")));
    }
    let u = field.values();
    let du = gradient(field)[z0];
    let norm = du[0].hypot(du[1]);
    let (nu, slope) = if norm > 0.0 {
        ([du[0] / norm, du[1] / norm], norm)
    } else {
        ([1.0, 0.0], 0.0)
    };
    let k = alpha.k().unwrap_or(0.0);
    let slope_c = if k > 0.0 { k * slope } else { slope };
    let plane = AlphaHyperplane {
        base: grid.point(z0),
        nu,
        value0: u[z0],
        slope_c,
        alpha,
    };
    let cutoff = plane.lower_limit() + delta_margin;
    let mut gap = f64::NEG_INFINITY;
    let mut worst_node = z0;
    let mut nodes_checked = 0;
    for (n, z) in grid.points().enumerate() {
        if plane.coordinate(z) <= cutoff {
            continue;
        }
        let Ok(p) = plane.value(z) else { continue };
        nodes_checked += 1;
        if p - u[n] > gap {
            gap = p - u[n];
            worst_node = n;
        }
    }
    let gap_at_base = plane.value(plane.base)? - u[z0];
    Ok(TouchCertificate {
        plane,
        gap,
        gap_at_base,
        worst_node,
        nodes_checked,
    })
}

/// Largest difference quotient over axis and diagonal neighbour pairs whose
/// nodes both lie farther than `4h` from the boundary.
pub fn lipschitz_estimate(field: &Field) -> f64 {
    let grid = field.grid();
    let u = field.values();
    let h = grid.h();
    let far: Vec<bool> = grid
        .points()
        .map(|z| grid.domain().ball_inside(z, 4.0 * h))
        .collect();
    let mut best = 0.0_f64;
    for n in 0..u.len() {
        if !far[n] {
            continue;
        }
        let [i, j] = grid.ij(n);
        for [di, dj] in [[1, 0], [0, 1], [1, 1], [1, -1]] {
            if let Some(m) = grid.index_of([i + di, j + dj]) {
                if far[m] {
                    let dist = h * ((di * di + dj * dj) as f64).sqrt();
                    best = best.max((u[m] - u[n]).abs() / dist);
                }
            }
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GradientJump {
    pub separation: f64,
    pub max_jump: f64,
}

/// For `r` in `{2h, 4h, 8h}`, the largest `|grad u(z) - grad u(z')|` over node
/// pairs at distance at most `r`, among nodes whose four axis neighbours exist.
pub fn c1_diagnostic(field: &Field) -> Vec<GradientJump> {
    let grid = field.grid();
    let h = grid.h();
    let grad = gradient(field);
    let eligible: Vec<bool> = (0..grid.len())
        .map(|n| {
            let [i, j] = grid.ij(n);
            [[1, 0], [-1, 0], [0, 1], [0, -1]]
                .iter()
                .all(|[di, dj]| grid.index_of([i + di, j + dj]).is_some())
        })
        .collect();
    [2i64, 4, 8]
        .iter()
        .map(|&reach| {
            let mut offsets = Vec::new();
            for dj in 0..=reach {
                for di in -reach..=reach {
                    let forward = dj > 0 || di > 0;
                    if forward && di * di + dj * dj <= reach * reach {
                        offsets.push([di, dj]);
                    }
                }
            }
            let mut jump = 0.0_f64;
            for n in 0..grid.len() {
                if !eligible[n] {
                    continue;
                }
                let [i, j] = grid.ij(n);
                for [di, dj] in &offsets {
                    if let Some(m) = grid.index_of([i + di, j + dj]) {
                        if eligible[m] {
                            let d = (grad[n][0] - grad[m][0]).hypot(grad[n][1] - grad[m][1]);
                            jump = jump.max(d);
                        }
                    }
                }
            }
            GradientJump {
                separation: reach as f64 * h,
                max_jump: jump,
            }
        })
        .collect()
}

/// Samples the conditions under which `f(u)` inherits alpha-convexity from
/// `u`: `f' >= 0` and `alpha f'' + (1 - alpha)(f'^2 - f') >= 0`, on 10^4
/// points of `s_range`.
pub fn check_composition(
    alpha: Alpha,
    f: impl Fn(f64) -> f64,
    f1: impl Fn(f64) -> f64,
    f2: impl Fn(f64) -> f64,
    s_range: (f64, f64),
) -> bool {
    const POINTS: usize = 10_000;
    const SLACK: f64 = 1e-12;
    let (lo, hi) = s_range;
    let a = alpha.value();
    (0..POINTS).all(|i| {
        let s = lo + (hi - lo) * i as f64 / (POINTS - 1) as f64;
        let (d1, d2) = (f1(s), f2(s));
        f(s).is_finite() && d1 >= -SLACK && a * d2 + (1.0 - a) * (d1 * d1 - d1) >= -SLACK
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldComparison {
    pub sup_diff: f64,
    pub f1_le_f2: bool,
    pub f2_le_f1: bool,
}

pub fn compare_fields(f1: &Field, f2: &Field) -> Result<FieldComparison> {
    if **f1.grid() != **f2.grid() {
        return Err(Error::Domain("fields live on different grids".into()));
    }
    let mut out = FieldComparison {
        sup_diff: 0.0,
        f1_le_f2: true,
        f2_le_f1: true,
    };
    for (a, b) in f1.values().iter().zip(f2.values()) {
        out.sup_diff = out.sup_diff.max((a - b).abs());
        out.f1_le_f2 &= *a <= b + ORDER_TOL;
        out.f2_le_f1 &= *b <= a + ORDER_TOL;
    }
    Ok(out)
}

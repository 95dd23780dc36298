//! Independent references for the solver: the convex and quasiconvex
//! envelopes of sampled boundary data, and a plain fixed-point iteration of
//! the discrete operator on tiny grids.

use crate::envelope::{Field, BARRIER_MARGIN};
use crate::error::{Error, Result};
use crate::geometry::{BoundaryDatum, Point, StrictlyConvexDomain};
use crate::lattice::build_stencil;
use crate::scalar::{chord_value, Alpha};

/// Largest sample count for which the convex oracle enumerates triples.
pub const BRUTE_FORCE_LIMIT: usize = 256;
pub const FIXED_POINT_NODE_LIMIT: usize = 200;
pub const FIXED_POINT_TOL: f64 = 1e-14;
pub const FIXED_POINT_MAX_ITER: usize = 1_000_000;

const COLLINEAR_TOL: f64 = 1e-10;
const INSIDE_TOL: f64 = 1e-12;

/// `m` boundary points uniformly spaced in the ray angle, with their data.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySampling {
    pub thetas: Vec<f64>,
    pub points: Vec<Point>,
    pub values: Vec<f64>,
}

impl BoundarySampling {
    pub fn new(domain: &StrictlyConvexDomain, g: &BoundaryDatum, m: usize) -> Result<Self> {
        if m < 16 {
            return Err(Error::Precondition(format!(
                "at least 16 boundary samples are needed, got {m}"
            )));
        }
        let mut out = Self {
            thetas: Vec::with_capacity(m),
            points: Vec::with_capacity(m),
            values: Vec::with_capacity(m),
        };
        for (theta, p) in domain.boundary_samples(m) {
            let v = g.eval(domain, p);
            if !v.is_finite() {
                return Err(Error::Domain(format!(
                    "boundary datum `{}` is not finite at theta = {theta}",
                    g.source()
                )));
            }
            out.thetas.push(theta);
            out.points.push(p);
            out.values.push(v);
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[inline]
fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

/// Barycentric coordinates of `z` in triangle `(a, b, c)`.
#[inline]
fn barycentric(a: Point, b: Point, c: Point, z: Point) -> Option<[f64; 3]> {
    let area = orient(a, b, c);
    if area.abs() <= COLLINEAR_TOL * COLLINEAR_TOL {
        return None;
    }
    let la = orient(z, b, c) / area;
    let lb = orient(a, z, c) / area;
    Some([la, lb, 1.0 - la - lb])
}

fn not_covered(z: Point) -> Error {
    Error::Internal(format!("{z:?} is not covered by the boundary samples"))
}

/// Convex envelope of the sampled data at `z`: the smallest affine
/// interpolation of sample values over triangles or segments containing `z`.
///
/// Triples are enumerated up to `BRUTE_FORCE_LIMIT` samples; beyond that the
/// same minimum is found as a linear programme by the simplex method.
pub fn convex_envelope_oracle(samples: &BoundarySampling, z: Point) -> Result<f64> {
    if samples.len() <= BRUTE_FORCE_LIMIT {
        convex_envelope_brute_force(samples, z)
    } else {
        convex_envelope_simplex(samples, z)
    }
}

pub fn convex_envelope_brute_force(samples: &BoundarySampling, z: Point) -> Result<f64> {
    let p = &samples.points;
    let g = &samples.values;
    let m = p.len();
    let mut best = f64::INFINITY;
    for i in 0..m {
        for j in i + 1..m {
            let len = (p[j][0] - p[i][0]).hypot(p[j][1] - p[i][1]);
            if orient(p[i], p[j], z).abs() <= COLLINEAR_TOL * len {
                let s = ((z[0] - p[i][0]) * (p[j][0] - p[i][0])
                    + (z[1] - p[i][1]) * (p[j][1] - p[i][1]))
                    / (len * len);
                if (-INSIDE_TOL..=1.0 + INSIDE_TOL).contains(&s) {
                    best = best.min((1.0 - s) * g[i] + s * g[j]);
                }
            }
            for k in j + 1..m {
                let Some(l) = barycentric(p[i], p[j], p[k], z) else {
                    continue;
                };
                if l.iter().all(|&x| x >= -INSIDE_TOL) {
                    best = best.min(l[0] * g[i] + l[1] * g[j] + l[2] * g[k]);
                }
            }
        }
    }
    if best.is_finite() {
        Ok(best)
    } else {
        Err(not_covered(z))
    }
}

/// Minimises `sum l_i g_i` subject to `sum l_i p_i = z`, `sum l_i = 1`,
/// `l >= 0`, with triangles of samples as bases. Samples must be ordered
/// by angle around an interior point, as `BoundarySampling` provides.
pub fn convex_envelope_simplex(samples: &BoundarySampling, z: Point) -> Result<f64> {
    let p = &samples.points;
    let g = &samples.values;
    let m = p.len();
    // The fan from sample 0 covers the sample polygon.
    let mut basis = None;
    for k in 1..m - 1 {
        if let Some(l) = barycentric(p[0], p[k], p[k + 1], z) {
            if l.iter().all(|&x| x >= -INSIDE_TOL) {
                basis = Some([0, k, k + 1]);
                break;
            }
        }
    }
    let mut basis = basis.ok_or_else(|| not_covered(z))?;
    let scale = g.iter().fold(1.0_f64, |s, v| s.max(v.abs()));
    let optimality = 1e-13 * scale;
    let mut bland = false;
    for _ in 0..50 * m {
        let [a, b, c] = basis;
        let lambda = barycentric(p[a], p[b], p[c], z)
            .ok_or_else(|| Error::Internal(format!("degenerate simplex basis {basis:?}")))?;
        let mut entering = None;
        let mut most_negative = -optimality;
        for j in 0..m {
            if basis.contains(&j) {
                continue;
            }
            let Some(mu) = barycentric(p[a], p[b], p[c], p[j]) else {
                continue;
            };
            let reduced = g[j] - (mu[0] * g[a] + mu[1] * g[b] + mu[2] * g[c]);
            if reduced < most_negative {
                entering = Some((j, mu));
                if bland {
                    break;
                }
                most_negative = reduced;
            }
        }
        let Some((j, beta)) = entering else {
            return Ok(lambda[0] * g[a] + lambda[1] * g[b] + lambda[2] * g[c]);
        };
        let mut leave = None;
        let mut ratio = f64::INFINITY;
        for i in 0..3 {
            if beta[i] > 1e-15 {
                let r = lambda[i].max(0.0) / beta[i];
                if r < ratio {
                    ratio = r;
                    leave = Some(i);
                }
            }
        }
        let leave = leave.ok_or_else(|| Error::Internal("unbounded simplex step".into()))?;
        bland = ratio <= 1e-15;
        basis[leave] = j;
    }
    Err(Error::Internal(format!(
        "simplex did not terminate at {z:?}"
    )))
}

/// Whether `z` lies in the convex hull of the angle-ordered points `pts`.
fn hull_contains(pts: &[Point], z: Point) -> bool {
    match pts.len() {
        0 => false,
        1 => (pts[0][0] - z[0]).hypot(pts[0][1] - z[1]) <= COLLINEAR_TOL,
        2 => {
            let (a, b) = (pts[0], pts[1]);
            let len = (b[0] - a[0]).hypot(b[1] - a[1]);
            let s = ((z[0] - a[0]) * (b[0] - a[0]) + (z[1] - a[1]) * (b[1] - a[1])) / (len * len);
            orient(a, b, z).abs() <= COLLINEAR_TOL * len && (0.0..=1.0).contains(&s)
        }
        n => (0..n).all(|i| orient(pts[i], pts[(i + 1) % n], z) >= -INSIDE_TOL),
    }
}

/// Quasiconvex envelope of the sampled data at `z`: the smallest sample
/// level whose sublevel samples contain `z` in their convex hull.
pub fn quasiconvex_envelope_oracle(samples: &BoundarySampling, z: Point) -> Result<f64> {
    let g = &samples.values;
    let mut levels = g.clone();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    let mut buf = Vec::with_capacity(g.len());
    let mut contains_at = |level: f64| {
        buf.clear();
        buf.extend(
            samples
                .points
                .iter()
                .zip(g)
                .filter(|(_, &v)| v <= level)
                .map(|(p, _)| *p),
        );
        hull_contains(&buf, z)
    };
    if !contains_at(levels[levels.len() - 1]) {
        return Err(not_covered(z));
    }
    let (mut lo, mut hi) = (0usize, levels.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if contains_at(levels[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(levels[lo])
}

/// Plain Jacobi iteration of the chord-minimum operator from the solver's
/// barrier, on grids of at most `FIXED_POINT_NODE_LIMIT` nodes.
pub fn fixed_point_oracle(
    domain: &StrictlyConvexDomain,
    g: &BoundaryDatum,
    alpha: Alpha,
    h: f64,
    width: u32,
) -> Result<Field> {
    let arms = build_stencil(domain, g, h, width)?;
    let grid = arms.grid().clone();
    if grid.len() > FIXED_POINT_NODE_LIMIT {
        return Err(Error::Domain(format!(
            "fixed-point oracle is limited to {FIXED_POINT_NODE_LIMIT} nodes, grid has {}",
            grid.len()
        )));
    }
    let (_, sampled) = g.sampled_range(domain)?;
    let barrier = sampled.max(arms.boundary_range().1 + BARRIER_MARGIN);
    let mut u = vec![barrier; grid.len()];
    for _ in 0..FIXED_POINT_MAX_ITER {
        let mut next = u.clone();
        for (n, slot) in next.iter_mut().enumerate() {
            for line in arms.node_lines(n) {
                let c = chord_value(alpha, line.minus.value(&u), line.plus.value(&u), line.t0)?;
                *slot = slot.min(c);
            }
        }
        let delta = u.iter().zip(&next).map(|(a, b)| a - b).fold(0.0, f64::max);
        u = next;
        if delta <= FIXED_POINT_TOL {
            return Field::new(grid, u);
        }
    }
    Err(Error::Internal(format!(
        "fixed-point oracle did not settle within {FIXED_POINT_MAX_ITER} iterations"
    )))
}

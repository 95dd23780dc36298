//! Uniform grids, wide-stencil directions and per-node chord arms.

use crate::error::{Error, Result};
use crate::geometry::{BoundaryDatum, Point, StrictlyConvexDomain};
use std::sync::Arc;

const NO_NODE: u32 = u32::MAX;

/// Interior lattice nodes `center + h (i, j)` of a domain, in row-major order
/// (rows of constant `j`, ascending `j`, then ascending `i`).
#[derive(Debug, Clone)]
pub struct Grid {
    domain: StrictlyConvexDomain,
    h: f64,
    half: i64,
    ij: Vec<[i64; 2]>,
    lookup: Vec<u32>,
    column_major: Vec<usize>,
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.h == other.h
    }
}

impl Grid {
    pub fn domain(&self) -> &StrictlyConvexDomain {
        &self.domain
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn len(&self) -> usize {
        self.ij.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ij.is_empty()
    }

    pub fn ij(&self, node: usize) -> [i64; 2] {
        self.ij[node]
    }

    pub fn point(&self, node: usize) -> Point {
        self.lattice_point(self.ij[node])
    }

    pub fn lattice_point(&self, [i, j]: [i64; 2]) -> Point {
        let c = self.domain.center();
        [c[0] + self.h * i as f64, c[1] + self.h * j as f64]
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.len()).map(|n| self.point(n))
    }

    /// Node index of lattice point `(i, j)`, if it is an interior node.
    pub fn index_of(&self, [i, j]: [i64; 2]) -> Option<usize> {
        if i.abs() > self.half || j.abs() > self.half {
            return None;
        }
        let side = 2 * self.half + 1;
        let slot = ((j + self.half) * side + (i + self.half)) as usize;
        match self.lookup[slot] {
            NO_NODE => None,
            n => Some(n as usize),
        }
    }

    /// Node indices ordered by ascending `i`, then ascending `j`.
    pub fn column_major(&self) -> &[usize] {
        &self.column_major
    }
}

pub fn build_grid(domain: &StrictlyConvexDomain, h: f64) -> Result<Grid> {
    let diameter = domain.diameter();
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Domain(format!(
            "grid spacing must be positive, got {h}"
        )));
    }
    if h > diameter / 4.0 {
        return Err(Error::Domain(format!(
            "grid spacing {h} exceeds a quarter of the diameter {diameter}"
        )));
    }
    let half = (0.5 * diameter / h).ceil() as i64 + 1;
    let side = 2 * half + 1;
    let mut lookup = vec![NO_NODE; (side * side) as usize];
    let mut ij = Vec::new();
    let c = domain.center();
    for j in -half..=half {
        for i in -half..=half {
            let z = [c[0] + h * i as f64, c[1] + h * j as f64];
            if domain.contains(z) {
                lookup[((j + half) * side + (i + half)) as usize] = ij.len() as u32;
                ij.push([i, j]);
            }
        }
    }
    if ij.is_empty() {
        return Err(Error::Domain(format!(
            "no interior lattice nodes at spacing {h}"
        )));
    }
    let mut column_major: Vec<usize> = (0..ij.len()).collect();
    column_major.sort_by_key(|&n| (ij[n][0], ij[n][1]));
    Ok(Grid {
        domain: *domain,
        h,
        half,
        ij,
        lookup,
        column_major,
    })
}

/// Primitive lattice vectors of max-norm at most `width`, one per line
/// through the origin, sorted by angle in `[0, pi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionSet {
    width: u32,
    dirs: Vec<[i64; 2]>,
}

impl DirectionSet {
    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    pub fn get(&self, k: usize) -> [i64; 2] {
        self.dirs[k]
    }

    pub fn iter(&self) -> impl Iterator<Item = [i64; 2]> + '_ {
        self.dirs.iter().copied()
    }

    pub fn norm(&self, k: usize) -> f64 {
        let [p, q] = self.dirs[k];
        (p as f64).hypot(q as f64)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn build_directions(width: u32) -> Result<DirectionSet> {
    if width == 0 {
        return Err(Error::Precondition(
            "stencil width must be at least 1".into(),
        ));
    }
    let w = width as i64;
    let mut dirs = Vec::new();
    for q in 0..=w {
        for p in -w..=w {
            // Canonical representative: upper half-plane, or the positive x-axis.
            let canonical = q > 0 || p > 0;
            if canonical && gcd(p, q) == 1 {
                dirs.push([p, q]);
            }
        }
    }
    dirs.sort_by(|a, b| {
        let ta = (a[1] as f64).atan2(a[0] as f64);
        let tb = (b[1] as f64).atan2(b[0] as f64);
        ta.total_cmp(&tb)
    });
    Ok(DirectionSet { width, dirs })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ArmEnd {
    Node(usize),
    Boundary { point: Point, g: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arm {
    pub end: ArmEnd,
    pub length: f64,
}

impl Arm {
    #[inline]
    pub fn value(&self, u: &[f64]) -> f64 {
        match self.end {
            ArmEnd::Node(n) => u[n],
            ArmEnd::Boundary { g, .. } => g,
        }
    }
}

/// The chord through a node along one stencil direction.
///
/// The node sits at parameter `t0` of the chord running from the minus arm
/// endpoint (`t = 0`) to the plus arm endpoint (`t = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StencilLine {
    pub minus: Arm,
    pub plus: Arm,
    pub t0: f64,
}

/// A maximal run of nodes joined by interior arms along one direction,
/// capped by boundary points on both sides.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeLine {
    pub direction: usize,
    pub nodes: Vec<usize>,
    /// Boundary values at the start (minus side) and end (plus side).
    pub g: [f64; 2],
    /// Distances from the boundary points to the first and last node.
    pub caps: [f64; 2],
    /// Node spacing along the line.
    pub step: f64,
}

#[derive(Debug, Clone)]
pub struct ArmTable {
    grid: Arc<Grid>,
    dirs: DirectionSet,
    lines: Vec<StencilLine>,
    lattice_lines: Vec<LatticeLine>,
    boundary_max: f64,
    boundary_min: f64,
}

impl ArmTable {
    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn directions(&self) -> &DirectionSet {
        &self.dirs
    }

    /// All stencil lines of `node`, one per direction.
    #[inline]
    pub fn node_lines(&self, node: usize) -> &[StencilLine] {
        let d = self.dirs.len();
        &self.lines[node * d..(node + 1) * d]
    }

    pub fn line(&self, node: usize, direction: usize) -> &StencilLine {
        &self.lines[node * self.dirs.len() + direction]
    }

    pub fn lattice_lines(&self) -> &[LatticeLine] {
        &self.lattice_lines
    }

    /// Extreme datum values over all boundary arm endpoints.
    pub fn boundary_range(&self) -> (f64, f64) {
        (self.boundary_min, self.boundary_max)
    }
}

pub fn build_arms(grid: Arc<Grid>, g: &BoundaryDatum, dirs: &DirectionSet) -> Result<ArmTable> {
    let domain = *grid.domain();
    let h = grid.h();
    let nd = dirs.len();
    let mut lines = Vec::with_capacity(grid.len() * nd);
    let mut boundary_max = f64::NEG_INFINITY;
    let mut boundary_min = f64::INFINITY;
    for node in 0..grid.len() {
        let z = grid.point(node);
        let [i, j] = grid.ij(node);
        for (k, [p, q]) in dirs.iter().enumerate() {
            let norm = dirs.norm(k);
            let mut arm = |sign: i64| -> Result<Arm> {
                if let Some(n) = grid.index_of([i + sign * p, j + sign * q]) {
                    return Ok(Arm {
                        end: ArmEnd::Node(n),
                        length: norm * h,
                    });
                }
                let v = [sign as f64 * p as f64 / norm, sign as f64 * q as f64 / norm];
                let (point, s) = domain.ray_exit(z, v)?;
                let value = g.eval(&domain, point);
                if !value.is_finite() {
                    return Err(Error::Domain(format!(
                        "boundary datum `{}` is not finite at {point:?}",
                        g.source()
                    )));
                }
                boundary_max = boundary_max.max(value);
                boundary_min = boundary_min.min(value);
                Ok(Arm {
                    end: ArmEnd::Boundary { point, g: value },
                    length: s,
                })
            };
            let minus = arm(-1)?;
            let plus = arm(1)?;
            let t0 = minus.length / (minus.length + plus.length);
            lines.push(StencilLine { minus, plus, t0 });
        }
    }
    let mut lattice_lines = Vec::new();
    for k in 0..nd {
        for start in 0..grid.len() {
            let first = &lines[start * nd + k];
            let ArmEnd::Boundary { g: g0, .. } = first.minus.end else {
                continue;
            };
            let mut nodes = vec![start];
            let mut cur = first;
            while let ArmEnd::Node(n) = cur.plus.end {
                nodes.push(n);
                cur = &lines[n * nd + k];
            }
            let ArmEnd::Boundary { g: g1, .. } = cur.plus.end else {
                unreachable!()
            };
            lattice_lines.push(LatticeLine {
                direction: k,
                nodes,
                g: [g0, g1],
                caps: [first.minus.length, cur.plus.length],
                step: dirs.norm(k) * h,
            });
        }
    }
    Ok(ArmTable {
        grid,
        dirs: dirs.clone(),
        lines,
        lattice_lines,
        boundary_max,
        boundary_min,
    })
}

/// Builds grid, directions and arms in one go.
pub fn build_stencil(
    domain: &StrictlyConvexDomain,
    g: &BoundaryDatum,
    h: f64,
    width: u32,
) -> Result<ArmTable> {
    let grid = Arc::new(build_grid(domain, h)?);
    let dirs = build_directions(width)?;
    build_arms(grid, g, &dirs)
}

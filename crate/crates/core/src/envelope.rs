//! Fixed-point solver for the discrete alpha-convex envelope.
//!
//! The iteration starts from a constant upper barrier and only ever lowers
//! values, so every iterate bounds the envelope from above. Two relaxations
//! are applied:
//!
//! * line passes replace the values along each lattice line by the largest
//!   alpha-convex minorant of the line's data (boundary caps included);
//! * point sweeps lower each node to the smallest chord value through its
//!   stencil arms.
//!
//! Both are monotone and share their fixed points for `alpha > 0`, so the
//! line passes only accelerate the point sweeps. At `alpha = 0` the
//! three-point rule alone admits spurious plateaus and the line passes are
//! what selects the quasiconvex envelope.

use crate::error::{Error, Result};
use crate::geometry::{BoundaryDatum, Point, StrictlyConvexDomain};
use crate::lattice::{build_stencil, ArmTable, Grid, LatticeLine, StencilLine};
use crate::scalar::{chord_eval, Alpha};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Safety margin added to the boundary maximum for the initial barrier.
pub const BARRIER_MARGIN: f64 = 1e-6;
pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 100_000;

/// One value per interior node of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    grid: Arc<Grid>,
    values: Vec<f64>,
}

impl Field {
    pub fn new(grid: Arc<Grid>, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Domain(format!(
                "field has {} values for a grid of {} nodes",
                values.len(),
                grid.len()
            )));
        }
        if let Some(n) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("non-finite field value at node {n}")));
        }
        Ok(Self { grid, values })
    }

    pub fn constant(grid: Arc<Grid>, c: f64) -> Self {
        let values = vec![c; grid.len()];
        Self { grid, values }
    }

    pub fn from_fn(grid: Arc<Grid>, f: impl Fn(Point) -> f64) -> Self {
        let values = grid.points().map(f).collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            grid: self.grid.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Node holding the smallest value (first one on ties).
    pub fn argmin(&self) -> usize {
        let mut best = 0;
        for (n, &v) in self.values.iter().enumerate() {
            if v < self.values[best] {
                best = n;
            }
        }
        best
    }
}

/// Constant upper barrier: the sampled boundary maximum plus `BARRIER_MARGIN`.
pub fn init_field(grid: &Arc<Grid>, g: &BoundaryDatum) -> Result<Field> {
    let (_, hi) = g.sampled_range(grid.domain())?;
    Ok(Field::constant(grid.clone(), hi + BARRIER_MARGIN))
}

/// Value at the node of the one-dimensional solution through the two arm values.
#[inline]
pub fn chord_update(alpha: Alpha, u_minus: f64, u_plus: f64, t0: f64) -> f64 {
    chord_eval(alpha, u_minus, u_plus, t0)
}

#[inline]
fn relax_node(alpha: Alpha, u: &[f64], lines: &[StencilLine], current: f64) -> f64 {
    let mut best = current;
    for line in lines {
        let c = chord_eval(alpha, line.minus.value(u), line.plus.value(u), line.t0);
        if c < best {
            best = c;
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepOrder {
    ForwardRow,
    BackwardRow,
    ForwardColumn,
    BackwardColumn,
}

impl SweepOrder {
    pub const CYCLE: [SweepOrder; 4] = [
        SweepOrder::ForwardRow,
        SweepOrder::BackwardRow,
        SweepOrder::ForwardColumn,
        SweepOrder::BackwardColumn,
    ];
}

/// One in-place Gauss-Seidel sweep; returns the largest decrease.
pub fn sweep(field: &mut Field, alpha: Alpha, arms: &ArmTable, order: SweepOrder) -> f64 {
    let grid = arms.grid().clone();
    let u = &mut field.values;
    let mut delta = 0.0_f64;
    let mut visit = |n: usize| {
        let old = u[n];
        let new = relax_node(alpha, u, arms.node_lines(n), old);
        u[n] = new;
        delta = delta.max(old - new);
    };
    let count = grid.len();
    match order {
        SweepOrder::ForwardRow => (0..count).for_each(&mut visit),
        SweepOrder::BackwardRow => (0..count).rev().for_each(&mut visit),
        SweepOrder::ForwardColumn => grid.column_major().iter().copied().for_each(&mut visit),
        SweepOrder::BackwardColumn => grid
            .column_major()
            .iter()
            .rev()
            .copied()
            .for_each(&mut visit),
    }
    delta
}

/// One Jacobi sweep reading only `field`; returns the new values and the largest decrease.
pub fn jacobi_sweep(field: &Field, alpha: Alpha, arms: &ArmTable) -> (Vec<f64>, f64) {
    let u = &field.values;
    let next: Vec<f64> = (0..u.len())
        .into_par_iter()
        .map(|n| relax_node(alpha, u, arms.node_lines(n), u[n]))
        .collect();
    let delta = u.iter().zip(&next).map(|(a, b)| a - b).fold(0.0, f64::max);
    (next, delta)
}

/// Largest alpha-convex minorant of the data along one lattice line,
/// evaluated at the line's nodes and written to `out`.
fn line_minorant(alpha: Alpha, line: &LatticeLine, u: &[f64], out: &mut Vec<f64>) {
    let n = line.nodes.len();
    let len = n + 2;
    let pos = |k: usize| -> f64 {
        if k == 0 {
            0.0
        } else if k == len - 1 {
            line.caps[0] + (n - 1) as f64 * line.step + line.caps[1]
        } else {
            line.caps[0] + (k - 1) as f64 * line.step
        }
    };
    let val = |k: usize| -> f64 {
        if k == 0 {
            line.g[0]
        } else if k == len - 1 {
            line.g[1]
        } else {
            u[line.nodes[k - 1]]
        }
    };
    out.clear();
    if alpha.is_quasiconvex() {
        // max(prefix minimum, suffix minimum) is the largest quasiconvex minorant.
        let mut run = line.g[0];
        for k in 1..=n {
            run = run.min(val(k));
            out.push(run);
        }
        let mut run = line.g[1];
        for k in (1..=n).rev() {
            run = run.min(val(k));
            out[k - 1] = out[k - 1].max(run);
        }
        return;
    }
    // Lower hull in the coordinates where alpha-chords become straight lines;
    // the chord test is carried out directly on the values.
    let mut hull: Vec<usize> = Vec::with_capacity(len);
    for j in 0..len {
        while hull.len() >= 2 {
            let i = hull[hull.len() - 2];
            let m = hull[hull.len() - 1];
            let t = (pos(m) - pos(i)) / (pos(j) - pos(i));
            if val(m) >= chord_eval(alpha, val(i), val(j), t) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(j);
    }
    for w in hull.windows(2) {
        let (i, k) = (w[0], w[1]);
        if i >= 1 {
            out.push(val(i));
        }
        let (pi, pk) = (pos(i), pos(k));
        let (vi, vk) = (val(i), val(k));
        for m in i + 1..k {
            out.push(chord_eval(alpha, vi, vk, (pos(m) - pi) / (pk - pi)));
        }
    }
}

/// In-place pass over every lattice line; returns the largest decrease.
pub fn line_pass(field: &mut Field, alpha: Alpha, arms: &ArmTable) -> f64 {
    let u = &mut field.values;
    let mut scratch = Vec::new();
    let mut delta = 0.0_f64;
    for line in arms.lattice_lines() {
        line_minorant(alpha, line, u, &mut scratch);
        for (&n, &m) in line.nodes.iter().zip(&scratch) {
            if m < u[n] {
                delta = delta.max(u[n] - m);
                u[n] = m;
            }
        }
    }
    delta
}

/// Line pass reading only `field`, all lines in parallel.
pub fn jacobi_line_pass(field: &Field, alpha: Alpha, arms: &ArmTable) -> (Vec<f64>, f64) {
    let u = &field.values;
    let proposals: Vec<Vec<f64>> = arms
        .lattice_lines()
        .par_iter()
        .map_init(Vec::new, |scratch, line| {
            line_minorant(alpha, line, u, scratch);
            scratch.clone()
        })
        .collect();
    let mut next = u.clone();
    for (line, vals) in arms.lattice_lines().iter().zip(&proposals) {
        for (&n, &m) in line.nodes.iter().zip(vals) {
            next[n] = next[n].min(m);
        }
    }
    let delta = u.iter().zip(&next).map(|(a, b)| a - b).fold(0.0, f64::max);
    (next, delta)
}

/// Per node `min over lines (chord - u)`, and the largest magnitude.
pub fn residual(field: &Field, alpha: Alpha, arms: &ArmTable) -> (Vec<f64>, f64) {
    let u = &field.values;
    let r: Vec<f64> = (0..u.len())
        .map(|n| relax_node(alpha, u, arms.node_lines(n), f64::INFINITY) - u[n])
        .collect();
    let max = r.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    (r, max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    GaussSeidel,
    Jacobi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Schedule {
    /// Forward row, backward row, forward column, backward column, repeated.
    Cycling,
    ForwardOnly,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverSettings {
    pub width: u32,
    pub tol: f64,
    pub max_iter: usize,
    pub mode: Mode,
    pub schedule: Schedule,
    pub line_passes: bool,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self {
            width: 2,
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
            mode: Mode::GaussSeidel,
            schedule: Schedule::Cycling,
            line_passes: true,
        }
    }
}

impl SolverSettings {
    pub fn with_width(mut self, width: u32) -> Self {
        self.width = width;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_schedule(mut self, schedule: Schedule) -> Self {
        self.schedule = schedule;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::Precondition(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::Precondition("max_iter must be at least 1".into()));
        }
        if self.width == 0 {
            return Err(Error::Precondition(
                "stencil width must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct EnvelopeResult {
    pub field: Field,
    pub converged: bool,
    /// Line passes plus point sweeps.
    pub iterations: usize,
    pub line_passes: usize,
    pub last_sweep_delta: f64,
    pub residual_max: f64,
    pub alpha: Alpha,
    pub h: f64,
    pub width: u32,
    pub tol: f64,
    pub warnings: Vec<String>,
}

/// Grid, stencil and boundary data shared by solves at different `alpha`.
#[derive(Debug, Clone)]
pub struct EnvelopeProblem {
    arms: Arc<ArmTable>,
    barrier: f64,
}

impl EnvelopeProblem {
    pub fn new(
        domain: &StrictlyConvexDomain,
        g: &BoundaryDatum,
        h: f64,
        width: u32,
    ) -> Result<Self> {
        let arms = build_stencil(domain, g, h, width)?;
        Self::from_arms(arms, g)
    }

    pub fn from_arms(arms: ArmTable, g: &BoundaryDatum) -> Result<Self> {
        let sampled = init_field(arms.grid(), g)?.values[0];
        let barrier = sampled.max(arms.boundary_range().1 + BARRIER_MARGIN);
        Ok(Self {
            arms: Arc::new(arms),
            barrier,
        })
    }

    pub fn arms(&self) -> &ArmTable {
        &self.arms
    }

    pub fn grid(&self) -> &Arc<Grid> {
        self.arms.grid()
    }

    pub fn barrier(&self) -> f64 {
        self.barrier
    }

    /// Solves from the barrier, or from `warm` capped by the barrier. A warm
    /// start must lie above the envelope, e.g. an envelope for a smaller alpha.
    pub fn solve(
        &self,
        alpha: Alpha,
        settings: &SolverSettings,
        warm: Option<&Field>,
    ) -> Result<EnvelopeResult> {
        settings.validate()?;
        let grid = self.grid().clone();
        let mut field = match warm {
            Some(w) => {
                if **w.grid() != *grid {
                    return Err(Error::Domain("warm start lives on a different grid".into()));
                }
                w.map(|v| v.min(self.barrier))
            }
            None => Field::constant(grid.clone(), self.barrier),
        };
        let arms = &*self.arms;
        let tol = settings.tol;
        let mut iterations = 0;
        let mut line_passes = 0;
        let mut delta = f64::INFINITY;
        if settings.line_passes {
            while iterations < settings.max_iter {
                delta = match settings.mode {
                    Mode::GaussSeidel => line_pass(&mut field, alpha, arms),
                    Mode::Jacobi => {
                        let (next, d) = jacobi_line_pass(&field, alpha, arms);
                        field.values = next;
                        d
                    }
                };
                iterations += 1;
                line_passes += 1;
                if delta <= tol {
                    break;
                }
            }
        }
        let mut converged = false;
        let mut k = 0;
        while iterations < settings.max_iter {
            delta = match settings.mode {
                Mode::GaussSeidel => {
                    let order = match settings.schedule {
                        Schedule::Cycling => SweepOrder::CYCLE[k % 4],
                        Schedule::ForwardOnly => SweepOrder::ForwardRow,
                    };
                    sweep(&mut field, alpha, arms, order)
                }
                Mode::Jacobi => {
                    let (next, d) = jacobi_sweep(&field, alpha, arms);
                    field.values = next;
                    d
                }
            };
            iterations += 1;
            k += 1;
            if delta <= tol {
                converged = true;
                break;
            }
        }
        let (_, residual_max) = residual(&field, alpha, arms);
        let mut warnings = Vec::new();
        if alpha.is_quasiconvex() {
            warnings.push(
                "alpha = 0: discrete solutions are not unique; the maximal fixed point is reported"
                    .to_string(),
            );
        }
        if !converged {
            warnings.push(format!(
                "no convergence within {} iterations (last delta {delta:e})",
                settings.max_iter
            ));
        }
        Ok(EnvelopeResult {
            field,
            converged,
            iterations,
            line_passes,
            last_sweep_delta: delta,
            residual_max,
            alpha,
            h: grid.h(),
            width: settings.width,
            tol,
            warnings,
        })
    }
}

pub fn solve_envelope(
    domain: &StrictlyConvexDomain,
    g: &BoundaryDatum,
    alpha: Alpha,
    h: f64,
    settings: &SolverSettings,
) -> Result<EnvelopeResult> {
    settings.validate()?;
    EnvelopeProblem::new(domain, g, h, settings.width)?.solve(alpha, settings, None)
}

/// Solves for each `alpha` in ascending order, warm-starting from the
/// previous envelope, which lies above the next one.
pub fn alpha_sweep(
    domain: &StrictlyConvexDomain,
    g: &BoundaryDatum,
    alphas: &[Alpha],
    h: f64,
    settings: &SolverSettings,
) -> Result<Vec<EnvelopeResult>> {
    if alphas.is_empty() {
        return Err(Error::Precondition("alpha list is empty".into()));
    }
    if alphas.windows(2).any(|w| w[0].value() >= w[1].value()) {
        return Err(Error::Precondition(
            "alphas must be strictly ascending".into(),
        ));
    }
    settings.validate()?;
    let problem = EnvelopeProblem::new(domain, g, h, settings.width)?;
    let mut out: Vec<EnvelopeResult> = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        let warm = out.last().map(|r| &r.field);
        let result = problem.solve(alpha, settings, warm)?;
        out.push(result);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::parse_datum;
    use crate::scalar::make_alpha;

    const LN_MID_HALF: f64 = 0.6201145069582775;

    fn alpha(a: f64) -> Alpha {
        make_alpha(a).unwrap()
    }

    fn disc() -> StrictlyConvexDomain {
        StrictlyConvexDomain::unit_disc()
    }

    #[test]
    fn chord_update_examples() {
        assert_eq!(chord_update(alpha(1.0), 0.0, 1.0, 0.5), 0.5);
        assert!((chord_update(alpha(0.5), 0.0, 1.0, 0.5) - LN_MID_HALF).abs() < 1e-15);
        assert_eq!(chord_update(alpha(0.0), 0.0, 1.0, 0.25), 1.0);
    }

    #[test]
    fn init_field_examples() {
        let grid = Arc::new(crate::lattice::build_grid(&disc(), 0.25).unwrap());
        let f = init_field(&grid, &BoundaryDatum::constant(3.0)).unwrap();
        assert!(f.values().iter().all(|&v| v == 3.0 + BARRIER_MARGIN));
        for text in ["x", "cos(2*theta)"] {
            let f = init_field(&grid, &parse_datum(text).unwrap()).unwrap();
            assert!((f.values()[0] - 1.0).abs() < 1e-5);
        }
    }

    #[test]
    fn sweep_only_lowers_values() {
        let g = parse_datum("x").unwrap();
        let p = EnvelopeProblem::new(&disc(), &g, 0.5, 1).unwrap();
        let mut f = Field::constant(p.grid().clone(), p.barrier());
        let before = f.clone();
        let d = sweep(&mut f, alpha(1.0), p.arms(), SweepOrder::ForwardRow);
        assert!(d > 0.0);
        for (a, b) in f.values().iter().zip(before.values()) {
            assert!(a <= b);
        }
    }

    #[test]
    fn envelope_is_a_fixed_point_of_every_sweep() {
        let g = parse_datum("x^3 + 0.2*y").unwrap();
        let p = EnvelopeProblem::new(&disc(), &g, 0.125, 2).unwrap();
        for a in [0.0, 0.3, 1.0] {
            let settings = SolverSettings::default().with_width(2).with_tol(1e-14);
            let r = p.solve(alpha(a), &settings, None).unwrap();
            assert!(r.converged);
            for order in SweepOrder::CYCLE {
                let mut f = r.field.clone();
                assert!(sweep(&mut f, alpha(a), p.arms(), order) <= 1e-14);
            }
            let mut f = r.field.clone();
            assert!(line_pass(&mut f, alpha(a), p.arms()) <= 1e-14);
        }
    }

    #[test]
    fn constant_data_give_constant_envelopes() {
        for a in [0.0, 0.25, 0.5, 1.0] {
            let settings = SolverSettings::default();
            let r = solve_envelope(
                &disc(),
                &BoundaryDatum::constant(5.0),
                alpha(a),
                0.125,
                &settings,
            )
            .unwrap();
            assert!(r.converged);
            assert!(r
                .field
                .values()
                .iter()
                .all(|&v| (v - 5.0).abs() <= settings.tol));
        }
    }

    #[test]
    fn linear_data_are_reproduced() {
        let g = parse_datum("x").unwrap();
        let h = 1.0 / 32.0;
        let settings = SolverSettings::default().with_width(2);
        let r = solve_envelope(&disc(), &g, alpha(0.5), h, &settings).unwrap();
        assert!(r.converged);
        let grid = r.field.grid().clone();
        let err = grid
            .points()
            .zip(r.field.values())
            .map(|(z, v)| (v - z[0]).abs())
            .fold(0.0, f64::max);
        assert!(err <= 2.0 * h, "{err}");
        let (res, _) = residual(
            &r.field,
            alpha(0.5),
            &build_stencil(&disc(), &g, h, 2).unwrap(),
        );
        assert!(res.iter().all(|&v| (-1e-9..=3.0 * h * h).contains(&v)));
    }

    #[test]
    fn residual_examples() {
        let g = parse_datum("x").unwrap();
        let p = EnvelopeProblem::new(&disc(), &g, 0.125, 2).unwrap();
        let r = p
            .solve(alpha(0.5), &SolverSettings::default(), None)
            .unwrap();
        let low = Field::constant(p.grid().clone(), -2.0);
        let (res, _) = residual(&low, alpha(0.5), p.arms());
        assert!(res.iter().all(|&v| v >= 0.0));
        // Nodes with a boundary arm on some line see a chord strictly above the field.
        assert!(res.iter().any(|&v| v > 0.5));
        let mut spiked = r.field.clone();
        let n = p.grid().index_of([1, 2]).unwrap();
        spiked.values_mut()[n] += 1.0;
        let (res, _) = residual(&spiked, alpha(0.5), p.arms());
        assert!(res[n] <= -0.5);
    }

    #[test]
    fn non_convergence_is_flagged() {
        let g = parse_datum("x^3").unwrap();
        let settings = SolverSettings::default().with_max_iter(1);
        let r = solve_envelope(&disc(), &g, alpha(0.5), 0.125, &settings).unwrap();
        assert!(!r.converged);
        assert_eq!(r.iterations, 1);
        assert!(r.last_sweep_delta > settings.tol);
    }

    #[test]
    fn alpha_sweep_examples() {
        let g = parse_datum("x^3").unwrap();
        let settings = SolverSettings::default().with_width(2);
        let alphas: Vec<Alpha> = [0.25, 0.5, 1.0].map(alpha).to_vec();
        let runs = alpha_sweep(&disc(), &g, &alphas, 0.0625, &settings).unwrap();
        for w in runs.windows(2) {
            for (a, b) in w[0].field.values().iter().zip(w[1].field.values()) {
                assert!(a >= &(b - 1e-9));
            }
        }
        let single = alpha_sweep(&disc(), &g, &[alpha(1.0)], 0.0625, &settings).unwrap();
        let direct = solve_envelope(&disc(), &g, alpha(1.0), 0.0625, &settings).unwrap();
        assert_eq!(single[0].field.values(), direct.field.values());
        assert!(alpha_sweep(&disc(), &g, &[alpha(0.5), alpha(0.25)], 0.0625, &settings).is_err());
    }

    #[test]
    fn quasiconvex_line_minorant_removes_plateaus() {
        let g = parse_datum("x").unwrap();
        let p = EnvelopeProblem::new(&disc(), &g, 0.125, 1).unwrap();
        let plateau = Field::constant(p.grid().clone(), p.barrier());
        let mut f = plateau.clone();
        // The three-point rule leaves interior plateau nodes untouched.
        let centre = p.grid().index_of([0, 0]).unwrap();
        sweep(&mut f, alpha(0.0), p.arms(), SweepOrder::ForwardRow);
        assert_eq!(f.values()[centre], plateau.values()[centre]);
        let mut f = plateau;
        line_pass(&mut f, alpha(0.0), p.arms());
        assert!(f.values()[centre] < 0.5);
    }

    #[test]
    fn gauss_seidel_and_jacobi_agree() {
        let g = parse_datum("cos(2*theta) + 0.3*sin(theta)").unwrap();
        let p = EnvelopeProblem::new(&disc(), &g, 0.0625, 2).unwrap();
        for a in [0.0, 0.4, 1.0] {
            let gs = p.solve(alpha(a), &SolverSettings::default(), None).unwrap();
            let jac = p
                .solve(
                    alpha(a),
                    &SolverSettings::default().with_mode(Mode::Jacobi),
                    None,
                )
                .unwrap();
            assert!(gs.converged && jac.converged);
            for (x, y) in gs.field.values().iter().zip(jac.field.values()) {
                assert!((x - y).abs() <= 10.0 * gs.tol, "{a}: {x} vs {y}");
            }
        }
    }
}

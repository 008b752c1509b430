//! Grid oracles for the real optimisation problems behind the `128e/81`
//! constant.
//!
//! Each problem is scanned on a lattice that contains both ends of every
//! axis, the best lattice point is refined by coordinate-wise golden-section
//! search, and the result carries a grid-gap allowance
//! `L · (half cell diagonal)` so that `certified_upper = grid_max + allowance`.
//! `L` is a gradient-norm bound: analytic where one is available, otherwise
//! the largest forward-difference gradient seen on the grid times
//! [`LIPSCHITZ_SAFETY`].

use std::collections::BTreeMap;
use std::f64::consts::E;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{f, NEW_CONSTANT};
use crate::error::{Error, Result};

pub const DEFAULT_STEP: f64 = 1e-3;
pub const STEP_3D: f64 = 5e-3;
pub const F_STEP: f64 = 1e-4;
/// Stand-in for `+∞` on unbounded axes; every integrand decays like `e^{-x}`.
pub const TAIL_CUTOFF: f64 = 20.0;
pub const REFINE_TOL: f64 = 1e-12;
pub const KKT_TOL: f64 = 1e-5;
pub const KKT_DELTA: f64 = 1e-6;
pub const LIPSCHITZ_SAFETY: f64 = 1.5;
/// Largest grid-gap allowance accepted for `A(c, m)` with `m <= 2`.
pub const A_TOLERANCE: f64 = 1e-3;
const MAX_SWEEPS: usize = 10_000;
const BOUNDARY_EPS: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    fn degenerate(&self) -> bool {
        self.hi <= self.lo
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProblemName {
    #[serde(rename = "f_max")]
    FMax,
    #[serde(rename = "rangec")]
    RangeC,
    #[serde(rename = "g_c")]
    GC,
    #[serde(rename = "g_uw")]
    GUw,
    #[serde(rename = "A_cm")]
    ACm,
    #[serde(rename = "final_constant")]
    FinalConstant,
    #[serde(rename = "mindeg_chain")]
    MindegChain,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptProblem {
    pub problem: ProblemName,
    pub parameters: BTreeMap<String, f64>,
    /// Box constraints; equality constraints are eliminated by the solver.
    pub domain: Vec<Interval>,
    pub resolution: f64,
}

impl OptProblem {
    pub fn new(problem: ProblemName, parameters: &[(&str, f64)], domain: Vec<Interval>, resolution: f64) -> Result<Self> {
        if !(resolution > 0.0) {
            return Err(Error::OptParameter(format!("resolution {resolution} must be positive")));
        }
        if domain.is_empty() || domain.iter().any(|i| !(i.lo.is_finite() && i.hi.is_finite() && i.lo <= i.hi)) {
            return Err(Error::OptParameter("domain must be a nonempty bounded box".into()));
        }
        Ok(OptProblem {
            problem,
            parameters: parameters.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            domain,
            resolution,
        })
    }
}

/// One named assertion with the observed value and its target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub target: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tolerance: Option<f64>,
    pub pass: bool,
}

impl Check {
    /// `value <= target`.
    pub fn le(name: impl Into<String>, value: f64, target: f64) -> Self {
        Check {
            name: name.into(),
            value,
            target,
            tolerance: None,
            pass: value <= target,
        }
    }

    /// `|value - target| <= tolerance`.
    pub fn near(name: impl Into<String>, value: f64, target: f64, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            value,
            target,
            tolerance: Some(tolerance),
            pass: (value - target).abs() <= tolerance,
        }
    }

    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Check {
            name: name.into(),
            value: ok as u8 as f64,
            target: 1.0,
            tolerance: None,
            pass: ok,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptResult {
    #[serde(flatten)]
    pub problem: OptProblem,
    /// Refined maximum.
    pub max_value: f64,
    pub argmax: Vec<f64>,
    pub on_boundary: bool,
    /// Best lattice value before refinement.
    pub grid_max: f64,
    pub grid_argmax: Vec<f64>,
    pub lipschitz: f64,
    pub allowance: f64,
    pub certified_upper: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ceiling: Option<f64>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

// ---------------------------------------------------------------------------
// Lattice, scanning, refinement

/// Regular lattice on a box, containing both ends of every axis.
#[derive(Debug, Clone)]
struct Lattice {
    lo: Vec<f64>,
    hi: Vec<f64>,
    len: Vec<usize>,
}

impl Lattice {
    fn new(domain: &[Interval], h: f64) -> Self {
        let len = domain
            .iter()
            .map(|i| if i.degenerate() { 1 } else { ((i.hi - i.lo) / h - 1e-9).ceil() as usize + 1 })
            .collect();
        Lattice {
            lo: domain.iter().map(|i| i.lo).collect(),
            hi: domain.iter().map(|i| i.hi).collect(),
            len,
        }
    }

    fn dims(&self) -> usize {
        self.len.len()
    }

    fn size(&self) -> usize {
        self.len.iter().product()
    }

    fn step(&self, axis: usize) -> f64 {
        if self.len[axis] == 1 {
            0.0
        } else {
            (self.hi[axis] - self.lo[axis]) / (self.len[axis] - 1) as f64
        }
    }

    fn coord(&self, axis: usize, j: usize) -> f64 {
        if j + 1 == self.len[axis] {
            self.hi[axis]
        } else {
            self.lo[axis] + self.step(axis) * j as f64
        }
    }

    fn half_diagonal(&self) -> f64 {
        (0..self.dims()).map(|a| self.step(a).powi(2)).sum::<f64>().sqrt() / 2.0
    }

    /// Row-major, last axis fastest.
    fn unravel(&self, mut flat: usize, idx: &mut [usize]) {
        for a in (0..self.dims()).rev() {
            idx[a] = flat % self.len[a];
            flat /= self.len[a];
        }
    }

    fn stride(&self, axis: usize) -> usize {
        self.len[axis + 1..].iter().product()
    }

    fn point(&self, idx: &[usize]) -> Vec<f64> {
        idx.iter().enumerate().map(|(a, &j)| self.coord(a, j)).collect()
    }
}

/// Every lattice value, `NaN` where infeasible.
struct StoredGrid {
    lat: Lattice,
    values: Vec<f64>,
}

type Objective<'a> = dyn Fn(&[f64]) -> Option<f64> + Sync + 'a;

impl StoredGrid {
    fn scan(lat: Lattice, obj: &Objective) -> Self {
        let values = (0..lat.size())
            .into_par_iter()
            .map_init(
                || vec![0usize; lat.dims()],
                |idx, flat| {
                    lat.unravel(flat, idx);
                    obj(&lat.point(idx)).unwrap_or(f64::NAN)
                },
            )
            .collect();
        StoredGrid { lat, values }
    }

    /// Largest value; ties go to the lexicographically smallest point.
    fn argmax(&self) -> Option<(f64, Vec<f64>)> {
        let mut best: Option<(f64, usize)> = None;
        for (i, &v) in self.values.iter().enumerate() {
            if !v.is_nan() && best.is_none_or(|(b, _)| v > b) {
                best = Some((v, i));
            }
        }
        best.map(|(v, flat)| {
            let mut idx = vec![0; self.lat.dims()];
            self.lat.unravel(flat, &mut idx);
            (v, self.lat.point(&idx))
        })
    }

    /// Largest forward-difference gradient norm over feasible neighbours.
    fn gradient_bound(&self) -> f64 {
        let lat = &self.lat;
        let mut idx = vec![0; lat.dims()];
        let mut best = 0.0f64;
        for (flat, &v) in self.values.iter().enumerate() {
            if v.is_nan() {
                continue;
            }
            lat.unravel(flat, &mut idx);
            let mut norm2 = 0.0;
            for a in 0..lat.dims() {
                if idx[a] + 1 < lat.len[a] {
                    let w = self.values[flat + lat.stride(a)];
                    if !w.is_nan() {
                        norm2 += ((w - v) / lat.step(a)).powi(2);
                    }
                }
            }
            best = best.max(norm2.sqrt());
        }
        best
    }

    /// Lattice points strictly above all `2d` feasible neighbours, with no
    /// neighbour missing. A degenerate axis has no interior points.
    fn strict_interior_maxima(&self) -> Vec<Vec<f64>> {
        let lat = &self.lat;
        let mut idx = vec![0; lat.dims()];
        let mut out = Vec::new();
        'point: for (flat, &v) in self.values.iter().enumerate() {
            if v.is_nan() {
                continue;
            }
            lat.unravel(flat, &mut idx);
            for a in 0..lat.dims() {
                if lat.len[a] == 1 || idx[a] == 0 || idx[a] + 1 == lat.len[a] {
                    continue 'point;
                }
                let s = lat.stride(a);
                let (lo, hi) = (self.values[flat - s], self.values[flat + s]);
                if lo.is_nan() || hi.is_nan() || !(v > lo && v > hi) {
                    continue 'point;
                }
            }
            out.push(lat.point(&idx));
        }
        out
    }
}

/// Golden-section maximum of `g` on `[a, b]`, endpoints included.
fn golden_max(g: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let (lo0, hi0) = (a, b);
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut gc, mut gd) = (g(c), g(d));
    for _ in 0..200 {
        if b - a <= 1e-15 * (1.0 + a.abs()) {
            break;
        }
        if gc >= gd {
            b = d;
            d = c;
            gd = gc;
            c = b - r * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + r * (b - a);
            gd = g(d);
        }
    }
    let mid = 0.5 * (a + b);
    [(mid, g(mid)), (c, gc), (d, gd), (lo0, g(lo0)), (hi0, g(hi0))]
        .into_iter()
        .fold((mid, f64::NEG_INFINITY), |best, p| if p.1 > best.1 { p } else { best })
}

/// Coordinate-wise golden-section ascent in windows of `radius` around the
/// current point, until a sweep gains less than [`REFINE_TOL`].
fn refine(obj: &Objective, domain: &[Interval], start: &[f64], start_val: f64, radius: &[f64]) -> (f64, Vec<f64>) {
    let mut x = start.to_vec();
    let mut best = start_val;
    for _ in 0..MAX_SWEEPS {
        let before = best;
        for i in 0..x.len() {
            if domain[i].degenerate() || radius[i] == 0.0 {
                continue;
            }
            let a = (x[i] - radius[i]).max(domain[i].lo);
            let b = (x[i] + radius[i]).min(domain[i].hi);
            let g = |t: f64| {
                let mut y = x.clone();
                y[i] = t;
                obj(&y).unwrap_or(f64::NEG_INFINITY)
            };
            let (t, v) = golden_max(&g, a, b);
            if v > best {
                best = v;
                x[i] = t;
            }
        }
        if best - before < REFINE_TOL {
            break;
        }
    }
    (best, x)
}

/// Finite-difference first-order conditions at `x`: a vanishing central
/// difference on free coordinates, a non-positive inward derivative where
/// only one side is feasible.
fn kkt_checks(obj: &Objective, domain: &[Interval], x: &[f64]) -> Vec<Check> {
    let f0 = obj(x).unwrap_or(f64::NAN);
    let mut out = Vec::new();
    for i in 0..x.len() {
        if domain[i].degenerate() {
            continue;
        }
        let at = |t: f64| {
            if t < domain[i].lo || t > domain[i].hi {
                return None;
            }
            let mut y = x.to_vec();
            y[i] = t;
            obj(&y)
        };
        let plus = at(x[i] + KKT_DELTA);
        let minus = at(x[i] - KKT_DELTA);
        match (minus, plus) {
            (Some(m), Some(p)) => out.push(Check::near(
                format!("stationary along axis {i}"),
                (p - m) / (2.0 * KKT_DELTA),
                0.0,
                KKT_TOL,
            )),
            (None, Some(p)) => out.push(Check::le(format!("inward derivative along +axis {i}"), (p - f0) / KKT_DELTA, KKT_TOL)),
            (Some(m), None) => out.push(Check::le(format!("inward derivative along -axis {i}"), (m - f0) / KKT_DELTA, KKT_TOL)),
            (None, None) => {}
        }
    }
    out
}

/// A degenerate axis leaves the box with empty interior, so every point is
/// on its boundary.
fn on_box_boundary(domain: &[Interval], x: &[f64]) -> bool {
    domain
        .iter()
        .zip(x)
        .any(|(i, &t)| i.degenerate() || t - i.lo <= BOUNDARY_EPS || i.hi - t <= BOUNDARY_EPS)
}

struct Solved {
    grid: StoredGrid,
    grid_max: f64,
    grid_argmax: Vec<f64>,
    max_value: f64,
    argmax: Vec<f64>,
    lipschitz: f64,
    allowance: f64,
    kkt: Vec<Check>,
}

fn solve_stored(problem: &OptProblem, obj: &Objective) -> Result<Solved> {
    let lat = Lattice::new(&problem.domain, problem.resolution);
    let grid = StoredGrid::scan(lat, obj);
    let (grid_max, grid_argmax) = grid
        .argmax()
        .ok_or_else(|| Error::OptParameter("no feasible lattice point".into()))?;
    let lipschitz = grid.gradient_bound() * LIPSCHITZ_SAFETY;
    let allowance = lipschitz * grid.lat.half_diagonal();
    let radius: Vec<f64> = (0..grid.lat.dims()).map(|a| grid.lat.step(a)).collect();
    let (max_value, argmax) = refine(obj, &problem.domain, &grid_argmax, grid_max, &radius);
    let kkt = kkt_checks(obj, &problem.domain, &argmax);
    Ok(Solved {
        grid,
        grid_max,
        grid_argmax,
        max_value,
        argmax,
        lipschitz,
        allowance,
        kkt,
    })
}

fn finish(
    problem: OptProblem,
    s: Solved,
    on_boundary: bool,
    ceiling: Option<f64>,
    mut checks: Vec<Check>,
) -> OptResult {
    checks.extend(s.kkt);
    let pass = checks.iter().all(|c| c.pass);
    OptResult {
        problem,
        max_value: s.max_value,
        argmax: s.argmax,
        on_boundary,
        grid_max: s.grid_max,
        grid_argmax: s.grid_argmax,
        lipschitz: s.lipschitz,
        allowance: s.allowance,
        certified_upper: s.grid_max.max(s.max_value) + s.allowance,
        ceiling,
        checks,
        pass,
    }
}

/// Consecutive lattice values along a 1-D grid satisfy `cmp`, restricted to
/// points where `keep` holds; returns the number of violations.
fn monotone_violations(grid: &StoredGrid, keep: impl Fn(f64, f64) -> bool, cmp: impl Fn(f64, f64) -> bool) -> usize {
    let lat = &grid.lat;
    (0..lat.len[0].saturating_sub(1))
        .filter(|&j| {
            let (a, b) = (lat.coord(0, j), lat.coord(0, j + 1));
            keep(a, b) && !cmp(grid.values[j], grid.values[j + 1])
        })
        .count()
}

// ---------------------------------------------------------------------------
// f(x) = x e^{-x}

/// Maximum of `f(x) = x e^{-x}` on `[0, 20]` at `x = 1`, monotonicity on
/// either side, and concavity on `[1, 2]`.
pub fn f_properties() -> Result<OptResult> {
    let problem = OptProblem::new(ProblemName::FMax, &[], vec![Interval::new(0.0, TAIL_CUTOFF)], F_STEP)?;
    let obj = |x: &[f64]| Some(f(x[0]));
    let s = solve_stored(&problem, &obj)?;
    let inc = monotone_violations(&s.grid, |_, b| b <= 1.0, |a, b| b > a);
    let dec = monotone_violations(&s.grid, |a, _| a >= 1.0, |a, b| b < a);
    let mut worst_mid = f64::INFINITY;
    for i in 0..=100 {
        for j in i..=100 {
            let (a, b) = (1.0 + i as f64 / 100.0, 1.0 + j as f64 / 100.0);
            worst_mid = worst_mid.min(f(0.5 * (a + b)) - 0.5 * (f(a) + f(b)));
        }
    }
    let checks = vec![
        Check::near("argmax at 1", s.argmax[0], 1.0, 1e-6),
        Check::near("max equals 1/e", s.max_value, 1.0 / E, 1e-12),
        Check::near("f(0) = 0", f(0.0), 0.0, 0.0),
        Check::near("f(2) = 2e^-2", f(2.0), 2.0 * (-2.0f64).exp(), 1e-15),
        Check::le("increasing on [0,1]: violations", inc as f64, 0.0),
        Check::le("decreasing on [1,20]: violations", dec as f64, 0.0),
        Check::le("midpoint concavity on [1,2]: worst deficit", -worst_mid, 1e-15),
        Check::holds("f(1.5) >= (f(1) + f(2))/2", f(1.5) >= 0.5 * (f(1.0) + f(2.0))),
        Check::le("tail f(20)", f(TAIL_CUTOFF), 1e-7),
    ];
    let on_boundary = on_box_boundary(&problem.domain, &s.argmax);
    Ok(finish(problem, s, on_boundary, None, checks))
}

// ---------------------------------------------------------------------------
// ½ c² e^{3−c} outside (1, 4)

/// `½ c² e^{3−c}`, the normalised vertex bound.
pub fn vertex_shape(c: f64) -> f64 {
    0.5 * c * c * (3.0 - c).exp()
}

/// Suprema of `½ c² e^{3−c}` over `c ∈ [0, 1]` and `c ∈ [4, 20]`, both
/// below `128e/81`; the function decreases past `c = 2`, so the tail beyond
/// 20 is bounded by its value there.
pub fn verify_rangec() -> Result<OptResult> {
    let problem = OptProblem::new(ProblemName::RangeC, &[("low", 1.0), ("high", 4.0)], vec![Interval::new(0.0, TAIL_CUTOFF)], DEFAULT_STEP)?;
    let obj = |x: &[f64]| (x[0] <= 1.0 || x[0] >= 4.0).then(|| vertex_shape(x[0]));
    let s = solve_stored(&problem, &obj)?;
    let part = |lo: f64, hi: f64| {
        let sub = OptProblem::new(ProblemName::RangeC, &[], vec![Interval::new(lo, hi)], DEFAULT_STEP)?;
        solve_stored(&sub, &obj)
    };
    let low = part(0.0, 1.0)?;
    let high = part(4.0, TAIL_CUTOFF)?;
    let dec = monotone_violations(&high.grid, |_, _| true, |a, b| b < a);
    let checks = vec![
        Check::near("sup on [0,1] equals e^2/2", low.max_value, E * E / 2.0, 1e-12),
        Check::near("sup on [0,1] attained at 1", low.argmax[0], 1.0, 1e-9),
        Check::near("sup on [4,20] equals 8/e", high.max_value, 8.0 / E, 1e-12),
        Check::near("sup on [4,20] attained at 4", high.argmax[0], 4.0, 1e-9),
        Check::le("sup on [0,1] + allowance below 128e/81", low.grid_max + low.allowance, NEW_CONSTANT),
        Check::le("sup on [4,20] + allowance below 128e/81", high.grid_max + high.allowance, NEW_CONSTANT),
        Check::near("value at 0", vertex_shape(0.0), 0.0, 0.0),
        Check::le("decreasing on [4,20]: violations", dec as f64, 0.0),
        Check::le("tail bound at 20", vertex_shape(TAIL_CUTOFF), 1e-4),
    ];
    Ok(finish(problem, s, true, Some(NEW_CONSTANT), checks))
}

// ---------------------------------------------------------------------------
// g_c(x_w, c_w) = (c − x_w)(c_w − x_w) e^{−(c_w − x_w)} on [0,c] × [c,4]

pub fn g_c(c: f64, x: f64, cw: f64) -> f64 {
    (c - x) * (cw - x) * (-(cw - x)).exp()
}

/// `½ e^{4−c} c`: turns `max g_c` into the bound on `D_k(G,v) / (n/k)^{k−1}`.
pub fn g_c_scale(c: f64) -> f64 {
    0.5 * (4.0 - c).exp() * c
}

/// Grid maximum of `g_c` on `[0, c] × [c, 4]` for `2 <= c <= 4`. Asserts the
/// maximiser is on the boundary, that no interior lattice point is a strict
/// local maximum, and that the scaled maximum is below `128e/81`; it equals
/// `max(½ c³ e^{4−2c}, 2c e^{2−c})`, the two face values.
pub fn maximize_g_c(c: f64) -> Result<OptResult> {
    if !(2.0..=4.0).contains(&c) {
        return Err(Error::OptParameter(format!("g_c needs 2 <= c <= 4, got {c}")));
    }
    let problem = OptProblem::new(
        ProblemName::GC,
        &[("c", c), ("scale", g_c_scale(c))],
        vec![Interval::new(0.0, c), Interval::new(c, 4.0)],
        DEFAULT_STEP,
    )?;
    let obj = |p: &[f64]| Some(g_c(c, p[0], p[1]));
    let s = solve_stored(&problem, &obj)?;
    let interior = s.grid.strict_interior_maxima();
    let lat = &s.grid.lat;
    let face_zero = (0..lat.len[1]).all(|j| g_c(c, c, lat.coord(1, j)) == 0.0);
    let faces = (0.5 * c.powi(3) * (4.0 - 2.0 * c).exp()).max(2.0 * c * (2.0 - c).exp());
    let scale = g_c_scale(c);
    let on_boundary = on_box_boundary(&problem.domain, &s.grid_argmax) && on_box_boundary(&problem.domain, &s.argmax);
    let mut checks = vec![
        Check::holds("argmax on the boundary of I_c", on_boundary),
        Check::le("strict interior lattice maxima", interior.len() as f64, 0.0),
        Check::holds("g_c vanishes on the x = c face", face_zero),
        Check::near("scaled max equals the face maximum", scale * s.max_value, faces, 1e-9),
        Check::le("scaled certified upper below 128e/81", scale * (s.grid_max + s.allowance), NEW_CONSTANT),
    ];
    if c == 2.0 {
        checks.push(Check::near("scaled max at c = 2 equals 4", scale * s.max_value, 4.0, 1e-9));
    }
    Ok(finish(problem, s, on_boundary, Some(NEW_CONSTANT), checks))
}

// ---------------------------------------------------------------------------
// g_uw(x, c_u, c_w) = f(a) f(b) e^{−(x − z)}, a = c_u − x_u − x + z,
// b = c_w − x_w − x + z

pub fn g_uw(x_u: f64, x_w: f64, z: f64, x: f64, cu: f64, cw: f64) -> Option<f64> {
    let a = cu - x_u - x + z;
    let b = cw - x_w - x + z;
    (x >= z && a >= 0.0 && b >= 0.0).then(|| f(a) * f(b) * (-(x - z)).exp())
}

/// Gradient-norm bound for `g_uw` on its domain: `|f| <= 1/e` and
/// `|f'| <= 1` on `[0, ∞)`, and `e^{−(x−z)} <= 1`, so
/// `|∂_{c_u}|, |∂_{c_w}| <= 1/e` and `|∂_x| <= 2/e + e^{−2}`.
pub fn g_uw_lipschitz() -> f64 {
    let side = 1.0 / E;
    let along_x = 2.0 / E + (-2.0f64).exp();
    (2.0 * side * side + along_x * along_x).sqrt()
}

/// Grid maximum of `g_uw` over `I_uw` for `1 <= c < 2`,
/// `c >= x_u, x_w >= z >= 0`.
///
/// For fixed `x` the function factors into a `c_u` part and a `c_w` part,
/// so the exact lattice maximum is found in `O(n_x (n_u + n_w))`.
pub fn maximize_g_uw(c: f64, x_u: f64, x_w: f64, z: f64) -> Result<OptResult> {
    if !(1.0..2.0).contains(&c) {
        return Err(Error::OptParameter(format!("g_uw needs 1 <= c < 2, got {c}")));
    }
    if !(c >= x_u && c >= x_w && x_u >= z && x_w >= z && z >= 0.0) {
        return Err(Error::OptParameter(format!(
            "g_uw needs c >= x_u, x_w >= z >= 0, got c={c} x_u={x_u} x_w={x_w} z={z}"
        )));
    }
    let x_hi = z + 4.0 - x_u.max(x_w);
    let problem = OptProblem::new(
        ProblemName::GUw,
        &[("c", c), ("x_u", x_u), ("x_w", x_w), ("z_uw", z)],
        vec![Interval::new(z, x_hi), Interval::new(c, 4.0), Interval::new(c, 4.0)],
        STEP_3D,
    )?;
    let lat = Lattice::new(&problem.domain, problem.resolution);
    let best_factor = |t: f64, x_own: f64| -> Option<(f64, usize)> {
        let mut best: Option<(f64, usize)> = None;
        for j in 0..lat.len[1] {
            let a = lat.coord(1, j) - x_own - t;
            if a >= 0.0 && best.is_none_or(|(b, _)| f(a) > b) {
                best = Some((f(a), j));
            }
        }
        best
    };
    let mut grid_best: Option<(f64, [usize; 3])> = None;
    let mut slice = Vec::with_capacity(lat.len[0]);
    for i in 0..lat.len[0] {
        let t = lat.coord(0, i) - z;
        let cand = best_factor(t, x_u)
            .zip(best_factor(t, x_w))
            .map(|((fu, ju), (fw, jw))| (fu * fw * (-t).exp(), [i, ju, jw]));
        if let Some((v, idx)) = cand {
            if grid_best.is_none_or(|(b, _)| v > b) {
                grid_best = Some((v, idx));
            }
        }
        // c_u = c_w = c slice
        slice.push(g_uw(x_u, x_w, z, lat.coord(0, i), c, c).unwrap_or(f64::NAN));
    }
    let (grid_max, gi) = grid_best.ok_or_else(|| Error::OptParameter("no feasible lattice point".into()))?;
    let grid_argmax = lat.point(&gi);
    let obj = |p: &[f64]| g_uw(x_u, x_w, z, p[0], p[1], p[2]);
    let radius: Vec<f64> = (0..3).map(|a| lat.step(a)).collect();
    let (max_value, argmax) = refine(&obj, &problem.domain, &grid_argmax, grid_max, &radius);
    let kkt = kkt_checks(&obj, &problem.domain, &argmax);
    let lipschitz = g_uw_lipschitz();
    let allowance = lipschitz * lat.half_diagonal();

    let cu_star = c.max(x_u + 1.0);
    let cw_star = c.max(x_w + 1.0);
    let closed = f(cu_star - x_u) * f(cw_star - x_w);
    let on_feasibility_face = |p: &[f64]| {
        let a = p[1] - x_u - p[0] + z;
        let b = p[2] - x_w - p[0] + z;
        a.abs() <= BOUNDARY_EPS || b.abs() <= BOUNDARY_EPS
    };
    let grid_on_boundary = on_box_boundary(&problem.domain, &grid_argmax) || on_feasibility_face(&grid_argmax);
    let slice_interior = (1..slice.len().saturating_sub(1))
        .filter(|&i| {
            let (l, m, r) = (slice[i - 1], slice[i], slice[i + 1]);
            !l.is_nan() && !r.is_nan() && m > l && m > r
        })
        .count();
    let upper_face = {
        // raw product: the binding factor is zero up to rounding
        let x = c - x_u.max(x_w) + z;
        let (a, b) = (c - x_u - x + z, c - x_w - x + z);
        a * b * (-(a + b + x - z)).exp()
    };
    let checks = vec![
        Check::holds("grid argmax on the boundary of I_uw", grid_on_boundary),
        Check::near("grid argmax has x = z_uw", grid_argmax[0], z, 1e-12),
        Check::near("refined argmax has x = z_uw", argmax[0], z, 1e-6),
        Check::near("max equals f(c_u* - x_u) f(c_w* - x_w)", max_value, closed, 1e-9),
        Check::le("grid max at most the closed form + allowance", grid_max, closed + allowance),
        Check::le("strict interior maxima on the c_u = c_w = c slice", slice_interior as f64, 0.0),
        Check::le("g_uw on the x upper face", upper_face.abs(), 1e-12),
    ];
    let on_boundary = on_box_boundary(&problem.domain, &argmax) || on_feasibility_face(&argmax);
    let s = Solved {
        grid: StoredGrid { lat, values: Vec::new() },
        grid_max,
        grid_argmax,
        max_value,
        argmax,
        lipschitz,
        allowance,
        kkt,
    };
    let mut r = finish(problem, s, on_boundary, None, checks);
    r.problem.parameters.insert("c_u_star".into(), cu_star);
    r.problem.parameters.insert("c_w_star".into(), cw_star);
    Ok(r)
}

// ---------------------------------------------------------------------------
// A(c, m): maximise Σ z_i² y_i e^{−z_i−y_i} subject to 1 <= y_i, z_i <= c and
// Σ z_i² = Σ y_i z_i

/// `m z*³ e^{−2z*}` with `z* = min(c, 3/2)`.
pub fn a_closed_form(c: f64, m: usize) -> f64 {
    let z = c.min(1.5);
    m as f64 * z.powi(3) * (-2.0 * z).exp()
}

/// Free coordinates are `z_1..z_m, y_1..y_{m−1}`; `y_m` is eliminated.
fn a_eliminated(c: f64, m: usize, p: &[f64]) -> Option<(f64, f64)> {
    let (z, y) = p.split_at(m);
    let s: f64 = z.iter().map(|t| t * t).sum::<f64>() - y.iter().zip(z).map(|(a, b)| a * b).sum::<f64>();
    let mut ym = s / z[m - 1];
    if ym < 1.0 - 1e-12 || ym > c + 1e-12 {
        return None;
    }
    ym = ym.clamp(1.0, c);
    let head: f64 = (0..m - 1).map(|i| z[i] * z[i] * y[i] * (-z[i] - y[i]).exp()).sum();
    Some((head + z[m - 1] * z[m - 1] * ym * (-z[m - 1] - ym).exp(), ym))
}

/// Grid oracle for `A(c, m)`, `1 <= c <= 2`, `m ∈ {1, 2, 3}`.
///
/// For `m <= 2` the lattice step is chosen so the grid-gap allowance is at
/// most [`A_TOLERANCE`]; `m = 3` runs on a coarse lattice and reports its
/// (larger) allowance.
pub fn solve_a(c: f64, m: usize) -> Result<OptResult> {
    if !(1.0..=2.0).contains(&c) {
        return Err(Error::OptParameter(format!("A(c, m) needs 1 <= c <= 2, got {c}")));
    }
    if !(1..=3).contains(&m) {
        return Err(Error::OptParameter(format!("A(c, m) supports m in 1..=3, got {m}")));
    }
    let dims = 2 * m - 1;
    let domain = vec![Interval::new(1.0, c); dims];
    let obj = move |p: &[f64]| a_eliminated(c, m, p).map(|(v, _)| v);

    // gradient bound from a coarse pass
    let coarse = StoredGrid::scan(Lattice::new(&domain, if m == 3 { 0.1 } else { 0.02 }), &obj);
    let lipschitz = coarse.gradient_bound().max(1e-3) * LIPSCHITZ_SAFETY;
    let step = match m {
        1 => F_STEP,
        2 => (2.0 * A_TOLERANCE / (lipschitz * (dims as f64).sqrt())).min(2.5e-3),
        _ => 0.04,
    };
    let problem = OptProblem::new(ProblemName::ACm, &[("c", c), ("m", m as f64)], domain, step)?;
    let lat = Lattice::new(&problem.domain, step);
    let (grid_max, grid_argmax) = scan_a(&lat, c, m).ok_or_else(|| Error::OptParameter("no feasible lattice point".into()))?;
    let radius: Vec<f64> = (0..dims).map(|a| lat.step(a)).collect();
    let (max_value, argmax_free) = refine(&obj, &problem.domain, &grid_argmax, grid_max, &radius);
    let kkt = kkt_checks(&obj, &problem.domain, &argmax_free);
    let allowance = lipschitz * lat.half_diagonal();

    let (_, ym) = a_eliminated(c, m, &argmax_free).expect("refined point is feasible");
    let z: Vec<f64> = argmax_free[..m].to_vec();
    let mut y: Vec<f64> = argmax_free[m..].to_vec();
    y.push(ym);
    let closed = a_closed_form(c, m);
    let residual = z.iter().map(|t| t * t).sum::<f64>() - z.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>();
    let mut checks = vec![
        Check::near("max matches m z*^3 e^{-2z*}", max_value, closed, allowance),
        Check::le("grid max at most closed form + allowance", grid_max, closed + allowance),
        Check::le("refined max at most closed form", max_value, closed + 1e-9),
        Check::near("equality constraint at argmax", residual, 0.0, 1e-9),
    ];
    if m <= 2 {
        checks.push(Check::le("grid-gap allowance", allowance, A_TOLERANCE));
    }
    let interior = |t: f64| t > 1.0 + 1e-3 && t < c - 1e-3;
    if m == 2 && z.iter().chain(&y).all(|&t| interior(t)) {
        for i in 0..m {
            let lagrange = (y[i] * y[i] + y[i]) / (3.0 * y[i] - 2.0);
            checks.push(Check::near(format!("z_{i} = (y^2 + y)/(3y - 2)"), z[i], lagrange, 1e-2));
        }
    }
    if c >= 1.5 {
        let tri = z.iter().zip(&y).all(|(&zi, &yi)| {
            ((zi - 1.5).abs() <= 1e-3 && (yi - 1.5).abs() <= 1e-3) || (yi < 1.5 && 1.5 < zi) || (zi <= 1.5 && 1.5 < yi)
        });
        checks.push(Check::holds("y = z = 3/2, or y < 3/2 < z, or z <= 3/2 < y at the optimum", tri));
    }
    let on_boundary = on_box_boundary(&problem.domain, &argmax_free) || ym <= 1.0 + BOUNDARY_EPS || ym >= c - BOUNDARY_EPS;
    let s = Solved {
        grid: StoredGrid { lat, values: Vec::new() },
        grid_max,
        grid_argmax,
        max_value,
        argmax: z.into_iter().chain(y).collect(),
        lipschitz,
        allowance,
        kkt,
    };
    Ok(finish(problem, s, on_boundary, Some(closed), checks))
}

/// Lattice maximum of the eliminated `A(c, m)` objective using per-axis
/// tables of `z² e^{−z}` and `y e^{−y}`.
fn scan_a(lat: &Lattice, c: f64, m: usize) -> Option<(f64, Vec<f64>)> {
    let n = lat.len[0];
    let coords: Vec<f64> = (0..n).map(|j| lat.coord(0, j)).collect();
    let zt: Vec<f64> = coords.iter().map(|&t| t * t * (-t).exp()).collect();
    let yt: Vec<f64> = coords.iter().map(|&t| t * (-t).exp()).collect();
    let dims = 2 * m - 1;
    let outer = n;
    let best = (0..outer)
        .into_par_iter()
        .map(|first| {
            let mut idx = vec![0usize; dims];
            idx[0] = first;
            let mut best: Option<(f64, Vec<usize>)> = None;
            loop {
                let z = |i: usize| coords[idx[i]];
                let mut s = 0.0;
                let mut head = 0.0;
                for i in 0..m {
                    s += z(i) * z(i);
                }
                for i in 0..m - 1 {
                    let y = coords[idx[m + i]];
                    s -= y * z(i);
                    head += zt[idx[i]] * yt[idx[m + i]];
                }
                let ym = s / z(m - 1);
                if ym >= 1.0 - 1e-12 && ym <= c + 1e-12 {
                    let ym = ym.clamp(1.0, c);
                    let v = head + zt[idx[m - 1]] * ym * (-ym).exp();
                    if best.as_ref().is_none_or(|(b, _)| v > *b) {
                        best = Some((v, idx.clone()));
                    }
                }
                // odometer over axes 1..dims
                let mut a = dims;
                loop {
                    if a == 1 {
                        return best;
                    }
                    a -= 1;
                    idx[a] += 1;
                    if idx[a] < n {
                        break;
                    }
                    idx[a] = 0;
                }
            }
        })
        .reduce(
            || None,
            |a, b| match (a, b) {
                (Some(x), Some(y)) => Some(if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) { y } else { x }),
                (x, None) => x,
                (None, y) => y,
            },
        );
    best.map(|(v, idx)| (v, idx.iter().map(|&j| coords[j]).collect()))
}

// ---------------------------------------------------------------------------
// ½ z⁴ e^{5−3z} on [1, 3/2]

pub fn final_shape(z: f64) -> f64 {
    0.5 * z.powi(4) * (5.0 - 3.0 * z).exp()
}

/// Maximum of `½ z⁴ e^{5−3z}` on `[1, 3/2]`: `128e/81` at `z = 4/3`.
pub fn final_constant() -> Result<OptResult> {
    let problem = OptProblem::new(ProblemName::FinalConstant, &[], vec![Interval::new(1.0, 1.5)], DEFAULT_STEP)?;
    let obj = |p: &[f64]| Some(final_shape(p[0]));
    let s = solve_stored(&problem, &obj)?;
    let z = 4.0 / 3.0;
    let h = 1e-3;
    let checks = vec![
        Check::near("argmax at 4/3", s.argmax[0], z, 1e-6),
        Check::near("max equals 128e/81", s.max_value, NEW_CONSTANT, 1e-9),
        Check::near("value at 1 equals e^2/2", final_shape(1.0), E * E / 2.0, 1e-12),
        Check::le("value at 1 below 128e/81", final_shape(1.0), NEW_CONSTANT),
        Check::holds("finite difference positive left of 4/3", final_shape(z - h + 1e-6) > final_shape(z - h)),
        Check::holds("finite difference negative right of 4/3", final_shape(z + h + 1e-6) < final_shape(z + h)),
        Check::holds("certified upper covers 128e/81", s.grid_max + s.allowance >= NEW_CONSTANT),
    ];
    let on_boundary = on_box_boundary(&problem.domain, &s.argmax);
    Ok(finish(problem, s, on_boundary, Some(NEW_CONSTANT), checks))
}

// ---------------------------------------------------------------------------
// The dense-case chain ½ c³ e^{4−2c} and 2c e^{2−c} for c >= 2

pub fn cubic_chain(c: f64) -> f64 {
    0.5 * c.powi(3) * (4.0 - 2.0 * c).exp()
}

pub fn linear_chain(c: f64) -> f64 {
    2.0 * c * (2.0 - c).exp()
}

/// On `[2, c]`: `½ x³ e^{4−2x}` is decreasing, `2x e^{2−x} <= 4`, both equal
/// 4 at `x = 2`, and both stay below `128e/81`.
pub fn verify_mindeg_chain(c: f64) -> Result<OptResult> {
    if !(2.0..=TAIL_CUTOFF).contains(&c) {
        return Err(Error::OptParameter(format!("chain needs 2 <= c <= 20, got {c}")));
    }
    let problem = OptProblem::new(ProblemName::MindegChain, &[("c", c)], vec![Interval::new(2.0, c)], DEFAULT_STEP)?;
    let obj = |p: &[f64]| Some(cubic_chain(p[0]));
    let s = solve_stored(&problem, &obj)?;
    let linear = StoredGrid::scan(Lattice::new(&problem.domain, DEFAULT_STEP), &|p: &[f64]| Some(linear_chain(p[0])));
    let (lin_max, _) = linear.argmax().expect("nonempty lattice");
    let dec = monotone_violations(&s.grid, |_, _| true, |a, b| b < a);
    let lin_dec = monotone_violations(&linear, |_, _| true, |a, b| b < a);
    let checks = vec![
        Check::near("cubic chain at 2 equals 4", cubic_chain(2.0), 4.0, 1e-12),
        Check::near("linear chain at 2 equals 4", linear_chain(2.0), 4.0, 1e-12),
        Check::le("cubic chain decreasing: violations", dec as f64, 0.0),
        Check::le("linear chain decreasing: violations", lin_dec as f64, 0.0),
        Check::le("linear chain max", lin_max, 4.0),
        Check::le("cubic chain max below 128e/81", s.max_value, NEW_CONSTANT),
        Check::le("linear chain max below 128e/81", lin_max, NEW_CONSTANT),
        Check::le("cubic chain at c", cubic_chain(c), 4.0),
        Check::le("linear chain at c", linear_chain(c), 4.0),
    ];
    Ok(finish(problem, s, true, Some(NEW_CONSTANT), checks))
}

/// The full analytic suite.
pub fn run_suite() -> Result<Vec<OptResult>> {
    let mut out = vec![f_properties()?, verify_rangec()?];
    for c in [2.0, 2.5, 3.0, 4.0] {
        out.push(maximize_g_c(c)?);
    }
    for (c, xu, xw, z) in [(1.5, 0.0, 0.0, 0.0), (1.9, 0.0, 0.0, 0.0), (1.2, 0.5, 0.3, 0.1), (1.9, 1.5, 0.4, 0.2)] {
        out.push(maximize_g_uw(c, xu, xw, z)?);
    }
    for c in [1.0, 1.2, 1.5, 2.0] {
        for m in [1, 2] {
            out.push(solve_a(c, m)?);
        }
    }
    out.push(final_constant()?);
    out.push(verify_mindeg_chain(TAIL_CUTOFF)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_pass(r: &OptResult) {
        let failed: Vec<_> = r.checks.iter().filter(|c| !c.pass).collect();
        assert!(r.pass, "{:?} failed: {failed:#?}", r.problem.problem);
        assert!(r.certified_upper >= r.max_value - 1e-15);
    }

    #[test]
    fn f_values() {
        assert!((f(1.0) - 0.367879).abs() < 1e-6);
        assert!((f(2.0) - 0.27067).abs() < 1e-5);
        let r = f_properties().unwrap();
        assert_pass(&r);
    }

    #[test]
    fn rangec() {
        assert!((vertex_shape(1.0) - 3.6945).abs() < 1e-4);
        assert!((vertex_shape(4.0) - 2.943).abs() < 1e-3);
        let r = verify_rangec().unwrap();
        assert_pass(&r);
        assert!((r.max_value - E * E / 2.0).abs() < 1e-12);
    }

    #[test]
    fn g_c_cases() {
        for c in [2.0, 3.0] {
            let r = maximize_g_c(c).unwrap();
            assert_pass(&r);
            assert!(r.on_boundary);
        }
        assert!(maximize_g_c(1.5).is_err());
        assert_eq!(g_c(2.5, 2.5, 3.0), 0.0);
    }

    #[test]
    fn g_uw_cases() {
        let r = maximize_g_uw(1.5, 0.0, 0.0, 0.0).unwrap();
        assert_pass(&r);
        assert_eq!(r.grid_argmax[0], 0.0);
        let r = maximize_g_uw(1.9, 1.2, 0.4, 0.3).unwrap();
        assert_pass(&r);
        assert!(maximize_g_uw(2.0, 0.0, 0.0, 0.0).is_err());
        assert!(maximize_g_uw(1.5, 0.1, 0.0, 0.2).is_err());
        assert_eq!(g_uw(0.0, 0.0, 0.0, 1.5, 1.5, 1.5), Some(0.0));
    }

    #[test]
    fn a_small_cases() {
        for (c, m) in [(1.0, 1), (1.2, 1), (2.0, 1), (1.0, 2), (1.2, 2)] {
            let r = solve_a(c, m).unwrap();
            assert_pass(&r);
        }
        let closed = a_closed_form(1.2, 2);
        assert!((closed - 2.0 * 1.2f64.powi(3) * (-2.4f64).exp()).abs() < 1e-15);
        assert!((a_closed_form(2.0, 2) - 27.0 / 4.0 * (-3.0f64).exp()).abs() < 1e-15);
        assert!((a_closed_form(2.0, 2) - 0.33609).abs() < 1e-4);
        assert!(solve_a(1.5, 4).is_err());
        assert!(solve_a(2.5, 1).is_err());
    }

    #[test]
    fn final_constant_value() {
        let r = final_constant().unwrap();
        assert_pass(&r);
        assert!((r.max_value - 4.29553).abs() < 1e-4);
    }

    #[test]
    fn mindeg_chain() {
        let r = verify_mindeg_chain(2.0).unwrap();
        assert_pass(&r);
        assert!((linear_chain(3.0) - 2.207).abs() < 1e-3);
        assert!(cubic_chain(2.5) < cubic_chain(2.0));
        assert_pass(&verify_mindeg_chain(20.0).unwrap());
        assert!(verify_mindeg_chain(1.0).is_err());
    }

    #[test]
    fn problem_validation() {
        assert!(OptProblem::new(ProblemName::FMax, &[], vec![Interval::new(0.0, 1.0)], 0.0).is_err());
        assert!(OptProblem::new(ProblemName::FMax, &[], vec![Interval::new(1.0, 0.0)], 0.1).is_err());
        assert!(OptProblem::new(ProblemName::FMax, &[], vec![], 0.1).is_err());
    }

    #[test]
    fn golden_finds_interior_and_endpoint() {
        let (x, _) = golden_max(&|t| -(t - 0.3) * (t - 0.3), 0.0, 1.0);
        assert!((x - 0.3).abs() < 1e-7);
        let (x, _) = golden_max(&|t| t, 0.0, 1.0);
        assert_eq!(x, 1.0);
    }
}

//! Closed-form bounds on induced cycle counts, evaluated in `f64` and
//! compared against exact counts.
//!
//! Exact quantities (counts, degrees, co-degrees) stay integral or rational
//! until they enter one of the evaluators here.

use std::collections::BTreeMap;
use std::f64::consts::E;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::count::{self, Count, Detail};
use crate::error::{Error, Result};
use crate::graph::{ratio_to_f64, Graph};

/// `2e`, the constant of the classical global upper bound.
pub const PG_CONSTANT: f64 = 2.0 * E;
/// `128e/81`, the improved constant.
pub const NEW_CONSTANT: f64 = 128.0 * E / 81.0;
/// Relative inflation applied to a float bound before comparing it with an
/// exact count.
pub const SOUNDNESS_EPS: f64 = 1e-12;

/// `exact <= bound` up to the relative rounding allowance.
pub fn within_bound(exact: Count, bound: f64) -> bool {
    (exact as f64) <= bound * (1.0 + SOUNDNESS_EPS)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Vertex,
    Edge,
    Cherry,
    GlobalPg,
    GlobalNew,
    LowerBlowup,
    LowerIterated,
}

/// One bound evaluation with its inputs and, when an exact count is known,
/// the slack `value - exact`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub value: f64,
    pub inputs: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<Count>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub slack: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pass: Option<bool>,
}

impl BoundReport {
    fn new(kind: BoundKind, value: f64, inputs: &[(&str, f64)]) -> Self {
        BoundReport {
            kind,
            value,
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            exact: None,
            slack: None,
            pass: None,
        }
    }

    /// Attaches an exact count and decides the soundness check.
    pub fn against(mut self, exact: Count) -> Self {
        self.exact = Some(exact);
        self.slack = Some(self.value - exact as f64);
        self.pass = Some(within_bound(exact, self.value));
        self
    }
}

fn need_k(k: usize, min: usize) -> Result<()> {
    if k < min {
        return Err(Error::CycleLength { k, min, max: usize::MAX });
    }
    Ok(())
}

fn precondition(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::BoundPrecondition(msg()))
    }
}

/// Vertex bound `½ d² ((n − d − 1)/(k − 3))^{k−3}` on `D_k(G, v)`.
pub fn vertex_bound(n: usize, k: usize, d: usize) -> Result<f64> {
    need_k(k, 4)?;
    precondition(d < n, || format!("degree {d} must be below n = {n}"))?;
    let rest = (n - d - 1) as f64 / (k - 3) as f64;
    Ok(0.5 * (d * d) as f64 * rest.powi(k as i32 - 3))
}

/// The relaxed vertex bound with `n − d` in place of `n − d − 1`.
pub fn vertex_bound_relaxed(n: f64, k: usize, d: f64) -> f64 {
    0.5 * d * d * ((n - d) / (k - 3) as f64).powi(k as i32 - 3)
}

/// `2 (n/(k−1))^{k−1}`, the peak of the relaxed vertex bound (at `d = 2n/(k−1)`).
pub fn vertex_bound_peak(n: f64, k: usize) -> f64 {
    2.0 * (n / (k - 1) as f64).powi(k as i32 - 1)
}

/// Edge bound `(d_v − x)(d_w − x)((n − d_v − d_w + x)/(k − 4))^{k−4}` on
/// `D_k(G, v, w)` for an edge `vw` with co-degree `x`.
pub fn edge_bound(n: usize, k: usize, d_v: usize, d_w: usize, x_vw: usize) -> Result<f64> {
    need_k(k, 5)?;
    precondition(x_vw <= d_v.min(d_w), || {
        format!("co-degree {x_vw} exceeds min(d_v, d_w) = {}", d_v.min(d_w))
    })?;
    let rest = (n + x_vw)
        .checked_sub(d_v + d_w)
        .ok_or_else(|| Error::BoundPrecondition("n - d_v - d_w + x_vw is negative".into()))?;
    Ok(((d_v - x_vw) * (d_w - x_vw)) as f64 * (rest as f64 / (k - 4) as f64).powi(k as i32 - 4))
}

/// Degree data of a cherry `u – v – w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CherryDegrees {
    pub d_u: usize,
    pub d_v: usize,
    pub d_w: usize,
    pub x_uv: usize,
    pub x_vw: usize,
    pub x_uw: usize,
    pub z_uvw: usize,
}

impl CherryDegrees {
    pub fn of(g: &Graph, u: usize, v: usize, w: usize) -> Result<Self> {
        Ok(CherryDegrees {
            d_u: g.degree(u),
            d_v: g.degree(v),
            d_w: g.degree(w),
            x_uv: g.codegree(u, v)?,
            x_vw: g.codegree(v, w)?,
            x_uw: g.codegree(u, w)?,
            z_uvw: g.triple_codegree(u, v, w)?,
        })
    }
}

/// Cherry bound on `D_k(G, u, v, w)`:
/// `(d_u − x_uv − x_uw + z)(d_w − x_vw − x_uw + z)
///  · ((n − d_u − d_v − d_w + x_uv + x_vw + x_uw − z)/(k − 5))^{k−5}`.
pub fn cherry_bound(n: usize, k: usize, c: CherryDegrees) -> Result<f64> {
    need_k(k, 6)?;
    let i = |x: usize| x as i64;
    let first = i(c.d_u) - i(c.x_uv) - i(c.x_uw) + i(c.z_uvw);
    let second = i(c.d_w) - i(c.x_vw) - i(c.x_uw) + i(c.z_uvw);
    let rest = i(n) - i(c.d_u) - i(c.d_v) - i(c.d_w) + i(c.x_uv) + i(c.x_vw) + i(c.x_uw) - i(c.z_uvw);
    for (name, t) in [("first", first), ("second", second), ("ground set", rest)] {
        precondition(t >= 0, || format!("{name} inclusion-exclusion term is {t}"))?;
    }
    Ok((first * second) as f64 * (rest as f64 / (k - 5) as f64).powi(k as i32 - 5))
}

/// `2e (n/k)^k`, valid for all `n >= k >= 4`.
pub fn global_pg_bound(n: usize, k: usize) -> Result<f64> {
    need_k(k, 4)?;
    precondition(n >= k, || format!("n = {n} must be at least k = {k}"))?;
    Ok(PG_CONSTANT * (n as f64 / k as f64).powi(k as i32))
}

/// `(128e/81)(n/k)^k`, the asymptotic ceiling (reported, not asserted at
/// finite `n`).
pub fn global_new_bound(n: usize, k: usize) -> f64 {
    NEW_CONSTANT * (n as f64 / k as f64).powi(k as i32)
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Bracket on `ind(C_k)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InducibilityBracket {
    pub k: usize,
    /// `k!/k^k` from a balanced blow-up.
    pub lower_blowup: f64,
    /// `k!/(k^k − k)` from the iterated blow-up.
    pub lower: f64,
    /// `(128e/81) k!/k^k`.
    pub upper: f64,
    /// `2e k!/k^k`.
    pub upper_pg: f64,
    /// The improved upper bound is only established for `k >= 6`.
    pub upper_established: bool,
}

pub fn inducibility_bracket(k: usize) -> Result<InducibilityBracket> {
    need_k(k, 5)?;
    let kk = (k as f64).powi(k as i32);
    let fact = factorial(k);
    Ok(InducibilityBracket {
        k,
        lower_blowup: fact / kk,
        lower: fact / (kk - k as f64),
        upper: NEW_CONSTANT * fact / kk,
        upper_pg: PG_CONSTANT * fact / kk,
        upper_established: k >= 6,
    })
}

pub fn lower_bound_reports(k: usize) -> Result<Vec<BoundReport>> {
    let b = inducibility_bracket(k)?;
    let kf = k as f64;
    Ok(vec![
        BoundReport::new(BoundKind::LowerBlowup, b.lower_blowup, &[("k", kf)]),
        BoundReport::new(BoundKind::LowerIterated, b.lower, &[("k", kf)]),
    ])
}

/// `C(n, k)` as an exact integer.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityEntry {
    pub n: usize,
    pub count: Count,
    /// `count / C(n, k)` as `[numerator, denominator]`.
    pub density: Ratio<u128>,
    pub density_f64: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensitySequence {
    pub k: usize,
    pub entries: Vec<DensityEntry>,
    pub monotone: bool,
    /// Values of `n` whose density exceeds the previous one.
    pub violations: Vec<usize>,
}

/// `I_{C_k}(n) / C(n, k)` for consecutive `n`, decided exactly.
pub fn density_sequence(k: usize, counts_by_n: &BTreeMap<usize, Count>) -> Result<DensitySequence> {
    let mut entries: Vec<DensityEntry> = Vec::new();
    let mut violations = Vec::new();
    for (&n, &count) in counts_by_n {
        if n < k {
            return Err(Error::CycleLength { k, min: 3, max: n });
        }
        if let Some(prev) = entries.last() {
            if n != prev.n + 1 {
                return Err(Error::SequenceGap(prev.n + 1));
            }
        }
        let density = Ratio::new(count, binomial(n, k));
        if let Some(prev) = entries.last() {
            if density > prev.density {
                violations.push(n);
            }
        }
        entries.push(DensityEntry {
            n,
            count,
            density,
            density_f64: *density.numer() as f64 / *density.denom() as f64,
        });
    }
    Ok(DensitySequence {
        k,
        monotone: violations.is_empty(),
        entries,
        violations,
    })
}

// ---------------------------------------------------------------------------
// Normalised per-vertex bounds

/// `f(x) = x e^{−x}`.
pub fn f(x: f64) -> f64 {
    x * (-x).exp()
}

/// `½ (n/k)^{k−1} c² e^{3−c}` with `c = k d/n`: the exponential relaxation
/// of the vertex bound.
pub fn exp_vertex_bound(n: usize, k: usize, d: usize) -> f64 {
    let c = k as f64 * d as f64 / n as f64;
    0.5 * (n as f64 / k as f64).powi(k as i32 - 1) * c * c * (3.0 - c).exp()
}

/// Sum of the normalised edge bounds over `w ∈ N(v)`:
/// `(n/k)^{k−2} · ½ e^{4−c} Σ_w (c − x_w)(c_w − x_w) e^{−(c_w − x_w)}`.
/// Bounds `D_k(G, v)` for every `v` once `k >= 5`.
pub fn edge_sum_bound(g: &Graph, k: usize, v: usize) -> Result<f64> {
    need_k(k, 5)?;
    g.check_vertex(v)?;
    let p = g.profile(k)?;
    let c = ratio_to_f64(p.c(v));
    let mut sum = 0.0;
    for w in g.neighbors(v) {
        let x = ratio_to_f64(p.xbar(v, w)?);
        let cw = ratio_to_f64(p.c(w));
        sum += (c - x) * (cw - x) * (-(cw - x)).exp();
    }
    let scale = (g.n() as f64 / k as f64).powi(k as i32 - 2);
    Ok(scale * 0.5 * (4.0 - c).exp() * sum)
}

/// Sum of the normalised cherry bounds over `(u, w) ∈ A_v`:
/// `(n/k)^{k−3} · ½ e^{5−c} Σ (c_u − x̄_uv − x̄_uw + z̄)(c_w − x̄_vw − x̄_uw + z̄)
///  e^{−(c_u + c_w − x̄_uv − x̄_vw − x̄_uw + z̄)}`.
/// Bounds `D_k(G, v)` for every `v` once `k >= 6`.
pub fn cherry_sum_bound(g: &Graph, k: usize, v: usize) -> Result<f64> {
    need_k(k, 6)?;
    let p = g.profile(k)?;
    let c = ratio_to_f64(p.c(v));
    let mut sum = 0.0;
    for (u, w) in g.nonadjacent_neighbor_pairs(v)? {
        let (cu, cw) = (p.c(u), p.c(w));
        let (xuv, xvw, xuw) = (p.xbar(u, v)?, p.xbar(v, w)?, p.xbar(u, w)?);
        let z = p.zbar(u, v, w)?;
        // a and b are private-neighbourhood sizes: exact and nonnegative, so
        // an empty cherry contributes exactly zero
        let a = ratio_to_f64(cu + z - xuv - xuw);
        let b = ratio_to_f64(cw + z - xvw - xuw);
        let t = ratio_to_f64(cu + cw + z) - ratio_to_f64(xuv + xvw + xuw);
        sum += a * b * (-t).exp();
    }
    let scale = (g.n() as f64 / k as f64).powi(k as i32 - 3);
    Ok(scale * 0.5 * (5.0 - c).exp() * sum)
}

/// Which branch of the minimum-degree case split a graph falls in, by
/// `c = k δ / n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeCase {
    /// `c < 1`: exponential vertex bound.
    Sparse,
    /// `1 <= c < 2`: cherry sums.
    Bracket,
    /// `c >= 2`: edge sums.
    Dense,
}

impl DegreeCase {
    pub fn of(c: Ratio<u64>) -> Self {
        if c < Ratio::from_integer(1) {
            DegreeCase::Sparse
        } else if c < Ratio::from_integer(2) {
            DegreeCase::Bracket
        } else {
            DegreeCase::Dense
        }
    }
}

/// Minimum-degree vertex audit against `(128e/81)(n/k)^{k−1}(1 + 10/n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinDegreeCheck {
    pub n: usize,
    pub k: usize,
    pub vertex: usize,
    pub degree: usize,
    pub c: Ratio<u64>,
    pub case: DegreeCase,
    pub count: Count,
    pub ceiling: f64,
    pub pass: bool,
    /// The rigorous bound used by the branch (`exp_vertex_bound`,
    /// `cherry_sum_bound` or `edge_sum_bound`).
    pub case_bound: f64,
    pub case_bound_pass: bool,
}

pub fn min_degree_ceiling(n: usize, k: usize) -> f64 {
    NEW_CONSTANT * (n as f64 / k as f64).powi(k as i32 - 1) * (1.0 + 10.0 / n as f64)
}

/// Runs the case split on the smallest-labelled minimum-degree vertex.
pub fn min_degree_check(g: &Graph, k: usize) -> Result<MinDegreeCheck> {
    need_k(k, 6)?;
    let (v, d) = g.min_degree();
    let c = g.profile(k)?.c(v);
    let case = DegreeCase::of(c);
    let count = count::count_rooted(g, k, v)?;
    let ceiling = min_degree_ceiling(g.n(), k);
    let case_bound = match case {
        DegreeCase::Sparse => exp_vertex_bound(g.n(), k, d),
        DegreeCase::Bracket => cherry_sum_bound(g, k, v)?,
        DegreeCase::Dense => edge_sum_bound(g, k, v)?,
    };
    Ok(MinDegreeCheck {
        n: g.n(),
        k,
        vertex: v,
        degree: d,
        c,
        case,
        count,
        ceiling,
        pass: within_bound(count, ceiling),
        case_bound,
        case_bound_pass: within_bound(count, case_bound),
    })
}

/// The `P_1` / `P_2` quantities for a vertex `v` with normalised co-degrees
/// `x_u = k x_uv / n`, split by `L = {u ∈ N(v) : x_u > c − 1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CherryProgram {
    pub vertex: usize,
    pub c: f64,
    pub large: Vec<usize>,
    pub small: Vec<usize>,
    pub x_sum: f64,
    pub y_sum: f64,
    pub z_sum: f64,
    pub p1: f64,
    pub p2: f64,
    /// `(n/k)² · 128e/81`.
    pub ceiling: f64,
    /// `n/k <= δ < 2n/k`, `v` of minimum degree and `c − x_u >= 1` on `N(v)`.
    pub p2_preconditions: bool,
}

pub fn cherry_program(g: &Graph, k: usize, v: usize) -> Result<CherryProgram> {
    need_k(k, 4)?;
    g.check_vertex(v)?;
    let p = g.profile(k)?;
    let c_exact = p.c(v);
    let c = ratio_to_f64(c_exact);
    let mut x = BTreeMap::new();
    let mut gap_ok = true;
    for u in g.neighbors(v) {
        let xu = p.xbar(u, v)?;
        // c - x_u >= 1 decided exactly
        if xu + Ratio::from_integer(1) > c_exact {
            gap_ok = false;
        }
        x.insert(u, ratio_to_f64(xu));
    }
    let (large, small): (Vec<usize>, Vec<usize>) = x.keys().partition(|&&u| {
        let xu = p.xbar(u, v).expect("neighbour pair");
        xu + Ratio::from_integer(1) > c_exact
    });
    let in_large = |u: usize| large.binary_search(&u).is_ok();
    let (mut xs, mut ys, mut zs, mut p2) = (0.0, 0.0, 0.0, 0.0);
    for (u, w) in g.nonadjacent_neighbor_pairs(v)? {
        let (fu, fw) = (f(c - x[&u]), f(c - x[&w]));
        p2 += fu * fw;
        match (in_large(u), in_large(w)) {
            (true, true) => xs += (-2.0f64).exp(),
            (true, false) => ys += (-1.0f64).exp() * fw,
            (false, true) => {}
            (false, false) => zs += fu * fw,
        }
    }
    let e5c = (5.0 - c).exp();
    let (min_v, _) = g.min_degree();
    let is_min = g.degree(v) == g.degree(min_v);
    let one = Ratio::from_integer(1);
    let bracket = c_exact >= one && c_exact < Ratio::from_integer(2);
    let nk = g.n() as f64 / k as f64;
    Ok(CherryProgram {
        vertex: v,
        c,
        large,
        small,
        x_sum: xs,
        y_sum: ys,
        z_sum: zs,
        p1: e5c * (xs / 2.0 + ys + zs / 2.0),
        p2: 0.5 * e5c * p2,
        ceiling: nk * nk * NEW_CONSTANT,
        p2_preconditions: bracket && is_min && gap_ok,
    })
}

/// Every bound of one graph checked against exact counts.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundAudit {
    pub checked: usize,
    pub violations: Vec<BoundReport>,
    /// Largest `exact / bound` ratio seen per kind.
    pub tightest: BTreeMap<String, f64>,
}

impl BoundAudit {
    fn record(&mut self, r: BoundReport) {
        self.checked += 1;
        let exact = r.exact.unwrap_or(0) as f64;
        if r.value > 0.0 {
            let key = serde_json::to_value(r.kind)
                .ok()
                .and_then(|v| v.as_str().map(str::to_owned))
                .unwrap_or_default();
            let e = self.tightest.entry(key).or_insert(0.0);
            *e = e.max(exact / r.value);
        }
        if r.pass == Some(false) {
            self.violations.push(r);
        }
    }

    pub fn merge(&mut self, other: BoundAudit) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
        for (k, v) in other.tightest {
            let e = self.tightest.entry(k).or_insert(0.0);
            *e = e.max(v);
        }
    }
}

/// Checks the vertex (k >= 4), edge (k >= 5), cherry (k >= 6) and global
/// bounds on `g` against exact rooted counts.
pub fn audit(g: &Graph, k: usize) -> Result<BoundAudit> {
    need_k(k, 4)?;
    let n = g.n();
    let report = count::count_fast_report(g, k, Detail::Full)?;
    let rooted = report.rooted.as_ref().expect("full report");
    let mut a = BoundAudit::default();
    a.record(
        BoundReport::new(
            BoundKind::GlobalPg,
            global_pg_bound(n, k)?,
            &[("n", n as f64), ("k", k as f64)],
        )
        .against(report.total),
    );
    for v in 0..n {
        let d = g.degree(v);
        a.record(
            BoundReport::new(
                BoundKind::Vertex,
                vertex_bound(n, k, d)?,
                &[("n", n as f64), ("k", k as f64), ("d", d as f64)],
            )
            .against(rooted[v]),
        );
    }
    if k >= 5 {
        for e in report.edge_rooted.as_deref().unwrap_or_default() {
            let (dv, dw, x) = (g.degree(e.v), g.degree(e.w), g.codegree(e.v, e.w)?);
            a.record(
                BoundReport::new(
                    BoundKind::Edge,
                    edge_bound(n, k, dv, dw, x)?,
                    &[
                        ("n", n as f64),
                        ("k", k as f64),
                        ("d_v", dv as f64),
                        ("d_w", dw as f64),
                        ("x_vw", x as f64),
                    ],
                )
                .against(e.count),
            );
        }
    }
    if k >= 6 {
        for ch in report.cherry_rooted.as_deref().unwrap_or_default() {
            let cd = CherryDegrees::of(g, ch.u, ch.v, ch.w)?;
            a.record(
                BoundReport::new(
                    BoundKind::Cherry,
                    cherry_bound(n, k, cd)?,
                    &[
                        ("n", n as f64),
                        ("k", k as f64),
                        ("d_u", cd.d_u as f64),
                        ("d_v", cd.d_v as f64),
                        ("d_w", cd.d_w as f64),
                        ("x_uv", cd.x_uv as f64),
                        ("x_vw", cd.x_vw as f64),
                        ("x_uw", cd.x_uw as f64),
                        ("z_uvw", cd.z_uvw as f64),
                    ],
                )
                .against(ch.count),
            );
        }
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cycle, petersen};

    #[test]
    fn vertex_bound_cases() {
        assert_eq!(vertex_bound(10, 5, 0).unwrap(), 0.0);
        // C_5 vertex: ½·4·(2/2)² = 2
        assert_eq!(vertex_bound(5, 5, 2).unwrap(), 2.0);
        assert!(vertex_bound(10, 3, 2).is_err());
        assert!(vertex_bound(10, 5, 10).is_err());
    }

    #[test]
    fn relaxed_vertex_bound_peaks_at_two_n_over_k_minus_one() {
        for (n, k) in [(100.0, 5), (60.0, 6), (90.0, 8)] {
            let step = 1e-3;
            let (mut best, mut arg) = (f64::MIN, 0.0);
            let mut d = 0.0;
            while d <= n {
                let v = vertex_bound_relaxed(n, k, d);
                if v > best {
                    best = v;
                    arg = d;
                }
                d += step;
            }
            let expected = 2.0 * n / (k - 1) as f64;
            assert!((arg - expected).abs() <= 2.0 * step, "n={n} k={k}: argmax {arg} vs {expected}");
            assert!((best - vertex_bound_peak(n, k)).abs() <= 1e-6 * best);
            assert!(vertex_bound_peak(n, k) <= PG_CONSTANT * (n / k as f64).powi(k as i32 - 1));
        }
    }

    #[test]
    fn edge_bound_cases() {
        assert_eq!(edge_bound(10, 5, 3, 4, 3).unwrap(), 0.0);
        assert_eq!(edge_bound(6, 6, 2, 2, 0).unwrap(), 4.0);
        assert!(edge_bound(6, 4, 2, 2, 0).is_err());
        assert!(edge_bound(6, 6, 2, 2, 3).is_err());
    }

    #[test]
    fn cherry_bound_cases() {
        let zero = CherryDegrees {
            d_u: 2,
            d_v: 2,
            d_w: 2,
            x_uv: 1,
            x_vw: 0,
            x_uw: 1,
            z_uvw: 0,
        };
        assert_eq!(cherry_bound(10, 6, zero).unwrap(), 0.0);
        // C_7 cherry 6-0-1: d = 2, x_uv = x_vw = 0, x_uw = 1 (vertex 0), z = 0
        let g = cycle(7).unwrap();
        let cd = CherryDegrees::of(&g, 6, 0, 1).unwrap();
        assert_eq!(cd, CherryDegrees { d_u: 2, d_v: 2, d_w: 2, x_uv: 0, x_vw: 0, x_uw: 1, z_uvw: 0 });
        // (2-0-1+0)(2-0-1+0)((7-6+1)/2)^2 = 1
        let b = cherry_bound(7, 7, cd).unwrap();
        assert_eq!(b, 1.0);
        assert!(within_bound(count::count_cherry_rooted(&g, 7, 6, 0, 1).unwrap(), b));
        let bad = CherryDegrees { x_uw: 5, ..cd };
        assert!(cherry_bound(7, 7, bad).is_err());
        assert!(cherry_bound(7, 5, cd).is_err());
    }

    #[test]
    fn global_bounds() {
        let v = global_pg_bound(10, 5).unwrap();
        assert!((v - 64.0 * E).abs() < 1e-12);
        assert!((v - 173.97).abs() < 0.01);
        assert!((global_pg_bound(7, 7).unwrap() - 2.0 * E).abs() < 1e-12);
        assert!(global_pg_bound(4, 5).is_err());
    }

    #[test]
    fn bracket_values() {
        assert!((NEW_CONSTANT - 4.2955).abs() < 1e-4);
        assert!((PG_CONSTANT - 5.4366).abs() < 1e-4);
        let b = inducibility_bracket(5).unwrap();
        assert!((b.lower - 1.0 / 26.0).abs() < 1e-15);
        assert!(!b.upper_established);
        let b = inducibility_bracket(10).unwrap();
        let corrected = NEW_CONSTANT * (1.0 - 10f64.powi(-9));
        assert!((b.upper / b.lower - corrected).abs() < 1e-12 * corrected);
        assert!((b.upper / b.lower / NEW_CONSTANT - 1.0).abs() < 0.01);
        assert!(inducibility_bracket(4).is_err());
    }

    #[test]
    fn density_sequence_cases() {
        let s = density_sequence(4, &BTreeMap::from([(4, 1)])).unwrap();
        assert_eq!(s.entries[0].density, Ratio::from_integer(1));
        let s = density_sequence(5, &BTreeMap::from([(5, 1), (6, 2), (7, 5)])).unwrap();
        assert_eq!(s.entries[1].density, Ratio::new(1, 3));
        assert_eq!(s.entries[2].density, Ratio::new(5, 21));
        assert!(s.monotone);
        let s = density_sequence(5, &BTreeMap::from([(5, 1), (6, 7)])).unwrap();
        assert!(!s.monotone);
        assert_eq!(s.violations, vec![6]);
        assert_eq!(
            density_sequence(5, &BTreeMap::from([(5, 1), (7, 1)])),
            Err(Error::SequenceGap(6))
        );
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(25, 5), 53130);
        assert_eq!(binomial(40, 6), 3_838_380);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn audit_petersen() {
        for k in [5, 6] {
            let a = audit(&petersen(), k).unwrap();
            assert!(a.violations.is_empty());
            assert!(a.checked > 10);
        }
    }

    #[test]
    fn normalised_sums_bound_rooted_counts() {
        let g = petersen();
        for k in [6, 7] {
            for v in 0..10 {
                let exact = count::count_rooted(&g, k, v).unwrap();
                assert!(within_bound(exact, edge_sum_bound(&g, k, v).unwrap()));
                assert!(within_bound(exact, cherry_sum_bound(&g, k, v).unwrap()));
            }
        }
    }

    #[test]
    fn program_on_empty_large_set() {
        let g = cycle(8).unwrap();
        let p = cherry_program(&g, 8, 0).unwrap();
        // c = 2, x_u = 0: L empty so P_1 = P_2
        assert!(p.large.is_empty());
        assert!((p.p1 - p.p2).abs() < 1e-12);
        assert!(!p.p2_preconditions);
    }
}

//! Exact counting of induced k-cycles.
//!
//! Two independent routes are provided:
//!
//! * [`count_oracle`] checks every k-subset with [`is_induced_cycle`];
//! * [`count_fast`] builds each cycle as a path `p_0 p_1 … p_{k-1}` one vertex
//!   at a time. A new interior vertex must be adjacent to the tip and lie
//!   outside the *forbidden* set, the union of the closed neighbourhoods of
//!   every earlier path vertex except the tip. The closing vertex must also
//!   be adjacent to the root.
//!
//! Each cycle is produced exactly once by rooting it at its minimum label and
//! requiring `p_1 < p_{k-1}`. The rooted variants reuse the same extender with
//! the root (and optionally the first/last vertex) pinned.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Exact count type. Counts grow by one per enumerated cycle, so 128 bits
/// cannot be exhausted; merges still use checked addition.
pub type Count = u128;

fn checked_sum(a: Count, b: Count) -> Result<Count> {
    a.checked_add(b).ok_or(Error::CountOverflow)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeCount {
    pub v: usize,
    pub w: usize,
    pub count: Count,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CherryCount {
    pub u: usize,
    pub v: usize,
    pub w: usize,
    pub count: Count,
}

/// `D_k(G)` plus optional rooted refinements.
///
/// `edge_rooted` lists every ordered pair `(v, w)` with `vw ∈ E`, sorted;
/// `cherry_rooted` lists every `(u, v, w)` with `(u, w) ∈ A_v`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub k: usize,
    pub total: Count,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rooted: Option<Vec<Count>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub edge_rooted: Option<Vec<EdgeCount>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cherry_rooted: Option<Vec<CherryCount>>,
}

impl CountReport {
    pub fn edge(&self, v: usize, w: usize) -> Option<Count> {
        let list = self.edge_rooted.as_ref()?;
        list.binary_search_by(|e| (e.v, e.w).cmp(&(v, w)))
            .ok()
            .map(|i| list[i].count)
    }

    pub fn cherry(&self, u: usize, v: usize, w: usize) -> Option<Count> {
        let list = self.cherry_rooted.as_ref()?;
        list.binary_search_by(|c| (c.v, c.u, c.w).cmp(&(v, u, w)))
            .ok()
            .map(|i| list[i].count)
    }

    /// Checks the three handshake identities on whatever refinements are
    /// present. Returns a description of the first failure.
    pub fn check_identities(&self, g: &Graph) -> std::result::Result<(), String> {
        let Some(rooted) = &self.rooted else {
            return Ok(());
        };
        let sum: Count = rooted.iter().sum();
        if sum != self.k as Count * self.total {
            return Err(format!("k*D_k = {} but sum of rooted = {sum}", self.k as Count * self.total));
        }
        for v in 0..g.n() {
            if self.edge_rooted.is_some() {
                let s: Count = g.neighbors(v).map(|w| self.edge(v, w).unwrap_or(0)).sum();
                if s != 2 * rooted[v] {
                    return Err(format!("vertex {v}: edge-rooted sum {s} != 2*{}", rooted[v]));
                }
            }
            if self.cherry_rooted.is_some() {
                let pairs = g.nonadjacent_neighbor_pairs(v).map_err(|e| e.to_string())?;
                let s: Count = pairs.iter().map(|&(u, w)| self.cherry(u, v, w).unwrap_or(0)).sum();
                if s != 2 * rooted[v] {
                    return Err(format!("vertex {v}: cherry-rooted sum {s} != 2*{}", rooted[v]));
                }
            }
        }
        Ok(())
    }
}

/// How much rooted detail [`count_fast_report`] collects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Detail {
    Total,
    Rooted,
    Full,
}

// ---------------------------------------------------------------------------
// Oracle

/// True iff `G[s]` is a single cycle: every vertex has exactly two neighbours
/// inside `s` and `G[s]` is connected.
pub fn is_induced_cycle(g: &Graph, s: &[usize]) -> Result<bool> {
    if s.len() < 3 {
        return Err(Error::SetTooSmall(s.len()));
    }
    let mut mask = vec![0u64; g.words()];
    for &v in s {
        g.check_vertex(v)?;
        if bits::get(&mask, v) {
            return Err(Error::RepeatedVertex);
        }
        bits::set(&mut mask, v);
    }
    Ok(induced_cycle_mask(g, s, &mask))
}

fn induced_cycle_mask(g: &Graph, s: &[usize], mask: &[u64]) -> bool {
    if s.iter().any(|&v| bits::count_and(g.row(v), mask) != 2) {
        return false;
    }
    // 2-regular, so G[s] is one cycle iff it is connected
    let mut seen = vec![0u64; mask.len()];
    let mut stack = vec![s[0]];
    bits::set(&mut seen, s[0]);
    let mut reached = 1;
    while let Some(cur) = stack.pop() {
        for x in bits::ones(g.row(cur)) {
            if bits::get(mask, x) && !bits::get(&seen, x) {
                bits::set(&mut seen, x);
                reached += 1;
                stack.push(x);
            }
        }
    }
    reached == s.len()
}

fn check_k(g: &Graph, k: usize, min: usize) -> Result<()> {
    if k < min || k > g.n() {
        return Err(Error::CycleLength { k, min, max: g.n() });
    }
    Ok(())
}

/// Visits every k-subset of `pool` (in lexicographic order) extended by `fixed`.
fn for_each_subset(g: &Graph, fixed: &[usize], pool: &[usize], k: usize, mut f: impl FnMut(&[usize], &[u64])) {
    let need = k - fixed.len();
    let m = pool.len();
    if need > m {
        return;
    }
    let mut idx: Vec<usize> = (0..need).collect();
    let mut set = fixed.to_vec();
    set.extend(idx.iter().map(|&i| pool[i]));
    let mut mask = vec![0u64; g.words()];
    'outer: loop {
        mask.iter_mut().for_each(|w| *w = 0);
        for &v in &set {
            bits::set(&mut mask, v);
        }
        f(&set, &mask);
        let mut i = need;
        while i > 0 {
            i -= 1;
            if idx[i] < m - need + i {
                idx[i] += 1;
                for j in i + 1..need {
                    idx[j] = idx[j - 1] + 1;
                }
                for j in i..need {
                    set[fixed.len() + j] = pool[idx[j]];
                }
                continue 'outer;
            }
        }
        return;
    }
}

/// Definitional count: tests every k-subset. Supports `3 <= k <= n` and
/// also reports `D_k(G, v)` for every vertex.
pub fn count_oracle(g: &Graph, k: usize) -> Result<CountReport> {
    check_k(g, k, 3)?;
    let pool: Vec<usize> = (0..g.n()).collect();
    let mut total: Count = 0;
    let mut rooted = vec![0 as Count; g.n()];
    for_each_subset(g, &[], &pool, k, |s, mask| {
        if induced_cycle_mask(g, s, mask) {
            total += 1;
            for &v in s {
                rooted[v] += 1;
            }
        }
    });
    Ok(CountReport {
        k,
        total,
        rooted: Some(rooted),
        edge_rooted: None,
        cherry_rooted: None,
    })
}

/// Number of induced k-cycles containing every vertex in `required`, by
/// subset enumeration.
pub fn count_oracle_containing(g: &Graph, k: usize, required: &[usize]) -> Result<Count> {
    check_k(g, k, 3)?;
    for (i, &v) in required.iter().enumerate() {
        g.check_vertex(v)?;
        if required[..i].contains(&v) {
            return Err(Error::RepeatedVertex);
        }
    }
    if required.len() > k {
        return Ok(0);
    }
    let pool: Vec<usize> = (0..g.n()).filter(|v| !required.contains(v)).collect();
    let mut total: Count = 0;
    if required.len() == k {
        return Ok(is_induced_cycle(g, required)? as Count);
    }
    for_each_subset(g, required, &pool, k, |s, mask| {
        if induced_cycle_mask(g, s, mask) {
            total += 1;
        }
    });
    Ok(total)
}

// ---------------------------------------------------------------------------
// Path-extension enumerator

/// Enumeration state of one branch of the path extender.
///
/// `layers[i]` holds `N[p_1] ∪ … ∪ N[p_i]` (closed neighbourhoods), with
/// `layers[0]` empty. The forbidden set for the next interior extension from
/// a tip at depth `i >= 1` is `N[root] ∪ layers[i-1]`; it only grows along a
/// branch.
#[derive(Debug, Clone)]
pub struct ExclusionTrace {
    root: usize,
    words: usize,
    path: Vec<usize>,
    root_closed: Vec<u64>,
    layers: Vec<u64>,
}

impl ExclusionTrace {
    fn new(g: &Graph, k: usize, root: usize) -> Self {
        let words = g.words();
        let mut path = Vec::with_capacity(k);
        path.push(root);
        ExclusionTrace {
            root,
            words,
            path,
            root_closed: g.closed_row(root),
            layers: vec![0; words * k],
        }
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn path(&self) -> &[usize] {
        &self.path
    }

    pub fn tip(&self) -> usize {
        *self.path.last().expect("path holds the root")
    }

    fn layer(&self, i: usize) -> &[u64] {
        &self.layers[i * self.words..(i + 1) * self.words]
    }

    /// Vertices excluded from the next interior extension.
    pub fn forbidden(&self) -> Vec<u64> {
        let depth = self.path.len() - 1;
        if depth == 0 {
            return vec![0; self.words];
        }
        self.root_closed
            .iter()
            .zip(self.layer(depth - 1))
            .map(|(a, b)| a | b)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Pins {
    first: Option<usize>,
    last: Option<usize>,
    required: Option<usize>,
    break_direction: bool,
}

struct Extender<'g, F: FnMut(&[usize])> {
    g: &'g Graph,
    k: usize,
    allowed: Vec<u64>,
    pins: Pins,
    trace: ExclusionTrace,
    cands: Vec<u64>,
    visit: F,
}

impl<'g, F: FnMut(&[usize])> Extender<'g, F> {
    fn new(g: &'g Graph, k: usize, root: usize, allowed: Vec<u64>, pins: Pins, visit: F) -> Self {
        Extender {
            g,
            k,
            allowed,
            pins,
            trace: ExclusionTrace::new(g, k, root),
            cands: vec![0; g.words() * k],
            visit,
        }
    }

    fn run(&mut self) {
        self.grow(0);
    }

    fn grow(&mut self, depth: usize) {
        let w = self.trace.words;
        let k = self.k;
        let tip = self.trace.path[depth];
        let root = self.trace.root;
        let g = self.g;

        if depth == k - 2 {
            // closing vertex: adjacent to tip and root, clear of N[p_1..p_{k-3}]
            {
                let inner = &self.trace.layers[(depth - 1) * w..depth * w];
                let (tip_row, root_row) = (g.row(tip), g.row(root));
                let cand = &mut self.cands[depth * w..(depth + 1) * w];
                for i in 0..w {
                    cand[i] = tip_row[i] & root_row[i] & self.allowed[i] & !inner[i];
                }
            }
            for i in 0..w {
                let mut word = self.cands[depth * w + i];
                while word != 0 {
                    let last = i * 64 + word.trailing_zeros() as usize;
                    word &= word - 1;
                    if self.accept_last(last) {
                        self.trace.path.push(last);
                        (self.visit)(&self.trace.path);
                        self.trace.path.pop();
                    }
                }
            }
            return;
        }

        if depth >= 1 {
            // layers[depth] = layers[depth-1] ∪ N[tip]
            let (lo, hi) = self.trace.layers.split_at_mut(depth * w);
            let prev = &lo[(depth - 1) * w..];
            let cur = &mut hi[..w];
            for i in 0..w {
                cur[i] = prev[i] | g.row(tip)[i];
            }
            bits::set(cur, tip);
            // every later vertex avoids layers[depth-1]; the closing vertex
            // also avoids layers[depth]
            if let Some(last) = self.pins.last {
                if bits::get(&self.trace.layers[depth * w..(depth + 1) * w], last) {
                    return;
                }
            }
            if let Some(req) = self.pins.required {
                let settled = &self.trace.layers[(depth - 1) * w..depth * w];
                if bits::get(settled, req) && !self.trace.path.contains(&req) {
                    return;
                }
            }
        }

        {
            let cand = &mut self.cands[depth * w..(depth + 1) * w];
            let tip_row = g.row(tip);
            if depth == 0 {
                for i in 0..w {
                    cand[i] = tip_row[i] & self.allowed[i];
                }
                if let Some(first) = self.pins.first {
                    let keep = bits::get(cand, first);
                    cand.iter_mut().for_each(|x| *x = 0);
                    if keep {
                        bits::set(cand, first);
                    }
                }
                if let Some(last) = self.pins.last {
                    bits::clear(cand, last);
                }
            } else {
                let prev = &self.trace.layers[(depth - 1) * w..depth * w];
                for i in 0..w {
                    cand[i] = tip_row[i] & self.allowed[i] & !self.trace.root_closed[i] & !prev[i];
                }
            }
        }

        for i in 0..w {
            let mut word = self.cands[depth * w + i];
            while word != 0 {
                let next = i * 64 + word.trailing_zeros() as usize;
                word &= word - 1;
                self.trace.path.push(next);
                self.grow(depth + 1);
                self.trace.path.pop();
            }
        }
    }

    #[inline]
    fn accept_last(&self, last: usize) -> bool {
        let p = &self.pins;
        if p.last.is_some_and(|l| l != last) {
            return false;
        }
        if p.break_direction && self.trace.path[1] > last {
            return false;
        }
        if let Some(req) = p.required {
            if req != last && !self.trace.path.contains(&req) {
                return false;
            }
        }
        true
    }
}

fn enumerate_rooted(g: &Graph, k: usize, root: usize, allowed: Vec<u64>, pins: Pins, visit: impl FnMut(&[usize])) {
    Extender::new(g, k, root, allowed, pins, visit).run();
}

/// Visits every induced k-cycle exactly once as a vertex sequence starting at
/// its minimum label. Roots are processed in increasing order.
pub fn for_each_cycle(g: &Graph, k: usize, mut visit: impl FnMut(&[usize])) -> Result<()> {
    check_k(g, k, 4)?;
    for root in 0..g.n() {
        let allowed = bits::range_from(g.n(), root + 1);
        let pins = Pins {
            break_direction: true,
            ..Pins::default()
        };
        enumerate_rooted(g, k, root, allowed, pins, &mut visit);
    }
    Ok(())
}

fn count_from_root(g: &Graph, k: usize, root: usize) -> Count {
    let mut c: Count = 0;
    let allowed = bits::range_from(g.n(), root + 1);
    let pins = Pins {
        break_direction: true,
        ..Pins::default()
    };
    enumerate_rooted(g, k, root, allowed, pins, |_| c += 1);
    c
}

/// `D_k(G)` by canonical path extension; parallel over roots.
pub fn count_fast(g: &Graph, k: usize) -> Result<Count> {
    check_k(g, k, 4)?;
    (0..g.n())
        .into_par_iter()
        .map(|r| Ok(count_from_root(g, k, r)))
        .try_reduce(|| 0, checked_sum)
}

#[derive(Default)]
struct Tally {
    total: Count,
    rooted: Vec<Count>,
    edges: HashMap<(usize, usize), Count>,
    cherries: HashMap<(usize, usize, usize), Count>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Result<Tally> {
        self.total = checked_sum(self.total, other.total)?;
        if self.rooted.len() < other.rooted.len() {
            self.rooted.resize(other.rooted.len(), 0);
        }
        for (a, b) in self.rooted.iter_mut().zip(other.rooted) {
            *a = checked_sum(*a, b)?;
        }
        for (key, c) in other.edges {
            let e = self.edges.entry(key).or_insert(0);
            *e = checked_sum(*e, c)?;
        }
        for (key, c) in other.cherries {
            let e = self.cherries.entry(key).or_insert(0);
            *e = checked_sum(*e, c)?;
        }
        Ok(self)
    }
}

/// `D_k(G)` with rooted refinements collected in the same pass.
pub fn count_fast_report(g: &Graph, k: usize, detail: Detail) -> Result<CountReport> {
    check_k(g, k, 4)?;
    let n = g.n();
    let tally = (0..n)
        .into_par_iter()
        .map(|root| {
            let mut t = Tally::default();
            if detail >= Detail::Rooted {
                t.rooted = vec![0; n];
            }
            let allowed = bits::range_from(n, root + 1);
            let pins = Pins {
                break_direction: true,
                ..Pins::default()
            };
            enumerate_rooted(g, k, root, allowed, pins, |cyc| {
                t.total += 1;
                if detail >= Detail::Rooted {
                    for &v in cyc {
                        t.rooted[v] += 1;
                    }
                }
                if detail == Detail::Full {
                    for i in 0..k {
                        let a = cyc[(i + k - 1) % k];
                        let c = cyc[i];
                        let b = cyc[(i + 1) % k];
                        *t.edges.entry((c, b)).or_insert(0) += 1;
                        *t.edges.entry((b, c)).or_insert(0) += 1;
                        *t.cherries.entry((a, c, b)).or_insert(0) += 1;
                        *t.cherries.entry((b, c, a)).or_insert(0) += 1;
                    }
                }
            });
            Ok(t)
        })
        .try_reduce(Tally::default, Tally::merge)?;

    let rooted = (detail >= Detail::Rooted).then(|| {
        let mut r = tally.rooted.clone();
        r.resize(n, 0);
        r
    });
    let (edge_rooted, cherry_rooted) = if detail == Detail::Full {
        let mut edges = Vec::new();
        let mut cherries = Vec::new();
        for v in 0..n {
            for w in g.neighbors(v) {
                edges.push(EdgeCount {
                    v,
                    w,
                    count: tally.edges.get(&(v, w)).copied().unwrap_or(0),
                });
            }
            for (u, w) in g.nonadjacent_neighbor_pairs(v)? {
                cherries.push(CherryCount {
                    u,
                    v,
                    w,
                    count: tally.cherries.get(&(u, v, w)).copied().unwrap_or(0),
                });
            }
        }
        edges.sort_by_key(|e| (e.v, e.w));
        cherries.sort_by_key(|c| (c.v, c.u, c.w));
        (Some(edges), Some(cherries))
    } else {
        (None, None)
    };
    Ok(CountReport {
        k,
        total: tally.total,
        rooted,
        edge_rooted,
        cherry_rooted,
    })
}

fn all_but(n: usize, skip: usize) -> Vec<u64> {
    let mut a = bits::range_from(n, 0);
    bits::clear(&mut a, skip);
    a
}

/// `D_k(G, v)`: induced k-cycles through `v`, with `v` pinned as the root.
pub fn count_rooted(g: &Graph, k: usize, v: usize) -> Result<Count> {
    check_k(g, k, 4)?;
    g.check_vertex(v)?;
    let mut c: Count = 0;
    let pins = Pins {
        break_direction: true,
        ..Pins::default()
    };
    enumerate_rooted(g, k, v, all_but(g.n(), v), pins, |_| c += 1);
    Ok(c)
}

/// `D_k(G, v, w)` for an edge `vw`: in an induced cycle two adjacent vertices
/// are cycle-neighbours, so pinning `p_0 = v`, `p_1 = w` fixes the direction.
pub fn count_edge_rooted(g: &Graph, k: usize, v: usize, w: usize) -> Result<Count> {
    check_k(g, k, 4)?;
    g.check_vertex(v)?;
    g.check_vertex(w)?;
    if v == w || !g.has_edge(v, w) {
        return Err(Error::NotAnEdge { u: v, w });
    }
    let mut c: Count = 0;
    let pins = Pins {
        first: Some(w),
        ..Pins::default()
    };
    enumerate_rooted(g, k, v, all_but(g.n(), v), pins, |_| c += 1);
    Ok(c)
}

/// `D_k(G, u, v, w)` for a cherry `u – v – w` (`uw ∉ E`): cycles in which `u`
/// and `w` are the two cycle-neighbours of `v`.
pub fn count_cherry_rooted(g: &Graph, k: usize, u: usize, v: usize, w: usize) -> Result<Count> {
    check_k(g, k, 4)?;
    for x in [u, v, w] {
        g.check_vertex(x)?;
    }
    if u == w || u == v || v == w || !g.has_edge(u, v) || !g.has_edge(v, w) || g.has_edge(u, w) {
        return Err(Error::NotACherry { u, v, w });
    }
    let mut c: Count = 0;
    let pins = Pins {
        first: Some(u),
        last: Some(w),
        ..Pins::default()
    };
    enumerate_rooted(g, k, v, all_but(g.n(), v), pins, |_| c += 1);
    Ok(c)
}

/// Number of induced k-cycles containing both `a` and `b` (adjacent or not).
pub fn count_containing_pair(g: &Graph, k: usize, a: usize, b: usize) -> Result<Count> {
    check_k(g, k, 4)?;
    g.check_vertex(a)?;
    g.check_vertex(b)?;
    if a == b {
        return Err(Error::RepeatedVertex);
    }
    let mut c: Count = 0;
    let pins = Pins {
        required: Some(b),
        break_direction: true,
        ..Pins::default()
    };
    enumerate_rooted(g, k, a, all_but(g.n(), a), pins, |_| c += 1);
    Ok(c)
}

/// Zykov symmetrisation: delete every edge at `v_minus`, then make it a
/// non-adjacent twin of `v_plus` (joined to `N(v_plus) \ {v_minus}`).
pub fn symmetrise(g: &Graph, v_minus: usize, v_plus: usize) -> Result<Graph> {
    g.check_vertex(v_minus)?;
    g.check_vertex(v_plus)?;
    if v_minus == v_plus {
        return Err(Error::RepeatedVertex);
    }
    let targets: Vec<usize> = g.neighbors(v_plus).filter(|&x| x != v_minus).collect();
    Ok(g.with_rewired(v_minus, targets.into_iter()))
}

//! `I_{C_k}(n)`: the maximum number of induced `k`-cycles over `n`-vertex
//! graphs, exactly by labeled enumeration for small `n` and as a certified
//! lower bound by local search otherwise.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{density_sequence, DensitySequence};
use crate::constructions::{balanced_blow_up, cycle, iterated_blow_up};
use crate::count::{self, Count, Detail};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::to_graph6;
use crate::rng;

/// Largest `n` searched exhaustively without an override.
pub const EXHAUSTIVE_CEILING: usize = 7;
/// Largest `n` accepted with the override.
pub const EXHAUSTIVE_OVERRIDE_MAX: usize = 8;
pub const MAX_WITNESSES: usize = 10;
/// Witnesses up to this order are re-counted by the subset oracle.
pub const ORACLE_RECOUNT_MAX: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Exhaustive,
    Local,
}

impl SearchMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchMode::Exhaustive => "exhaustive",
            SearchMode::Local => "local",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub n: usize,
    pub k: usize,
    pub best_count: Count,
    /// graph6 strings, ascending.
    pub witnesses: Vec<String>,
    pub exhaustive: bool,
    pub explored: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub budget: Option<u64>,
    pub runtime_ms: u64,
}

impl SearchResult {
    /// Recounts every witness with `count_fast` and, for small orders, with
    /// the subset oracle.
    pub fn verify_witnesses(&self) -> Result<bool> {
        for w in &self.witnesses {
            let g = crate::io::from_graph6(w)?;
            if g.n() != self.n || count::count_fast(&g, self.k)? != self.best_count {
                return Ok(false);
            }
            if g.n() <= ORACLE_RECOUNT_MAX && count::count_oracle(&g, self.k)?.total != self.best_count {
                return Ok(false);
            }
        }
        Ok(!self.witnesses.is_empty())
    }
}

// ---------------------------------------------------------------------------
// Exhaustive search

/// Pair `(u, w)`, `u < w`, in row-major order: edge bit `i` of a mask.
fn pair_list(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |w| (u, w))).collect()
}

/// All `k`-subsets of `0..n` as bitmasks.
fn subset_masks(n: usize, k: usize) -> Vec<u64> {
    (0u64..1 << n).filter(|m| m.count_ones() as usize == k).collect()
}

/// Induced `k`-cycles of a graph on at most 64 vertices given by rows.
fn small_count(adj: &[u64], subsets: &[u64]) -> Count {
    let mut total = 0;
    'subset: for &s in subsets {
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if (adj[v] & s).count_ones() != 2 {
                continue 'subset;
            }
        }
        // 2-regular on s: a cycle iff connected
        let mut reach = s & s.wrapping_neg();
        loop {
            let mut next = reach;
            let mut r = reach;
            while r != 0 {
                let v = r.trailing_zeros() as usize;
                r &= r - 1;
                next |= adj[v] & s;
            }
            if next == reach {
                break;
            }
            reach = next;
        }
        if reach == s {
            total += 1;
        }
    }
    total
}

#[derive(Default)]
struct Best {
    count: Count,
    witnesses: BTreeSet<String>,
    explored: u64,
    seen: bool,
}

impl Best {
    fn offer(&mut self, count: Count, witness: impl FnOnce() -> String) {
        if !self.seen || count > self.count {
            self.seen = true;
            self.count = count;
            self.witnesses.clear();
        } else if count < self.count {
            return;
        }
        let w = witness();
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.insert(w);
        } else if self.witnesses.last().is_some_and(|last| w < *last) {
            self.witnesses.insert(w);
            self.witnesses.pop_last();
        }
    }

    fn merge(mut self, other: Best) -> Best {
        self.explored += other.explored;
        if !other.seen {
            return self;
        }
        if !self.seen || other.count > self.count {
            return Best { explored: self.explored, ..other };
        }
        if other.count == self.count {
            self.witnesses.extend(other.witnesses);
            while self.witnesses.len() > MAX_WITNESSES {
                self.witnesses.pop_last();
            }
        }
        self
    }
}

/// Exact `I_{C_k}(n)` for `n <= 7`.
pub fn exhaustive_max(n: usize, k: usize) -> Result<SearchResult> {
    exhaustive_max_with(n, k, false)
}

/// Exact `I_{C_k}(n)`; `allow_override` admits `n` up to
/// [`EXHAUSTIVE_OVERRIDE_MAX`].
///
/// Labeled graphs are enumerated as edge masks. Only graphs whose degree
/// sequence is non-increasing in label order are counted; every graph has
/// such a relabeling, so each isomorphism class is covered.
pub fn exhaustive_max_with(n: usize, k: usize, allow_override: bool) -> Result<SearchResult> {
    let ceiling = if allow_override { EXHAUSTIVE_OVERRIDE_MAX } else { EXHAUSTIVE_CEILING };
    if n > ceiling {
        return Err(Error::SearchCeiling { n, ceiling });
    }
    if k < 3 || k > n {
        return Err(Error::CycleLength { k, min: 3, max: n });
    }
    let start = Instant::now();
    let pairs = pair_list(n);
    let subsets = subset_masks(n, k);
    let bits = pairs.len();
    // blocks over the high edge bits
    let block_bits = bits.min(10);
    let low_bits = bits - block_bits;
    let best = (0u64..1 << block_bits)
        .into_par_iter()
        .map(|block| {
            let mut best = Best::default();
            let mut adj = vec![0u64; n];
            for low in 0u64..1 << low_bits {
                let mask = block << low_bits | low;
                adj.iter_mut().for_each(|r| *r = 0);
                for (i, &(u, w)) in pairs.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        adj[u] |= 1 << w;
                        adj[w] |= 1 << u;
                    }
                }
                if adj.windows(2).any(|p| p[0].count_ones() < p[1].count_ones()) {
                    continue;
                }
                best.explored += 1;
                let c = small_count(&adj, &subsets);
                best.offer(c, || {
                    let g = Graph::from_fn(n, |u, w| adj[u] >> w & 1 == 1).expect("n within range");
                    to_graph6(&g)
                });
            }
            best
        })
        .reduce(Best::default, Best::merge);
    Ok(SearchResult {
        n,
        k,
        best_count: best.count,
        witnesses: best.witnesses.into_iter().collect(),
        exhaustive: true,
        explored: best.explored,
        seed: None,
        budget: None,
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}

// ---------------------------------------------------------------------------
// Local search

/// Feasible starting points: the balanced blow-up of `C_k` and, when
/// `n = k^m`, the depth-`m` iterated blow-up.
pub fn seed_candidates(n: usize, k: usize) -> Result<Vec<Graph>> {
    let base = cycle(k)?;
    let mut out = vec![balanced_blow_up(&base, n)?.graph];
    let mut size = k;
    let mut depth = 1;
    while size < n {
        size = size.saturating_mul(k);
        depth += 1;
    }
    if size == n && depth >= 2 {
        out.push(iterated_blow_up(&base, depth)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    Toggle(usize, usize),
    Symmetrise { v_minus: usize, v_plus: usize },
}

struct Chain {
    n: usize,
    k: usize,
    rng: rng::SeededRng,
    current: Graph,
    current_count: Count,
    rooted: Option<Vec<Count>>,
    best: Graph,
    best_count: Count,
}

impl Chain {
    fn rooted(&mut self) -> Result<&[Count]> {
        if self.rooted.is_none() {
            let r = count::count_fast_report(&self.current, self.k, Detail::Rooted)?;
            self.rooted = r.rooted;
        }
        Ok(self.rooted.as_deref().expect("rooted counts"))
    }

    fn pick(&mut self, extreme: impl Fn(Count, Count) -> bool) -> Result<usize> {
        let rooted = self.rooted()?.to_vec();
        let target = rooted.iter().copied().reduce(|a, b| if extreme(b, a) { b } else { a }).expect("n >= 1");
        let ties: Vec<usize> = (0..rooted.len()).filter(|&v| rooted[v] == target).collect();
        Ok(ties[self.rng.gen_range(0..ties.len())])
    }

    fn propose(&mut self) -> Result<Option<Graph>> {
        if self.rng.gen_bool(0.5) {
            let u = self.rng.gen_range(0..self.n);
            let mut w = self.rng.gen_range(0..self.n - 1);
            if w >= u {
                w += 1;
            }
            Ok(Some(self.current.with_edge_toggled(u, w)?))
        } else {
            let v_minus = self.pick(|a, b| a < b)?;
            let v_plus = self.pick(|a, b| a > b)?;
            if v_minus == v_plus {
                return Ok(None);
            }
            Ok(Some(count::symmetrise(&self.current, v_minus, v_plus)?))
        }
    }

    fn accept(&mut self, g: Graph, c: Count) {
        self.current = g;
        self.current_count = c;
        self.rooted = None;
        if c > self.best_count {
            self.best = self.current.clone();
            self.best_count = c;
        }
    }

    fn restart(&mut self) -> Result<()> {
        let mut g = self.best.clone();
        for _ in 0..self.n.div_ceil(2) {
            let u = self.rng.gen_range(0..self.n);
            let w = (u + 1 + self.rng.gen_range(0..self.n - 1)) % self.n;
            g = g.with_edge_toggled(u, w)?;
        }
        let c = count::count_fast(&g, self.k)?;
        self.accept(g, c);
        Ok(())
    }

    fn run(&mut self, budget: u64) -> Result<()> {
        let patience = (budget / 10).max(1);
        let mut stale = 0;
        for _ in 0..budget {
            let Some(candidate) = self.propose()? else {
                stale += 1;
                continue;
            };
            let c = count::count_fast(&candidate, self.k)?;
            if c > self.current_count {
                stale = 0;
                self.accept(candidate, c);
            } else {
                stale += 1;
                if c == self.current_count && self.rng.gen_bool(0.5) {
                    self.accept(candidate, c);
                }
            }
            if stale >= patience {
                stale = 0;
                self.restart()?;
            }
        }
        Ok(())
    }
}

/// Hill climbing from the best constructed candidate with edge toggles and
/// symmetrisation moves. The result is a lower bound on `I_{C_k}(n)`.
pub fn local_search_max(n: usize, k: usize, budget: u64, seed: u64) -> Result<SearchResult> {
    local_search_chains(n, k, budget, seed, 1)
}

/// `chains` independent runs of [`local_search_max`] (chain `i` on stream
/// `i` of `seed`), best kept.
pub fn local_search_chains(n: usize, k: usize, budget: u64, seed: u64, chains: usize) -> Result<SearchResult> {
    if k < 3 || n < k {
        return Err(Error::CycleLength { k, min: 3, max: n });
    }
    let start = Instant::now();
    let mut init = None;
    for g in seed_candidates(n, k)? {
        let c = count::count_fast(&g, k)?;
        if init.as_ref().is_none_or(|(_, best)| c > *best) {
            init = Some((g, c));
        }
    }
    let (init, init_count) = init.expect("at least one candidate");
    let results: Vec<(Count, String)> = (0..chains.max(1) as u64)
        .into_par_iter()
        .map(|i| {
            let mut chain = Chain {
                n,
                k,
                rng: rng::split(seed, i),
                current: init.clone(),
                current_count: init_count,
                rooted: None,
                best: init.clone(),
                best_count: init_count,
            };
            chain.run(budget)?;
            Ok((chain.best_count, to_graph6(&chain.best)))
        })
        .collect::<Result<_>>()?;
    let best_count = results.iter().map(|r| r.0).max().expect("one chain");
    let witnesses: BTreeSet<String> = results.into_iter().filter(|r| r.0 == best_count).map(|r| r.1).collect();
    Ok(SearchResult {
        n,
        k,
        best_count,
        witnesses: witnesses.into_iter().take(MAX_WITNESSES).collect(),
        exhaustive: false,
        explored: budget * chains.max(1) as u64,
        seed: Some(seed),
        budget: Some(budget),
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}

// ---------------------------------------------------------------------------
// Monotonicity

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub k: usize,
    pub results: Vec<SearchResult>,
    pub sequence: DensitySequence,
    /// Balanced blow-up count per `n`, a feasible point for each entry.
    pub blowup_counts: Vec<Count>,
    pub dominates_blowup: bool,
    pub pass: bool,
}

/// Exhaustive values for `n = k..=n_max` and their density sequence.
pub fn monotonicity_report(k: usize, n_max: usize) -> Result<MonotonicityReport> {
    let mut results = Vec::new();
    let mut counts = BTreeMap::new();
    let mut blowup_counts = Vec::new();
    for n in k..=n_max {
        let r = exhaustive_max(n, k)?;
        counts.insert(n, r.best_count);
        blowup_counts.push(count::count_fast(&balanced_blow_up(&cycle(k)?, n)?.graph, k)?);
        results.push(r);
    }
    let sequence = density_sequence(k, &counts)?;
    let dominates_blowup = results.iter().zip(&blowup_counts).all(|(r, &b)| r.best_count >= b);
    Ok(MonotonicityReport {
        k,
        pass: sequence.monotone && dominates_blowup,
        results,
        sequence,
        blowup_counts,
        dominates_blowup,
    })
}

// ---------------------------------------------------------------------------
// Results cache

/// A directory of JSON search records keyed by `(n, k, mode)`; local runs
/// also key on seed and budget.
#[derive(Debug, Clone)]
pub struct ResultsCache {
    dir: PathBuf,
}

impl ResultsCache {
    pub fn new(dir: impl AsRef<Path>) -> Result<Self> {
        std::fs::create_dir_all(dir.as_ref())?;
        Ok(ResultsCache { dir: dir.as_ref().to_path_buf() })
    }

    fn path(&self, n: usize, k: usize, mode: SearchMode, seed: Option<u64>, budget: Option<u64>) -> PathBuf {
        let mut name = format!("{}-n{n}-k{k}", mode.as_str());
        if mode == SearchMode::Local {
            name += &format!("-s{}-b{}", seed.unwrap_or(0), budget.unwrap_or(0));
        }
        self.dir.join(name + ".json")
    }

    pub fn get(&self, n: usize, k: usize, mode: SearchMode, seed: Option<u64>, budget: Option<u64>) -> Result<Option<SearchResult>> {
        let p = self.path(n, k, mode, seed, budget);
        if !p.exists() {
            return Ok(None);
        }
        let text = std::fs::read_to_string(p)?;
        serde_json::from_str(&text).map(Some).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn put(&self, r: &SearchResult) -> Result<()> {
        let mode = if r.exhaustive { SearchMode::Exhaustive } else { SearchMode::Local };
        let p = self.path(r.n, r.k, mode, r.seed, r.budget);
        let text = serde_json::to_string_pretty(r).map_err(|e| Error::Parse(e.to_string()))?;
        std::fs::write(p, text)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::complete_bipartite;

    #[test]
    fn small_count_matches_fast() {
        for seed in 0..20 {
            let g = crate::constructions::random_graph(8, 0.5, seed).unwrap();
            let adj: Vec<u64> = (0..8).map(|v| g.row(v)[0]).collect();
            for k in 4..=6 {
                assert_eq!(small_count(&adj, &subset_masks(8, k)), count::count_fast(&g, k).unwrap());
            }
        }
    }

    #[test]
    fn trivial_exhaustive_cases() {
        let r = exhaustive_max(5, 5).unwrap();
        assert_eq!(r.best_count, 1);
        assert!(r.exhaustive);
        assert!(r.verify_witnesses().unwrap());
        let c5 = to_graph6(&cycle(5).unwrap());
        let iso = r.witnesses.iter().all(|w| {
            let g = crate::io::from_graph6(w).unwrap();
            g.degrees() == vec![2; 5] && count::count_fast(&g, 5).unwrap() == 1
        });
        assert!(iso, "witnesses {:?} vs {c5}", r.witnesses);
        let r = exhaustive_max(4, 4).unwrap();
        assert_eq!(r.best_count, 1);
        assert!(r.verify_witnesses().unwrap());
    }

    #[test]
    fn exhaustive_six_four_at_least_k33() {
        let r = exhaustive_max(6, 4).unwrap();
        let k33 = count::count_fast(&complete_bipartite(3, 3).unwrap(), 4).unwrap();
        assert_eq!(k33, 9);
        assert!(r.best_count >= 9);
        assert!(r.verify_witnesses().unwrap());
        assert!(r.witnesses.len() <= MAX_WITNESSES);
        let mut sorted = r.witnesses.clone();
        sorted.sort();
        assert_eq!(sorted, r.witnesses);
    }

    #[test]
    fn ceiling_enforced() {
        assert_eq!(exhaustive_max(8, 5), Err(Error::SearchCeiling { n: 8, ceiling: 7 }));
        assert!(exhaustive_max_with(9, 5, true).is_err());
        assert!(exhaustive_max(4, 5).is_err());
    }

    #[test]
    fn local_search_trivial_and_deterministic() {
        let r = local_search_max(5, 5, 50, 3).unwrap();
        assert_eq!(r.best_count, 1);
        assert!(!r.exhaustive);
        assert!(r.verify_witnesses().unwrap());
        let a = local_search_max(8, 4, 100, 9).unwrap();
        let b = local_search_max(8, 4, 100, 9).unwrap();
        assert_eq!((a.best_count, &a.witnesses), (b.best_count, &b.witnesses));
        assert!(a.verify_witnesses().unwrap());
    }

    #[test]
    fn local_never_exceeds_exhaustive() {
        for (n, k) in [(6, 4), (6, 5), (7, 5), (7, 6)] {
            let e = exhaustive_max(n, k).unwrap();
            let l = local_search_max(n, k, 200, 1).unwrap();
            assert!(l.best_count <= e.best_count, "n={n} k={k}");
        }
    }

    #[test]
    fn seed_candidates_include_iterated() {
        assert_eq!(seed_candidates(25, 5).unwrap().len(), 2);
        assert_eq!(seed_candidates(24, 5).unwrap().len(), 1);
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("cycind-cache-{}", std::process::id()));
        let cache = ResultsCache::new(&dir).unwrap();
        let r = exhaustive_max(5, 4).unwrap();
        assert_eq!(cache.get(5, 4, SearchMode::Exhaustive, None, None).unwrap(), None);
        cache.put(&r).unwrap();
        assert_eq!(cache.get(5, 4, SearchMode::Exhaustive, None, None).unwrap(), Some(r));
        std::fs::remove_dir_all(dir).unwrap();
    }
}

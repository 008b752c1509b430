//! The fixed graph corpus that the soundness and case-split suites sweep.
//!
//! Seeded `G(n, p)` graphs for `n ∈ [8, 16]` across sparse to dense `p`,
//! plus structured graphs whose counts are known by hand.

use serde::{Deserialize, Serialize};

use crate::constructions::{balanced_blow_up, blow_up, complete_bipartite, cycle, petersen, random_graph};
use crate::error::Result;
use crate::graph::Graph;
use crate::rng;

pub const CORPUS_PROBABILITIES: [f64; 5] = [0.2, 0.35, 0.5, 0.65, 0.8];
pub const CORPUS_SIZES: std::ops::RangeInclusive<usize> = 8..=16;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub graph: Graph,
}

/// `count` seeded random graphs with `n` in `sizes` and `p` cycling through
/// [`CORPUS_PROBABILITIES`]; graph `i` uses stream `i` of `seed`.
pub fn random_corpus(seed: u64, count: usize, sizes: std::ops::RangeInclusive<usize>) -> Result<Vec<CorpusEntry>> {
    let span = sizes.end() - sizes.start() + 1;
    (0..count)
        .map(|i| {
            let n = sizes.start() + i % span;
            let p = CORPUS_PROBABILITIES[(i / span) % CORPUS_PROBABILITIES.len()];
            let s = rng::derive_seed(seed, i as u64);
            Ok(CorpusEntry {
                name: format!("random:{n},{p}#{s:016x}"),
                graph: random_graph(n, p, s)?,
            })
        })
        .collect()
}

/// Structured members: cycles, Petersen and its complement, complete
/// bipartite graphs and cycle blow-ups.
pub fn structured_corpus() -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    let mut push = |name: String, graph: Graph| out.push(CorpusEntry { name, graph });
    for k in 5..=9 {
        push(format!("cycle:{k}"), cycle(k)?);
    }
    push("petersen".into(), petersen());
    push("petersen-complement".into(), petersen().complement());
    for (a, b) in [(3, 3), (4, 4), (3, 6)] {
        push(format!("kbipartite:{a},{b}"), complete_bipartite(a, b)?);
    }
    for (k, t) in [(5, 2), (6, 2), (7, 2), (8, 2), (5, 3)] {
        push(format!("blowup:C{k}:{t}"), blow_up(&cycle(k)?, &vec![t; k])?.graph);
    }
    for (k, n) in [(6, 14), (7, 17), (8, 19)] {
        push(format!("balanced-blowup:C{k}:n={n}"), balanced_blow_up(&cycle(k)?, n)?.graph);
    }
    Ok(out)
}

/// The full corpus: 90 random graphs (two per `(n, p)` pair) and the
/// structured members.
pub fn full_corpus(seed: u64) -> Result<Vec<CorpusEntry>> {
    let span = CORPUS_SIZES.end() - CORPUS_SIZES.start() + 1;
    let mut out = random_corpus(seed, 2 * span * CORPUS_PROBABILITIES.len(), CORPUS_SIZES)?;
    out.extend(structured_corpus()?);
    Ok(out)
}

/// Default corpus seed.
pub const CORPUS_SEED: u64 = 0x5eed_c0de;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic_and_covers_sizes() {
        let a = full_corpus(CORPUS_SEED).unwrap();
        let b = full_corpus(CORPUS_SEED).unwrap();
        assert_eq!(a, b);
        assert!(a.len() >= 100);
        for n in CORPUS_SIZES {
            assert!(a.iter().any(|e| e.graph.n() == n));
        }
    }

    #[test]
    fn graph_serializes_as_graph6() {
        let g = cycle(5).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        let back: Graph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }
}

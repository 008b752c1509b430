//! Extremal candidates and test graphs.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng;

/// `C_k` with edges `{i, i+1 mod k}`.
pub fn cycle(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(Error::CycleLength { k, min: 3, max: usize::MAX });
    }
    let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    Graph::from_edge_list(k, &edges)
}

pub fn complete(n: usize) -> Result<Graph> {
    Graph::from_fn(n, |_, _| true)
}

/// `K_{a,b}` with the `a`-side on vertices `0..a`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    if a == 0 || b == 0 {
        return Err(Error::PartSizes("both sides of K_{a,b} need at least one vertex".into()));
    }
    Graph::from_fn(a + b, |u, w| (u < a) != (w < a))
}

/// The Petersen graph as the Kneser graph K(5,2): vertices are the 2-subsets
/// of `{0..4}` in lexicographic order, adjacent when disjoint.
pub fn petersen() -> Graph {
    let pairs: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    Graph::from_fn(10, |u, w| {
        let (a, b) = pairs[u];
        let (c, d) = pairs[w];
        a != c && a != d && b != c && b != d
    })
    .expect("ten vertices")
}

/// A blow-up together with the base vertex each output vertex came from.
/// Parts are laid out contiguously in base-vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowUp {
    pub graph: Graph,
    pub part_of: Vec<usize>,
}

/// Replaces base vertex `i` by the graph `parts[i]`; vertices in different
/// parts are adjacent iff their base vertices are.
pub fn substitute(base: &Graph, parts: &[Graph]) -> Result<BlowUp> {
    if parts.len() != base.n() {
        return Err(Error::PartSizes(format!(
            "{} parts given for a base graph on {} vertices",
            parts.len(),
            base.n()
        )));
    }
    let mut part_of = Vec::new();
    let mut local = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        for j in 0..p.n() {
            part_of.push(i);
            local.push(j);
        }
    }
    let graph = Graph::from_fn(part_of.len(), |u, w| {
        let (pu, pw) = (part_of[u], part_of[w]);
        if pu == pw {
            parts[pu].has_edge(local[u], local[w])
        } else {
            base.has_edge(pu, pw)
        }
    })?;
    Ok(BlowUp { graph, part_of })
}

/// Blow-up with independent parts of the given sizes.
pub fn blow_up(base: &Graph, part_sizes: &[usize]) -> Result<BlowUp> {
    if part_sizes.len() != base.n() {
        return Err(Error::PartSizes(format!(
            "{} part sizes given for a base graph on {} vertices",
            part_sizes.len(),
            base.n()
        )));
    }
    if part_sizes.contains(&0) {
        return Err(Error::PartSizes("every part needs at least one vertex".into()));
    }
    let parts = part_sizes
        .iter()
        .map(|&s| Graph::empty(s))
        .collect::<Result<Vec<_>>>()?;
    substitute(base, &parts)
}

/// Sizes of `parts` balanced parts summing to `n`; the first `n mod parts`
/// parts get the extra vertex.
pub fn balanced_part_sizes(n: usize, parts: usize) -> Vec<usize> {
    (0..parts).map(|i| n / parts + usize::from(i < n % parts)).collect()
}

/// Balanced blow-up of `base` on `n >= |base|` vertices.
pub fn balanced_blow_up(base: &Graph, n: usize) -> Result<BlowUp> {
    if n < base.n() {
        return Err(Error::PartSizes(format!("n = {n} is smaller than the base graph")));
    }
    blow_up(base, &balanced_part_sizes(n, base.n()))
}

/// Description of a (possibly iterated) blow-up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowUpSpec {
    pub base: Graph,
    pub part_sizes: Vec<usize>,
    /// 1 is a plain blow-up; deeper levels fill each part with a balanced
    /// blow-up of the base one level shallower.
    pub depth: usize,
}

impl BlowUpSpec {
    /// The iterated blow-up on `k^depth` vertices.
    pub fn iterated(base: Graph, depth: usize) -> Result<Self> {
        if depth == 0 {
            return Err(Error::Depth);
        }
        let k = base.n();
        let size = k
            .checked_pow(depth as u32 - 1)
            .ok_or_else(|| Error::PartSizes("iterated blow-up too large".into()))?;
        Ok(BlowUpSpec {
            part_sizes: vec![size; k],
            base,
            depth,
        })
    }

    pub fn build(&self) -> Result<BlowUp> {
        if self.depth == 0 {
            return Err(Error::Depth);
        }
        if self.depth == 1 {
            return blow_up(&self.base, &self.part_sizes);
        }
        if self.part_sizes.len() != self.base.n() || self.part_sizes.contains(&0) {
            return Err(Error::PartSizes("one positive size per base vertex required".into()));
        }
        let k = self.base.n();
        let parts = self
            .part_sizes
            .iter()
            .map(|&s| {
                if s < k {
                    Graph::empty(s)
                } else {
                    let inner = BlowUpSpec {
                        base: self.base.clone(),
                        part_sizes: balanced_part_sizes(s, k),
                        depth: self.depth - 1,
                    };
                    Ok(inner.build()?.graph)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        substitute(&self.base, &parts)
    }
}

/// Depth 1 is the base itself; depth `m` blows the base up with every part
/// replaced by the depth `m-1` construction. Has `|base|^depth` vertices.
pub fn iterated_blow_up(base: &Graph, depth: usize) -> Result<Graph> {
    if depth == 0 {
        return Err(Error::Depth);
    }
    if depth == 1 {
        return Ok(base.clone());
    }
    let inner = iterated_blow_up(base, depth - 1)?;
    let parts = vec![inner; base.n()];
    Ok(substitute(base, &parts)?.graph)
}

/// `I`-style count of induced `C_k` in the depth-`m` iterated blow-up of
/// `C_k`: `N(1) = 1`, `N(m) = (k^{m-1})^k + k N(m-1)`.
pub fn iterated_blow_up_count(k: usize, depth: usize) -> Option<u128> {
    if depth == 0 {
        return None;
    }
    let mut n: u128 = 1;
    for m in 2..=depth {
        let part = (k as u128).checked_pow(m as u32 - 1)?;
        n = part.checked_pow(k as u32)?.checked_add((k as u128).checked_mul(n)?)?;
    }
    Some(n)
}

/// `G(n, p)`: pairs `u < w` are sampled in row-major order from the seeded
/// ChaCha8 generator, one Bernoulli(p) draw each.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Probability(p));
    }
    let mut rng = rng::from_seed(seed);
    Graph::from_fn(n, |_, _| rng.gen_bool(p))
}

/// Parsed form of the construction mini-language used on the command line:
/// `cycle:K`, `kbipartite:A,B`, `blowup:CK:t`, `iterated-blowup:CK:depth=M`,
/// `random:N,P` and `petersen`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Construction {
    Cycle(usize),
    CompleteBipartite(usize, usize),
    BlowUp { k: usize, t: usize },
    IteratedBlowUp { k: usize, depth: usize },
    Random { n: usize, p: f64 },
    Petersen,
}

fn parse_usize(s: &str, what: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad {what} '{s}'")))
}

/// Parses `C5` / `c5` / `5` as a cycle length.
fn parse_cycle_name(s: &str) -> Result<usize> {
    let t = s.trim().trim_start_matches(['C', 'c']);
    parse_usize(t, "cycle name")
}

/// Accepts decimals (`0.25`) and fractions (`1/4`).
pub fn parse_probability(s: &str) -> Result<f64> {
    let s = s.trim();
    let p = if let Some((a, b)) = s.split_once('/') {
        let a: f64 = a.trim().parse().map_err(|_| Error::Parse(format!("bad probability '{s}'")))?;
        let b: f64 = b.trim().parse().map_err(|_| Error::Parse(format!("bad probability '{s}'")))?;
        a / b
    } else {
        s.parse().map_err(|_| Error::Parse(format!("bad probability '{s}'")))?
    };
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Probability(p));
    }
    Ok(p)
}

impl std::str::FromStr for Construction {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let (kind, rest) = spec.split_once(':').unwrap_or((spec, ""));
        match kind.trim() {
            "cycle" => Ok(Construction::Cycle(parse_usize(rest, "cycle length")?)),
            "kbipartite" => {
                let (a, b) = rest
                    .split_once(',')
                    .ok_or_else(|| Error::Parse("kbipartite:A,B expected".into()))?;
                Ok(Construction::CompleteBipartite(parse_usize(a, "side")?, parse_usize(b, "side")?))
            }
            "blowup" => {
                let (c, t) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::Parse("blowup:CK:t expected".into()))?;
                Ok(Construction::BlowUp {
                    k: parse_cycle_name(c)?,
                    t: parse_usize(t, "part size")?,
                })
            }
            "iterated-blowup" => {
                let (c, d) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::Parse("iterated-blowup:CK:depth=M expected".into()))?;
                let d = d.trim().strip_prefix("depth=").unwrap_or(d);
                Ok(Construction::IteratedBlowUp {
                    k: parse_cycle_name(c)?,
                    depth: parse_usize(d, "depth")?,
                })
            }
            "random" => {
                let (n, p) = rest
                    .split_once(',')
                    .ok_or_else(|| Error::Parse("random:N,P expected".into()))?;
                Ok(Construction::Random {
                    n: parse_usize(n, "vertex count")?,
                    p: parse_probability(p)?,
                })
            }
            "petersen" => Ok(Construction::Petersen),
            other => Err(Error::Parse(format!("unknown construction '{other}'"))),
        }
    }
}

impl Construction {
    /// Builds the graph; `seed` only matters for `random`.
    pub fn build(&self, seed: u64) -> Result<Graph> {
        match *self {
            Construction::Cycle(k) => cycle(k),
            Construction::CompleteBipartite(a, b) => complete_bipartite(a, b),
            Construction::BlowUp { k, t } => Ok(blow_up(&cycle(k)?, &vec![t; k])?.graph),
            Construction::IteratedBlowUp { k, depth } => iterated_blow_up(&cycle(k)?, depth),
            Construction::Random { n, p } => random_graph(n, p, seed),
            Construction::Petersen => Ok(petersen()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::{count_fast, count_oracle};

    #[test]
    fn cycle_cases() {
        let c5 = cycle(5).unwrap();
        assert_eq!((c5.n(), c5.edge_count()), (5, 5));
        assert_eq!(c5.degrees(), vec![2; 5]);
        let c6 = cycle(6).unwrap();
        assert_eq!(count_oracle(&c6, 6).unwrap().total, 1);
        assert_eq!(count_oracle(&c6, 4).unwrap().total, 0);
        assert!(cycle(2).is_err());
    }

    #[test]
    fn bipartite_cases() {
        assert_eq!(count_oracle(&complete_bipartite(2, 2).unwrap(), 4).unwrap().total, 1);
        assert_eq!(count_oracle(&complete_bipartite(3, 3).unwrap(), 4).unwrap().total, 9);
        assert_eq!(count_oracle(&complete_bipartite(4, 4).unwrap(), 4).unwrap().total, 36);
        assert!(complete_bipartite(0, 3).is_err());
    }

    #[test]
    fn blow_up_cases() {
        let c5 = cycle(5).unwrap();
        let b = blow_up(&c5, &[1; 5]).unwrap();
        assert_eq!(b.graph, c5);
        assert_eq!(b.part_of, vec![0, 1, 2, 3, 4]);
        let b2 = blow_up(&c5, &[2; 5]).unwrap();
        assert_eq!(count_oracle(&b2.graph, 5).unwrap().total, 32);
        let b3 = blow_up(&c5, &[3; 5]).unwrap();
        assert_eq!(count_oracle(&b3.graph, 5).unwrap().total, 243);
        assert_eq!(b3.part_of[..4], [0, 0, 0, 1]);
        assert!(blow_up(&c5, &[1; 4]).is_err());
        assert!(blow_up(&c5, &[1, 1, 0, 1, 1]).is_err());
    }

    #[test]
    fn balanced_sizes() {
        assert_eq!(balanced_part_sizes(12, 5), vec![3, 3, 2, 2, 2]);
        assert_eq!(balanced_part_sizes(10, 5), vec![2; 5]);
        let b = balanced_blow_up(&cycle(5).unwrap(), 7).unwrap();
        assert_eq!(b.graph.n(), 7);
        assert_eq!(count_fast(&b.graph, 5).unwrap(), 4);
    }

    #[test]
    fn iterated_cases() {
        let c5 = cycle(5).unwrap();
        assert_eq!(iterated_blow_up(&c5, 1).unwrap(), c5);
        let g = iterated_blow_up(&c5, 2).unwrap();
        assert_eq!(g.n(), 25);
        assert_eq!(count_oracle(&g, 5).unwrap().total, 3130);
        assert_eq!(iterated_blow_up_count(5, 2), Some(3130));
        assert_eq!(iterated_blow_up_count(5, 1), Some(1));
        assert!(iterated_blow_up(&c5, 0).is_err());
        // the spec form agrees with the recursive form
        let spec = BlowUpSpec::iterated(c5.clone(), 2).unwrap().build().unwrap();
        assert_eq!(spec.graph, g);
    }

    #[test]
    fn random_cases() {
        assert_eq!(random_graph(10, 0.0, 5).unwrap().edge_count(), 0);
        assert_eq!(random_graph(10, 1.0, 5).unwrap().edge_count(), 45);
        let g = random_graph(20, 0.5, 42).unwrap();
        assert!((60..=130).contains(&g.edge_count()));
        assert_eq!(g, random_graph(20, 0.5, 42).unwrap());
        assert!(random_graph(5, 1.5, 0).is_err());
        assert!(random_graph(5, f64::NAN, 0).is_err());
    }

    #[test]
    fn petersen_structure() {
        let p = petersen();
        assert_eq!(p.degrees(), vec![3; 10]);
        assert_eq!(p.edge_count(), 15);
        // girth 5: no triangles, no induced or other 4-cycles
        assert_eq!(count_oracle(&p, 3).unwrap().total, 0);
        assert_eq!(count_oracle(&p, 4).unwrap().total, 0);
        assert_eq!(count_oracle(&p, 5).unwrap().total, 12);
        assert_eq!(count_oracle(&p, 6).unwrap().total, 10);
    }

    #[test]
    fn construction_language() {
        let c: Construction = "cycle:7".parse().unwrap();
        assert_eq!(c, Construction::Cycle(7));
        assert_eq!("kbipartite:3,4".parse::<Construction>().unwrap(), Construction::CompleteBipartite(3, 4));
        assert_eq!("blowup:C5:3".parse::<Construction>().unwrap(), Construction::BlowUp { k: 5, t: 3 });
        assert_eq!(
            "iterated-blowup:C5:depth=2".parse::<Construction>().unwrap(),
            Construction::IteratedBlowUp { k: 5, depth: 2 }
        );
        assert_eq!("random:12,1/2".parse::<Construction>().unwrap(), Construction::Random { n: 12, p: 0.5 });
        assert_eq!("petersen".parse::<Construction>().unwrap(), Construction::Petersen);
        assert!("moebius:8".parse::<Construction>().is_err());
        assert!("random:12,3/2".parse::<Construction>().is_err());
        let g = "iterated-blowup:C5:depth=2".parse::<Construction>().unwrap().build(0).unwrap();
        assert_eq!(count_fast(&g, 5).unwrap(), 3130);
    }
}

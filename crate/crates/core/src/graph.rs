//! Immutable simple graphs with bitset adjacency rows, plus the degree and
//! co-degree machinery (`d_v`, `x_uw`, `z_uvw` and their normalised forms).

use std::fmt;

use num_rational::Ratio;

use crate::bits;
use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 1 << 16;

/// A simple undirected graph on the dense vertex set `0..n`.
///
/// Each vertex owns a fixed-width adjacency row of `words` 64-bit words, so
/// every co-degree query is a popcount over a row intersection. The rows are
/// symmetric and have a zero diagonal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Graph> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::VertexCount(n));
        }
        let words = bits::words_for(n);
        Ok(Graph {
            n,
            words,
            adj: vec![0; n * words],
        })
    }

    /// Builds a graph from an edge list; repeated edges collapse.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(u, w) in edges {
            g.check_vertex(u)?;
            g.check_vertex(w)?;
            if u == w {
                return Err(Error::LoopEdge(u));
            }
            g.set_edge(u, w);
        }
        Ok(g)
    }

    /// Builds a graph from an adjacency predicate evaluated on every pair `u < w`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            for w in u + 1..n {
                if adjacent(u, w) {
                    g.set_edge(u, w);
                }
            }
        }
        Ok(g)
    }

    pub(crate) fn set_edge(&mut self, u: usize, w: usize) {
        let words = self.words;
        bits::set(&mut self.adj[u * words..(u + 1) * words], w);
        bits::set(&mut self.adj[w * words..(w + 1) * words], u);
    }

    pub(crate) fn clear_edge(&mut self, u: usize, w: usize) {
        let words = self.words;
        bits::clear(&mut self.adj[u * words..(u + 1) * words], w);
        bits::clear(&mut self.adj[w * words..(w + 1) * words], u);
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of 64-bit words per adjacency row.
    #[inline]
    pub fn words(&self) -> usize {
        self.words
    }

    /// Adjacency row of `v` as a bitset.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, w: usize) -> bool {
        bits::get(self.row(u), w)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        bits::count(self.row(v))
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.degrees().iter().sum::<usize>() / 2
    }

    /// `δ(G)` together with the smallest-labelled vertex attaining it.
    pub fn min_degree(&self) -> (usize, usize) {
        (0..self.n)
            .map(|v| (self.degree(v), v))
            .min()
            .map(|(d, v)| (v, d))
            .expect("graphs have at least one vertex")
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits::ones(self.row(v))
    }

    /// Edges `(u, w)` with `u < w`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&w| w > u).map(move |w| (u, w)))
    }

    /// Closed neighbourhood `N[v]` as a fresh bitset.
    pub fn closed_row(&self, v: usize) -> Vec<u64> {
        let mut row = self.row(v).to_vec();
        bits::set(&mut row, v);
        row
    }

    pub fn complement(&self) -> Graph {
        Graph::from_fn(self.n, |u, w| !self.has_edge(u, w)).expect("same vertex count")
    }

    /// Co-degree `x_uw = |N(u) ∩ N(w)|`.
    pub fn codegree(&self, u: usize, w: usize) -> Result<usize> {
        self.check_vertex(u)?;
        self.check_vertex(w)?;
        if u == w {
            return Err(Error::RepeatedVertex);
        }
        Ok(bits::count_and(self.row(u), self.row(w)))
    }

    /// Triple co-degree `z_uvw = |N(u) ∩ N(v) ∩ N(w)|`.
    pub fn triple_codegree(&self, u: usize, v: usize, w: usize) -> Result<usize> {
        for x in [u, v, w] {
            self.check_vertex(x)?;
        }
        if u == v || v == w || u == w {
            return Err(Error::RepeatedVertex);
        }
        Ok(bits::count_and3(self.row(u), self.row(v), self.row(w)))
    }

    /// The set `A_v`: ordered pairs of distinct, non-adjacent neighbours of `v`.
    pub fn nonadjacent_neighbor_pairs(&self, v: usize) -> Result<Vec<(usize, usize)>> {
        self.check_vertex(v)?;
        let nbrs: Vec<usize> = self.neighbors(v).collect();
        let mut pairs = Vec::new();
        for &u in &nbrs {
            for &w in &nbrs {
                if u != w && !self.has_edge(u, w) {
                    pairs.push((u, w));
                }
            }
        }
        Ok(pairs)
    }

    /// Copy of the graph with the pair `uw` flipped.
    pub fn with_edge_toggled(&self, u: usize, w: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(w)?;
        if u == w {
            return Err(Error::LoopEdge(u));
        }
        let mut g = self.clone();
        if g.has_edge(u, w) {
            g.clear_edge(u, w);
        } else {
            g.set_edge(u, w);
        }
        Ok(g)
    }

    /// Copy of the graph with `v` isolated and then joined to `targets`.
    pub(crate) fn with_rewired(&self, v: usize, targets: impl Iterator<Item = usize>) -> Graph {
        let mut g = self.clone();
        let old: Vec<usize> = g.neighbors(v).collect();
        for w in old {
            g.clear_edge(v, w);
        }
        for w in targets {
            if w != v {
                g.set_edge(v, w);
            }
        }
        g
    }

    /// Normalised degree data for cycle length `k`.
    pub fn profile(&self, k: usize) -> Result<DegreeProfile<'_>> {
        DegreeProfile::new(self, k)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Exact normalised degrees: `c_u = k d_u / n`, `x̄_uw = k x_uw / n`,
/// `z̄_uvw = k z_uvw / n`.
///
/// The `c` values are computed eagerly; co-degree forms are evaluated on
/// demand against the borrowed graph, so the profile needs no interior
/// mutability and can be shared across threads.
#[derive(Debug, Clone)]
pub struct DegreeProfile<'g> {
    graph: &'g Graph,
    k: usize,
    c: Vec<Ratio<u64>>,
}

impl<'g> DegreeProfile<'g> {
    pub fn new(graph: &'g Graph, k: usize) -> Result<Self> {
        if k < 4 {
            return Err(Error::CycleLength { k, min: 4, max: usize::MAX });
        }
        let n = graph.n() as u64;
        let c = (0..graph.n())
            .map(|v| Ratio::new(k as u64 * graph.degree(v) as u64, n))
            .collect();
        Ok(DegreeProfile { graph, k, c })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn c(&self, u: usize) -> Ratio<u64> {
        self.c[u]
    }

    pub fn all_c(&self) -> &[Ratio<u64>] {
        &self.c
    }

    fn scale(&self, count: usize) -> Ratio<u64> {
        Ratio::new(self.k as u64 * count as u64, self.graph.n() as u64)
    }

    pub fn xbar(&self, u: usize, w: usize) -> Result<Ratio<u64>> {
        Ok(self.scale(self.graph.codegree(u, w)?))
    }

    pub fn zbar(&self, u: usize, v: usize, w: usize) -> Result<Ratio<u64>> {
        Ok(self.scale(self.graph.triple_codegree(u, v, w)?))
    }
}

/// Lossy conversion of an exact ratio for the floating-point bound layer.
pub fn ratio_to_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

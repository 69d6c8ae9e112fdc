//! Immutable simple undirected graphs on dense vertex ids `0..n`.
//!
//! The canonical vertex order is ascending integer order. Edges are numbered
//! by their position in the lexicographic enumeration of pairs `(u, v)` with
//! `u < v`; that numbering is the `edge_index` shared by the sampler, the DFS
//! explorer and the trace encoding.

mod embed;
mod girth;
pub mod io;

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

pub use embed::MAX_PATTERN_VERTICES;
pub use girth::Girth;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("vertex {v} outside 0..{n}")]
    NoSuchVertex { v: usize, n: usize },
    #[error("pattern has {0} vertices; at most {max} supported", max = MAX_PATTERN_VERTICES)]
    PatternTooLarge(usize),
    #[error("edge mask has {got} bits, graph has {expected} edges")]
    MaskLength { expected: usize, got: usize },
}

/// Simple undirected graph stored in CSR form with per-slot edge ids.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    offsets: Vec<usize>,
    nbrs: Vec<u32>,
    nbr_edges: Vec<u32>,
    edges: Vec<(u32, u32)>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeStats {
    pub min: usize,
    pub avg: f64,
    pub max: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    /// Component id per vertex; ids are assigned in order of each
    /// component's smallest vertex.
    pub component_of: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl ComponentPartition {
    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    pub fn largest(&self) -> usize {
        self.sizes.iter().copied().max().unwrap_or(0)
    }
}

impl Graph {
    /// Builds a graph from an edge list. Pairs may be given in either
    /// orientation; loops, repeated pairs and out-of-range endpoints are
    /// rejected with the first offending pair.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        assert!(n <= u32::MAX as usize, "vertex count exceeds u32 range");
        let mut canon = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            canon.push(if u < v {
                (u as u32, v as u32)
            } else {
                (v as u32, u as u32)
            });
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0 as usize, w[0].1 as usize));
        }
        Ok(Self::from_sorted_edges(n, canon))
    }

    /// `edges` must be sorted, deduplicated, loop-free and canonical (`u < v`).
    pub(crate) fn from_sorted_edges(n: usize, edges: Vec<(u32, u32)>) -> Self {
        let mut deg = vec![0usize; n];
        for &(u, v) in &edges {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &deg {
            offsets.push(offsets.last().unwrap() + d);
        }
        let total = *offsets.last().unwrap();
        let mut nbrs = vec![0u32; total];
        let mut nbr_edges = vec![0u32; total];
        let mut fill = offsets[..n].to_vec();
        // Edges are lexicographic, so filling in edge order leaves every
        // neighbour list sorted: smaller neighbours of v arrive as (w, v)
        // pairs before any (v, w) pair.
        for (e, &(u, v)) in edges.iter().enumerate() {
            let (u, v) = (u as usize, v as usize);
            nbrs[fill[u]] = v as u32;
            nbr_edges[fill[u]] = e as u32;
            fill[u] += 1;
            nbrs[fill[v]] = u as u32;
            nbr_edges[fill[v]] = e as u32;
            fill[v] += 1;
        }
        debug_assert!((0..n).all(|v| nbrs[offsets[v]..offsets[v + 1]]
            .windows(2)
            .all(|w| w[0] < w[1])));
        Graph {
            n,
            offsets,
            nbrs,
            nbr_edges,
            edges,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_edges(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.nbrs[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Edge ids aligned with [`Graph::neighbors`].
    pub fn neighbor_edges(&self, v: usize) -> &[u32] {
        &self.nbr_edges[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Endpoints `(u, v)` with `u < v` of edge `e`.
    pub fn edge(&self, e: usize) -> (usize, usize) {
        let (u, v) = self.edges[e];
        (u as usize, v as usize)
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(u, v)| (u as usize, v as usize))
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.neighbors(a)
            .binary_search(&(b as u32))
            .ok()
            .map(|i| self.neighbor_edges(a)[i] as usize)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_id(u, v).is_some()
    }

    /// Minimum, average (`2m/n`) and maximum degree. All zero when `n == 0`.
    pub fn degree_stats(&self) -> DegreeStats {
        if self.n == 0 {
            return DegreeStats {
                min: 0,
                avg: 0.0,
                max: 0,
            };
        }
        let (min, max) = (0..self.n)
            .map(|v| self.degree(v))
            .fold((usize::MAX, 0), |(lo, hi), d| (lo.min(d), hi.max(d)));
        DegreeStats {
            min,
            avg: 2.0 * self.m() as f64 / self.n as f64,
            max,
        }
    }

    pub fn min_degree(&self) -> usize {
        self.degree_stats().min
    }

    pub fn components(&self) -> ComponentPartition {
        let mut component_of = vec![usize::MAX; self.n];
        let mut sizes = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if component_of[s] != usize::MAX {
                continue;
            }
            let id = sizes.len();
            component_of[s] = id;
            queue.push_back(s);
            let mut size = 0;
            while let Some(v) = queue.pop_front() {
                size += 1;
                for &w in self.neighbors(v) {
                    let w = w as usize;
                    if component_of[w] == usize::MAX {
                        component_of[w] = id;
                        queue.push_back(w);
                    }
                }
            }
            sizes.push(size);
        }
        ComponentPartition {
            component_of,
            sizes,
        }
    }

    /// Number of excess edges: `m - n + #components`.
    pub fn excess(&self) -> usize {
        self.m() + self.components().count() - self.n
    }

    /// Subgraph induced by `vertices`, relabelled `0..|A|` in ascending order
    /// of the original ids. Returns the graph and the new-to-old id map.
    pub fn induced(&self, vertices: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&v) = keep.iter().find(|&&v| v >= self.n) {
            return Err(GraphError::NoSuchVertex { v, n: self.n });
        }
        let mut new_id = vec![u32::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i as u32;
        }
        let mut edges = Vec::new();
        for &v in &keep {
            for &w in self.neighbors(v) {
                if (w as usize) > v && new_id[w as usize] != u32::MAX {
                    edges.push((new_id[v], new_id[w as usize]));
                }
            }
        }
        edges.sort_unstable();
        Ok((Graph::from_sorted_edges(keep.len(), edges), keep))
    }

    /// Spanning subgraph keeping the edges whose bit is set in `mask`.
    pub fn spanning_subgraph(&self, mask: &FixedBitSet) -> Result<Graph, GraphError> {
        if mask.len() != self.m() {
            return Err(GraphError::MaskLength {
                expected: self.m(),
                got: mask.len(),
            });
        }
        let edges = mask.ones().map(|e| self.edges[e]).collect();
        Ok(Graph::from_sorted_edges(self.n, edges))
    }

    /// Disjoint union of `self` and `other`; `other`'s vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n as u32;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)));
        Graph::from_sorted_edges(self.n + other.n, edges)
    }

    /// True when a proper 2-colouring exists.
    pub fn is_bipartite(&self) -> bool {
        let mut colour = vec![u8::MAX; self.n];
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &w in self.neighbors(v) {
                    let w = w as usize;
                    if colour[w] == u8::MAX {
                        colour[w] = colour[v] ^ 1;
                        queue.push_back(w);
                    } else if colour[w] == colour[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_connected(&self) -> bool {
        self.components().count() <= 1
    }

    /// Cycle graph `C_len` on vertices `0..len`.
    pub fn cycle(len: usize) -> Graph {
        assert!(len >= 3, "cycle needs at least 3 vertices");
        let edges: Vec<_> = (0..len).map(|i| (i, (i + 1) % len)).collect();
        Graph::new(len, &edges).expect("cycle edges are simple")
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).expect("path edges are simple")
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::new(10, &edges).expect("petersen edges are simple")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

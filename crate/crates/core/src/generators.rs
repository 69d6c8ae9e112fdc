//! Base-graph constructions: complete and complete bipartite graphs, random
//! regular graphs, projective-plane incidence graphs, disjoint unions and a
//! degree-preserving girth repair.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::rng;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("n*k = {n}*{k} is odd; no {k}-regular graph on {n} vertices")]
    Parity { n: usize, k: usize },
    #[error("degree {k} is infeasible on {n} vertices (need k < n)")]
    DegreeTooLarge { n: usize, k: usize },
    #[error("pairing failed after {0} restarts")]
    RetriesExhausted(u64),
    #[error("q = {0} is not prime")]
    NotPrime(usize),
    #[error("invalid parameter: {0}")]
    Invalid(String),
    #[error("unrecognised generator shorthand {0:?}")]
    Shorthand(String),
}

/// Serializable description of a base graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GenSpec {
    Complete {
        n: usize,
    },
    CompleteBipartite {
        a: usize,
        b: usize,
    },
    RandomRegular {
        n: usize,
        k: usize,
        #[serde(default)]
        seed: u64,
    },
    PpIncidence {
        q: usize,
    },
    DisjointCopies {
        base: Box<GenSpec>,
        t: usize,
    },
    GirthRepair {
        base: Box<GenSpec>,
        g: usize,
        #[serde(default)]
        seed: u64,
        #[serde(default = "default_repair_iters")]
        max_iters: u64,
    },
}

fn default_repair_iters() -> u64 {
    1_000_000
}

impl GenSpec {
    /// Parses `complete:N`, `bipartite:A:B`, `regular:N:K`, `ppinc:Q`.
    /// Random kinds take `seed`.
    pub fn from_shorthand(text: &str, seed: u64) -> Result<GenSpec, GenError> {
        let parts: Vec<&str> = text.trim().split(':').collect();
        let bad = || GenError::Shorthand(text.to_string());
        let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
        match parts.as_slice() {
            ["complete", n] => Ok(GenSpec::Complete { n: num(n)? }),
            ["bipartite" | "complete_bipartite", a, b] => Ok(GenSpec::CompleteBipartite {
                a: num(a)?,
                b: num(b)?,
            }),
            ["regular" | "random_regular", n, k] => Ok(GenSpec::RandomRegular {
                n: num(n)?,
                k: num(k)?,
                seed,
            }),
            ["ppinc" | "pp_incidence", q] => Ok(GenSpec::PpIncidence { q: num(q)? }),
            _ => Err(bad()),
        }
    }

    pub fn generate(&self) -> Result<Graph, GenError> {
        match self {
            GenSpec::Complete { n } => Ok(complete(*n)),
            GenSpec::CompleteBipartite { a, b } => Ok(complete_bipartite(*a, *b)),
            GenSpec::RandomRegular { n, k, seed } => random_regular(*n, *k, *seed),
            GenSpec::PpIncidence { q } => pp_incidence(*q),
            GenSpec::DisjointCopies { base, t } => {
                if *t == 0 {
                    return Err(GenError::Invalid("disjoint_copies needs t >= 1".into()));
                }
                Ok(disjoint_copies(&base.generate()?, *t))
            }
            GenSpec::GirthRepair {
                base,
                g,
                seed,
                max_iters,
            } => {
                let outcome = girth_repair(&base.generate()?, *g, *seed, *max_iters)?;
                if outcome.success {
                    Ok(outcome.graph)
                } else {
                    Err(GenError::Invalid(format!(
                        "girth repair reached girth {:?} after {} iterations; target > {g}",
                        outcome.graph.girth().length(),
                        outcome.iterations
                    )))
                }
            }
        }
    }
}

pub fn complete(n: usize) -> Graph {
    let edges = (0..n as u32)
        .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
        .collect();
    Graph::from_sorted_edges(n, edges)
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let (a32, b32) = (a as u32, b as u32);
    let edges = (0..a32)
        .flat_map(|u| (a32..a32 + b32).map(move |v| (u, v)))
        .collect();
    Graph::from_sorted_edges(a + b, edges)
}

/// Uniformly paired configuration model where a pairing that would create
/// a loop or a repeated edge is redrawn instead of accepted. When no legal
/// pair remains the whole pairing restarts, at most `100 * n * k` times.
pub fn random_regular(n: usize, k: usize, seed: u64) -> Result<Graph, GenError> {
    if k >= n && !(n == 0 && k == 0) {
        return Err(GenError::DegreeTooLarge { n, k });
    }
    if (n * k) % 2 == 1 {
        return Err(GenError::Parity { n, k });
    }
    let mut rng = rng::sequential(seed);
    let budget = (100 * n * k).max(1) as u64;
    let key = |u: u32, v: u32| {
        if u < v {
            (u as u64) << 32 | v as u64
        } else {
            (v as u64) << 32 | u as u64
        }
    };
    for _ in 0..budget {
        let mut points: Vec<u32> = (0..n as u32)
            .flat_map(|v| std::iter::repeat_n(v, k))
            .collect();
        let mut edges: HashSet<u64> = HashSet::with_capacity(n * k / 2);
        let mut failures = 0usize;
        let mut stuck = false;
        while !points.is_empty() {
            let i = rng.random_range(0..points.len());
            let j = rng.random_range(0..points.len());
            let (u, v) = (points[i], points[j]);
            if i != j && u != v && !edges.contains(&key(u, v)) {
                edges.insert(key(u, v));
                let (hi, lo) = if i > j { (i, j) } else { (j, i) };
                points.swap_remove(hi);
                points.swap_remove(lo);
                failures = 0;
                continue;
            }
            failures += 1;
            if failures > 2 * points.len() + 64 {
                if !has_legal_pair(&points, &edges, key) {
                    stuck = true;
                    break;
                }
                failures = 0;
            }
        }
        if stuck {
            continue;
        }
        let mut list: Vec<(u32, u32)> = edges
            .into_iter()
            .map(|e| ((e >> 32) as u32, e as u32))
            .collect();
        list.sort_unstable();
        return Ok(Graph::from_sorted_edges(n, list));
    }
    Err(GenError::RetriesExhausted(budget))
}

fn has_legal_pair(points: &[u32], edges: &HashSet<u64>, key: impl Fn(u32, u32) -> u64) -> bool {
    let mut open: Vec<u32> = points.to_vec();
    open.sort_unstable();
    open.dedup();
    open.iter()
        .enumerate()
        .any(|(i, &u)| open[i + 1..].iter().any(|&v| !edges.contains(&key(u, v))))
}

fn is_prime(q: usize) -> bool {
    q >= 2
        && (2..)
            .take_while(|d| d * d <= q)
            .all(|d| !q.is_multiple_of(d))
}

/// Point-line incidence graph of PG(2, q) for prime `q`. Points are
/// vertices `0..N` and lines `N..2N` with `N = q^2 + q + 1`, both listed as
/// normalised homogeneous triples.
pub fn pp_incidence(q: usize) -> Result<Graph, GenError> {
    if !is_prime(q) {
        return Err(GenError::NotPrime(q));
    }
    let mut triples = Vec::with_capacity(q * q + q + 1);
    for y in 0..q {
        for z in 0..q {
            triples.push([1, y, z]);
        }
    }
    for z in 0..q {
        triples.push([0, 1, z]);
    }
    triples.push([0, 0, 1]);
    let count = triples.len();
    let mut edges = Vec::with_capacity(count * (q + 1));
    for (p, pt) in triples.iter().enumerate() {
        for (l, ln) in triples.iter().enumerate() {
            if (pt[0] * ln[0] + pt[1] * ln[1] + pt[2] * ln[2]) % q == 0 {
                edges.push((p as u32, (count + l) as u32));
            }
        }
    }
    Ok(Graph::from_sorted_edges(2 * count, edges))
}

/// `t` vertex-disjoint copies; copy `i` occupies `i*n..(i+1)*n`.
pub fn disjoint_copies(g: &Graph, t: usize) -> Graph {
    let n = g.n() as u32;
    let edges = (0..t as u32)
        .flat_map(|i| {
            g.edges()
                .map(move |(u, v)| (u as u32 + i * n, v as u32 + i * n))
        })
        .collect();
    Graph::from_sorted_edges(g.n() * t, edges)
}

#[derive(Debug, Clone)]
pub struct RepairOutcome {
    /// Final graph; its girth is the best reached, since accepted swaps never
    /// introduce a cycle of length at most the target.
    pub graph: Graph,
    pub success: bool,
    pub iterations: u64,
    pub swaps: u64,
}

/// Degree-preserving 2-edge swaps `{a,b},{c,d} -> {a,c},{b,d}` that remove
/// an edge lying on a cycle of length `<= g`. A swap is kept only if neither
/// new edge lies on a cycle of length `<= g`, so the set of short cycles
/// strictly shrinks with every accepted swap.
pub fn girth_repair(
    g: &Graph,
    target: usize,
    seed: u64,
    max_iters: u64,
) -> Result<RepairOutcome, GenError> {
    if target < 3 {
        return Err(GenError::Invalid(format!(
            "girth target must be >= 3, got {target}"
        )));
    }
    if g.girth().exceeds(target) {
        return Ok(RepairOutcome {
            graph: g.clone(),
            success: true,
            iterations: 0,
            swaps: 0,
        });
    }
    let mut rng = rng::sequential(seed);
    let mut work = SwapGraph::new(g);
    let mut bad: Vec<(u32, u32)> = Vec::new();
    let mut swaps = 0;
    let mut iterations = 0;
    while iterations < max_iters {
        if bad.is_empty() {
            bad = work.short_cycle_edges(target);
            if bad.is_empty() {
                break;
            }
            bad.shuffle(&mut rng);
        }
        iterations += 1;
        let slot = rng.random_range(0..bad.len());
        let (a, b) = bad[slot];
        if !work.has_edge(a, b) || !work.on_short_cycle(a, b, target) {
            bad.swap_remove(slot);
            continue;
        }
        let (c, d) = work.edges[rng.random_range(0..work.edges.len())];
        let (c, d) = if rng.random_bool(0.5) { (c, d) } else { (d, c) };
        let (a, b) = if rng.random_bool(0.5) { (a, b) } else { (b, a) };
        if c == a || c == b || d == a || d == b || work.has_edge(a, c) || work.has_edge(b, d) {
            continue;
        }
        work.remove(a, b);
        work.remove(c, d);
        work.add(a, c);
        work.add(b, d);
        if work.on_short_cycle(a, c, target) || work.on_short_cycle(b, d, target) {
            work.remove(a, c);
            work.remove(b, d);
            work.add(a, b);
            work.add(c, d);
            continue;
        }
        swaps += 1;
        bad.swap_remove(slot);
    }
    let graph = work.to_graph();
    let success = graph.girth().exceeds(target);
    Ok(RepairOutcome {
        graph,
        success,
        iterations,
        swaps,
    })
}

/// Mutable adjacency used only by the swap loop.
struct SwapGraph {
    adj: Vec<Vec<u32>>,
    edges: Vec<(u32, u32)>,
    stamp: Vec<u32>,
    epoch: u32,
}

impl SwapGraph {
    fn new(g: &Graph) -> Self {
        SwapGraph {
            adj: (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect(),
            edges: g.edges().map(|(u, v)| (u as u32, v as u32)).collect(),
            stamp: vec![0; g.n()],
            epoch: 0,
        }
    }

    fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].contains(&v)
    }

    fn add(&mut self, u: u32, v: u32) {
        self.adj[u as usize].push(v);
        self.adj[v as usize].push(u);
        self.edges.push((u.min(v), u.max(v)));
    }

    fn remove(&mut self, u: u32, v: u32) {
        let drop = |list: &mut Vec<u32>, x: u32| {
            let i = list.iter().position(|&y| y == x).expect("edge present");
            list.swap_remove(i);
        };
        drop(&mut self.adj[u as usize], v);
        drop(&mut self.adj[v as usize], u);
        let key = (u.min(v), u.max(v));
        let i = self
            .edges
            .iter()
            .position(|&e| e == key)
            .expect("edge present");
        self.edges.swap_remove(i);
    }

    /// Whether `{u, v}` lies on a cycle of length `<= g`, i.e. `v` is within
    /// distance `g - 1` of `u` once the edge itself is ignored.
    fn on_short_cycle(&mut self, u: u32, v: u32, g: usize) -> bool {
        self.epoch += 1;
        let epoch = self.epoch;
        self.stamp[u as usize] = epoch;
        let mut frontier = vec![u];
        let mut next = Vec::new();
        for _ in 0..g - 1 {
            for &x in &frontier {
                for &y in &self.adj[x as usize] {
                    if x == u && y == v {
                        continue;
                    }
                    if y == v {
                        return true;
                    }
                    if self.stamp[y as usize] != epoch {
                        self.stamp[y as usize] = epoch;
                        next.push(y);
                    }
                }
            }
            std::mem::swap(&mut frontier, &mut next);
            next.clear();
            if frontier.is_empty() {
                break;
            }
        }
        false
    }

    fn short_cycle_edges(&mut self, g: usize) -> Vec<(u32, u32)> {
        let edges = self.edges.clone();
        edges
            .into_iter()
            .filter(|&(u, v)| self.on_short_cycle(u, v, g))
            .collect()
    }

    fn to_graph(&self) -> Graph {
        let mut edges = self.edges.clone();
        edges.sort_unstable();
        Graph::from_sorted_edges(self.adj.len(), edges)
    }
}

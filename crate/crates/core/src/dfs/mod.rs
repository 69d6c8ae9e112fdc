//! Two-phase depth-first exploration of a subgraph `G' ⊆ G`.
//!
//! The explorer knows the base graph `G` and learns `G'` only by asking, one
//! base edge at a time, whether the edge is present. Vertices move from the
//! unvisited set `T` to the stack `U` and from `U` to the finished set `S`.
//!
//! Phase one runs exactly `2n` rounds. If `U` is empty the smallest vertex of
//! `T` is pushed. Otherwise the top `v` of `U` queries its not-yet-queried
//! `G`-neighbours that are still in `T`, in ascending order; the first
//! positive answer pushes that neighbour and ends the round, and if all
//! answers are negative `v` moves to `S`. The result is a rooted spanning
//! forest of `G'`.
//!
//! Every base edge left unqueried after phase one joins an ancestor to a
//! descendant in that forest. Phase two queries them in ascending order of
//! the tree distance `len` between the endpoints, ties broken by
//! `(min endpoint, max endpoint)`. A positive phase-two answer is a back edge
//! closing a cycle of length `len + 1`.
//!
//! The answers, read in query order, form a `{0,1}` sequence of length
//! `e(G)`; [`encode`] and [`decode`] are the two directions of that bijection.

mod check;

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::percolation::SubgraphSample;

pub use check::{check_answers, check_properties, Property, Violation};

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DfsError {
    #[error("sample was drawn from a different base graph")]
    BaseMismatch,
    #[error("trace has {got} bits, base graph has {expected} edges")]
    TraceLength { expected: usize, got: usize },
}

/// Answers edge queries during an exploration.
pub trait EdgeOracle {
    fn answer(&mut self, edge: usize) -> bool;
}

impl EdgeOracle for &FixedBitSet {
    fn answer(&mut self, edge: usize) -> bool {
        self.contains(edge)
    }
}

/// Answers the `i`-th query with bit `i` of a trace.
struct TraceOracle<'a> {
    bits: &'a FixedBitSet,
    next: usize,
}

impl EdgeOracle for TraceOracle<'_> {
    fn answer(&mut self, _edge: usize) -> bool {
        let bit = self.bits.contains(self.next);
        self.next += 1;
        bit
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Phase {
    One,
    Two,
}

/// One query. In phase one `u` is the top of the stack and `v` the probed
/// vertex of `T`; in phase two `u` is the ancestor and `v` the descendant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Query {
    pub u: u32,
    pub v: u32,
    pub edge: u32,
    pub answer: bool,
    pub phase: Phase,
}

/// `|S|, |U|, |T|` at the end of a phase-one round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RoundSizes {
    pub s: u32,
    pub u: u32,
    pub t: u32,
}

/// An ancestor–descendant pair of the forest that phase one left unqueried.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TreePair {
    pub ancestor: u32,
    pub descendant: u32,
    pub len: u32,
    pub edge: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DfsRun {
    pub n: usize,
    /// Forest parent per vertex; `u32::MAX` for roots.
    pub parent: Vec<u32>,
    pub depth: Vec<u32>,
    pub roots: Vec<u32>,
    pub query_log: Vec<Query>,
    /// One entry per phase-one round.
    pub timeline: Vec<RoundSizes>,
    pub max_u: usize,
    /// Vertex on top of `U` when `|U|` first reached `max_u`; the stack at
    /// that moment is the forest path from its root to this vertex.
    pub max_u_top: Option<u32>,
    /// Pairs unqueried when phase one ended, in phase-two order.
    pub unqueried: Vec<TreePair>,
    /// Positive phase-two answers, in query order.
    pub back_edges: Vec<TreePair>,
    pub phase1_queries: usize,
    pub phase1_positive: usize,
}

impl DfsRun {
    pub fn parent_of(&self, v: usize) -> Option<usize> {
        (self.parent[v] != NONE).then(|| self.parent[v] as usize)
    }

    pub fn phase2_positive(&self) -> usize {
        self.back_edges.len()
    }

    /// Answers in query order.
    pub fn trace(&self) -> BitTrace {
        let mut bits = FixedBitSet::with_capacity(self.query_log.len());
        for (i, q) in self.query_log.iter().enumerate() {
            bits.set(i, q.answer);
        }
        BitTrace(bits)
    }

    /// Number of pairs unqueried after phase one whose tree distance is at least `ell`.
    pub fn long_unqueried_count(&self, ell: usize) -> usize {
        self.unqueried
            .iter()
            .filter(|p| p.len as usize >= ell)
            .count()
    }

    /// Forest path from the root down to `v`.
    pub fn tree_path_to(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut x = v;
        while let Some(p) = self.parent_of(x) {
            path.push(p);
            x = p;
        }
        path.reverse();
        path
    }

    /// The stack `U` at its largest: a path in `G'` with `max_u - 1` edges.
    pub fn longest_path_certificate(&self) -> Vec<usize> {
        self.max_u_top
            .map(|v| self.tree_path_to(v as usize))
            .unwrap_or_default()
    }

    /// Path length (edges) of [`DfsRun::longest_path_certificate`].
    pub fn path_len(&self) -> usize {
        self.max_u.saturating_sub(1)
    }

    /// The back edge of largest `len` (first in query order among ties)
    /// closed by the forest path between its endpoints.
    pub fn longest_cycle_certificate(&self) -> Option<CycleCertificate> {
        let best = self
            .back_edges
            .iter()
            .fold(None::<&TreePair>, |acc, b| match acc {
                Some(a) if a.len >= b.len => Some(a),
                _ => Some(b),
            })?;
        let mut vertices = Vec::with_capacity(best.len as usize + 2);
        let mut x = best.descendant as usize;
        vertices.push(x);
        while x != best.ancestor as usize {
            x = self.parent[x] as usize;
            vertices.push(x);
        }
        vertices.push(best.descendant as usize);
        Some(CycleCertificate {
            vertices,
            length: best.len as usize + 1,
        })
    }

    /// Certified cycle length, 0 when `G'` is a forest.
    pub fn cycle_len(&self) -> usize {
        self.back_edges
            .iter()
            .map(|b| b.len as usize + 1)
            .max()
            .unwrap_or(0)
    }

    /// Edges of `G'` as a mask over base edge ids.
    pub fn subgraph_mask(&self, m: usize) -> FixedBitSet {
        let mut mask = FixedBitSet::with_capacity(m);
        for q in self.query_log.iter().filter(|q| q.answer) {
            mask.insert(q.edge as usize);
        }
        mask
    }

    /// Sizes of the trees of the forest, i.e. the components of `G'`, in root order.
    pub fn component_sizes(&self) -> Vec<usize> {
        let mut tree_of = vec![NONE; self.n];
        for (i, &r) in self.roots.iter().enumerate() {
            tree_of[r as usize] = i as u32;
        }
        let mut sizes = vec![1usize; self.roots.len()];
        // Phase-one positives appear in discovery order, so the parent is labelled first.
        for q in self.query_log[..self.phase1_queries]
            .iter()
            .filter(|q| q.answer)
        {
            let t = tree_of[q.u as usize];
            tree_of[q.v as usize] = t;
            sizes[t as usize] += 1;
        }
        sizes
    }
}

/// A cycle of `G'`, listed with its first vertex repeated at the end.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleCertificate {
    pub vertices: Vec<usize>,
    pub length: usize,
}

/// Image of a subgraph under the query-order bijection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitTrace(pub FixedBitSet);

impl BitTrace {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ones(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn to_bit_string(&self) -> String {
        (0..self.0.len())
            .map(|i| if self.0.contains(i) { '1' } else { '0' })
            .collect()
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut set = FixedBitSet::with_capacity(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            set.set(i, b);
        }
        BitTrace(set)
    }
}

/// Explores the sampled subgraph of `g`.
pub fn run(g: &Graph, sample: &SubgraphSample<'_>) -> Result<DfsRun, DfsError> {
    if !std::ptr::eq(g, sample.base) && g != sample.base {
        return Err(DfsError::BaseMismatch);
    }
    Ok(run_with_oracle(g, &mut &sample.kept))
}

pub fn encode(g: &Graph, sample: &SubgraphSample<'_>) -> Result<BitTrace, DfsError> {
    Ok(run(g, sample)?.trace())
}

/// Edge set represented by `trace`: query `i` is answered with bit `i`.
pub fn decode(g: &Graph, trace: &BitTrace) -> Result<FixedBitSet, DfsError> {
    if trace.len() != g.m() {
        return Err(DfsError::TraceLength {
            expected: g.m(),
            got: trace.len(),
        });
    }
    let run = run_with_oracle(
        g,
        &mut TraceOracle {
            bits: &trace.0,
            next: 0,
        },
    );
    Ok(run.subgraph_mask(g.m()))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Where {
    T,
    U,
    S,
}

pub fn run_with_oracle<O: EdgeOracle>(g: &Graph, oracle: &mut O) -> DfsRun {
    let n = g.n();
    let m = g.m();
    let mut place = vec![Where::T; n];
    let mut cursor = vec![0usize; n];
    let mut parent = vec![NONE; n];
    let mut depth = vec![0u32; n];
    let mut roots = Vec::new();
    let mut stack: Vec<u32> = Vec::new();
    let mut queried = FixedBitSet::with_capacity(m);
    let mut query_log = Vec::with_capacity(m);
    let mut timeline = Vec::with_capacity(2 * n);
    let (mut s_count, mut t_count) = (0usize, n);
    let mut next_root = 0usize;
    let mut max_u = 0usize;
    let mut max_u_top = None;
    let mut phase1_positive = 0;

    while s_count < n {
        match stack.last().copied() {
            None => {
                while place[next_root] != Where::T {
                    next_root += 1;
                }
                let r = next_root;
                place[r] = Where::U;
                t_count -= 1;
                roots.push(r as u32);
                stack.push(r as u32);
            }
            Some(top) => {
                let v = top as usize;
                let nbrs = g.neighbors(v);
                let eids = g.neighbor_edges(v);
                let mut pushed = false;
                while cursor[v] < nbrs.len() {
                    let i = cursor[v];
                    cursor[v] += 1;
                    let w = nbrs[i] as usize;
                    if place[w] != Where::T {
                        continue;
                    }
                    let e = eids[i] as usize;
                    let answer = oracle.answer(e);
                    queried.insert(e);
                    query_log.push(Query {
                        u: top,
                        v: w as u32,
                        edge: e as u32,
                        answer,
                        phase: Phase::One,
                    });
                    if answer {
                        phase1_positive += 1;
                        place[w] = Where::U;
                        t_count -= 1;
                        parent[w] = top;
                        depth[w] = depth[v] + 1;
                        stack.push(w as u32);
                        pushed = true;
                        break;
                    }
                }
                if !pushed {
                    stack.pop();
                    place[v] = Where::S;
                    s_count += 1;
                }
            }
        }
        if stack.len() > max_u {
            max_u = stack.len();
            max_u_top = stack.last().copied();
        }
        timeline.push(RoundSizes {
            s: s_count as u32,
            u: stack.len() as u32,
            t: t_count as u32,
        });
    }
    let phase1_queries = query_log.len();

    let mut unqueried: Vec<TreePair> = (0..m)
        .filter(|&e| !queried.contains(e))
        .map(|e| {
            let (a, b) = g.edge(e);
            let (anc, desc) = if depth[a] <= depth[b] { (a, b) } else { (b, a) };
            TreePair {
                ancestor: anc as u32,
                descendant: desc as u32,
                len: depth[desc] - depth[anc],
                edge: e as u32,
            }
        })
        .collect();
    unqueried.sort_unstable_by_key(|p| {
        (
            p.len,
            p.ancestor.min(p.descendant),
            p.ancestor.max(p.descendant),
        )
    });

    let mut back_edges = Vec::new();
    for pair in &unqueried {
        let answer = oracle.answer(pair.edge as usize);
        query_log.push(Query {
            u: pair.ancestor,
            v: pair.descendant,
            edge: pair.edge,
            answer,
            phase: Phase::Two,
        });
        if answer {
            back_edges.push(*pair);
        }
    }

    DfsRun {
        n,
        parent,
        depth,
        roots,
        query_log,
        timeline,
        max_u,
        max_u_top,
        unqueried,
        back_edges,
        phase1_queries,
        phase1_positive,
    }
}

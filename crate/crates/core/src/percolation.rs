//! Bernoulli edge percolation keyed by `(seed, edge_index)`.
//!
//! Each base edge gets one uniform deviate and is kept iff it falls below
//! `p`. The same seed therefore gives nested edge sets for increasing `p`.

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::graph::Graph;
use crate::rng::{derive_seed, CounterRng};

/// Relative tolerance for probability identities.
pub const PROB_TOL: f64 = 1e-12;

const SPRINKLE_STREAM: u64 = 0x2;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PercolationError {
    #[error("probability {0} outside [0, 1]")]
    Probability(f64),
    #[error("first-round probability p1 = {p1} exceeds p = {p}")]
    FirstRoundTooLarge { p: f64, p1: f64 },
    #[error("p = 1 cannot be split with p1 = {0} < 1")]
    CertainEdge(f64),
}

fn check_prob(p: f64) -> Result<(), PercolationError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(PercolationError::Probability(p))
    }
}

/// A p-random spanning subgraph of `base`, stored as a mask over edge ids.
#[derive(Debug, Clone)]
pub struct SubgraphSample<'g> {
    pub base: &'g Graph,
    pub kept: FixedBitSet,
    pub p: f64,
    pub seed: u64,
}

impl<'g> SubgraphSample<'g> {
    pub fn kept_count(&self) -> usize {
        self.kept.count_ones(..)
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.kept.contains(edge)
    }

    pub fn materialize(&self) -> Graph {
        self.base
            .spanning_subgraph(&self.kept)
            .expect("mask sized from base")
    }

    /// Wraps an explicit edge mask (e.g. a decoded trace) as a sample.
    pub fn from_mask(base: &'g Graph, kept: FixedBitSet) -> Self {
        assert_eq!(kept.len(), base.m(), "mask length must equal e(G)");
        SubgraphSample {
            base,
            kept,
            p: f64::NAN,
            seed: 0,
        }
    }

    /// Vertices reachable from `v` through kept edges.
    pub fn component_size(&self, v: usize) -> usize {
        let mut seen = FixedBitSet::with_capacity(self.base.n());
        let mut stack = vec![v];
        seen.insert(v);
        let mut size = 0;
        while let Some(x) = stack.pop() {
            size += 1;
            for (&w, &e) in self
                .base
                .neighbors(x)
                .iter()
                .zip(self.base.neighbor_edges(x))
            {
                if self.kept.contains(e as usize) && !seen.put(w as usize) {
                    stack.push(w as usize);
                }
            }
        }
        size
    }
}

fn threshold_mask(g: &Graph, p: f64, seed: u64) -> FixedBitSet {
    let rng = CounterRng::new(seed);
    let mut kept = FixedBitSet::with_capacity(g.m());
    if p >= 1.0 {
        kept.insert_range(..);
        return kept;
    }
    if p > 0.0 {
        for e in 0..g.m() {
            if rng.uniform(e as u64) < p {
                kept.insert(e);
            }
        }
    }
    kept
}

pub fn sample(g: &Graph, p: f64, seed: u64) -> Result<SubgraphSample<'_>, PercolationError> {
    check_prob(p)?;
    Ok(SubgraphSample {
        base: g,
        kept: threshold_mask(g, p, seed),
        p,
        seed,
    })
}

/// Second-round probability `p2` with `(1 - p1)(1 - p2) = 1 - p`.
pub fn two_round_split(p: f64, p1: f64) -> Result<f64, PercolationError> {
    check_prob(p)?;
    check_prob(p1)?;
    if p1 > p {
        return Err(PercolationError::FirstRoundTooLarge { p, p1 });
    }
    if p >= 1.0 {
        return if p1 >= 1.0 {
            Ok(0.0)
        } else {
            Err(PercolationError::CertainEdge(p1))
        };
    }
    Ok((1.0 - (1.0 - p) / (1.0 - p1)).clamp(0.0, 1.0))
}

#[derive(Debug, Clone)]
pub struct SprinklePair {
    pub p1: f64,
    pub p2: f64,
    pub round1: FixedBitSet,
    pub combined: FixedBitSet,
}

/// Two-round exposure: round one is `sample(g, p1, seed)`; every edge it
/// missed is then added independently with probability `p2`.
pub fn sample_sprinkled(
    g: &Graph,
    p: f64,
    p1: f64,
    seed: u64,
) -> Result<SprinklePair, PercolationError> {
    let p2 = two_round_split(p, p1)?;
    let round1 = threshold_mask(g, p1, seed);
    let second = CounterRng::new(derive_seed(seed, SPRINKLE_STREAM));
    let mut combined = round1.clone();
    if p2 > 0.0 {
        for e in 0..g.m() {
            if !round1.contains(e) && second.uniform(e as u64) < p2 {
                combined.insert(e);
            }
        }
    }
    Ok(SprinklePair {
        p1,
        p2,
        round1,
        combined,
    })
}

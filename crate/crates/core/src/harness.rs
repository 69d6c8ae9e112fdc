//! Seeded Monte Carlo over p-random subgraphs.
//!
//! Trial `t` under master seed `s` samples with `trial_seed(s, t)`. The
//! schedule does not depend on `p`, so trials at different grid points are
//! coupled through the sampler's thresholds. Trials run on a rayon pool
//! (`PERCOLAB_THREADS` caps its size) and are reduced in trial order.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::dfs;
use crate::graph::Graph;
use crate::percolation::{sample, PercolationError};
use crate::rng::trial_seed;

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

pub const DEVIATION_BETAS: [f64; 3] = [0.05, 0.1, 0.2];

const QUANTILE_LEVELS: [f64; 5] = [0.05, 0.25, 0.5, 0.75, 0.95];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarnessError {
    #[error("need at least {need} trials, got {got}")]
    Trials { need: u64, got: u64 },
    #[error("length must be at least 1")]
    ZeroLength,
    #[error("vertex {v} out of range for n = {n}")]
    Vertex { v: usize, n: usize },
    #[error("probability grid is empty")]
    EmptyGrid,
    #[error("probability grid is not ascending")]
    UnsortedGrid,
    #[error(transparent)]
    Percolation(#[from] PercolationError),
}

fn pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let threads = std::env::var("PERCOLAB_THREADS")
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .filter(|&t| t > 0)
            .unwrap_or(0);
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool")
    })
}

/// Runs `f(t, trial_seed(seed, t))` for every trial; results come back in trial order.
fn map_trials<T, F>(trials: u64, seed: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync,
{
    pool().install(|| {
        (0..trials)
            .into_par_iter()
            .map(|t| f(trial_seed(seed, t)))
            .collect()
    })
}

/// Wilson score interval for `successes` out of `trials` at normal quantile `z`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (phat + z2 / (2.0 * n)) / denom;
    let half = z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let lo = if successes == 0 {
        0.0
    } else {
        (centre - half).max(0.0)
    };
    let hi = if successes == trials {
        1.0
    } else {
        (centre + half).min(1.0)
    };
    (lo.min(phat), hi.max(phat))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Estimate {
    pub trials: u64,
    pub successes: u64,
    pub point: f64,
    pub wilson_lo: f64,
    pub wilson_hi: f64,
    pub seed: u64,
}

impl Estimate {
    pub fn from_counts(successes: u64, trials: u64, seed: u64) -> Self {
        let (wilson_lo, wilson_hi) = wilson_interval(successes, trials, Z95);
        Estimate {
            trials,
            successes,
            point: successes as f64 / trials as f64,
            wilson_lo,
            wilson_hi,
            seed,
        }
    }
}

/// Everything one exploration yields about a sampled subgraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub kept: usize,
    pub path_len: usize,
    pub cycle_len: usize,
    pub excess: usize,
    pub largest_component: usize,
}

/// Samples `g` at `p` with `seed` and explores the result.
pub fn explore_trial(g: &Graph, p: f64, seed: u64) -> Result<TrialRecord, PercolationError> {
    let s = sample(g, p, seed)?;
    let run = dfs::run_with_oracle(g, &mut &s.kept);
    Ok(TrialRecord {
        kept: s.kept_count(),
        path_len: run.path_len(),
        cycle_len: run.cycle_len(),
        excess: run.phase2_positive(),
        largest_component: run.component_sizes().into_iter().max().unwrap_or(0),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "len", rename_all = "snake_case")]
pub enum Structure {
    Path(usize),
    Cycle(usize),
}

impl Structure {
    fn len(self) -> usize {
        match self {
            Structure::Path(l) | Structure::Cycle(l) => l,
        }
    }

    pub fn certified(self, r: &TrialRecord) -> bool {
        match self {
            Structure::Path(l) => r.path_len >= l,
            Structure::Cycle(l) => r.cycle_len >= l,
        }
    }
}

fn need_trials(trials: u64, need: u64) -> Result<(), HarnessError> {
    if trials < need {
        Err(HarnessError::Trials { need, got: trials })
    } else {
        Ok(())
    }
}

fn check_p(p: f64) -> Result<(), HarnessError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(PercolationError::Probability(p).into())
    }
}

/// Per-trial records at a single `p`.
pub fn trial_records(
    g: &Graph,
    p: f64,
    trials: u64,
    seed: u64,
) -> Result<Vec<TrialRecord>, HarnessError> {
    check_p(p)?;
    Ok(map_trials(trials, seed, |s| {
        explore_trial(g, p, s).expect("p checked")
    }))
}

/// Probability that the exploration certifies `kind`.
pub fn structure_prob(
    g: &Graph,
    p: f64,
    kind: Structure,
    trials: u64,
    seed: u64,
) -> Result<Estimate, HarnessError> {
    need_trials(trials, 1)?;
    if kind.len() == 0 {
        return Err(HarnessError::ZeroLength);
    }
    let hits = trial_records(g, p, trials, seed)?
        .iter()
        .filter(|r| kind.certified(r))
        .count() as u64;
    Ok(Estimate::from_counts(hits, trials, seed))
}

/// Probability that `v` lies in a component of at least `s` vertices.
pub fn component_prob(
    g: &Graph,
    p: f64,
    v: usize,
    s: usize,
    trials: u64,
    seed: u64,
) -> Result<Estimate, HarnessError> {
    need_trials(trials, 1)?;
    if v >= g.n() {
        return Err(HarnessError::Vertex { v, n: g.n() });
    }
    check_p(p)?;
    let hits = map_trials(trials, seed, |t| {
        sample(g, p, t).expect("p checked").component_size(v) >= s
    })
    .into_iter()
    .filter(|&b| b)
    .count() as u64;
    Ok(Estimate::from_counts(hits, trials, seed))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Deviation {
    pub beta: f64,
    pub fraction: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExcessStats {
    pub trials: u64,
    pub seed: u64,
    pub mean: f64,
    /// Sample standard deviation.
    pub std: f64,
    pub mean_over_n: f64,
    /// `(level, value)` with linear interpolation between order statistics.
    pub quantiles: Vec<(f64, f64)>,
    pub deviations: Vec<Deviation>,
}

/// Concentration bound `2 exp(-β² p e(G) / 3)` for `|exc - E exc| ≥ β p e(G)`.
pub fn deviation_bound(beta: f64, p: f64, m: usize) -> f64 {
    (2.0 * (-beta * beta * p * m as f64 / 3.0).exp()).min(1.0)
}

/// Linearly interpolated quantile of sorted data.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let (lo, frac) = (pos.floor() as usize, pos.fract());
    match sorted.get(lo + 1) {
        Some(&next) => sorted[lo] + frac * (next - sorted[lo]),
        None => sorted[lo],
    }
}

pub fn excess_stats(
    g: &Graph,
    p: f64,
    trials: u64,
    seed: u64,
) -> Result<ExcessStats, HarnessError> {
    need_trials(trials, 2)?;
    check_p(p)?;
    let xs: Vec<f64> = map_trials(trials, seed, |t| {
        sample(g, p, t).expect("p checked").materialize().excess() as f64
    });
    let k = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / k;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0);
    let mut sorted = xs.clone();
    sorted.sort_by(f64::total_cmp);
    let scale = p * g.m() as f64;
    let deviations = DEVIATION_BETAS
        .iter()
        .map(|&beta| Deviation {
            beta,
            fraction: xs
                .iter()
                .filter(|&&x| (x - mean).abs() >= beta * scale)
                .count() as f64
                / k,
            bound: deviation_bound(beta, p, g.m()),
        })
        .collect();
    Ok(ExcessStats {
        trials,
        seed,
        mean,
        std: var.sqrt(),
        mean_over_n: if g.n() == 0 { 0.0 } else { mean / g.n() as f64 },
        quantiles: QUANTILE_LEVELS
            .iter()
            .map(|&q| (q, quantile(&sorted, q)))
            .collect(),
        deviations,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub p: f64,
    pub trials: u64,
    pub mean_cycle: f64,
    pub max_cycle: usize,
    pub frac_cycle_ge_lstar: f64,
    pub mean_path: f64,
    pub max_path: usize,
    pub mean_excess: f64,
    pub mean_largest_comp_frac: f64,
}

impl SweepRow {
    pub const CSV_HEADER: &'static str =
        "p,trials,mean_cycle,max_cycle,frac_cycle_ge_lstar,mean_path,mean_excess,mean_largest_comp_frac";

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.p,
            self.trials,
            self.mean_cycle,
            self.max_cycle,
            self.frac_cycle_ge_lstar,
            self.mean_path,
            self.mean_excess,
            self.mean_largest_comp_frac
        )
    }

    fn from_records(p: f64, n: usize, lstar: usize, records: &[TrialRecord]) -> Self {
        let k = records.len() as f64;
        let mean =
            |f: fn(&TrialRecord) -> usize| records.iter().map(|r| f(r) as f64).sum::<f64>() / k;
        SweepRow {
            p,
            trials: records.len() as u64,
            mean_cycle: mean(|r| r.cycle_len),
            max_cycle: records.iter().map(|r| r.cycle_len).max().unwrap_or(0),
            frac_cycle_ge_lstar: records.iter().filter(|r| r.cycle_len >= lstar).count() as f64 / k,
            mean_path: mean(|r| r.path_len),
            max_path: records.iter().map(|r| r.path_len).max().unwrap_or(0),
            mean_excess: mean(|r| r.excess),
            mean_largest_comp_frac: if n == 0 {
                0.0
            } else {
                mean(|r| r.largest_component) / n as f64
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub rows: Vec<SweepRow>,
    /// `records[i][t]` is trial `t` at grid point `i`.
    pub records: Vec<Vec<TrialRecord>>,
}

impl Sweep {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(SweepRow::CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.csv_line());
            out.push('\n');
        }
        out
    }
}

/// One row per grid point, every point using the same trial seeds.
pub fn sweep(
    g: &Graph,
    grid: &[f64],
    lstar: usize,
    trials: u64,
    seed: u64,
) -> Result<Sweep, HarnessError> {
    need_trials(trials, 1)?;
    if grid.is_empty() {
        return Err(HarnessError::EmptyGrid);
    }
    if grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(HarnessError::UnsortedGrid);
    }
    let mut rows = Vec::with_capacity(grid.len());
    let mut records = Vec::with_capacity(grid.len());
    for &p in grid {
        let recs = trial_records(g, p, trials, seed)?;
        rows.push(SweepRow::from_records(p, g.n(), lstar, &recs));
        records.push(recs);
    }
    Ok(Sweep { rows, records })
}

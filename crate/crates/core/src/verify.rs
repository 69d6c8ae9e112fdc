//! Self-check suite behind `percolab verify`.

use fixedbitset::FixedBitSet;
use rand::Rng;
use serde::Serialize;

use crate::dfs::{self, BitTrace};
use crate::extremal::{ex_bruteforce, solve_c0, TuranFamily};
use crate::generators::complete;
use crate::graph::Graph;
use crate::percolation::{sample, SubgraphSample};
use crate::rng::{derive_seed, sequential};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Random base graph: `G(n, q)` with `n` in `2..=max_n`.
fn random_base(rng: &mut impl Rng, max_n: usize) -> Graph {
    let n = rng.random_range(2..=max_n);
    let q = rng.random_range(0.05..=1.0);
    let k = complete(n);
    sample(&k, q, rng.random())
        .expect("q in range")
        .materialize()
}

/// Exploration invariants on `runs` random `(G, p, seed)` triples with
/// `p ∈ {0.1, 1/√n, 0.9}`.
pub fn dfs_suite(runs: usize, max_n: usize, seed: u64) -> CheckOutcome {
    let mut rng = sequential(seed);
    let mut failures = Vec::new();
    for i in 0..runs {
        let g = random_base(&mut rng, max_n);
        let n = g.n();
        let p = [0.1, 1.0 / (n as f64).sqrt(), 0.9][i % 3];
        let s = sample(&g, p, rng.random()).expect("p in range");
        let run = dfs::run(&g, &s).expect("same base");
        let mut note = |what: String| failures.push(format!("run {i} (n={n}, p={p}): {what}"));
        for v in dfs::check_properties(&g, &run)
            .into_iter()
            .chain(dfs::check_answers(&run, &s.kept))
        {
            note(v.to_string());
        }
        if run.timeline.len() != 2 * n {
            note(format!("{} phase-one rounds", run.timeline.len()));
        }
        let gp = s.materialize();
        if run.phase1_positive != n - gp.components().count() {
            note("phase-one positives differ from n minus component count".into());
        }
        if run.phase2_positive() != gp.excess() {
            note("phase-two positives differ from the excess".into());
        }
        if (run.cycle_len() > 0) != (gp.excess() > 0) {
            note("cycle certificate present iff excess positive fails".into());
        }
    }
    CheckOutcome {
        name: "dfs_properties",
        cases: runs,
        failures,
    }
}

/// Round trip of the answer-sequence bijection: all of `K4`, then `random`
/// subgraphs of random 8-vertex graphs.
pub fn bijection_suite(random: usize, seed: u64) -> CheckOutcome {
    let mut failures = Vec::new();
    let mut check = |g: &Graph, mask: FixedBitSet, label: String| {
        let s = SubgraphSample::from_mask(g, mask);
        let trace = dfs::encode(g, &s).expect("same base");
        if trace.ones() != s.kept_count() {
            failures.push(format!("{label}: trace weight differs from edge count"));
        }
        if dfs::decode(g, &trace).ok().as_ref() != Some(&s.kept) {
            failures.push(format!("{label}: decode(encode(G')) != G'"));
        }
        let again = dfs::encode(
            g,
            &SubgraphSample::from_mask(g, dfs::decode(g, &trace).expect("length")),
        );
        if again.ok() != Some(trace) {
            failures.push(format!("{label}: encode(decode(x)) != x"));
        }
    };
    let k4 = complete(4);
    for bits in 0u32..64 {
        let mut mask = FixedBitSet::with_capacity(6);
        for e in 0..6 {
            mask.set(e, bits >> e & 1 == 1);
        }
        check(&k4, mask, format!("K4 subset {bits:06b}"));
    }
    let mut rng = sequential(seed);
    for i in 0..random {
        let g = sample(&complete(8), rng.random_range(0.2..=1.0), rng.random())
            .expect("p in range")
            .materialize();
        let mut mask = FixedBitSet::with_capacity(g.m());
        for e in 0..g.m() {
            mask.set(e, rng.random_bool(0.5));
        }
        check(&g, mask, format!("random pair {i}"));
    }
    CheckOutcome {
        name: "bijection",
        cases: 64 + random,
        failures,
    }
}

/// Decoding a trace and reading it back gives the trace; separate from the
/// subgraph direction because traces of every weight are reachable.
pub fn trace_suite(seed: u64) -> CheckOutcome {
    let mut rng = sequential(seed);
    let g = complete(6);
    let mut failures = Vec::new();
    for i in 0..200 {
        let bits: Vec<bool> = (0..g.m()).map(|_| rng.random_bool(0.5)).collect();
        let trace = BitTrace::from_bits(&bits);
        let mask = dfs::decode(&g, &trace).expect("length");
        let back = dfs::encode(&g, &SubgraphSample::from_mask(&g, mask)).expect("same base");
        if back != trace {
            failures.push(format!("trace {i} does not survive decode then encode"));
        }
    }
    CheckOutcome {
        name: "trace_roundtrip",
        cases: 200,
        failures,
    }
}

/// `exc(G') <= exc(G'')` for nested subgraphs, drawn through the threshold coupling.
pub fn excess_monotone_suite(pairs: usize, seed: u64) -> CheckOutcome {
    let mut rng = sequential(seed);
    let mut failures = Vec::new();
    for i in 0..pairs {
        let g = random_base(&mut rng, 30);
        let (a, b) = (rng.random_range(0.0..=1.0), rng.random_range(0.0..=1.0));
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let s = rng.random();
        let small = sample(&g, lo, s).expect("p in range");
        let large = sample(&g, hi, s).expect("p in range");
        if !small.kept.is_subset(&large.kept) {
            failures.push(format!("pair {i}: coupled samples not nested"));
        } else if small.materialize().excess() > large.materialize().excess() {
            failures.push(format!("pair {i}: excess decreased under edge addition"));
        }
    }
    CheckOutcome {
        name: "excess_monotone",
        cases: pairs,
        failures,
    }
}

/// `ex(n, {C3}) = floor(n^2 / 4)` for `n <= max_n`.
pub fn mantel_suite(max_n: usize) -> CheckOutcome {
    let fam = TuranFamily::cycles(&[3]).expect("triangle is a good family");
    let failures = (1..=max_n)
        .filter_map(|n| {
            let got = ex_bruteforce(n, &fam).ok()?;
            (got != n * n / 4).then(|| format!("ex({n}, C3) = {got}, expected {}", n * n / 4))
        })
        .collect();
    CheckOutcome {
        name: "mantel",
        cases: max_n,
        failures,
    }
}

pub fn c0_suite() -> CheckOutcome {
    let c = solve_c0();
    let residual = (c / 2.0 - 1.0 + (-c).exp()).abs();
    let mut failures = Vec::new();
    if residual > 1e-9 {
        failures.push(format!("residual {residual:e} at c0 = {c}"));
    }
    CheckOutcome {
        name: "c0_root",
        cases: 1,
        failures,
    }
}

/// Runs every check. `quick` shrinks the random workloads.
pub fn run_suite(quick: bool, seed: u64) -> Vec<CheckOutcome> {
    let scale = |full: usize, fast: usize| if quick { fast } else { full };
    vec![
        dfs_suite(scale(1000, 150), 50, derive_seed(seed, 1)),
        bijection_suite(scale(500, 100), derive_seed(seed, 2)),
        trace_suite(derive_seed(seed, 3)),
        excess_monotone_suite(scale(1000, 150), derive_seed(seed, 4)),
        mantel_suite(scale(7, 6)),
        c0_suite(),
    ]
}

//! Independent reference computations used only by tests.
#![allow(dead_code)]

use percolab::generators::complete;
use percolab::percolation::sample;
use percolab::Graph;

fn adjacency_masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect()
}

/// Longest cycle length by dynamic programming over vertex subsets; 0 for forests.
/// `reach[mask]` holds the endpoints of paths that start at the lowest vertex
/// of `mask` and visit exactly `mask`.
pub fn circumference(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 16, "exhaustive oracle only for small graphs");
    let adj = adjacency_masks(g);
    let mut reach = vec![0u32; 1 << n];
    let mut best = 0;
    for s in 0..n {
        reach[1 << s] = 1 << s;
    }
    for mask in 1u32..(1 << n) {
        let ends = reach[mask as usize];
        if ends == 0 {
            continue;
        }
        let s = mask.trailing_zeros() as usize;
        let size = mask.count_ones() as usize;
        for v in (0..n).filter(|&v| ends >> v & 1 == 1) {
            if size >= 3 && adj[v] >> s & 1 == 1 {
                best = best.max(size);
            }
            // Extend only through vertices above the start so each path has one owner.
            let mut ext = adj[v] & !mask & !((1u32 << (s + 1)) - 1);
            while ext != 0 {
                let w = ext.trailing_zeros();
                ext &= ext - 1;
                reach[(mask | 1 << w) as usize] |= 1 << w;
            }
        }
    }
    best
}

/// Longest path length in edges by subset dynamic programming.
pub fn longest_path(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 16, "exhaustive oracle only for small graphs");
    if n == 0 {
        return 0;
    }
    let adj = adjacency_masks(g);
    let mut reach = vec![0u32; 1 << n];
    for v in 0..n {
        reach[1 << v] = 1 << v;
    }
    let mut best = 0;
    for mask in 1u32..(1 << n) {
        let ends = reach[mask as usize];
        if ends == 0 {
            continue;
        }
        best = best.max(mask.count_ones() as usize - 1);
        for v in (0..n).filter(|&v| ends >> v & 1 == 1) {
            let mut ext = adj[v] & !mask;
            while ext != 0 {
                let w = ext.trailing_zeros();
                ext &= ext - 1;
                reach[(mask | 1 << w) as usize] |= 1 << w;
            }
        }
    }
    best
}

/// Binomial(n, p) probability mass function, computed in log space.
pub fn binom_pmf(n: u64, p: f64) -> Vec<f64> {
    if p == 0.0 || p == 1.0 {
        let mut v = vec![0.0; n as usize + 1];
        v[if p == 0.0 { 0 } else { n as usize }] = 1.0;
        return v;
    }
    let (lp, lq) = (p.ln(), (1.0 - p).ln());
    let mut log_choose = 0.0f64;
    (0..=n)
        .map(|k| {
            if k > 0 {
                log_choose += ((n - k + 1) as f64).ln() - (k as f64).ln();
            }
            (log_choose + k as f64 * lp + (n - k) as f64 * lq).exp()
        })
        .collect()
}

/// `P(|X - np| > a)`.
pub fn two_sided_tail(n: u64, p: f64, a: f64) -> f64 {
    let mu = n as f64 * p;
    binom_pmf(n, p)
        .iter()
        .enumerate()
        .filter(|(k, _)| (*k as f64 - mu).abs() > a)
        .map(|(_, q)| q)
        .sum()
}

/// `P(X > t)`.
pub fn upper_tail(n: u64, p: f64, t: f64) -> f64 {
    binom_pmf(n, p)
        .iter()
        .enumerate()
        .filter(|(k, _)| *k as f64 > t)
        .map(|(_, q)| q)
        .sum()
}

/// Root of `c/2 - 1 + e^(-c)` on `[1, 2]` by Newton's method from 1.5.
pub fn c0_newton() -> f64 {
    let mut c = 1.5f64;
    for _ in 0..50 {
        let f = c / 2.0 - 1.0 + (-c).exp();
        let df = 0.5 - (-c).exp();
        c -= f / df;
    }
    c
}

/// `G(n, q)` drawn through the percolation sampler on `K_n`.
pub fn gnp(n: usize, q: f64, seed: u64) -> Graph {
    sample(&complete(n), q, seed).unwrap().materialize()
}

/// `floor(n^2 / 4)` maximum for triangle-free graphs on `n` vertices.
pub fn mantel(n: usize) -> usize {
    n * n / 4
}

/// Girth by removing each edge in turn and finding the shortest detour; `None` for forests.
pub fn girth_by_detours(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (u, v) in g.edges() {
        let mut dist = vec![usize::MAX; g.n()];
        let mut queue = std::collections::VecDeque::from([u]);
        dist[u] = 0;
        while let Some(x) = queue.pop_front() {
            for &w in g.neighbors(x) {
                let w = w as usize;
                if (x, w) == (u, v) || (x, w) == (v, u) || dist[w] != usize::MAX {
                    continue;
                }
                dist[w] = dist[x] + 1;
                queue.push_back(w);
            }
        }
        if dist[v] != usize::MAX {
            let len = dist[v] + 1;
            best = Some(best.map_or(len, |b| b.min(len)));
        }
    }
    best
}

/// `ex(n, H)` for `H` a set of short cycle lengths drawn from `{3, 4}`, by
/// enumerating every labelled graph on `n <= 6` vertices.
pub fn ex_cycles_naive(n: usize, forbid3: bool, forbid4: bool) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut best = 0;
    for bits in 0u32..(1 << pairs.len()) {
        let mut adj = vec![0u32; n];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if bits >> i & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        let tri = forbid3
            && pairs
                .iter()
                .any(|&(u, v)| adj[u] >> v & 1 == 1 && adj[u] & adj[v] != 0);
        let quad = forbid4
            && pairs
                .iter()
                .any(|&(u, v)| (adj[u] & adj[v]).count_ones() >= 2);
        if !tri && !quad {
            best = best.max(bits.count_ones() as usize);
        }
    }
    best
}

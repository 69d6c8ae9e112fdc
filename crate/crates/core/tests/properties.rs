mod common;

use fixedbitset::FixedBitSet;
use proptest::prelude::*;

use percolab::dfs::{self, BitTrace};
use percolab::extremal::{n_h_bracket, TuranFamily};
use percolab::generators::complete;
use percolab::graph::io::{parse_edge_list, to_edge_list_string};
use percolab::harness::{self, wilson_interval, Z95};
use percolab::percolation::{sample, sample_sprinkled, SubgraphSample};
use percolab::{Girth, Graph};

/// Arbitrary simple graph on `1..=max_n` vertices.
fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges: Vec<_> = pairs
                .iter()
                .zip(&keep)
                .filter(|(_, &k)| k)
                .map(|(&e, _)| e)
                .collect();
            Graph::new(n, &edges).unwrap()
        })
    })
}

fn mask_of(bits: &[bool]) -> FixedBitSet {
    let mut m = FixedBitSet::with_capacity(bits.len());
    for (i, &b) in bits.iter().enumerate() {
        m.set(i, b);
    }
    m
}

/// A graph together with an arbitrary edge mask over it.
fn graph_and_mask(max_n: usize) -> impl Strategy<Value = (Graph, FixedBitSet)> {
    graph(max_n).prop_flat_map(|g| {
        let m = g.m();
        (
            Just(g),
            proptest::collection::vec(any::<bool>(), m).prop_map(|b| mask_of(&b)),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn excess_monotone_and_lipschitz((g, mask) in graph_and_mask(12)) {
        let sub = g.spanning_subgraph(&mask).unwrap();
        prop_assert!(sub.excess() <= g.excess());
        // Adding one edge raises the excess by 0 or 1.
        if let Some(e) = (0..g.m()).find(|&e| !mask.contains(e)) {
            let mut more = mask.clone();
            more.insert(e);
            let bigger = g.spanning_subgraph(&more).unwrap();
            let step = bigger.excess() as i64 - sub.excess() as i64;
            prop_assert!(step == 0 || step == 1);
        }
    }

    #[test]
    fn excess_formula(g in graph(14)) {
        prop_assert_eq!(g.excess() + g.n(), g.m() + g.components().count());
    }

    #[test]
    fn forests_have_no_girth(g in graph(12)) {
        prop_assert_eq!(g.excess() == 0, matches!(g.girth(), Girth::Infinite));
    }

    #[test]
    fn girth_matches_circumference_on_cycle_free_parts(g in graph(10)) {
        // The shortest cycle is never longer than the longest one.
        let c = common::circumference(&g);
        match g.girth() {
            Girth::Infinite => prop_assert_eq!(c, 0),
            Girth::Finite { length, cycle } => {
                prop_assert!(3 <= length && length <= c);
                prop_assert_eq!(cycle.len(), length);
                for i in 0..length {
                    prop_assert!(g.has_edge(cycle[i], cycle[(i + 1) % length]));
                }
            }
        }
    }

    #[test]
    fn h_free_iff_girth_exceeds(g in graph(6), top in 3usize..=6) {
        let lengths: Vec<usize> = (3..=top).collect();
        let fam = TuranFamily::cycles(&lengths).unwrap();
        let patterns = match &fam { TuranFamily::Explicit(p) => p.clone(), _ => unreachable!() };
        prop_assert_eq!(g.is_h_free(&patterns).unwrap(), g.girth().exceeds(top));
        prop_assert_eq!(fam.admits(&g).unwrap(), TuranFamily::GirthGreater(top).admits(&g).unwrap());
    }

    #[test]
    fn edge_list_round_trip(g in graph(15)) {
        prop_assert_eq!(parse_edge_list(&to_edge_list_string(&g)).unwrap(), g);
    }

    #[test]
    fn exploration_identities((g, mask) in graph_and_mask(16)) {
        let s = SubgraphSample::from_mask(&g, mask);
        let run = dfs::run(&g, &s).unwrap();
        let gp = s.materialize();
        prop_assert!(dfs::check_properties(&g, &run).is_empty());
        prop_assert_eq!(run.timeline.len(), 2 * g.n());
        prop_assert_eq!(run.phase1_positive, g.n() - gp.components().count());
        prop_assert_eq!(run.phase2_positive(), gp.excess());
        prop_assert_eq!(run.query_log.len(), g.m());
        for p in &run.unqueried {
            let path = run.tree_path_to(p.descendant as usize);
            prop_assert!(path.contains(&(p.ancestor as usize)));
            prop_assert_eq!(p.len as usize, run.depth[p.descendant as usize] as usize - run.depth[p.ancestor as usize] as usize);
        }
        let mut sizes = run.component_sizes();
        let mut expect = gp.components().sizes.clone();
        sizes.sort_unstable();
        expect.sort_unstable();
        prop_assert_eq!(sizes, expect);
    }

    #[test]
    fn certificates_are_real((g, mask) in graph_and_mask(10)) {
        let s = SubgraphSample::from_mask(&g, mask);
        let run = dfs::run(&g, &s).unwrap();
        let gp = s.materialize();
        let path = run.longest_path_certificate();
        prop_assert_eq!(path.len(), run.max_u);
        for w in path.windows(2) {
            prop_assert!(gp.has_edge(w[0], w[1]));
        }
        prop_assert!(run.path_len() <= common::longest_path(&gp));
        match run.longest_cycle_certificate() {
            None => prop_assert_eq!(gp.excess(), 0),
            Some(c) => {
                prop_assert_eq!(c.vertices.first(), c.vertices.last());
                prop_assert_eq!(c.vertices.len(), c.length + 1);
                let mut distinct = c.vertices[..c.length].to_vec();
                distinct.sort_unstable();
                distinct.dedup();
                prop_assert_eq!(distinct.len(), c.length);
                for w in c.vertices.windows(2) {
                    prop_assert!(gp.has_edge(w[0], w[1]));
                }
                prop_assert!(c.length <= common::circumference(&gp));
            }
        }
    }

    #[test]
    fn bijection_both_directions((g, mask) in graph_and_mask(9), bits in proptest::collection::vec(any::<bool>(), 0..=36)) {
        let s = SubgraphSample::from_mask(&g, mask.clone());
        let trace = dfs::encode(&g, &s).unwrap();
        prop_assert_eq!(trace.ones(), mask.count_ones(..));
        prop_assert_eq!(dfs::decode(&g, &trace).unwrap(), mask);
        let mut bits = bits;
        bits.resize(g.m(), false);
        let t = BitTrace::from_bits(&bits);
        let decoded = dfs::decode(&g, &t).unwrap();
        prop_assert_eq!(dfs::encode(&g, &SubgraphSample::from_mask(&g, decoded)).unwrap(), t);
    }

    #[test]
    fn sampling_is_deterministic_and_coupled(n in 2usize..30, lo in 0.0f64..=1.0, hi in 0.0f64..=1.0, seed: u64) {
        let g = complete(n);
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        let a = sample(&g, lo, seed).unwrap();
        prop_assert_eq!(&a.kept, &sample(&g, lo, seed).unwrap().kept);
        let b = sample(&g, hi, seed).unwrap();
        prop_assert!(a.kept.is_subset(&b.kept));
        let (ga, gb) = (a.materialize(), b.materialize());
        prop_assert!(ga.excess() <= gb.excess());
        prop_assert!(ga.components().largest() <= gb.components().largest());
    }

    #[test]
    fn sprinkling_nests(n in 2usize..25, p in 0.0f64..0.99, frac in 0.0f64..=1.0, seed: u64) {
        let g = complete(n);
        let p1 = p * frac;
        let s = sample_sprinkled(&g, p, p1, seed).unwrap();
        prop_assert!(s.round1.is_subset(&s.combined));
        prop_assert!(((s.p1 + (1.0 - s.p1) * s.p2) - p).abs() <= 1e-12);
    }

    #[test]
    fn n_h_bracket_ordering(k in 1usize..300, which in 0usize..4) {
        let fam = match which {
            0 => TuranFamily::Empty,
            1 => TuranFamily::GirthGreater(3),
            2 => TuranFamily::GirthGreater(4),
            _ => TuranFamily::GirthGreater(7),
        };
        let b = n_h_bracket(k as f64, &fam);
        prop_assert!(b.lo > k);
        if let Some(hi) = b.hi {
            prop_assert!(b.lo <= hi);
        }
        if which == 0 {
            prop_assert_eq!((b.lo, b.hi), (k + 1, Some(k + 1)));
        }
    }

    #[test]
    fn wilson_sane(trials in 1u64..5000, frac in 0.0f64..=1.0) {
        let s = (trials as f64 * frac).floor() as u64;
        let (lo, hi) = wilson_interval(s, trials, Z95);
        let p = s as f64 / trials as f64;
        prop_assert!(0.0 <= lo && lo <= p && p <= hi && hi <= 1.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coupled_sweep_monotone_for_excess_and_giant(n in 20usize..80, seed: u64) {
        let g = complete(n);
        let k = (n - 1) as f64;
        let sw = harness::sweep(&g, &[0.5 / k, 1.0 / k, 2.0 / k, 4.0 / k], 3, 20, seed).unwrap();
        for w in sw.records.windows(2) {
            for (a, b) in w[0].iter().zip(&w[1]) {
                prop_assert!(a.excess <= b.excess);
                prop_assert!(a.largest_component <= b.largest_component);
                prop_assert!(a.kept <= b.kept);
            }
        }
        let cyc = harness::structure_prob(&g, 2.0 / k, harness::Structure::Cycle(3), 20, seed).unwrap();
        let zero_excess = sw.records[2].iter().filter(|r| r.excess == 0).count() as u64;
        prop_assert!(cyc.successes <= 20 - zero_excess);
    }
}

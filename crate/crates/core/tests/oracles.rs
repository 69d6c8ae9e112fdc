mod common;

use percolab::extremal::{
    binom_tail_bound, cycle_len_budget, ex_bracket, ex_bruteforce, n_h_bracket, path_len_budget,
    solve_c0, TailMode, TuranFamily,
};
use percolab::generators::{complete, girth_repair, pp_incidence, random_regular};
use percolab::percolation::{sample, sample_sprinkled};
use percolab::rng::sequential;
use percolab::Graph;
use rand::Rng;

#[test]
fn petersen_facts() {
    let p = Graph::petersen();
    let d = p.degree_stats();
    assert_eq!((d.min, d.avg, d.max), (3, 3.0, 3));
    assert_eq!(p.excess(), 6);
    let (outer, _) = p.induced(&[0, 1, 2, 3, 4]).unwrap();
    assert_eq!(outer, Graph::cycle(5));
    assert_eq!(p.girth().length(), common::girth_by_detours(&p));
    assert_eq!(p.girth().length(), Some(5));
}

#[test]
fn girth_agrees_with_detour_oracle() {
    let mut rng = sequential(31);
    for _ in 0..300 {
        let g = common::gnp(
            rng.random_range(1..=25),
            rng.random_range(0.02..0.4),
            rng.random(),
        );
        assert_eq!(g.girth().length(), common::girth_by_detours(&g));
    }
    for q in [2, 3, 5] {
        let g = pp_incidence(q).unwrap();
        assert_eq!(common::girth_by_detours(&g), Some(6));
    }
}

#[test]
fn incidence_graphs() {
    for (q, n, k) in [(2, 14, 3), (3, 26, 4), (5, 62, 6), (13, 366, 14)] {
        let g = pp_incidence(q).unwrap();
        let d = g.degree_stats();
        assert_eq!((g.n(), d.min, d.max), (n, k, k));
        assert_eq!(g.girth().length(), Some(6));
        assert!(g.is_bipartite());
    }
    assert!(pp_incidence(4).is_err());
}

#[test]
fn k4_cannot_be_repaired_to_triangle_free() {
    // K4 is the only 3-regular graph on 4 vertices.
    let pairs: Vec<(usize, usize)> = (0..4)
        .flat_map(|u| (u + 1..4).map(move |v| (u, v)))
        .collect();
    let cubic: Vec<Graph> = (0u32..64)
        .map(|bits| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::new(4, &edges).unwrap()
        })
        .filter(|g| (0..4).all(|v| g.degree(v) == 3))
        .collect();
    assert_eq!(cubic, vec![complete(4)]);
    assert!(!girth_repair(&complete(4), 3, 1, 10_000).unwrap().success);
}

#[test]
fn repaired_regular_graph_keeps_degrees() {
    let g = random_regular(200, 4, 17).unwrap();
    let r = girth_repair(&g, 4, 17, 1_000_000).unwrap();
    assert!(r.success);
    let d = r.graph.degree_stats();
    assert_eq!((d.min, d.max), (4, 4));
    assert!(common::girth_by_detours(&r.graph).is_none_or(|l| l >= 5));
}

#[test]
fn brute_force_matches_naive_enumeration() {
    let fams = [
        (TuranFamily::cycles(&[3]).unwrap(), true, false),
        (TuranFamily::cycles(&[4]).unwrap(), false, true),
        (TuranFamily::cycles(&[3, 4]).unwrap(), true, true),
    ];
    for (fam, f3, f4) in &fams {
        for n in 0..=6 {
            assert_eq!(
                ex_bruteforce(n, fam).unwrap(),
                common::ex_cycles_naive(n, *f3, *f4),
                "n={n}"
            );
        }
    }
    for n in 0..=6 {
        let b = ex_bracket(n, &fams[2].0);
        assert_eq!(b.exact, Some(common::ex_cycles_naive(n, true, true)));
    }
    assert_eq!(ex_bruteforce(5, &fams[0].0).unwrap(), 6);
    assert_eq!(ex_bruteforce(5, &fams[2].0).unwrap(), 5);
    assert_eq!(ex_bruteforce(3, &TuranFamily::Empty).unwrap(), 3);
}

#[test]
fn girth_brackets_contain_exact_values() {
    let fam = TuranFamily::cycles(&[3, 4]).unwrap();
    for n in 4..=7 {
        let exact = ex_bruteforce(n, &fam).unwrap();
        assert!(
            ex_bracket(n, &TuranFamily::GirthGreater(4)).contains(exact),
            "n={n}"
        );
    }
    assert_eq!(ex_bracket(100, &TuranFamily::Empty).exact, Some(4950));
    assert_eq!(ex_bracket(7, &TuranFamily::GirthGreater(3)).exact, Some(12));
}

/// Smallest `n` with `n K <= 2 floor(n^2/4)`.
fn n_h_triangle(k: f64) -> usize {
    (1..)
        .find(|&n| n as f64 * k <= 2.0 * common::mantel(n) as f64)
        .unwrap()
}

#[test]
fn n_h_for_triangles() {
    let b = n_h_bracket(3.0, &TuranFamily::GirthGreater(3));
    assert_eq!((b.lo, b.hi), (6, Some(6)));
    for k in 1..=60 {
        let b = n_h_bracket(k as f64, &TuranFamily::GirthGreater(3));
        assert_eq!(
            (b.lo, b.hi),
            (n_h_triangle(k as f64), Some(n_h_triangle(k as f64)))
        );
    }
}

#[test]
fn non_bipartite_families_need_at_most_2k() {
    let fams = [
        TuranFamily::GirthGreater(3),
        TuranFamily::cycles(&[3, 5]).unwrap(),
        TuranFamily::explicit(vec![complete(4)]).unwrap(),
    ];
    for fam in &fams {
        for k in 1..=80 {
            let hi = n_h_bracket(k as f64, fam).hi.expect("finite");
            assert!(hi <= 2 * k, "k={k}: {hi}");
        }
    }
}

#[test]
fn path_budget_tracks_closed_form() {
    assert_eq!(
        path_len_budget(3600, 1.0, &TuranFamily::Empty).unwrap().lo,
        100
    );
    for k in (100..=10_000).step_by(100) {
        for eps in [0.25, 0.5, 1.0] {
            let b = path_len_budget(k, eps, &TuranFamily::Empty).unwrap();
            let closed = (eps * eps * k as f64 / 36.0).floor() as usize;
            assert!(b.lo + 1 >= closed, "k={k} eps={eps}: {} vs {closed}", b.lo);
            assert_eq!(b.hi, Some(b.lo));
        }
    }
}

#[test]
fn cycle_budget_chain_with_exact_triangle_numbers() {
    let fam = TuranFamily::GirthGreater(3);
    for k in 1..=40usize {
        let mut prev = 0;
        for c in [0.5, 1.0, 2.0, 2.5, 5.0, 10.0] {
            let ell = cycle_len_budget(k, c, &fam).unwrap().lo;
            assert!(ell >= prev, "not monotone in c");
            prev = ell;
            let target = c * k as f64 / 10.0;
            let nh = n_h_triangle(target);
            // With a fractional target the floor inside ex costs one vertex.
            if target.fract() == 0.0 {
                assert!(ell >= nh, "k={k} c={c}: {ell} < {nh}");
            } else {
                assert!(ell + 1 >= nh, "k={k} c={c}: {ell} + 1 < {nh}");
            }
        }
    }
}

#[test]
fn tail_bound_arithmetic() {
    let b = binom_tail_bound(100, 0.5, TailMode::Chernoff(10.0)).unwrap();
    assert!((b - 2.0 * (-0.5f64).exp()).abs() < 1e-12);
    let m = binom_tail_bound(100, 0.1, TailMode::Mult(3.0)).unwrap();
    assert!((m - (std::f64::consts::E / 3.0).powf(30.0)).abs() < 1e-12);
}

#[test]
fn c0_root() {
    let c = solve_c0();
    assert!(1.59 < c && c < 1.60);
    assert!((c - common::c0_newton()).abs() < 1e-10);
}

#[test]
fn sample_mean_within_window() {
    let g = complete(100);
    let trials = 10_000u64;
    let total: usize = (0..trials)
        .map(|s| sample(&g, 0.5, s).unwrap().kept_count())
        .sum();
    let mean = total as f64 / trials as f64;
    assert!(
        (mean - 2475.0).abs() <= 3.0 * (4950.0f64 * 0.25).sqrt(),
        "{mean}"
    );
}

#[test]
fn sprinkled_marginals() {
    let g = complete(20);
    let (p, p1, trials) = (0.3, 0.1, 100_000u64);
    let mut counts = vec![0u64; g.m()];
    for s in 0..trials {
        for e in sample_sprinkled(&g, p, p1, s).unwrap().combined.ones() {
            counts[e] += 1;
        }
    }
    let sigma = (p * (1.0 - p) / trials as f64).sqrt();
    for (e, &c) in counts.iter().enumerate() {
        let f = c as f64 / trials as f64;
        assert!((f - p).abs() <= 4.0 * sigma, "edge {e}: {f}");
    }
}

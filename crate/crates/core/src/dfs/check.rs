//! Replays a recorded exploration and reports every way it departs from the
//! algorithm or from the invariants it should maintain.

use std::fmt;

use fixedbitset::FixedBitSet;

use super::{DfsRun, Phase, NONE};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    /// When `U` empties, the finished tree is a whole component of `G'`.
    ComponentClosed,
    /// While `T` is non-empty, a positive answer grows `U` by one.
    StackGrowth,
    /// No base edge between `S` and `T` is present in `G'`.
    Separation,
    /// `U` is always a path of `G'`.
    StackPath,
    /// The log is not the one the algorithm would produce.
    Transcript,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub property: Property,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.property, self.detail)
    }
}

struct Report(Vec<Violation>);

impl Report {
    fn push(&mut self, property: Property, detail: String) {
        self.0.push(Violation { property, detail });
    }
}

/// Every logged answer agrees with `mask`.
pub fn check_answers(run: &DfsRun, mask: &FixedBitSet) -> Vec<Violation> {
    run.query_log
        .iter()
        .enumerate()
        .filter(|(_, q)| mask.contains(q.edge as usize) != q.answer)
        .map(|(i, q)| Violation {
            property: Property::Transcript,
            detail: format!(
                "query {i} on edge {} answered {} but the subgraph says otherwise",
                q.edge, q.answer
            ),
        })
        .collect()
}

/// Replays `run` against `g`, taking the logged answers as the truth about `G'`.
pub fn check_properties(g: &Graph, run: &DfsRun) -> Vec<Violation> {
    let mut rep = Report(Vec::new());
    let n = g.n();
    let m = g.m();
    if run.n != n || run.parent.len() != n || run.depth.len() != n {
        rep.push(
            Property::Transcript,
            format!("run covers {} vertices, graph has {n}", run.n),
        );
        return rep.0;
    }
    if run.query_log.len() != m {
        rep.push(
            Property::Transcript,
            format!(
                "{} queries logged, graph has {m} edges",
                run.query_log.len()
            ),
        );
    }
    let mut present = FixedBitSet::with_capacity(m);
    let mut queried = FixedBitSet::with_capacity(m);
    for q in &run.query_log {
        if q.edge as usize >= m {
            rep.push(
                Property::Transcript,
                format!("edge id {} out of range", q.edge),
            );
            return rep.0;
        }
        if q.answer {
            present.insert(q.edge as usize);
        }
    }

    // Phase one.
    #[derive(Clone, Copy, PartialEq, Eq)]
    enum Where {
        T,
        U,
        S,
    }
    let mut place = vec![Where::T; n];
    let mut cursor = vec![0usize; n];
    let mut parent = vec![NONE; n];
    let mut depth = vec![0u32; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut tree: Vec<usize> = Vec::new();
    let (mut s_count, mut t_count) = (0usize, n);
    let mut next = 0usize;
    let mut rounds = 0usize;
    let mut phase1_positive = 0usize;
    let mut logged = 0usize;

    'rounds: while s_count < n {
        let before_u = stack.len();
        let mut grew = false;
        match stack.last().copied() {
            None => {
                if !tree.is_empty() {
                    let finished: Vec<bool> = tree.iter().map(|&v| place[v] == Where::S).collect();
                    check_closed(g, &present, &finished, &tree, &mut rep);
                    tree.clear();
                }
                while place[next] != Where::T {
                    next += 1;
                }
                place[next] = Where::U;
                t_count -= 1;
                stack.push(next as u32);
                tree.push(next);
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
                    let Some(q) = run.query_log.get(logged) else {
                        rep.push(
                            Property::Transcript,
                            format!("log ends before phase one queries ({v}, {w})"),
                        );
                        break 'rounds;
                    };
                    if q.phase != Phase::One
                        || q.u as usize != v
                        || q.v as usize != w
                        || q.edge as usize != e
                    {
                        rep.push(
                            Property::Transcript,
                            format!(
                                "expected phase-one query ({v}, {w}), found ({}, {}) {:?}",
                                q.u, q.v, q.phase
                            ),
                        );
                        break 'rounds;
                    }
                    queried.insert(e);
                    logged += 1;
                    if q.answer {
                        if !g.has_edge(v, w) {
                            rep.push(
                                Property::StackPath,
                                format!("pushed {w} above {v} without a base edge"),
                            );
                        }
                        phase1_positive += 1;
                        place[w] = Where::U;
                        t_count -= 1;
                        parent[w] = top;
                        depth[w] = depth[v] + 1;
                        stack.push(w as u32);
                        tree.push(w);
                        pushed = true;
                        grew = true;
                        break;
                    }
                }
                if !pushed {
                    for (&w, &e) in nbrs.iter().zip(eids) {
                        if place[w as usize] == Where::T && present.contains(e as usize) {
                            rep.push(
                                Property::Separation,
                                format!("{v} finished while {w} in T is a neighbour in G'"),
                            );
                        }
                    }
                    stack.pop();
                    place[v] = Where::S;
                    s_count += 1;
                }
            }
        }
        if grew && stack.len() != before_u + 1 {
            rep.push(
                Property::StackGrowth,
                format!("round {rounds}: positive answer did not grow U by one"),
            );
        }
        // U only changes at the top, so checking the newest pair keeps it a path.
        if grew && stack.len() >= 2 {
            let (a, b) = (
                stack[stack.len() - 2] as usize,
                stack[stack.len() - 1] as usize,
            );
            if !g.edge_id(a, b).is_some_and(|e| present.contains(e)) {
                rep.push(
                    Property::StackPath,
                    format!(
                        "round {rounds}: consecutive stack vertices {a}, {b} not adjacent in G'"
                    ),
                );
            }
        }
        match run.timeline.get(rounds) {
            Some(r) if (r.s as usize, r.u as usize, r.t as usize) == (s_count, stack.len(), t_count) => {}
            Some(r) => rep.push(
                Property::Transcript,
                format!("round {rounds}: recorded sizes ({}, {}, {}) replay as ({s_count}, {}, {t_count})", r.s, r.u, r.t, stack.len()),
            ),
            None => rep.push(Property::Transcript, format!("timeline missing round {rounds}")),
        }
        rounds += 1;
    }
    if !tree.is_empty() && s_count == n {
        let finished: Vec<bool> = tree.iter().map(|&v| place[v] == Where::S).collect();
        check_closed(g, &present, &finished, &tree, &mut rep);
    }
    if s_count < n {
        return rep.0;
    }
    if rounds != 2 * n || run.timeline.len() != 2 * n {
        rep.push(
            Property::Transcript,
            format!(
                "phase one took {rounds} rounds, timeline has {}, expected {}",
                run.timeline.len(),
                2 * n
            ),
        );
    }
    let p1 = logged;
    if run.phase1_queries != p1 {
        rep.push(
            Property::Transcript,
            format!(
                "recorded {} phase-one queries, replay made {p1}",
                run.phase1_queries
            ),
        );
    }
    if run.phase1_positive != phase1_positive {
        rep.push(
            Property::Transcript,
            "phase-one positive count differs from replay".into(),
        );
    }
    if run.parent != parent || run.depth != depth {
        rep.push(
            Property::Transcript,
            "recorded forest differs from replay".into(),
        );
    }

    // Phase two: every remaining edge once, ancestor-descendant, sorted.
    let (tin, tout) = euler_times(n, &parent);
    let is_ancestor = |a: usize, d: usize| tin[a] <= tin[d] && tout[d] <= tout[a];
    let mut last_key = None;
    let mut positives = Vec::new();
    for (i, q) in run.query_log.iter().enumerate().skip(p1) {
        let e = q.edge as usize;
        if q.phase != Phase::Two {
            rep.push(
                Property::Transcript,
                format!("query {i} after phase one is not marked phase two"),
            );
        }
        if queried.put(e) {
            rep.push(Property::Transcript, format!("edge {e} queried twice"));
            continue;
        }
        let (a, d) = (q.u as usize, q.v as usize);
        let (x, y) = g.edge(e);
        if (a.min(d), a.max(d)) != (x, y) {
            rep.push(
                Property::Transcript,
                format!("query {i} names ({a}, {d}) but edge {e} is ({x}, {y})"),
            );
            continue;
        }
        if !is_ancestor(a, d) {
            rep.push(
                Property::Transcript,
                format!("unqueried pair ({a}, {d}) is not ancestor-descendant"),
            );
            continue;
        }
        let len = depth[d] - depth[a];
        let key = (len, x, y);
        if last_key.is_some_and(|k| k > key) {
            rep.push(
                Property::Transcript,
                format!("phase-two query {i} out of order"),
            );
        }
        last_key = Some(key);
        if q.answer {
            positives.push((a as u32, d as u32, len, e as u32));
        }
    }
    if queried.count_ones(..) != m {
        rep.push(
            Property::Transcript,
            format!("{} base edges never queried", m - queried.count_ones(..)),
        );
    }
    let recorded: Vec<_> = run
        .back_edges
        .iter()
        .map(|b| (b.ancestor, b.descendant, b.len, b.edge))
        .collect();
    if recorded != positives {
        rep.push(
            Property::Transcript,
            "back edges differ from positive phase-two answers".into(),
        );
    }
    rep.0
}

fn check_closed(
    g: &Graph,
    present: &FixedBitSet,
    finished: &[bool],
    tree: &[usize],
    rep: &mut Report,
) {
    if let Some(i) = finished.iter().position(|&f| !f) {
        rep.push(
            Property::ComponentClosed,
            format!("U empty but {} is not finished", tree[i]),
        );
    }
    let mut inside = FixedBitSet::with_capacity(g.n());
    for &v in tree {
        inside.insert(v);
    }
    for &v in tree {
        for (&w, &e) in g.neighbors(v).iter().zip(g.neighbor_edges(v)) {
            if present.contains(e as usize) && !inside.contains(w as usize) {
                rep.push(
                    Property::ComponentClosed,
                    format!("tree of {} misses G'-neighbour {w} of {v}", tree[0]),
                );
            }
        }
    }
}

fn euler_times(n: usize, parent: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let mut children = vec![Vec::new(); n];
    let mut roots = Vec::new();
    for (v, &p) in parent.iter().enumerate() {
        match p {
            NONE => roots.push(v),
            p => children[p as usize].push(v),
        }
    }
    let mut tin = vec![0u32; n];
    let mut tout = vec![0u32; n];
    let mut clock = 0u32;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for r in roots {
        tin[r] = clock;
        clock += 1;
        stack.push((r, 0));
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if let Some(&c) = children[v].get(*i) {
                *i += 1;
                tin[c] = clock;
                clock += 1;
                stack.push((c, 0));
            } else {
                tout[v] = clock;
                clock += 1;
                stack.pop();
            }
        }
    }
    (tin, tout)
}

use std::collections::VecDeque;

use super::Graph;

/// Length of a shortest cycle, with one witnessing cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Girth {
    /// `cycle` lists the vertices in order; the closing edge is implied.
    Finite {
        length: usize,
        cycle: Vec<usize>,
    },
    Infinite,
}

impl Girth {
    pub fn length(&self) -> Option<usize> {
        match self {
            Girth::Finite { length, .. } => Some(*length),
            Girth::Infinite => None,
        }
    }

    /// True when every cycle is longer than `g` (vacuously for forests).
    pub fn exceeds(&self, g: usize) -> bool {
        self.length().is_none_or(|len| len > g)
    }
}

impl Graph {
    /// Exact girth by breadth-first search from every vertex.
    pub fn girth(&self) -> Girth {
        let n = self.n();
        let mut best: Option<Vec<usize>> = None;
        let mut dist = vec![u32::MAX; n];
        let mut parent = vec![u32::MAX; n];
        let mut touched = Vec::new();
        let mut queue = VecDeque::new();

        for s in 0..n {
            if best.as_ref().is_some_and(|c| c.len() == 3) {
                break;
            }
            for &v in &touched {
                dist[v] = u32::MAX;
                parent[v] = u32::MAX;
            }
            touched.clear();
            queue.clear();
            dist[s] = 0;
            touched.push(s);
            queue.push_back(s);
            'bfs: while let Some(v) = queue.pop_front() {
                let bound = best.as_ref().map_or(usize::MAX, Vec::len);
                // Any cycle closed below v has length at least 2·dist(v).
                if 2 * dist[v] as usize >= bound {
                    break;
                }
                for &w in self.neighbors(v) {
                    let w = w as usize;
                    if dist[w] == u32::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v as u32;
                        touched.push(w);
                        queue.push_back(w);
                    } else if parent[v] != w as u32 && (w > v || dist[w] != dist[v]) {
                        let len = (dist[v] + dist[w]) as usize + 1;
                        if len < bound {
                            let cycle = close_cycle(&parent, &dist, v, w);
                            if best.as_ref().is_none_or(|b| cycle.len() < b.len()) {
                                best = Some(cycle);
                                if best.as_ref().unwrap().len() == 3 {
                                    break 'bfs;
                                }
                            }
                        }
                    }
                }
            }
        }
        match best {
            Some(cycle) => Girth::Finite {
                length: cycle.len(),
                cycle,
            },
            None => Girth::Infinite,
        }
    }
}

/// Cycle formed by the BFS-tree paths from `v` and `w` up to their lowest
/// common ancestor, plus the edge `{v, w}`.
fn close_cycle(parent: &[u32], dist: &[u32], v: usize, w: usize) -> Vec<usize> {
    let (mut a, mut b) = (v, w);
    let mut left = vec![a];
    let mut right = vec![b];
    while dist[a] > dist[b] {
        a = parent[a] as usize;
        left.push(a);
    }
    while dist[b] > dist[a] {
        b = parent[b] as usize;
        right.push(b);
    }
    while a != b {
        a = parent[a] as usize;
        b = parent[b] as usize;
        left.push(a);
        right.push(b);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    left
}

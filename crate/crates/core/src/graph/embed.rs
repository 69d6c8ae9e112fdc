//! Backtracking search for (not necessarily induced) copies of small patterns.

use super::{Graph, GraphError};

pub const MAX_PATTERN_VERTICES: usize = 10;

/// A copy of `patterns[pattern]` in the host: `mapping[i]` is the host vertex
/// playing pattern vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub pattern: usize,
    pub mapping: Vec<usize>,
}

impl Graph {
    /// Returns `Ok(None)` when no pattern occurs as a subgraph, otherwise
    /// the first embedding found.
    pub fn find_pattern(&self, patterns: &[Graph]) -> Result<Option<Embedding>, GraphError> {
        if let Some(p) = patterns.iter().find(|p| p.n() > MAX_PATTERN_VERTICES) {
            return Err(GraphError::PatternTooLarge(p.n()));
        }
        for (i, pattern) in patterns.iter().enumerate() {
            if let Some(mapping) = embed(pattern, self) {
                return Ok(Some(Embedding {
                    pattern: i,
                    mapping,
                }));
            }
        }
        Ok(None)
    }

    pub fn is_h_free(&self, patterns: &[Graph]) -> Result<bool, GraphError> {
        Ok(self.find_pattern(patterns)?.is_none())
    }
}

/// Pattern vertices ordered so each one (after the first of its component)
/// has an earlier neighbour, highest degree first.
fn search_order(pattern: &Graph) -> Vec<usize> {
    let k = pattern.n();
    let mut order = Vec::with_capacity(k);
    let mut placed = vec![false; k];
    while order.len() < k {
        let start = (0..k)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (pattern.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        placed[start] = true;
        order.push(start);
        loop {
            let next = (0..k)
                .filter(|&v| !placed[v])
                .filter(|&v| pattern.neighbors(v).iter().any(|&w| placed[w as usize]))
                .max_by_key(|&v| {
                    let back = pattern
                        .neighbors(v)
                        .iter()
                        .filter(|&&w| placed[w as usize])
                        .count();
                    (back, pattern.degree(v), std::cmp::Reverse(v))
                });
            match next {
                Some(v) => {
                    placed[v] = true;
                    order.push(v);
                }
                None => break,
            }
        }
    }
    order
}

fn embed(pattern: &Graph, host: &Graph) -> Option<Vec<usize>> {
    let k = pattern.n();
    if k == 0 {
        return Some(Vec::new());
    }
    if k > host.n() || pattern.m() > host.m() {
        return None;
    }
    let order = search_order(pattern);
    let mut image = vec![usize::MAX; k];
    let mut used = vec![false; host.n()];
    if extend(pattern, host, &order, 0, &mut image, &mut used) {
        Some(image)
    } else {
        None
    }
}

fn extend(
    pattern: &Graph,
    host: &Graph,
    order: &[usize],
    depth: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let pv = order[depth];
    let need = pattern.degree(pv);
    let anchor = pattern
        .neighbors(pv)
        .iter()
        .map(|&w| w as usize)
        .find(|&w| image[w] != usize::MAX);
    let candidates: Box<dyn Iterator<Item = usize> + '_> = match anchor {
        Some(a) => Box::new(host.neighbors(image[a]).iter().map(|&w| w as usize)),
        None => Box::new(0..host.n()),
    };
    for hv in candidates {
        if used[hv] || host.degree(hv) < need {
            continue;
        }
        let consistent = pattern
            .neighbors(pv)
            .iter()
            .map(|&w| image[w as usize])
            .all(|img| img == usize::MAX || host.has_edge(hv, img));
        if !consistent {
            continue;
        }
        image[pv] = hv;
        used[hv] = true;
        if extend(pattern, host, order, depth + 1, image, used) {
            return true;
        }
        image[pv] = usize::MAX;
        used[hv] = false;
    }
    false
}

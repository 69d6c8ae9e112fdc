//! Turán-number machinery: an exact brute-force `ex(n, H)` for tiny `n`,
//! explicit brackets for larger `n`, the derived `n_H(k)` bracket and length
//! budgets, plus the binomial tail bounds and the isolated-vertex root used
//! when sizing experiments.
//!
//! Bracket formulas carry configurable constants and only size experiments;
//! they are checked against the brute-force oracle where both are defined.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, MAX_PATTERN_VERTICES};

/// Largest order accepted by [`ex_bruteforce`].
pub const BRUTE_FORCE_MAX_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExtremalError {
    #[error("brute force supports n <= {BRUTE_FORCE_MAX_N}, got {0}")]
    TooLarge(usize),
    #[error("pattern {0} is not connected")]
    Disconnected(usize),
    #[error("pattern {0} is acyclic")]
    Acyclic(usize),
    #[error("girth family needs g >= 3, got {0}")]
    BadGirth(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A good family of forbidden subgraphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FamilyRepr", into = "FamilyRepr")]
pub enum TuranFamily {
    Empty,
    /// All cycles of length `3..=g`: H-free means girth `> g`.
    GirthGreater(usize),
    Explicit(Vec<Graph>),
}

impl TuranFamily {
    pub fn girth_greater(g: usize) -> Result<Self, ExtremalError> {
        if g < 3 {
            return Err(ExtremalError::BadGirth(g));
        }
        Ok(TuranFamily::GirthGreater(g))
    }

    /// Validates that every pattern is connected, contains a cycle and is
    /// small enough for the embedding search.
    pub fn explicit(patterns: Vec<Graph>) -> Result<Self, ExtremalError> {
        for (i, p) in patterns.iter().enumerate() {
            if p.n() > MAX_PATTERN_VERTICES {
                return Err(GraphError::PatternTooLarge(p.n()).into());
            }
            if !p.is_connected() {
                return Err(ExtremalError::Disconnected(i));
            }
            if p.excess() == 0 {
                return Err(ExtremalError::Acyclic(i));
            }
        }
        Ok(TuranFamily::Explicit(patterns))
    }

    /// Families of cycles: `C3` etc. Shorthand for tests and the CLI.
    pub fn cycles(lengths: &[usize]) -> Result<Self, ExtremalError> {
        Self::explicit(lengths.iter().map(|&l| Graph::cycle(l)).collect())
    }

    /// `Some(g)` when the family forbids exactly the cycles of length `3..=g`.
    pub fn girth_equivalent(&self) -> Option<usize> {
        match self {
            TuranFamily::Empty => None,
            TuranFamily::GirthGreater(g) => Some(*g),
            TuranFamily::Explicit(patterns) => {
                let mut lengths = Vec::with_capacity(patterns.len());
                for p in patterns {
                    let is_cycle = p.n() >= 3
                        && p.m() == p.n()
                        && p.is_connected()
                        && (0..p.n()).all(|v| p.degree(v) == 2);
                    if !is_cycle {
                        return None;
                    }
                    lengths.push(p.n());
                }
                lengths.sort_unstable();
                lengths.dedup();
                let contiguous = lengths.iter().enumerate().all(|(i, &l)| l == i + 3);
                (contiguous && !lengths.is_empty()).then(|| *lengths.last().unwrap())
            }
        }
    }

    fn has_bipartite_member(&self) -> bool {
        match self {
            TuranFamily::Empty => false,
            TuranFamily::GirthGreater(g) => *g >= 4,
            TuranFamily::Explicit(patterns) => patterns.iter().any(Graph::is_bipartite),
        }
    }

    /// Whether `g` contains no member of the family.
    pub fn admits(&self, g: &Graph) -> Result<bool, ExtremalError> {
        match self {
            TuranFamily::Empty => Ok(true),
            TuranFamily::GirthGreater(limit) => Ok(g.girth().exceeds(*limit)),
            TuranFamily::Explicit(patterns) => Ok(g.is_h_free(patterns)?),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyRepr {
    variant: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    g: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    patterns: Option<Vec<Vec<(usize, usize)>>>,
}

impl TryFrom<FamilyRepr> for TuranFamily {
    type Error = String;

    fn try_from(r: FamilyRepr) -> Result<Self, String> {
        match r.variant.as_str() {
            "empty" => Ok(TuranFamily::Empty),
            "girth_greater" => {
                let g = r.g.ok_or("girth_greater needs field g")?;
                TuranFamily::girth_greater(g).map_err(|e| e.to_string())
            }
            "explicit" => {
                let lists = r.patterns.ok_or("explicit needs field patterns")?;
                let mut graphs = Vec::with_capacity(lists.len());
                for edges in lists {
                    let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
                    graphs.push(Graph::new(n, &edges).map_err(|e| e.to_string())?);
                }
                TuranFamily::explicit(graphs).map_err(|e| e.to_string())
            }
            other => Err(format!("unknown family variant {other:?}")),
        }
    }
}

impl From<TuranFamily> for FamilyRepr {
    fn from(f: TuranFamily) -> Self {
        match f {
            TuranFamily::Empty => FamilyRepr {
                variant: "empty".into(),
                g: None,
                patterns: None,
            },
            TuranFamily::GirthGreater(g) => FamilyRepr {
                variant: "girth_greater".into(),
                g: Some(g),
                patterns: None,
            },
            TuranFamily::Explicit(ps) => FamilyRepr {
                variant: "explicit".into(),
                g: None,
                patterns: Some(ps.iter().map(|p| p.edges().collect()).collect()),
            },
        }
    }
}

fn saturate(x: u128) -> usize {
    x.min(usize::MAX as u128) as usize
}

// Scans can reach orders near 2^40, so products are taken in u128.
fn choose2(n: usize) -> usize {
    saturate(n as u128 * n.saturating_sub(1) as u128 / 2)
}

fn quarter_square(n: usize) -> usize {
    saturate(n as u128 * n as u128 / 4)
}

// ---------------------------------------------------------------------------
// Exact brute force

/// Host graph on at most 8 vertices as neighbour bitmasks.
type Adj = [u16; BRUTE_FORCE_MAX_N];

struct SmallPattern {
    k: usize,
    adj: Vec<u16>,
    edges: Vec<(usize, usize)>,
}

enum Closure {
    Never,
    /// Adding `{u, v}` is illegal when `v` is within this distance of `u`.
    Distance(usize),
    Patterns(Vec<SmallPattern>),
}

impl Closure {
    fn for_family(family: &TuranFamily) -> Self {
        if let Some(g) = family.girth_equivalent() {
            return Closure::Distance(g - 1);
        }
        match family {
            TuranFamily::Explicit(ps) => Closure::Patterns(
                ps.iter()
                    .map(|p| SmallPattern {
                        k: p.n(),
                        adj: (0..p.n())
                            .map(|v| p.neighbors(v).iter().fold(0u16, |m, &w| m | 1 << w))
                            .collect(),
                        edges: p.edges().collect(),
                    })
                    .collect(),
            ),
            _ => Closure::Never,
        }
    }

    /// Whether `adj`, which already contains `{u, v}`, has a forbidden
    /// copy through that edge.
    fn completes(&self, adj: &Adj, n: usize, u: usize, v: usize) -> bool {
        match self {
            Closure::Never => false,
            Closure::Distance(limit) => {
                let mut seen: u16 = 1 << u;
                let mut frontier: u16 = 1 << u;
                for _ in 0..*limit {
                    let mut next = 0u16;
                    for x in bits(frontier) {
                        let mut nb = adj[x];
                        if x == u {
                            nb &= !(1 << v);
                        }
                        next |= nb;
                    }
                    if next & (1 << v) != 0 {
                        return true;
                    }
                    next &= !seen;
                    seen |= next;
                    frontier = next;
                    if frontier == 0 {
                        break;
                    }
                }
                false
            }
            Closure::Patterns(ps) => ps.iter().any(|p| {
                p.k <= n
                    && p.edges.iter().any(|&(a, b)| {
                        [(a, b), (b, a)].into_iter().any(|(a, b)| {
                            let mut image = [usize::MAX; MAX_PATTERN_VERTICES];
                            image[a] = u;
                            image[b] = v;
                            place(p, adj, n, &mut image, (1 << u) | (1 << v))
                        })
                    })
            }),
        }
    }
}

fn bits(mut mask: u16) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

fn place(
    p: &SmallPattern,
    adj: &Adj,
    n: usize,
    image: &mut [usize; MAX_PATTERN_VERTICES],
    used: u16,
) -> bool {
    // Next unplaced pattern vertex with a placed neighbour; patterns are connected.
    let next = (0..p.k)
        .filter(|&x| image[x] == usize::MAX)
        .find(|&x| bits(p.adj[x]).any(|y| image[y] != usize::MAX));
    let Some(x) = next else {
        return true;
    };
    let mut cand: u16 = (1u16 << n) - 1;
    cand &= !used;
    for y in bits(p.adj[x]) {
        if image[y] != usize::MAX {
            cand &= adj[image[y]];
        }
    }
    for h in bits(cand) {
        image[x] = h;
        if place(p, adj, n, image, used | 1 << h) {
            return true;
        }
    }
    image[x] = usize::MAX;
    false
}

/// Exact `ex(n, H)`: maximum edge count over all labelled H-free graphs on
/// `n <= 8` vertices, by include/exclude search over pairs in canonical order
/// with a pattern-completion check and a counting bound.
pub fn ex_bruteforce(n: usize, family: &TuranFamily) -> Result<usize, ExtremalError> {
    if n > BRUTE_FORCE_MAX_N {
        return Err(ExtremalError::TooLarge(n));
    }
    let closure = Closure::for_family(family);
    if matches!(closure, Closure::Never) {
        return Ok(choose2(n));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut adj: Adj = [0; BRUTE_FORCE_MAX_N];
    let mut best = 0;
    search(&pairs, 0, 0, &mut adj, n, &closure, &mut best);
    Ok(best)
}

fn search(
    pairs: &[(usize, usize)],
    idx: usize,
    count: usize,
    adj: &mut Adj,
    n: usize,
    closure: &Closure,
    best: &mut usize,
) {
    if count + (pairs.len() - idx) <= *best {
        return;
    }
    if idx == pairs.len() {
        *best = count;
        return;
    }
    let (u, v) = pairs[idx];
    adj[u] |= 1 << v;
    adj[v] |= 1 << u;
    if !closure.completes(adj, n, u, v) {
        search(pairs, idx + 1, count + 1, adj, n, closure, best);
    }
    adj[u] &= !(1 << v);
    adj[v] &= !(1 << u);
    search(pairs, idx + 1, count, adj, n, closure, best);
}

// ---------------------------------------------------------------------------
// Brackets

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BracketConstants {
    pub c_up: f64,
    pub c_lo: f64,
}

impl Default for BracketConstants {
    fn default() -> Self {
        BracketConstants {
            c_up: 1.0,
            c_lo: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExBracket {
    pub n: usize,
    pub lower: usize,
    pub upper: usize,
    pub exact: Option<usize>,
}

impl ExBracket {
    fn exact(n: usize, value: usize) -> Self {
        ExBracket {
            n,
            lower: value,
            upper: value,
            exact: Some(value),
        }
    }

    pub fn contains(&self, value: usize) -> bool {
        (self.lower..=self.upper).contains(&value)
    }
}

pub fn ex_bracket(n: usize, family: &TuranFamily) -> ExBracket {
    ex_bracket_with(n, family, BracketConstants::default())
}

/// Bracket on `ex(n, H)`.
///
/// * empty family: `C(n, 2)` exactly;
/// * girth `> 3`: Mantel, `floor(n^2 / 4)` exactly;
/// * girth `> g >= 4`, `t = floor(g / 2)`: upper `c_up * (n^(1+1/t) + n) / 2`
///   (Moore bound), lower `c_lo * n^(1+1/(g-1)) / 4` (deletion method);
/// * explicit families: exact for `n <= 8`; above that, cycle families
///   `{C3..Cg}` use the girth bounds and others get `[floor(n^2/4), C(n,2)]`
///   when no pattern is bipartite and `[0, C(n,2)]` when one is.
pub fn ex_bracket_with(n: usize, family: &TuranFamily, consts: BracketConstants) -> ExBracket {
    let all = choose2(n);
    if matches!(family, TuranFamily::Explicit(_)) && n <= BRUTE_FORCE_MAX_N {
        return ExBracket::exact(
            n,
            ex_bruteforce(n, family).expect("n within brute-force range"),
        );
    }
    if let Some(g) = family.girth_equivalent() {
        if g == 3 {
            return ExBracket::exact(n, quarter_square(n));
        }
        let nf = n as f64;
        let t = (g / 2) as f64;
        let upper = ((consts.c_up * 0.5 * (nf.powf(1.0 + 1.0 / t) + nf)).floor() as usize).min(all);
        let lower = ((consts.c_lo * 0.25 * nf.powf(1.0 + 1.0 / (g as f64 - 1.0))).floor() as usize)
            .min(upper);
        return ExBracket {
            n,
            lower,
            upper,
            exact: None,
        };
    }
    match family {
        TuranFamily::Empty => ExBracket::exact(n, all),
        _ if n <= BRUTE_FORCE_MAX_N => ExBracket::exact(
            n,
            ex_bruteforce(n, family).expect("n within brute-force range"),
        ),
        _ => {
            let lower = if family.has_bipartite_member() {
                0
            } else {
                quarter_square(n)
            };
            ExBracket {
                n,
                lower,
                upper: all,
                exact: None,
            }
        }
    }
}

/// Memoised bracket lookups for the scans below; brute-force values are
/// expensive and requested repeatedly.
struct BracketTable<'a> {
    family: &'a TuranFamily,
    consts: BracketConstants,
    small: Vec<Option<ExBracket>>,
}

impl<'a> BracketTable<'a> {
    fn new(family: &'a TuranFamily, consts: BracketConstants) -> Self {
        BracketTable {
            family,
            consts,
            small: vec![None; BRUTE_FORCE_MAX_N + 1],
        }
    }

    fn get(&mut self, n: usize) -> ExBracket {
        if n <= BRUTE_FORCE_MAX_N {
            if let Some(b) = self.small[n] {
                return b;
            }
            let b = ex_bracket_with(n, self.family, self.consts);
            self.small[n] = Some(b);
            return b;
        }
        ex_bracket_with(n, self.family, self.consts)
    }

    /// Whether the lower bound is identically zero beyond brute-force range.
    fn lower_vanishes_for_large_n(&self) -> bool {
        self.family.girth_equivalent().is_none()
            && matches!(self.family, TuranFamily::Explicit(_))
            && self.family.has_bipartite_member()
    }
}

const SCAN_CAP: usize = 1 << 40;

/// Bracket `[lo, hi]` on `n_H(k)`: the least `n` with `n k <= 2 ex(n, H)`,
/// computed from the upper and lower `ex` bounds respectively. `hi` is
/// `None` when the lower bound certifies no such `n` below `2^40`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NhBracket {
    pub lo: usize,
    pub hi: Option<usize>,
}

pub fn n_h_bracket(k: f64, family: &TuranFamily) -> NhBracket {
    n_h_bracket_with(k, family, BracketConstants::default())
}

pub fn n_h_bracket_with(k: f64, family: &TuranFamily, consts: BracketConstants) -> NhBracket {
    assert!(k > 0.0, "n_h_bracket needs k > 0");
    let mut table = BracketTable::new(family, consts);
    let holds = |n: usize, bound: usize| n as f64 * k <= 2.0 * bound as f64;

    // n k <= n (n - 1) forces n >= k + 1.
    let floor_start = (k.ceil() as usize + 1).max(1);
    let (lo_hint, hi_hint) = match family.girth_equivalent() {
        Some(g) if g >= 4 => {
            let t = (g / 2) as f64;
            let a = 1.0 / (g as f64 - 1.0);
            // Below these orders the continuous bounds already fail.
            let up = ((k / consts.c_up - 1.0).max(0.0)).powf(t);
            let dn = (2.0 * k / consts.c_lo).powf(1.0 / a);
            (up, dn)
        }
        _ => (0.0, 0.0),
    };
    let start_at = |hint: f64| (hint.floor() as usize).saturating_sub(2).max(floor_start);

    // Exact small values of explicit families can succeed below the hints.
    let exact_small = matches!(family, TuranFamily::Explicit(_));
    let mut small = |bound: fn(&ExBracket) -> usize| {
        if exact_small {
            (floor_start..=BRUTE_FORCE_MAX_N).find(|&n| holds(n, bound(&table.get(n))))
        } else {
            None
        }
    };
    let lo_small = small(|b| b.upper);
    let hi_small = small(|b| b.lower);
    let lo = lo_small
        .or_else(|| first_from(start_at(lo_hint), |n| holds(n, table.get(n).upper)))
        .expect("C(n,2) bound is eventually met");
    let hi = if table.lower_vanishes_for_large_n() {
        hi_small
    } else {
        hi_small.or_else(|| first_from(start_at(hi_hint).max(lo), |n| holds(n, table.get(n).lower)))
    };
    NhBracket { lo, hi }
}

fn first_from(start: usize, mut pred: impl FnMut(usize) -> bool) -> Option<usize> {
    (start..SCAN_CAP).find(|&n| pred(n))
}

/// Largest `l` such that `pred` holds on all of `1..=l` (0 if it fails at 1),
/// or `None` if it never fails below the scan cap. Linear for small `l`,
/// then doubling plus bisection.
fn last_prefix_true(mut pred: impl FnMut(usize) -> bool) -> Option<usize> {
    const LINEAR: usize = 1 << 16;
    for l in 1..=LINEAR {
        if !pred(l) {
            return Some(l - 1);
        }
    }
    let mut good = LINEAR;
    let mut bad = loop {
        let probe = good.checked_mul(2).filter(|&p| p <= SCAN_CAP)?;
        if pred(probe) {
            good = probe;
        } else {
            break probe;
        }
    };
    while bad - good > 1 {
        let mid = good + (bad - good) / 2;
        if pred(mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    Some(good)
}

/// `(lo, hi)` lengths; `hi` is `None` when unbounded within the scan cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LengthBudget {
    pub lo: usize,
    pub hi: Option<usize>,
}

fn leq_rel(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + 1e-12 * rhs.abs()
}

/// Path-length budget: largest `l` with `ex(ceil(6 l / eps), H) / l <= k / 2`,
/// using the upper `ex` bound for `lo` and the lower bound for `hi`.
pub fn path_len_budget(
    k: usize,
    eps: f64,
    family: &TuranFamily,
) -> Result<LengthBudget, ExtremalError> {
    path_len_budget_with(k, eps, family, BracketConstants::default())
}

pub fn path_len_budget_with(
    k: usize,
    eps: f64,
    family: &TuranFamily,
    consts: BracketConstants,
) -> Result<LengthBudget, ExtremalError> {
    if k < 1 || !(eps > 0.0 && eps <= 1.0) {
        return Err(ExtremalError::Precondition(format!(
            "need k >= 1 and 0 < eps <= 1, got k={k}, eps={eps}"
        )));
    }
    let mut table = BracketTable::new(family, consts);
    let order = |l: usize| (6.0 * l as f64 / eps).ceil() as usize;
    let lo =
        last_prefix_true(|l| leq_rel(2.0 * table.get(order(l)).upper as f64, k as f64 * l as f64))
            .expect("C(n,2) bound eventually fails");
    let hi =
        last_prefix_true(|l| leq_rel(2.0 * table.get(order(l)).lower as f64, k as f64 * l as f64));
    Ok(LengthBudget { lo, hi })
}

/// Cycle-length budget: largest `l` with `ex(l, H) <= c k l / 20`.
pub fn cycle_len_budget(
    k: usize,
    c: f64,
    family: &TuranFamily,
) -> Result<LengthBudget, ExtremalError> {
    cycle_len_budget_with(k, c, family, BracketConstants::default())
}

pub fn cycle_len_budget_with(
    k: usize,
    c: f64,
    family: &TuranFamily,
    consts: BracketConstants,
) -> Result<LengthBudget, ExtremalError> {
    if c <= 0.0 || !c.is_finite() {
        return Err(ExtremalError::Precondition(format!("need c > 0, got {c}")));
    }
    let mut table = BracketTable::new(family, consts);
    let rhs = |l: usize| c * k as f64 * l as f64;
    let lo = last_prefix_true(|l| leq_rel(20.0 * table.get(l).upper as f64, rhs(l)))
        .expect("C(l,2) eventually fails");
    let hi = last_prefix_true(|l| leq_rel(20.0 * table.get(l).lower as f64, rhs(l)));
    Ok(LengthBudget { lo, hi })
}

// ---------------------------------------------------------------------------
// Analytic bounds

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailMode {
    /// `P(|X - np| > a) < 2 exp(-a^2 / (4 n p))`, for `0 < a <= np/2`.
    Chernoff(f64),
    /// `P(X > kappa n p) <= (e / kappa)^(kappa n p)`, for `kappa > 0`.
    Mult(f64),
}

/// Closed-form tail bound for `X ~ Bin(n, p)`.
pub fn binom_tail_bound(n: u64, p: f64, mode: TailMode) -> Result<f64, ExtremalError> {
    if !(0.0..=1.0).contains(&p) || n == 0 {
        return Err(ExtremalError::Precondition(format!(
            "need n >= 1 and p in [0,1], got n={n}, p={p}"
        )));
    }
    let mean = n as f64 * p;
    match mode {
        TailMode::Chernoff(a) => {
            if !(a > 0.0 && a <= mean / 2.0) {
                return Err(ExtremalError::Precondition(format!(
                    "Chernoff needs 0 < a <= np/2 = {}, got {a}",
                    mean / 2.0
                )));
            }
            Ok(2.0 * (-a * a / (4.0 * mean)).exp())
        }
        TailMode::Mult(kappa) => {
            if kappa.is_nan() || kappa <= 0.0 {
                return Err(ExtremalError::Precondition(format!(
                    "need kappa > 0, got {kappa}"
                )));
            }
            Ok((kappa * mean * (1.0 - kappa.ln())).exp())
        }
    }
}

/// Positive root of `c/2 - 1 + e^(-c) = 0` by bisection on `[1, 2]`.
pub fn solve_c0() -> f64 {
    let f = |c: f64| c / 2.0 - 1.0 + (-c).exp();
    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    debug_assert!(f(lo) < 0.0 && f(hi) > 0.0);
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c3() -> TuranFamily {
        TuranFamily::cycles(&[3]).unwrap()
    }

    #[test]
    fn family_validation() {
        assert!(matches!(
            TuranFamily::explicit(vec![Graph::path(4)]),
            Err(ExtremalError::Acyclic(0))
        ));
        let two_triangles = crate::generators::disjoint_copies(&Graph::cycle(3), 2);
        assert!(matches!(
            TuranFamily::explicit(vec![two_triangles]),
            Err(ExtremalError::Disconnected(0))
        ));
        assert!(TuranFamily::girth_greater(2).is_err());
        assert_eq!(
            TuranFamily::cycles(&[3, 4]).unwrap().girth_equivalent(),
            Some(4)
        );
        assert_eq!(TuranFamily::cycles(&[4]).unwrap().girth_equivalent(), None);
    }

    #[test]
    fn family_json() {
        let f: TuranFamily =
            serde_json::from_str(r#"{"variant":"explicit","patterns":[[[0,1],[1,2],[2,0]]]}"#)
                .unwrap();
        assert_eq!(f, c3());
        let g: TuranFamily = serde_json::from_str(r#"{"variant":"girth_greater","g":5}"#).unwrap();
        assert_eq!(g, TuranFamily::GirthGreater(5));
        assert_eq!(
            serde_json::to_string(&TuranFamily::Empty).unwrap(),
            r#"{"variant":"empty"}"#
        );
        assert!(
            serde_json::from_str::<TuranFamily>(r#"{"variant":"girth_greater","g":1}"#).is_err()
        );
    }

    #[test]
    fn brute_force_small_values() {
        assert_eq!(ex_bruteforce(5, &c3()).unwrap(), 6);
        assert_eq!(ex_bruteforce(3, &TuranFamily::Empty).unwrap(), 3);
        assert_eq!(
            ex_bruteforce(5, &TuranFamily::cycles(&[3, 4]).unwrap()).unwrap(),
            5
        );
        assert_eq!(ex_bruteforce(9, &c3()), Err(ExtremalError::TooLarge(9)));
        // Explicit {C4} runs through the pattern search: ex(5, C4) = 6.
        assert_eq!(
            ex_bruteforce(5, &TuranFamily::cycles(&[4]).unwrap()).unwrap(),
            6
        );
    }

    #[test]
    fn pattern_and_distance_closures_agree() {
        let via_patterns = TuranFamily::Explicit(vec![Graph::cycle(3), Graph::cycle(4)]);
        let via_girth = TuranFamily::GirthGreater(4);
        // Explicit normalises to the girth closure; force the pattern path.
        let closure = Closure::Patterns(
            [3, 4]
                .iter()
                .map(|&l| {
                    let p = Graph::cycle(l);
                    SmallPattern {
                        k: l,
                        adj: (0..l)
                            .map(|v| p.neighbors(v).iter().fold(0u16, |m, &w| m | 1 << w))
                            .collect(),
                        edges: p.edges().collect(),
                    }
                })
                .collect(),
        );
        for n in 2..=6 {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            let mut adj = [0u16; BRUTE_FORCE_MAX_N];
            let mut best = 0;
            search(&pairs, 0, 0, &mut adj, n, &closure, &mut best);
            assert_eq!(best, ex_bruteforce(n, &via_girth).unwrap());
            assert_eq!(best, ex_bruteforce(n, &via_patterns).unwrap());
        }
    }

    #[test]
    fn brackets() {
        assert_eq!(
            ex_bracket(100, &TuranFamily::Empty),
            ExBracket::exact(100, 4950)
        );
        assert_eq!(
            ex_bracket(7, &TuranFamily::GirthGreater(3)),
            ExBracket::exact(7, 12)
        );
        let b = ex_bracket(50, &TuranFamily::cycles(&[4]).unwrap());
        assert_eq!((b.lower, b.upper, b.exact), (0, 1225, None));
        let k4 = TuranFamily::explicit(vec![crate::generators::complete(4)]).unwrap();
        assert_eq!(ex_bracket(20, &k4).lower, 100);
    }

    #[test]
    fn n_h_examples() {
        for k in 1..30 {
            let b = n_h_bracket(k as f64, &TuranFamily::Empty);
            assert_eq!(
                b,
                NhBracket {
                    lo: k + 1,
                    hi: Some(k + 1)
                }
            );
        }
        assert_eq!(n_h_bracket(3.0, &c3()), NhBracket { lo: 6, hi: Some(6) });
        let k4 = TuranFamily::explicit(vec![crate::generators::complete(4)]).unwrap();
        for k in 1..40 {
            let b = n_h_bracket(k as f64, &k4);
            assert!(b.hi.unwrap() <= 2 * k);
            assert!(b.lo > k);
        }
        let c4 = TuranFamily::cycles(&[4]).unwrap();
        assert_eq!(n_h_bracket(20.0, &c4).hi, None);
    }

    #[test]
    fn path_budget_examples() {
        // 3(6l - 1) <= 1800 holds up to l = 100.
        let b = path_len_budget(3600, 1.0, &TuranFamily::Empty).unwrap();
        assert_eq!(
            b,
            LengthBudget {
                lo: 100,
                hi: Some(100)
            }
        );
        assert!(path_len_budget(10, 1.5, &TuranFamily::Empty).is_err());
        assert!(path_len_budget(0, 0.5, &TuranFamily::Empty).is_err());
    }

    #[test]
    fn cycle_budget_empty_family() {
        for k in [10usize, 37, 100, 1000] {
            for c in [0.5, 1.0, 2.0, 3.0] {
                let b = cycle_len_budget(k, c, &TuranFamily::Empty).unwrap();
                assert_eq!(
                    b.lo,
                    (c * k as f64 / 10.0).floor() as usize + 1,
                    "k={k} c={c}"
                );
                assert_eq!(b.hi, Some(b.lo));
            }
        }
        assert!(cycle_len_budget(10, 0.0, &TuranFamily::Empty).is_err());
    }

    #[test]
    fn tail_bound_values() {
        let b = binom_tail_bound(100, 0.5, TailMode::Chernoff(10.0)).unwrap();
        assert!((b - 2.0 * (-0.5f64).exp()).abs() < 1e-12);
        assert!((b - 1.2131).abs() < 1e-4);
        let m = binom_tail_bound(100, 0.1, TailMode::Mult(3.0)).unwrap();
        assert!((m - (30.0 * (1.0 - 3f64.ln())).exp()).abs() < 1e-14);
        assert!((m - 0.0519).abs() < 1e-4);
        assert!(binom_tail_bound(100, 0.5, TailMode::Chernoff(26.0)).is_err());
        assert!(binom_tail_bound(100, 0.5, TailMode::Chernoff(0.0)).is_err());
        assert!(binom_tail_bound(100, 0.5, TailMode::Mult(-1.0)).is_err());
    }

    #[test]
    fn c0_root() {
        let c = solve_c0();
        assert!(c > 1.59 && c < 1.60);
        assert!((c / 2.0 - 1.0 + (-c).exp()).abs() <= 1e-9);
    }
}

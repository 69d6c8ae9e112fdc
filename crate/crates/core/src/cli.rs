use std::collections::BTreeMap;
use std::fs;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use percolab::dfs;
use percolab::extremal::{ex_bracket, TuranFamily};
use percolab::generators::GenSpec;
use percolab::graph::io::{read_edge_list, to_edge_list_string};
use percolab::harness::{self, Structure};
use percolab::percolation::sample;
use percolab::verify;
use percolab::Graph;

/// Bad arguments: reported with exit code 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(String);

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(UsageError(msg.into()).into())
}

#[derive(Parser)]
#[command(
    name = "percolab",
    version,
    about = "Depth-first exploration of p-random subgraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a base graph and write it as an edge list.
    Gen(GenArgs),
    /// Sample a p-random subgraph of a graph.
    Percolate(PercolateArgs),
    /// Run the two-phase exploration on one sample and report its statistics.
    Dfs(DfsArgs),
    /// Print ex(n, H) brackets as CSV.
    Extremal(ExtremalArgs),
    /// Estimate the probability of a long path, long cycle or large component.
    Prob(ProbArgs),
    /// Sweep p over a grid with shared trial seeds and write CSV.
    Sweep(SweepArgs),
    /// Run the self-check suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Source {
    /// Edge-list file.
    #[arg(long, conflicts_with = "gen")]
    input: Option<PathBuf>,
    /// Generator shorthand: complete:N, bipartite:A:B, regular:N:K, ppinc:Q.
    #[arg(long)]
    gen: Option<String>,
}

impl Source {
    fn load(&self, seed: u64) -> Result<Graph> {
        match (&self.input, &self.gen) {
            (Some(path), _) => {
                let file =
                    fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
                Ok(read_edge_list(BufReader::new(file))
                    .with_context(|| format!("reading {}", path.display()))?)
            }
            (None, Some(text)) => {
                let spec = match GenSpec::from_shorthand(text, seed) {
                    Ok(s) => s,
                    Err(e) => return usage(e.to_string()),
                };
                Ok(spec.generate()?)
            }
            (None, None) => usage("one of --input or --gen is required"),
        }
    }
}

#[derive(Args)]
struct GenArgs {
    /// JSON generator spec, inline or a path to a file.
    #[arg(long, conflicts_with = "gen")]
    spec: Option<String>,
    #[arg(long)]
    gen: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PercolateArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge-list output; the sidecar goes to the same path with `.json` appended.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct DfsArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    p: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Lengths for the count of long unqueried pairs.
    #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2, 4, 8, 16, 32])]
    ell: Vec<usize>,
    /// Include the answer sequence as a bit string.
    #[arg(long)]
    trace: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExtremalArgs {
    /// empty, girth:G (girth > G), cycles:3,4, or a JSON family (inline or file).
    #[arg(long)]
    family: String,
    /// Orders as A:B (inclusive) or a comma list.
    #[arg(long)]
    n: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum Kind {
    Path,
    Cycle,
    Component,
}

#[derive(Args)]
struct ProbArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum)]
    kind: Kind,
    /// Target length for path and cycle.
    #[arg(long)]
    len: Option<usize>,
    /// Number, comma list, or auto(c) for c divided by the minimum degree.
    #[arg(long)]
    p: String,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    vertex: usize,
    /// Component size threshold.
    #[arg(long)]
    size: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    source: Source,
    /// A:B:COUNT (evenly spaced, inclusive) or a comma list; auto(c) allowed in lists.
    #[arg(long)]
    p: String,
    /// Cycle length counted in frac_cycle_ge_lstar; defaults to max(3, min degree / 10).
    #[arg(long)]
    lstar: Option<usize>,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    quick: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Parses argv and runs the command. Returns the process exit code.
pub fn run_command<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                2
            } else {
                1
            }
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Gen(a) => gen(a),
        Command::Percolate(a) => percolate(a),
        Command::Dfs(a) => dfs_cmd(a),
        Command::Extremal(a) => extremal(a),
        Command::Prob(a) => prob(a),
        Command::Sweep(a) => sweep(a),
        Command::Verify(a) => verify_cmd(a),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Inline JSON if the text starts with `{`, otherwise a file path.
fn json_arg(text: &str) -> Result<String> {
    if text.trim_start().starts_with('{') {
        Ok(text.to_string())
    } else {
        fs::read_to_string(text).with_context(|| format!("reading {text}"))
    }
}

fn parse_f64(text: &str) -> Result<f64> {
    match text.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => usage(format!("not a number: {text:?}")),
    }
}

/// A probability: a number or `auto(c)` meaning `c / min_degree`.
fn parse_p(text: &str, g: &Graph) -> Result<f64> {
    let t = text.trim();
    let p = if let Some(inner) = t.strip_prefix("auto(").and_then(|r| r.strip_suffix(')')) {
        let c = parse_f64(inner)?;
        let k = g.min_degree();
        if k == 0 {
            return usage("auto(c) needs a graph with minimum degree at least 1");
        }
        c / k as f64
    } else {
        parse_f64(t)?
    };
    if !(0.0..=1.0).contains(&p) {
        return usage(format!("probability {p} outside [0, 1]"));
    }
    Ok(p)
}

fn parse_grid(text: &str, g: &Graph) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() == 3 {
        let (a, b) = (parse_p(parts[0], g)?, parse_p(parts[1], g)?);
        let count: usize = match parts[2].trim().parse() {
            Ok(c) if c >= 1 => c,
            _ => return usage(format!("bad grid count {:?}", parts[2])),
        };
        if count == 1 {
            return Ok(vec![a]);
        }
        return Ok((0..count)
            .map(|i| a + (b - a) * i as f64 / (count - 1) as f64)
            .collect());
    }
    text.split(',').map(|s| parse_p(s, g)).collect()
}

fn gen(a: GenArgs) -> Result<i32> {
    let spec = match (&a.spec, &a.gen) {
        (Some(s), _) => match serde_json::from_str::<GenSpec>(&json_arg(s)?) {
            Ok(spec) => spec,
            Err(e) => return usage(format!("bad generator spec: {e}")),
        },
        (None, Some(text)) => match GenSpec::from_shorthand(text, a.seed) {
            Ok(spec) => spec,
            Err(e) => return usage(e.to_string()),
        },
        (None, None) => return usage("one of --spec or --gen is required"),
    };
    let g = spec.generate()?;
    emit(a.out.as_deref(), &to_edge_list_string(&g))?;
    Ok(0)
}

fn percolate(a: PercolateArgs) -> Result<i32> {
    let g = a.source.load(a.seed)?;
    if !(0.0..=1.0).contains(&a.p) {
        return usage(format!("probability {} outside [0, 1]", a.p));
    }
    let s = sample(&g, a.p, a.seed)?;
    emit(Some(&a.out), &to_edge_list_string(&s.materialize()))?;
    let mut sidecar = a.out.clone().into_os_string();
    sidecar.push(".json");
    let meta = json!({ "p": a.p, "seed": a.seed, "kept_count": s.kept_count() });
    emit(Some(Path::new(&sidecar)), &to_json(&meta)?)?;
    Ok(0)
}

#[derive(Serialize)]
struct DfsReport {
    p: f64,
    seed: u64,
    #[serde(rename = "max_U")]
    max_u: usize,
    certified_cycle_len: usize,
    excess: usize,
    #[serde(rename = "Q")]
    q: usize,
    #[serde(rename = "P")]
    p_count: usize,
    phase1_positive: usize,
    phase2_positive: usize,
    long_unqueried: BTreeMap<usize, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<String>,
}

fn dfs_cmd(a: DfsArgs) -> Result<i32> {
    let g = a.source.load(a.seed)?;
    let p = parse_p(&a.p, &g)?;
    if a.ell.contains(&0) {
        return usage("--ell values must be at least 1");
    }
    let s = sample(&g, p, a.seed)?;
    let run = dfs::run(&g, &s)?;
    let report = DfsReport {
        p,
        seed: a.seed,
        max_u: run.max_u,
        certified_cycle_len: run.cycle_len(),
        excess: run.phase2_positive(),
        q: run.phase1_queries,
        p_count: run.phase1_positive,
        phase1_positive: run.phase1_positive,
        phase2_positive: run.phase2_positive(),
        long_unqueried: a
            .ell
            .iter()
            .map(|&l| (l, run.long_unqueried_count(l)))
            .collect(),
        trace: a.trace.then(|| run.trace().to_bit_string()),
    };
    emit(a.out.as_deref(), &to_json(&report)?)?;
    Ok(0)
}

fn parse_family(text: &str) -> Result<TuranFamily> {
    let t = text.trim();
    let fam = if t == "empty" {
        Ok(TuranFamily::Empty)
    } else if let Some(g) = t.strip_prefix("girth:") {
        match g.parse() {
            Ok(g) => TuranFamily::girth_greater(g),
            Err(_) => return usage(format!("bad girth in {t:?}")),
        }
    } else if let Some(list) = t.strip_prefix("cycles:") {
        let lens: Result<Vec<usize>, _> = list.split(',').map(|s| s.trim().parse()).collect();
        match lens {
            Ok(l) if l.iter().all(|&x| x >= 3) && !l.is_empty() => TuranFamily::cycles(&l),
            _ => return usage(format!("bad cycle lengths in {t:?}")),
        }
    } else {
        match serde_json::from_str::<TuranFamily>(&json_arg(t)?) {
            Ok(f) => Ok(f),
            Err(e) => return usage(format!("bad family: {e}")),
        }
    };
    match fam {
        Ok(f) => Ok(f),
        Err(e) => usage(e.to_string()),
    }
}

fn parse_orders(text: &str) -> Result<Vec<usize>> {
    let bad = || usage(format!("bad --n {text:?}"));
    if let Some((a, b)) = text.split_once(':') {
        match (a.trim().parse::<usize>(), b.trim().parse::<usize>()) {
            (Ok(a), Ok(b)) if a <= b => Ok((a..=b).collect()),
            _ => bad(),
        }
    } else {
        match text.split(',').map(|s| s.trim().parse()).collect() {
            Ok(v) => Ok(v),
            Err(_) => bad(),
        }
    }
}

fn extremal(a: ExtremalArgs) -> Result<i32> {
    let fam = parse_family(&a.family)?;
    let mut csv = String::from("n,lower,exact,upper\n");
    for n in parse_orders(&a.n)? {
        let b = ex_bracket(n, &fam);
        let exact = b.exact.map(|e| e.to_string()).unwrap_or_default();
        csv.push_str(&format!("{},{},{},{}\n", b.n, b.lower, exact, b.upper));
    }
    emit(a.out.as_deref(), &csv)?;
    Ok(0)
}

fn graph_summary(g: &Graph) -> serde_json::Value {
    json!({
        "n": g.n(),
        "m": g.m(),
        "min_deg": g.min_degree(),
        "girth": g.girth().length(),
    })
}

fn prob(a: ProbArgs) -> Result<i32> {
    let g = a.source.load(a.seed)?;
    if a.trials == 0 {
        return usage("--trials must be at least 1");
    }
    let ps: Vec<f64> =
        a.p.split(',')
            .map(|s| parse_p(s, &g))
            .collect::<Result<_>>()?;
    let mut results = Vec::with_capacity(ps.len());
    for &p in &ps {
        let est = match a.kind {
            Kind::Path | Kind::Cycle => {
                let len = match a.len {
                    Some(l) if l >= 1 => l,
                    _ => return usage("--len >= 1 is required for path and cycle"),
                };
                let kind = if matches!(a.kind, Kind::Path) {
                    Structure::Path(len)
                } else {
                    Structure::Cycle(len)
                };
                harness::structure_prob(&g, p, kind, a.trials, a.seed)?
            }
            Kind::Component => {
                let Some(size) = a.size else {
                    return usage("--size is required for component");
                };
                if a.vertex >= g.n() {
                    return usage(format!(
                        "--vertex {} out of range for n = {}",
                        a.vertex,
                        g.n()
                    ));
                }
                harness::component_prob(&g, p, a.vertex, size, a.trials, a.seed)?
            }
        };
        results.push(json!({ "p": p, "estimate": est }));
    }
    let report = json!({
        "spec": {
            "kind": a.kind,
            "len": a.len,
            "size": a.size,
            "vertex": a.vertex,
            "p": a.p,
            "trials": a.trials,
            "source": a.source.gen.clone().or_else(|| a.source.input.as_ref().map(|p| p.display().to_string())),
        },
        "graph": graph_summary(&g),
        "results": results,
        "seed": a.seed,
        "version": env!("CARGO_PKG_VERSION"),
    });
    emit(a.out.as_deref(), &to_json(&report)?)?;
    Ok(0)
}

fn sweep(a: SweepArgs) -> Result<i32> {
    let g = a.source.load(a.seed)?;
    if a.trials == 0 {
        return usage("--trials must be at least 1");
    }
    let grid = parse_grid(&a.p, &g)?;
    if grid.windows(2).any(|w| w[0] > w[1]) {
        return usage("probability grid must be ascending");
    }
    let lstar = a.lstar.unwrap_or_else(|| (g.min_degree() / 10).max(3));
    let result = harness::sweep(&g, &grid, lstar, a.trials, a.seed)?;
    emit(a.out.as_deref(), &result.to_csv())?;
    Ok(0)
}

fn verify_cmd(a: VerifyArgs) -> Result<i32> {
    let outcomes = verify::run_suite(a.quick, a.seed);
    let mut ok = true;
    for o in &outcomes {
        let status = if o.passed() { "ok" } else { "FAILED" };
        println!("{:<18} {:>5} cases  {status}", o.name, o.cases);
        for f in o.failures.iter().take(5) {
            println!("    {f}");
        }
        ok &= o.passed();
    }
    Ok(if ok { 0 } else { 1 })
}

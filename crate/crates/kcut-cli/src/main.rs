//! Command-line front end for the minimum k-cut solvers.
//!
//! Three subcommands:
//!
//! * `solve` — run one algorithm on one instance file and emit a report.
//! * `gen-corpus` — write a deterministic corpus of instance files with a
//!   manifest of brute-force oracle values.
//! * `bench` — run algorithms across a corpus and report values, ratios to
//!   the oracle, and timings.
//!
//! Instance files use a plain text format: a header line `n m`, then `m`
//! lines `u v w` with 0-based vertex ids and positive integer weights.
//! Blank lines and lines starting with `#` are ignored.
//!
//! Reports are self-verifying: the value field is recomputed from the
//! labels before printing. Seeds are mixed per (instance, algorithm,
//! repetition) with the library's seed-mixing function, so corpus order
//! never changes an individual result; instances are therefore processed
//! sequentially in manifest order without loss of determinism.
//!
//! Exit codes: 0 on success, 2 on any input parse error, 3 when a solver
//! rejects its preconditions (for example k out of range).

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use kcut::corpus::{connected_unit_graphs, random_connected};
use kcut::oracle::{
    brute_force_k_cut, clique_reduction, contraction_k_cut, split_two_approx, SimpleGraph,
    BRUTE_FORCE_MAX_N,
};
use kcut::solver::{
    deterministic_min_kcut, ptas_min_kcut, randomized_min_kcut, DeterministicConfig, PtasConfig,
    RandomizedConfig,
};
use kcut::{cut_weight, mix_seed, KCutSolution, Weight, WeightedGraph};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

const EXIT_PARSE: i32 = 2;
const EXIT_PRECONDITION: i32 = 3;

#[derive(Parser)]
#[command(name = "kcut", version, about = "Minimum k-cut solvers and benchmarks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve one instance file with one algorithm.
    Solve(SolveArgs),
    /// Generate a corpus of instances plus a manifest of oracle values.
    GenCorpus(GenCorpusArgs),
    /// Run algorithms across a generated corpus and compare to the oracle.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    /// Exhaustive search over partitions (small n only).
    Brute,
    /// Repeated randomized edge contraction.
    KargerStein,
    /// Repeated minimum-split 2-approximation.
    Sv2,
    /// Tree packing + sampling + refinement + exact per-tree solve.
    Randomized,
    /// Tree packing + grouped-component search, no randomness.
    Deterministic,
    /// Tree packing + (1+eps) dynamic-program tower.
    Ptas,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::Brute => "brute",
            Algo::KargerStein => "karger-stein",
            Algo::Sv2 => "sv2",
            Algo::Randomized => "randomized",
            Algo::Deterministic => "deterministic",
            Algo::Ptas => "ptas",
        }
    }

    fn parse_name(s: &str) -> anyhow::Result<Algo> {
        match s {
            "brute" => Ok(Algo::Brute),
            "karger-stein" => Ok(Algo::KargerStein),
            "sv2" => Ok(Algo::Sv2),
            "randomized" => Ok(Algo::Randomized),
            "deterministic" => Ok(Algo::Deterministic),
            "ptas" => Ok(Algo::Ptas),
            other => Err(anyhow!("unknown algorithm {other:?}")),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file in the text format (header "n m", then "u v w" lines).
    #[arg(long)]
    input: PathBuf,
    /// Number of parts.
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum)]
    algorithm: Algo,
    /// Target ratio for ptas; warned about and ignored elsewhere.
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Candidate trees sampled from the packing (randomized, ptas).
    #[arg(long)]
    trees: Option<usize>,
    /// Refinement steps per sampled tree (randomized, ptas).
    #[arg(long)]
    refine_budget: Option<usize>,
    /// Guessing rounds per dynamic-program state (ptas).
    #[arg(long)]
    guess_rounds: Option<usize>,
    /// Contraction trials (karger-stein).
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct GenCorpusArgs {
    /// Output directory (created if missing).
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Enumerate all connected unit-weight graphs up to this size (max 6).
    #[arg(long, default_value_t = 5)]
    unit_max_n: usize,
    /// Number of random weighted instances.
    #[arg(long, default_value_t = 20)]
    random_count: usize,
    /// Largest random instance (max 10).
    #[arg(long, default_value_t = 9)]
    random_max_n: usize,
    /// Largest base graph for clique-reduction instances (max 7).
    #[arg(long, default_value_t = 5)]
    clique_max_n: usize,
}

#[derive(Args)]
struct BenchArgs {
    /// Corpus directory produced by gen-corpus.
    #[arg(long)]
    corpus: PathBuf,
    /// Comma-separated algorithms to compare.
    #[arg(long, default_value = "deterministic,randomized,sv2")]
    algorithms: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Repeated runs per (instance, algorithm) for the randomized solvers.
    #[arg(long, default_value_t = 1)]
    repetitions: usize,
    /// Target ratio used when ptas is among the algorithms.
    #[arg(long, default_value_t = 0.5)]
    epsilon: f64,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
}

/// A solver run record. Field order is the stable output schema.
#[derive(Serialize)]
struct Report {
    instance: String,
    n: usize,
    m: usize,
    k: usize,
    algorithm: String,
    seed: Option<u64>,
    value: Weight,
    labels: Vec<usize>,
    ms: u128,
    params: serde_json::Value,
}

impl Report {
    fn tsv_header() -> &'static str {
        "instance\tn\tm\tk\talgorithm\tseed\tvalue\tlabels\tms\tparams"
    }

    fn tsv_row(&self) -> String {
        let seed = self.seed.map_or_else(|| "-".to_string(), |s| s.to_string());
        let labels: Vec<String> = self.labels.iter().map(|l| l.to_string()).collect();
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.instance,
            self.n,
            self.m,
            self.k,
            self.algorithm,
            seed,
            self.value,
            labels.join(","),
            self.ms,
            self.params
        )
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Solve(args) => cmd_solve(&args),
        Cmd::GenCorpus(args) => cmd_gen_corpus(&args),
        Cmd::Bench(args) => cmd_bench(&args),
    };
    match code {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(e.exit_code());
        }
    }
}

/// An error tagged with the exit code it should produce.
#[derive(Debug)]
struct CliError {
    code: i32,
    source: anyhow::Error,
}

impl CliError {
    fn parse(source: anyhow::Error) -> CliError {
        CliError { code: EXIT_PARSE, source }
    }

    fn precondition(source: anyhow::Error) -> CliError {
        CliError { code: EXIT_PRECONDITION, source }
    }

    fn exit_code(&self) -> i32 {
        self.code
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.source)
    }
}

type CliResult = Result<(), CliError>;

/// Parses the text instance format, reporting the offending line number on
/// malformed input and rejecting disconnected graphs.
fn parse_instance(path: &Path) -> anyhow::Result<WeightedGraph> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize, Weight)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let lineno = idx + 1;
        let fields: Vec<&str> = line.split_whitespace().collect();
        match header {
            None => {
                if fields.len() != 2 {
                    bail!("line {lineno}: expected header \"n m\", got {line:?}");
                }
                let n: usize = fields[0]
                    .parse()
                    .with_context(|| format!("line {lineno}: bad vertex count"))?;
                let m: usize = fields[1]
                    .parse()
                    .with_context(|| format!("line {lineno}: bad edge count"))?;
                header = Some((n, m));
            }
            Some((_, m)) => {
                if edges.len() == m {
                    bail!("line {lineno}: more than the declared {m} edges");
                }
                if fields.len() != 3 {
                    bail!("line {lineno}: expected \"u v w\", got {line:?}");
                }
                let u: usize = fields[0]
                    .parse()
                    .with_context(|| format!("line {lineno}: bad endpoint"))?;
                let v: usize = fields[1]
                    .parse()
                    .with_context(|| format!("line {lineno}: bad endpoint"))?;
                let w: Weight = fields[2]
                    .parse()
                    .with_context(|| format!("line {lineno}: bad weight"))?;
                if w <= 0 {
                    bail!("line {lineno}: weight must be positive");
                }
                if u == v {
                    bail!("line {lineno}: self-loop at vertex {u}");
                }
                let n = header.expect("header parsed before edges").0;
                if u >= n || v >= n {
                    bail!("line {lineno}: vertex id out of range (n = {n})");
                }
                edges.push((u, v, w));
            }
        }
    }
    let (n, m) = header.ok_or_else(|| anyhow!("{}: empty instance", path.display()))?;
    if edges.len() != m {
        bail!("{}: declared {m} edges, found {}", path.display(), edges.len());
    }
    let g = kcut::build_graph(n, &edges)
        .map_err(|e| anyhow!("{}: {e}", path.display()))?;
    // Solvers pack spanning trees, so connectivity is a parse-stage
    // requirement here.
    let mut seen = vec![false; g.n()];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &(v, _) in g.adj(u) {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    if !seen.iter().all(|&s| s) {
        bail!("{}: graph is disconnected", path.display());
    }
    Ok(g)
}

/// Runs one algorithm, echoing the parameters that influenced the run.
fn run_algorithm(
    g: &WeightedGraph,
    k: usize,
    algo: Algo,
    seed: u64,
    epsilon: f64,
    trees: Option<usize>,
    refine_budget: Option<usize>,
    guess_rounds: Option<usize>,
    trials: Option<usize>,
) -> kcut::Result<(KCutSolution, serde_json::Value)> {
    let mut params = serde_json::Map::new();
    let sol = match algo {
        Algo::Brute => brute_force_k_cut(g, k)?,
        Algo::KargerStein => {
            let t = trials.unwrap_or_else(|| (g.n() * g.n()).max(64));
            params.insert("trials".into(), t.into());
            contraction_k_cut(g, k, seed, t)?
        }
        Algo::Sv2 => split_two_approx(g, k)?,
        Algo::Randomized => {
            let mut cfg = RandomizedConfig::new(seed);
            cfg.trees = trees;
            if let Some(b) = refine_budget {
                cfg.chain_len = b;
                cfg.chains = 1;
            }
            params.insert("chain_len".into(), cfg.chain_len.into());
            params.insert("chains".into(), cfg.chains.into());
            if let Some(t) = trees {
                params.insert("trees".into(), t.into());
            }
            randomized_min_kcut(g, k, &cfg)?
        }
        Algo::Deterministic => deterministic_min_kcut(g, k, &DeterministicConfig::default())?,
        Algo::Ptas => {
            let mut cfg = PtasConfig::new(epsilon, seed);
            cfg.trees = trees;
            if let Some(b) = refine_budget {
                cfg.chain_len = b;
                cfg.chains = 1;
            }
            if let Some(r) = guess_rounds {
                cfg.approx.guess_rounds = r;
            }
            params.insert("epsilon".into(), epsilon.into());
            params.insert("guess_rounds".into(), cfg.approx.guess_rounds.into());
            ptas_min_kcut(g, k, &cfg)?
        }
    };
    Ok((sol, serde_json::Value::Object(params)))
}

fn make_report(
    instance: &str,
    g: &WeightedGraph,
    k: usize,
    algo: Algo,
    sol: &KCutSolution,
    ms: u128,
    params: serde_json::Value,
) -> Report {
    // Reports are self-verifying: recompute the value from the labels.
    let recomputed = cut_weight(g, &sol.partition);
    assert_eq!(
        recomputed, sol.value,
        "internal error: reported value does not match its own labels"
    );
    Report {
        instance: instance.to_string(),
        n: g.n(),
        m: g.m(),
        k,
        algorithm: algo.name().to_string(),
        seed: sol.seed,
        value: sol.value,
        labels: sol.partition.labels().to_vec(),
        ms,
        params,
    }
}

fn print_report(report: &Report, format: Format) {
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string(report).expect("reports serialize"))
        }
        Format::Tsv => {
            println!("{}", Report::tsv_header());
            println!("{}", report.tsv_row());
        }
    }
}

fn cmd_solve(args: &SolveArgs) -> CliResult {
    if args.epsilon.is_some() && args.algorithm != Algo::Ptas {
        eprintln!(
            "warning: --epsilon only affects the ptas algorithm; ignored for {}",
            args.algorithm.name()
        );
    }
    let g = parse_instance(&args.input).map_err(CliError::parse)?;
    let start = Instant::now();
    let (sol, params) = run_algorithm(
        &g,
        args.k,
        args.algorithm,
        args.seed,
        args.epsilon.unwrap_or(0.5),
        args.trees,
        args.refine_budget,
        args.guess_rounds,
        args.trials,
    )
    .map_err(|e| CliError::precondition(anyhow!("{e}")))?;
    let ms = start.elapsed().as_millis();
    let name = args
        .input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| args.input.display().to_string());
    let report = make_report(&name, &g, args.k, args.algorithm, &sol, ms, params);
    print_report(&report, args.format);
    Ok(())
}

/// One corpus instance in the manifest.
#[derive(Serialize, serde::Deserialize)]
struct ManifestEntry {
    file: String,
    family: String,
    n: usize,
    m: usize,
    /// Brute-force minimum k-cut values keyed by k (as a string, for JSON).
    oracle: std::collections::BTreeMap<String, Weight>,
}

#[derive(Serialize, serde::Deserialize)]
struct Manifest {
    seed: u64,
    instances: Vec<ManifestEntry>,
}

fn write_instance(dir: &Path, name: &str, family: &str, g: &WeightedGraph) -> anyhow::Result<String> {
    let file = format!("{name}.graph");
    let mut text = String::new();
    let _ = writeln!(text, "# family: {family}");
    let _ = writeln!(text, "{} {}", g.n(), g.m());
    for &(u, v, w) in g.edges() {
        let _ = writeln!(text, "{u} {v} {w}");
    }
    std::fs::write(dir.join(&file), text)?;
    Ok(file)
}

fn oracle_values(g: &WeightedGraph) -> std::collections::BTreeMap<String, Weight> {
    let mut out = std::collections::BTreeMap::new();
    if g.n() > BRUTE_FORCE_MAX_N {
        return out;
    }
    for k in 2..=4usize.min(g.n()) {
        let sol = brute_force_k_cut(g, k).expect("corpus instances fit the brute-force cap");
        out.insert(k.to_string(), sol.value);
    }
    out
}

fn cmd_gen_corpus(args: &GenCorpusArgs) -> CliResult {
    gen_corpus(args).map_err(CliError::parse)
}

fn gen_corpus(args: &GenCorpusArgs) -> anyhow::Result<()> {
    if args.unit_max_n > 6 {
        bail!("--unit-max-n is capped at 6 (enumeration cost)");
    }
    if args.random_max_n > 10 {
        bail!("--random-max-n is capped at 10 (oracle cost)");
    }
    if args.clique_max_n > 7 {
        bail!("--clique-max-n is capped at 7 (reduction size)");
    }
    std::fs::create_dir_all(&args.out)
        .with_context(|| format!("cannot create {}", args.out.display()))?;
    let mut entries: Vec<ManifestEntry> = Vec::new();
    let push = |file: String, family: &str, g: &WeightedGraph, entries: &mut Vec<ManifestEntry>| {
        entries.push(ManifestEntry {
            file,
            family: family.to_string(),
            n: g.n(),
            m: g.m(),
            oracle: oracle_values(g),
        });
    };

    // Family 1: all connected unit-weight graphs up to isomorphism.
    for n in 2..=args.unit_max_n {
        for (i, g) in connected_unit_graphs(n).iter().enumerate() {
            let file = write_instance(&args.out, &format!("unit_n{n}_{i:03}"), "unit", g)?;
            push(file, "unit", g, &mut entries);
        }
    }

    // Family 2: random weighted graphs, weights 1..=5.
    for i in 0..args.random_count {
        let salt = mix_seed(args.seed, 0x5000 + i as u64);
        let n = 4 + (salt % (args.random_max_n.saturating_sub(3)) as u64) as usize;
        let extras = (n / 2) + (salt >> 32) as usize % (n / 2 + 1);
        let g = random_connected(salt, n, extras, 5)
            .map_err(|e| anyhow!("random instance {i}: {e}"))?;
        let file = write_instance(&args.out, &format!("random_{i:03}"), "random", &g)?;
        push(file, "random", &g, &mut entries);
    }

    // Family 3: clique reductions. The k-clique question on a simple graph
    // becomes a minimum (k+1)-cut instance with an apex vertex.
    for n in 3..=args.clique_max_n {
        for (i, density) in [4u64, 2, 1].iter().enumerate() {
            let salt = mix_seed(args.seed, 0xc11e + (n as u64) << 8 | i as u64);
            let mut edges: Vec<(usize, usize)> = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    // density/5 chance per pair, seeded and deterministic.
                    if mix_seed(salt, (u * n + v) as u64) % 5 < *density {
                        edges.push((u, v));
                    }
                }
            }
            let h = SimpleGraph { n, edges };
            let k = 3.min(n);
            let g = clique_reduction(&h, k).map_err(|e| anyhow!("clique instance: {e}"))?;
            let file = write_instance(
                &args.out,
                &format!("clique_n{n}_d{density}_{i}"),
                "clique",
                &g,
            )?;
            push(file, "clique", &g, &mut entries);
        }
    }

    let manifest = Manifest { seed: args.seed, instances: entries };
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    std::fs::write(args.out.join("manifest.json"), json)?;
    println!(
        "wrote {} instances and manifest.json to {}",
        manifest.instances.len(),
        args.out.display()
    );
    Ok(())
}

/// One bench result row. Field order is the stable output schema.
#[derive(Serialize)]
struct BenchRow {
    instance: String,
    algorithm: String,
    k: usize,
    value: Weight,
    oracle: Weight,
    ratio: f64,
    ms: u128,
    ok: bool,
}

fn cmd_bench(args: &BenchArgs) -> CliResult {
    bench(args).map_err(CliError::parse)
}

fn bench(args: &BenchArgs) -> anyhow::Result<()> {
    let algos: Vec<Algo> = args
        .algorithms
        .split(',')
        .map(|s| Algo::parse_name(s.trim()))
        .collect::<anyhow::Result<_>>()?;
    let manifest_path = args.corpus.join("manifest.json");
    let text = std::fs::read_to_string(&manifest_path)
        .with_context(|| format!("cannot read {}", manifest_path.display()))?;
    let manifest: Manifest = serde_json::from_str(&text)
        .with_context(|| format!("bad manifest {}", manifest_path.display()))?;
    let mut rows: Vec<BenchRow> = Vec::new();
    let mut failures: std::collections::BTreeMap<String, usize> =
        std::collections::BTreeMap::new();
    for entry in &manifest.instances {
        let g = parse_instance(&args.corpus.join(&entry.file))?;
        // Re-verify the stored oracle values on load.
        for (k_str, &stored) in &entry.oracle {
            let k: usize = k_str.parse().context("bad oracle key")?;
            let fresh = brute_force_k_cut(&g, k)
                .map_err(|e| anyhow!("{}: oracle recheck: {e}", entry.file))?;
            if fresh.value != stored {
                bail!(
                    "{}: manifest oracle for k={k} is {stored}, brute force says {}",
                    entry.file,
                    fresh.value
                );
            }
        }
        for (ai, &algo) in algos.iter().enumerate() {
            for (k_str, &oracle) in &entry.oracle {
                let k: usize = k_str.parse().context("bad oracle key")?;
                for rep in 0..args.repetitions.max(1) {
                    // Stable per-(instance, algorithm, repetition) seed.
                    let mut seed = mix_seed(args.seed, ai as u64);
                    for byte in entry.file.bytes() {
                        seed = mix_seed(seed, byte as u64);
                    }
                    seed = mix_seed(seed, rep as u64);
                    let start = Instant::now();
                    let (sol, _) = run_algorithm(
                        &g, k, algo, seed, args.epsilon, None, None, None, None,
                    )
                    .map_err(|e| anyhow!("{} ({}): {e}", entry.file, algo.name()))?;
                    let ms = start.elapsed().as_millis();
                    let verified = cut_weight(&g, &sol.partition) == sol.value
                        && sol.partition.k() == k
                        && sol.value >= oracle;
                    let exact = matches!(
                        algo,
                        Algo::Brute | Algo::Randomized | Algo::Deterministic | Algo::KargerStein
                    );
                    let ok = verified && (!exact || sol.value == oracle);
                    if !ok {
                        *failures.entry(algo.name().to_string()).or_insert(0) += 1;
                    }
                    rows.push(BenchRow {
                        instance: entry.file.clone(),
                        algorithm: algo.name().to_string(),
                        k,
                        value: sol.value,
                        oracle,
                        ratio: sol.value as f64 / oracle.max(1) as f64,
                        ms,
                        ok,
                    });
                }
            }
        }
    }
    match args.format {
        Format::Json => {
            let summary: Vec<serde_json::Value> = algos
                .iter()
                .map(|a| {
                    serde_json::json!({
                        "algorithm": a.name(),
                        "rows": rows.iter().filter(|r| r.algorithm == a.name()).count(),
                        "failures": failures.get(a.name()).copied().unwrap_or(0),
                    })
                })
                .collect();
            let doc = serde_json::json!({ "rows": rows, "summary": summary });
            println!("{}", serde_json::to_string_pretty(&doc).expect("rows serialize"));
        }
        Format::Tsv => {
            println!("instance\talgorithm\tk\tvalue\toracle\tratio\tms\tok");
            for r in &rows {
                println!(
                    "{}\t{}\t{}\t{}\t{}\t{:.4}\t{}\t{}",
                    r.instance, r.algorithm, r.k, r.value, r.oracle, r.ratio, r.ms, r.ok
                );
            }
            for a in &algos {
                let count = rows.iter().filter(|r| r.algorithm == a.name()).count();
                let fails = failures.get(a.name()).copied().unwrap_or(0);
                eprintln!("# {}: {} runs, {} failures", a.name(), count, fails);
            }
        }
    }
    Ok(())
}

//! Command-line front end: analyze, regularize, verify, distance, generate.
//!
//! Exit codes: 0 success, 1 negative verdict from `verify`, 2 parse or I/O
//! error, 3 vertex-count hypothesis failure, 4 bound violation, 5 procedure
//! error.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use sha2::{Digest, Sha256};
use thiserror::Error;

use regdecomp::deg3::regularize_maxdeg3;
use regdecomp::general::{
    hypothesis_check, regularize, GeneralError, HypothesisReport, LevelCost, RegularizeOptions,
};
use regdecomp::generators::{
    figure_family, hypothesis_instance, random_regular, union_plus_perturbation, GeneratorError,
};
use regdecomp::graph::io::{
    parse_edge_list, parse_script, write_edge_list, write_script, ParseError,
};
use regdecomp::graph::ScriptError;
use regdecomp::metric::{exact_distance, DistanceOptions, MetricError, DEFAULT_BUDGET};
use regdecomp::{
    apply_script, certify_regular_union, separation_vertices, EditScript, Graph,
    RegularityCertificate,
};

/// Largest order for which `verify --exact` runs the permutation search.
pub const EXACT_VERIFY_MAX_N: usize = 10;

#[derive(Debug, Parser)]
#[command(
    name = "regdecomp",
    version,
    about = "Edit graphs into unions of regular graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree statistics, separation vertices and the vertex-count hypothesis
    Analyze(AnalyzeArgs),
    /// Compute an edit script that makes every component regular
    Regularize(RegularizeArgs),
    /// Replay a script and certify the result
    Verify(VerifyArgs),
    /// Exact permutation distance between two graphs
    Distance(DistanceArgs),
    /// Write a generated instance as an edge list
    Generate(GenerateArgs),
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub graph: PathBuf,
    /// Also write the report here
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RegularizeArgs {
    pub graph: PathBuf,
    /// Run even if the vertex-count hypothesis fails; no bound is claimed
    #[arg(long)]
    pub best_effort: bool,
    /// Use the maximum-degree-3 procedure directly
    #[arg(long)]
    pub max_deg3_only: bool,
    /// Recorded in the manifest; the procedures are deterministic
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Edit script output [default: <input stem>.script]
    #[arg(long)]
    pub script: Option<PathBuf>,
    /// Final graph output [default: <input stem>.final.txt]
    #[arg(long = "final")]
    pub final_graph: Option<PathBuf>,
    /// Manifest output [default: <input stem>.manifest]
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub graph: PathBuf,
    pub script: PathBuf,
    /// Compare the script cost against the exact distance (small graphs only)
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Args)]
pub struct DistanceArgs {
    pub a: PathBuf,
    pub b: PathBuf,
    /// Node expansions before giving up on optimality
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Pad the smaller graph with isolated vertices
    #[arg(long)]
    pub pad: bool,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// A figure family id, `regular`, `perturbed` or `hypothesis`
    pub family: String,
    /// Family size parameter for figure families
    #[arg(long)]
    pub size: Option<usize>,
    /// Vertex count for `regular`; size parameter for figure families
    #[arg(long)]
    pub n: Option<usize>,
    /// Degree for `regular`
    #[arg(long)]
    pub d: Option<usize>,
    /// Regular blocks as `n:d,n:d,...` for `perturbed` and `hypothesis`
    #[arg(long)]
    pub components: Option<String>,
    /// Number of modifications for `perturbed` and `hypothesis`
    #[arg(long, default_value_t = 0)]
    pub k: usize,
    /// Maximum degree for `hypothesis`
    #[arg(long)]
    pub delta: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file [default: stdout]
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: ParseError,
    },
    #[error("replay failed at {0}")]
    Replay(#[from] ScriptError),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error("{0}")]
    Usage(String),
    #[error("vertex-count hypothesis fails (use --best-effort to run anyway)\n{0}")]
    Hypothesis(HypothesisReport),
    #[error("script has {cost} ops, above the claimed bound {bound}")]
    BoundViolated { cost: usize, bound: u128 },
    #[error("{phase}: {message}")]
    Procedure {
        phase: &'static str,
        message: String,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. }
            | CliError::Parse { .. }
            | CliError::Replay(_)
            | CliError::Metric(_)
            | CliError::Generator(_)
            | CliError::Usage(_) => 2,
            CliError::Hypothesis(_) => 3,
            CliError::BoundViolated { .. } => 4,
            CliError::Procedure { .. } => 5,
        }
    }
}

impl From<GeneralError> for CliError {
    fn from(e: GeneralError) -> Self {
        match e {
            GeneralError::HypothesisFailed(r) => CliError::Hypothesis(r),
            GeneralError::Deg3(e) => CliError::Procedure {
                phase: "deg3",
                message: e.to_string(),
            },
            e => CliError::Procedure {
                phase: "general",
                message: e.to_string(),
            },
        }
    }
}

/// Flat `key=value` record of one `regularize` run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunManifest {
    pub command: String,
    pub input: PathBuf,
    pub input_sha256: String,
    pub parameters: BTreeMap<String, String>,
    pub outputs: Vec<PathBuf>,
    /// Claimed bound (`None` when void) and achieved cost.
    pub bound_report: Option<(Option<u128>, usize)>,
    pub certificate: String,
}

impl RunManifest {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "command={}", self.command).unwrap();
        writeln!(s, "input={}", self.input.display()).unwrap();
        writeln!(s, "input_sha256={}", self.input_sha256).unwrap();
        for (k, v) in &self.parameters {
            writeln!(s, "param.{k}={v}").unwrap();
        }
        for (i, p) in self.outputs.iter().enumerate() {
            writeln!(s, "output.{i}={}", p.display()).unwrap();
        }
        if let Some((bound, cost)) = self.bound_report {
            match bound {
                Some(b) => writeln!(s, "claimed_bound={b}").unwrap(),
                None => writeln!(s, "claimed_bound=void").unwrap(),
            }
            writeln!(s, "achieved_cost={cost}").unwrap();
        }
        writeln!(s, "certificate={}", self.certificate).unwrap();
        s
    }

    /// Parses [`RunManifest::to_text`] output back into key-value pairs.
    pub fn parse(text: &str) -> BTreeMap<String, String> {
        text.lines()
            .filter_map(|l| l.split_once('='))
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect()
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .fold(String::with_capacity(64), |mut s, b| {
            write!(s, "{b:02x}").unwrap();
            s
        })
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_graph(path: &Path) -> Result<(Graph, String), CliError> {
    let text = read(path)?;
    let g = parse_edge_list(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })?;
    Ok((g, text))
}

fn read_script(path: &Path) -> Result<EditScript, CliError> {
    parse_script(&read(path)?).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io_err = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(contents.as_bytes()).map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

fn w(out: &mut dyn Write, s: &str) -> Result<(), CliError> {
    out.write_all(s.as_bytes()).map_err(|source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

fn describe_certificate(c: &RegularityCertificate) -> String {
    match c {
        RegularityCertificate::Regular(comps) => {
            let degrees: Vec<String> = comps.iter().map(|c| c.degree.to_string()).collect();
            format!(
                "regular ({} components, degrees {})",
                comps.len(),
                degrees.join(" ")
            )
        }
        RegularityCertificate::Irregular(e) => {
            format!("irregular (edge {e} joins unequal degrees)")
        }
    }
}

/// Runs one command, writing human-readable output to `out`. Returns the
/// process exit code on success paths.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    match cli.command {
        Command::Analyze(a) => analyze(a, out),
        Command::Regularize(a) => cmd_regularize(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Distance(a) => distance(a, out),
        Command::Generate(a) => generate(a, out),
    }
}

pub fn analyze_report(g: &Graph) -> String {
    let report = separation_vertices(g);
    let hyp = hypothesis_check(g);
    let mut s = String::new();
    writeln!(s, "n = {}", g.n()).unwrap();
    writeln!(s, "m = {}", g.m()).unwrap();
    writeln!(s, "Δ = {}", report.max_degree).unwrap();
    let hist: Vec<String> = report
        .degree_histogram
        .iter()
        .map(|(d, c)| format!("{d}:{c}"))
        .collect();
    writeln!(s, "degrees = {}", hist.join(" ")).unwrap();
    writeln!(s, "k = {}", report.k).unwrap();
    let seps: Vec<String> = report
        .separation_set
        .iter()
        .map(|v| v.to_string())
        .collect();
    writeln!(s, "separation vertices = {}", seps.join(" ")).unwrap();
    let verdict = if hyp.passes() { "pass" } else { "fail" };
    writeln!(s, "hypothesis = {verdict}").unwrap();
    for r in &hyp.rows {
        let mark = if r.passes() { "ok" } else { "short" };
        writeln!(
            s,
            "  degree {}: have {}, need {} ({mark})",
            r.degree, r.actual, r.required
        )
        .unwrap();
    }
    s
}

fn analyze(a: AnalyzeArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let (g, _) = read_graph(&a.graph)?;
    let report = analyze_report(&g);
    if let Some(p) = &a.out {
        write_atomic(p, &report)?;
    }
    w(out, &report)?;
    Ok(0)
}

fn sibling(input: &Path, suffix: &str) -> PathBuf {
    let stem = input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "graph".into());
    input.with_file_name(format!("{stem}{suffix}"))
}

struct Solved {
    script: EditScript,
    final_graph: Graph,
    certificate: RegularityCertificate,
    bound: Option<u128>,
    levels: Vec<LevelCost>,
}

fn solve(g: &Graph, a: &RegularizeArgs) -> Result<Solved, CliError> {
    if a.max_deg3_only {
        let o = regularize_maxdeg3(g).map_err(|e| CliError::Procedure {
            phase: "deg3",
            message: e.to_string(),
        })?;
        return Ok(Solved {
            script: o.script,
            final_graph: o.final_graph,
            certificate: o.certificate,
            bound: Some(o.claimed_bound as u128),
            levels: Vec::new(),
        });
    }
    let o = regularize(
        g,
        RegularizeOptions {
            best_effort: a.best_effort,
        },
    )?;
    Ok(Solved {
        script: o.script,
        final_graph: o.final_graph,
        certificate: o.certificate,
        bound: o.claimed_bound,
        levels: o.per_level_costs,
    })
}

fn cmd_regularize(a: RegularizeArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let (g, text) = read_graph(&a.graph)?;
    let solved = solve(&g, &a)?;
    let script_path = a
        .script
        .clone()
        .unwrap_or_else(|| sibling(&a.graph, ".script"));
    let final_path = a
        .final_graph
        .clone()
        .unwrap_or_else(|| sibling(&a.graph, ".final.txt"));
    let manifest_path = a
        .manifest
        .clone()
        .unwrap_or_else(|| sibling(&a.graph, ".manifest"));
    write_atomic(&script_path, &write_script(&solved.script))?;
    write_atomic(&final_path, &write_edge_list(&solved.final_graph))?;

    let cost = solved.script.len();
    let manifest = RunManifest {
        command: "regularize".into(),
        input: a.graph.clone(),
        input_sha256: sha256_hex(text.as_bytes()),
        parameters: BTreeMap::from([
            ("best_effort".into(), a.best_effort.to_string()),
            ("max_deg3_only".into(), a.max_deg3_only.to_string()),
            ("seed".into(), a.seed.to_string()),
        ]),
        outputs: vec![script_path.clone(), final_path.clone()],
        bound_report: Some((solved.bound, cost)),
        certificate: if solved.certificate.is_regular() {
            "regular".into()
        } else {
            "irregular".into()
        },
    };
    write_atomic(&manifest_path, &manifest.to_text())?;

    let mut s = String::new();
    writeln!(s, "ops = {cost}").unwrap();
    match solved.bound {
        Some(b) => writeln!(s, "bound = {b}").unwrap(),
        None => writeln!(s, "bound = void (hypothesis fails)").unwrap(),
    }
    for (i, l) in solved.levels.iter().enumerate() {
        writeln!(
            s,
            "level {i}: Δ = {}, k = {} (allowance {}), ops = {}, level bound = {}",
            l.delta, l.k_measured, l.k_recursion, l.ops, l.bound
        )
        .unwrap();
    }
    writeln!(
        s,
        "certificate = {}",
        describe_certificate(&solved.certificate)
    )
    .unwrap();
    writeln!(s, "script = {}", script_path.display()).unwrap();
    writeln!(s, "final = {}", final_path.display()).unwrap();
    writeln!(s, "manifest = {}", manifest_path.display()).unwrap();
    w(out, &s)?;

    if let Some(bound) = solved.bound {
        if cost as u128 > bound {
            return Err(CliError::BoundViolated { cost, bound });
        }
    }
    if !solved.certificate.is_regular() {
        return Err(CliError::Procedure {
            phase: "certify",
            message: describe_certificate(&solved.certificate),
        });
    }
    Ok(0)
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let (g, _) = read_graph(&a.graph)?;
    let script = read_script(&a.script)?;
    let h = apply_script(&g, &script)?;
    let cert = certify_regular_union(&h);
    let mut s = String::new();
    writeln!(s, "cost = {}", script.len()).unwrap();
    writeln!(s, "certificate = {}", describe_certificate(&cert)).unwrap();
    if a.exact {
        if g.n() <= EXACT_VERIFY_MAX_N {
            let d = exact_distance(&g, &h, DistanceOptions::default())?;
            let rel = if d.distance <= script.len() {
                "≤"
            } else {
                ">"
            };
            writeln!(
                s,
                "oracle distance = {} ({}), distance {rel} cost",
                d.distance,
                if d.exact { "exact" } else { "upper bound" }
            )
            .unwrap();
        } else {
            writeln!(
                s,
                "oracle skipped: n = {} exceeds {EXACT_VERIFY_MAX_N}",
                g.n()
            )
            .unwrap();
        }
    }
    w(out, &s)?;
    Ok(if cert.is_regular() { 0 } else { 1 })
}

fn distance(a: DistanceArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let (g, _) = read_graph(&a.a)?;
    let (h, _) = read_graph(&a.b)?;
    let d = exact_distance(
        &g,
        &h,
        DistanceOptions {
            budget: a.budget,
            pad: a.pad,
        },
    )?;
    let witness: Vec<String> = d.witness.iter().map(|v| v.to_string()).collect();
    let mut s = String::new();
    writeln!(s, "distance = {}", d.distance).unwrap();
    writeln!(s, "exact = {}", d.exact).unwrap();
    writeln!(s, "witness = {}", witness.join(" ")).unwrap();
    writeln!(s, "expansions = {}", d.expansions).unwrap();
    w(out, &s)?;
    Ok(0)
}

fn parse_components(list: &str) -> Result<Vec<(usize, usize)>, CliError> {
    list.split(',')
        .map(|part| {
            let (n, d) = part
                .split_once(':')
                .ok_or_else(|| CliError::Usage(format!("bad component {part:?}, expected n:d")))?;
            let num = |x: &str| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| CliError::Usage(format!("bad component {part:?}, expected n:d")))
            };
            Ok((num(n)?, num(d)?))
        })
        .collect()
}

fn required<T>(v: Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("family {family} needs --{flag}")))
}

pub fn generate_graph(a: &GenerateArgs) -> Result<Graph, CliError> {
    match a.family.as_str() {
        "regular" => Ok(random_regular(
            required(a.n, "n", "regular")?,
            required(a.d, "d", "regular")?,
            a.seed,
        )?),
        "perturbed" => {
            let comps =
                parse_components(&required(a.components.clone(), "components", "perturbed")?)?;
            Ok(union_plus_perturbation(&comps, a.k, a.seed)?.graph)
        }
        "hypothesis" => {
            let comps =
                parse_components(&required(a.components.clone(), "components", "hypothesis")?)?;
            let delta = required(a.delta, "delta", "hypothesis")?;
            Ok(hypothesis_instance(&comps, a.k, a.seed, delta)?.graph)
        }
        id => Ok(figure_family(id, a.size.or(a.n))?),
    }
}

fn generate(a: GenerateArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let text = write_edge_list(&generate_graph(&a)?);
    match &a.out {
        Some(p) => write_atomic(p, &text)?,
        None => w(out, &text)?,
    }
    Ok(0)
}

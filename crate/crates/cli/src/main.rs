//! distspec: distance spectral radius of graphs whose complements are sparse.
//!
//! Every command emits a schema-versioned JSON report whose header carries
//! the fully resolved run configuration; two runs with the same configuration
//! produce byte-identical output except for the header's timestamp field.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Mutex;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use distspec_core::enumerate::{
    edge_switch_counterexample, verify_exhaustive, verify_structured, AuditRow, AuditSink,
    Verdict, VerifyOpts,
};
use distspec_core::extremal::{build_extremal_graph, ExtremalSpec};
use distspec_core::graph::{parse_graph, parse_graph6, serialize_graph6, Graph};
use distspec_core::phipsi::{
    compare_rho, phi_cycle, phi_path, phi_path_increment, psi, psi_graph, rho_via_secular,
    theta_from_lambda, ComplementConfig, PsiRoute, SecularOpts,
};
use distspec_core::spectral::{distance_spectral_radius, Method, SolveOpts, SpectralResult};
use distspec_core::tolerances::{
    DEFAULT_CAP, DEFAULT_WALK_DEPTH, EIGEN_TOL, SECULAR_TOL, TIE_TOLERANCE,
};
use distspec_core::walks::{psi_via_neumann, verify_large_s, walk_counts, walk_dominance_check};
use distspec_core::{Error, Result};

const ENV_HELP: &str = "\
Environment overrides (flags take precedence over these, these over defaults):
  DISTSPEC_FORMAT       json | plain | csv
  DISTSPEC_THREADS      worker threads, 0 = one per core
  DISTSPEC_SEED         seed echoed into the report header
  DISTSPEC_TOL_SECULAR  secular root tolerance      [1e-12]
  DISTSPEC_TOL_EIGEN    eigensolver tolerance       [1e-12]
  DISTSPEC_TIE_TOL      rho tie tolerance           [1e-9]
  DISTSPEC_CAP          enumeration refusal cap     [1e8]
  DISTSPEC_DEPTH        walk-profile depth          [20]

Exit codes: 0 success (and verdict unique-balanced-paths for verify),
1 I/O or parse, 2 contract violation, 3 convergence failure,
4 verification verdict violation.";

#[derive(Parser)]
#[command(
    name = "distspec",
    version,
    about = "Distance spectral radius through sparse complements",
    after_help = ENV_HELP
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Args)]
struct GlobalArgs {
    /// Output format (json carries the full report).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads for the sweeps; 0 means one per core.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed echoed into the header for reproducible pipelines.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Secular root tolerance.
    #[arg(long, global = true)]
    tol_secular: Option<f64>,
    /// Eigensolver tolerance.
    #[arg(long, global = true)]
    tol_eigen: Option<f64>,
    /// Absolute rho distance treated as a tie.
    #[arg(long, global = true)]
    tie_tol: Option<f64>,
    /// Candidate-count cap above which enumeration refuses to start.
    #[arg(long, global = true)]
    cap: Option<f64>,
    /// Walk-profile truncation depth.
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Append CSV audit rows (config,rho,method,residual) to this file.
    #[arg(long, global = true)]
    audit_csv: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Plain,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Distance spectral radius of a connected graph.
    Rho(RhoArgs),
    /// Closed-form Phi of a single path or cycle component.
    Phi(PhiArgs),
    /// Psi of a complement: closed forms for a config, dense solve for a graph.
    Psi(PsiArgs),
    /// The extremal construction for m edges: parameters, partition, graph.
    Extremal(ExtremalArgs),
    /// Run a verification sweep and report the minimizers.
    Verify(VerifyArgs),
    /// Walk counts of a graph, with optional Neumann sum and dominance check.
    Walks(WalksArgs),
    /// Order two configurations by rho via the comparison principle.
    Compare(CompareArgs),
    /// The n = 11 edge-switch counterexample, recomputed on both routes.
    Counterexample,
}

/// A graph given as a file (edge list or graph6, sniffed), inline graph6, or
/// as the complement of a cycles-and-paths configuration.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphInput {
    /// Path to an edge-list or graph6 file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Inline graph6 string.
    #[arg(long)]
    g6: Option<String>,
    /// Complement description like "C3+P4+P4"; the graph is its complement.
    #[arg(long)]
    config: Option<String>,
}

/// A sparse graph given directly: file, inline graph6, or a cycles-and-paths
/// configuration realized as written (no complementing).
#[derive(Args)]
#[group(required = true, multiple = false)]
struct SparseInput {
    /// Path to an edge-list or graph6 file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Inline graph6 string.
    #[arg(long)]
    g6: Option<String>,
    /// Configuration like "C3+P4+P4", realized as the graph itself.
    #[arg(long)]
    config: Option<String>,
}

#[derive(Args)]
struct RhoArgs {
    #[command(flatten)]
    input: GraphInput,
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    method: MethodArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Eigen,
    Secular,
    Both,
}

#[derive(Args)]
struct PhiArgs {
    #[arg(long, value_enum)]
    kind: PhiKind,
    /// Component size: path vertex count (>= 1) or cycle length (>= 3).
    #[arg(long)]
    size: usize,
    #[arg(long)]
    lambda: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum PhiKind {
    Path,
    Cycle,
}

#[derive(Args)]
struct PsiArgs {
    #[command(flatten)]
    input: SparseInput,
    #[arg(long)]
    lambda: f64,
}

#[derive(Args)]
struct ExtremalArgs {
    /// Edge count of the target graph class, m >= 3.
    #[arg(long)]
    m: u64,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Vertex count (structured and large-s modes).
    #[arg(long)]
    n: Option<usize>,
    /// Missing-degree parameter (structured and large-s modes).
    #[arg(long)]
    s: Option<usize>,
    /// Edge count (exhaustive mode).
    #[arg(long)]
    m: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Structured,
    Exhaustive,
    LargeS,
}

#[derive(Args)]
struct WalksArgs {
    #[command(flatten)]
    input: SparseInput,
    /// Also evaluate the truncated Neumann sum for Psi at this lambda.
    #[arg(long)]
    lambda: Option<f64>,
    /// Also run the walk-dominance check against the s-matching extremal.
    #[arg(long)]
    s: Option<usize>,
}

#[derive(Args)]
struct CompareArgs {
    /// First configuration, e.g. "P5+P6".
    #[arg(long)]
    a: String,
    /// Second configuration, e.g. "C3+P4+P4".
    #[arg(long)]
    b: String,
}

/// Fully resolved knobs: flag > environment > default.
#[derive(serde::Serialize)]
struct Resolved {
    format: Format,
    threads: usize,
    seed: u64,
    tol_secular: f64,
    tol_eigen: f64,
    tie_tol: f64,
    cap: f64,
    depth: usize,
    audit_csv: Option<String>,
}

fn env_override<T: FromStr>(name: &str) -> Result<Option<T>> {
    match std::env::var(name) {
        Ok(raw) => raw
            .trim()
            .parse::<T>()
            .map(Some)
            .map_err(|_| Error::Domain(format!("environment {name}={raw:?} did not parse"))),
        Err(_) => Ok(None),
    }
}

fn resolve(global: &GlobalArgs) -> Result<Resolved> {
    let format = match global.format {
        Some(f) => f,
        None => match std::env::var("DISTSPEC_FORMAT").ok().as_deref() {
            None => Format::Json,
            Some("json") => Format::Json,
            Some("plain") => Format::Plain,
            Some("csv") => Format::Csv,
            Some(other) => {
                return Err(Error::Domain(format!(
                    "DISTSPEC_FORMAT={other:?} is not json|plain|csv"
                )))
            }
        },
    };
    Ok(Resolved {
        format,
        threads: match global.threads {
            Some(t) => t,
            None => env_override("DISTSPEC_THREADS")?.unwrap_or(0),
        },
        seed: match global.seed {
            Some(s) => s,
            None => env_override("DISTSPEC_SEED")?.unwrap_or(0),
        },
        tol_secular: match global.tol_secular {
            Some(t) => t,
            None => env_override("DISTSPEC_TOL_SECULAR")?.unwrap_or(SECULAR_TOL),
        },
        tol_eigen: match global.tol_eigen {
            Some(t) => t,
            None => env_override("DISTSPEC_TOL_EIGEN")?.unwrap_or(EIGEN_TOL),
        },
        tie_tol: match global.tie_tol {
            Some(t) => t,
            None => env_override("DISTSPEC_TIE_TOL")?.unwrap_or(TIE_TOLERANCE),
        },
        cap: match global.cap {
            Some(c) => c,
            None => env_override("DISTSPEC_CAP")?.unwrap_or(DEFAULT_CAP),
        },
        depth: match global.depth {
            Some(d) => d,
            None => env_override("DISTSPEC_DEPTH")?.unwrap_or(DEFAULT_WALK_DEPTH),
        },
        audit_csv: global.audit_csv.as_ref().map(|p| p.display().to_string()),
    })
}

impl Resolved {
    fn secular_opts(&self) -> SecularOpts {
        SecularOpts { tol: self.tol_secular, ..SecularOpts::default() }
    }

    fn eigen_opts(&self) -> SolveOpts {
        SolveOpts { tol: self.tol_eigen, keep_eigvec: false, ..SolveOpts::default() }
    }

    fn verify_opts(&self) -> VerifyOpts {
        VerifyOpts {
            secular: self.secular_opts(),
            eigen: self.eigen_opts(),
            tie_tol: self.tie_tol,
            cap: self.cap,
            walk_depth: self.depth,
        }
    }
}

struct CmdOutput {
    params: Value,
    body: Value,
    plain: String,
    csv: String,
    exit: i32,
}

fn read_input_text(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// (graph, input description). `complement_config` decides whether a --config
/// string names the complement of the wanted graph or the graph itself.
fn load_graph(
    file: &Option<PathBuf>,
    g6: &Option<String>,
    config: &Option<String>,
    complement_config: bool,
) -> Result<(Graph, String)> {
    if let Some(path) = file {
        let g = parse_graph(&read_input_text(path)?)?;
        return Ok((g, format!("file:{}", path.display())));
    }
    if let Some(text) = g6 {
        return Ok((parse_graph6(text)?, format!("g6:{text}")));
    }
    let text = config.as_ref().expect("clap group guarantees one input");
    let cfg = ComplementConfig::parse(text)?;
    let canon = cfg.canonical_string();
    if complement_config {
        Ok((cfg.realize().complement(), format!("complement-of:{canon}")))
    } else {
        Ok((cfg.realize(), format!("config:{canon}")))
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Eigensolver => "eigensolver",
        Method::Secular => "secular",
    }
}

fn spectral_json(r: &SpectralResult) -> Value {
    json!({
        "rho": r.value,
        "method": method_name(r.method),
        "residual": r.residual,
        "iterations": r.iterations,
    })
}

fn cmd_rho(args: &RhoArgs, resolved: &Resolved) -> Result<CmdOutput> {
    let (g, desc) = load_graph(&args.input.file, &args.input.g6, &args.input.config, true)?;
    let mut eigen: Option<SpectralResult> = None;
    let mut secular: Option<SpectralResult> = None;
    let mut secular_note: Option<String> = None;
    if matches!(args.method, MethodArg::Eigen | MethodArg::Both) {
        eigen = Some(distance_spectral_radius(&g, &resolved.eigen_opts())?);
    }
    if matches!(args.method, MethodArg::Secular | MethodArg::Both) {
        let route = (|| {
            let cfg = match &args.input.config {
                Some(text) => ComplementConfig::parse(text)?,
                None => ComplementConfig::from_graph(&g.complement())?,
            };
            rho_via_secular(&cfg, &resolved.secular_opts())
        })();
        match route {
            Ok(r) => secular = Some(r),
            // With --method both the secular route is opportunistic; record
            // why it does not apply instead of failing the whole command.
            Err(e) if args.method == MethodArg::Both => secular_note = Some(e.to_string()),
            Err(e) => return Err(e),
        }
    }
    let agreement = match (&eigen, &secular) {
        (Some(e), Some(s)) => Some((e.value - s.value).abs()),
        _ => None,
    };
    let rho = eigen.as_ref().or(secular.as_ref()).expect("some method ran").value;

    let mut plain = format!("n = {}, m = {}\n", g.n(), g.edge_count());
    let mut csv = String::from("input,rho,method,residual\n");
    for r in eigen.iter().chain(secular.iter()) {
        plain.push_str(&format!(
            "rho ({}) = {:.10}  residual {:.3e}, {} iterations\n",
            method_name(r.method),
            r.value,
            r.residual,
            r.iterations
        ));
        csv.push_str(&format!("{desc},{},{},{:e}\n", r.value, method_name(r.method), r.residual));
    }
    if let Some(delta) = agreement {
        plain.push_str(&format!("agreement delta = {delta:.3e}\n"));
    }
    if let Some(note) = &secular_note {
        plain.push_str(&format!("secular route not applicable: {note}\n"));
    }
    Ok(CmdOutput {
        params: json!({"input": desc, "method": match args.method {
            MethodArg::Eigen => "eigen", MethodArg::Secular => "secular", MethodArg::Both => "both",
        }}),
        body: json!({
            "n": g.n(),
            "m": g.edge_count(),
            "rho": rho,
            "eigen": eigen.as_ref().map(spectral_json),
            "secular": secular.as_ref().map(spectral_json),
            "secular_note": secular_note,
            "agreement_delta": agreement,
        }),
        plain,
        csv,
        exit: 0,
    })
}

fn cmd_phi(args: &PhiArgs, _resolved: &Resolved) -> Result<CmdOutput> {
    let theta = theta_from_lambda(args.lambda)?.theta;
    let (kind, value, increment) = match args.kind {
        PhiKind::Path => (
            "path",
            phi_path(args.size, args.lambda)?,
            Some(phi_path_increment(args.size, args.lambda)?),
        ),
        PhiKind::Cycle => ("cycle", phi_cycle(args.size, args.lambda)?, None),
    };
    let mut plain = format!("Phi_{kind}({}) at lambda = {} -> {value:.12}\n", args.size, args.lambda);
    if let Some(inc) = increment {
        plain.push_str(&format!("increment to size {}: {inc:.12}\n", args.size + 1));
    }
    Ok(CmdOutput {
        params: json!({"kind": kind, "size": args.size, "lambda": args.lambda}),
        body: json!({
            "kind": kind,
            "size": args.size,
            "lambda": args.lambda,
            "theta": theta,
            "value": value,
            "increment": increment,
        }),
        plain,
        csv: format!("kind,size,lambda,value\n{kind},{},{},{value}\n", args.size, args.lambda),
        exit: 0,
    })
}

fn cmd_psi(args: &PsiArgs, _resolved: &Resolved) -> Result<CmdOutput> {
    let (value, route, desc) = match &args.input.config {
        Some(text) => {
            let cfg = ComplementConfig::parse(text)?;
            (psi(&cfg, args.lambda)?, PsiRoute::ClosedForms, format!("config:{}", cfg.canonical_string()))
        }
        None => {
            let (h0, desc) =
                load_graph(&args.input.file, &args.input.g6, &args.input.config, false)?;
            let eval = psi_graph(&h0, args.lambda)?;
            (eval.value, eval.route, desc)
        }
    };
    let route_name = match route {
        PsiRoute::ClosedForms => "closed-forms",
        PsiRoute::GeneralSolve => "general-solve",
    };
    Ok(CmdOutput {
        params: json!({"input": desc, "lambda": args.lambda}),
        body: json!({"lambda": args.lambda, "value": value, "route": route_name}),
        plain: format!("Psi at lambda = {} -> {value:.12} via {route_name}\n", args.lambda),
        csv: format!("input,lambda,value,route\n{desc},{},{value},{route_name}\n", args.lambda),
        exit: 0,
    })
}

fn cmd_extremal(args: &ExtremalArgs, resolved: &Resolved) -> Result<CmdOutput> {
    let spec = distspec_core::extremal::params_from_m(args.m)?;
    let g = build_extremal_graph(&spec);
    let rho = distance_spectral_radius(&g, &resolved.eigen_opts())?;
    let g6 = serialize_graph6(&g)?;
    let ExtremalSpec { m, n, s, ref parts, .. } = spec;
    debug_assert_eq!(m, args.m);
    let mut plain = format!("m = {m} -> n = {n}, s = {s}\npartition: {parts:?}\n");
    if spec.is_special_s0() {
        plain.push_str("special case s = 0: minimizer is the complete graph on n - 1 vertices\n");
    }
    plain.push_str(&format!(
        "graph: {} edges, rho = {:.10}\ngraph6: {g6}\n",
        g.edge_count(),
        rho.value
    ));
    Ok(CmdOutput {
        params: json!({"m": m}),
        body: json!({
            "m": m,
            "n": n,
            "s": s,
            "partition": parts,
            "special_s0": spec.is_special_s0(),
            "edge_count": g.edge_count(),
            "rho": rho.value,
            "residual": rho.residual,
            "graph6": g6,
        }),
        plain,
        csv: format!("m,n,s,rho,graph6\n{m},{n},{s},{},{g6}\n", rho.value),
        exit: 0,
    })
}

fn cmd_verify(args: &VerifyArgs, resolved: &Resolved) -> Result<CmdOutput> {
    let opts = resolved.verify_opts();

    // Optional CSV audit stream, shared by the worker threads.
    let audit_file = match &resolved.audit_csv {
        Some(path) => {
            let mut f = fs::File::create(path)
                .map_err(|e| Error::Parse(format!("{path}: {e}")))?;
            writeln!(f, "config,rho,method,residual")
                .map_err(|e| Error::Parse(format!("{path}: {e}")))?;
            Some(Mutex::new(std::io::BufWriter::new(f)))
        }
        None => None,
    };
    let write_row = |row: &AuditRow| {
        if let Some(m) = &audit_file {
            let mut w = m.lock().expect("audit writer poisoned");
            let _ = writeln!(
                w,
                "{},{},{},{:e}",
                row.config,
                row.rho,
                method_name(row.method),
                row.residual
            );
        }
    };
    let sink: Option<AuditSink> = audit_file.is_some().then_some(&write_row);

    let need = |v: Option<usize>, name: &str| {
        v.ok_or_else(|| Error::Domain(format!("--{name} is required for this mode")))
    };
    let (mode_name, report) = match args.mode {
        ModeArg::Structured => (
            "structured",
            verify_structured(need(args.n, "n")?, need(args.s, "s")?, &opts, sink)?,
        ),
        ModeArg::Exhaustive => {
            let m = args
                .m
                .ok_or_else(|| Error::Domain("--m is required for exhaustive mode".into()))?;
            ("exhaustive", verify_exhaustive(m, &opts, sink)?)
        }
        ModeArg::LargeS => (
            "large-s",
            verify_large_s(need(args.n, "n")?, need(args.s, "s")?, &opts, sink)?,
        ),
    };
    if let Some(m) = &audit_file {
        let _ = m.lock().expect("audit writer poisoned").flush();
    }

    let ok = report.verdict == Verdict::UniqueBalancedPaths;
    let verdict_name = if ok { "unique-balanced-paths" } else { "violation" };
    let mut plain = format!(
        "mode: {mode_name}\nspace: {}\nexamined: {}\nrho_min: {:.10}\n",
        report.space.description, report.examined, report.rho_min
    );
    let mut seen: Vec<&str> = Vec::new();
    for w in &report.minimizers {
        if !seen.contains(&w.components.as_str()) {
            seen.push(&w.components);
            plain.push_str(&format!("minimizer: {} (rho = {:.10})\n", w.components, w.rho));
        }
    }
    plain.push_str(&format!(
        "minimizer count: {}\nverdict: {verdict_name}\nwall: {:.2}s\n",
        report.minimizer_count, report.wall_time_secs
    ));
    let csv = format!(
        "mode,n,s,examined,rho_min,verdict\n{mode_name},{},{},{},{},{verdict_name}\n",
        report.space.n, report.space.s, report.examined, report.rho_min
    );
    Ok(CmdOutput {
        params: json!({"mode": mode_name, "n": args.n, "s": args.s, "m": args.m}),
        body: serde_json::to_value(&report).expect("report serializes"),
        plain,
        csv,
        exit: if ok { 0 } else { 4 },
    })
}

fn cmd_walks(args: &WalksArgs, resolved: &Resolved) -> Result<CmdOutput> {
    let (g, desc) = load_graph(&args.input.file, &args.input.g6, &args.input.config, false)?;
    let profile = walk_counts(&g, resolved.depth)?;
    let mut body = json!({
        "graph": profile.graph,
        "depth": profile.depth,
        "counts": profile.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    });
    let mut plain = format!(
        "graph: {} on {} vertices\nwalk counts w_0..w_{}: {:?}\n",
        profile.graph,
        g.n(),
        profile.depth,
        profile.counts
    );
    if let Some(lambda) = args.lambda {
        let neumann = psi_via_neumann(&g, lambda, resolved.depth)?;
        plain.push_str(&format!(
            "Neumann partial sum at lambda = {lambda}: {:.12} (tail bound {:?})\n",
            neumann.partial_sum, neumann.tail_bound
        ));
        body["neumann"] = serde_json::to_value(&neumann).expect("neumann serializes");
    }
    if let Some(s) = args.s {
        let verdict = walk_dominance_check(&g, g.n(), s, resolved.depth)?;
        plain.push_str(&format!("dominance vs the s = {s} matching: {verdict:?}\n"));
        body["dominance"] = serde_json::to_value(&verdict).expect("verdict serializes");
    }
    let csv_counts = profile
        .counts
        .iter()
        .enumerate()
        .map(|(k, c)| format!("{k},{c}"))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(CmdOutput {
        params: json!({"input": desc, "lambda": args.lambda, "s": args.s}),
        body,
        plain,
        csv: format!("k,walks\n{csv_counts}\n"),
        exit: 0,
    })
}

fn cmd_compare(args: &CompareArgs, resolved: &Resolved) -> Result<CmdOutput> {
    let a = ComplementConfig::parse(&args.a)?;
    let b = ComplementConfig::parse(&args.b)?;
    let cmp = compare_rho(&a, &b, &resolved.secular_opts())?;
    let symbol = match serde_json::to_value(&cmp.ordering).expect("ordering serializes") {
        Value::String(s) if s == "less" => "<",
        Value::String(s) if s == "greater" => ">",
        _ => "~",
    };
    Ok(CmdOutput {
        params: json!({"a": args.a, "b": args.b}),
        plain: format!(
            "rho({}) {symbol} rho({})\ncertificate: {}\n",
            cmp.a,
            cmp.b,
            serde_json::to_string(&cmp.certificate).expect("certificate serializes")
        ),
        csv: format!("a,b,ordering\n{},{},{symbol}\n", cmp.a, cmp.b),
        body: serde_json::to_value(&cmp).expect("comparison serializes"),
        exit: 0,
    })
}

fn cmd_counterexample(resolved: &Resolved) -> Result<CmdOutput> {
    let report = edge_switch_counterexample(&resolved.verify_opts())?;
    let mut plain = String::new();
    let mut csv = String::from("config,rho_secular,rho_eigen,disagreement\n");
    for e in &report.entries {
        plain.push_str(&format!(
            "rho({}) = {:.10} (secular) / {:.10} (eigen)\n",
            e.config, e.rho_secular, e.rho_eigen
        ));
        csv.push_str(&format!(
            "{},{},{},{:e}\n",
            e.config, e.rho_secular, e.rho_eigen, e.route_disagreement
        ));
    }
    plain.push_str(&format!("{}\n", report.narrative));
    Ok(CmdOutput {
        params: json!({}),
        body: serde_json::to_value(&report).expect("report serializes"),
        plain,
        csv,
        exit: 0,
    })
}

fn run(cli: &Cli) -> Result<i32> {
    let t0 = Instant::now();
    let resolved = resolve(&cli.global)?;
    if resolved.threads > 0 {
        // Ignore the error: the global pool can only be set once per process.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(resolved.threads)
            .build_global();
    }

    let (name, out) = match &cli.command {
        Command::Rho(a) => ("rho", cmd_rho(a, &resolved)?),
        Command::Phi(a) => ("phi", cmd_phi(a, &resolved)?),
        Command::Psi(a) => ("psi", cmd_psi(a, &resolved)?),
        Command::Extremal(a) => ("extremal", cmd_extremal(a, &resolved)?),
        Command::Verify(a) => ("verify", cmd_verify(a, &resolved)?),
        Command::Walks(a) => ("walks", cmd_walks(a, &resolved)?),
        Command::Compare(a) => ("compare", cmd_compare(a, &resolved)?),
        Command::Counterexample => ("counterexample", cmd_counterexample(&resolved)?),
    };

    match resolved.format {
        Format::Json => {
            let unix_ms = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_millis())
                .unwrap_or(0);
            let report = json!({
                "header": {
                    "schema": 1,
                    "version": env!("CARGO_PKG_VERSION"),
                    "config": {
                        "command": name,
                        "params": out.params,
                        "settings": serde_json::to_value(&resolved).expect("settings serialize"),
                    },
                    "timestamp": {
                        "unix_ms": unix_ms,
                        "wall_secs": t0.elapsed().as_secs_f64(),
                    },
                },
                "body": out.body,
            });
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        }
        Format::Plain => print!("{}", out.plain),
        Format::Csv => print!("{}", out.csv),
    }
    Ok(out.exit)
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}

mod cache;
mod record;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use srgsep::bounds::{quick_verdict, BoundReport, QuickVerdict};
use srgsep::catalog;
use srgsep::classify::{self, TableId, TableReport, VerdictStatus};
use srgsep::families::{self, FamilySpec, WitnessHint};
use srgsep::graph::{DenseGraph, SrgParams};
use srgsep::solver::{self, Budget, Mode, SolveOptions, SolveStatus};

use cache::Cache;
use record::{Input, RunRecord, SCHEMA};

#[derive(Parser)]
#[command(name = "srgsep", version, about = "Separation of strongly regular graphs")]
struct Cli {
    /// Print JSON instead of a human-readable report.
    #[arg(long, global = true)]
    json: bool,
    /// Solver threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for the local search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Branch-and-bound node limit.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    max_nodes: u64,
    /// Time limit per search, in seconds.
    #[arg(long, global = true, default_value_t = 600)]
    max_time: u64,
    /// Result cache directory.
    #[arg(long, global = true, env = cache::ENV_VAR)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a family member as DIMACS or JSON, with a metadata sidecar.
    Gen {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Dimacs)]
        format: Format,
        /// Refuse graphs with more vertices than this.
        #[arg(long, default_value_t = families::DEFAULT_MAX_NU)]
        max_nu: u64,
    },
    /// Eigenvalues and clique/coclique bounds.
    Bounds {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Maximum clique or coclique of a graph.
    Solve {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ModeArg::Clique)]
        mode: ModeArg,
        /// Write the witness, one vertex per line.
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Separating or not, with the reason.
    Classify {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Reproduce one of the reference tables.
    Table {
        #[arg(long, value_parser = ["1", "2", "5", "6"])]
        which: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dimacs,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Clique,
    Coclique,
}

#[derive(Args, Default)]
struct ParamArgs {
    #[arg(long)]
    nu: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    lambda: Option<u64>,
    #[arg(long)]
    mu: Option<u64>,
}

#[derive(Args, Default)]
struct SpecArgs {
    /// Family name, e.g. paley, triangular, vls, polar, no, bvls.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    e: Option<String>,
    #[arg(long)]
    t: Option<String>,
    #[arg(long)]
    m: Option<String>,
    /// +1 or -1.
    #[arg(long, allow_hyphen_values = true)]
    epsilon: Option<String>,
    /// Polar type: W, Q, Q+, Q- or H.
    #[arg(long)]
    polar: Option<String>,
    /// Projective dimension of a polar space.
    #[arg(long)]
    dim: Option<String>,
    /// Use the dual of a rank 2 polar space.
    #[arg(long)]
    dual: bool,
    /// Row of the non-family table.
    #[arg(long)]
    row: Option<String>,
}

impl SpecArgs {
    fn spec(&self) -> Result<Option<FamilySpec>> {
        let Some(family) = &self.family else {
            return Ok(None);
        };
        let mut map = BTreeMap::new();
        let pairs = [
            ("n", &self.n),
            ("q", &self.q),
            ("p", &self.p),
            ("e", &self.e),
            ("t", &self.t),
            ("m", &self.m),
            ("epsilon", &self.epsilon),
            ("polar", &self.polar),
            ("dim", &self.dim),
            ("row", &self.row),
        ];
        for (k, v) in pairs {
            if let Some(v) = v {
                map.insert(k.to_string(), v.clone());
            }
        }
        if self.dual {
            map.insert("dual".to_string(), "true".to_string());
        }
        Ok(Some(FamilySpec::from_params(family, &map)?))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn budget(cli: &Cli) -> Budget {
    let mut b = Budget::default().with_seed(cli.seed);
    if let Some(t) = cli.threads {
        b = b.with_threads(t);
    }
    b.max_nodes = cli.max_nodes.max(1);
    b.max_time = Duration::from_secs(cli.max_time.max(1));
    b
}

fn emit<T: Serialize>(json: bool, value: &T, human: impl FnOnce() -> String) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(value)?);
    } else {
        print!("{}", human());
    }
    Ok(())
}

fn read_graph(path: &Path) -> Result<DenseGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(DenseGraph::from_dimacs(&text)?)
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Gen { spec, out, format, max_nu } => cmd_gen(cli, spec, out.as_deref(), *format, *max_nu),
        Command::Bounds { params, spec, file } => cmd_bounds(cli, params, spec, file.as_deref()),
        Command::Solve { spec, file, mode, witness_out } => cmd_solve(cli, spec, file.as_deref(), *mode, witness_out.as_deref()),
        Command::Classify { spec, file } => cmd_classify(cli, spec, file.as_deref()),
        Command::Table { which } => cmd_table(cli, which.parse().expect("validated by clap")),
    }
}

#[derive(Serialize)]
struct GraphJson<'a> {
    schema: &'static str,
    label: Option<&'a str>,
    nu: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct Sidecar<'a> {
    schema: &'static str,
    spec: FamilySpec,
    name: String,
    params: SrgParams,
    edges: usize,
    checksum: u64,
    vertex_order: &'static str,
    hint: &'a WitnessHint,
}

fn vertex_order(spec: &FamilySpec) -> &'static str {
    use FamilySpec::*;
    match spec {
        Triangular { .. } => "2-subsets {i<j} in lexicographic order",
        Grid { .. } => "pairs (i, j) as i*n + j",
        Paley { .. } | Peisert { .. } | VanLintSchrijver { .. } | BilinearForms { .. } | VoPlus { .. } | VoMinus { .. } | VSz { .. } => {
            "vectors over the prime field as base-p digit strings, first coordinate most significant"
        }
        Grassmann { .. } => "subspaces by reduced echelon form",
        PolarCollinearity { dual: true, .. } => "lines by their sorted point lists",
        PolarCollinearity { .. } | No { .. } | Nu { .. } => {
            "projective points normalised to a leading 1, in lexicographic order"
        }
        BvLS => "syndromes of the ternary Golay code",
        HoffmanSingleton => "pentagons P_0..P_4 then pentagrams Q_0..Q_4, five vertices each",
        Gewirtz | M22 => "blocks of S(3,6,22) in stored order",
        HigmanSims => "a point, the 22 points, then the 77 blocks",
        _ => "generator order",
    }
}

fn cmd_gen(cli: &Cli, spec_args: &SpecArgs, out: Option<&Path>, format: Format, max_nu: u64) -> Result<ExitCode> {
    let Some(spec) = spec_args.spec()? else {
        bail!("gen needs --family");
    };
    let gen = families::generate_with_cap(&spec, max_nu)?;
    let g = &gen.graph;
    let body = match format {
        Format::Dimacs => g.to_dimacs(),
        Format::Json => serde_json::to_string_pretty(&GraphJson {
            schema: SCHEMA,
            label: g.label(),
            nu: g.nu(),
            edges: g.edges().collect(),
        })?,
    };
    let meta = Sidecar {
        schema: SCHEMA,
        spec,
        name: spec.to_string(),
        params: catalog::params_for(&spec)?,
        edges: g.edge_count(),
        checksum: g.checksum(),
        vertex_order: vertex_order(&spec),
        hint: &gen.hint,
    };
    match out {
        None => print!("{body}"),
        Some(path) => {
            fs::write(path, &body).with_context(|| format!("writing {}", path.display()))?;
            let mut meta_path = path.as_os_str().to_owned();
            meta_path.push(".meta.json");
            fs::write(&meta_path, serde_json::to_string_pretty(&meta)?)?;
            emit(cli.json, &meta, || {
                format!("{}: {} vertices, {} edges -> {}\n", meta.name, g.nu(), meta.edges, path.display())
            })?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn bounds_text(b: &BoundReport) -> String {
    let p = &b.params;
    let verdict = match quick_verdict(p) {
        QuickVerdict::SeparatingByFractionalBound(which) => format!("separating ({which:?} bound not an integer)"),
        QuickVerdict::NeedsSearch { clique_target, coclique_target } => {
            format!("needs search (targets {clique_target} and {coclique_target})")
        }
    };
    format!(
        "params    ({}, {}, {}, {})\neigenvalues k = {}, r = {}, s = {}\ndelsarte  {}\nhoffman   {}\nquick     {verdict}\n",
        p.nu, p.k, p.lambda, p.mu, b.k, b.r, b.s, b.delsarte, b.hoffman
    )
}

fn cmd_bounds(cli: &Cli, pa: &ParamArgs, spec_args: &SpecArgs, file: Option<&Path>) -> Result<ExitCode> {
    let (params, input) = if let Some(spec) = spec_args.spec()? {
        (catalog::params_for(&spec)?, Input::Spec { spec, name: spec.to_string() })
    } else if let Some(path) = file {
        let g = read_graph(path)?;
        let p = g.verify_srg()?;
        (p, Input::File { path: path.display().to_string(), checksum: g.checksum() })
    } else {
        match (pa.nu, pa.k, pa.lambda, pa.mu) {
            (Some(nu), Some(k), Some(l), Some(m)) => (SrgParams::new(nu, k, l, m)?, Input::Params),
            _ => bail!("bounds needs --nu --k --lambda --mu, --family or --file"),
        }
    };
    let report = BoundReport::new(&params);
    let mut rec = RunRecord::new("bounds", input);
    rec.params = Some(params);
    rec.bounds = Some(report.clone());
    emit(cli.json, &rec, || bounds_text(&report))?;
    Ok(ExitCode::SUCCESS)
}

/// The graph named by `--family` or `--file`, with hints when generated.
fn load_subject(spec_args: &SpecArgs, file: Option<&Path>) -> Result<(DenseGraph, WitnessHint, Input, Option<FamilySpec>)> {
    if let Some(spec) = spec_args.spec()? {
        let gen = families::generate(&spec)?;
        Ok((gen.graph, gen.hint, Input::Spec { spec, name: spec.to_string() }, Some(spec)))
    } else if let Some(path) = file {
        let g = read_graph(path)?;
        let checksum = g.checksum();
        Ok((g, WitnessHint::none(), Input::File { path: path.display().to_string(), checksum }, None))
    } else {
        bail!("expected --family or --file")
    }
}

fn cmd_solve(cli: &Cli, spec_args: &SpecArgs, file: Option<&Path>, mode: ModeArg, witness_out: Option<&Path>) -> Result<ExitCode> {
    let (g, hint, input, spec) = load_subject(spec_args, file)?;
    let budget = budget(cli);
    let mode = match mode {
        ModeArg::Clique => Mode::Clique,
        ModeArg::Coclique => Mode::Coclique,
    };
    let params = g.verify_srg().ok();
    let cap = params.map(|p| {
        let b = BoundReport::new(&p);
        match mode {
            Mode::Clique => b.clique_cap(),
            Mode::Coclique => b.coclique_cap(),
        }
    });
    let initial = cap
        .and_then(|c| solver::seed_search(&g, c as usize, &hint, mode, &budget))
        .unwrap_or_default();
    let opts = SolveOptions {
        spectral_cap: cap,
        initial,
        // Family members are rank 3 graphs, hence vertex-transitive.
        vertex_transitive: spec.is_some(),
    };
    let res = solver::solve(&g, mode, &opts, &budget)?;
    if let Some(path) = witness_out {
        let lines: String = res.witness.iter().map(|v| format!("{v}\n")).collect();
        fs::write(path, lines)?;
    }
    let mut rec = RunRecord::new("solve", input);
    rec.params = params;
    rec.solve = Some(res.clone());
    emit(cli.json, &rec, || {
        format!(
            "{} = {} ({:?}, {} nodes, {:.3}s)\nwitness {:?}\n",
            match mode {
                Mode::Clique => "omega",
                Mode::Coclique => "alpha",
            },
            res.value,
            res.status,
            res.nodes_explored,
            res.elapsed.as_secs_f64(),
            res.witness
        )
    })?;
    Ok(if res.status == SolveStatus::LowerBoundOnly { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

fn cmd_classify(cli: &Cli, spec_args: &SpecArgs, file: Option<&Path>) -> Result<ExitCode> {
    let budget = budget(cli);
    let spec = spec_args.spec()?;
    let (input, subject, params_key) = match (&spec, file) {
        (Some(spec), _) => {
            let params = catalog::params_for(spec)?;
            (
                Input::Spec { spec: *spec, name: spec.to_string() },
                serde_json::to_string(spec)?,
                serde_json::to_string(&params)?,
            )
        }
        (None, Some(path)) => {
            let g = read_graph(path)?;
            let key = format!("checksum:{}", g.checksum());
            (Input::File { path: path.display().to_string(), checksum: g.checksum() }, key, String::new())
        }
        (None, None) => bail!("classify needs --family or --file"),
    };
    let cache = cli.cache_dir.as_deref().map(Cache::open).transpose()?;
    let key = cache::key("classify", &subject, &params_key);
    let cached = cache.as_ref().and_then(|c| c.get(&key));
    let rec = match cached {
        Some(rec) => rec,
        None => {
            let mut rec = RunRecord::new("classify", input);
            let verdict = match (&spec, file) {
                (Some(spec), _) => {
                    rec.params = Some(catalog::params_for(spec)?);
                    classify::classify_family(spec, &budget)?
                }
                (None, Some(path)) => {
                    let g = read_graph(path)?;
                    rec.params = Some(g.verify_srg()?);
                    classify::classify_graph(&g, &budget)?
                }
                (None, None) => unreachable!(),
            };
            rec.bounds = rec.params.as_ref().map(BoundReport::new);
            rec.verdict = Some(verdict);
            if let Some(c) = &cache {
                if rec.is_final() {
                    c.put(&key, &rec)?;
                }
            }
            rec
        }
    };
    let verdict = rec.verdict.as_ref().expect("classify records carry a verdict");
    emit(cli.json, &rec, || {
        let mut s = format!("{}: {} ({})\n", subject_name(&rec.input), verdict.status, verdict.reason);
        if let Some(w) = &verdict.omega {
            s.push_str(&format!("omega {w}\n"));
        }
        if let Some(a) = &verdict.alpha {
            s.push_str(&format!("alpha {a}\n"));
        }
        if let Some(w) = &verdict.witnesses {
            s.push_str(&format!(
                "witnesses {} * {} = {}\n",
                w.clique.len(),
                w.coclique.len(),
                w.clique.len() * w.coclique.len()
            ));
        }
        s.push_str(&format!("because {}\n", verdict.provenance));
        for n in &verdict.notes {
            s.push_str(&format!("note: {n}\n"));
        }
        s
    })?;
    Ok(if verdict.status == VerdictStatus::Unresolved { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

fn subject_name(input: &Input) -> String {
    match input {
        Input::Spec { name, .. } => name.clone(),
        Input::File { path, .. } => path.clone(),
        Input::Params => "parameters".to_string(),
    }
}

fn table_text(report: &TableReport) -> String {
    let mut s = format!(
        "{:<16} {:<28} {:>14} {:>14} {:>6} {:>6}  {:<14} {:<20} match\n",
        "row", "params", "delsarte", "hoffman", "omega", "alpha", "verdict", "reason"
    );
    let opt = |v: Option<u64>| v.map_or("?".to_string(), |v| v.to_string());
    for r in &report.rows {
        let p = format!("({}, {}, {}, {})", r.params[0], r.params[1], r.params[2], r.params[3]);
        s.push_str(&format!(
            "{:<16} {:<28} {:>14} {:>14} {:>6} {:>6}  {:<14} {:<20} {}\n",
            r.row_id,
            p,
            r.delsarte,
            r.hoffman,
            opt(r.omega),
            opt(r.alpha),
            r.verdict.to_string(),
            r.reason.to_string(),
            if r.matches { "yes" } else { "NO" }
        ));
        for n in &r.notes {
            s.push_str(&format!("{:<16} note: {n}\n", ""));
        }
    }
    s.push_str(&format!("{} rows, {} mismatches\n", report.rows.len(), report.mismatches()));
    s
}

fn cmd_table(cli: &Cli, which: u32) -> Result<ExitCode> {
    let id = TableId::from_number(which).expect("validated by clap");
    let report = classify::reproduce_table(id, &budget(cli))?;
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&report.rows)?);
    } else {
        print!("{}", table_text(&report));
    }
    Ok(ExitCode::SUCCESS)
}

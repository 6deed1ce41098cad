use std::error::Error;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use contagion_lab::cascade::{forest_fire, run_with_snapshots, CascadeParams, SnapshotSchedule, TransmissionModel};
use contagion_lab::experiment::{
    load_config, resolve_output_dir, run_experiment, snapshot_sidecar, write_degree_csv, write_diameter_csv,
    write_exact_ncp_csv, write_fit_csv, write_ncp_csv, write_occupancy_csv, RunOptions,
};
use contagion_lab::generators::{CliquePartition, GeneratorParams, ModelKind};
use contagion_lab::graph::{read_edge_list, write_edge_list};
use contagion_lab::metrics::{degree_distribution, diameter, fit_power_law_slope, ncp_heuristic, DiameterMode, FitOptions, NcpConfig, NcpScope};
use contagion_lab::oracles::{clique_occupancy, cliquish_degrees, exhaustive_profile, yule_process, OccupancyHistogram, YuleParams};
use contagion_lab::rng::derive_seed;
use contagion_lab::VertexSet;

type CliResult = Result<ExitCode, Box<dyn Error>>;

#[derive(Parser)]
#[command(name = "contagion-lab", version, about = "Grow contagious networks and measure their structure")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a potential network and write it as an edge list.
    Generate(GenerateArgs),
    /// Spread a cascade over an edge list, or grow a forest fire graph.
    Cascade(CascadeArgs),
    /// Measure an edge list and write CSV tables.
    Metrics(MetricsArgs),
    /// Reference processes and brute-force checks.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Run a bundled or file-based experiment config.
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    model: ModelKind,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    d: usize,
    #[arg(long, default_value_t = 0)]
    k: usize,
    #[arg(long, default_value_t = 0.0)]
    r: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CascadeArgs {
    /// retig, ret, retmiv, retwe or forestfire.
    #[arg(long)]
    model: String,
    /// Potential network; not used by forestfire.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Infected vertices to reach (node count for forestfire).
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
    #[arg(long, default_value_t = 0.0)]
    gamma: f64,
    #[arg(long, default_value_t = 1)]
    s: usize,
    /// Forest fire burning probability.
    #[arg(long, default_value_t = 0.0)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated checkpoints; defaults to `m`.
    #[arg(long)]
    snapshots: Option<String>,
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args)]
struct MetricsArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    degrees: bool,
    /// Fit window `x_min:x_max` on the degree histogram.
    #[arg(long)]
    fit: Option<String>,
    #[arg(long)]
    ncp: bool,
    /// Profile the whole graph instead of its largest component.
    #[arg(long)]
    ncp_whole_graph: bool,
    /// `exact` or `sampled:K`.
    #[arg(long)]
    diameter: Option<DiameterMode>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Genus sizes of a Yule process, summed over runs.
    Yule {
        #[arg(long)]
        new_genus: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 1)]
        runs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Infected vertices per clique of a contiguous clique partition.
    Occupancy {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        clique_size: usize,
        /// File with one infected vertex id per line.
        #[arg(long)]
        infected: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Minimum conductance per size by enumeration (at most 20 nodes).
    ExactNcp {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct ExperimentArgs {
    /// Bundled config name or a TOML file.
    #[arg(long)]
    config: String,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => generate(a),
        Command::Cascade(a) => cascade(a),
        Command::Metrics(a) => metrics(a),
        Command::Oracle(o) => oracle(o),
        Command::Experiment(a) => experiment(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn create_dir(dir: &Path) -> Result<(), Box<dyn Error>> {
    std::fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()).into())
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), Box<dyn Error>> {
    std::fs::write(path, serde_json::to_string_pretty(value)? + "\n").map_err(|e| format!("{}: {e}", path.display()).into())
}

fn generate(a: GenerateArgs) -> CliResult {
    let params = GeneratorParams { model: a.model, n: a.n, d: a.d, r: a.r, k: a.k };
    let g = params.generate(a.seed)?;
    write_edge_list(&g, &a.out)?;
    println!("{} nodes, {} edges -> {}", g.node_count(), g.edge_count(), a.out.display());
    Ok(ExitCode::SUCCESS)
}

fn cascade(a: CascadeArgs) -> CliResult {
    create_dir(&a.out_dir)?;
    if a.model == "forestfire" {
        let g = forest_fire(a.m, a.p, a.seed)?;
        let dir = a.out_dir.join(format!("snapshot_{}", a.m));
        create_dir(&dir)?;
        write_edge_list(&g, &dir.join("graph.edges"))?;
        let meta = serde_json::json!({
            "model": "forestfire",
            "params": { "n": a.m, "p": a.p },
            "seed": a.seed,
            "size": g.node_count(),
            "edges": g.edge_count(),
            "stalled": false,
        });
        write_json(&dir.join("meta.json"), &meta)?;
        println!("forest fire: {} nodes, {} edges -> {}", g.node_count(), g.edge_count(), dir.display());
        return Ok(ExitCode::SUCCESS);
    }
    let model: TransmissionModel = a.model.parse()?;
    let graph = a.graph.ok_or("--graph is required for this model")?;
    let g = read_edge_list(&graph)?;
    let params = CascadeParams { model, m: a.m, alpha: a.alpha, beta: a.beta, gamma: a.gamma, s: a.s };
    let schedule = match &a.snapshots {
        Some(list) => list.parse()?,
        None => SnapshotSchedule::single(a.m),
    };
    let run = run_with_snapshots(&g, &params, &schedule, a.seed)?;
    for (snap, &checkpoint) in run.snapshots.iter().zip(schedule.points()) {
        let dir = a.out_dir.join(format!("snapshot_{checkpoint}"));
        create_dir(&dir)?;
        write_edge_list(&snap.graph, &dir.join("graph.edges"))?;
        let ids: String = snap.to_underlying.iter().map(|v| format!("{v}\n")).collect();
        std::fs::write(dir.join("underlying_ids.txt"), ids)?;
        write_json(&dir.join("meta.json"), &snapshot_sidecar(snap, Some(checkpoint), a.seed, run.stalled_at))?;
        println!(
            "checkpoint {checkpoint}: {} infected, {} edges, {} rounds",
            snap.size(),
            snap.graph.edge_count(),
            snap.rounds
        );
    }
    match run.stalled_at {
        Some(reached) => {
            eprintln!("stalled at {reached} infected; later checkpoints not written");
            Ok(ExitCode::from(2))
        }
        None => Ok(ExitCode::SUCCESS),
    }
}

fn parse_window(text: &str) -> Result<FitOptions, Box<dyn Error>> {
    let (lo, hi) = text.split_once(':').ok_or("--fit expects x_min:x_max")?;
    Ok(FitOptions { x_min: lo.parse()?, x_max: hi.parse()?, ..FitOptions::default() })
}

fn metrics(a: MetricsArgs) -> CliResult {
    let g = read_edge_list(&a.graph)?;
    create_dir(&a.out)?;
    if a.degrees || a.fit.is_some() {
        let h = degree_distribution(&g);
        write_degree_csv(&a.out.join("degrees.csv"), &h)?;
        if let Some(window) = &a.fit {
            let fit = fit_power_law_slope(&h, parse_window(window)?).map_err(|e| e.to_string());
            match &fit {
                Ok(f) => println!("slope {:.4} over {} bins", f.exponent, f.points_used),
                Err(e) => println!("slope undefined: {e}"),
            }
            write_fit_csv(&a.out.join("fit.csv"), &fit)?;
        }
    }
    if let Some(mode) = a.diameter {
        let report = diameter(&g, mode, derive_seed(a.seed, 2))?;
        println!("diameter {} (effective {:.3})", report.diameter, report.effective_diameter_90);
        write_diameter_csv(&a.out.join("diameter.csv"), &[(g.node_count(), report)])?;
    }
    if a.ncp {
        let scope = if a.ncp_whole_graph { NcpScope::WholeGraph } else { NcpScope::LargestComponent };
        let curve = ncp_heuristic(&g, &NcpConfig { scope, seed: a.seed, ..NcpConfig::default() })?;
        if let Some(p) = curve.min_point() {
            println!("ncp minimum {:.5} at bin [{}, {}] ({})", p.conductance, p.bin_lo, p.bin_hi, p.method.name());
        }
        write_ncp_csv(&a.out.join("ncp.csv"), &curve)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn oracle(o: OracleCommand) -> CliResult {
    match o {
        OracleCommand::Yule { new_genus, steps, runs, seed, out } => {
            let mut total = OccupancyHistogram::default();
            for i in 0..runs {
                total.merge(&yule_process(YuleParams { new_genus, steps, seed: derive_seed(seed, i as u64) })?);
            }
            write_occupancy_csv(&out, &total)?;
            println!("{} genera over {runs} runs -> {}", total.group_count(), out.display());
        }
        OracleCommand::Occupancy { n, clique_size, infected, out } => {
            if clique_size == 0 || n % clique_size != 0 {
                return Err("--clique-size must divide --n".into());
            }
            let text = std::fs::read_to_string(&infected).map_err(|e| format!("{}: {e}", infected.display()))?;
            let ids = text.lines().filter(|l| !l.trim().is_empty()).map(|l| l.trim().parse::<usize>()).collect::<Result<Vec<_>, _>>()?;
            let set = VertexSet::from_members(n, ids)?;
            let partition = CliquePartition::contiguous(n, clique_size);
            create_dir(&out)?;
            let occ = clique_occupancy(&partition, &set)?;
            write_occupancy_csv(&out.join("occupancy.csv"), &occ)?;
            write_degree_csv(&out.join("cliquish_degrees.csv"), &cliquish_degrees(&partition, &set)?)?;
            println!("{} occupied cliques, {} infected", occ.group_count(), occ.total_members());
        }
        OracleCommand::ExactNcp { graph, out } => {
            let g = read_edge_list(&graph)?;
            let profile = exhaustive_profile(&g)?;
            write_exact_ncp_csv(&out, &profile)?;
            for (size, best) in &profile {
                match best {
                    Some((phi, set)) => println!("size {size}: {:.6} {:?}", phi.value(), set),
                    None => println!("size {size}: undefined"),
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn experiment(a: ExperimentArgs) -> CliResult {
    let (config, _) = load_config(&a.config)?;
    let out_dir = resolve_output_dir(&config, a.out.as_deref());
    let outcome = run_experiment(&config, &RunOptions { out_dir, workers: a.workers })?;
    for run in &outcome.manifest.runs {
        let status = match (&run.error, run.stalled_at) {
            (Some(e), _) => format!("error: {e}"),
            (None, Some(s)) => format!("stalled at {s}"),
            (None, None) => "ok".to_string(),
        };
        println!("run {:03} seed {}: {status}", run.index, run.seed);
    }
    println!("outputs in {}", outcome.out_dir.display());
    Ok(if outcome.manifest.flagged { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

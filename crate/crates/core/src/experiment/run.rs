use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::tables::{
    emit_plot_data, write_degree_csv, write_densify_csv, write_diameter_csv, write_fit_csv, write_ncp_csv,
    write_occupancy_csv, PlotSeries,
};
use super::{ExperimentConfig, ExperimentError, NcpSection};
use crate::cascade::{run_with_snapshots, InfectedGraph};
use crate::generators::CliquePartition;
use crate::graph::write_edge_list;
use crate::graph::{Graph, VertexSet};
use crate::metrics::{
    degree_distribution, diameter, fit_power_law_slope, ncp_heuristic, DegreeHistogram, DiameterReport, NcpCurve,
    SlopeFit,
};
use crate::oracles::{clique_occupancy, cliquish_degrees, total_variation, yule_process, OccupancyHistogram, YuleParams};
use crate::rng::{derive_seed, RNG_ALGORITHM};

/// Environment variable naming the default root for experiment outputs.
pub const OUTPUT_ROOT_ENV: &str = "CONTAGION_LAB_OUTPUT";

const GRAPH_STREAM: u64 = 0;
const CASCADE_STREAM: u64 = 1;
const METRIC_STREAM: u64 = 2;
const YULE_STREAM: u64 = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub out_dir: PathBuf,
    /// Runs executed at once.
    pub workers: usize,
}

/// `explicit`, else the config's `output_dir`, else `$CONTAGION_LAB_OUTPUT/<name>`,
/// else `lab-output/<name>`.
pub fn resolve_output_dir(config: &ExperimentConfig, explicit: Option<&Path>) -> PathBuf {
    if let Some(p) = explicit {
        return p.to_path_buf();
    }
    if let Some(p) = &config.output_dir {
        return p.clone();
    }
    let root = std::env::var_os(OUTPUT_ROOT_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("lab-output"));
    root.join(&config.name)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnapshotRecord {
    pub checkpoint: usize,
    pub size: usize,
    pub rounds: usize,
    pub edges: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub index: usize,
    pub seed: u64,
    pub graph_seed: u64,
    pub cascade_seed: u64,
    pub metric_seed: u64,
    pub stalled_at: Option<usize>,
    pub error: Option<String>,
    pub snapshots: Vec<SnapshotRecord>,
    pub files: Vec<String>,
}

impl RunRecord {
    pub fn flagged(&self) -> bool {
        self.stalled_at.is_some() || self.error.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub name: String,
    pub config_sha256: String,
    pub rng_algorithm: String,
    pub crate_version: String,
    pub base_seed: u64,
    pub shared_graph_seed: Option<u64>,
    pub runs: Vec<RunRecord>,
    /// Files outside the run directories.
    pub files: Vec<String>,
    /// Some run stalled or failed.
    pub flagged: bool,
    pub started_unix: u64,
    pub finished_unix: u64,
}

#[derive(Debug, Clone)]
pub struct SnapshotOutcome {
    pub checkpoint: usize,
    pub size: usize,
    pub rounds: usize,
    pub edge_count: usize,
    pub avg_degree: f64,
    pub degrees: Option<DegreeHistogram>,
    pub fit: Option<Result<SlopeFit, String>>,
    pub diameter: Option<DiameterReport>,
    pub ncp: Option<NcpCurve>,
    pub occupancy: Option<OccupancyHistogram>,
    pub cliquish: Option<DegreeHistogram>,
}

#[derive(Debug, Clone, Default)]
pub struct UnderlyingOutcome {
    pub degrees: Option<DegreeHistogram>,
    pub fit: Option<Result<SlopeFit, String>>,
    pub ncp: Option<NcpCurve>,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub record: RunRecord,
    pub snapshots: Vec<SnapshotOutcome>,
    pub underlying: Option<UnderlyingOutcome>,
}

/// Per-checkpoint totals over the runs that reached it.
#[derive(Debug, Clone)]
pub struct AggregateOutcome {
    pub checkpoint: usize,
    pub runs_reached: usize,
    pub degrees: Option<DegreeHistogram>,
    pub fit: Option<Result<SlopeFit, String>>,
    pub occupancy: Option<OccupancyHistogram>,
    pub cliquish: Option<DegreeHistogram>,
    pub cliquish_fit: Option<Result<SlopeFit, String>>,
    pub yule_reference: Option<OccupancyHistogram>,
    pub total_variation: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub out_dir: PathBuf,
    pub manifest: Manifest,
    pub runs: Vec<RunOutcome>,
    pub aggregates: Vec<AggregateOutcome>,
    /// Metrics of the shared potential network, when there is one.
    pub shared_underlying: Option<UnderlyingOutcome>,
}

/// Metadata written next to a snapshot's edge list.
pub fn snapshot_sidecar(snap: &InfectedGraph, checkpoint: Option<usize>, seed: u64, stalled_at: Option<usize>) -> serde_json::Value {
    serde_json::json!({
        "model": snap.params.model.name(),
        "params": snap.params,
        "seed": seed,
        "rounds": snap.rounds,
        "size": snap.size(),
        "edges": snap.graph.edge_count(),
        "checkpoint": checkpoint,
        "stalled": stalled_at.is_some(),
        "stalled_at": stalled_at,
        "exploration_edges": snap.exploration_edges.len(),
    })
}

fn unix_now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

/// Tracks files written below the output directory.
struct Files<'a> {
    root: &'a Path,
    list: Vec<String>,
}

impl<'a> Files<'a> {
    fn new(root: &'a Path) -> Self {
        Files { root, list: Vec::new() }
    }

    fn dir(&self, rel: &str) -> Result<PathBuf, ExperimentError> {
        let path = self.root.join(rel);
        std::fs::create_dir_all(&path).map_err(|e| ExperimentError::io(&path, e))?;
        Ok(path)
    }

    fn add(&mut self, rel: &str) -> PathBuf {
        self.list.push(rel.to_string());
        self.root.join(rel)
    }

    fn text(&mut self, rel: &str, text: &str) -> Result<(), ExperimentError> {
        let path = self.add(rel);
        std::fs::write(&path, text).map_err(|e| ExperimentError::io(&path, e))
    }
}

fn fit_of(hist: &DegreeHistogram, config: &ExperimentConfig) -> Option<Result<SlopeFit, String>> {
    config.metrics.fit.as_ref().map(|f| fit_power_law_slope(hist, f.options()).map_err(|e| e.to_string()))
}

/// Removes outputs of an earlier run in `out_dir` so the manifest stays complete.
fn clear_previous(out_dir: &Path) -> Result<(), ExperimentError> {
    let Ok(entries) = std::fs::read_dir(out_dir) else { return Ok(()) };
    for entry in entries.flatten() {
        let name = entry.file_name().to_string_lossy().to_string();
        let managed = matches!(name.as_str(), "manifest.json" | "config.toml" | "aggregate" | "plots" | "underlying")
            || (name.starts_with("run_") && name[4..].chars().all(|c| c.is_ascii_digit()));
        if !managed {
            continue;
        }
        let path = entry.path();
        let res = if path.is_dir() { std::fs::remove_dir_all(&path) } else { std::fs::remove_file(&path) };
        res.map_err(|e| ExperimentError::io(&path, e))?;
    }
    Ok(())
}

/// Runs every seed of `config`, writing per-run directories, aggregate
/// tables, plot tables and `manifest.json` below `options.out_dir`.
/// A run that fails is recorded in the manifest; its siblings still run.
pub fn run_experiment(config: &ExperimentConfig, options: &RunOptions) -> Result<ExperimentOutcome, ExperimentError> {
    config.validate()?;
    if options.workers == 0 {
        return Err(ExperimentError::Invalid(vec!["workers must be at least 1".into()]));
    }
    let started_unix = unix_now();
    let out = options.out_dir.as_path();
    std::fs::create_dir_all(out).map_err(|e| ExperimentError::io(out, e))?;
    clear_previous(out)?;
    let canonical = config.to_toml();
    let config_sha256 = format!("{:x}", Sha256::digest(canonical.as_bytes()));
    let mut files = Files::new(out);
    files.text("config.toml", &canonical)?;

    let shared_graph_seed = config.shared_graph.then(|| derive_seed(config.base_seed, GRAPH_STREAM));
    let shared = match shared_graph_seed {
        Some(seed) => Some(config.generator.generate(seed)?),
        None => None,
    };
    let shared_underlying = match (&shared, shared_graph_seed) {
        (Some(g), Some(seed)) => Some(measure_underlying(g, config, seed, "underlying", &mut files)?),
        _ => None,
    };
    let partition = config.generator.partition();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers)
        .build()
        .map_err(|e| ExperimentError::Invalid(vec![format!("thread pool: {e}")]))?;
    let runs: Vec<RunOutcome> = pool.install(|| {
        (0..config.runs)
            .into_par_iter()
            .map(|i| execute_run(config, i, shared.as_ref(), partition.as_ref(), out))
            .collect()
    });
    drop(shared);

    let aggregates = aggregate(config, &runs, &mut files)?;
    write_plots(config, &runs, &aggregates, shared_underlying.is_some(), &mut files)?;

    let manifest_rel = "manifest.json";
    files.list.push(manifest_rel.to_string());
    let mut manifest = Manifest {
        name: config.name.clone(),
        config_sha256,
        rng_algorithm: RNG_ALGORITHM.to_string(),
        crate_version: env!("CARGO_PKG_VERSION").to_string(),
        base_seed: config.base_seed,
        shared_graph_seed,
        flagged: runs.iter().any(|r| r.record.flagged()),
        runs: runs.iter().map(|r| r.record.clone()).collect(),
        files: files.list.clone(),
        started_unix,
        finished_unix: 0,
    };
    manifest.finished_unix = unix_now();
    let path = out.join(manifest_rel);
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    std::fs::write(&path, text + "\n").map_err(|e| ExperimentError::io(&path, e))?;
    Ok(ExperimentOutcome { out_dir: out.to_path_buf(), manifest, runs, aggregates, shared_underlying })
}

fn execute_run(
    config: &ExperimentConfig,
    index: usize,
    shared: Option<&Graph>,
    partition: Option<&CliquePartition>,
    out: &Path,
) -> RunOutcome {
    let seed = config.base_seed.wrapping_add(index as u64);
    let mut record = RunRecord {
        index,
        seed,
        graph_seed: derive_seed(seed, GRAPH_STREAM),
        cascade_seed: derive_seed(seed, CASCADE_STREAM),
        metric_seed: derive_seed(seed, METRIC_STREAM),
        stalled_at: None,
        error: None,
        snapshots: Vec::new(),
        files: Vec::new(),
    };
    if let Some(seed) = config.shared_graph.then(|| derive_seed(config.base_seed, GRAPH_STREAM)) {
        record.graph_seed = seed;
    }
    let mut files = Files::new(out);
    let mut outcome = RunOutcome { record, snapshots: Vec::new(), underlying: None };
    if let Err(e) = run_inner(config, shared, partition, &mut outcome, &mut files) {
        outcome.record.error = Some(e.to_string());
    }
    outcome.record.files = files.list;
    outcome
}

fn run_inner(
    config: &ExperimentConfig,
    shared: Option<&Graph>,
    partition: Option<&CliquePartition>,
    outcome: &mut RunOutcome,
    files: &mut Files,
) -> Result<(), ExperimentError> {
    let rec = &mut outcome.record;
    let run_dir = format!("run_{:03}", rec.index);
    files.dir(&run_dir)?;
    let owned;
    let g = match shared {
        Some(g) => g,
        None => {
            owned = config.generator.generate(rec.graph_seed)?;
            outcome.underlying = Some(measure_underlying(&owned, config, rec.graph_seed, &format!("{run_dir}/underlying"), files)?);
            &owned
        }
    };
    let schedule = config.schedule()?;
    let run = run_with_snapshots(g, &config.cascade, &schedule, rec.cascade_seed)?;
    rec.stalled_at = run.stalled_at;
    let diameter_mode = config.diameter_mode().transpose()?;
    let mut diameters = Vec::new();
    let mut densify = Vec::new();
    for (snap, &checkpoint) in run.snapshots.iter().zip(schedule.points()) {
        let dir = format!("{run_dir}/snapshot_{checkpoint}");
        files.dir(&dir)?;
        if let Err(e) = snap.check_containment(g) {
            return Err(ExperimentError::Invalid(vec![format!("snapshot {checkpoint}: {e}")]));
        }
        if config.snapshots.write_edges {
            let path = files.add(&format!("{dir}/graph.edges"));
            write_edge_list(&snap.graph, &path)?;
            let ids: String = snap.to_underlying.iter().map(|v| format!("{v}\n")).collect();
            files.text(&format!("{dir}/underlying_ids.txt"), &ids)?;
        }
        let meta = snapshot_sidecar(snap, Some(checkpoint), rec.cascade_seed, run.stalled_at);
        files.text(&format!("{dir}/meta.json"), &(serde_json::to_string_pretty(&meta).expect("json") + "\n"))?;

        let n = snap.size();
        let avg_degree = 2.0 * snap.graph.edge_count() as f64 / n as f64;
        let mut s = SnapshotOutcome {
            checkpoint,
            size: n,
            rounds: snap.rounds,
            edge_count: snap.graph.edge_count(),
            avg_degree,
            degrees: None,
            fit: None,
            diameter: None,
            ncp: None,
            occupancy: None,
            cliquish: None,
        };
        if config.metrics.degrees {
            let h = degree_distribution(&snap.graph);
            write_degree_csv(&files.add(&format!("{dir}/degrees.csv")), &h)?;
            s.fit = fit_of(&h, config);
            if let Some(fit) = &s.fit {
                write_fit_csv(&files.add(&format!("{dir}/fit.csv")), fit)?;
            }
            s.degrees = Some(h);
        }
        if let Some(mode) = diameter_mode {
            let report = diameter(&snap.graph, mode, rec.metric_seed)?;
            diameters.push((n, report.clone()));
            s.diameter = Some(report);
        }
        densify.push((n, avg_degree));
        if let Some(section) = config.metrics.ncp.as_ref().filter(|n| n.covers(checkpoint)) {
            let curve = ncp_heuristic(&snap.graph, &section.config(rec.metric_seed)?)?;
            write_ncp_csv(&files.add(&format!("{dir}/ncp.csv")), &curve)?;
            files.list.push(format!("{dir}/ncp_witnesses.txt"));
            s.ncp = Some(curve);
        }
        if let (true, Some(partition)) = (config.metrics.occupancy, partition) {
            let infected = VertexSet::from_members(g.node_count(), snap.to_underlying.iter().copied())?;
            let occ = clique_occupancy(partition, &infected)?;
            write_occupancy_csv(&files.add(&format!("{dir}/occupancy.csv")), &occ)?;
            let cl = cliquish_degrees(partition, &infected)?;
            write_degree_csv(&files.add(&format!("{dir}/cliquish_degrees.csv")), &cl)?;
            s.occupancy = Some(occ);
            s.cliquish = Some(cl);
        }
        rec.snapshots.push(SnapshotRecord { checkpoint, size: n, rounds: snap.rounds, edges: snap.graph.edge_count() });
        outcome.snapshots.push(s);
    }
    if diameter_mode.is_some() {
        write_diameter_csv(&files.add(&format!("{run_dir}/diameter.csv")), &diameters)?;
    }
    if config.metrics.densify {
        write_densify_csv(&files.add(&format!("{run_dir}/densify.csv")), &densify)?;
    }
    Ok(())
}

fn measure_underlying(
    g: &Graph,
    config: &ExperimentConfig,
    graph_seed: u64,
    dir: &str,
    files: &mut Files,
) -> Result<UnderlyingOutcome, ExperimentError> {
    let mut out = UnderlyingOutcome::default();
    let Some(section) = &config.metrics.underlying else { return Ok(out) };
    files.dir(dir)?;
    if section.degrees || section.fit {
        let h = degree_distribution(g);
        if section.degrees {
            write_degree_csv(&files.add(&format!("{dir}/degrees.csv")), &h)?;
        }
        if section.fit {
            out.fit = fit_of(&h, config);
            if let Some(fit) = &out.fit {
                write_fit_csv(&files.add(&format!("{dir}/fit.csv")), fit)?;
            }
        }
        out.degrees = Some(h);
    }
    if let Some(ncp) = &section.ncp {
        let curve = ncp_curve(g, ncp, derive_seed(graph_seed, METRIC_STREAM))?;
        write_ncp_csv(&files.add(&format!("{dir}/ncp.csv")), &curve)?;
        files.list.push(format!("{dir}/ncp_witnesses.txt"));
        out.ncp = Some(curve);
    }
    Ok(out)
}

fn ncp_curve(g: &Graph, section: &NcpSection, seed: u64) -> Result<NcpCurve, ExperimentError> {
    Ok(ncp_heuristic(g, &section.config(seed)?)?)
}

fn aggregate(config: &ExperimentConfig, runs: &[RunOutcome], files: &mut Files) -> Result<Vec<AggregateOutcome>, ExperimentError> {
    let schedule = config.schedule()?;
    let wants_any = config.metrics.degrees || config.metrics.occupancy;
    if wants_any {
        files.dir("aggregate")?;
    }
    let mut tv_rows = Vec::new();
    let mut out = Vec::new();
    for &cp in schedule.points() {
        let reached: Vec<&SnapshotOutcome> =
            runs.iter().filter_map(|r| r.snapshots.iter().find(|s| s.checkpoint == cp)).collect();
        let mut agg = AggregateOutcome {
            checkpoint: cp,
            runs_reached: reached.len(),
            degrees: None,
            fit: None,
            occupancy: None,
            cliquish: None,
            cliquish_fit: None,
            yule_reference: None,
            total_variation: None,
        };
        if config.metrics.degrees && !reached.is_empty() {
            let mut h = DegreeHistogram::default();
            for s in &reached {
                h.merge(s.degrees.as_ref().expect("degrees recorded"));
            }
            write_degree_csv(&files.add(&format!("aggregate/degrees_{cp}.csv")), &h)?;
            agg.fit = fit_of(&h, config);
            if let Some(fit) = &agg.fit {
                write_fit_csv(&files.add(&format!("aggregate/fit_{cp}.csv")), fit)?;
            }
            agg.degrees = Some(h);
        }
        if config.metrics.occupancy && !reached.is_empty() {
            let mut occ = OccupancyHistogram::default();
            let mut cl = DegreeHistogram::default();
            for s in &reached {
                occ.merge(s.occupancy.as_ref().expect("occupancy recorded"));
                cl.merge(s.cliquish.as_ref().expect("cliquish degrees recorded"));
            }
            write_occupancy_csv(&files.add(&format!("aggregate/occupancy_{cp}.csv")), &occ)?;
            write_degree_csv(&files.add(&format!("aggregate/cliquish_degrees_{cp}.csv")), &cl)?;
            agg.cliquish_fit = fit_of(&cl, config);
            if let Some(fit) = &agg.cliquish_fit {
                write_fit_csv(&files.add(&format!("aggregate/cliquish_fit_{cp}.csv")), fit)?;
            }
            if config.metrics.yule_reference_runs > 0 {
                let new_genus = config.generator.r / (1.0 + config.generator.r);
                let mut y = OccupancyHistogram::default();
                for i in 0..config.metrics.yule_reference_runs {
                    let seed = derive_seed(derive_seed(config.base_seed, YULE_STREAM), i as u64);
                    y.merge(&yule_process(YuleParams { new_genus, steps: cp, seed })?);
                }
                write_occupancy_csv(&files.add(&format!("aggregate/yule_reference_{cp}.csv")), &y)?;
                let tv = total_variation(&occ, &y)?;
                tv_rows.push(vec![cp.to_string(), tv.to_string(), new_genus.to_string(), reached.len().to_string()]);
                agg.total_variation = Some(tv);
                agg.yule_reference = Some(y);
            }
            agg.occupancy = Some(occ);
            agg.cliquish = Some(cl);
        }
        out.push(agg);
    }
    if !tv_rows.is_empty() {
        let path = files.add("aggregate/occupancy_tv.csv");
        let mut w = csv::Writer::from_path(&path).map_err(|e| ExperimentError::io(&path, e))?;
        w.write_record(["checkpoint", "total_variation", "new_genus", "runs"]).map_err(|e| ExperimentError::io(&path, e))?;
        for row in tv_rows {
            w.write_record(&row).map_err(|e| ExperimentError::io(&path, e))?;
        }
        w.flush().map_err(|e| ExperimentError::io(&path, e))?;
    }
    Ok(out)
}

fn write_plots(
    config: &ExperimentConfig,
    runs: &[RunOutcome],
    aggregates: &[AggregateOutcome],
    shared_underlying: bool,
    files: &mut Files,
) -> Result<(), ExperimentError> {
    let root = files.root.to_path_buf();
    let underlying_dir = if shared_underlying { "underlying".to_string() } else { "run_000/underlying".to_string() };
    let underlying = config.metrics.underlying.clone().unwrap_or_default();
    let ratio = config.metrics.fit.as_ref().map(|f| f.bin_ratio).unwrap_or(1.1);

    let mut degree_series: Vec<PlotSeries> = aggregates
        .iter()
        .filter(|a| a.degrees.is_some())
        .map(|a| PlotSeries {
            label: format!("snapshot_{}", a.checkpoint),
            csv: root.join(format!("aggregate/degrees_{}.csv", a.checkpoint)),
            fit: a.fit.as_ref().map(|_| root.join(format!("aggregate/fit_{}.csv", a.checkpoint))),
        })
        .collect();
    if underlying.degrees && root.join(&underlying_dir).join("degrees.csv").exists() {
        degree_series.push(PlotSeries {
            label: "underlying".into(),
            csv: root.join(format!("{underlying_dir}/degrees.csv")),
            fit: underlying.fit.then(|| root.join(format!("{underlying_dir}/fit.csv"))),
        });
    }
    let first_run_ok = runs.first().is_some_and(|r| r.record.error.is_none());
    let mut ncp_series: Vec<PlotSeries> = Vec::new();
    if config.metrics.ncp.is_some() && first_run_ok {
        for s in runs[0].snapshots.iter().filter(|s| s.ncp.is_some()) {
            ncp_series.push(PlotSeries {
                label: format!("snapshot_{}", s.checkpoint),
                csv: root.join(format!("run_000/snapshot_{}/ncp.csv", s.checkpoint)),
                fit: None,
            });
        }
    }
    if underlying.ncp.is_some() && root.join(&underlying_dir).join("ncp.csv").exists() {
        ncp_series.push(PlotSeries { label: "underlying".into(), csv: root.join(format!("{underlying_dir}/ncp.csv")), fit: None });
    }
    if degree_series.is_empty() && ncp_series.is_empty() {
        return Ok(());
    }
    files.dir("plots")?;
    if !degree_series.is_empty() {
        let table = emit_plot_data(&degree_series, ratio)?;
        table.write_csv(&files.add("plots/degrees.csv"))?;
    }
    if !ncp_series.is_empty() {
        let table = emit_plot_data(&ncp_series, ratio)?;
        table.write_csv(&files.add("plots/ncp.csv"))?;
    }
    Ok(())
}

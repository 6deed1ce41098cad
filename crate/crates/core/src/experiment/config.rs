use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::ExperimentError;
use crate::cascade::{CascadeParams, SnapshotSchedule};
use crate::generators::{GeneratorParams, ModelKind};
use crate::metrics::{DiameterMode, FitOptions, NcpConfig, NcpScope};

/// One experiment: a potential network, a transmission model, checkpoints
/// and the metrics to record, repeated over `runs` seeds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    #[serde(default = "one")]
    pub runs: usize,
    /// Run `i` uses seed `base_seed + i`.
    #[serde(default)]
    pub base_seed: u64,
    /// Build the potential network once from `base_seed` and share it
    /// across runs instead of drawing one per run.
    #[serde(default)]
    pub shared_graph: bool,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    pub generator: GeneratorParams,
    pub cascade: CascadeParams,
    #[serde(default)]
    pub snapshots: SnapshotSection,
    #[serde(default)]
    pub metrics: MetricsSection,
}

fn one() -> usize {
    1
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SnapshotSection {
    /// Infected-count checkpoints; defaults to the single point `m`.
    #[serde(default)]
    pub sizes: Vec<usize>,
    #[serde(default = "yes")]
    pub write_edges: bool,
}

impl Default for SnapshotSection {
    fn default() -> Self {
        SnapshotSection { sizes: Vec::new(), write_edges: true }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricsSection {
    #[serde(default)]
    pub degrees: bool,
    pub fit: Option<FitSection>,
    /// `"exact"` or `"sampled:K"`.
    pub diameter: Option<String>,
    #[serde(default)]
    pub densify: bool,
    pub ncp: Option<NcpSection>,
    /// Infected vertices per planted clique, and cliquish degrees.
    #[serde(default)]
    pub occupancy: bool,
    /// Yule runs for the occupancy reference distribution; 0 skips it.
    #[serde(default)]
    pub yule_reference_runs: usize,
    pub underlying: Option<UnderlyingSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitSection {
    #[serde(default = "fit_x_min")]
    pub x_min: f64,
    /// Unbounded when absent.
    pub x_max: Option<f64>,
    #[serde(default = "bin_ratio")]
    pub bin_ratio: f64,
}

fn fit_x_min() -> f64 {
    1.0
}

fn bin_ratio() -> f64 {
    1.1
}

impl FitSection {
    pub fn options(&self) -> FitOptions {
        FitOptions { bin_ratio: self.bin_ratio, x_min: self.x_min, x_max: self.x_max.unwrap_or(f64::INFINITY) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NcpSection {
    pub seeds: Option<usize>,
    pub teleports: Option<Vec<f64>>,
    pub tolerance: Option<f64>,
    pub work_budget: Option<f64>,
    pub bin_ratio: Option<f64>,
    /// `"largest-component"` (default) or `"whole-graph"`.
    pub scope: Option<String>,
    /// Checkpoints to profile; every checkpoint when absent.
    pub checkpoints: Option<Vec<usize>>,
}

impl NcpSection {
    pub fn covers(&self, checkpoint: usize) -> bool {
        self.checkpoints.as_ref().is_none_or(|c| c.contains(&checkpoint))
    }

    /// Heuristic settings with unset fields taken from [`NcpConfig::default`].
    pub fn config(&self, seed: u64) -> Result<NcpConfig, ExperimentError> {
        let d = NcpConfig::default();
        let scope = match &self.scope {
            Some(s) => s.parse::<NcpScope>().map_err(|e| ExperimentError::Invalid(vec![e.to_string()]))?,
            None => d.scope,
        };
        Ok(NcpConfig {
            seeds: self.seeds.unwrap_or(d.seeds),
            teleports: self.teleports.clone().unwrap_or(d.teleports),
            tolerance: self.tolerance.unwrap_or(d.tolerance),
            work_budget: self.work_budget.unwrap_or(d.work_budget),
            bin_ratio: self.bin_ratio.unwrap_or(d.bin_ratio),
            max_size: None,
            scope,
            seed,
        })
    }
}

/// Metrics of the potential network itself, for comparison.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnderlyingSection {
    #[serde(default)]
    pub degrees: bool,
    /// Uses the `[metrics.fit]` window.
    #[serde(default)]
    pub fit: bool,
    pub ncp: Option<NcpSection>,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, ExperimentError> {
        let config: ExperimentConfig = toml::from_str(text).map_err(|e| ExperimentError::Parse(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn schedule(&self) -> Result<SnapshotSchedule, ExperimentError> {
        let points = if self.snapshots.sizes.is_empty() { vec![self.cascade.m] } else { self.snapshots.sizes.clone() };
        SnapshotSchedule::new(points).map_err(|e| ExperimentError::Invalid(vec![e.to_string()]))
    }

    pub fn diameter_mode(&self) -> Option<Result<DiameterMode, ExperimentError>> {
        self.metrics
            .diameter
            .as_deref()
            .map(|s| s.parse().map_err(|e: crate::metrics::MetricError| ExperimentError::Invalid(vec![e.to_string()])))
    }

    /// Every problem with the config, reported together.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.name.is_empty() || !self.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_') {
            out.push(format!("name {:?} must be non-empty and use only letters, digits, '-' and '_'", self.name));
        }
        if self.runs == 0 {
            out.push("runs must be at least 1".into());
        }
        out.extend(self.generator.violations().into_iter().map(|v| format!("generator: {v}")));
        out.extend(self.cascade.violations(self.generator.n).into_iter().map(|v| format!("cascade: {v}")));
        match self.schedule() {
            Ok(s) if s.last() > self.cascade.m => {
                out.push(format!("snapshots: last checkpoint {} exceeds m = {}", s.last(), self.cascade.m))
            }
            Ok(_) => {}
            Err(e) => out.push(format!("snapshots: {e}")),
        }
        if let Some(Err(e)) = self.diameter_mode() {
            out.push(format!("metrics.diameter: {e}"));
        }
        if let Some(fit) = &self.metrics.fit {
            if !(fit.bin_ratio > 1.0) {
                out.push(format!("metrics.fit: bin_ratio {} must exceed 1", fit.bin_ratio));
            }
            if fit.x_max.is_some_and(|m| m < fit.x_min) {
                out.push("metrics.fit: x_max is below x_min".into());
            }
            if !self.metrics.degrees {
                out.push("metrics.fit needs metrics.degrees = true".into());
            }
        }
        let ncps = [("metrics.ncp", self.metrics.ncp.as_ref()), ("metrics.underlying.ncp", self.metrics.underlying.as_ref().and_then(|u| u.ncp.as_ref()))];
        for (label, ncp) in ncps {
            if let Some(ncp) = ncp {
                if let Err(e) = ncp.config(0).and_then(|c| c.validate().map_err(|e| ExperimentError::Invalid(vec![e.to_string()]))) {
                    out.push(format!("{label}: {e}"));
                }
            }
        }
        if let (Some(cps), Ok(schedule)) = (self.metrics.ncp.as_ref().and_then(|n| n.checkpoints.as_ref()), self.schedule()) {
            for cp in cps.iter().filter(|cp| !schedule.points().contains(cp)) {
                out.push(format!("metrics.ncp: checkpoint {cp} is not a snapshot size"));
            }
        }
        let planted = matches!(self.generator.model, ModelKind::Pc | ModelKind::Pcm);
        if self.metrics.occupancy && !planted {
            out.push("metrics.occupancy needs a pc or pcm generator".into());
        }
        if self.metrics.yule_reference_runs > 0 && !self.metrics.occupancy {
            out.push("metrics.yule_reference_runs needs metrics.occupancy = true".into());
        }
        if self.metrics.underlying.as_ref().is_some_and(|u| u.fit) && self.metrics.fit.is_none() {
            out.push("metrics.underlying.fit needs a [metrics.fit] window".into());
        }
        out
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(ExperimentError::Invalid(v))
        }
    }
}

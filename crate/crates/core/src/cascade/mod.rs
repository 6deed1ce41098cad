//! Cascade engines that grow a contagious network `H` over a potential graph `G`.
//!
//! * RETIG infects the outside endpoint of a uniformly random cut edge, one
//!   vertex at a time, and reports the induced subgraph on the infected set.
//! * RET / RETMIV run synchronous rounds from one (or `s`) random seeds: every
//!   undiscovered internal edge joins `H` with probability `alpha` and every
//!   boundary edge brings its outside endpoint in with probability `beta`.
//! * RETWE adds triadic exploration with probability `gamma` per open triple.
//!
//! Vertices of `H` are numbered in infection order, so every snapshot of a
//! run is a prefix of the next one.

mod forest_fire;
mod ret;
mod retig;

pub use forest_fire::{forest_fire, forest_fire_with, BurnLaw};
pub use ret::RetProcess;
pub use retig::RetigProcess;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error)]
pub enum CascadeError {
    #[error("invalid cascade parameters: {0}")]
    InvalidParams(String),
    #[error("cascade stalled after infecting {reached} vertices")]
    Stalled { reached: usize, partial: Box<InfectedGraph> },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransmissionModel {
    Retig,
    Ret,
    Retmiv,
    Retwe,
}

impl TransmissionModel {
    pub fn name(self) -> &'static str {
        match self {
            TransmissionModel::Retig => "retig",
            TransmissionModel::Ret => "ret",
            TransmissionModel::Retmiv => "retmiv",
            TransmissionModel::Retwe => "retwe",
        }
    }
}

impl std::str::FromStr for TransmissionModel {
    type Err = CascadeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "retig" => TransmissionModel::Retig,
            "ret" => TransmissionModel::Ret,
            "retmiv" => TransmissionModel::Retmiv,
            "retwe" => TransmissionModel::Retwe,
            other => return Err(CascadeError::InvalidParams(format!("unknown model {other:?}"))),
        })
    }
}

/// Transmission parameters. `m` counts every infected vertex, seeds included.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CascadeParams {
    pub model: TransmissionModel,
    pub m: usize,
    #[serde(default)]
    pub alpha: f64,
    #[serde(default)]
    pub beta: f64,
    #[serde(default)]
    pub gamma: f64,
    #[serde(default = "one")]
    pub s: usize,
}

fn one() -> usize {
    1
}

impl CascadeParams {
    pub fn retig(m: usize) -> Self {
        CascadeParams { model: TransmissionModel::Retig, m, alpha: 1.0, beta: 0.0, gamma: 0.0, s: 1 }
    }

    pub fn ret(m: usize, alpha: f64, beta: f64) -> Self {
        CascadeParams { model: TransmissionModel::Ret, m, alpha, beta, gamma: 0.0, s: 1 }
    }

    pub fn retmiv(m: usize, alpha: f64, beta: f64, s: usize) -> Self {
        CascadeParams { model: TransmissionModel::Retmiv, m, alpha, beta, gamma: 0.0, s }
    }

    pub fn retwe(m: usize, alpha: f64, beta: f64, gamma: f64) -> Self {
        CascadeParams { model: TransmissionModel::Retwe, m, alpha, beta, gamma, s: 1 }
    }

    /// Every violated precondition for a graph with `node_count` vertices.
    pub fn violations(&self, node_count: usize) -> Vec<String> {
        let mut out = Vec::new();
        for (name, p) in [("alpha", self.alpha), ("beta", self.beta), ("gamma", self.gamma)] {
            if !(0.0..=1.0).contains(&p) {
                out.push(format!("{name} = {p} is outside [0, 1]"));
            }
        }
        if self.m == 0 {
            out.push("m must be at least 1".into());
        }
        if self.m > node_count {
            out.push(format!("m = {} exceeds the {node_count} vertices of the graph", self.m));
        }
        if self.s == 0 || self.s > self.m {
            out.push(format!("need 1 <= s <= m (s = {}, m = {})", self.s, self.m));
        }
        if self.model != TransmissionModel::Retmiv && self.s != 1 {
            out.push(format!("{} starts from a single seed (s = {})", self.model.name(), self.s));
        }
        out
    }

    pub fn validate(&self, node_count: usize) -> Result<(), CascadeError> {
        let v = self.violations(node_count);
        if v.is_empty() {
            Ok(())
        } else {
            Err(CascadeError::InvalidParams(v.join("; ")))
        }
    }
}

/// The contagious network at one moment of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct InfectedGraph {
    /// `H`, with vertices numbered in infection order.
    pub graph: Graph,
    /// `to_underlying[h]` is the vertex of `G` that `h` stands for.
    pub to_underlying: Vec<usize>,
    /// Rounds for RET-family models, single infections for RETIG.
    pub rounds: usize,
    pub params: CascadeParams,
    /// Edges of `H` (as `H` IDs, `a < b`) that exploration added and that
    /// are absent from `G`.
    pub exploration_edges: Vec<(usize, usize)>,
}

impl InfectedGraph {
    pub fn size(&self) -> usize {
        self.graph.node_count()
    }

    /// Checks that every edge of `H` is an edge of `G`, apart from the
    /// flagged exploration edges.
    pub fn check_containment(&self, g: &Graph) -> Result<(), String> {
        let flagged: std::collections::HashSet<(usize, usize)> = self.exploration_edges.iter().copied().collect();
        for (a, b) in self.graph.edges() {
            let (u, v) = (self.to_underlying[a], self.to_underlying[b]);
            if !g.has_edge(u, v) && !flagged.contains(&(a, b)) {
                return Err(format!("edge ({a}, {b}) maps to ({u}, {v}), which is not in G"));
            }
        }
        Ok(())
    }
}

/// Strictly increasing infected-count checkpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnapshotSchedule(Vec<usize>);

impl SnapshotSchedule {
    pub fn new(points: Vec<usize>) -> Result<Self, CascadeError> {
        if points.is_empty() {
            return Err(CascadeError::InvalidParams("snapshot schedule is empty".into()));
        }
        if points[0] == 0 || points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CascadeError::InvalidParams(format!(
                "snapshot checkpoints must be positive and strictly increasing: {points:?}"
            )));
        }
        Ok(SnapshotSchedule(points))
    }

    pub fn single(m: usize) -> Self {
        SnapshotSchedule(vec![m.max(1)])
    }

    pub fn points(&self) -> &[usize] {
        &self.0
    }

    pub fn last(&self) -> usize {
        *self.0.last().expect("non-empty schedule")
    }
}

/// Parses a comma-separated list such as `625,5000,80000`.
impl std::str::FromStr for SnapshotSchedule {
    type Err = CascadeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let points = s
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CascadeError::InvalidParams(format!("snapshot list {s:?}: {e}")))?;
        SnapshotSchedule::new(points)
    }
}

/// Snapshots of one continuing run.
#[derive(Debug, Clone)]
pub struct SnapshotRun {
    /// One per reached checkpoint, in schedule order.
    pub snapshots: Vec<InfectedGraph>,
    /// Set when the cascade stalled; holds the size it reached.
    pub stalled_at: Option<usize>,
}

pub(crate) enum Step {
    Progress,
    Stalled,
}

/// Common driver interface of the two engines.
pub(crate) trait Process {
    fn infected(&self) -> usize;
    fn target(&self) -> usize;
    fn step(&mut self) -> Step;
    fn snapshot(&self) -> InfectedGraph;
}

fn drive<P: Process>(process: &mut P, schedule: &SnapshotSchedule, m: usize) -> SnapshotRun {
    let points = schedule.points();
    let mut snapshots = Vec::with_capacity(points.len());
    let mut stalled_at = None;
    loop {
        let count = process.infected();
        while snapshots.len() < points.len() && count >= points[snapshots.len()] {
            let snap = process.snapshot();
            snapshots.push(snap);
        }
        if count >= m || snapshots.len() == points.len() {
            break;
        }
        if let Step::Stalled = process.step() {
            stalled_at = Some(process.infected());
            break;
        }
    }
    SnapshotRun { snapshots, stalled_at }
}

/// Runs the cascade described by `params` on `g`, capturing `H` the first
/// time the infected count reaches each checkpoint of `schedule`.
pub fn run_with_snapshots(
    g: &Graph,
    params: &CascadeParams,
    schedule: &SnapshotSchedule,
    seed: u64,
) -> Result<SnapshotRun, CascadeError> {
    params.validate(g.node_count())?;
    if schedule.last() > params.m {
        return Err(CascadeError::InvalidParams(format!(
            "last checkpoint {} exceeds m = {}",
            schedule.last(),
            params.m
        )));
    }
    let run = match params.model {
        TransmissionModel::Retig => drive(&mut RetigProcess::new(g, params.clone(), seed)?, schedule, params.m),
        _ => drive(&mut RetProcess::new(g, params.clone(), seed)?, schedule, params.m),
    };
    Ok(run)
}

fn run_single(g: &Graph, params: CascadeParams, seed: u64) -> Result<InfectedGraph, CascadeError> {
    params.validate(g.node_count())?;
    match params.model {
        TransmissionModel::Retig => finish(RetigProcess::new(g, params, seed)?),
        _ => finish(RetProcess::new(g, params, seed)?),
    }
}

fn finish<P: Process>(mut process: P) -> Result<InfectedGraph, CascadeError> {
    let m = process.target();
    let mut run = drive(&mut process, &SnapshotSchedule::single(m), m);
    match run.stalled_at {
        Some(reached) => Err(CascadeError::Stalled { reached, partial: Box::new(process.snapshot()) }),
        None => Ok(run.snapshots.pop().expect("target reached")),
    }
}

/// RETIG: grow from one random vertex until `m` vertices are infected.
pub fn retig(g: &Graph, m: usize, seed: u64) -> Result<InfectedGraph, CascadeError> {
    run_single(g, CascadeParams::retig(m), seed)
}

/// RET (`s = 1`) or RETMIV (`s > 1`): synchronous rounds until at least `m`
/// vertices are infected. Overshoot in the final round is kept.
pub fn ret(g: &Graph, m: usize, alpha: f64, beta: f64, s: usize, seed: u64) -> Result<InfectedGraph, CascadeError> {
    let params = if s == 1 {
        CascadeParams::ret(m, alpha, beta)
    } else {
        CascadeParams::retmiv(m, alpha, beta, s)
    };
    run_single(g, params, seed)
}

/// RETWE: RET plus triadic exploration after every round.
pub fn retwe(g: &Graph, m: usize, alpha: f64, beta: f64, gamma: f64, seed: u64) -> Result<InfectedGraph, CascadeError> {
    run_single(g, CascadeParams::retwe(m, alpha, beta, gamma), seed)
}

/// Runs any model from its parameter block.
pub fn run_cascade(g: &Graph, params: &CascadeParams, seed: u64) -> Result<InfectedGraph, CascadeError> {
    run_single(g, params.clone(), seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_validation() {
        assert!(SnapshotSchedule::new(vec![625, 5000, 80000]).is_ok());
        assert!(SnapshotSchedule::new(vec![5, 5]).is_err());
        assert!(SnapshotSchedule::new(vec![]).is_err());
        assert!(SnapshotSchedule::new(vec![0, 3]).is_err());
    }

    #[test]
    fn param_violations() {
        let p = CascadeParams::ret(20, 1.5, -0.1);
        assert_eq!(p.violations(10).len(), 3);
        assert!(CascadeParams::retmiv(5, 0.5, 0.5, 6).validate(10).is_err());
        assert!(CascadeParams::retwe(5, 0.5, 0.5, 0.1).validate(10).is_ok());
    }
}

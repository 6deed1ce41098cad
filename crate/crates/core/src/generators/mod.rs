//! Potential-network generators: rewired rings and cliques, planted cliques
//! superimposed on a random regular graph, and the random baselines.

mod baseline;
mod cliques;
mod regular;
mod rewire;

pub use baseline::{baseline_graph, complete_graph, erdos_renyi, preferential_attachment, BaselineKind};
pub use cliques::{planted_clique_model, planted_community, planted_community_counted, CliquePartition};
pub use regular::random_regular;
pub use rewire::{watts_strogatz, watts_strogatz_counted};

use thiserror::Error;

use crate::graph::GraphError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenerateError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("random regular pairing failed after {restarts} restarts")]
    PairingFailed { restarts: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Which potential network to build. `d` is the mean degree (clique size for
/// the planted models that take `k` separately).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Ws,
    Pc,
    Pcm,
    Er,
    Pa,
    Complete,
}

impl std::str::FromStr for ModelKind {
    type Err = GenerateError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "ws" => ModelKind::Ws,
            "pc" => ModelKind::Pc,
            "pcm" => ModelKind::Pcm,
            "er" => ModelKind::Er,
            "pa" => ModelKind::Pa,
            "complete" => ModelKind::Complete,
            other => return Err(GenerateError::InvalidParams(format!("unknown model {other:?}"))),
        })
    }
}

/// Parameters shared by every generator. Unused fields are ignored by the
/// models that do not need them.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorParams {
    pub model: ModelKind,
    pub n: usize,
    #[serde(default)]
    pub d: usize,
    #[serde(default)]
    pub r: f64,
    #[serde(default)]
    pub k: usize,
}

impl GeneratorParams {
    /// All precondition violations, empty when the parameters are usable.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let (n, d, k, r) = (self.n, self.d, self.k, self.r);
        if !(0.0..=1.0).contains(&r) {
            out.push(format!("r = {r} is outside [0, 1]"));
        }
        match self.model {
            ModelKind::Ws => {
                if d % 2 != 0 || d < 2 || d >= n {
                    out.push(format!("ws needs even d with 2 <= d < n (d = {d}, n = {n})"));
                }
            }
            ModelKind::Pc => {
                if d < 2 || n % d != 0 {
                    out.push(format!("pc needs d >= 2 dividing n (d = {d}, n = {n})"));
                }
            }
            ModelKind::Pcm => {
                if k == 0 || n % k != 0 {
                    out.push(format!("pcm needs k dividing n (k = {k}, n = {n})"));
                }
                match regular_degree(r, k) {
                    Some(rk) if rk >= n => out.push(format!("pcm needs r*k < n (r*k = {rk})")),
                    Some(rk) if (rk * n) % 2 != 0 => out.push(format!("pcm needs n*r*k even (r*k = {rk})")),
                    Some(_) => {}
                    None => out.push(format!("pcm needs integral r*k (r*k = {})", r * k as f64)),
                }
            }
            ModelKind::Er => {
                if n < 2 || d > n - 1 {
                    out.push(format!("er needs d <= n - 1 (d = {d}, n = {n})"));
                }
            }
            ModelKind::Pa => {
                if d % 2 != 0 || d < 2 || d / 2 + 1 > n {
                    out.push(format!("pa needs even d >= 2 with d/2 + 1 <= n (d = {d}, n = {n})"));
                }
            }
            ModelKind::Complete => {}
        }
        out
    }

    pub fn generate(&self, seed: u64) -> Result<crate::Graph, GenerateError> {
        match self.model {
            ModelKind::Ws => watts_strogatz(self.n, self.d, self.r, seed),
            ModelKind::Pc => planted_community(self.n, self.d, self.r, seed),
            ModelKind::Pcm => planted_clique_model(self.n, self.k, self.r, seed),
            ModelKind::Er => baseline_graph(BaselineKind::ErdosRenyi, self.n, self.d, seed),
            ModelKind::Pa => baseline_graph(BaselineKind::PreferentialAttachment, self.n, self.d, seed),
            ModelKind::Complete => baseline_graph(BaselineKind::Complete, self.n, self.d, seed),
        }
    }

    /// Clique partition of the planted models, if any.
    pub fn partition(&self) -> Option<CliquePartition> {
        match self.model {
            ModelKind::Pc => Some(CliquePartition::contiguous(self.n, self.d)),
            ModelKind::Pcm => Some(CliquePartition::contiguous(self.n, self.k)),
            _ => None,
        }
    }
}

/// `r * k` as an integer when it is one (up to floating-point noise).
pub(crate) fn regular_degree(r: f64, k: usize) -> Option<usize> {
    let rk = r * k as f64;
    let rounded = rk.round();
    ((rk - rounded).abs() < 1e-9 && rounded >= 0.0).then_some(rounded as usize)
}

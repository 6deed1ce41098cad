//! Structural diagnostics of a graph: degree tails, diameter, densification
//! and the network community profile.

mod bridges;
mod conductance;
mod degree;
mod diameter;
mod fit;
mod ncp;
mod ppr;

pub use bridges::{bridges, whiskers, Whisker};
pub use conductance::{conductance, conductance_of, cut_stats, Conductance, CutStats};
pub use degree::{densification_series, log_bin_edges, log_binned, degree_distribution, DegreeHistogram, LogBin};
pub use diameter::{diameter, DiameterMode, DiameterReport};
pub use fit::{discrete_mle_exponent, fit_points, fit_power_law_slope, hurwitz_zeta, FitOptions, SlopeFit};
pub use ncp::{ncp_heuristic, NcpConfig, NcpCurve, NcpPoint, NcpScope, WitnessMethod};
pub use ppr::{push_ppr, PushResult};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricError {
    #[error("power-law fit undefined: {0}")]
    FitUndefined(String),
    #[error("conductance undefined: {0}")]
    ConductanceUndefined(String),
    #[error("graph is empty")]
    EmptyGraph,
    #[error("invalid metric configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
}

//! Reference computations that the cascade engines and metrics are checked
//! against: a Yule process, per-clique occupancy counts and brute-force
//! minimum conductance.

mod exhaustive;

use std::collections::BTreeMap;

use rand::Rng;
use thiserror::Error;

use crate::generators::CliquePartition;
use crate::graph::{GraphError, VertexSet};
use crate::metrics::DegreeHistogram;
use crate::rng::seeded;

pub use exhaustive::{exhaustive_min_conductance, exhaustive_profile, EXHAUSTIVE_NODE_LIMIT};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("invalid oracle parameters: {0}")]
    InvalidParams(String),
    #[error("graph has {node_count} nodes; exhaustive search is limited to {limit}")]
    TooLarge { node_count: usize, limit: usize },
    #[error("partition covers {partition} nodes but the infected set has universe {set}")]
    PartitionMismatch { partition: usize, set: usize },
    #[error("no set of size {0} has defined conductance")]
    NoDefinedSet(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Histogram of group sizes (genus sizes, or infected vertices per clique).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OccupancyHistogram {
    /// size -> number of groups of that size; sizes are at least 1
    pub counts: BTreeMap<usize, usize>,
    /// Number of runs merged into this histogram.
    pub runs: usize,
}

impl OccupancyHistogram {
    pub fn from_sizes<I: IntoIterator<Item = usize>>(sizes: I) -> Self {
        let mut h = OccupancyHistogram { counts: BTreeMap::new(), runs: 1 };
        for s in sizes.into_iter().filter(|&s| s > 0) {
            *h.counts.entry(s).or_insert(0) += 1;
        }
        h
    }

    pub fn merge(&mut self, other: &OccupancyHistogram) {
        for (&s, &c) in &other.counts {
            *self.counts.entry(s).or_insert(0) += c;
        }
        self.runs += other.runs;
    }

    pub fn group_count(&self) -> usize {
        self.counts.values().sum()
    }

    /// Sum of size times count: every member across all runs.
    pub fn total_members(&self) -> usize {
        self.counts.iter().map(|(s, c)| s * c).sum()
    }

    /// Fraction of groups with each size.
    pub fn distribution(&self) -> BTreeMap<usize, f64> {
        let total = self.group_count() as f64;
        self.counts.iter().map(|(&s, &c)| (s, c as f64 / total)).collect()
    }

    /// The counts as a degree histogram, so the degree-tail tools apply.
    pub fn as_histogram(&self) -> DegreeHistogram {
        let mut h = DegreeHistogram::default();
        for (&s, &c) in &self.counts {
            h.add(s, c);
        }
        h
    }
}

/// Half the L1 distance between the normalized size distributions.
pub fn total_variation(a: &OccupancyHistogram, b: &OccupancyHistogram) -> Result<f64, OracleError> {
    if a.group_count() == 0 || b.group_count() == 0 {
        return Err(OracleError::InvalidParams("total variation needs two non-empty histograms".into()));
    }
    let (pa, pb) = (a.distribution(), b.distribution());
    let mut sum = 0.0;
    for s in pa.keys().chain(pb.keys()).collect::<std::collections::BTreeSet<_>>() {
        sum += (pa.get(s).copied().unwrap_or(0.0) - pb.get(s).copied().unwrap_or(0.0)).abs();
    }
    Ok(sum / 2.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YuleParams {
    /// Probability that a new species founds a new genus.
    pub new_genus: f64,
    /// Species in total, counting the founder of the first genus.
    pub steps: usize,
    pub seed: u64,
}

/// Genus sizes of a Yule process. Starting from one species, each further
/// species picks a uniform existing species and joins its genus with
/// probability `1 - new_genus`, otherwise founds a new genus.
pub fn yule_process(params: YuleParams) -> Result<OccupancyHistogram, OracleError> {
    let YuleParams { new_genus, steps, seed } = params;
    if !(0.0..=1.0).contains(&new_genus) {
        return Err(OracleError::InvalidParams(format!("new-genus probability {new_genus} outside [0, 1]")));
    }
    if steps == 0 {
        return Err(OracleError::InvalidParams("steps must be at least 1".into()));
    }
    let mut rng = seeded(seed);
    let mut genus_of: Vec<u32> = Vec::with_capacity(steps);
    let mut sizes: Vec<usize> = vec![1];
    genus_of.push(0);
    for _ in 1..steps {
        if rng.gen_bool(new_genus) {
            genus_of.push(sizes.len() as u32);
            sizes.push(1);
        } else {
            let g = genus_of[rng.gen_range(0..genus_of.len())];
            genus_of.push(g);
            sizes[g as usize] += 1;
        }
    }
    Ok(OccupancyHistogram::from_sizes(sizes))
}

/// Infected vertices per clique, leaving out cliques with none.
pub fn clique_occupancy(partition: &CliquePartition, infected: &VertexSet) -> Result<OccupancyHistogram, OracleError> {
    if partition.node_count() != infected.universe() {
        return Err(OracleError::PartitionMismatch { partition: partition.node_count(), set: infected.universe() });
    }
    let mut per_clique = vec![0usize; partition.clique_count()];
    for &v in infected.members() {
        per_clique[partition.clique_of(v)] += 1;
    }
    Ok(OccupancyHistogram::from_sizes(per_clique))
}

/// For each infected vertex, the number of infected vertices in its own
/// clique other than itself (its degree inside the clique when all edges
/// among infected vertices are present).
pub fn cliquish_degrees(partition: &CliquePartition, infected: &VertexSet) -> Result<DegreeHistogram, OracleError> {
    let occupancy = clique_occupancy(partition, infected)?;
    let mut h = DegreeHistogram::default();
    for (&size, &cliques) in &occupancy.counts {
        h.add(size - 1, size * cliques);
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn yule_degenerate_cases() {
        let h = yule_process(YuleParams { new_genus: 1.0, steps: 100, seed: 1 }).unwrap();
        assert_eq!(h.counts.into_iter().collect::<Vec<_>>(), vec![(1, 100)]);
        let h = yule_process(YuleParams { new_genus: 0.0, steps: 100, seed: 1 }).unwrap();
        assert_eq!(h.counts.into_iter().collect::<Vec<_>>(), vec![(100, 1)]);
        assert!(yule_process(YuleParams { new_genus: 0.5, steps: 0, seed: 1 }).is_err());
        assert!(yule_process(YuleParams { new_genus: 1.5, steps: 5, seed: 1 }).is_err());
    }

    #[test]
    fn yule_genus_count_mean() {
        let steps = 20_000;
        let alpha = 0.3;
        let mean: f64 = (0..20)
            .map(|s| yule_process(YuleParams { new_genus: alpha, steps, seed: s }).unwrap().group_count() as f64)
            .sum::<f64>()
            / 20.0;
        let expected = 1.0 + alpha * (steps - 1) as f64;
        // Per-run sd is sqrt(steps * 0.21) ~ 65; the mean of 20 has sd ~ 15.
        assert!((mean - expected).abs() < 60.0, "{mean} vs {expected}");
    }

    #[test]
    fn occupancy_examples() {
        let p = CliquePartition::contiguous(12, 4);
        let all = VertexSet::full(12);
        let h = clique_occupancy(&p, &all).unwrap();
        assert_eq!(h.counts.into_iter().collect::<Vec<_>>(), vec![(4, 3)]);
        let one = VertexSet::from_members(12, [7]).unwrap();
        assert_eq!(clique_occupancy(&p, &one).unwrap().counts.into_iter().collect::<Vec<_>>(), vec![(1, 1)]);
        assert!(clique_occupancy(&p, &VertexSet::new(10)).is_err());
        let some = VertexSet::from_members(12, [0, 1, 5, 11]).unwrap();
        let h = clique_occupancy(&p, &some).unwrap();
        assert_eq!(h.total_members(), 4);
        let d = cliquish_degrees(&p, &some).unwrap();
        assert_eq!(d.counts.into_iter().collect::<Vec<_>>(), vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn total_variation_bounds() {
        let a = OccupancyHistogram::from_sizes([1, 1, 2]);
        let b = OccupancyHistogram::from_sizes([3]);
        assert_eq!(total_variation(&a, &a).unwrap(), 0.0);
        assert_eq!(total_variation(&a, &b).unwrap(), 1.0);
        let c = OccupancyHistogram::from_sizes([1, 2]);
        assert!((total_variation(&a, &c).unwrap() - 1.0 / 6.0).abs() < 1e-12);
    }
}

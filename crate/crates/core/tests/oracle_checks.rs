//! Library results against independent references: sampled distributions
//! with known parameters, exact modes and exhaustive search.

use contagion_lab::generators::{planted_community_counted, watts_strogatz_counted};
use contagion_lab::metrics::{
    conductance_of, diameter, fit_power_law_slope, hurwitz_zeta, ncp_heuristic, DegreeHistogram, DiameterMode,
    FitOptions, NcpConfig, NcpScope,
};
use contagion_lab::oracles::{exhaustive_min_conductance, yule_process, OccupancyHistogram, YuleParams};
use contagion_lab::rng::{derive_seed, seeded};
use contagion_lab::{Graph, VertexSet};
use rand::Rng;

/// Exact inverse-transform draws from P(k) = k^-2 / zeta(2), k >= 1.
fn power_law_sample(count: usize, seed: u64) -> DegreeHistogram {
    const TABLE: usize = 1_000_000;
    let z = hurwitz_zeta(2.0, 1.0);
    let mut cdf = Vec::with_capacity(TABLE);
    let mut acc = 0.0;
    for k in 1..=TABLE {
        acc += (k as f64).powi(-2) / z;
        cdf.push(acc);
    }
    let mut rng = seeded(seed);
    let mut hist = DegreeHistogram::default();
    let mut drawn = 0;
    while drawn < count {
        let u: f64 = rng.gen();
        let k = cdf.partition_point(|&c| c < u) + 1;
        if k <= TABLE {
            hist.add(k, 1);
            drawn += 1;
        }
    }
    hist
}

#[test]
fn power_law_exponent_recovered() {
    let hist = power_law_sample(100_000, 17);
    let fit = fit_power_law_slope(&hist, FitOptions { x_min: 1.0, ..FitOptions::default() }).unwrap();
    assert!((fit.exponent + 2.0).abs() <= 0.1, "least-squares slope {}", fit.exponent);
    let mle = fit.mle_exponent.unwrap();
    assert!((mle + 2.0).abs() <= 0.1, "mle exponent {mle}");
}

#[test]
fn yule_matches_closed_form() {
    // New-genus probability 1/2 gives the Yule-Simon law with shape 2:
    // P(k) = 4 / (k (k + 1) (k + 2)).
    let mut total = OccupancyHistogram::default();
    for run in 0..10 {
        total.merge(&yule_process(YuleParams { new_genus: 0.5, steps: 100_000, seed: derive_seed(5, run) }).unwrap());
    }
    let dist = total.distribution();
    let groups = total.group_count() as f64;
    for k in 1..=6usize {
        let expected = 4.0 / (k * (k + 1) * (k + 2)) as f64;
        let got = dist.get(&k).copied().unwrap_or(0.0);
        let se = (expected * (1.0 - expected) / groups).sqrt();
        assert!((got - expected).abs() < 4.0 * se, "P({k}) = {got}, expected {expected}");
    }
    let genera = total.group_count() as f64 / 10.0;
    assert!((genera - 50_000.0).abs() < 3.0 * (100_000.0f64 * 0.25).sqrt(), "mean genera {genera}");
}

#[test]
fn ws_rewired_count_is_binomial() {
    let (edges, r) = (50_000.0f64, 0.1);
    let sigma = (edges * r * (1.0 - r)).sqrt();
    let mean: f64 =
        (0..20).map(|s| watts_strogatz_counted(10_000, 10, r, s).unwrap().1 as f64).sum::<f64>() / 20.0;
    assert!((mean - edges * r).abs() <= 3.0 * sigma / 20f64.sqrt(), "mean rewired {mean}");
}

#[test]
fn pc_rewired_count_is_binomial() {
    let (n, d, r) = (10_000, 20, 0.1);
    let edges = (n * (d - 1) / 2) as f64;
    let sigma = (edges * r * (1.0 - r)).sqrt();
    let mean: f64 =
        (0..20).map(|s| planted_community_counted(n, d, r, s).unwrap().1 as f64).sum::<f64>() / 20.0;
    assert!((mean - edges * r).abs() <= 3.0 * sigma / 20f64.sqrt(), "mean rewired {mean}");
}

fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = seeded(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

#[test]
fn sampled_diameter_tracks_exact() {
    for seed in 0..20 {
        let g = random_graph(400 + 80 * seed as usize, 0.01, seed);
        let exact = diameter(&g, DiameterMode::Exact, 0).unwrap();
        let sampled = diameter(&g, DiameterMode::Sampled(100), seed).unwrap();
        assert!(sampled.diameter <= exact.diameter);
        assert!(exact.diameter - sampled.diameter <= 1, "seed {seed}: {} vs {}", sampled.diameter, exact.diameter);
        assert!((sampled.effective_diameter_90 - exact.effective_diameter_90).abs() <= 0.5, "seed {seed}");
        assert!(sampled.effective_diameter_90 <= sampled.diameter as f64);
        assert!(exact.effective_diameter_90 <= exact.diameter as f64);
    }
}

#[test]
fn heuristic_never_beats_exhaustive() {
    let mut rng = seeded(99);
    for case in 0..200u64 {
        let n = rng.gen_range(4..=14);
        let p = rng.gen_range(0.15..0.7);
        let g = random_graph(n, p, derive_seed(7, case));
        if g.edge_count() == 0 {
            continue;
        }
        let scope = if case % 2 == 0 { NcpScope::WholeGraph } else { NcpScope::LargestComponent };
        let config = NcpConfig { seeds: 10, bin_ratio: 1.0001, scope, seed: case, ..NcpConfig::default() };
        let curve = ncp_heuristic(&g, &config).unwrap();
        for point in &curve.points {
            let (best, witness) = exhaustive_min_conductance(&g, point.witness_size).unwrap();
            assert!(point.exact >= best, "case {case} size {}: {} < {}", point.witness_size, point.conductance, best.value());
            let set = VertexSet::from_members(n, witness.iter().copied()).unwrap();
            assert_eq!(conductance_of(&g, &set).unwrap(), best, "case {case}");
            let own = VertexSet::from_members(n, point.witness.iter().copied()).unwrap();
            assert_eq!(conductance_of(&g, &own).unwrap(), point.exact, "case {case}");
        }
    }
}

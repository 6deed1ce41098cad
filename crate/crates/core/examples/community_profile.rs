//! Network community profile: the heuristic against exhaustive search on a
//! small barbell, then on a cascade and its potential network.

use contagion_lab::cascade::{run_cascade, CascadeParams};
use contagion_lab::generators::watts_strogatz;
use contagion_lab::metrics::{ncp_heuristic, NcpConfig};
use contagion_lab::oracles::exhaustive_profile;
use contagion_lab::Graph;

fn barbell(k: usize) -> Graph {
    let mut edges = Vec::new();
    for side in [0, k] {
        for i in 0..k {
            for j in i + 1..k {
                edges.push((side + i, side + j));
            }
        }
    }
    edges.push((k - 1, k));
    Graph::from_edges(2 * k, &edges).expect("valid barbell")
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let b = barbell(5);
    let curve = ncp_heuristic(&b, &NcpConfig { bin_ratio: 1.0001, ..NcpConfig::default() })?;
    println!("barbell of two K5: size, heuristic, exhaustive");
    for (size, best) in exhaustive_profile(&b)? {
        let heuristic = curve.point_for_size(size).map(|p| p.conductance);
        let exact = best.map(|(phi, _)| phi.value());
        println!("  {size}  {:.4}  {:.4}", heuristic.unwrap_or(f64::NAN), exact.unwrap_or(f64::NAN));
    }

    let g = watts_strogatz(20_000, 40, 0.1, 4)?;
    let h = run_cascade(&g, &CascadeParams::ret(2000, 0.7, 0.01), 4)?;
    let config = NcpConfig { seeds: 30, ..NcpConfig::default() };
    for (label, graph) in [("cascade", &h.graph), ("ring", &g)] {
        let curve = ncp_heuristic(graph, &NcpConfig { max_size: Some(2000), ..config.clone() })?;
        let min = curve.min_point().expect("non-empty profile");
        println!(
            "{label}: minimum conductance {:.4} in bin [{}, {}] by {}",
            min.conductance,
            min.bin_lo,
            min.bin_hi,
            min.method.name()
        );
        curve.verify(graph).map_err(|e| e.to_string())?;
    }
    Ok(())
}

//! RETIG on the planted-clique model: infected vertices per clique against
//! a Yule process with new-genus probability r/(1+r).

use contagion_lab::cascade::retig;
use contagion_lab::generators::{planted_clique_model, CliquePartition};
use contagion_lab::metrics::{fit_power_law_slope, FitOptions};
use contagion_lab::oracles::{
    clique_occupancy, cliquish_degrees, total_variation, yule_process, OccupancyHistogram, YuleParams,
};
use contagion_lab::rng::derive_seed;
use contagion_lab::VertexSet;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (n, k, r, m) = (20_000, 200, 0.2, 300);
    let g = planted_clique_model(n, k, r, 1)?;
    let partition = CliquePartition::contiguous(n, k);
    let mut occupancy = OccupancyHistogram::default();
    let mut cliquish = contagion_lab::metrics::DegreeHistogram::default();
    for run in 0..40 {
        let h = retig(&g, m, derive_seed(2, run))?;
        let infected = VertexSet::from_members(n, h.to_underlying.iter().copied())?;
        occupancy.merge(&clique_occupancy(&partition, &infected)?);
        cliquish.merge(&cliquish_degrees(&partition, &infected)?);
    }
    let mut yule = OccupancyHistogram::default();
    for run in 0..200 {
        yule.merge(&yule_process(YuleParams { new_genus: r / (1.0 + r), steps: m, seed: derive_seed(3, run) })?);
    }
    println!("occupancy  cascade share  yule share");
    let (a, b) = (occupancy.distribution(), yule.distribution());
    for size in 1..=8 {
        println!("{size:>9}  {:>13.4}  {:>10.4}", a.get(&size).unwrap_or(&0.0), b.get(&size).unwrap_or(&0.0));
    }
    println!("total variation distance {:.4}", total_variation(&occupancy, &yule)?);
    let fit = fit_power_law_slope(&cliquish, FitOptions { x_min: 3.0, x_max: 80.0, ..FitOptions::default() })?;
    println!("cliquish-degree slope {:.3}, reference {:.3}", fit.exponent, -1.0 - r);
    Ok(())
}

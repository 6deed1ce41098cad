//! Tracks diameter, effective diameter and average degree as a cascade grows.

use contagion_lab::cascade::{run_with_snapshots, CascadeParams, SnapshotSchedule};
use contagion_lab::generators::watts_strogatz;
use contagion_lab::metrics::{densification_series, diameter, DiameterMode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = watts_strogatz(20_000, 40, 0.1, 2)?;
    let schedule = SnapshotSchedule::new(vec![250, 500, 1000, 2000, 4000, 8000])?;
    let run = run_with_snapshots(&g, &CascadeParams::ret(8000, 0.7, 0.01), &schedule, 9)?;
    let densify = densification_series(&run.snapshots);
    println!("{:>6} {:>9} {:>10} {:>11}", "size", "diameter", "effective", "avg degree");
    for (snap, (_, avg)) in run.snapshots.iter().zip(&densify) {
        let d = diameter(&snap.graph, DiameterMode::Sampled(50), 1)?;
        println!("{:>6} {:>9} {:>10.2} {:>11.2}", snap.size(), d.diameter, d.effective_diameter_90, avg);
    }
    Ok(())
}

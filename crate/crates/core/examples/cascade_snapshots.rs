//! Grows RET, RETIG and RETWE cascades over one small-world ring and prints
//! each snapshot of the continuing run.

use contagion_lab::cascade::{run_with_snapshots, CascadeParams, SnapshotSchedule};
use contagion_lab::generators::watts_strogatz;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = watts_strogatz(20_000, 20, 0.1, 1)?;
    let schedule = SnapshotSchedule::new(vec![100, 1000, 4000])?;
    let models = [
        CascadeParams::ret(4000, 0.7, 0.01),
        CascadeParams::retig(4000),
        CascadeParams::retmiv(4000, 0.7, 0.01, 5),
        CascadeParams::retwe(4000, 0.7, 0.01, 0.001),
    ];
    for params in &models {
        let run = run_with_snapshots(&g, params, &schedule, 42)?;
        println!("{}", params.model.name());
        for snap in &run.snapshots {
            snap.check_containment(&g).map_err(|e| e.to_string())?;
            println!(
                "  {:>5} infected  {:>6} edges  avg degree {:>5.2}  {:>4} rounds  {} exploration edges",
                snap.size(),
                snap.graph.edge_count(),
                2.0 * snap.graph.edge_count() as f64 / snap.size() as f64,
                snap.rounds,
                snap.exploration_edges.len()
            );
        }
        if let Some(reached) = run.stalled_at {
            println!("  stalled at {reached}");
        }
    }
    Ok(())
}

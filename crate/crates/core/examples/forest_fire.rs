//! Grows undirected forest fire graphs at several burning probabilities.

use contagion_lab::cascade::{forest_fire, forest_fire_with, BurnLaw};
use contagion_lab::metrics::{diameter, DiameterMode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>5} {:>8} {:>10} {:>9}", "p", "edges", "avg degree", "diameter");
    for p in [0.0, 0.1, 0.2] {
        let g = forest_fire(1000, p, 11)?;
        let d = diameter(&g, DiameterMode::Exact, 0)?;
        let avg = 2.0 * g.edge_count() as f64 / g.node_count() as f64;
        println!("{p:>5} {:>8} {avg:>10.2} {:>9}", g.edge_count(), d.diameter);
    }
    let g = forest_fire_with(1000, 0.2, BurnLaw::Binomial { trials: 4 }, 11)?;
    println!("binomial burn law, p = 0.2: {} edges", g.edge_count());
    Ok(())
}

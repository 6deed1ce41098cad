//! Builds each potential network at a small size and prints its shape.

use contagion_lab::generators::{GeneratorParams, ModelKind};
use contagion_lab::graph::format_edge_list;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let models = [
        GeneratorParams { model: ModelKind::Ws, n: 1000, d: 10, r: 0.1, k: 0 },
        GeneratorParams { model: ModelKind::Pc, n: 1000, d: 10, r: 0.1, k: 0 },
        GeneratorParams { model: ModelKind::Pcm, n: 1000, d: 0, r: 0.2, k: 20 },
        GeneratorParams { model: ModelKind::Er, n: 1000, d: 10, r: 0.0, k: 0 },
        GeneratorParams { model: ModelKind::Pa, n: 1000, d: 10, r: 0.0, k: 0 },
        GeneratorParams { model: ModelKind::Complete, n: 50, d: 0, r: 0.0, k: 0 },
    ];
    println!("{:<9} {:>6} {:>7} {:>8} {:>9}", "model", "nodes", "edges", "max deg", "connected");
    for params in &models {
        let g = params.generate(7)?;
        println!(
            "{:<9} {:>6} {:>7} {:>8} {:>9}",
            format!("{:?}", params.model).to_lowercase(),
            g.node_count(),
            g.edge_count(),
            g.max_degree(),
            g.is_connected()
        );
    }

    let tiny = GeneratorParams { model: ModelKind::Ws, n: 8, d: 2, r: 0.0, k: 0 }.generate(0)?;
    print!("\nring of 8 as an edge list:\n{}", format_edge_list(&tiny));
    Ok(())
}

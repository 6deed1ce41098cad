//! Fits the log-log degree slope of a RET cascade and of the ring it grew on.

use contagion_lab::cascade::run_cascade;
use contagion_lab::cascade::CascadeParams;
use contagion_lab::generators::watts_strogatz;
use contagion_lab::metrics::{degree_distribution, fit_power_law_slope, log_binned, FitOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = watts_strogatz(20_000, 40, 0.1, 3)?;
    let h = run_cascade(&g, &CascadeParams::ret(2000, 0.7, 0.01), 5)?;
    let window = FitOptions { x_min: 3.0, x_max: 80.0, ..FitOptions::default() };

    let cascade = degree_distribution(&h.graph);
    println!("cascade of {} vertices, log-binned density:", h.size());
    for bin in log_binned(&cascade, window.bin_ratio) {
        println!("  [{:>3}, {:>3}]  {:.5}", bin.lo, bin.hi, bin.density);
    }
    let fit = fit_power_law_slope(&cascade, window)?;
    println!(
        "cascade slope {:.3} (MLE exponent {:.3}) from {} bins",
        fit.exponent,
        fit.mle_exponent.unwrap_or(f64::NAN),
        fit.points_used
    );
    match fit_power_law_slope(&degree_distribution(&g), window) {
        Ok(f) => println!("ring slope {:.3}", f.exponent),
        Err(e) => println!("ring slope: {e}"),
    }
    Ok(())
}

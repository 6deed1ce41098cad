use super::degree::{log_binned, DegreeHistogram};
use super::MetricError;

/// Fit window and binning for [`fit_power_law_slope`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    pub bin_ratio: f64,
    pub x_min: f64,
    pub x_max: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions { bin_ratio: 1.1, x_min: 1.0, x_max: f64::INFINITY }
    }
}

/// Straight-line fit of log density against log degree.
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeFit {
    /// Slope of the log-log line; negative for a decaying tail.
    pub exponent: f64,
    pub intercept: f64,
    pub x_min: f64,
    pub x_max: f64,
    /// Root-mean-square residual in natural-log units.
    pub residual: f64,
    pub points_used: usize,
    /// Negated discrete maximum-likelihood exponent over raw values
    /// `>= x_min`, when it could be computed.
    pub mle_exponent: Option<f64>,
    pub method: &'static str,
}

impl SlopeFit {
    /// The fitted line evaluated at `x`.
    pub fn guideline(&self, x: f64) -> f64 {
        (self.intercept + self.exponent * x.ln()).exp()
    }
}

/// Least squares on `(ln x, ln y)` over points with `x` in the window and
/// `y > 0`. Needs at least three such points with two distinct `x`.
pub fn fit_points(points: &[(f64, f64)], x_min: f64, x_max: f64) -> Result<SlopeFit, MetricError> {
    let used: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(x, y)| x >= x_min && x <= x_max && y > 0.0 && x > 0.0)
        .map(|&(x, y)| (x.ln(), y.ln()))
        .collect();
    if used.len() < 3 {
        return Err(MetricError::FitUndefined(format!(
            "{} nonzero points in [{x_min}, {x_max}], need 3",
            used.len()
        )));
    }
    let n = used.len() as f64;
    let mx = used.iter().map(|p| p.0).sum::<f64>() / n;
    let my = used.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = used.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = used.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx <= 0.0 {
        return Err(MetricError::FitUndefined("all points share one x".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = used.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    Ok(SlopeFit {
        exponent: slope,
        intercept,
        x_min,
        x_max,
        residual: (rss / n).sqrt(),
        points_used: used.len(),
        mle_exponent: None,
        method: "log-binned least squares",
    })
}

/// Log-binned least-squares slope of a degree histogram, with the discrete
/// MLE exponent as a cross-check.
pub fn fit_power_law_slope(hist: &DegreeHistogram, opts: FitOptions) -> Result<SlopeFit, MetricError> {
    if hist.distinct_degrees() < 2 {
        return Err(MetricError::FitUndefined(format!(
            "histogram has {} distinct degree(s)",
            hist.distinct_degrees()
        )));
    }
    let points: Vec<(f64, f64)> = log_binned(hist, opts.bin_ratio).iter().map(|b| (b.center, b.density)).collect();
    let mut fit = fit_points(&points, opts.x_min, opts.x_max)?;
    let x_min = opts.x_min.max(1.0).ceil() as usize;
    fit.mle_exponent = discrete_mle_exponent(hist, x_min).map(|a| -a);
    Ok(fit)
}

/// Hurwitz zeta `sum_{k>=0} (q + k)^-s` for `s > 1`, `q > 0`, by Euler-Maclaurin.
pub fn hurwitz_zeta(s: f64, q: f64) -> f64 {
    const N: usize = 12;
    // B2, B4, B6, B8, B10 divided by the matching factorials.
    const COEFF: [f64; 5] = [
        1.0 / 12.0,
        -1.0 / 720.0,
        1.0 / 30240.0,
        -1.0 / 1209600.0,
        1.0 / 47900160.0,
    ];
    let mut sum: f64 = (0..N).map(|k| (q + k as f64).powf(-s)).sum();
    let a = q + N as f64;
    sum += a.powf(1.0 - s) / (s - 1.0) + 0.5 * a.powf(-s);
    // Rising factorial s (s+1) ... (s+2j-2) times a^(-s-2j+1).
    let mut rising = s;
    let mut power = a.powf(-s - 1.0);
    for (j, c) in COEFF.iter().enumerate() {
        sum += c * rising * power;
        let k = 2.0 * j as f64;
        rising *= (s + k + 1.0) * (s + k + 2.0);
        power /= a * a;
    }
    sum
}

/// Discrete power-law MLE exponent (positive) over values `>= x_min`,
/// maximising `-a sum ln x - N ln zeta(a, x_min)` on `a` in `(1, 8]`.
pub fn discrete_mle_exponent(hist: &DegreeHistogram, x_min: usize) -> Option<f64> {
    let x_min = x_min.max(1);
    let (mut count, mut log_sum) = (0.0, 0.0);
    for (&d, &c) in hist.counts.range(x_min..) {
        count += c as f64;
        log_sum += c as f64 * (d as f64).ln();
    }
    if count < 2.0 {
        return None;
    }
    let loglik = |a: f64| -a * log_sum - count * hurwitz_zeta(a, x_min as f64).ln();
    let (mut lo, mut hi) = (1.0001f64, 8.0f64);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let (mut f1, mut f2) = (loglik(x1), loglik(x2));
    for _ in 0..200 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = loglik(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = loglik(x1);
        }
        if hi - lo < 1e-9 {
            break;
        }
    }
    Some((lo + hi) / 2.0)
}

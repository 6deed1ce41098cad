//! CSV schemas of the metric outputs and the merged plot tables.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use super::ExperimentError;
use crate::metrics::{log_bin_edges, Conductance, DegreeHistogram, DiameterReport, NcpCurve, SlopeFit};
use crate::oracles::OccupancyHistogram;

pub const DEGREE_HEADER: [&str; 2] = ["degree", "count"];
pub const NCP_HEADER: [&str; 4] = ["bin_size", "conductance", "witness_size", "method"];
pub const DIAMETER_HEADER: [&str; 3] = ["size", "diameter", "effective_diameter_90"];
pub const DENSIFY_HEADER: [&str; 2] = ["size", "avg_degree"];
pub const OCCUPANCY_HEADER: [&str; 2] = ["occupancy", "cliques"];
pub const FIT_HEADER: [&str; 9] =
    ["status", "exponent", "intercept", "x_min", "x_max", "residual", "points_used", "mle_exponent", "method"];

fn write_rows<I>(path: &Path, header: &[&str], rows: I) -> Result<(), ExperimentError>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut w = csv::Writer::from_path(path).map_err(|e| ExperimentError::io(path, e))?;
    w.write_record(header).map_err(|e| ExperimentError::io(path, e))?;
    for row in rows {
        w.write_record(&row).map_err(|e| ExperimentError::io(path, e))?;
    }
    w.flush().map_err(|e| ExperimentError::io(path, e))
}

pub fn write_degree_csv(path: &Path, hist: &DegreeHistogram) -> Result<(), ExperimentError> {
    write_rows(path, &DEGREE_HEADER, hist.counts.iter().map(|(d, c)| vec![d.to_string(), c.to_string()]))
}

pub fn write_occupancy_csv(path: &Path, hist: &OccupancyHistogram) -> Result<(), ExperimentError> {
    write_rows(path, &OCCUPANCY_HEADER, hist.counts.iter().map(|(s, c)| vec![s.to_string(), c.to_string()]))
}

/// Exhaustive profile in the `ncp.csv` schema; sizes without a defined set are skipped.
pub fn write_exact_ncp_csv(path: &Path, profile: &[(usize, Option<(Conductance, Vec<usize>)>)]) -> Result<(), ExperimentError> {
    write_rows(
        path,
        &NCP_HEADER,
        profile.iter().filter_map(|(size, best)| {
            best.as_ref().map(|(phi, set)| {
                vec![size.to_string(), phi.value().to_string(), set.len().to_string(), "exhaustive".to_string()]
            })
        }),
    )
}

/// One row: the fit, or `undefined: <reason>` with empty fields.
pub fn write_fit_csv(path: &Path, fit: &Result<SlopeFit, String>) -> Result<(), ExperimentError> {
    let row = match fit {
        Ok(f) => vec![
            "ok".to_string(),
            f.exponent.to_string(),
            f.intercept.to_string(),
            f.x_min.to_string(),
            f.x_max.to_string(),
            f.residual.to_string(),
            f.points_used.to_string(),
            f.mle_exponent.map(|m| m.to_string()).unwrap_or_default(),
            f.method.to_string(),
        ],
        Err(reason) => {
            let mut row = vec![format!("undefined: {reason}")];
            row.resize(FIT_HEADER.len(), String::new());
            row
        }
    };
    write_rows(path, &FIT_HEADER, [row])
}

/// `ncp.csv` plus `ncp_witnesses.txt`, one `bin_size: v v v` line per point.
pub fn write_ncp_csv(path: &Path, curve: &NcpCurve) -> Result<(), ExperimentError> {
    write_rows(
        path,
        &NCP_HEADER,
        curve.points.iter().map(|p| {
            vec![p.bin_lo.to_string(), p.conductance.to_string(), p.witness_size.to_string(), p.method.name().to_string()]
        }),
    )?;
    let mut text = String::new();
    for p in &curve.points {
        text.push_str(&p.bin_lo.to_string());
        text.push(':');
        for v in &p.witness {
            text.push(' ');
            text.push_str(&v.to_string());
        }
        text.push('\n');
    }
    let witnesses = path.with_file_name("ncp_witnesses.txt");
    std::fs::write(&witnesses, text).map_err(|e| ExperimentError::io(&witnesses, e))
}

pub fn write_diameter_csv(path: &Path, rows: &[(usize, DiameterReport)]) -> Result<(), ExperimentError> {
    write_rows(
        path,
        &DIAMETER_HEADER,
        rows.iter().map(|(size, r)| vec![size.to_string(), r.diameter.to_string(), r.effective_diameter_90.to_string()]),
    )
}

pub fn write_densify_csv(path: &Path, rows: &[(usize, f64)]) -> Result<(), ExperimentError> {
    write_rows(path, &DENSIFY_HEADER, rows.iter().map(|(s, a)| vec![s.to_string(), a.to_string()]))
}

fn read_table(path: &Path) -> Result<(Vec<String>, Vec<Vec<String>>), ExperimentError> {
    let mut r = csv::Reader::from_path(path).map_err(|e| ExperimentError::io(path, e))?;
    let header: Vec<String> = r.headers().map_err(|e| ExperimentError::io(path, e))?.iter().map(String::from).collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        rows.push(rec.map_err(|e| ExperimentError::io(path, e))?.iter().map(String::from).collect());
    }
    Ok((header, rows))
}

fn check_header(path: &Path, found: &[String], expected: &[&str]) -> Result<(), ExperimentError> {
    for (i, want) in expected.iter().enumerate() {
        let got = found.get(i).map(String::as_str).unwrap_or("");
        if got != *want {
            return Err(ExperimentError::Schema {
                file: path.display().to_string(),
                expected: want.to_string(),
                found: got.to_string(),
            });
        }
    }
    if found.len() > expected.len() {
        return Err(ExperimentError::Schema {
            file: path.display().to_string(),
            expected: String::new(),
            found: found[expected.len()].clone(),
        });
    }
    Ok(())
}

fn parse_cell<T: std::str::FromStr>(path: &Path, column: &str, cell: &str) -> Result<T, ExperimentError> {
    cell.trim().parse().map_err(|_| ExperimentError::Io {
        path: path.display().to_string(),
        message: format!("column {column:?}: cannot parse {cell:?}"),
    })
}

pub fn read_degree_csv(path: &Path) -> Result<DegreeHistogram, ExperimentError> {
    let (header, rows) = read_table(path)?;
    check_header(path, &header, &DEGREE_HEADER)?;
    let mut h = DegreeHistogram::default();
    for row in rows {
        h.add(parse_cell(path, "degree", &row[0])?, parse_cell(path, "count", &row[1])?);
    }
    Ok(h)
}

/// `(exponent, intercept)` from a fit CSV, when its status is `ok`.
fn read_fit_line(path: &Path) -> Result<Option<(f64, f64)>, ExperimentError> {
    let (header, rows) = read_table(path)?;
    check_header(path, &header, &FIT_HEADER)?;
    match rows.first() {
        Some(row) if row[0] == "ok" => {
            Ok(Some((parse_cell(path, "exponent", &row[1])?, parse_cell(path, "intercept", &row[2])?)))
        }
        _ => Ok(None),
    }
}

/// One input of [`emit_plot_data`].
#[derive(Debug, Clone, PartialEq)]
pub struct PlotSeries {
    pub label: String,
    /// A `degrees.csv` or `ncp.csv` file; all series must share the schema.
    pub csv: PathBuf,
    /// Optional `fit.csv` whose line is evaluated on the bin centers.
    pub fit: Option<PathBuf>,
}

/// A merged table; empty cells are `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl PlotTable {
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let i = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn write_csv(&self, path: &Path) -> Result<(), ExperimentError> {
        let header: Vec<&str> = self.header.iter().map(String::as_str).collect();
        write_rows(
            path,
            &header,
            self.rows.iter().map(|r| r.iter().map(|c| c.map(|x| x.to_string()).unwrap_or_default()).collect()),
        )
    }
}

/// Merges degree tables onto shared log-bin centers (one density column per
/// series, plus a guideline column per series with a fit), or NCP tables
/// onto shared bin sizes.
pub fn emit_plot_data(series: &[PlotSeries], bin_ratio: f64) -> Result<PlotTable, ExperimentError> {
    let first = series.first().ok_or_else(|| ExperimentError::Invalid(vec!["no series to plot".into()]))?;
    if !(bin_ratio > 1.0) {
        return Err(ExperimentError::Invalid(vec![format!("bin ratio {bin_ratio} must exceed 1")]));
    }
    let (header, _) = read_table(&first.csv)?;
    if header.first().map(String::as_str) == Some(NCP_HEADER[0]) {
        ncp_table(series)
    } else {
        degree_table(series, bin_ratio)
    }
}

fn degree_table(series: &[PlotSeries], bin_ratio: f64) -> Result<PlotTable, ExperimentError> {
    let mut hists = Vec::new();
    let mut fits = Vec::new();
    for s in series {
        hists.push(read_degree_csv(&s.csv)?);
        fits.push(match &s.fit {
            Some(path) => read_fit_line(path)?,
            None => None,
        });
    }
    let max = hists.iter().map(DegreeHistogram::max_degree).max().unwrap_or(0);
    let mut header: Vec<String> = ["bin_lo", "bin_hi", "bin_center"].map(String::from).to_vec();
    for (s, fit) in series.iter().zip(&fits) {
        header.push(format!("density_{}", s.label));
        if fit.is_some() {
            header.push(format!("guideline_{}", s.label));
        }
    }
    let mut rows = Vec::new();
    for (lo, hi) in log_bin_edges(max, bin_ratio) {
        let center = ((lo * hi) as f64).sqrt();
        let mut row = vec![Some(lo as f64), Some(hi as f64), Some(center)];
        let mut any = false;
        for (h, fit) in hists.iter().zip(&fits) {
            let count: usize = h.counts.range(lo..=hi).map(|(_, &c)| c).sum();
            let density = count as f64 / (hi - lo + 1) as f64 / h.node_count.max(1) as f64;
            any |= count > 0;
            row.push((count > 0).then_some(density));
            if let Some((slope, intercept)) = fit {
                row.push(Some((intercept + slope * center.ln()).exp()));
            }
        }
        if any {
            rows.push(row);
        }
    }
    Ok(PlotTable { header, rows })
}

fn ncp_table(series: &[PlotSeries]) -> Result<PlotTable, ExperimentError> {
    let mut columns: Vec<BTreeMap<usize, f64>> = Vec::new();
    for s in series {
        let (header, rows) = read_table(&s.csv)?;
        check_header(&s.csv, &header, &NCP_HEADER)?;
        let mut col = BTreeMap::new();
        for row in rows {
            col.insert(parse_cell(&s.csv, "bin_size", &row[0])?, parse_cell(&s.csv, "conductance", &row[1])?);
        }
        columns.push(col);
    }
    let sizes: BTreeSet<usize> = columns.iter().flat_map(|c| c.keys().copied()).collect();
    let mut header = vec!["bin_size".to_string()];
    header.extend(series.iter().map(|s| format!("conductance_{}", s.label)));
    let rows = sizes
        .into_iter()
        .map(|size| {
            let mut row = vec![Some(size as f64)];
            row.extend(columns.iter().map(|c| c.get(&size).copied()));
            row
        })
        .collect();
    Ok(PlotTable { header, rows })
}

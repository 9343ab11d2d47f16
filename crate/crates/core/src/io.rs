//! CSV input for sampled functions and map samples.
//!
//! Sampled functions are rows `x_1,...,x_n,re,im` covering a full tensor grid
//! of cell midpoints in any order. Map samples are rows
//! `s_1,...,s_k,t_1,...,t_l`. Both files start with a header line.

use std::collections::BTreeMap;
use std::io::Read;

use num_complex::Complex64;
use thiserror::Error;

use crate::decomposition::{Grid, NormError, SampledFunction};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IoError {
    #[error("csv: {0}")]
    Csv(String),
    #[error("bad shape: {0}")]
    Shape(String),
    #[error(transparent)]
    Norm(#[from] NormError),
}

fn rows<R: Read>(input: R) -> Result<(Vec<String>, Vec<Vec<f64>>), IoError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(input);
    let header = reader
        .headers()
        .map_err(|e| IoError::Csv(e.to_string()))?
        .iter()
        .map(str::to_owned)
        .collect::<Vec<_>>();
    let mut out = Vec::new();
    for (line, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| IoError::Csv(e.to_string()))?;
        let vals = rec
            .iter()
            .map(|s| s.parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| IoError::Csv(format!("row {}: {e}", line + 2)))?;
        if vals.len() != header.len() {
            return Err(IoError::Shape(format!(
                "row {} has {} fields, header has {}",
                line + 2,
                vals.len(),
                header.len()
            )));
        }
        out.push(vals);
    }
    Ok((header, out))
}

/// Distinct values of a sorted axis, merged within a relative tolerance.
fn axis_values(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    let mut out: Vec<f64> = Vec::new();
    for x in v {
        match out.last() {
            Some(&last) if (x - last).abs() <= 1e-9 * x.abs().max(1.0) => {}
            _ => out.push(x),
        }
    }
    out
}

/// Reads `coords...,re,im` rows into a [`SampledFunction`].
pub fn read_sampled_function<R: Read>(input: R) -> Result<SampledFunction, IoError> {
    let (header, data) = rows(input)?;
    if header.len() < 3 {
        return Err(IoError::Shape(
            "need at least one coordinate plus re,im".into(),
        ));
    }
    let dim = header.len() - 2;
    let axes: Vec<Vec<f64>> = (0..dim)
        .map(|a| axis_values(data.iter().map(|r| r[a]).collect()))
        .collect();
    let mut lo = Vec::with_capacity(dim);
    let mut step = Vec::with_capacity(dim);
    for (a, vals) in axes.iter().enumerate() {
        if vals.len() < 2 {
            return Err(IoError::Shape(format!(
                "axis {a} has fewer than two points"
            )));
        }
        let h = (vals[vals.len() - 1] - vals[0]) / (vals.len() - 1) as f64;
        if vals
            .windows(2)
            .any(|w| ((w[1] - w[0]) - h).abs() > 1e-6 * h)
        {
            return Err(IoError::Shape(format!("axis {a} is not uniformly spaced")));
        }
        lo.push(vals[0] - h / 2.0);
        step.push(h);
    }
    let counts: Vec<usize> = axes.iter().map(Vec::len).collect();
    let grid = Grid::new(lo, step, counts.clone())?;
    if data.len() != grid.len() {
        return Err(IoError::Shape(format!(
            "{} rows for a grid of {} points",
            data.len(),
            grid.len()
        )));
    }
    let mut values = vec![Complex64::new(0.0, 0.0); grid.len()];
    let mut seen = BTreeMap::new();
    for r in &data {
        let mut flat = 0;
        for a in 0..dim {
            let k = ((r[a] - grid.lo()[a]) / grid.step()[a] - 0.5).round() as usize;
            flat = flat * counts[a] + k;
        }
        if seen.insert(flat, ()).is_some() {
            return Err(IoError::Shape(format!(
                "duplicate grid point {:?}",
                &r[..dim]
            )));
        }
        values[flat] = Complex64::new(r[dim], r[dim + 1]);
    }
    Ok(SampledFunction::new(grid, values)?)
}

/// Source and target coordinates of a sampled map.
pub type PointPairs = Vec<(Vec<f64>, Vec<f64>)>;

/// Reads `src...,dst...` rows; the first `source_dim` columns are the
/// source point.
pub fn read_map_sample<R: Read>(input: R, source_dim: usize) -> Result<PointPairs, IoError> {
    let (header, data) = rows(input)?;
    if source_dim == 0 || header.len() <= source_dim {
        return Err(IoError::Shape(format!(
            "{} columns cannot hold a {source_dim}-dimensional source and a target",
            header.len()
        )));
    }
    Ok(data
        .into_iter()
        .map(|r| (r[..source_dim].to_vec(), r[source_dim..].to_vec()))
        .collect())
}

//! Raw metric tables.
//!
//! A table holds `g_ij` for every node in node-major order (the last axis
//! varies fastest), each node as `n²` row-major values. Files ending in
//! `.bin` are little-endian `f64`; anything else is text with numbers
//! separated by whitespace or commas and `#` starting a comment.

use std::path::Path;

use anyhow::{bail, Context};
use dirac_forge_core::geometry::{Axis, ChartGrid, MetricField};
use dirac_forge_core::RMat;

use crate::config::AxisSpec;

pub fn grid(axes: &[AxisSpec]) -> anyhow::Result<ChartGrid> {
    let axes = axes
        .iter()
        .map(|a| {
            if a.periodic {
                Axis::periodic(a.nodes, a.start, a.end - a.start)
            } else {
                Axis::closed(a.nodes, a.start, a.end)
            }
        })
        .collect();
    Ok(ChartGrid::new(axes)?)
}

/// Parse a text table into numbers.
pub fn parse_text(text: &str) -> anyhow::Result<Vec<f64>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let v: f64 = tok
                .parse()
                .with_context(|| format!("line {}: '{tok}' is not a number", i + 1))?;
            out.push(v);
        }
    }
    Ok(out)
}

pub fn parse_binary(bytes: &[u8]) -> anyhow::Result<Vec<f64>> {
    if bytes.len() % 8 != 0 {
        bail!("binary table has {} bytes, not a multiple of 8", bytes.len());
    }
    Ok(bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8")))
        .collect())
}

/// Metric field from flat node-major values.
pub fn metric_from_values(grid: ChartGrid, values: &[f64]) -> anyhow::Result<MetricField> {
    let n = grid.dim();
    let want = grid.len() * n * n;
    if values.len() != want {
        bail!(
            "table holds {} values, grid of {} nodes in dimension {n} needs {want}",
            values.len(),
            grid.len()
        );
    }
    let g = values
        .chunks_exact(n * n)
        .map(|c| RMat::from_fn(n, n, |i, j| c[i * n + j]))
        .collect();
    Ok(MetricField::from_samples(grid, g)?)
}

pub fn read_metric(path: &Path, axes: &[AxisSpec]) -> anyhow::Result<MetricField> {
    let grid = grid(axes)?;
    let values = if path.extension().is_some_and(|e| e == "bin") {
        parse_binary(&std::fs::read(path).with_context(|| format!("reading {}", path.display()))?)
    } else {
        parse_text(&std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?)
    }
    .with_context(|| format!("parsing {}", path.display()))?;
    metric_from_values(grid, &values).with_context(|| format!("metric table {}", path.display()))
}

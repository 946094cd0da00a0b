//! Paired-series error statistics and histogram data for scatter plots.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricsError {
    #[error("paired series is empty")]
    Empty,
    #[error("paired series lengths differ: test {test}, ref {reference}")]
    LengthMismatch { test: usize, reference: usize },
    #[error("non-finite value at index {0}")]
    NonFinite(usize),
    #[error("bin edges must be strictly increasing with at least two entries")]
    BadEdges,
}

/// Test values (e.g. SAR-derived) against reference values (buoy-derived).
#[derive(Debug, Clone, PartialEq)]
pub struct PairedSeries {
    test: Vec<f64>,
    reference: Vec<f64>,
}

impl PairedSeries {
    pub fn new(test: Vec<f64>, reference: Vec<f64>) -> Result<Self, MetricsError> {
        if test.len() != reference.len() {
            return Err(MetricsError::LengthMismatch {
                test: test.len(),
                reference: reference.len(),
            });
        }
        if test.is_empty() {
            return Err(MetricsError::Empty);
        }
        if let Some(i) = test
            .iter()
            .zip(&reference)
            .position(|(a, b)| !(a.is_finite() && b.is_finite()))
        {
            return Err(MetricsError::NonFinite(i));
        }
        Ok(PairedSeries { test, reference })
    }

    pub fn len(&self) -> usize {
        self.test.len()
    }

    pub fn is_empty(&self) -> bool {
        self.test.is_empty()
    }

    pub fn test(&self) -> &[f64] {
        &self.test
    }

    pub fn reference(&self) -> &[f64] {
        &self.reference
    }

    pub fn swapped(&self) -> PairedSeries {
        PairedSeries {
            test: self.reference.clone(),
            reference: self.test.clone(),
        }
    }

    fn differences(&self) -> impl Iterator<Item = f64> + '_ {
        self.test.iter().zip(&self.reference).map(|(t, r)| t - r)
    }
}

/// Mean of `test − ref`.
pub fn bias(p: &PairedSeries) -> f64 {
    p.differences().sum::<f64>() / p.len() as f64
}

/// Root mean square of `test − ref`.
pub fn rmse(p: &PairedSeries) -> f64 {
    (p.differences().map(|d| d * d).sum::<f64>() / p.len() as f64).sqrt()
}

/// Population (1/N) standard deviation of the differences about the bias.
pub fn std_dev(p: &PairedSeries) -> f64 {
    let b = bias(p);
    (p.differences().map(|d| (d - b) * (d - b)).sum::<f64>() / p.len() as f64).sqrt()
}

/// 2-D histogram of (test, ref) pairs; x is `ref`, y is `test`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityGrid {
    pub x_edges: Vec<f64>,
    pub y_edges: Vec<f64>,
    /// Row-major, `counts[iy][ix]`.
    pub counts: Vec<Vec<u64>>,
    /// Pairs that fell outside the grid.
    pub excluded: u64,
}

impl DensityGrid {
    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    /// `(x_center, y_center, count)` per cell, x fastest.
    pub fn cells(&self) -> impl Iterator<Item = (f64, f64, u64)> + '_ {
        self.counts.iter().enumerate().flat_map(move |(iy, row)| {
            let yc = 0.5 * (self.y_edges[iy] + self.y_edges[iy + 1]);
            row.iter()
                .enumerate()
                .map(move |(ix, &c)| (0.5 * (self.x_edges[ix] + self.x_edges[ix + 1]), yc, c))
        })
    }
}

/// Bins are half-open `[e_i, e_{i+1})` except the last, which is closed.
pub fn density_grid(
    p: &PairedSeries,
    x_edges: &[f64],
    y_edges: &[f64],
) -> Result<DensityGrid, MetricsError> {
    check_edges(x_edges)?;
    check_edges(y_edges)?;
    let mut counts = vec![vec![0u64; x_edges.len() - 1]; y_edges.len() - 1];
    let mut excluded = 0;
    for (&y, &x) in p.test.iter().zip(&p.reference) {
        match (bin_index(x_edges, x), bin_index(y_edges, y)) {
            (Some(ix), Some(iy)) => counts[iy][ix] += 1,
            _ => excluded += 1,
        }
    }
    Ok(DensityGrid {
        x_edges: x_edges.to_vec(),
        y_edges: y_edges.to_vec(),
        counts,
        excluded,
    })
}

/// `n` equal-width bins spanning `[lo, hi]`.
pub fn uniform_edges(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let w = (hi - lo) / n as f64;
    (0..=n)
        .map(|i| if i == n { hi } else { lo + w * i as f64 })
        .collect()
}

fn check_edges(e: &[f64]) -> Result<(), MetricsError> {
    let ok = e.len() >= 2 && e.iter().all(|v| v.is_finite()) && e.windows(2).all(|w| w[0] < w[1]);
    ok.then_some(()).ok_or(MetricsError::BadEdges)
}

pub(crate) fn bin_index(edges: &[f64], v: f64) -> Option<usize> {
    let last = edges.len() - 1;
    if !(v >= edges[0] && v <= edges[last]) {
        return None;
    }
    if v == edges[last] {
        return Some(last - 1);
    }
    // first edge strictly greater than v, minus one
    Some(edges.partition_point(|e| *e <= v) - 1)
}

/// Mean of `values` within each `[e_i, e_{i+1})` bin of `keys`; `None` for empty bins.
pub fn binned_means(
    keys: &[f64],
    values: &[f64],
    edges: &[f64],
) -> Result<Vec<(usize, Option<f64>)>, MetricsError> {
    check_edges(edges)?;
    let mut sum = vec![0.0; edges.len() - 1];
    let mut n = vec![0usize; edges.len() - 1];
    for (&k, &v) in keys.iter().zip(values) {
        if let Some(i) = bin_index(edges, k) {
            sum[i] += v;
            n[i] += 1;
        }
    }
    Ok(sum
        .into_iter()
        .zip(n)
        .map(|(s, c)| (c, (c > 0).then(|| s / c as f64)))
        .collect())
}

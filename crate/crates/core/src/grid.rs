use crate::{Error, Result};

/// A strictly increasing grid of nonnegative evaluation arguments.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalGrid {
    points: Vec<f64>,
}

impl EvalGrid {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::validation("empty evaluation grid"));
        }
        if points.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::validation("grid entries must be finite and >= 0"));
        }
        if points.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::validation("grid must be strictly increasing"));
        }
        Ok(EvalGrid { points })
    }

    /// Regular grid `lo, lo+step, ..., <= hi` (inclusive up to rounding slack).
    pub fn regular(lo: f64, hi: f64, step: f64) -> Result<Self> {
        if step <= 0.0 || hi < lo {
            return Err(Error::validation("need step > 0 and hi >= lo"));
        }
        let n = ((hi - lo) / step + 1.5).floor() as usize;
        let pts: Vec<f64> = (0..n)
            .map(|i| lo + step * i as f64)
            .filter(|&x| x <= hi + step * 1e-9)
            .collect();
        EvalGrid::new(pts)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().copied()
    }
}

//! Gamma sweep of the realignment margin of the SPA state.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::realignment::{entanglement_margin, lambda0_threshold};
use crate::witness::{spa_for_gamma, BellFamilyParams};

/// Column order of the scan CSV.
pub const CSV_HEADER: [&str; 7] = [
    "gamma",
    "lambda_min",
    "p_star",
    "margin",
    "trace_norm_numeric",
    "trace_norm_analytic",
    "lambda0",
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub gamma_from: f64,
    pub gamma_to: f64,
    pub steps: usize,
    pub seed: u64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            gamma_from: 0.01,
            gamma_to: 0.99,
            steps: 99,
            seed: 0,
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        let inside = |g: f64| g > 0.0 && g < 1.0;
        if !inside(self.gamma_from) || !inside(self.gamma_to) {
            return Err(Error::InvalidParameter("scan bounds must lie in (0, 1)".into()));
        }
        if self.gamma_from >= self.gamma_to {
            return Err(Error::InvalidParameter(
                "gamma_from must be below gamma_to".into(),
            ));
        }
        if self.steps < 2 {
            return Err(Error::InvalidParameter("a scan needs at least 2 steps".into()));
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        let h = (self.gamma_to - self.gamma_from) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.gamma_to
                } else {
                    self.gamma_from + h * i as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub gamma: f64,
    pub lambda_min: f64,
    pub p_star: f64,
    pub margin: f64,
    pub trace_norm_numeric: f64,
    pub trace_norm_analytic: f64,
    pub lambda0: f64,
}

pub fn scan_point(gamma: f64) -> Result<ScanRow> {
    let spa = spa_for_gamma(BellFamilyParams::new(gamma)?)?;
    let report = entanglement_margin(&spa)?;
    Ok(ScanRow {
        gamma,
        lambda_min: spa.lambda_min,
        p_star: spa.p_star,
        margin: report.margin,
        trace_norm_numeric: report.trace_norm_numeric,
        trace_norm_analytic: report.trace_norm_analytic.unwrap_or(f64::NAN),
        lambda0: lambda0_threshold(gamma),
    })
}

/// Rows in grid order; points are evaluated in parallel.
pub fn run_scan(cfg: &ScanConfig) -> Result<Vec<ScanRow>> {
    cfg.validate()?;
    cfg.grid().into_par_iter().map(scan_point).collect()
}

/// The maximal run of consecutive rows with positive margin containing `gamma`,
/// as `(first_gamma, last_gamma)`.
pub fn positive_interval(rows: &[ScanRow], gamma: f64) -> Option<(f64, f64)> {
    let centre = rows
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1.gamma - gamma).abs().total_cmp(&(b.1.gamma - gamma).abs()))?
        .0;
    if rows[centre].margin <= 0.0 {
        return None;
    }
    let mut lo = centre;
    while lo > 0 && rows[lo - 1].margin > 0.0 {
        lo -= 1;
    }
    let mut hi = centre;
    while hi + 1 < rows.len() && rows[hi + 1].margin > 0.0 {
        hi += 1;
    }
    Some((rows[lo].gamma, rows[hi].gamma))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid() {
        let g = ScanConfig::default().grid();
        assert_eq!(g.len(), 99);
        assert_eq!(g[0], 0.01);
        assert_eq!(g[98], 0.99);
        assert!((g[74] - 0.75).abs() < 1e-12);
    }

    #[test]
    fn validation() {
        let bad = |f: f64, t: f64, s: usize| ScanConfig {
            gamma_from: f,
            gamma_to: t,
            steps: s,
            seed: 0,
        };
        assert!(bad(0.5, 0.4, 10).validate().is_err());
        assert!(bad(0.0, 0.4, 10).validate().is_err());
        assert!(bad(0.1, 0.4, 1).validate().is_err());
        assert!(bad(0.1, 0.4, 2).validate().is_ok());
    }

    #[test]
    fn two_step_scan() {
        let rows = run_scan(&ScanConfig {
            gamma_from: 0.2,
            gamma_to: 0.8,
            steps: 2,
            seed: 1,
        })
        .unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows[0].gamma < rows[1].gamma);
    }

    #[test]
    fn positive_around_three_quarters() {
        let rows = run_scan(&ScanConfig::default()).unwrap();
        let (lo, hi) = positive_interval(&rows, 0.75).expect("margin positive at 0.75");
        assert!(lo < 0.75 && hi > 0.75, "({lo}, {hi})");
    }
}

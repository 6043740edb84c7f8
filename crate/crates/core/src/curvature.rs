//! Hessian scalar curvature of a one-parameter family.
//!
//! In the natural parameter the Fisher metric is the single function
//! `h(θ) = ψ''(θ)` and the Hessian scalar curvature is
//!
//! ```text
//! S(θ) = -(ln h)''(θ) / h(θ) = (κ3² - κ2 κ4) / κ2³.
//! ```
//!
//! The cumulant form cancels catastrophically once the law concentrates
//! on one atom (both products are O(ε²) while their difference is O(ε³)).
//! We use instead that `h = Q / Z²` with
//!
//! ```text
//! Z = Σ_k e^{l_k},   Q = Σ_{i<j} (F_i - F_j)² e^{l_i + l_j},   l_k = C_k + θ F_k,
//! ```
//!
//! so `ln Q` is itself a log-partition function over pairs with statistic
//! `F_i + F_j`. Writing `V` for the variance of that pair statistic,
//! `(ln h)'' = V - 2h` and `S = 2 - V / h`. Both variances are sums of
//! non-negative terms and keep full relative accuracy. The price is
//! O(m²) work per evaluation instead of O(m).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{FiniteExpFamily, NaturalPoint};
use crate::weighted;

pub const DEFAULT_GRID_POINTS: usize = 601;
/// Half-width of the default θ-grid, in units of `1 / (F_max - F_min)`.
pub const DEFAULT_GRID_HALF_WIDTH: f64 = 30.0;
pub const DEFAULT_CONSTANCY_TOL: f64 = 1e-8;
/// Fisher metric values below this are treated as underflow.
pub const MIN_FISHER: f64 = 1e-300;

/// `h(θ)` together with `(ln h)''(θ)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LogFisherJet {
    pub h: f64,
    pub d2_log_h: f64,
}

pub(crate) fn log_fisher_jet(fam: &FiniteExpFamily, theta: f64) -> Result<LogFisherJet> {
    let theta = NaturalPoint::new(theta)?.value();
    let log_w = fam.log_weights(theta);
    let f = fam.f();
    let (_, h) = weighted::mean_variance(&log_w, f);
    if h.is_nan() || h < MIN_FISHER {
        return Err(Error::Degenerate { theta, variance: h });
    }

    let n = f.len();
    let mut pair_log_w = Vec::with_capacity(n * (n - 1) / 2);
    let mut pair_sum = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let gap = (f[i] - f[j]).abs();
            if gap > 0.0 {
                pair_log_w.push(log_w[i] + log_w[j] + 2.0 * gap.ln());
                pair_sum.push(f[i] + f[j]);
            }
        }
    }
    let (_, v) = weighted::mean_variance(&pair_log_w, &pair_sum);
    Ok(LogFisherJet {
        h,
        d2_log_h: v - 2.0 * h,
    })
}

/// S(θ) = -(ln h)''(θ) / h(θ).
pub fn hessian_scalar_curvature(fam: &FiniteExpFamily, theta: f64) -> Result<f64> {
    let jet = log_fisher_jet(fam, theta)?;
    Ok(-jet.d2_log_h / jet.h)
}

/// Central-difference estimate of S: the second difference of `ln h` with
/// step `step`, divided by `h(θ)`. Second order in `step`.
pub fn finite_difference_scal(fam: &FiniteExpFamily, theta: f64, step: f64) -> Result<f64> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "finite-difference step must be positive, got {step}"
        )));
    }
    let h0 = fam.fisher_metric(theta)?;
    let hp = fam.fisher_metric(theta + step)?;
    let hm = fam.fisher_metric(theta - step)?;
    let d2 = (hp.ln() - 2.0 * h0.ln() + hm.ln()) / (step * step);
    Ok(-d2 / h0)
}

/// Uniform θ-grid: `points` samples from `lo` to `hi` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl Grid {
    /// `[-30/σ, 30/σ]` with 601 points, σ = F_max - F_min.
    pub fn default_for(fam: &FiniteExpFamily) -> Self {
        let half = DEFAULT_GRID_HALF_WIDTH / fam.f_range().width();
        Self {
            lo: -half,
            hi: half,
            points: DEFAULT_GRID_POINTS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.lo.is_finite() || !self.hi.is_finite() {
            return Err(Error::InvalidGrid("bounds must be finite".into()));
        }
        if self.lo >= self.hi {
            return Err(Error::InvalidGrid(format!(
                "lo = {} must be below hi = {}",
                self.lo, self.hi
            )));
        }
        if self.points < 3 {
            return Err(Error::InvalidGrid(format!(
                "need at least 3 points, got {}",
                self.points
            )));
        }
        Ok(())
    }

    pub fn thetas(&self) -> Vec<f64> {
        let last = self.points - 1;
        let span = self.hi - self.lo;
        (0..self.points)
            .map(|i| {
                if i == last {
                    self.hi
                } else {
                    self.lo + span * (i as f64) / (last as f64)
                }
            })
            .collect()
    }
}

/// Samples of S over a θ-grid and the numerical constancy verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvatureReport {
    pub thetas: Vec<f64>,
    pub values: Vec<f64>,
    pub is_constant: bool,
    pub lambda: Option<f64>,
    pub max_deviation: f64,
    pub tolerance: f64,
}

pub fn curvature_profile(
    fam: &FiniteExpFamily,
    theta_lo: f64,
    theta_hi: f64,
    n_points: usize,
    tol: f64,
) -> Result<CurvatureReport> {
    let grid = Grid {
        lo: theta_lo,
        hi: theta_hi,
        points: n_points,
    };
    grid.validate()?;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidGrid(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let thetas = grid.thetas();
    let values = thetas
        .iter()
        .map(|&t| hessian_scalar_curvature(fam, t))
        .collect::<Result<Vec<_>>>()?;
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let max_deviation = values
        .iter()
        .map(|v| (v - mean).abs())
        .fold(0.0, f64::max);
    let is_constant = max_deviation <= tol;
    Ok(CurvatureReport {
        thetas,
        values,
        is_constant,
        lambda: is_constant.then_some(mean),
        max_deviation,
        tolerance: tol,
    })
}

/// Profile on the default grid at the default tolerance.
pub fn default_profile(fam: &FiniteExpFamily) -> Result<CurvatureReport> {
    let g = Grid::default_for(fam);
    curvature_profile(fam, g.lo, g.hi, g.points, DEFAULT_CONSTANCY_TOL)
}

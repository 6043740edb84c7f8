//! One-parameter exponential families over a finite sample space.
//!
//! A family is the pair `(C, F)` of real vectors indexed by the sample
//! points `0..=m`; its densities under counting measure are
//!
//! ```text
//! p(k; θ) = exp(C_k + θ F_k - ψ(θ)),    ψ(θ) = ln Σ_k exp(C_k + θ F_k).
//! ```
//!
//! The natural parameter ranges over all of ℝ. Derivatives of ψ are the
//! cumulants of `F` under `p(·; θ)`: ψ' is the expectation parameter η and
//! ψ'' is the Fisher metric.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weighted;

/// Default step for central finite differences of ψ and its derivatives.
pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// A point of the natural parameter space.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct NaturalPoint(f64);

impl NaturalPoint {
    pub fn new(theta: f64) -> Result<Self> {
        if theta.is_finite() {
            Ok(Self(theta))
        } else {
            Err(Error::NonFinite {
                what: "theta",
                index: 0,
                value: theta,
            })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for NaturalPoint {
    type Error = Error;

    fn try_from(theta: f64) -> Result<Self> {
        Self::new(theta)
    }
}

/// The data `(C, F)` of a family over `m + 1` sample points.
///
/// Invariants: both vectors have the same length `>= 2`, every entry is
/// finite, and `F` is not constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawFamily")]
pub struct FiniteExpFamily {
    #[serde(rename = "C")]
    c: Vec<f64>,
    #[serde(rename = "F")]
    f: Vec<f64>,
}

#[derive(Deserialize)]
struct RawFamily {
    #[serde(rename = "C")]
    c: Vec<f64>,
    #[serde(rename = "F")]
    f: Vec<f64>,
}

impl TryFrom<RawFamily> for FiniteExpFamily {
    type Error = Error;

    fn try_from(raw: RawFamily) -> Result<Self> {
        Self::new(raw.c, raw.f)
    }
}

/// Mean of `F` and its cumulants of order 2 to 4; these are ψ' through ψ''''.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentSet {
    pub eta: f64,
    pub kappa2: f64,
    pub kappa3: f64,
    pub kappa4: f64,
}

/// Extremes of `F` and the indices attaining them.
#[derive(Debug, Clone, PartialEq)]
pub struct FRange {
    pub f_min: f64,
    pub f_max: f64,
    pub i_min: Vec<usize>,
    pub i_max: Vec<usize>,
}

impl FRange {
    pub fn width(&self) -> f64 {
        self.f_max - self.f_min
    }
}

impl FiniteExpFamily {
    pub fn new(c: Vec<f64>, f: Vec<f64>) -> Result<Self> {
        if c.len() != f.len() {
            return Err(Error::LengthMismatch {
                c: c.len(),
                f: f.len(),
            });
        }
        if c.len() < 2 {
            return Err(Error::TooFewPoints(c.len()));
        }
        for (what, v) in [("C", &c), ("F", &f)] {
            if let Some((index, &value)) = v.iter().enumerate().find(|(_, x)| !x.is_finite()) {
                return Err(Error::NonFinite { what, index, value });
            }
        }
        let lo = f.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = f.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if hi - lo <= 0.0 {
            return Err(Error::ConstantStatistic);
        }
        Ok(Self { c, f })
    }

    pub fn c(&self) -> &[f64] {
        &self.c
    }

    pub fn f(&self) -> &[f64] {
        &self.f
    }

    /// `m`, so the sample space has `m + 1` points.
    pub fn size_m(&self) -> usize {
        self.c.len() - 1
    }

    /// Number of sample points, `m + 1`.
    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Unnormalized log-densities `C_k + θ F_k`.
    pub(crate) fn log_weights(&self, theta: f64) -> Vec<f64> {
        self.c
            .iter()
            .zip(&self.f)
            .map(|(&c, &f)| c + theta * f)
            .collect()
    }

    /// ψ(θ), evaluated as a max-shifted log-sum-exp.
    pub fn log_partition(&self, theta: f64) -> Result<f64> {
        let theta = NaturalPoint::new(theta)?.value();
        Ok(weighted::log_sum_exp(&self.log_weights(theta)))
    }

    pub fn log_density(&self, theta: f64) -> Result<Vec<f64>> {
        let psi = self.log_partition(theta)?;
        Ok(self
            .log_weights(theta)
            .into_iter()
            .map(|l| l - psi)
            .collect())
    }

    pub fn density(&self, theta: f64) -> Result<Vec<f64>> {
        Ok(self
            .log_density(theta)?
            .into_iter()
            .map(f64::exp)
            .collect())
    }

    /// η(θ) = E_θ[F] = ψ'(θ).
    pub fn expectation_parameter(&self, theta: f64) -> Result<f64> {
        let theta = NaturalPoint::new(theta)?.value();
        Ok(weighted::mean_variance(&self.log_weights(theta), &self.f).0)
    }

    /// h_F(θ) = Var_θ(F) = ψ''(θ).
    pub fn fisher_metric(&self, theta: f64) -> Result<f64> {
        let theta = NaturalPoint::new(theta)?.value();
        Ok(weighted::mean_variance(&self.log_weights(theta), &self.f).1)
    }

    pub fn central_moments(&self, theta: f64) -> Result<MomentSet> {
        let theta = NaturalPoint::new(theta)?.value();
        let m = weighted::central(&self.log_weights(theta), &self.f);
        Ok(MomentSet {
            eta: m.mean,
            kappa2: m.m2,
            kappa3: m.m3,
            kappa4: m.m4 - 3.0 * m.m2 * m.m2,
        })
    }

    pub fn f_range(&self) -> FRange {
        let f_min = self.f.iter().copied().fold(f64::INFINITY, f64::min);
        let f_max = self.f.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let indices = |target: f64| {
            self.f
                .iter()
                .enumerate()
                .filter(|(_, &x)| x == target)
                .map(|(k, _)| k)
                .collect()
        };
        FRange {
            f_min,
            f_max,
            i_min: indices(f_min),
            i_max: indices(f_max),
        }
    }

    /// Smallest positive gap between distinct values of `F`.
    pub fn min_level_gap(&self) -> f64 {
        let mut sorted = self.f.clone();
        sorted.sort_by(f64::total_cmp);
        sorted
            .windows(2)
            .map(|w| w[1] - w[0])
            .filter(|&g| g > 0.0)
            .fold(f64::INFINITY, f64::min)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(c: &[f64], f: &[f64]) -> FiniteExpFamily {
        FiniteExpFamily::new(c.to_vec(), f.to_vec()).unwrap()
    }

    fn binomial2() -> FiniteExpFamily {
        fam(&[0.0, 2f64.ln(), 0.0], &[0.0, 1.0, 2.0])
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(
            FiniteExpFamily::new(vec![0.0], vec![1.0]),
            Err(Error::TooFewPoints(1))
        );
        assert_eq!(
            FiniteExpFamily::new(vec![0.0, 0.0], vec![1.0]),
            Err(Error::LengthMismatch { c: 2, f: 1 })
        );
        assert_eq!(
            FiniteExpFamily::new(vec![0.0, 0.0], vec![3.0, 3.0]),
            Err(Error::ConstantStatistic)
        );
        assert!(matches!(
            FiniteExpFamily::new(vec![0.0, f64::NAN], vec![0.0, 1.0]),
            Err(Error::NonFinite { what: "C", index: 1, .. })
        ));
        assert!(matches!(
            FiniteExpFamily::new(vec![0.0, 0.0], vec![0.0, f64::INFINITY]),
            Err(Error::NonFinite { what: "F", index: 1, .. })
        ));
    }

    #[test]
    fn log_partition_examples() {
        assert!((binomial2().log_partition(0.0).unwrap() - 4f64.ln()).abs() < 1e-15);
        let coin = fam(&[0.0, 0.0], &[0.0, 1.0]);
        assert!((coin.log_partition(0.0).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!(coin.log_partition(f64::NAN).is_err());
        assert!(coin.log_partition(f64::INFINITY).is_err());
    }

    #[test]
    fn shifting_c_shifts_psi() {
        let a = fam(&[0.2, -1.0, 0.7], &[1.0, -2.0, 0.5]);
        let b = fam(&[2.7, 1.5, 3.2], &[1.0, -2.0, 0.5]);
        for theta in [-3.0, 0.0, 1.7] {
            let d = b.log_partition(theta).unwrap() - a.log_partition(theta).unwrap();
            assert!((d - 2.5).abs() < 1e-14);
        }
    }

    #[test]
    fn density_examples() {
        let coin = fam(&[0.0, 0.0], &[0.0, 1.0]);
        assert_eq!(coin.density(0.0).unwrap(), vec![0.5, 0.5]);
        // q = 1/2 gives θ = ln(q / (1 - q)) = 0
        let p = binomial2().density(0.0).unwrap();
        for (got, want) in p.iter().zip([0.25, 0.5, 0.25]) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn density_normalized_and_positive_far_out() {
        let f = fam(&[0.0, 1.0, -2.0, 0.5], &[0.0, 3.0, 1.0, 2.0]);
        for theta in [-100.0, -7.0, 0.0, 13.0, 100.0] {
            let p = f.density(theta).unwrap();
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
        for theta in [-1e6, 1e6] {
            assert!(f.log_partition(theta).unwrap().is_finite());
            let p = f.density(theta).unwrap();
            assert!(p.iter().all(|x| x.is_finite()));
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn expectation_examples() {
        let coin = fam(&[0.0, 0.0], &[0.0, 1.0]);
        assert_eq!(coin.expectation_parameter(0.0).unwrap(), 0.5);
        let wide = fam(&[0.0, 0.0], &[0.0, 3.0]);
        assert_eq!(wide.expectation_parameter(0.0).unwrap(), 1.5);
        let b3 = fam(&[0.0, 3f64.ln(), 3f64.ln(), 0.0], &[0.0, 1.0, 2.0, 3.0]);
        assert!((b3.expectation_parameter(40.0).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn fisher_examples() {
        let coin = fam(&[0.0, 0.0], &[0.0, 1.0]);
        assert_eq!(coin.fisher_metric(0.0).unwrap(), 0.25);
        assert!((binomial2().fisher_metric(0.0).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn central_moment_examples() {
        let uniform = fam(&[0.0; 3], &[0.0, 1.0, 2.0]);
        let m = uniform.central_moments(0.0).unwrap();
        assert!((m.eta - 1.0).abs() < 1e-15);
        assert!((m.kappa2 - 2.0 / 3.0).abs() < 1e-15);
        assert!(m.kappa3.abs() < 1e-15);
        assert!((m.kappa4 + 2.0 / 3.0).abs() < 1e-15);

        let coin = fam(&[0.0, 0.0], &[0.0, 1.0]);
        let m = coin.central_moments(0.0).unwrap();
        assert_eq!((m.eta, m.kappa2, m.kappa3, m.kappa4), (0.5, 0.25, 0.0, -0.125));

        let symmetric = fam(&[0.3, -1.0, 2.0, -1.0, 0.3], &[-2.0, -0.5, 0.0, 0.5, 2.0]);
        assert!(symmetric.central_moments(0.0).unwrap().kappa3.abs() < 1e-15);
    }

    #[test]
    fn f_range_examples() {
        let r = fam(&[0.0; 4], &[0.0, 1.0, 1.0, 0.0]).f_range();
        assert_eq!((r.f_min, r.f_max), (0.0, 1.0));
        assert_eq!((r.i_min, r.i_max), (vec![0, 3], vec![1, 2]));

        let r = binomial2().f_range();
        assert_eq!((r.f_min, r.f_max, r.i_min, r.i_max), (0.0, 2.0, vec![0], vec![2]));

        let r = fam(&[0.0; 3], &[5.0, -2.0, 3.0]).f_range();
        assert_eq!((r.f_min, r.f_max, r.i_min, r.i_max), (-2.0, 5.0, vec![1], vec![0]));
    }

    #[test]
    fn serde_uses_capital_keys_and_validates() {
        let f: FiniteExpFamily = serde_json::from_str(r#"{"C":[0,0],"F":[0,1]}"#).unwrap();
        assert_eq!(f.f(), &[0.0, 1.0]);
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"C":[0.0,0.0],"F":[0.0,1.0]}"#);
        assert!(serde_json::from_str::<FiniteExpFamily>(r#"{"C":[0,0],"F":[1,1]}"#).is_err());
    }
}

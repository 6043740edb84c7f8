//! Kähler structure on the tangent bundle of a one-parameter family.
//!
//! The natural parameter is an affine chart for the exponential connection,
//! so the tangent bundle carries global coordinates `(q, r)`: `q = θ` on the
//! base and `r` along the fibre. In these coordinates
//!
//! ```text
//! g = diag(h, h),  J = [[0, -1], [1, 0]],  ω = [[0, h], [-h, 0]],  Ric = diag(β, β)
//! ```
//!
//! with `h = h(q)` the Fisher metric and `β = -(ln h)''(q) / 2`. The scalar
//! curvature `trace(g⁻¹ Ric) = -(ln h)''/h` depends on `q` only.

use serde::Serialize;

use crate::classification::binomial_family;
use crate::curvature::{hessian_scalar_curvature, log_fisher_jet};
use crate::error::{Error, Result};
use crate::family::FiniteExpFamily;

pub type Mat2 = [[f64; 2]; 2];

/// Coordinates `(q, r)` on the tangent bundle; `z = q + i r` is holomorphic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TangentPoint {
    pub q: f64,
    pub r: f64,
}

impl TangentPoint {
    pub fn new(q: f64, r: f64) -> Result<Self> {
        crate::error::ensure_finite("q", q)?;
        crate::error::ensure_finite("r", r)?;
        Ok(Self { q, r })
    }
}

/// Metric, complex structure, Kähler form and Ricci tensor at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TensorFrame {
    pub metric: Mat2,
    #[serde(rename = "J")]
    pub complex_structure: Mat2,
    #[serde(rename = "omega")]
    pub form: Mat2,
    pub ricci: Mat2,
}

fn mul(x: &Mat2, y: &Mat2) -> Mat2 {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    out
}

fn transpose(x: &Mat2) -> Mat2 {
    [[x[0][0], x[1][0]], [x[0][1], x[1][1]]]
}

fn max_diff(x: &Mat2, y: &Mat2) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            m = m.max((x[i][j] - y[i][j]).abs());
        }
    }
    m
}

impl TensorFrame {
    /// Largest violation among `J² = -I`, `Jᵀ g J = g` and `ω = Jᵀ g`.
    pub fn identity_defect(&self) -> f64 {
        let j = &self.complex_structure;
        let g = &self.metric;
        let minus_id = [[-1.0, 0.0], [0.0, -1.0]];
        let jt = transpose(j);
        max_diff(&mul(j, j), &minus_id)
            .max(max_diff(&mul(&mul(&jt, g), j), g))
            .max(max_diff(&mul(&jt, g), &self.form))
    }

    /// `trace(g⁻¹ Ric)`.
    pub fn ricci_trace(&self) -> f64 {
        let g = &self.metric;
        let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
        let inv = [[g[1][1] / det, -g[0][1] / det], [-g[1][0] / det, g[0][0] / det]];
        let p = mul(&inv, &self.ricci);
        p[0][0] + p[1][1]
    }
}

pub fn dombrowski_frame(fam: &FiniteExpFamily, pt: TangentPoint) -> Result<TensorFrame> {
    let jet = log_fisher_jet(fam, pt.q)?;
    let h = jet.h;
    let beta = -0.5 * jet.d2_log_h;
    Ok(TensorFrame {
        metric: [[h, 0.0], [0.0, h]],
        complex_structure: [[0.0, -1.0], [1.0, 0.0]],
        form: [[0.0, h], [-h, 0.0]],
        ricci: [[beta, 0.0], [0.0, beta]],
    })
}

/// Scalar curvature of the tangent bundle. It factors through the
/// projection, so `pt.r` is never read.
pub fn scal_tangent(fam: &FiniteExpFamily, pt: TangentPoint) -> Result<f64> {
    hessian_scalar_curvature(fam, pt.q)
}

/// Covering of the punctured sphere by `T B(n)`,
/// `(tanh(q/2), cos(r/2)/cosh(q/2), sin(r/2)/cosh(q/2))`.
///
/// It is a local isometry onto the round sphere with metric scaled by `n`;
/// `n` only enters through that scaling.
pub fn binomial_sphere_map(n: usize, pt: TangentPoint) -> Result<[f64; 3]> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let sech = 1.0 / (0.5 * pt.q).cosh();
    let (sin, cos) = (0.5 * pt.r).sin_cos();
    Ok([(0.5 * pt.q).tanh(), cos * sech, sin * sech])
}

/// Max-abs difference between the Dombrowski metric of `B(n)` at `pt` and
/// the pullback of `n` times the round metric through
/// [`binomial_sphere_map`], with the Jacobian taken by central differences.
pub fn sphere_isometry_defect(n: usize, pt: TangentPoint, h_step: f64) -> Result<f64> {
    if !(h_step > 0.0 && h_step.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "step must be positive, got {h_step}"
        )));
    }
    let at = |q: f64, r: f64| binomial_sphere_map(n, TangentPoint { q, r });
    let (qp, qm) = (at(pt.q + h_step, pt.r)?, at(pt.q - h_step, pt.r)?);
    let (rp, rm) = (at(pt.q, pt.r + h_step)?, at(pt.q, pt.r - h_step)?);
    let dq: Vec<f64> = (0..3).map(|i| (qp[i] - qm[i]) / (2.0 * h_step)).collect();
    let dr: Vec<f64> = (0..3).map(|i| (rp[i] - rm[i]) / (2.0 * h_step)).collect();
    let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();
    let scale = n as f64;
    let pullback = [
        [scale * dot(&dq, &dq), scale * dot(&dq, &dr)],
        [scale * dot(&dr, &dq), scale * dot(&dr, &dr)],
    ];
    let frame = dombrowski_frame(&binomial_family(n)?, pt)?;
    Ok(max_diff(&pullback, &frame.metric))
}

//! Affine reparameterizations of families and their orbits.
//!
//! The group `G` of matrices
//!
//! ```text
//! | 1 b d |
//! | 0 a c |     a ≠ 0
//! | 0 0 1 |
//! ```
//!
//! acts on `(C, F)` by `(C + bF + d·1, aF + c·1)`. Two families on the same
//! sample space describe the same set of densities exactly when they lie in
//! one orbit, and then `p'(·; θ) = p(·; aθ + b)` and
//! `ψ'(θ) = ψ(aθ + b) + cθ + d`.
//!
//! Orbits correspond one-to-one to affine lines in `V_m = 1^⊥`: the class of
//! `(C, F)` maps to `C^⊥ + span{F^⊥}`. [`CanonicalClass`] stores that line as
//! its point closest to the origin plus a sign-normalized unit direction.

use serde::Serialize;

use crate::classification::{binomial_family, reduce, DEFAULT_LEVEL_TOL};
use crate::error::{Error, Result};
use crate::family::FiniteExpFamily;

pub const DEFAULT_EQUIV_TOL: f64 = 1e-9;
/// Entries at or below this magnitude are skipped when fixing the sign of
/// a canonical direction.
pub const SIGN_EPS: f64 = 1e-12;

/// An element `(a, b, c, d)` of `G`, `a ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroupElement {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl GroupElement {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        for (what, v) in [("a", a), ("b", b), ("c", c), ("d", d)] {
            crate::error::ensure_finite(what, v)?;
        }
        if a == 0.0 {
            return Err(Error::InvalidInput("group element needs a ≠ 0".into()));
        }
        Ok(Self { a, b, c, d })
    }

    pub const fn identity() -> Self {
        Self {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 0.0,
        }
    }

    pub fn matrix(&self) -> [[f64; 3]; 3] {
        [[1.0, self.b, self.d], [0.0, self.a, self.c], [0.0, 0.0, 1.0]]
    }

    /// `self ∘ other`: acting with the result equals acting with `other`
    /// first and then `self`.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            a: self.a * other.a,
            b: other.b + self.b * other.a,
            c: self.a * other.c + self.c,
            d: other.d + self.b * other.c + self.d,
        }
    }

    pub fn inverse(&self) -> GroupElement {
        let inv_a = 1.0 / self.a;
        GroupElement {
            a: inv_a,
            b: -self.b * inv_a,
            c: -self.c * inv_a,
            d: self.b * self.c * inv_a - self.d,
        }
    }

    /// `(C + bF + d·1, aF + c·1)`.
    pub fn act(&self, fam: &FiniteExpFamily) -> FiniteExpFamily {
        let c = fam
            .c()
            .iter()
            .zip(fam.f())
            .map(|(&c, &f)| c + self.b * f + self.d)
            .collect();
        let f = fam.f().iter().map(|&f| self.a * f + self.c).collect();
        FiniteExpFamily::new(c, f).expect("a ≠ 0 keeps F non-constant")
    }
}

impl Default for GroupElement {
    fn default() -> Self {
        Self::identity()
    }
}

fn max_abs_diff(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

/// Finds `g` with `g · fam2 = fam1` componentwise within `tol`.
///
/// `a` and `c` are read off the indices of the smallest and largest value
/// of `F2`; `(b, d)` is the least-squares fit of `C1 - C2 = b F2 + d`. The
/// witness is accepted if the action reproduces `fam1` within `tol`.
pub fn are_equivalent(
    fam1: &FiniteExpFamily,
    fam2: &FiniteExpFamily,
    tol: f64,
) -> Result<Option<GroupElement>> {
    if fam1.len() != fam2.len() {
        return Err(Error::IncompatibleFamilies {
            left: fam1.len(),
            right: fam2.len(),
        });
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let (c1, f1) = (fam1.c(), fam1.f());
    let (c2, f2) = (fam2.c(), fam2.f());
    let range = fam2.f_range();
    let (lo, hi) = (range.i_min[0], range.i_max[0]);

    let a = (f1[hi] - f1[lo]) / (f2[hi] - f2[lo]);
    let c = f1[lo] - a * f2[lo];

    let n = f2.len() as f64;
    let y: Vec<f64> = c1.iter().zip(c2).map(|(x, z)| x - z).collect();
    let f_mean = f2.iter().sum::<f64>() / n;
    let y_mean = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (&x, &v) in f2.iter().zip(&y) {
        sxy += (x - f_mean) * (v - y_mean);
        sxx += (x - f_mean) * (x - f_mean);
    }
    let b = sxy / sxx;
    let d = y_mean - b * f_mean;

    let Ok(g) = GroupElement::new(a, b, c, d) else {
        return Ok(None);
    };
    let image = g.act(fam2);
    let residual = max_abs_diff(image.c(), c1).max(max_abs_diff(image.f(), f1));
    Ok((residual <= tol).then_some(g))
}

/// Canonical representative of an orbit: the affine line
/// `C^⊥ + span{F^⊥}` in `V_m`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CanonicalClass {
    pub base: Vec<f64>,
    pub direction: Vec<f64>,
}

impl CanonicalClass {
    /// Largest componentwise difference to `other`; infinite for
    /// mismatched lengths.
    pub fn distance(&self, other: &CanonicalClass) -> f64 {
        if self.base.len() != other.base.len() {
            return f64::INFINITY;
        }
        max_abs_diff(&self.base, &other.base).max(max_abs_diff(&self.direction, &other.direction))
    }

    pub fn approx_eq(&self, other: &CanonicalClass, tol: f64) -> bool {
        self.distance(other) <= tol
    }
}

/// Projection onto `V_m`: subtract the mean.
fn project_out_ones(v: &[f64]) -> Vec<f64> {
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    v.iter().map(|x| x - mean).collect()
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn canonical_representative(fam: &FiniteExpFamily) -> Result<CanonicalClass> {
    let mut direction = project_out_ones(fam.f());
    let norm = dot(&direction, &direction).sqrt();
    if norm.is_nan() || norm < SIGN_EPS {
        return Err(Error::ConstantStatistic);
    }
    let flip = direction
        .iter()
        .find(|x| x.abs() > SIGN_EPS)
        .is_some_and(|&x| x < 0.0);
    let scale = if flip { -1.0 / norm } else { 1.0 / norm };
    for x in &mut direction {
        *x *= scale;
    }

    let c_perp = project_out_ones(fam.c());
    let along = dot(&c_perp, &direction);
    let base = c_perp
        .iter()
        .zip(&direction)
        .map(|(c, u)| c - along * u)
        .collect();
    Ok(CanonicalClass { base, direction })
}

/// Whether the reduced family is equivalent to `B(p)`, `p + 1` being its
/// number of levels.
pub fn reduced_equivalent_to_binomial(fam: &FiniteExpFamily, tol: f64) -> Result<bool> {
    let reduced = reduce(fam, DEFAULT_LEVEL_TOL)?;
    let binomial = binomial_family(reduced.p())?;
    Ok(are_equivalent(&reduced.to_family(), &binomial, tol)?.is_some())
}

//! Reduction to levels and the exact constant-curvature criterion.
//!
//! Group the sample points by the value of `F`: the distinct values
//! `α_0 < … < α_p` are the levels and `ω_i = ln Σ_{F_k = α_i} e^{C_k}` their
//! log-weights. The reduced family `(ω, α)` has the same log-partition
//! function as the original.
//!
//! The curvature of the tangent bundle is constant exactly when the levels
//! are equally spaced and, for some reals `r`, `s`,
//!
//! ```text
//! ω_k = r k + s (p - k) + ln binom(p, k),    k = 0..=p,
//! ```
//!
//! in which case it equals `2 / p`. Every such family is the binomial
//! family `B(p)` up to an affine change of `(C, F)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::FiniteExpFamily;
use crate::weighted::log_sum_exp;

/// Level grouping tolerance, relative to `F_max - F_min`.
pub const DEFAULT_LEVEL_TOL: f64 = 1e-9;
pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-9;

/// `ln binom(n, k)` through log-gamma. Zero exactly at `k = 0` and `k = n`.
pub fn ln_binomial(n: usize, k: usize) -> f64 {
    assert!(k <= n, "ln_binomial: k = {k} > n = {n}");
    if k == 0 || k == n {
        return 0.0;
    }
    let lg = |x: usize| libm::lgamma(x as f64 + 1.0);
    lg(n) - lg(k) - lg(n - k)
}

/// Strictly increasing levels with their aggregated log-weights.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReducedFamily {
    levels: Vec<f64>,
    log_weights: Vec<f64>,
}

impl ReducedFamily {
    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn log_weights(&self) -> &[f64] {
        &self.log_weights
    }

    /// Number of levels minus one.
    pub fn p(&self) -> usize {
        self.levels.len() - 1
    }

    /// The reduced family as a family over `{0, …, p}`: `C = ω`, `F = α`.
    pub fn to_family(&self) -> FiniteExpFamily {
        FiniteExpFamily::new(self.log_weights.clone(), self.levels.clone())
            .expect("reduced family has at least two strictly increasing levels")
    }
}

/// Single-linkage grouping of the sorted values of `F`: neighbours closer
/// than `level_tol * (F_max - F_min)` share a level.
pub fn reduce(fam: &FiniteExpFamily, level_tol: f64) -> Result<ReducedFamily> {
    if !(level_tol >= 0.0 && level_tol.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "level tolerance must be non-negative, got {level_tol}"
        )));
    }
    let (c, f) = (fam.c(), fam.f());
    let threshold = level_tol * fam.f_range().width();
    let mut order: Vec<usize> = (0..f.len()).collect();
    order.sort_by(|&i, &j| f[i].total_cmp(&f[j]).then(i.cmp(&j)));

    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut prev = f64::NEG_INFINITY;
    for &k in &order {
        match groups.last_mut() {
            Some(g) if f[k] - prev <= threshold => g.push(k),
            _ => groups.push(vec![k]),
        }
        prev = f[k];
    }
    if groups.len() < 2 {
        return Err(Error::ConstantStatistic);
    }

    let mut levels = Vec::with_capacity(groups.len());
    let mut log_weights = Vec::with_capacity(groups.len());
    for g in &groups {
        // first member plus the mean offset, so exact ties stay exact
        let base = f[g[0]];
        let offset = g.iter().map(|&k| f[k] - base).sum::<f64>() / g.len() as f64;
        levels.push(base + offset);
        let cs: Vec<f64> = g.iter().map(|&k| c[k]).collect();
        log_weights.push(log_sum_exp(&cs));
    }
    if levels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(
            "level grouping produced non-increasing levels".into(),
        ));
    }
    Ok(ReducedFamily {
        levels,
        log_weights,
    })
}

/// Verdict of the exact constant-curvature criterion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationResult {
    pub is_constant: bool,
    pub p: usize,
    pub lambda: Option<f64>,
    pub r: Option<f64>,
    pub s: Option<f64>,
    pub residual: f64,
}

/// Checks equal spacing of the levels and the binomial weight pattern.
///
/// `s` and `r` come from the end levels (`ω_0 = s p`, `ω_p = r p`); the
/// residual is the largest of the relative spacing defects and the
/// absolute weight defects over all levels.
pub fn classify_reduced(reduced: &ReducedFamily, tol: f64) -> Result<ClassificationResult> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let p = reduced.p();
    let (alpha, omega) = (reduced.levels(), reduced.log_weights());
    let pf = p as f64;
    let s = omega[0] / pf;
    let r = omega[p] / pf;
    let span = alpha[p] - alpha[0];

    let mut residual: f64 = 0.0;
    for k in 0..=p {
        let kf = k as f64;
        let spacing = (alpha[k] - alpha[0] - kf / pf * span).abs() / span;
        let weight = (omega[k] - r * kf - s * (pf - kf) - ln_binomial(p, k)).abs();
        residual = residual.max(spacing).max(weight);
    }
    let is_constant = residual <= tol;
    Ok(ClassificationResult {
        is_constant,
        p,
        lambda: is_constant.then(|| 2.0 / pf),
        r: is_constant.then_some(r),
        s: is_constant.then_some(s),
        residual,
    })
}

pub fn classify_constant_curvature(
    fam: &FiniteExpFamily,
    tol: f64,
) -> Result<ClassificationResult> {
    classify_reduced(&reduce(fam, DEFAULT_LEVEL_TOL)?, tol)
}

/// The family over `p + 1` equally spaced levels from `alpha0` to `alphap`
/// with `C_k = r k + s (p - k) + ln binom(p, k)`; its curvature is `2 / p`.
pub fn make_constant_curvature_family(
    p: usize,
    alpha0: f64,
    alphap: f64,
    r: f64,
    s: f64,
) -> Result<FiniteExpFamily> {
    if p == 0 {
        return Err(Error::InvalidInput("p must be at least 1".into()));
    }
    for (what, v) in [("alpha0", alpha0), ("alphap", alphap), ("r", r), ("s", s)] {
        crate::error::ensure_finite(what, v)?;
    }
    if alpha0 >= alphap {
        return Err(Error::InvalidRange { alpha0, alphap });
    }
    let pf = p as f64;
    let span = alphap - alpha0;
    let f = (0..=p)
        .map(|k| alpha0 + span * k as f64 / pf)
        .collect();
    let c = (0..=p)
        .map(|k| r * k as f64 + s * (p - k) as f64 + ln_binomial(p, k))
        .collect();
    FiniteExpFamily::new(c, f)
}

/// `B(n)`: `C_k = ln binom(n, k)`, `F_k = k` on `{0, …, n}`.
pub fn binomial_family(n: usize) -> Result<FiniteExpFamily> {
    if n == 0 {
        return Err(Error::ConstantStatistic);
    }
    let c = (0..=n).map(|k| ln_binomial(n, k)).collect();
    let f = (0..=n).map(|k| k as f64).collect();
    FiniteExpFamily::new(c, f)
}

/// `{2/k : 1 <= k <= m}`, largest first.
pub fn admissible_lambdas(m: usize) -> Result<Vec<f64>> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be at least 1".into()));
    }
    Ok((1..=m).map(|k| 2.0 / k as f64).collect())
}

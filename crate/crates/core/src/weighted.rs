//! Weighted sums over log-weights.
//!
//! Everything here works from unnormalized log-weights `l_k` and never
//! exponentiates them directly: weights are taken relative to the largest
//! one, so every exponent is `<= 0`.
//!
//! Central moments are taken about the heaviest atom first and then about
//! the mean. When the law concentrates on one atom the offset of the mean
//! from that atom is tiny and is computed with full relative accuracy,
//! which a plain `x_k - mean` would lose.

/// `ln Σ exp(l_k)`, shifted by the maximum.
pub fn log_sum_exp(log_w: &[f64]) -> f64 {
    let max = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let sum: f64 = log_w.iter().map(|&l| (l - max).exp()).sum();
    max + sum.ln()
}

/// Mean and central moments of order 2 to 4 of `values` under the
/// probability proportional to `exp(log_w)`.
#[derive(Debug, Clone, Copy)]
pub struct Central {
    pub mean: f64,
    pub m2: f64,
    pub m3: f64,
    pub m4: f64,
}

fn argmax(log_w: &[f64]) -> usize {
    let mut best = 0;
    for (k, &l) in log_w.iter().enumerate() {
        if l > log_w[best] {
            best = k;
        }
    }
    best
}

/// Normalized probabilities, the index of the heaviest atom, and the mean
/// offset from it.
fn anchored(log_w: &[f64], values: &[f64]) -> (Vec<f64>, usize, f64) {
    debug_assert_eq!(log_w.len(), values.len());
    let top = argmax(log_w);
    let lmax = log_w[top];
    let mut q: Vec<f64> = log_w.iter().map(|&l| (l - lmax).exp()).collect();
    let total: f64 = q.iter().sum();
    for w in &mut q {
        *w /= total;
    }
    let anchor = values[top];
    let offset: f64 = q.iter().zip(values).map(|(w, &x)| w * (x - anchor)).sum();
    (q, top, offset)
}

pub fn central(log_w: &[f64], values: &[f64]) -> Central {
    let (q, top, offset) = anchored(log_w, values);
    let anchor = values[top];
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for (w, &x) in q.iter().zip(values) {
        let d = (x - anchor) - offset;
        let d2 = d * d;
        m2 += w * d2;
        m3 += w * d2 * d;
        m4 += w * d2 * d2;
    }
    Central {
        mean: anchor + offset,
        m2,
        m3,
        m4,
    }
}

/// Mean and variance only.
pub fn mean_variance(log_w: &[f64], values: &[f64]) -> (f64, f64) {
    let (q, top, offset) = anchored(log_w, values);
    let anchor = values[top];
    let var = q
        .iter()
        .zip(values)
        .map(|(w, &x)| {
            let d = (x - anchor) - offset;
            w * d * d
        })
        .sum();
    (anchor + offset, var)
}

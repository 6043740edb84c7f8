//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use kahlerfam::{make_constant_curvature_family, FiniteExpFamily};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Family over `m + 1` points, `1 <= m <= m_max`, entries uniform in `[-bound, bound]`.
pub fn random_family(rng: &mut impl Rng, m_max: usize, bound: f64) -> FiniteExpFamily {
    loop {
        let m = rng.random_range(1..=m_max);
        let c = (0..=m).map(|_| rng.random_range(-bound..=bound)).collect();
        let f = (0..=m).map(|_| rng.random_range(-bound..=bound)).collect();
        if let Ok(fam) = FiniteExpFamily::new(c, f) {
            return fam;
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ConstantParams {
    pub p: usize,
    pub alpha0: f64,
    pub alphap: f64,
    pub r: f64,
    pub s: f64,
}

pub fn random_constant_params(rng: &mut impl Rng, p_max: usize) -> ConstantParams {
    let p = rng.random_range(1..=p_max);
    let (x, y): (f64, f64) = loop {
        let x: f64 = rng.random_range(-5.0..=5.0);
        let y: f64 = rng.random_range(-5.0..=5.0);
        if (x - y).abs() > 1e-3 {
            break (x, y);
        }
    };
    ConstantParams {
        p,
        alpha0: x.min(y),
        alphap: x.max(y),
        r: rng.random_range(-3.0..=3.0),
        s: rng.random_range(-3.0..=3.0),
    }
}

pub fn build(params: ConstantParams) -> FiniteExpFamily {
    make_constant_curvature_family(params.p, params.alpha0, params.alphap, params.r, params.s)
        .expect("valid constant-curvature parameters")
}

/// Splits point `index` into two points on the same level whose weights
/// sum to the original, `share` going to the first.
pub fn split_point(fam: &FiniteExpFamily, index: usize, share: f64) -> FiniteExpFamily {
    let mut c = fam.c().to_vec();
    let mut f = fam.f().to_vec();
    let ci = c[index];
    c[index] = ci + share.ln();
    c.push(ci + (1.0 - share).ln());
    f.push(f[index]);
    FiniteExpFamily::new(c, f).unwrap()
}

/// ψ evaluated by direct summation, no shifting (safe for moderate inputs).
pub fn psi_naive(fam: &FiniteExpFamily, theta: f64) -> f64 {
    fam.c()
        .iter()
        .zip(fam.f())
        .map(|(c, f)| (c + theta * f).exp())
        .sum::<f64>()
        .ln()
}

pub fn psi_first_fd(fam: &FiniteExpFamily, theta: f64, h: f64) -> f64 {
    let psi = |t: f64| fam.log_partition(t).unwrap();
    (psi(theta + h) - psi(theta - h)) / (2.0 * h)
}

pub fn psi_second_fd(fam: &FiniteExpFamily, theta: f64, h: f64) -> f64 {
    let psi = |t: f64| fam.log_partition(t).unwrap();
    (psi(theta + h) - 2.0 * psi(theta) + psi(theta - h)) / (h * h)
}

/// S from cumulants obtained by brute-force enumeration of the densities:
/// (κ3² − κ2 κ4) / κ2³.
pub fn scal_from_enumerated_cumulants(fam: &FiniteExpFamily, theta: f64) -> f64 {
    let w: Vec<f64> = fam
        .c()
        .iter()
        .zip(fam.f())
        .map(|(c, f)| (c + theta * f).exp())
        .collect();
    let z: f64 = w.iter().sum();
    let p: Vec<f64> = w.iter().map(|x| x / z).collect();
    let mean: f64 = p.iter().zip(fam.f()).map(|(p, f)| p * f).sum();
    let moment = |k: i32| -> f64 {
        p.iter()
            .zip(fam.f())
            .map(|(p, f)| p * (f - mean).powi(k))
            .sum()
    };
    let k2 = moment(2);
    let k3 = moment(3);
    let k4 = moment(4) - 3.0 * k2 * k2;
    (k3 * k3 - k2 * k4) / (k2 * k2 * k2)
}

mod extended {
    use dashu_float::round::mode::HalfEven;
    use dashu_float::FBig;

    pub type Big = FBig<HalfEven, 2>;
    pub const BITS: usize = 128;

    pub fn big(x: f64) -> Big {
        Big::try_from(x).expect("finite").with_precision(BITS).value()
    }

    /// Var_θ(F) by enumeration at 128-bit precision.
    pub fn fisher(c: &[f64], f: &[f64], theta: &Big) -> Big {
        let w: Vec<Big> = c
            .iter()
            .zip(f)
            .map(|(&ck, &fk)| (big(ck) + theta.clone() * big(fk)).exp())
            .collect();
        let z = w.iter().fold(big(0.0), |acc, x| acc + x.clone());
        let mean = w
            .iter()
            .zip(f)
            .fold(big(0.0), |acc, (wk, &fk)| acc + wk.clone() * big(fk))
            / z.clone();
        w.iter().zip(f).fold(big(0.0), |acc, (wk, &fk)| {
            let d = big(fk) - mean.clone();
            acc + wk.clone() * d.clone() * d
        }) / z
    }
}

/// Central second difference of ln h divided by h, all evaluated at
/// 128-bit precision so rounding cannot swamp tiny Fisher metrics.
pub fn scal_fd_extended(fam: &FiniteExpFamily, theta: f64, step: f64) -> f64 {
    use extended::*;
    let t = big(theta);
    let s = big(step);
    let h0 = fisher(fam.c(), fam.f(), &t);
    let hp = fisher(fam.c(), fam.f(), &(t.clone() + s.clone()));
    let hm = fisher(fam.c(), fam.f(), &(t - s.clone()));
    let d2 = (hp.ln() - big(2.0) * h0.ln() + hm.ln()) / (s.clone() * s);
    let scal = -(d2 / h0);
    scal.to_f64().value()
}

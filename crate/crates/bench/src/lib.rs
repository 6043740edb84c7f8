//! Fixture families shared by the benchmarks.

use kahlerfam::{make_constant_curvature_family, FiniteExpFamily};

/// Deterministic non-constant family over `n` points.
pub fn generic_family(n: usize) -> FiniteExpFamily {
    let c = (0..n).map(|k| (k as f64 * 0.7).sin()).collect();
    let f = (0..n).map(|k| k as f64 + 0.3 * (k as f64 * 1.3).cos()).collect();
    FiniteExpFamily::new(c, f).expect("fixture is valid")
}

/// Constant-curvature family over `p + 1` levels.
pub fn constant_family(p: usize) -> FiniteExpFamily {
    make_constant_curvature_family(p, -1.0, 2.0, 0.3, -0.2).expect("fixture is valid")
}

//! Independent oracles for grandlp: closed-form norms of catalog functions,
//! brute-force ε-suprema and the Dirichlet-kernel amplitude.
//!
//! Nothing here depends on the main crate.

use std::f64::consts::PI;

use statrs::function::gamma::gamma;

/// Default and minimum grid size for [`brute_force_grand_sup`].
pub const MIN_GRID: usize = 100_000;

/// An oracle value with the name of the formula that produced it.
/// `value` may be `+∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult {
    pub value: f64,
    pub formula_id: &'static str,
}

/// `‖x^a‖_{L^{q}(0,1)}` with `q = p0 - eps`:
/// `(1/(a q + 1))^{1/q}` when `a q > -1`, else `+∞`.
///
/// # Panics
/// If `p0 - eps < 1`.
pub fn closed_form_shifted_norm(a: f64, p0: f64, eps: f64) -> OracleResult {
    let q = p0 - eps;
    assert!(q >= 1.0, "p0 - eps must be at least 1, got {q}");
    let value = if a * q > -1.0 { (1.0 / (a * q + 1.0)).powf(1.0 / q) } else { f64::INFINITY };
    OracleResult { value, formula_id: "power_lq_norm" }
}

/// `‖cos(2πkx)‖_{L^q(0,1)} = (Γ((q+1)/2) / (√π Γ(q/2 + 1)))^{1/q}`, independent of `k ≥ 1`.
pub fn closed_form_cosine_norm(q: f64) -> OracleResult {
    assert!(q >= 1.0, "q must be at least 1, got {q}");
    let moment = gamma((q + 1.0) / 2.0) / (PI.sqrt() * gamma(q / 2.0 + 1.0));
    OracleResult { value: moment.powf(1.0 / q), formula_id: "cosine_lq_norm" }
}

/// `‖1_{[lo,hi)}‖_{L^q(0,1)} = (hi - lo)^{1/q}`.
pub fn closed_form_indicator_norm(lo: f64, hi: f64, q: f64) -> OracleResult {
    assert!(q >= 1.0 && (0.0..=1.0).contains(&lo) && lo <= hi && hi <= 1.0);
    OracleResult { value: (hi - lo).powf(1.0 / q), formula_id: "indicator_lq_norm" }
}

/// `‖c‖_{L^q} = |c|` on a probability space.
pub fn closed_form_constant_norm(c: f64) -> OracleResult {
    OracleResult { value: c.abs(), formula_id: "constant_lq_norm" }
}

/// `(Σ wᵢ |fᵢ|^q)^{1/q}` evaluated directly.
pub fn closed_form_finite_norm(weights: &[f64], values: &[f64], q: f64) -> OracleResult {
    assert_eq!(weights.len(), values.len());
    let sum: f64 = weights.iter().zip(values).map(|(w, f)| w * f.abs().powf(q)).sum();
    OracleResult { value: sum.powf(1.0 / q), formula_id: "finite_lq_norm" }
}

/// `max_ε ε^{θ/(p⁻-ε)} · norm(ε)` over `grid_size` uniform points strictly inside `(0, p⁻-1)`.
///
/// Returns `+∞` as soon as `norm` does.
///
/// # Panics
/// If `grid_size < MIN_GRID`, `pminus <= 1` or `theta <= 0`.
pub fn brute_force_grand_sup<F: Fn(f64) -> f64>(norm: F, pminus: f64, theta: f64, grid_size: usize) -> OracleResult {
    assert!(grid_size >= MIN_GRID, "grid_size must be at least {MIN_GRID}");
    assert!(pminus > 1.0 && theta > 0.0);
    let w = pminus - 1.0;
    let mut best = 0.0f64;
    for i in 1..=grid_size {
        let eps = w * i as f64 / (grid_size + 1) as f64;
        let n = norm(eps);
        if n.is_infinite() {
            return OracleResult { value: f64::INFINITY, formula_id: "uniform_grid_sup" };
        }
        best = best.max(eps.powf(theta / (pminus - eps)) * n);
    }
    OracleResult { value: best, formula_id: "uniform_grid_sup" }
}

/// Error returned when `sin(πα) = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegenerateRotation(pub f64);

impl std::fmt::Display for DegenerateRotation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "sin(π·{}) vanishes", self.0)
    }
}

impl std::error::Error for DegenerateRotation {}

/// `|sin(πnα)| / (n |sin(πα)|)`, the amplitude of `A_n cos(2π·)` under `x ↦ x + α`.
pub fn dirichlet_kernel_average(alpha: f64, n: u64) -> Result<OracleResult, DegenerateRotation> {
    assert!(n >= 1);
    let s = (PI * alpha.rem_euclid(1.0)).sin().abs();
    if s < 1e-15 {
        return Err(DegenerateRotation(alpha));
    }
    let phase = ((n as f64) * alpha).rem_euclid(2.0);
    let value = (PI * phase).sin().abs() / (n as f64 * s);
    Ok(OracleResult { value, formula_id: "dirichlet_kernel" })
}

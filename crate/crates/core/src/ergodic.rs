//! Numerical verification of the ergodic theorem in grand variable exponent
//! Lebesgue spaces.
//!
//! For a measure-preserving `T` and a `T`-invariant exponent the harness checks:
//! existence of `f_av` with finite grand norm, `f_av∘T = f_av`, `∫f_av = ∫f`,
//! the modular contraction `ϱ_{p-ε}(f_av) ≤ ϱ_{p-ε}(f)` and, for functions in
//! the closure subspace, `‖f_av - A_n f‖_{p(·),θ} → 0`.

use serde::{Deserialize, Serialize};

use crate::dynamics::{
    birkhoff_averages, check_exponent_invariant, check_measure_preserving, cycles, exact_limit_average,
    ExponentInvarianceReport, LimitAverage, LimitMethod, MeasurePreservingReport, Transformation, DEFAULT_CHECK_TOL,
};
use crate::error::{Error, HypothesisCheck, Result};
use crate::extended::ExtendedReal;
use crate::norms::{GrandGrid, ShiftedNorms, VanishingVerdict};
use crate::space::{integrate, Exponent, FunctionRep, ProbabilitySpace};

pub const NORM_CONTRACTION_SLACK: f64 = 1e-8;
pub const MODULAR_CONTRACTION_SLACK: f64 = 1e-10;
pub const FINITE_RESIDUAL_TOL: f64 = 1e-10;
pub const INTERVAL_RESIDUAL_TOL: f64 = 1e-6;
/// Floor of the `C/n` convergence envelope.
pub const CONVERGENCE_FLOOR: f64 = 1e-6;
pub const DEFAULT_CONTRACTION_POINTS: usize = 50;

/// `1, 2, 4, ..., 2^14`.
pub fn default_schedule() -> Vec<u64> {
    (0..=14).map(|k| 1u64 << k).collect()
}

/// `points` evenly spaced values strictly inside `(0, p⁻-1)`.
pub fn uniform_eps_grid(pminus: f64, points: usize) -> Vec<f64> {
    let w = pminus - 1.0;
    (1..=points).map(|i| i as f64 * w / (points + 1) as f64).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremSettings {
    pub theta: f64,
    pub n_schedule: Vec<u64>,
    /// ε values for the modular contraction; `None` means [`DEFAULT_CONTRACTION_POINTS`] uniform points.
    pub contraction_eps: Option<Vec<f64>>,
    /// ε sequence for the closure-membership test; `None` means [`crate::norms::default_vanishing_sequence`].
    pub vanishing_eps: Option<Vec<f64>>,
    pub grid: GrandGrid,
    pub check_tol: f64,
}

impl TheoremSettings {
    pub fn new(theta: f64) -> Self {
        TheoremSettings {
            theta,
            n_schedule: default_schedule(),
            contraction_eps: None,
            vanishing_eps: None,
            grid: GrandGrid::default(),
            check_tol: DEFAULT_CHECK_TOL,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.theta > 0.0 && self.theta.is_finite()) {
            return Err(Error::InvalidTheta(self.theta));
        }
        if self.n_schedule.is_empty() || self.n_schedule[0] == 0 || self.n_schedule.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter {
                name: "n_schedule",
                reason: "must be a nonempty strictly increasing list of positive integers".into(),
            });
        }
        self.grid.validate()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisChecks {
    pub measure_preserving: MeasurePreservingReport,
    pub exponent_invariant: ExponentInvarianceReport,
}

/// Runs both hypothesis checks; a failure is an [`Error::Hypothesis`] naming the check.
pub fn check_hypotheses(
    space: &ProbabilitySpace,
    t: &Transformation,
    p: &Exponent,
    tol: f64,
) -> Result<HypothesisChecks> {
    let measure_preserving = check_measure_preserving(t, space, tol)?;
    if !measure_preserving.preserving {
        return Err(Error::Hypothesis {
            check: HypothesisCheck::MeasurePreserving,
            detail: format!(
                "μ(T⁻¹{{{}}}) differs from its weight by {:e}",
                measure_preserving.worst_atom.unwrap_or(0),
                measure_preserving.worst_violation
            ),
        });
    }
    let exponent_invariant = check_exponent_invariant(t, p, space, tol)?;
    if !exponent_invariant.invariant {
        let at = exponent_invariant.worst_point.map(|x| x.to_string()).unwrap_or_default();
        return Err(Error::Hypothesis {
            check: HypothesisCheck::ExponentInvariant,
            detail: format!("|p(T(x)) - p(x)| = {} at {at}", exponent_invariant.max_deviation),
        });
    }
    Ok(HypothesisChecks { measure_preserving, exponent_invariant })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartI {
    pub limit_method: LimitMethod,
    pub fav_grand_norm: ExtendedReal,
    pub fav_argmax_eps: f64,
    pub f_grand_norm: ExtendedReal,
    pub f_argmax_eps: f64,
}

impl PartI {
    fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.f_grand_norm.is_finite() && self.fav_grand_norm.is_infinite() {
            out.push("part_i: f_av has infinite grand norm while f's is finite".into());
        }
        if self.fav_grand_norm.value() > self.f_grand_norm.value() + NORM_CONTRACTION_SLACK {
            out.push(format!(
                "part_i: grand norm of f_av ({}) exceeds that of f ({})",
                self.fav_grand_norm, self.f_grand_norm
            ));
        }
        out
    }
}

/// Computes `f_av` exactly and compares its grand norm to that of `f`.
pub fn verify_pointwise_limit(
    space: &ProbabilitySpace,
    f: &FunctionRep,
    t: &Transformation,
    theta: f64,
    p: &Exponent,
    grid: &GrandGrid,
) -> Result<PartI> {
    check_hypotheses(space, t, p, DEFAULT_CHECK_TOL)?;
    let fav = exact_limit_average(space, f, t)?;
    part_i(space, f, &fav, p, theta, grid)
}

fn part_i(
    space: &ProbabilitySpace,
    f: &FunctionRep,
    fav: &LimitAverage,
    p: &Exponent,
    theta: f64,
    grid: &GrandGrid,
) -> Result<PartI> {
    let gf = ShiftedNorms::new(space, f, p)?.grand_norm(theta, grid)?;
    let gfav = ShiftedNorms::new(space, &fav.rep, p)?.grand_norm(theta, grid)?;
    Ok(PartI {
        limit_method: fav.method,
        fav_grand_norm: gfav.value,
        fav_argmax_eps: gfav.argmax_eps,
        f_grand_norm: gf.value,
        f_argmax_eps: gf.argmax_eps,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartII {
    /// `max |f_av(T x) - f_av(x)|` over atoms or quadrature nodes.
    pub invariance_residual: f64,
    /// `|∫f_av - ∫f|`.
    pub mean_residual: f64,
    pub integral_f: f64,
    pub integral_fav: f64,
    pub tolerance: f64,
}

impl PartII {
    fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !(self.invariance_residual <= self.tolerance) {
            out.push(format!("part_ii: invariance residual {:e} above {:e}", self.invariance_residual, self.tolerance));
        }
        if !(self.mean_residual <= self.tolerance) {
            out.push(format!("part_ii: mean residual {:e} above {:e}", self.mean_residual, self.tolerance));
        }
        out
    }
}

/// Residuals of `f_av∘T = f_av` and `∫f_av = ∫f`.
pub fn verify_invariance(space: &ProbabilitySpace, f: &FunctionRep, t: &Transformation, p: &Exponent) -> Result<PartII> {
    check_hypotheses(space, t, p, DEFAULT_CHECK_TOL)?;
    let fav = exact_limit_average(space, f, t)?;
    part_ii(space, f, &fav, t)
}

fn part_ii(space: &ProbabilitySpace, f: &FunctionRep, fav: &LimitAverage, t: &Transformation) -> Result<PartII> {
    let invariance_residual = match (&fav.rep, space) {
        (FunctionRep::Constant { .. }, _) => 0.0,
        (_, _) if matches!(t, Transformation::Identity) => 0.0,
        (rep, ProbabilitySpace::Finite(_)) => {
            let shifted = crate::dynamics::compose(space, rep, t)?;
            let a = space.sample_function(rep)?;
            let b = space.sample_function(&shifted)?;
            a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
        }
        (rep, ProbabilitySpace::Interval(_)) => {
            let mut worst: f64 = 0.0;
            for x in space.sample_points() {
                let tx = crate::dynamics::apply_map(t, space, x)?;
                worst = worst.max((rep.evaluate(space, tx)? - rep.evaluate(space, x)?).abs());
            }
            worst
        }
    };
    let integral_f = integrate(space, f)?;
    let integral_fav = integrate(space, &fav.rep)?;
    let mean_residual = if integral_f == integral_fav { 0.0 } else { (integral_fav - integral_f).abs() };
    let tolerance = if space.as_finite().is_some() { FINITE_RESIDUAL_TOL } else { INTERVAL_RESIDUAL_TOL };
    Ok(PartII { invariance_residual, mean_residual, integral_f, integral_fav, tolerance })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContractionRow {
    pub eps: f64,
    pub modular_fav: ExtendedReal,
    pub modular_f: ExtendedReal,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Contraction {
    pub rows: Vec<ContractionRow>,
    /// The same comparison at ε = 0; informational only.
    pub boundary_probe: ContractionRow,
}

impl Contraction {
    fn violations(&self) -> Vec<String> {
        self.rows
            .iter()
            .filter(|r| !r.holds)
            .map(|r| format!("contraction: at eps = {} modular(f_av) = {} > modular(f) = {}", r.eps, r.modular_fav, r.modular_f))
            .collect()
    }
}

/// `ϱ_{p(·)-ε}(f_av) ≤ ϱ_{p(·)-ε}(f)` on an ε grid inside `(0, p⁻-1)`.
pub fn verify_modular_contraction(
    space: &ProbabilitySpace,
    f: &FunctionRep,
    t: &Transformation,
    p: &Exponent,
    eps_grid: Option<&[f64]>,
) -> Result<Contraction> {
    check_hypotheses(space, t, p, DEFAULT_CHECK_TOL)?;
    let fav = exact_limit_average(space, f, t)?;
    contraction(space, f, &fav, p, eps_grid)
}

fn contraction(
    space: &ProbabilitySpace,
    f: &FunctionRep,
    fav: &LimitAverage,
    p: &Exponent,
    eps_grid: Option<&[f64]>,
) -> Result<Contraction> {
    let nf = ShiftedNorms::new(space, f, p)?;
    let nfav = ShiftedNorms::new(space, &fav.rep, p)?;
    let row = |eps: f64| -> Result<ContractionRow> {
        let modular_fav = nfav.modular(eps)?;
        let modular_f = nf.modular(eps)?;
        let holds = modular_fav.value() <= modular_f.value() + MODULAR_CONTRACTION_SLACK;
        Ok(ContractionRow { eps, modular_fav, modular_f, holds })
    };
    let grid = match eps_grid {
        Some(g) => g.to_vec(),
        None => uniform_eps_grid(p.pminus(), DEFAULT_CONTRACTION_POINTS),
    };
    let rows = grid.into_iter().map(row).collect::<Result<Vec<_>>>()?;
    Ok(Contraction { rows, boundary_probe: row(0.0)? })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub n: u64,
    pub diff_grand_norm: ExtendedReal,
    pub argmax_eps: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartIII {
    pub rows: Vec<ConvergenceRow>,
    /// Whether convergence is asserted (closure members only).
    pub hard_check: bool,
    /// `max(1e-6, C/n_final)` with `C` the first row's value.
    pub envelope: f64,
    /// Schedule entries divisible by every cycle length, where the difference must vanish exactly.
    pub exact_rows: Vec<u64>,
}

impl PartIII {
    fn violations(&self) -> Vec<String> {
        if !self.hard_check {
            return Vec::new();
        }
        let mut out = Vec::new();
        if let Some(last) = self.rows.last() {
            if !(last.diff_grand_norm.value() <= self.envelope) {
                out.push(format!(
                    "part_iii: final difference {} at n = {} above envelope {:e}",
                    last.diff_grand_norm, last.n, self.envelope
                ));
            }
        }
        for row in self.rows.iter().filter(|r| self.exact_rows.contains(&r.n)) {
            if row.diff_grand_norm != ExtendedReal::ZERO {
                out.push(format!("part_iii: difference at n = {} is {}, expected exactly 0", row.n, row.diff_grand_norm));
            }
        }
        out
    }
}

/// `‖f_av - A_n f‖_{p(·),θ}` along `n_schedule`; asserted to decay only when `closure.is_member`.
#[allow(clippy::too_many_arguments)]
pub fn verify_norm_convergence(
    space: &ProbabilitySpace,
    f: &FunctionRep,
    t: &Transformation,
    p: &Exponent,
    theta: f64,
    n_schedule: &[u64],
    closure: &VanishingVerdict,
    grid: &GrandGrid,
) -> Result<PartIII> {
    check_hypotheses(space, t, p, DEFAULT_CHECK_TOL)?;
    let fav = exact_limit_average(space, f, t)?;
    part_iii(space, f, &fav, t, p, theta, n_schedule, closure, grid)
}

#[allow(clippy::too_many_arguments)]
fn part_iii(
    space: &ProbabilitySpace,
    f: &FunctionRep,
    fav: &LimitAverage,
    t: &Transformation,
    p: &Exponent,
    theta: f64,
    n_schedule: &[u64],
    closure: &VanishingVerdict,
    grid: &GrandGrid,
) -> Result<PartIII> {
    let fav_values = space.sample_function(&fav.rep)?;
    let averages = birkhoff_averages(space, f, t, n_schedule)?;
    let mut rows = Vec::with_capacity(n_schedule.len());
    for (&n, avg) in n_schedule.iter().zip(&averages) {
        let avg_values = space.sample_function(avg)?;
        let diff: Vec<f64> = fav_values.iter().zip(&avg_values).map(|(a, b)| a - b).collect();
        let diff = match space {
            ProbabilitySpace::Finite(_) => FunctionRep::Sampled { values: diff },
            ProbabilitySpace::Interval(_) => FunctionRep::Nodal { values: diff },
        };
        let est = ShiftedNorms::new(space, &diff, p)?.grand_norm(theta, grid)?;
        rows.push(ConvergenceRow { n, diff_grand_norm: est.value, argmax_eps: est.argmax_eps });
    }
    let first = rows.first().map(|r| r.diff_grand_norm.value()).unwrap_or(0.0);
    let n_final = *n_schedule.last().unwrap_or(&1) as f64;
    let envelope = CONVERGENCE_FLOOR.max(first / n_final);
    let exact_rows = match t {
        Transformation::Identity => n_schedule.to_vec(),
        Transformation::FiniteMap { map } => {
            let lengths: Vec<u64> = cycles(map).iter().map(|c| c.len() as u64).collect();
            n_schedule.iter().copied().filter(|n| lengths.iter().all(|l| n % l == 0)).collect()
        }
        _ => Vec::new(),
    };
    Ok(PartIII { rows, hard_check: closure.is_member, envelope, exact_rows })
}

/// Everything the harness measured for one `(Ω, f, p, T, θ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theta: f64,
    pub n_schedule: Vec<u64>,
    pub hypothesis_checks: HypothesisChecks,
    pub part_i: PartI,
    pub part_ii: PartII,
    pub contraction: Contraction,
    pub part_iii: PartIII,
    pub closure_member: VanishingVerdict,
    pub violations: Vec<String>,
    pub passed: bool,
}

/// Runs every check. Hypothesis failures abort with [`Error::Hypothesis`];
/// theorem-check failures are listed in [`TheoremReport::violations`].
pub fn verify_theorem(
    space: &ProbabilitySpace,
    f: &FunctionRep,
    t: &Transformation,
    p: &Exponent,
    settings: &TheoremSettings,
) -> Result<TheoremReport> {
    settings.validate()?;
    t.validate(space)?;
    f.validate(space)?;
    p.validate(space)?;
    let hypothesis_checks = check_hypotheses(space, t, p, settings.check_tol)?;
    let fav = exact_limit_average(space, f, t)?;
    let closure_member = ShiftedNorms::new(space, f, p)?.vanishing_limit(settings.theta, settings.vanishing_eps.as_deref())?;

    let part_i = part_i(space, f, &fav, p, settings.theta, &settings.grid)?;
    let part_ii = part_ii(space, f, &fav, t)?;
    let contraction = contraction(space, f, &fav, p, settings.contraction_eps.as_deref())?;
    let part_iii = part_iii(space, f, &fav, t, p, settings.theta, &settings.n_schedule, &closure_member, &settings.grid)?;

    let mut violations = part_i.violations();
    violations.extend(part_ii.violations());
    violations.extend(contraction.violations());
    violations.extend(part_iii.violations());
    Ok(TheoremReport {
        theta: settings.theta,
        n_schedule: settings.n_schedule.clone(),
        hypothesis_checks,
        part_i,
        part_ii,
        contraction,
        part_iii,
        closure_member,
        passed: violations.is_empty(),
        violations,
    })
}

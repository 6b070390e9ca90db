//! The modular `ϱ(f) = ∫|f|^{p(x)-ε} dμ`, the Luxemburg norm, the grand
//! variable exponent norm and the vanishing-limit membership test for the
//! closure subspace.
//!
//! Every shifted modular is reduced to a sum `Σ c_k λ^{-q_k}` (one term per
//! atom, per distinct exponent, or per closed-form piece), so evaluating
//! `ϱ(f/λ)` inside the bisection costs one `exp` per distinct exponent.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extended::ExtendedReal;
use crate::quadrature::geometric_tail;
use crate::space::{Exponent, FunctionRep, ProbabilitySpace};

pub const DEFAULT_REL_TOL: f64 = 1e-10;
pub const MAX_BISECTION_ITERATIONS: usize = 200;
/// Largest power of two tried while bracketing the Luxemburg norm.
pub const MAX_BRACKET_EXPONENT: i32 = 1023;
/// A vanishing-limit estimate at or below this counts as zero.
pub const MEMBERSHIP_TOL: f64 = 1e-6;
/// Relative spread of the last three trace values treated as a plateau.
pub const PLATEAU_REL_SPREAD: f64 = 1e-6;
/// Relative disagreement allowed between successive difference ratios.
pub const RATIO_AGREEMENT: f64 = 0.1;

/// `Σ exp(ln_c - q·ln λ)` with one term per distinct `q`.
#[derive(Debug, Clone, Default, PartialEq)]
struct PowerSum {
    terms: Vec<(f64, f64)>,
}

impl PowerSum {
    fn from_terms(mut raw: Vec<(f64, f64)>) -> Self {
        raw.retain(|(_, ln_c)| *ln_c > f64::NEG_INFINITY);
        raw.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut terms: Vec<(f64, f64)> = Vec::new();
        let mut i = 0;
        while i < raw.len() {
            let q = raw[i].0;
            let mut j = i;
            while j < raw.len() && raw[j].0 == q {
                j += 1;
            }
            terms.push((q, log_sum_exp(raw[i..j].iter().map(|t| t.1))));
            i = j;
        }
        PowerSum { terms }
    }

    fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn eval(&self, ln_lambda: f64) -> f64 {
        self.terms.iter().map(|(q, ln_c)| (ln_c - q * ln_lambda).exp()).sum()
    }
}

fn log_sum_exp(values: impl Iterator<Item = f64> + Clone) -> f64 {
    let max = values.clone().fold(f64::NEG_INFINITY, f64::max);
    if max.is_infinite() {
        return max;
    }
    max + values.map(|v| (v - max).exp()).sum::<f64>().ln()
}

/// `λ ↦ ϱ(f/λ)` at a fixed shift.
#[derive(Debug, Clone, PartialEq)]
enum Kernel {
    Zero,
    Infinite,
    Sum(PowerSum),
    /// Quadrature body plus geometric tail corrections `(prev, last)` per graded run.
    Quadrature { body: PowerSum, tails: Vec<(PowerSum, PowerSum)> },
}

impl Kernel {
    fn modular(&self, lambda: f64) -> f64 {
        let ln_lambda = lambda.ln();
        match self {
            Kernel::Zero => 0.0,
            Kernel::Infinite => f64::INFINITY,
            Kernel::Sum(s) => s.eval(ln_lambda),
            Kernel::Quadrature { body, tails } => {
                body.eval(ln_lambda)
                    + tails.iter().map(|(p, l)| geometric_tail(p.eval(ln_lambda), l.eval(ln_lambda))).sum::<f64>()
            }
        }
    }

    /// `inf{λ > 0 : ϱ(f/λ) ≤ 1}` by power-of-two bracketing from 1, then bisection.
    fn luxemburg(&self, rel_tol: f64) -> Result<ExtendedReal> {
        match self {
            Kernel::Zero => return Ok(ExtendedReal::ZERO),
            Kernel::Infinite => return Ok(ExtendedReal::INFINITY),
            _ => {}
        }
        let too_big = |lambda: f64| self.modular(lambda) > 1.0;
        let (mut lo, mut hi);
        if too_big(1.0) {
            let k = (1..=MAX_BRACKET_EXPONENT)
                .find(|&k| !too_big(2f64.powi(k)))
                .ok_or(Error::BracketOverflow)?;
            lo = 2f64.powi(k - 1);
            hi = 2f64.powi(k);
        } else {
            let k = (1..=MAX_BRACKET_EXPONENT)
                .find(|&k| too_big(2f64.powi(-k)))
                .ok_or(Error::BracketOverflow)?;
            lo = 2f64.powi(-k);
            hi = 2f64.powi(-k + 1);
        }
        let mut iterations = 0;
        while hi - lo > rel_tol * lo {
            if iterations == MAX_BISECTION_ITERATIONS {
                return Err(Error::IterationCap { rel_tol, iterations });
            }
            let mid = 0.5 * (lo + hi);
            if too_big(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
            iterations += 1;
        }
        Ok(ExtendedReal::new(0.5 * (lo + hi)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Shape {
    /// `|c|` on the piece.
    Level(f64),
    /// `x^a` on the piece.
    Power(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct ClosedPiece {
    lo: f64,
    hi: f64,
    p: f64,
    shape: Shape,
}

#[derive(Debug, Clone, PartialEq)]
enum Source {
    Closed(Vec<ClosedPiece>),
    Samples { abs: Vec<f64>, exponents: Vec<f64> },
}

/// Shifted modulars and norms `ε ↦ ‖f‖_{p(·)-ε}` of one function on one space.
#[derive(Debug, Clone)]
pub struct ShiftedNorms<'a> {
    space: &'a ProbabilitySpace,
    source: Source,
    pminus: f64,
    /// `(a, p(0⁺))` for `Power(a)` on the interval, which fixes the behavior as ε → 0.
    power_at_zero: Option<(f64, f64)>,
}

impl<'a> ShiftedNorms<'a> {
    pub fn new(space: &'a ProbabilitySpace, f: &FunctionRep, p: &Exponent) -> Result<Self> {
        f.validate(space)?;
        p.validate(space)?;
        let closed = match (space, f, p.interval_pieces()) {
            (ProbabilitySpace::Interval(_), FunctionRep::Power { .. }, Some(pieces))
            | (ProbabilitySpace::Interval(_), FunctionRep::Constant { .. }, Some(pieces))
            | (ProbabilitySpace::Interval(_), FunctionRep::Indicator { .. }, Some(pieces)) => {
                Some(closed_pieces(f, &pieces))
            }
            _ => None,
        };
        let power_at_zero = match (f, p.interval_pieces()) {
            (FunctionRep::Power { a }, Some(pieces)) if space.as_interval().is_some() => Some((*a, pieces[0].p)),
            _ => None,
        };
        let source = match closed {
            Some(pieces) => Source::Closed(pieces),
            None => Source::Samples {
                abs: space.sample_function(f)?.into_iter().map(f64::abs).collect(),
                exponents: space.sample_exponent(p)?,
            },
        };
        Ok(ShiftedNorms { space, source, pminus: p.pminus(), power_at_zero })
    }

    pub fn pminus(&self) -> f64 {
        self.pminus
    }

    /// True when the grand norm is `+∞` for a reason the ε grid cannot see,
    /// detected analytically for `Power(a)` with `q = p(0⁺)`:
    /// either `a·q < -1` (shifted norms are infinite for small ε), or `a·q = -1`,
    /// where `‖f‖_{p(·)-ε} ~ ε^{-1/q}` and the weighted product blows up iff `θ·q < p⁻`.
    pub fn grand_diverges(&self, theta: f64) -> bool {
        match self.power_at_zero {
            Some((a, q)) if a * q < -1.0 => true,
            Some((a, q)) if (a * q + 1.0).abs() <= 4.0 * f64::EPSILON => theta * q < self.pminus,
            _ => false,
        }
    }

    fn kernel(&self, eps: f64) -> Result<Kernel> {
        check_shift(eps, self.pminus)?;
        Ok(match &self.source {
            Source::Closed(pieces) => {
                let mut terms = Vec::with_capacity(pieces.len());
                for piece in pieces {
                    let q = piece.p - eps;
                    match piece.shape {
                        Shape::Level(c) => {
                            if c > 0.0 {
                                terms.push((q, q * c.ln() + (piece.hi - piece.lo).ln()));
                            }
                        }
                        Shape::Power(a) => match power_integral(a * q, piece.lo, piece.hi) {
                            Some(integral) => terms.push((q, integral.ln())),
                            None => return Ok(Kernel::Infinite),
                        },
                    }
                }
                let sum = PowerSum::from_terms(terms);
                if sum.is_empty() {
                    Kernel::Zero
                } else {
                    Kernel::Sum(sum)
                }
            }
            Source::Samples { abs, exponents } => {
                let term = |i: usize, w: f64| (exponents[i] - eps, w.ln() + (exponents[i] - eps) * abs[i].ln());
                match self.space {
                    ProbabilitySpace::Finite(s) => {
                        let sum = PowerSum::from_terms(s.weights().iter().enumerate().map(|(i, &w)| term(i, w)).collect());
                        if sum.is_empty() {
                            Kernel::Zero
                        } else {
                            Kernel::Sum(sum)
                        }
                    }
                    ProbabilitySpace::Interval(s) => {
                        let rule = s.rule();
                        let over = |r: std::ops::Range<usize>| {
                            PowerSum::from_terms(r.map(|i| term(i, rule.weights()[i])).collect())
                        };
                        let body = over(0..rule.len());
                        if body.is_empty() {
                            Kernel::Zero
                        } else {
                            let tails = rule.tail_ranges().map(|(p, l)| (over(p.clone()), over(l.clone()))).collect();
                            Kernel::Quadrature { body, tails }
                        }
                    }
                }
            }
        })
    }

    /// `ϱ_{p(·)-ε}(f/λ)`.
    pub fn modular_scaled(&self, eps: f64, lambda: f64) -> Result<ExtendedReal> {
        if !(lambda > 0.0) {
            return Err(Error::InvalidParameter { name: "lambda", reason: format!("must be positive, got {lambda}") });
        }
        let m = self.kernel(eps)?.modular(lambda);
        Ok(ExtendedReal::new(m.max(0.0)))
    }

    pub fn modular(&self, eps: f64) -> Result<ExtendedReal> {
        self.modular_scaled(eps, 1.0)
    }

    pub fn luxemburg(&self, eps: f64, rel_tol: f64) -> Result<ExtendedReal> {
        check_rel_tol(rel_tol)?;
        self.kernel(eps)?.luxemburg(rel_tol)
    }
}

/// `∫_lo^hi x^c dx`, `None` when it diverges at 0.
fn power_integral(c: f64, lo: f64, hi: f64) -> Option<f64> {
    let d = c + 1.0;
    if lo == 0.0 {
        if d <= 0.0 {
            return None;
        }
        return Some(hi.powf(d) / d);
    }
    if d == 0.0 {
        return Some((hi / lo).ln());
    }
    // lo^d · (exp(d·ln(hi/lo)) - 1) / d, stable for small d
    Some(lo.powf(d) * (d * (hi / lo).ln()).exp_m1() / d)
}

fn closed_pieces(f: &FunctionRep, exponent: &[crate::space::ExponentPiece]) -> Vec<ClosedPiece> {
    exponent
        .iter()
        .filter_map(|e| {
            let (lo, hi, shape) = match *f {
                FunctionRep::Power { a } => (e.lo, e.hi, Shape::Power(a)),
                FunctionRep::Constant { value } => (e.lo, e.hi, Shape::Level(value.abs())),
                FunctionRep::Indicator { lo, hi } => (e.lo.max(lo), e.hi.min(hi), Shape::Level(1.0)),
                _ => unreachable!("only closed-form catalog entries reach here"),
            };
            (lo < hi).then_some(ClosedPiece { lo, hi, p: e.p, shape })
        })
        .collect()
}

fn check_shift(eps: f64, pminus: f64) -> Result<()> {
    if eps == 0.0 || (eps > 0.0 && eps < pminus - 1.0) {
        Ok(())
    } else {
        Err(Error::EpsOutOfRange { eps, upper: pminus - 1.0 })
    }
}

fn check_rel_tol(rel_tol: f64) -> Result<()> {
    if rel_tol > 0.0 && rel_tol <= 1e-3 {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name: "rel_tol", reason: format!("must lie in (0, 1e-3], got {rel_tol}") })
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if theta > 0.0 && theta.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidTheta(theta))
    }
}

/// `∫_Ω |f(x)|^{p(x) - eps_shift} dμ`; `eps_shift` is 0 or inside `(0, p⁻-1)`.
pub fn modular(space: &ProbabilitySpace, f: &FunctionRep, p: &Exponent, eps_shift: f64) -> Result<ExtendedReal> {
    ShiftedNorms::new(space, f, p)?.modular(eps_shift)
}

/// The Luxemburg norm `‖f‖_{p(·)-eps_shift}`.
pub fn luxemburg_norm(
    space: &ProbabilitySpace,
    f: &FunctionRep,
    p: &Exponent,
    eps_shift: f64,
    rel_tol: f64,
) -> Result<ExtendedReal> {
    ShiftedNorms::new(space, f, p)?.luxemburg(eps_shift, rel_tol)
}

/// `ε^{θ/(p⁻-ε)}` for `0 < ε < p⁻-1`.
pub fn grand_weight(eps: f64, pminus: f64, theta: f64) -> Result<f64> {
    check_theta(theta)?;
    if !(eps > 0.0 && eps < pminus - 1.0) {
        return Err(Error::EpsOutOfRange { eps, upper: pminus - 1.0 });
    }
    Ok(eps.powf(theta / (pminus - eps)))
}

/// The ε grid used to approximate the grand-norm supremum over `(0, p⁻-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GrandGrid {
    /// Log-spaced points from `edge_offset·w` to `w/2`, `w = p⁻-1`.
    pub geometric: usize,
    /// Evenly spaced points from `w/64` to `(1 - edge_offset)·w`.
    pub uniform: usize,
    pub edge_offset: f64,
    /// Golden-section refinement stops once the ε bracket is narrower than this.
    pub refine_tol: f64,
    /// Number of best local maxima of the grid that get refined.
    pub refine_peaks: usize,
    /// Relative tolerance of each Luxemburg evaluation.
    pub rel_tol: f64,
}

impl Default for GrandGrid {
    fn default() -> Self {
        GrandGrid {
            geometric: 64,
            uniform: 64,
            edge_offset: 1e-6,
            refine_tol: 1e-8,
            refine_peaks: 3,
            rel_tol: DEFAULT_REL_TOL,
        }
    }
}

impl GrandGrid {
    pub fn validate(&self) -> Result<()> {
        let bad = |name, reason: &str| Err(Error::InvalidParameter { name, reason: reason.into() });
        if self.geometric + self.uniform < 2 {
            return bad("grid", "needs at least two points");
        }
        if !(self.edge_offset > 0.0 && self.edge_offset < 0.5) {
            return bad("edge_offset", "must lie in (0, 0.5)");
        }
        if !(self.refine_tol > 0.0) {
            return bad("refine_tol", "must be positive");
        }
        check_rel_tol(self.rel_tol)
    }

    /// Same layout with twice as many points of each kind.
    pub fn densified(&self) -> Self {
        GrandGrid { geometric: 2 * self.geometric, uniform: 2 * self.uniform, ..*self }
    }

    /// Sorted, deduplicated grid points inside `(0, p⁻-1)`.
    pub fn points(&self, pminus: f64) -> Vec<f64> {
        let w = pminus - 1.0;
        let mut pts = Vec::with_capacity(self.geometric + self.uniform);
        let lo = self.edge_offset * w;
        let ratio_span = (0.5 * w / lo).ln();
        for i in 0..self.geometric {
            let t = if self.geometric == 1 { 0.0 } else { i as f64 / (self.geometric - 1) as f64 };
            pts.push(lo * (t * ratio_span).exp());
        }
        let (ua, ub) = (w / 64.0, (1.0 - self.edge_offset) * w);
        for i in 0..self.uniform {
            let t = if self.uniform == 1 { 1.0 } else { i as f64 / (self.uniform - 1) as f64 };
            pts.push(ua + t * (ub - ua));
        }
        pts.retain(|e| *e > 0.0 && *e < w);
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrandSample {
    pub eps: f64,
    pub weight: f64,
    pub shifted_norm: ExtendedReal,
    pub product: ExtendedReal,
}

/// Lower-bound estimate of `sup_{0<ε<p⁻-1} ε^{θ/(p⁻-ε)} ‖f‖_{p(·)-ε}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrandNormEstimate {
    pub value: ExtendedReal,
    pub argmax_eps: f64,
    pub samples: Vec<GrandSample>,
    pub theta: f64,
    pub grid: GrandGrid,
}

impl ShiftedNorms<'_> {
    fn grand_sample(&self, eps: f64, theta: f64, rel_tol: f64) -> Result<GrandSample> {
        let weight = grand_weight(eps, self.pminus, theta)?;
        let shifted_norm = self.luxemburg(eps, rel_tol)?;
        Ok(GrandSample { eps, weight, shifted_norm, product: shifted_norm * weight })
    }

    /// Grid evaluation followed by golden-section refinement around the best local maxima.
    pub fn grand_norm(&self, theta: f64, grid: &GrandGrid) -> Result<GrandNormEstimate> {
        check_theta(theta)?;
        grid.validate()?;
        let points = grid.points(self.pminus);
        let mut samples: Vec<GrandSample> = points
            .par_iter()
            .map(|&eps| self.grand_sample(eps, theta, grid.rel_tol))
            .collect::<Result<_>>()?;

        if let Some(s) = samples.iter().find(|s| s.product.is_infinite()) {
            let argmax_eps = s.eps;
            return Ok(GrandNormEstimate { value: ExtendedReal::INFINITY, argmax_eps, samples, theta, grid: *grid });
        }
        if self.grand_diverges(theta) {
            let argmax_eps = points[0];
            return Ok(GrandNormEstimate { value: ExtendedReal::INFINITY, argmax_eps, samples, theta, grid: *grid });
        }

        let products: Vec<f64> = samples.iter().map(|s| s.product.value()).collect();
        let mut peaks: Vec<usize> = (0..products.len())
            .filter(|&i| {
                let left = i == 0 || products[i] >= products[i - 1];
                let right = i + 1 == products.len() || products[i] >= products[i + 1];
                left && right && products[i] > 0.0
            })
            .collect();
        peaks.sort_by(|&a, &b| products[b].total_cmp(&products[a]).then(a.cmp(&b)));
        peaks.truncate(grid.refine_peaks);

        let refined: Vec<Vec<GrandSample>> = peaks
            .par_iter()
            .map(|&i| {
                let a = points[i.saturating_sub(1)];
                let b = points[(i + 1).min(points.len() - 1)];
                golden_maximize(a, b, grid.refine_tol, |eps| self.grand_sample(eps, theta, grid.rel_tol))
            })
            .collect::<Result<_>>()?;
        samples.extend(refined.into_iter().flatten());

        let best = samples
            .iter()
            .fold(None::<&GrandSample>, |best, s| match best {
                Some(b) if b.product >= s.product => Some(b),
                _ => Some(s),
            })
            .expect("grid is nonempty");
        Ok(GrandNormEstimate { value: best.product, argmax_eps: best.eps, samples, theta, grid: *grid })
    }

    /// `ε ↦ ε^{θ/(p⁻-ε)} ‖f‖_{p(·)-ε}` along a decreasing sequence, with a tail verdict.
    pub fn vanishing_limit(&self, theta: f64, eps_sequence: Option<&[f64]>) -> Result<VanishingVerdict> {
        check_theta(theta)?;
        let eps: Vec<f64> = match eps_sequence {
            Some(seq) => seq.to_vec(),
            None => default_vanishing_sequence(self.pminus),
        };
        if eps.len() < 4 {
            return Err(Error::InvalidParameter { name: "eps_sequence", reason: "needs at least four values".into() });
        }
        if eps.windows(2).any(|w| !(w[1] < w[0])) {
            return Err(Error::InvalidParameter { name: "eps_sequence", reason: "must be strictly decreasing".into() });
        }
        let trace: Vec<TracePoint> = eps
            .par_iter()
            .map(|&e| {
                let weight = grand_weight(e, self.pminus, theta)?;
                let norm = self.luxemburg(e, DEFAULT_REL_TOL)?;
                Ok(TracePoint { eps: e, weighted_norm: norm * weight })
            })
            .collect::<Result<_>>()?;
        let (status, limit_estimate) = assess_tail(&trace);
        let is_member = status.is_converged() && limit_estimate.value() <= MEMBERSHIP_TOL;
        Ok(VanishingVerdict { limit_estimate, is_member, status, trace })
    }
}

fn golden_maximize(
    mut a: f64,
    mut b: f64,
    tol: f64,
    f: impl Fn(f64) -> Result<GrandSample>,
) -> Result<Vec<GrandSample>> {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut evaluated = Vec::new();
    if !(b - a > tol) {
        return Ok(evaluated);
    }
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    evaluated.push(fc);
    evaluated.push(fd);
    while b - a > tol {
        if fc.product >= fd.product {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
            evaluated.push(fc);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
            evaluated.push(fd);
        }
    }
    Ok(evaluated)
}

/// Grand norm `‖f‖_{p(·),θ}` estimated on `grid`.
pub fn grand_norm(
    space: &ProbabilitySpace,
    f: &FunctionRep,
    p: &Exponent,
    theta: f64,
    grid: &GrandGrid,
) -> Result<GrandNormEstimate> {
    ShiftedNorms::new(space, f, p)?.grand_norm(theta, grid)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub eps: f64,
    pub weighted_norm: ExtendedReal,
}

/// How the tail of a vanishing trace behaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailStatus {
    /// Last three values agree to [`PLATEAU_REL_SPREAD`].
    Plateau,
    /// Successive differences shrink by a stable ratio; the remaining geometric series is summed.
    GeometricDecay,
    /// Values grow without bound.
    Divergent,
    /// None of the above; the final value is reported as-is.
    NonConvergent,
}

impl TailStatus {
    pub fn is_converged(self) -> bool {
        matches!(self, TailStatus::Plateau | TailStatus::GeometricDecay)
    }
}

/// Verdict on `lim_{ε→0} ε^{θ/(p⁻-ε)} ‖f‖_{p(·)-ε} = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VanishingVerdict {
    pub limit_estimate: ExtendedReal,
    pub is_member: bool,
    pub status: TailStatus,
    pub trace: Vec<TracePoint>,
}

/// `2^{-k}·(p⁻-1)/2` for `k = 1..=40`.
pub fn default_vanishing_sequence(pminus: f64) -> Vec<f64> {
    (1..=40).map(|k| 2f64.powi(-k) * (pminus - 1.0) / 2.0).collect()
}

fn assess_tail(trace: &[TracePoint]) -> (TailStatus, ExtendedReal) {
    let v: Vec<f64> = trace.iter().map(|t| t.weighted_norm.value()).collect();
    let n = v.len();
    let last = ExtendedReal::new(v[n - 1]);
    let tail3 = &v[n - 3..];
    if tail3.iter().any(|x| x.is_infinite()) {
        return if tail3.iter().all(|x| x.is_infinite()) {
            (TailStatus::Divergent, ExtendedReal::INFINITY)
        } else {
            (TailStatus::NonConvergent, last)
        };
    }
    let (a, b, c, d) = (v[n - 4], v[n - 3], v[n - 2], v[n - 1]);
    let scale = b.abs().max(c.abs()).max(d.abs());
    if scale == 0.0 {
        return (TailStatus::Plateau, ExtendedReal::ZERO);
    }
    let spread = tail3.iter().fold(f64::NEG_INFINITY, |m, x| m.max(*x)) - tail3.iter().fold(f64::INFINITY, |m, x| m.min(*x));
    if spread <= PLATEAU_REL_SPREAD * scale {
        return (TailStatus::Plateau, last);
    }
    if !a.is_finite() {
        return (TailStatus::NonConvergent, last);
    }
    let (d1, d2, d3) = (b - a, c - b, d - c);
    if d1 == 0.0 || d2 == 0.0 {
        return (TailStatus::NonConvergent, last);
    }
    let (r1, r2) = (d2 / d1, d3 / d2);
    let agree = r1 > 0.0 && r2 > 0.0 && (r2 - r1).abs() <= RATIO_AGREEMENT * r1.max(r2);
    if !agree {
        return (TailStatus::NonConvergent, last);
    }
    if r2 < 1.0 {
        let limit = d + d3 * r2 / (1.0 - r2);
        (TailStatus::GeometricDecay, ExtendedReal::new(limit.max(0.0)))
    } else if d3 > 0.0 {
        (TailStatus::Divergent, ExtendedReal::INFINITY)
    } else {
        (TailStatus::NonConvergent, last)
    }
}

/// Membership in the closure subspace via the vanishing limit of the weighted shifted norms.
pub fn vanishing_limit(
    space: &ProbabilitySpace,
    f: &FunctionRep,
    p: &Exponent,
    theta: f64,
    eps_sequence: Option<&[f64]>,
) -> Result<VanishingVerdict> {
    ShiftedNorms::new(space, f, p)?.vanishing_limit(theta, eps_sequence)
}

//! Probability spaces, measurable functions, variable exponents and
//! integration against the probability measure.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{QuadratureRule, QuadratureSpec};

/// Tolerance on `Σ weights = 1`.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// A point of a space: an atom index on finite spaces, a real in `(0, 1)` on the interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Point {
    Atom(usize),
    Real(f64),
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Point::Atom(i) => write!(f, "atom {i}"),
            Point::Real(x) => write!(f, "x = {x}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteSpace {
    weights: Vec<f64>,
}

impl FiniteSpace {
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn atom_count(&self) -> usize {
        self.weights.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntervalSpace {
    spec: QuadratureSpec,
    rule: QuadratureRule,
}

impl IntervalSpace {
    pub fn spec(&self) -> &QuadratureSpec {
        &self.spec
    }

    pub fn rule(&self) -> &QuadratureRule {
        &self.rule
    }
}

/// `(Ω, Σ, μ)`: either finitely many weighted atoms or `(0, 1)` with Lebesgue measure.
#[derive(Debug, Clone, PartialEq)]
pub enum ProbabilitySpace {
    Finite(FiniteSpace),
    Interval(IntervalSpace),
}

impl ProbabilitySpace {
    /// Weights must be strictly positive and sum to one within [`NORMALIZATION_TOL`].
    pub fn finite(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidSpace("a finite space needs at least one atom".into()));
        }
        if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| !(**w > 0.0 && w.is_finite())) {
            return Err(Error::InvalidSpace(format!("atom {i} has non-positive weight {w}")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidSpace(format!("weights sum to {total}, not 1")));
        }
        Ok(ProbabilitySpace::Finite(FiniteSpace { weights }))
    }

    pub fn uniform(atoms: usize) -> Result<Self> {
        if atoms == 0 {
            return Err(Error::InvalidSpace("a finite space needs at least one atom".into()));
        }
        Self::finite(vec![1.0 / atoms as f64; atoms])
    }

    pub fn interval(spec: QuadratureSpec) -> Result<Self> {
        let rule = QuadratureRule::build(&spec)?;
        Ok(ProbabilitySpace::Interval(IntervalSpace { spec, rule }))
    }

    /// `(0, 1)` with default quadrature and no singular points.
    pub fn unit_interval() -> Self {
        Self::interval(QuadratureSpec::default()).expect("default quadrature is valid")
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ProbabilitySpace::Finite(_) => "finite",
            ProbabilitySpace::Interval(_) => "interval",
        }
    }

    pub fn as_finite(&self) -> Option<&FiniteSpace> {
        match self {
            ProbabilitySpace::Finite(s) => Some(s),
            ProbabilitySpace::Interval(_) => None,
        }
    }

    pub fn as_interval(&self) -> Option<&IntervalSpace> {
        match self {
            ProbabilitySpace::Interval(s) => Some(s),
            ProbabilitySpace::Finite(_) => None,
        }
    }

    /// Points at which sampled representations live: atoms, or quadrature nodes.
    pub fn sample_points(&self) -> Vec<Point> {
        match self {
            ProbabilitySpace::Finite(s) => (0..s.atom_count()).map(Point::Atom).collect(),
            ProbabilitySpace::Interval(s) => s.rule.nodes().iter().map(|&x| Point::Real(x)).collect(),
        }
    }

    pub fn sample_count(&self) -> usize {
        match self {
            ProbabilitySpace::Finite(s) => s.atom_count(),
            ProbabilitySpace::Interval(s) => s.rule.len(),
        }
    }

    /// Integral of a function given by its values at [`Self::sample_points`].
    pub fn integrate_samples(&self, values: &[f64]) -> f64 {
        match self {
            ProbabilitySpace::Finite(s) => dot(&s.weights, values),
            ProbabilitySpace::Interval(s) => s.rule.integrate(values),
        }
    }

    /// Integral of a pointwise composite. No divergence detection is attempted.
    pub fn integrate_fn(&self, g: impl Fn(Point) -> f64) -> f64 {
        let values: Vec<f64> = self.sample_points().into_iter().map(g).collect();
        self.integrate_samples(&values)
    }

    /// Values of `f` at [`Self::sample_points`].
    pub fn sample_function(&self, f: &FunctionRep) -> Result<Vec<f64>> {
        f.validate(self)?;
        match f {
            FunctionRep::Sampled { values } | FunctionRep::Nodal { values } => Ok(values.clone()),
            _ => self.sample_points().into_iter().map(|x| f.evaluate_at(x)).collect(),
        }
    }

    /// Values of `p` at [`Self::sample_points`].
    pub fn sample_exponent(&self, p: &Exponent) -> Result<Vec<f64>> {
        p.validate(self)?;
        self.sample_points().into_iter().map(|x| p.evaluate(x)).collect()
    }

    fn check_point(&self, x: Point) -> Result<()> {
        match (self, x) {
            (ProbabilitySpace::Finite(s), Point::Atom(i)) if i < s.atom_count() => Ok(()),
            (ProbabilitySpace::Interval(_), Point::Real(r)) if (0.0..=1.0).contains(&r) => Ok(()),
            _ => Err(Error::Evaluation { what: "point", point: format!("{x} on a {} space", self.kind()) }),
        }
    }
}

/// A measurable function: sampled on atoms or nodes, or a closed-form catalog entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctionRep {
    /// One value per atom of a finite space.
    Sampled { values: Vec<f64> },
    /// `x^a` on `(0, 1)`.
    Power { a: f64 },
    /// `cos(2πkx)`.
    Cosine { k: u32 },
    /// Indicator of `[lo, hi)`.
    Indicator { lo: f64, hi: f64 },
    Constant { value: f64 },
    /// One value per quadrature node of an interval space.
    Nodal { values: Vec<f64> },
}

impl FunctionRep {
    pub fn sampled(values: Vec<f64>) -> Self {
        FunctionRep::Sampled { values }
    }

    pub fn constant(value: f64) -> Self {
        FunctionRep::Constant { value }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FunctionRep::Sampled { .. } => "sampled function",
            FunctionRep::Power { .. } => "power function",
            FunctionRep::Cosine { .. } => "cosine",
            FunctionRep::Indicator { .. } => "indicator",
            FunctionRep::Constant { .. } => "constant",
            FunctionRep::Nodal { .. } => "nodal function",
        }
    }

    /// Closed-form entries that can be evaluated anywhere on `(0, 1)`.
    pub fn is_catalog(&self) -> bool {
        !matches!(self, FunctionRep::Sampled { .. } | FunctionRep::Nodal { .. })
    }

    pub fn is_bounded(&self) -> bool {
        match self {
            FunctionRep::Power { a } => *a >= 0.0,
            _ => true,
        }
    }

    pub fn validate(&self, space: &ProbabilitySpace) -> Result<()> {
        let mismatch = || Error::SpaceMismatch { what: self.name(), space: space.kind() };
        match (self, space) {
            (FunctionRep::Constant { value }, _) => {
                if !value.is_finite() {
                    return Err(Error::InvalidFunction(format!("constant {value} is not finite")));
                }
            }
            (FunctionRep::Sampled { values }, ProbabilitySpace::Finite(s)) => {
                if values.len() != s.atom_count() {
                    return Err(Error::InvalidFunction(format!(
                        "{} samples for {} atoms",
                        values.len(),
                        s.atom_count()
                    )));
                }
                check_finite(values)?;
            }
            (FunctionRep::Nodal { values }, ProbabilitySpace::Interval(s)) => {
                if values.len() != s.rule.len() {
                    return Err(Error::InvalidFunction(format!(
                        "{} nodal values for {} quadrature nodes",
                        values.len(),
                        s.rule.len()
                    )));
                }
                check_finite(values)?;
            }
            (FunctionRep::Power { a }, ProbabilitySpace::Interval(s)) => {
                if !a.is_finite() {
                    return Err(Error::InvalidFunction(format!("power exponent {a} is not finite")));
                }
                if *a < 0.0 && !s.spec.is_singular(0.0) {
                    return Err(Error::InvalidFunction(format!(
                        "x^{a} is singular at 0, which is not a registered singular point"
                    )));
                }
            }
            (FunctionRep::Cosine { k }, ProbabilitySpace::Interval(_)) => {
                if *k == 0 {
                    return Err(Error::InvalidFunction("cosine frequency must be positive".into()));
                }
            }
            (FunctionRep::Indicator { lo, hi }, ProbabilitySpace::Interval(_)) => {
                if !(0.0 <= *lo && lo < hi && *hi <= 1.0) {
                    return Err(Error::InvalidFunction(format!("indicator of [{lo}, {hi}) is not inside [0, 1]")));
                }
            }
            _ => return Err(mismatch()),
        }
        Ok(())
    }

    /// `f(x)`. Catalog entries are evaluated in closed form, sampled ones only at atoms.
    pub fn evaluate(&self, space: &ProbabilitySpace, x: Point) -> Result<f64> {
        self.validate(space)?;
        space.check_point(x)?;
        match (self, x) {
            (FunctionRep::Sampled { values }, Point::Atom(i)) => Ok(values[i]),
            (FunctionRep::Nodal { .. }, _) => Err(Error::Evaluation {
                what: "nodal function",
                point: format!("{x} (only quadrature-node samples exist)"),
            }),
            _ => self.evaluate_at(x),
        }
    }

    /// Unchecked catalog evaluation, used along orbits.
    pub(crate) fn evaluate_at(&self, x: Point) -> Result<f64> {
        match (self, x) {
            (FunctionRep::Constant { value }, _) => Ok(*value),
            (FunctionRep::Sampled { values }, Point::Atom(i)) => values.get(i).copied().ok_or(Error::Evaluation {
                what: "sampled function",
                point: x.to_string(),
            }),
            (FunctionRep::Power { a }, Point::Real(r)) => {
                if r == 0.0 && *a < 0.0 {
                    Err(Error::Evaluation { what: "power function", point: "the singular point 0".into() })
                } else {
                    Ok(r.powf(*a))
                }
            }
            (FunctionRep::Cosine { k }, Point::Real(r)) => Ok((2.0 * std::f64::consts::PI * (*k as f64) * r).cos()),
            (FunctionRep::Indicator { lo, hi }, Point::Real(r)) => Ok(if *lo <= r && r < *hi { 1.0 } else { 0.0 }),
            _ => Err(Error::Evaluation { what: self.name(), point: x.to_string() }),
        }
    }
}

fn check_finite(values: &[f64]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::InvalidFunction(format!("sample {i} is not finite"))),
        None => Ok(()),
    }
}

/// `∫ f dμ`, signed; `+∞` for divergent power functions.
///
/// Catalog functions on the interval use closed forms, sampled and nodal
/// functions the space's weights or quadrature rule.
pub fn integrate(space: &ProbabilitySpace, f: &FunctionRep) -> Result<f64> {
    f.validate(space)?;
    Ok(match (f, space) {
        (FunctionRep::Constant { value }, _) => *value,
        (FunctionRep::Power { a }, _) => {
            if *a <= -1.0 {
                f64::INFINITY
            } else {
                1.0 / (a + 1.0)
            }
        }
        (FunctionRep::Cosine { .. }, _) => 0.0,
        (FunctionRep::Indicator { lo, hi }, _) => hi - lo,
        (FunctionRep::Sampled { values }, _) | (FunctionRep::Nodal { values }, _) => space.integrate_samples(values),
    })
}

/// One constant piece `[lo, hi) → p` of a piecewise-constant exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentPiece {
    pub lo: f64,
    pub hi: f64,
    pub p: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExponentKind {
    Constant { p: f64 },
    Piecewise { pieces: Vec<ExponentPiece> },
    Sampled { values: Vec<f64> },
}

/// A variable exponent `p(·)` with cached essential bounds `1 < p⁻ ≤ p⁺ < ∞`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Exponent {
    #[serde(flatten)]
    kind: ExponentKind,
    pminus: f64,
    pplus: f64,
}

impl Exponent {
    pub fn new(kind: ExponentKind) -> Result<Self> {
        let (pminus, pplus) = match &kind {
            ExponentKind::Constant { p } => (*p, *p),
            ExponentKind::Piecewise { pieces } => {
                validate_partition(pieces)?;
                min_max(pieces.iter().map(|piece| piece.p))
            }
            ExponentKind::Sampled { values } => {
                if values.is_empty() {
                    return Err(Error::InvalidExponent("no samples".into()));
                }
                min_max(values.iter().copied())
            }
        };
        if !pplus.is_finite() || pminus.is_nan() {
            return Err(Error::InvalidExponent(format!("p+ = {pplus} must be finite")));
        }
        if pminus <= 1.0 {
            return Err(Error::InvalidExponent(format!(
                "p- = {pminus} must exceed 1 so that (0, p- - 1) is nonempty"
            )));
        }
        Ok(Exponent { kind, pminus, pplus })
    }

    pub fn constant(p: f64) -> Result<Self> {
        Self::new(ExponentKind::Constant { p })
    }

    pub fn piecewise(pieces: Vec<ExponentPiece>) -> Result<Self> {
        Self::new(ExponentKind::Piecewise { pieces })
    }

    pub fn sampled(values: Vec<f64>) -> Result<Self> {
        Self::new(ExponentKind::Sampled { values })
    }

    pub fn kind(&self) -> &ExponentKind {
        &self.kind
    }

    pub fn pminus(&self) -> f64 {
        self.pminus
    }

    pub fn pplus(&self) -> f64 {
        self.pplus
    }

    pub fn constant_value(&self) -> Option<f64> {
        match self.kind {
            ExponentKind::Constant { p } => Some(p),
            _ => None,
        }
    }

    pub fn validate(&self, space: &ProbabilitySpace) -> Result<()> {
        match (&self.kind, space) {
            (ExponentKind::Constant { .. }, _) => Ok(()),
            (ExponentKind::Piecewise { .. }, ProbabilitySpace::Interval(_)) => Ok(()),
            (ExponentKind::Sampled { values }, ProbabilitySpace::Finite(s)) => {
                if values.len() == s.atom_count() {
                    Ok(())
                } else {
                    Err(Error::InvalidExponent(format!(
                        "{} exponent samples for {} atoms",
                        values.len(),
                        s.atom_count()
                    )))
                }
            }
            (ExponentKind::Piecewise { .. }, _) => {
                Err(Error::SpaceMismatch { what: "piecewise exponent", space: space.kind() })
            }
            (ExponentKind::Sampled { .. }, _) => Err(Error::SpaceMismatch { what: "sampled exponent", space: space.kind() }),
        }
    }

    /// `p(x)`; `x = 1` belongs to the last piece.
    pub fn evaluate(&self, x: Point) -> Result<f64> {
        match (&self.kind, x) {
            (ExponentKind::Constant { p }, _) => Ok(*p),
            (ExponentKind::Sampled { values }, Point::Atom(i)) if i < values.len() => Ok(values[i]),
            (ExponentKind::Piecewise { pieces }, Point::Real(r)) if (0.0..=1.0).contains(&r) => Ok(pieces
                .iter()
                .find(|piece| piece.lo <= r && r < piece.hi)
                .unwrap_or_else(|| pieces.last().unwrap())
                .p),
            _ => Err(Error::Evaluation { what: "exponent", point: x.to_string() }),
        }
    }

    /// Constant pieces covering `[0, 1)`, for interval closed forms.
    pub(crate) fn interval_pieces(&self) -> Option<Vec<ExponentPiece>> {
        match &self.kind {
            ExponentKind::Constant { p } => Some(vec![ExponentPiece { lo: 0.0, hi: 1.0, p: *p }]),
            ExponentKind::Piecewise { pieces } => Some(pieces.clone()),
            ExponentKind::Sampled { .. } => None,
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let kind = ExponentKind::deserialize(d)?;
        Exponent::new(kind).map_err(serde::de::Error::custom)
    }
}

fn min_max(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

fn validate_partition(pieces: &[ExponentPiece]) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidExponent(msg));
    if pieces.is_empty() {
        return bad("piecewise exponent has no pieces".into());
    }
    if pieces[0].lo != 0.0 || pieces[pieces.len() - 1].hi != 1.0 {
        return bad("pieces must start at 0 and end at 1".into());
    }
    for (i, piece) in pieces.iter().enumerate() {
        if !(piece.lo < piece.hi) {
            return bad(format!("piece {i} [{}, {}) is empty", piece.lo, piece.hi));
        }
        if i > 0 && pieces[i - 1].hi != piece.lo {
            return bad(format!("piece {i} does not start where piece {} ends", i - 1));
        }
    }
    Ok(())
}

/// Essential infimum and supremum of `p` on `space`.
pub fn exponent_bounds(p: &Exponent, space: &ProbabilitySpace) -> Result<(f64, f64)> {
    p.validate(space)?;
    Ok((p.pminus, p.pplus))
}

/// `Σ aᵢbᵢ` in twice the working precision (error-free products and sums),
/// rounded once at the end.
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for (&x, &y) in a.iter().zip(b) {
        let prod = x * y;
        let prod_err = x.mul_add(y, -prod);
        let t = sum + prod;
        let z = t - sum;
        comp += (sum - (t - z)) + (prod - z) + prod_err;
        sum = t;
    }
    sum + comp
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn singular_interval() -> ProbabilitySpace {
        ProbabilitySpace::interval(QuadratureSpec::with_singular_points(vec![0.0])).unwrap()
    }

    #[test]
    fn evaluate_catalog() {
        let i = singular_interval();
        assert_eq!(FunctionRep::constant(3.0).evaluate(&i, Point::Real(0.7)).unwrap(), 3.0);
        assert_eq!(FunctionRep::Power { a: -0.5 }.evaluate(&i, Point::Real(0.25)).unwrap(), 2.0);
        assert_relative_eq!(FunctionRep::Cosine { k: 1 }.evaluate(&i, Point::Real(0.5)).unwrap(), -1.0);
        assert_eq!(FunctionRep::Indicator { lo: 0.2, hi: 0.4 }.evaluate(&i, Point::Real(0.4)).unwrap(), 0.0);
    }

    #[test]
    fn evaluate_errors() {
        let i = singular_interval();
        let f = ProbabilitySpace::uniform(3).unwrap();
        assert!(FunctionRep::Power { a: -0.5 }.evaluate(&i, Point::Real(0.0)).is_err());
        assert!(FunctionRep::sampled(vec![1.0, 2.0, 3.0]).evaluate(&f, Point::Real(0.5)).is_err());
        assert!(FunctionRep::sampled(vec![1.0, 2.0, 3.0]).evaluate(&f, Point::Atom(3)).is_err());
        assert!(FunctionRep::sampled(vec![1.0, 2.0]).evaluate(&f, Point::Atom(0)).is_err());
        assert!(FunctionRep::Cosine { k: 1 }.evaluate(&f, Point::Atom(0)).is_err());
        // singularity not registered
        let plain = ProbabilitySpace::unit_interval();
        assert!(FunctionRep::Power { a: -0.5 }.validate(&plain).is_err());
        assert!(FunctionRep::Power { a: 2.0 }.validate(&plain).is_ok());
    }

    #[test]
    fn finite_space_validation() {
        assert!(ProbabilitySpace::finite(vec![0.5, 0.5]).is_ok());
        assert!(ProbabilitySpace::finite(vec![0.5, 0.4]).is_err());
        assert!(ProbabilitySpace::finite(vec![1.0, 0.0]).is_err());
        assert!(ProbabilitySpace::finite(vec![]).is_err());
        assert!(ProbabilitySpace::uniform(0).is_err());
    }

    #[test]
    fn integrate_examples() {
        let f = ProbabilitySpace::uniform(4).unwrap();
        assert_eq!(integrate(&f, &FunctionRep::sampled(vec![1.0, 2.0, 3.0, 4.0])).unwrap(), 2.5);
        let i = singular_interval();
        assert_eq!(integrate(&i, &FunctionRep::Power { a: -0.5 }).unwrap(), 2.0);
        assert_eq!(integrate(&i, &FunctionRep::Power { a: -1.0 }).unwrap(), f64::INFINITY);
        assert_eq!(integrate(&i, &FunctionRep::Cosine { k: 3 }).unwrap(), 0.0);
    }

    #[test]
    fn constant_one_integrates_to_one() {
        let spaces = [
            ProbabilitySpace::uniform(7).unwrap(),
            ProbabilitySpace::finite(vec![0.5, 0.25, 0.125, 0.125]).unwrap(),
            ProbabilitySpace::unit_interval(),
            singular_interval(),
        ];
        for s in &spaces {
            let one = FunctionRep::constant(1.0);
            assert!((integrate(s, &one).unwrap() - 1.0).abs() <= 1e-12);
            let samples = s.sample_function(&one).unwrap();
            assert!((s.integrate_samples(&samples) - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn quadrature_matches_power_closed_form() {
        let i = singular_interval();
        for a in [-0.9, -0.5, 0.0, 1.0, 3.0] {
            let q = i.integrate_fn(|x| match x {
                Point::Real(r) => r.powf(a),
                Point::Atom(_) => unreachable!(),
            });
            let exact = integrate(&i, &FunctionRep::Power { a }).unwrap();
            assert!(((q - exact) / exact).abs() <= 1e-8, "a = {a}");
        }
    }

    #[test]
    fn refining_panels_does_not_increase_error() {
        let coarse = singular_interval();
        let fine = ProbabilitySpace::interval(QuadratureSpec {
            panels: 128,
            ..QuadratureSpec::with_singular_points(vec![0.0])
        })
        .unwrap();
        for a in [-0.9, -0.75, -0.5, -0.25, 0.0, 0.5, 1.0, 3.0] {
            let exact = 1.0 / (a + 1.0);
            let err = |s: &ProbabilitySpace| {
                (s.integrate_fn(|x| if let Point::Real(r) = x { r.powf(a) } else { 0.0 }) - exact).abs()
            };
            // a few ulps of slack: both rules sit at roundoff level
            assert!(err(&fine) <= err(&coarse) + 8.0 * f64::EPSILON * exact, "a = {a}");
        }
    }

    #[test]
    fn bounds() {
        let i = ProbabilitySpace::unit_interval();
        let p = Exponent::piecewise(vec![
            ExponentPiece { lo: 0.0, hi: 0.5, p: 2.0 },
            ExponentPiece { lo: 0.5, hi: 1.0, p: 3.0 },
        ])
        .unwrap();
        assert_eq!(exponent_bounds(&p, &i).unwrap(), (2.0, 3.0));
        assert_eq!(p.evaluate(Point::Real(0.5)).unwrap(), 3.0);
        assert_eq!(p.evaluate(Point::Real(1.0)).unwrap(), 3.0);
        assert_eq!(exponent_bounds(&Exponent::constant(2.5).unwrap(), &i).unwrap(), (2.5, 2.5));
        let u = ProbabilitySpace::uniform(4).unwrap();
        let s = Exponent::sampled(vec![2.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(exponent_bounds(&s, &u).unwrap(), (2.0, 4.0));
        assert!(exponent_bounds(&s, &i).is_err());
    }

    #[test]
    fn exponent_rejects_small_or_unbounded() {
        assert!(Exponent::constant(1.0).is_err());
        assert!(Exponent::constant(0.5).is_err());
        assert!(Exponent::constant(f64::INFINITY).is_err());
        assert!(Exponent::sampled(vec![2.0, 1.0]).is_err());
        let gap = Exponent::piecewise(vec![
            ExponentPiece { lo: 0.0, hi: 0.4, p: 2.0 },
            ExponentPiece { lo: 0.5, hi: 1.0, p: 3.0 },
        ]);
        assert!(gap.is_err());
    }
}

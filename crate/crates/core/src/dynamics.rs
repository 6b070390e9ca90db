//! Measure-preserving transformations, Birkhoff averages `A_n f` and exact
//! limit averages `f_av`.
//!
//! Finite maps act on atom indices. On the interval, rotations act in floating
//! point and the doubling map acts on exact rationals `k/q` with odd `q`, since
//! binary floating-point orbits of `x ↦ 2x mod 1` collapse to 0 within ~52 steps.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{integrate, Exponent, FunctionRep, Point, ProbabilitySpace};

/// Default tolerance for measure-preservation and exponent-invariance checks.
pub const DEFAULT_CHECK_TOL: f64 = 1e-12;

/// Odd modulus for doubling-map orbits: 3^38 < 2^61, and 2 has order 2·3^37 modulo it.
pub const DOUBLING_MODULUS: u64 = 1_350_851_717_672_992_089;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Transformation {
    Identity,
    /// `i ↦ map[i]` on the atoms of a finite space.
    FiniteMap { map: Vec<usize> },
    /// `x ↦ x + α mod 1`. `rational = Some((p, q))` declares `α = p/q`.
    Rotation {
        alpha: f64,
        #[serde(default)]
        rational: Option<(u64, u64)>,
    },
    /// `x ↦ 2x mod 1`.
    Doubling,
}

impl Transformation {
    pub fn finite_map(map: Vec<usize>) -> Self {
        Transformation::FiniteMap { map }
    }

    /// An irrational rotation.
    pub fn rotation(alpha: f64) -> Self {
        Transformation::Rotation { alpha, rational: None }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Transformation::Identity => "identity",
            Transformation::FiniteMap { .. } => "finite map",
            Transformation::Rotation { .. } => "rotation",
            Transformation::Doubling => "doubling map",
        }
    }

    pub fn validate(&self, space: &ProbabilitySpace) -> Result<()> {
        match (self, space) {
            (Transformation::Identity, _) => Ok(()),
            (Transformation::FiniteMap { map }, ProbabilitySpace::Finite(s)) => {
                if map.len() != s.atom_count() {
                    return Err(Error::InvalidTransformation(format!(
                        "map has {} entries for {} atoms",
                        map.len(),
                        s.atom_count()
                    )));
                }
                match map.iter().find(|&&j| j >= map.len()) {
                    Some(j) => Err(Error::InvalidTransformation(format!("target {j} is not an atom"))),
                    None => Ok(()),
                }
            }
            (Transformation::Rotation { alpha, rational }, ProbabilitySpace::Interval(_)) => {
                if !(*alpha > 0.0 && *alpha < 1.0) {
                    return Err(Error::InvalidTransformation(format!("rotation angle {alpha} outside (0, 1)")));
                }
                if let Some((_, 0)) = rational {
                    return Err(Error::InvalidTransformation("rational rotation with denominator 0".into()));
                }
                Ok(())
            }
            (Transformation::Doubling, ProbabilitySpace::Interval(_)) => Ok(()),
            _ => Err(Error::SpaceMismatch { what: self.name(), space: space.kind() }),
        }
    }

    /// True for finite maps that are bijections (and trivially for the identity).
    pub fn is_permutation(&self) -> bool {
        match self {
            Transformation::Identity => true,
            Transformation::FiniteMap { map } => {
                let mut seen = vec![false; map.len()];
                map.iter().all(|&j| j < map.len() && !std::mem::replace(&mut seen[j], true))
            }
            _ => false,
        }
    }
}

/// `T(x)`; rotation and doubling reduce into `[0, 1)`.
pub fn apply_map(t: &Transformation, space: &ProbabilitySpace, x: Point) -> Result<Point> {
    t.validate(space)?;
    match (t, x) {
        (Transformation::Identity, _) => Ok(x),
        (Transformation::FiniteMap { map }, Point::Atom(i)) if i < map.len() => Ok(Point::Atom(map[i])),
        (Transformation::Rotation { alpha, .. }, Point::Real(r)) if (0.0..=1.0).contains(&r) => {
            Ok(Point::Real(frac(r + alpha)))
        }
        (Transformation::Doubling, Point::Real(r)) if (0.0..=1.0).contains(&r) => Ok(Point::Real(frac(2.0 * r))),
        _ => Err(Error::Evaluation { what: t.name(), point: x.to_string() }),
    }
}

fn frac(x: f64) -> f64 {
    x - x.floor()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMethod {
    /// Verified atom by atom.
    Exact,
    /// Known to preserve Lebesgue measure.
    Analytic,
    /// Probed at quadrature nodes.
    Probed,
    Trivial,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurePreservingReport {
    pub preserving: bool,
    pub method: CheckMethod,
    /// Atom with the largest `|μ(T⁻¹{y}) - μ({y})|`.
    pub worst_atom: Option<usize>,
    pub worst_violation: f64,
}

/// `μ(T⁻¹(A)) = μ(A)`; on finite spaces checked on every atom.
pub fn check_measure_preserving(
    t: &Transformation,
    space: &ProbabilitySpace,
    tol: f64,
) -> Result<MeasurePreservingReport> {
    t.validate(space)?;
    Ok(match (t, space) {
        (Transformation::Identity, _) => MeasurePreservingReport {
            preserving: true,
            method: CheckMethod::Trivial,
            worst_atom: None,
            worst_violation: 0.0,
        },
        (Transformation::FiniteMap { map }, ProbabilitySpace::Finite(s)) => {
            let w = s.weights();
            let mut pulled = vec![0.0; w.len()];
            for (x, &y) in map.iter().enumerate() {
                pulled[y] += w[x];
            }
            let (worst, violation) = pulled
                .iter()
                .zip(w)
                .map(|(a, b)| (a - b).abs())
                .enumerate()
                .fold((0, 0.0), |(bi, bv), (i, v)| if v > bv { (i, v) } else { (bi, bv) });
            MeasurePreservingReport {
                preserving: violation <= tol,
                method: CheckMethod::Exact,
                worst_atom: Some(worst),
                worst_violation: violation,
            }
        }
        _ => MeasurePreservingReport {
            preserving: true,
            method: CheckMethod::Analytic,
            worst_atom: None,
            worst_violation: 0.0,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentInvarianceReport {
    pub invariant: bool,
    pub method: CheckMethod,
    pub max_deviation: f64,
    pub worst_point: Option<Point>,
}

/// `p(T(x)) = p(x)` on atoms, or at the quadrature nodes of an interval space.
pub fn check_exponent_invariant(
    t: &Transformation,
    p: &Exponent,
    space: &ProbabilitySpace,
    tol: f64,
) -> Result<ExponentInvarianceReport> {
    t.validate(space)?;
    p.validate(space)?;
    if p.constant_value().is_some() || matches!(t, Transformation::Identity) {
        return Ok(ExponentInvarianceReport {
            invariant: true,
            method: CheckMethod::Trivial,
            max_deviation: 0.0,
            worst_point: None,
        });
    }
    let mut max_deviation = 0.0;
    let mut worst_point = None;
    for x in space.sample_points() {
        let dev = (p.evaluate(apply_map(t, space, x)?)? - p.evaluate(x)?).abs();
        if dev > max_deviation {
            max_deviation = dev;
            worst_point = Some(x);
        }
    }
    let method = if space.as_finite().is_some() { CheckMethod::Exact } else { CheckMethod::Probed };
    Ok(ExponentInvarianceReport { invariant: max_deviation <= tol, method, max_deviation, worst_point })
}

/// Orbits of a bijection, each starting at its smallest atom, in order of that atom.
pub fn cycles(map: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; map.len()];
    let mut out = Vec::new();
    for start in 0..map.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push(x);
            x = map[x];
        }
        out.push(cycle);
    }
    out
}

/// Weighted mean of `values` over one cycle; a singleton returns its value unchanged.
fn cycle_mean(cycle: &[usize], weights: &[f64], values: &[f64]) -> f64 {
    if cycle.len() == 1 {
        return values[cycle[0]];
    }
    let w: Vec<f64> = cycle.iter().map(|&x| weights[x]).collect();
    let v: Vec<f64> = cycle.iter().map(|&x| values[x]).collect();
    let (lo, hi) = range(&v);
    (crate::space::dot(&w, &v) / crate::space::dot(&w, &vec![1.0; w.len()])).clamp(lo, hi)
}

/// `(min, max)` of a nonempty slice. Averages are clamped to it, which removes
/// rounding overshoot without moving any exact value.
fn range(v: &[f64]) -> (f64, f64) {
    v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)))
}

/// `A_n f` on a finite space for a bijection `map`.
///
/// With `n = qL + r` on a cycle of length `L`, full passes contribute the cycle
/// mean, so `A_n f = f_av` holds bit-for-bit whenever `L` divides `n`.
fn finite_average_by_cycles(map: &[usize], weights: &[f64], values: &[f64], n: u64) -> Vec<f64> {
    let mut out = vec![0.0; values.len()];
    let nf = n as f64;
    for cycle in cycles(map) {
        let len = cycle.len() as u64;
        let mean = cycle_mean(&cycle, weights, values);
        let (q, r) = (n / len, (n % len) as usize);
        let full = ((q * len) as f64 / nf) * mean;
        let cycle_values: Vec<f64> = cycle.iter().map(|&x| values[x]).collect();
        let (lo, hi) = range(&cycle_values);
        for (pos, &x) in cycle.iter().enumerate() {
            let partial: f64 = (0..r).map(|j| values[cycle[(pos + j) % cycle.len()]]).sum();
            out[x] = (full + partial / nf).clamp(lo, hi);
        }
    }
    out
}

fn finite_average_direct(map: &[usize], values: &[f64], n: u64) -> Vec<f64> {
    (0..values.len())
        .map(|start| {
            let mut x = start;
            let (mut sum, mut lo, mut hi) = (0.0, f64::INFINITY, f64::NEG_INFINITY);
            for _ in 0..n {
                sum += values[x];
                lo = lo.min(values[x]);
                hi = hi.max(values[x]);
                x = map[x];
            }
            (sum / n as f64).clamp(lo, hi)
        })
        .collect()
}

/// Orbit sums of a catalog function from one interval point, reported at each `n` in `checkpoints`.
fn orbit_sums(f: &FunctionRep, t: &Transformation, x: f64, checkpoints: &[u64]) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut sum = 0.0;
    let mut next = checkpoints.iter().peekable();
    let n_max = *checkpoints.last().unwrap_or(&0);
    match t {
        Transformation::Rotation { alpha, .. } => {
            for j in 0..n_max {
                sum += f.evaluate_at(Point::Real(frac(x + j as f64 * alpha)))?;
                while next.next_if(|&&n| n == j + 1).is_some() {
                    out.push(sum);
                }
            }
        }
        Transformation::Doubling => {
            let q = DOUBLING_MODULUS;
            let mut k = ((x * q as f64).round() as u64).clamp(1, q - 1);
            for j in 0..n_max {
                sum += f.evaluate_at(Point::Real(k as f64 / q as f64))?;
                k = ((k as u128 * 2) % q as u128) as u64;
                while next.next_if(|&&n| n == j + 1).is_some() {
                    out.push(sum);
                }
            }
        }
        Transformation::Identity => {
            let v = f.evaluate_at(Point::Real(x))?;
            for &n in checkpoints {
                out.push(v * n as f64);
            }
        }
        Transformation::FiniteMap { .. } => unreachable!("validated against an interval space"),
    }
    Ok(out)
}

/// `(1/n) Σ_{j<n} f(T^j x)` at a single point.
pub fn orbit_average(space: &ProbabilitySpace, f: &FunctionRep, t: &Transformation, x: Point, n: u64) -> Result<f64> {
    check_n(n)?;
    t.validate(space)?;
    f.validate(space)?;
    match (space, x) {
        (ProbabilitySpace::Finite(_), Point::Atom(i)) => {
            let values = space.sample_function(f)?;
            let mut y = Point::Atom(i);
            let mut sum = 0.0;
            for _ in 0..n {
                if let Point::Atom(k) = y {
                    sum += values[k];
                }
                y = apply_map(t, space, y)?;
            }
            Ok(sum / n as f64)
        }
        (ProbabilitySpace::Interval(_), Point::Real(r)) => {
            interval_catalog_only(f)?;
            Ok(orbit_sums(f, t, r, &[n])?[0] / n as f64)
        }
        _ => Err(Error::Evaluation { what: "orbit", point: x.to_string() }),
    }
}

fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidParameter { name: "n", reason: "Birkhoff averages need n ≥ 1".into() })
    } else {
        Ok(())
    }
}

fn interval_catalog_only(f: &FunctionRep) -> Result<()> {
    if f.is_catalog() {
        Ok(())
    } else {
        Err(Error::InvalidFunction(format!(
            "{} cannot be followed along interval orbits (orbits leave the sample set)",
            f.name()
        )))
    }
}

/// `A_n f = (1/n) Σ_{j<n} f∘T^j`.
///
/// Returns `f` itself for `n = 1`, a sampled function on finite spaces and
/// values at the quadrature nodes on the interval.
pub fn birkhoff_average(space: &ProbabilitySpace, f: &FunctionRep, t: &Transformation, n: u64) -> Result<FunctionRep> {
    Ok(birkhoff_averages(space, f, t, &[n])?.pop().unwrap())
}

/// [`birkhoff_average`] for every `n` in `schedule`, sharing orbit work.
pub fn birkhoff_averages(
    space: &ProbabilitySpace,
    f: &FunctionRep,
    t: &Transformation,
    schedule: &[u64],
) -> Result<Vec<FunctionRep>> {
    t.validate(space)?;
    f.validate(space)?;
    for &n in schedule {
        check_n(n)?;
    }
    if space.as_interval().is_some() {
        interval_catalog_only(f)?;
    }
    if matches!(t, Transformation::Identity) {
        return Ok(vec![f.clone(); schedule.len()]);
    }
    match (space, t) {
        (ProbabilitySpace::Finite(s), Transformation::FiniteMap { map }) => {
            let values = space.sample_function(f)?;
            let permutation = t.is_permutation();
            Ok(schedule
                .iter()
                .map(|&n| {
                    if n == 1 {
                        f.clone()
                    } else if permutation {
                        FunctionRep::sampled(finite_average_by_cycles(map, s.weights(), &values, n))
                    } else {
                        FunctionRep::sampled(finite_average_direct(map, &values, n))
                    }
                })
                .collect())
        }
        (ProbabilitySpace::Interval(s), _) => {
            let mut sorted: Vec<u64> = schedule.to_vec();
            sorted.sort_unstable();
            sorted.dedup();
            let per_node: Vec<Vec<f64>> = s
                .rule()
                .nodes()
                .par_iter()
                .map(|&x| orbit_sums(f, t, x, &sorted))
                .collect::<Result<_>>()?;
            Ok(schedule
                .iter()
                .map(|&n| {
                    if n == 1 {
                        return f.clone();
                    }
                    let idx = sorted.binary_search(&n).unwrap();
                    FunctionRep::Nodal { values: per_node.iter().map(|sums| sums[idx] / n as f64).collect() }
                })
                .collect())
        }
        _ => unreachable!("validated transformation/space pair"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitMethod {
    CycleDecomposition,
    UniqueErgodicity,
    /// Ergodic but not uniquely ergodic (doubling map): the limit holds almost everywhere.
    Ergodicity,
    Identity,
}

/// `f_av = lim_n A_n f`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitAverage {
    pub rep: FunctionRep,
    pub method: LimitMethod,
}

/// Exact `f_av`: per-cycle weighted means on finite spaces, `∫f dμ` for ergodic interval maps.
pub fn exact_limit_average(space: &ProbabilitySpace, f: &FunctionRep, t: &Transformation) -> Result<LimitAverage> {
    t.validate(space)?;
    f.validate(space)?;
    match (space, t) {
        (_, Transformation::Identity) => Ok(LimitAverage { rep: f.clone(), method: LimitMethod::Identity }),
        (ProbabilitySpace::Finite(s), Transformation::FiniteMap { map }) => {
            if !t.is_permutation() {
                return Err(Error::LimitUnavailable("finite map is not a bijection".into()));
            }
            let values = space.sample_function(f)?;
            let mut out = vec![0.0; values.len()];
            for cycle in cycles(map) {
                let mean = cycle_mean(&cycle, s.weights(), &values);
                for &x in &cycle {
                    out[x] = mean;
                }
            }
            Ok(LimitAverage { rep: FunctionRep::sampled(out), method: LimitMethod::CycleDecomposition })
        }
        (ProbabilitySpace::Interval(_), Transformation::Rotation { rational: Some((p, q)), .. }) => {
            Err(Error::LimitUnavailable(format!("rotation by {p}/{q} is not ergodic")))
        }
        (ProbabilitySpace::Interval(_), Transformation::Rotation { .. } | Transformation::Doubling) => {
            interval_catalog_only(f)?;
            let mean = integrate(space, f)?;
            if !mean.is_finite() {
                return Err(Error::LimitUnavailable(format!("{} is not integrable", f.name())));
            }
            let method = if matches!(t, Transformation::Doubling) {
                LimitMethod::Ergodicity
            } else {
                LimitMethod::UniqueErgodicity
            };
            Ok(LimitAverage { rep: FunctionRep::constant(mean), method })
        }
        _ => unreachable!("validated transformation/space pair"),
    }
}

/// `f∘T` as a sampled function on a finite space.
pub fn compose(space: &ProbabilitySpace, f: &FunctionRep, t: &Transformation) -> Result<FunctionRep> {
    let values = space.sample_function(f)?;
    match (space, t) {
        (ProbabilitySpace::Finite(_), Transformation::FiniteMap { map }) => {
            t.validate(space)?;
            Ok(FunctionRep::sampled(map.iter().map(|&j| values[j]).collect()))
        }
        (_, Transformation::Identity) => Ok(f.clone()),
        _ => Err(Error::SpaceMismatch { what: "composition", space: space.kind() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::QuadratureSpec;
    use approx::assert_relative_eq;

    fn two_cycles() -> (ProbabilitySpace, Transformation) {
        (ProbabilitySpace::uniform(6).unwrap(), Transformation::finite_map(vec![1, 2, 0, 4, 5, 3]))
    }

    #[test]
    fn apply_map_examples() {
        let u = ProbabilitySpace::uniform(4).unwrap();
        let i = ProbabilitySpace::unit_interval();
        let cyc = Transformation::finite_map(vec![1, 2, 3, 0]);
        assert_eq!(apply_map(&cyc, &u, Point::Atom(3)).unwrap(), Point::Atom(0));
        assert_eq!(apply_map(&Transformation::rotation(0.5), &i, Point::Real(0.75)).unwrap(), Point::Real(0.25));
        assert_eq!(apply_map(&Transformation::Doubling, &i, Point::Real(0.75)).unwrap(), Point::Real(0.5));
        assert!(apply_map(&Transformation::Doubling, &u, Point::Atom(0)).is_err());
        assert!(apply_map(&cyc, &i, Point::Real(0.5)).is_err());
    }

    #[test]
    fn measure_preservation_examples() {
        let u4 = ProbabilitySpace::uniform(4).unwrap();
        let r = check_measure_preserving(&Transformation::finite_map(vec![1, 2, 3, 0]), &u4, 1e-12).unwrap();
        assert!(r.preserving);
        let u2 = ProbabilitySpace::uniform(2).unwrap();
        let r = check_measure_preserving(&Transformation::finite_map(vec![0, 0]), &u2, 1e-12).unwrap();
        assert!(!r.preserving);
        assert_relative_eq!(r.worst_violation, 0.5);
        let w = ProbabilitySpace::finite(vec![0.5, 0.25, 0.25]).unwrap();
        let r = check_measure_preserving(&Transformation::finite_map(vec![1, 0, 2]), &w, 1e-12).unwrap();
        assert!(!r.preserving);
        let i = ProbabilitySpace::unit_interval();
        let r = check_measure_preserving(&Transformation::Doubling, &i, 1e-12).unwrap();
        assert!(r.preserving && r.method == CheckMethod::Analytic);
    }

    #[test]
    fn exponent_invariance_examples() {
        let (u, t) = two_cycles();
        let p = Exponent::sampled(vec![2.0, 2.0, 2.0, 3.0, 3.0, 3.0]).unwrap();
        assert!(check_exponent_invariant(&t, &p, &u, 1e-12).unwrap().invariant);
        let swap = Transformation::finite_map(vec![3, 4, 5, 0, 1, 2]);
        let r = check_exponent_invariant(&swap, &p, &u, 1e-12).unwrap();
        assert!(!r.invariant);
        assert_eq!(r.max_deviation, 1.0);
        let c = Exponent::constant(2.5).unwrap();
        assert!(check_exponent_invariant(&swap, &c, &u, 1e-12).unwrap().invariant);
    }

    #[test]
    fn birkhoff_examples() {
        let u = ProbabilitySpace::uniform(4).unwrap();
        let t = Transformation::finite_map(vec![1, 2, 3, 0]);
        let f = FunctionRep::sampled(vec![4.0, 0.0, 0.0, 0.0]);
        assert_eq!(birkhoff_average(&u, &f, &t, 1).unwrap(), f);
        assert_eq!(birkhoff_average(&u, &f, &t, 4).unwrap(), FunctionRep::sampled(vec![1.0; 4]));
        assert!(birkhoff_average(&u, &f, &t, 0).is_err());
    }

    #[test]
    fn birkhoff_matches_direct_iteration() {
        let w = ProbabilitySpace::finite(vec![0.1, 0.1, 0.1, 0.2, 0.2, 0.3]).unwrap();
        let t = Transformation::finite_map(vec![1, 2, 0, 4, 3, 5]);
        let f = FunctionRep::sampled(vec![1.5, -2.0, 0.25, 3.0, 7.0, -1.0]);
        for n in [1, 2, 3, 5, 7, 12] {
            let FunctionRep::Sampled { values } = birkhoff_average(&w, &f, &t, n).unwrap() else { panic!() };
            for (i, v) in values.iter().enumerate() {
                let direct = orbit_average(&w, &f, &t, Point::Atom(i), n).unwrap();
                assert_relative_eq!(*v, direct, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn non_bijective_map_has_no_limit_average() {
        let u = ProbabilitySpace::uniform(2).unwrap();
        let t = Transformation::finite_map(vec![0, 0]);
        let f = FunctionRep::sampled(vec![1.0, 3.0]);
        assert!(matches!(exact_limit_average(&u, &f, &t), Err(Error::LimitUnavailable(_))));
        assert_eq!(birkhoff_average(&u, &f, &t, 2).unwrap(), FunctionRep::sampled(vec![1.0, 2.0]));
    }

    #[test]
    fn limit_average_examples() {
        let (u, t) = two_cycles();
        let f = FunctionRep::sampled(vec![3.0, 0.0, 0.0, 6.0, 0.0, 0.0]);
        let lim = exact_limit_average(&u, &f, &t).unwrap();
        assert_eq!(lim.rep, FunctionRep::sampled(vec![1.0, 1.0, 1.0, 2.0, 2.0, 2.0]));
        assert_eq!(lim.method, LimitMethod::CycleDecomposition);
        assert_eq!(exact_limit_average(&u, &f, &Transformation::Identity).unwrap().rep, f);

        let i = ProbabilitySpace::unit_interval();
        let golden = (5f64.sqrt() - 1.0) / 2.0;
        let lim = exact_limit_average(&i, &FunctionRep::Cosine { k: 1 }, &Transformation::rotation(golden)).unwrap();
        assert_eq!(lim.rep, FunctionRep::constant(0.0));
        let rational = Transformation::Rotation { alpha: 0.5, rational: Some((1, 2)) };
        assert!(exact_limit_average(&i, &FunctionRep::Cosine { k: 1 }, &rational).is_err());
    }

    #[test]
    fn rotation_average_of_cosine_follows_dirichlet_kernel() {
        let i = ProbabilitySpace::unit_interval();
        let alpha = (5f64.sqrt() - 1.0) / 2.0;
        let t = Transformation::rotation(alpha);
        let f = FunctionRep::Cosine { k: 1 };
        for n in [2u64, 10, 333] {
            let expected = (std::f64::consts::PI * n as f64 * alpha).sin().abs()
                / (n as f64 * (std::f64::consts::PI * alpha).sin());
            let a = orbit_average(&i, &f, &t, Point::Real(0.1), n).unwrap();
            let b = orbit_average(&i, &f, &t, Point::Real(0.35), n).unwrap();
            assert_relative_eq!(a.hypot(b), expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn doubling_orbits_do_not_collapse() {
        let i = ProbabilitySpace::unit_interval();
        let f = FunctionRep::Indicator { lo: 0.0, hi: 0.5 };
        // floating-point doubling would sit at 0 (inside [0, 0.5)) after ~53 steps
        let avg = orbit_average(&i, &f, &Transformation::Doubling, Point::Real(0.3), 4096).unwrap();
        assert!((avg - 0.5).abs() < 0.1, "{avg}");
        let c = birkhoff_average(&i, &FunctionRep::constant(2.0), &Transformation::Doubling, 100).unwrap();
        let FunctionRep::Nodal { values } = c else { panic!() };
        assert!(values.iter().all(|v| (v - 2.0).abs() < 1e-14));
    }

    #[test]
    fn interval_birkhoff_rejects_samples() {
        let i = ProbabilitySpace::unit_interval();
        let nodal = FunctionRep::Nodal { values: vec![0.0; i.sample_count()] };
        assert!(birkhoff_average(&i, &nodal, &Transformation::rotation(0.3), 3).is_err());
        let s = ProbabilitySpace::interval(QuadratureSpec::with_singular_points(vec![0.0])).unwrap();
        assert!(birkhoff_average(&s, &FunctionRep::Power { a: -0.5 }, &Transformation::rotation(0.3), 3).is_ok());
    }

    #[test]
    fn cycle_decomposition() {
        assert_eq!(cycles(&[1, 2, 0, 4, 3, 5]), vec![vec![0, 1, 2], vec![3, 4], vec![5]]);
        assert!(Transformation::finite_map(vec![2, 0, 1]).is_permutation());
        assert!(!Transformation::finite_map(vec![0, 0, 1]).is_permutation());
    }
}

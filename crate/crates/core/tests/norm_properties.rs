//! Property tests for the Luxemburg and grand norms on finite spaces, plus the
//! finiteness chain on the interval catalog.

use grandlp::norms::{luxemburg_norm, GrandGrid, ShiftedNorms, DEFAULT_REL_TOL};
use grandlp::{integrate, Exponent, ExponentPiece, FunctionRep, ProbabilitySpace, QuadratureSpec};
use proptest::prelude::*;

/// Tight bisection for comparisons with absolute tolerances.
const TIGHT: f64 = 1e-14;

#[derive(Debug, Clone)]
struct Instance {
    weights: Vec<f64>,
    values: Vec<f64>,
    exponents: Vec<f64>,
}

impl Instance {
    fn space(&self) -> ProbabilitySpace {
        ProbabilitySpace::finite(self.weights.clone()).unwrap()
    }

    fn exponent(&self) -> Exponent {
        Exponent::sampled(self.exponents.clone()).unwrap()
    }
}

fn normalized(raw: Vec<f64>) -> Vec<f64> {
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / total).collect()
}

fn instance(max_atoms: usize) -> impl Strategy<Value = Instance> {
    (1..=max_atoms).prop_flat_map(|n| {
        (
            prop::collection::vec(0.05f64..1.0, n),
            prop::collection::vec(-10.0f64..10.0, n),
            prop::collection::vec(1.1f64..5.0, n),
        )
            .prop_map(|(w, values, exponents)| Instance { weights: normalized(w), values, exponents })
    })
}

fn pair(max_atoms: usize) -> impl Strategy<Value = (Instance, Vec<f64>)> {
    instance(max_atoms).prop_flat_map(|inst| {
        let n = inst.values.len();
        (Just(inst), prop::collection::vec(-10.0f64..10.0, n))
    })
}

fn lux(space: &ProbabilitySpace, values: &[f64], p: &Exponent, rel_tol: f64) -> f64 {
    luxemburg_norm(space, &FunctionRep::sampled(values.to_vec()), p, 0.0, rel_tol).unwrap().value()
}

fn grand(space: &ProbabilitySpace, values: &[f64], p: &Exponent, theta: f64) -> f64 {
    ShiftedNorms::new(space, &FunctionRep::sampled(values.to_vec()), p)
        .unwrap()
        .grand_norm(theta, &GrandGrid::default())
        .unwrap()
        .value
        .value()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn homogeneity(inst in instance(16), c in 1e-3f64..1e3, negate in any::<bool>(), theta in 0.2f64..3.0) {
        let (s, p) = (inst.space(), inst.exponent());
        let c = if negate { -c } else { c };
        let scaled: Vec<f64> = inst.values.iter().map(|v| c * v).collect();
        let (a, b) = (lux(&s, &inst.values, &p, DEFAULT_REL_TOL), lux(&s, &scaled, &p, DEFAULT_REL_TOL));
        prop_assert!((b - c.abs() * a).abs() <= 1e-8 * c.abs() * a);
        let (ga, gb) = (grand(&s, &inst.values, &p, theta), grand(&s, &scaled, &p, theta));
        prop_assert!((gb - c.abs() * ga).abs() <= 1e-8 * c.abs() * ga);
    }

    #[test]
    fn triangle_inequality((inst, g) in pair(16), theta in 0.2f64..3.0) {
        let (s, p) = (inst.space(), inst.exponent());
        let sum: Vec<f64> = inst.values.iter().zip(&g).map(|(a, b)| a + b).collect();
        prop_assert!(lux(&s, &sum, &p, DEFAULT_REL_TOL) <= lux(&s, &inst.values, &p, DEFAULT_REL_TOL) + lux(&s, &g, &p, DEFAULT_REL_TOL) + 1e-8);
        prop_assert!(grand(&s, &sum, &p, theta) <= grand(&s, &inst.values, &p, theta) + grand(&s, &g, &p, theta) + 1e-8);
    }

    #[test]
    fn monotonicity(inst in instance(16), shrink in prop::collection::vec(0.0f64..=1.0, 16), theta in 0.2f64..3.0) {
        let (s, p) = (inst.space(), inst.exponent());
        let smaller: Vec<f64> = inst.values.iter().zip(&shrink).map(|(v, t)| -v * t).collect();
        prop_assert!(lux(&s, &smaller, &p, TIGHT) <= lux(&s, &inst.values, &p, TIGHT) + 1e-10);
        prop_assert!(grand(&s, &smaller, &p, theta) <= grand(&s, &inst.values, &p, theta) + 1e-10);
    }

    #[test]
    fn unit_ball_consistency(inst in instance(16), eps_frac in 0.0f64..0.99) {
        prop_assume!(inst.values.iter().any(|v| *v != 0.0));
        let (s, p) = (inst.space(), inst.exponent());
        let norms = ShiftedNorms::new(&s, &FunctionRep::sampled(inst.values.clone()), &p).unwrap();
        let eps = eps_frac * (p.pminus() - 1.0);
        let lambda = norms.luxemburg(eps, DEFAULT_REL_TOL).unwrap().value();
        let rho = norms.modular_scaled(eps, lambda).unwrap().value();
        prop_assert!((rho - 1.0).abs() <= 1e-8, "modular at the norm is {rho}");
    }

    #[test]
    fn modular_decreases_in_lambda(inst in instance(16), l1 in 1e-3f64..1e3, factor in 1.0f64..10.0) {
        let (s, p) = (inst.space(), inst.exponent());
        let norms = ShiftedNorms::new(&s, &FunctionRep::sampled(inst.values.clone()), &p).unwrap();
        let (a, b) = (norms.modular_scaled(0.0, l1).unwrap(), norms.modular_scaled(0.0, l1 * factor).unwrap());
        prop_assert!(a >= b);
    }

    #[test]
    fn embedding_chain(inst in instance(16), q in 1.01f64..6.0, gap in 0.0f64..4.0) {
        let s = inst.space();
        let lo = Exponent::constant(q).unwrap();
        let hi = Exponent::constant(q + gap).unwrap();
        prop_assert!(lux(&s, &inst.values, &lo, TIGHT) <= lux(&s, &inst.values, &hi, TIGHT) + 1e-10);
    }

    #[test]
    fn samples_never_exceed_estimate(inst in instance(16), theta in 0.2f64..3.0) {
        let (s, p) = (inst.space(), inst.exponent());
        let est = ShiftedNorms::new(&s, &FunctionRep::sampled(inst.values.clone()), &p)
            .unwrap()
            .grand_norm(theta, &GrandGrid::default())
            .unwrap();
        for sample in &est.samples {
            prop_assert!(sample.weight * sample.shifted_norm.value() <= est.value.value() + 1e-12);
        }
    }

    #[test]
    fn denser_grid_never_lowers_estimate(inst in instance(12), theta in 0.2f64..3.0) {
        let (s, p) = (inst.space(), inst.exponent());
        let norms = ShiftedNorms::new(&s, &FunctionRep::sampled(inst.values.clone()), &p).unwrap();
        // Each shifted norm must be resolved well below the 1e-12 comparison.
        let grid = GrandGrid { rel_tol: TIGHT, ..GrandGrid::default() };
        let coarse = norms.grand_norm(theta, &grid).unwrap().value.value();
        let dense = norms.grand_norm(theta, &grid.densified()).unwrap().value.value();
        prop_assert!(dense >= coarse - 1e-12, "coarse {coarse}, dense {dense}");
    }

    #[test]
    fn integrate_is_linear((inst, g) in pair(32), a in -5.0f64..5.0, b in -5.0f64..5.0) {
        let s = inst.space();
        let combo: Vec<f64> = inst.values.iter().zip(&g).map(|(x, y)| a * x + b * y).collect();
        let lhs = integrate(&s, &FunctionRep::sampled(combo)).unwrap();
        let rhs = a * integrate(&s, &FunctionRep::sampled(inst.values.clone())).unwrap()
            + b * integrate(&s, &FunctionRep::sampled(g)).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()));
    }

    #[test]
    fn constant_one_integrates_to_one(inst in instance(32)) {
        prop_assert!((integrate(&inst.space(), &FunctionRep::constant(1.0)).unwrap() - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn constant_one_integrates_to_one_on_intervals() {
    for spec in [
        QuadratureSpec::default(),
        QuadratureSpec::with_singular_points(vec![0.0]),
        QuadratureSpec::with_singular_points(vec![0.0, 0.5, 1.0]),
        QuadratureSpec { panels: 3, nodes_per_panel: 2, singular_points: vec![] },
    ] {
        let s = ProbabilitySpace::interval(spec).unwrap();
        assert!((integrate(&s, &FunctionRep::constant(1.0)).unwrap() - 1.0).abs() <= 1e-12);
        let nodal = FunctionRep::Nodal { values: vec![1.0; s.sample_count()] };
        assert!((integrate(&s, &nodal).unwrap() - 1.0).abs() <= 1e-12);
    }
}

fn interval_catalog() -> Vec<FunctionRep> {
    let mut out: Vec<FunctionRep> = [-0.9, -0.6, -0.5, -0.4, -0.2, 0.0, 1.0, 3.0].map(|a| FunctionRep::Power { a }).into();
    out.extend([
        FunctionRep::Cosine { k: 1 },
        FunctionRep::Cosine { k: 3 },
        FunctionRep::Indicator { lo: 0.25, hi: 0.5 },
        FunctionRep::constant(-2.0),
        FunctionRep::constant(0.0),
    ]);
    out
}

fn interval_exponents() -> Vec<Exponent> {
    vec![
        Exponent::constant(1.5).unwrap(),
        Exponent::constant(2.0).unwrap(),
        Exponent::constant(3.0).unwrap(),
        Exponent::piecewise(vec![
            ExponentPiece { lo: 0.0, hi: 0.5, p: 2.5 },
            ExponentPiece { lo: 0.5, hi: 1.0, p: 1.8 },
        ])
        .unwrap(),
    ]
}

/// Luxemburg finite ⇒ grand finite ⇒ every shifted norm finite ⇒ L¹ finite.
#[test]
fn finiteness_chain_on_catalog() {
    let s = ProbabilitySpace::interval(QuadratureSpec::with_singular_points(vec![0.0, 0.25, 0.5])).unwrap();
    for f in interval_catalog() {
        let l1_finite = match f {
            FunctionRep::Power { a } => integrate(&s, &f).unwrap().is_finite() && a > -1.0,
            _ => f.is_bounded(),
        };
        for p in interval_exponents() {
            let norms = ShiftedNorms::new(&s, &f, &p).unwrap();
            let lux_finite = norms.luxemburg(0.0, DEFAULT_REL_TOL).unwrap().is_finite();
            let grand_finite = norms.grand_norm(1.0, &GrandGrid::default()).unwrap().value.is_finite();
            let w = p.pminus() - 1.0;
            let shifted_finite =
                (1..20).all(|i| norms.luxemburg(w * i as f64 / 20.0, DEFAULT_REL_TOL).unwrap().is_finite());
            let name = format!("{f:?} with {:?}", p.kind());
            if lux_finite {
                assert!(grand_finite, "{name}: Luxemburg finite but grand infinite");
            }
            if grand_finite {
                assert!(shifted_finite, "{name}: grand finite but a shifted norm infinite");
            }
            if shifted_finite {
                assert!(l1_finite, "{name}: shifted norms finite but L1 infinite");
            }
        }
    }
}

#[test]
fn constant_exponent_matches_direct_formula_on_interval_power() {
    let s = ProbabilitySpace::interval(QuadratureSpec::with_singular_points(vec![0.0])).unwrap();
    let p = Exponent::constant(2.0).unwrap();
    let n = luxemburg_norm(&s, &FunctionRep::Power { a: -0.25 }, &p, 0.5, DEFAULT_REL_TOL).unwrap().value();
    // (∫ x^{-0.375})^{1/1.5}
    let expected = (1.0f64 / 0.625).powf(1.0 / 1.5);
    assert!((n - expected).abs() <= 1e-9 * expected);
}

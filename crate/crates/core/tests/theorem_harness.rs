//! End-to-end runs of the theorem harness.

use grandlp::dynamics::Transformation;
use grandlp::ergodic::{
    check_hypotheses, verify_invariance, verify_modular_contraction, verify_norm_convergence, verify_pointwise_limit,
    verify_theorem, TheoremSettings, NORM_CONTRACTION_SLACK,
};
use grandlp::norms::{vanishing_limit, GrandGrid};
use grandlp::random::{random_finite_system, rng_from_seed};
use grandlp::{Error, Exponent, ExtendedReal, FunctionRep, HypothesisCheck, ProbabilitySpace};

fn two_cycle() -> (ProbabilitySpace, FunctionRep, Transformation, Exponent) {
    (
        ProbabilitySpace::uniform(6).unwrap(),
        FunctionRep::sampled(vec![3.0, 0.0, 0.0, 6.0, 0.0, 0.0]),
        Transformation::finite_map(vec![1, 2, 0, 4, 5, 3]),
        Exponent::sampled(vec![2.0, 2.0, 2.0, 3.0, 3.0, 3.0]).unwrap(),
    )
}

#[test]
fn two_cycle_full_run() {
    let (s, f, t, p) = two_cycle();
    let mut settings = TheoremSettings::new(1.0);
    settings.n_schedule = (1..=9).collect();
    let report = verify_theorem(&s, &f, &t, &p, &settings).unwrap();
    assert!(report.passed, "{:?}", report.violations);
    assert!(report.closure_member.is_member);
    assert_eq!(report.part_iii.exact_rows, vec![3, 6, 9]);
    for row in &report.part_iii.rows {
        assert_eq!(row.diff_grand_norm == ExtendedReal::ZERO, row.n % 3 == 0, "n = {}", row.n);
    }
    assert_eq!((report.part_ii.integral_f, report.part_ii.integral_fav), (1.5, 1.5));
    // modulars go through exp(q·ln|f|), exact to a few ulp
    let close = |a: f64, b: f64| (a - b).abs() <= 4.0 * f64::EPSILON * b;
    assert!(close(report.contraction.boundary_probe.modular_fav.value(), 4.5));
    assert!(close(report.contraction.boundary_probe.modular_f.value(), 37.5));
}

#[test]
fn report_round_trips_through_json() {
    let (s, f, t, p) = two_cycle();
    let report = verify_theorem(&s, &f, &t, &p, &TheoremSettings::new(1.0)).unwrap();
    let text = serde_json::to_string(&report).unwrap();
    let back: grandlp::ergodic::TheoremReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, report);
}

#[test]
fn random_systems_satisfy_parts_i_and_ii() {
    let mut rng = rng_from_seed(99);
    let grid = GrandGrid::default();
    for _ in 0..100 {
        let sys = random_finite_system(&mut rng, 16);
        let (s, f, t, p) = (&sys.space, &sys.function, &sys.transformation, &sys.exponent);
        let theta = 1.0;
        let one = verify_pointwise_limit(s, f, t, theta, p, &grid).unwrap();
        assert!(one.fav_grand_norm.value() <= one.f_grand_norm.value() + NORM_CONTRACTION_SLACK);
        let two = verify_invariance(s, f, t, p).unwrap();
        assert!(two.invariance_residual <= 1e-12 && two.mean_residual <= 1e-12, "{two:?}");
        let c = verify_modular_contraction(s, f, t, p, None).unwrap();
        assert!(c.rows.iter().all(|r| r.holds));
    }
}

/// Closure members on finite systems: rows from the fifth on never increase.
#[test]
fn convergence_rows_are_eventually_monotone() {
    let schedule: Vec<u64> = (0..=14).map(|k| 1 << k).collect();
    let mut cases = vec![two_cycle()];
    let mut rng = rng_from_seed(5);
    for _ in 0..20 {
        let sys = random_finite_system(&mut rng, 16);
        cases.push((sys.space, sys.function, sys.transformation, sys.exponent));
    }
    for (s, f, t, p) in cases {
        let closure = vanishing_limit(&s, &f, &p, 1.0, None).unwrap();
        assert!(closure.is_member);
        let rows = verify_norm_convergence(&s, &f, &t, &p, 1.0, &schedule, &closure, &GrandGrid::default())
            .unwrap()
            .rows;
        for w in rows[4..].windows(2) {
            assert!(
                w[1].diff_grand_norm.value() <= w[0].diff_grand_norm.value() + 1e-12,
                "n = {} -> {}: {} -> {}",
                w[0].n,
                w[1].n,
                w[0].diff_grand_norm,
                w[1].diff_grand_norm
            );
        }
    }
}

#[test]
fn constants_converge_immediately() {
    let (s, _, t, p) = two_cycle();
    let c = FunctionRep::constant(-1.25);
    let closure = vanishing_limit(&s, &c, &p, 1.0, None).unwrap();
    let rows = verify_norm_convergence(&s, &c, &t, &p, 1.0, &[1, 2, 5, 11], &closure, &GrandGrid::default())
        .unwrap()
        .rows;
    assert!(rows.iter().all(|r| r.diff_grand_norm == ExtendedReal::ZERO));
}

#[test]
fn golden_rotation_cosine_decays_like_dirichlet_bound() {
    let s = ProbabilitySpace::unit_interval();
    let f = FunctionRep::Cosine { k: 1 };
    let t = Transformation::rotation((5f64.sqrt() - 1.0) / 2.0);
    let p = Exponent::constant(2.0).unwrap();
    let mut settings = TheoremSettings::new(1.0);
    settings.n_schedule = vec![1, 10, 100, 1000, 10_000];
    let report = verify_theorem(&s, &f, &t, &p, &settings).unwrap();
    assert!(report.passed, "{:?}", report.violations);
    let last = report.part_iii.rows.last().unwrap();
    assert!(last.diff_grand_norm.value() <= 1.1e-4, "{}", last.diff_grand_norm);
}

#[test]
fn non_members_are_reported_but_not_judged() {
    let s = ProbabilitySpace::interval(grandlp::QuadratureSpec::with_singular_points(vec![0.0])).unwrap();
    let f = FunctionRep::Power { a: -0.5 };
    let t = Transformation::rotation(2f64.sqrt() - 1.0);
    let p = Exponent::constant(2.0).unwrap();
    let mut settings = TheoremSettings::new(1.0);
    settings.n_schedule = vec![1, 8, 64];
    let report = verify_theorem(&s, &f, &t, &p, &settings).unwrap();
    assert!(!report.closure_member.is_member);
    assert!(!report.part_iii.hard_check);
    assert!(report.passed, "{:?}", report.violations);
}

#[test]
fn gating_rejects_broken_hypotheses() {
    let (s, f, _, p) = two_cycle();
    let swap = Transformation::finite_map(vec![3, 4, 5, 0, 1, 2]);
    let err = check_hypotheses(&s, &swap, &p, 1e-12).unwrap_err();
    assert!(matches!(err, Error::Hypothesis { check: HypothesisCheck::ExponentInvariant, .. }));
    for run in [
        verify_theorem(&s, &f, &swap, &p, &TheoremSettings::new(1.0)).map(|_| ()),
        verify_invariance(&s, &f, &swap, &p).map(|_| ()),
        verify_modular_contraction(&s, &f, &swap, &p, None).map(|_| ()),
        verify_pointwise_limit(&s, &f, &swap, 1.0, &p, &GrandGrid::default()).map(|_| ()),
    ] {
        assert!(matches!(run, Err(Error::Hypothesis { check: HypothesisCheck::ExponentInvariant, .. })));
    }
    let collapse = Transformation::finite_map(vec![0, 0, 1, 2, 3, 4]);
    let err = verify_theorem(&s, &f, &collapse, &p, &TheoremSettings::new(1.0)).unwrap_err();
    assert!(matches!(err, Error::Hypothesis { check: HypothesisCheck::MeasurePreserving, .. }));

    let uneven = ProbabilitySpace::finite(vec![0.5, 0.25, 0.25]).unwrap();
    let rotate = Transformation::finite_map(vec![1, 2, 0]);
    let flat = Exponent::constant(2.0).unwrap();
    let err = check_hypotheses(&uneven, &rotate, &flat, 1e-12).unwrap_err();
    assert!(matches!(err, Error::Hypothesis { check: HypothesisCheck::MeasurePreserving, .. }));
}

#[test]
fn piecewise_exponent_against_rotation_is_rejected() {
    let s = ProbabilitySpace::unit_interval();
    let p = Exponent::piecewise(vec![
        grandlp::ExponentPiece { lo: 0.0, hi: 0.5, p: 2.0 },
        grandlp::ExponentPiece { lo: 0.5, hi: 1.0, p: 3.0 },
    ])
    .unwrap();
    let err = check_hypotheses(&s, &Transformation::rotation(0.3), &p, 1e-12).unwrap_err();
    assert!(matches!(err, Error::Hypothesis { check: HypothesisCheck::ExponentInvariant, .. }));
    assert!(check_hypotheses(&s, &Transformation::Identity, &p, 1e-12).is_ok());
}

use pickzeta::arith::zeta;
use pickzeta::realization::{
    build_lurking_isometry, build_t_lambda, evaluate_at, evaluate_realization, verify_direction_ii_to_i,
    RealizationModel, TestMultiplier,
};
use pickzeta::{Complex64, HalfPlanePoint};

fn hp(re: f64, im: f64) -> HalfPlanePoint {
    HalfPlanePoint::dirichlet(Complex64::new(re, im)).unwrap()
}

fn samples() -> Vec<HalfPlanePoint> {
    vec![hp(1.0, 0.0), hp(1.5, 1.0), hp(2.0, -0.5), hp(3.0, 2.0)]
}

fn grid() -> Vec<HalfPlanePoint> {
    (0..8).map(|k| hp(1.0 + 0.3 * k as f64, k as f64 - 3.0)).collect()
}

const ALPHA: Complex64 = Complex64::new(2.0, 0.0);

#[test]
fn t_lambda_certificates_across_sigma() {
    for sigma in [0.6, 0.75, 1.0, 2.0, 5.0] {
        let t = build_t_lambda(&hp(sigma, 0.7), ALPHA, 100_000).unwrap();
        assert!(t.v_inverse_norm <= t.epsilon_tilde && t.epsilon_tilde < 1.0, "sigma = {sigma}");
        assert!(t.inverse_norm_bound < 1.0);
        assert!(t.diagonal_inequality);
        assert!(t.defining_residual <= 1e-10);
    }
}

#[test]
fn gram_residual_shrinks_with_truncation() {
    let phi = TestMultiplier::monomial(Complex64::new(0.5, 0.0), 2).unwrap();
    let res: Vec<f64> = [100, 1_000, 10_000]
        .iter()
        .map(|&n| {
            build_lurking_isometry(&phi, &samples(), n, 1.0)
                .unwrap()
                .certificates
                .gram_identity_residual
        })
        .collect();
    assert!(res[0] > res[1] && res[1] > res[2], "{res:?}");
}

#[test]
fn reconstruction_at_sample_points() {
    for c in [Complex64::new(0.3, 0.0), Complex64::new(0.0, 0.5), Complex64::new(-0.8, 0.0)] {
        let phi = TestMultiplier::monomial(c, 2).unwrap();
        let m = build_lurking_isometry(&phi, &samples(), 20_000, 1e-5).unwrap();
        assert!(m.certificates.contraction_ok());
        assert!(m.certificates.d_contraction_residual <= 1e-6);
        for p in samples() {
            let v = evaluate_at(&m, &p, ALPHA).unwrap();
            assert!(v.neumann_bound < 1.0);
            assert!((v.value - phi.eval(p.value()).unwrap()).norm() <= 1e-4);
        }
    }
}

#[test]
fn explicit_t_models_match_convenience_evaluation() {
    let phi = TestMultiplier::monomial(Complex64::new(0.0, 0.5), 2).unwrap();
    let m = build_lurking_isometry(&phi, &samples(), 2_000, 1e-3).unwrap();
    let s = hp(1.7, 0.4);
    let t = build_t_lambda(&s.conj(), ALPHA, m.n).unwrap();
    let a = evaluate_realization(&m, &[t], &s).unwrap();
    let b = evaluate_at(&m, &s, ALPHA).unwrap().value;
    assert_eq!(a, b);
    assert!(evaluate_realization(&m, &[], &s).is_err());
}

#[test]
fn single_point_scalar_identity() {
    let phi = TestMultiplier::monomial(Complex64::new(0.5, 0.0), 2).unwrap();
    let s = 1.5;
    let m = build_lurking_isometry(&phi, &[hp(s, 0.0)], 100_000, 1e-6).unwrap();
    let z = zeta(Complex64::new(2.0 * s, 0.0), 1e-14).unwrap().re;
    let f = 0.5 * 2f64.powf(-s);
    let kphi = (1.0 - f * f) * z;
    let lhs = 1.0 + z * kphi;
    let rhs = f * f + (z + 1.0 / z) * kphi;
    assert!((lhs - rhs).abs() < 1e-12);
    assert!(m.certificates.gram_identity_residual <= 1e-6);
    assert_eq!(m.r, 1);
}

#[test]
fn zero_multiplier_is_isometric_on_span() {
    let phi = TestMultiplier::constant(Complex64::new(0.0, 0.0)).unwrap();
    let m = build_lurking_isometry(&phi, &samples(), 100_000, 1e-6).unwrap();
    assert_eq!(m.a, Complex64::new(0.0, 0.0));
    assert!(m.certificates.isometry_residual <= 1e-10);
}

#[test]
fn constant_multiplier_is_reconstructed() {
    let c = Complex64::new(0.2, -0.4);
    let phi = TestMultiplier::constant(c).unwrap();
    let m = build_lurking_isometry(&phi, &samples(), 20_000, 1e-5).unwrap();
    assert!(m.r > 0);
    for p in samples() {
        assert!((evaluate_at(&m, &p, ALPHA).unwrap().value - c).norm() <= 1e-4);
    }
}

#[test]
fn verification_and_negative_control() {
    let phi = TestMultiplier::monomial(Complex64::new(0.5, 0.0), 2).unwrap();
    let m = build_lurking_isometry(&phi, &samples(), 20_000, 1e-5).unwrap();
    let ok = verify_direction_ii_to_i(&m, &grid(), ALPHA, 1e-10).unwrap();
    assert!(ok.passes, "{:?}", ok.failure);
    let bad = verify_direction_ii_to_i(&m.with_scaled_d(1.5), &grid(), ALPHA, 1e-10).unwrap();
    assert!(!bad.passes);
    assert!(bad.sigma_max > 1.4);
}

#[test]
fn unit_constant_gives_trivial_model() {
    let phi = TestMultiplier::constant(Complex64::new(1.0, 0.0)).unwrap();
    let m = build_lurking_isometry(&phi, &samples(), 100, 1e-6).unwrap();
    assert_eq!(m.r, 0);
    assert!(m.beta.is_empty() && m.gamma.is_empty());
    let rep = verify_direction_ii_to_i(&m, &grid(), ALPHA, 1e-10).unwrap();
    assert!(rep.passes);
    assert!(rep.values.iter().all(|v| (v - Complex64::new(1.0, 0.0)).norm() < 1e-14));
}

#[test]
fn model_json_reproduces_evaluations() {
    let phi = TestMultiplier::monomial(Complex64::new(-0.8, 0.0), 2).unwrap();
    let m = build_lurking_isometry(&phi, &samples(), 500, 1e-2).unwrap();
    let text = serde_json::to_string(&m).unwrap();
    let back: RealizationModel = serde_json::from_str(&text).unwrap();
    assert_eq!(back, m);
    let s = hp(1.3, 0.2);
    assert_eq!(
        evaluate_at(&back, &s, ALPHA).unwrap().value,
        evaluate_at(&m, &s, ALPHA).unwrap().value
    );
}

#[test]
fn coefficient_sum_above_one_is_rejected() {
    let series = pickzeta::arith::CoefficientSeries::from_real(
        "too big",
        &[0.7, 0.0, 0.5],
        pickzeta::arith::TailBound::Finite,
    )
    .unwrap();
    assert!(TestMultiplier::new(series).is_err());
}

use pickzeta::kernels::KernelSpec;
use pickzeta::linalg::{max_abs_entry, CMatrix};
use pickzeta::pick::{
    cayley, certify_psd, inverse_cayley, lemma22_transfer, schur_product, theorem21_check, InterpolationProblem,
};
use pickzeta::{Complex64, HalfPlanePoint};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

fn random_instance(rng: &mut ChaCha8Rng) -> InterpolationProblem {
    let n = rng.gen_range(1..=6);
    let nodes = (0..n)
        .map(|_| Complex64::new(rng.gen_range(0.1..5.0), rng.gen_range(-5.0..5.0)))
        .collect();
    let targets = (0..n)
        .map(|_| Complex64::from_polar(rng.gen_range(0.0..0.95), rng.gen_range(0.0..std::f64::consts::TAU)))
        .collect();
    InterpolationProblem::new(nodes, targets, KernelSpec::SzegoHalfPlane).unwrap()
}

#[test]
fn transfer_verdicts_agree_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut borderline = 0;
    for _ in 0..200 {
        let p = random_instance(&mut rng);
        let rep = lemma22_transfer(&p).unwrap();
        assert!(rep.factorization_residual <= 1e-12, "{}", rep.factorization_residual);
        assert_eq!(rep.r_certificate.numerical_rank, 1);
        if rep.borderline {
            borderline += 1;
            continue;
        }
        assert!(rep.psd_agree, "{:?} {:?}", p.nodes, p.targets);
        assert!(rep.rank_agree, "{:?} {:?}", p.nodes, p.targets);
    }
    assert!(borderline < 10, "{borderline} borderline draws");
}

#[test]
fn r_matrix_at_one_two() {
    let p = InterpolationProblem::real(&[1.0, 2.0], &[0.0, 0.7], KernelSpec::SzegoHalfPlane).unwrap();
    let rep = lemma22_transfer(&p).unwrap();
    let want = [[2.0, 3.0], [3.0, 4.5]];
    for i in 0..2 {
        for j in 0..2 {
            assert!((rep.r[(i, j)] - want[i][j]).norm() < 1e-15);
        }
    }
}

#[test]
fn schur_product_of_psd_matrices_is_psd() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let g = random_matrix(&mut rng, 4, 4);
        let h = random_matrix(&mut rng, 4, 4);
        let a = &g * g.adjoint();
        let b = &h * h.adjoint();
        let prod = schur_product(&a, &b).unwrap();
        assert!(certify_psd(&prod, 1e-10, 1e-8).unwrap().psd);
        let ones = CMatrix::from_element(4, 4, Complex64::new(1.0, 0.0));
        assert_eq!(schur_product(&a, &ones).unwrap(), a);
    }
}

#[test]
fn schur_product_rank_is_bounded_by_product_of_ranks() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..50 {
        let n = 6;
        let ra = rng.gen_range(1..=2);
        let rb = rng.gen_range(1..=2);
        let ga = random_matrix(&mut rng, n, ra);
        let gb = random_matrix(&mut rng, n, rb);
        let a = &ga * ga.adjoint();
        let b = &gb * gb.adjoint();
        let rank = |m: &CMatrix| certify_psd(m, 1e-10, 1e-8).unwrap().numerical_rank;
        assert_eq!(rank(&a), ra);
        assert_eq!(rank(&b), rb);
        assert!(rank(&schur_product(&a, &b).unwrap()) <= ra * rb);
    }
}

fn blaschke(zeros: &[Complex64], z: Complex64) -> Complex64 {
    zeros
        .iter()
        .fold(Complex64::new(1.0, 0.0), |acc, &a| acc * (z - a) / (1.0 - a.conj() * z))
}

#[test]
fn blaschke_data_give_rank_equal_to_degree() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (n, d) in [(3, 1), (4, 2), (5, 3)] {
        let zeros: Vec<Complex64> = (0..d)
            .map(|_| Complex64::from_polar(rng.gen_range(0.0..0.8), rng.gen_range(0.0..6.28)))
            .collect();
        let nodes: Vec<Complex64> = (0..n)
            .map(|k| Complex64::new(0.7 + 0.6 * k as f64, 1.3 * k as f64 - 2.0))
            .collect();
        let targets: Vec<Complex64> = nodes
            .iter()
            .map(|s| blaschke(&zeros, cayley(&HalfPlanePoint::right(*s).unwrap()).unwrap()))
            .collect();
        let p = InterpolationProblem::new(nodes, targets, KernelSpec::SzegoHalfPlane).unwrap();
        let rep = theorem21_check(&p).unwrap();
        assert_eq!(rep.cond_ii.numerical_rank, d, "(n, d) = ({n}, {d})");
        assert!(!rep.rank_full);
    }
}

#[test]
fn witnesses_match_their_eigenvalues() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let mut negatives = 0;
    for _ in 0..100 {
        let p = random_instance(&mut rng);
        let cert = p.certify().unwrap();
        assert!((cert.witness.norm() - 1.0).abs() < 1e-12);
        assert!((cert.witness_value() - cert.min_eigenvalue).abs() <= 1e-8);
        if !cert.psd {
            negatives += 1;
            assert!(cert.witness_value() < 0.0);
        }
    }
    assert!(negatives > 0);
}

#[test]
fn zero_targets_at_separated_nodes_have_full_rank() {
    let p = InterpolationProblem::real(&[0.75, 1.5, 3.0, 6.0], &[0.0; 4], KernelSpec::zeta()).unwrap();
    let rep = theorem21_check(&p).unwrap();
    assert!(rep.cond_i.psd && rep.cond_ii.psd && rep.rank_full);
}

proptest! {
    #[test]
    fn cayley_round_trip(re in 1e-3f64..1e3, im in -1e3f64..1e3) {
        let z = HalfPlanePoint::right(Complex64::new(re, im)).unwrap();
        let w = cayley(&z).unwrap();
        prop_assert!(w.norm() < 1.0);
        let back = inverse_cayley(w).unwrap();
        prop_assert!((back - z.value()).norm() <= 1e-14 * z.value().norm().max(1.0) * (1.0 + z.value().norm()));
    }

    #[test]
    fn certificate_invariant(entries in proptest::collection::vec(-2.0f64..2.0, 18)) {
        let g = CMatrix::from_fn(3, 3, |i, j| Complex64::new(entries[2 * (3 * i + j)], entries[2 * (3 * i + j) + 1]));
        let m = &g + g.adjoint();
        let cert = certify_psd(&m, 1e-10, 1e-8).unwrap();
        prop_assert_eq!(cert.psd, cert.min_eigenvalue >= -1e-10 * cert.spectral_norm.max(1.0));
        prop_assert!((cert.witness_value() - cert.min_eigenvalue).abs() <= 1e-8);
        prop_assert!(max_abs_entry(&(&cert.matrix - &m)) == 0.0);
    }

    #[test]
    fn zero_targets_give_gram_matrices(xs in proptest::collection::btree_set(6u32..40, 1..5)) {
        let nodes: Vec<f64> = xs.iter().map(|&x| x as f64 / 10.0).collect();
        let zeros = vec![0.0; nodes.len()];
        let p = InterpolationProblem::real(&nodes, &zeros, KernelSpec::zeta()).unwrap();
        let rep = theorem21_check(&p).unwrap();
        prop_assert!(rep.cond_i.psd && rep.cond_ii.psd);
    }
}

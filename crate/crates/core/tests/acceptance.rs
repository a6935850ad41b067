//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{circle, random_blaschke, random_schur_function, separated_nodes};
use pickzeta::arith::{
    dirichlet_convolve, euler_product, mobius_sieve, smooth_partial_sum, zeta, CoefficientSeries, PrimeTable,
    ZetaConfig,
};
use pickzeta::disc::{parametrization_matrix, parametrize_solutions, solve_disc, RationalSchurFunction, BOUNDARY_SAMPLES, UNITARITY_SAMPLES};
use pickzeta::kernels::KernelSpec;
use pickzeta::linalg::CMatrix;
use pickzeta::pick::{certify_psd, lemma22_transfer, theorem12_certificate, InterpolationProblem};
use pickzeta::realization::{build_lurking_isometry, build_t_lambda, evaluate_at, verify_direction_ii_to_i, TestMultiplier};
use pickzeta::{Complex64, HalfPlanePoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Gate {
    failures: Vec<String>,
}

impl Gate {
    fn line(&mut self, id: &str, pass: bool, detail: String) {
        println!("[{}] {id}: {detail}", if pass { "PASS" } else { "FAIL" });
        if !pass {
            self.failures.push(id.to_string());
        }
    }
}

fn zr(x: f64) -> f64 {
    zeta(Complex64::new(x, 0.0), 1e-13).unwrap().re
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn hp(re: f64, im: f64) -> HalfPlanePoint {
    HalfPlanePoint::dirichlet(c(re, im)).unwrap()
}

fn zeta_table(g: &mut Gate) {
    let start = Instant::now();
    let printed = [(2.0, 1.6449), (3.0, 1.2020), (4.0, 1.0823), (7.0, 1.0083), (12.0, 1.0002)];
    let mut all = true;
    let mut rows = Vec::new();
    for (x, v) in printed {
        let got = zr(x);
        let err = (got - v).abs();
        all &= err <= 5e-5;
        rows.push(format!("zeta({x})={got:.7} |d|={err:.2e}"));
    }
    let elapsed = start.elapsed();
    all &= elapsed < Duration::from_secs(1);
    g.line("01 zeta table", all, format!("{} ; {elapsed:?}", rows.join(", ")));
    let err3 = (zr(3.0) - 1.20206).abs();
    g.line(
        "01 zeta(3) vs rounded 1.20206 (supplementary)",
        err3 <= 5e-5,
        format!("|d|={err3:.2e}"),
    );
}

fn zeta_ratio(g: &mut Gate) {
    let cfg = ZetaConfig::default();
    let ev = |x: f64| cfg.evaluate(c(x, 0.0), 1e-13).unwrap();
    let (e2, e3, e4) = (ev(2.0), ev(3.0), ev(4.0));
    let ratio = e3.value.re.powi(2) / (e2.value.re * e4.value.re);
    // Worst case over the certified intervals.
    let upper = (e3.value.re + e3.error_bound).powi(2)
        / ((e2.value.re - e2.error_bound) * (e4.value.re - e4.error_bound));
    let margin = 8.0 / 9.0 - upper;
    // Reference ratio from a 30-digit mpmath evaluation.
    g.line(
        "02 zeta(3)^2/(zeta(2)zeta(4)) < 8/9",
        margin > 0.07 && (ratio - 0.811_604_744_850_968).abs() < 1e-12,
        format!("ratio={ratio:.6} certified upper={upper:.12} margin={margin:.4}"),
    );
}

fn counterexamples(g: &mut Gate) {
    let start = Instant::now();
    let mut all = true;
    let mut rows = Vec::new();
    for m in 1..=8 {
        let rep = theorem12_certificate(m, c(0.4, 0.0)).unwrap();
        let ok = rep.holds
            && rep.zeta_certificate.psd
            && !rep.szego_certificate.psd
            && rep.zeta_determinant > 1e-3
            && rep.szego_determinant < -1e-3;
        all &= ok;
        rows.push(format!("m={m}: det={:.4e}/{:.4e}", rep.zeta_determinant, rep.szego_determinant));
    }
    let elapsed = start.elapsed();
    all &= elapsed < Duration::from_secs(1);
    g.line("03 two-point counterexamples m=1..8", all, format!("{} ; {elapsed:?}", rows.join(", ")));
}

fn two_by_two_verdicts(g: &mut Gate) {
    let m1 = CMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(1.0 / 7.0, 0.0), c(1.0 / 7.0, 0.0), c(1.0 / 24.0, 0.0)]);
    let c1 = certify_psd(&m1, 1e-10, 1e-8).unwrap();
    let (z2, z7, z12) = (zr(2.0), zr(7.0), zr(12.0));
    let m2 = CMatrix::from_row_slice(2, 2, &[c(z2, 0.0), c(z7, 0.0), c(z7, 0.0), c(z12 / 2.0, 0.0)]);
    let c2 = certify_psd(&m2, 1e-10, 1e-8).unwrap();
    let gap = z2 * z12 - 2.0 * z7 * z7;
    let pass = c1.psd
        && c1.relative_margin > 1e-3
        && !c2.psd
        && -c2.relative_margin > 1e-3
        && gap < 0.0
        && (gap + 0.39).abs() < 0.01;
    g.line(
        "04 Cauchy and zeta 2x2 verdicts",
        pass,
        format!(
            "psd margin={:.3e}, non-psd margin={:.3e}, zeta(2)zeta(12)-2zeta(7)^2={gap:.4}",
            c1.relative_margin, c2.relative_margin
        ),
    );
}

fn transfer_suite(g: &mut Gate) {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut agree, mut borderline, mut worst) = (0, 0, 0.0f64);
    let draws = 200;
    for _ in 0..draws {
        let n = rng.gen_range(1..=6);
        let nodes = (0..n).map(|_| c(rng.gen_range(0.1..5.0), rng.gen_range(-5.0..5.0))).collect();
        let targets = (0..n)
            .map(|_| Complex64::from_polar(rng.gen_range(0.0..0.95), rng.gen_range(0.0..std::f64::consts::TAU)))
            .collect();
        let p = InterpolationProblem::new(nodes, targets, KernelSpec::SzegoHalfPlane).unwrap();
        let rep = lemma22_transfer(&p).unwrap();
        worst = worst.max(rep.factorization_residual);
        if rep.borderline {
            borderline += 1;
        } else if rep.psd_agree && rep.rank_agree {
            agree += 1;
        }
    }
    let elapsed = start.elapsed();
    let decided = draws - borderline;
    let pass = agree == decided
        && (borderline as f64) < 0.05 * draws as f64
        && worst <= 1e-12
        && elapsed < Duration::from_secs(30);
    g.line(
        "05 half-plane/disc transfer",
        pass,
        format!("{agree}/{decided} agree, {borderline} borderline excluded, residual={worst:.2e} ; {elapsed:?}"),
    );
}

fn arithmetic(g: &mut Gate) {
    let n = 10_000;
    let sieve = mobius_sieve(n);
    let table = PrimeTable::sieve(100);
    let trial_ok = (1..=n as u64).all(|k| table.mobius(k).unwrap() == sieve[k as usize]);
    let unit = dirichlet_convolve(&CoefficientSeries::mobius(n), &CoefficientSeries::ones(n)).unwrap();
    let inversion_ok = unit
        .coeffs()
        .iter()
        .enumerate()
        .all(|(i, v)| *v == c(if i == 0 { 1.0 } else { 0.0 }, 0.0));
    g.line(
        "06 Mobius inversion n<=1e4",
        trial_ok && inversion_ok,
        format!("sieve=trial division: {trial_ok}, mu*1 = unit exactly: {inversion_ok}"),
    );
    let mut all = true;
    let mut rows = Vec::new();
    for sigma in [0.6, 1.0, 2.0] {
        for k in 1..=5 {
            let gap = euler_product(k, sigma) - smooth_partial_sum(k, sigma, 1_000_000);
            let ok = gap.abs() <= 1e-3;
            all &= ok;
            if !ok {
                rows.push(format!("sigma={sigma} n={k} gap={gap:.3e}"));
            }
        }
    }
    let detail = if rows.is_empty() {
        "all 15 gaps <= 1e-3".to_string()
    } else {
        format!("exceeding 1e-3: {}", rows.join(", "))
    };
    g.line("06 Euler products of smooth sums at N=1e6", all, detail);
}

fn disc_round_trip(g: &mut Gate) {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let (mut solved, mut worst_res, mut worst_sup) = (0, 0.0f64, 0.0f64);
    while solved < 50 {
        let n = rng.gen_range(1..=5);
        let (b, scale) = random_schur_function(&mut rng);
        let z = separated_nodes(&mut rng, n, 0.15);
        let w: Vec<Complex64> = z.iter().map(|&x| b.eval(x) * scale).collect();
        let sol = solve_disc(&z, &w).unwrap().solved().unwrap();
        if sol.pick.relative_margin < 1e-4 {
            continue;
        }
        solved += 1;
        worst_res = worst_res.max(sol.node_residual);
        worst_sup = worst_sup.max(sol.schur_class.max_modulus);
    }
    let mut degenerate_ok = true;
    let mut worst_gen = 0.0f64;
    for (n, d) in [(3, 1), (4, 2), (5, 3)] {
        let b = random_blaschke(&mut rng, d);
        let z = separated_nodes(&mut rng, n, 0.2);
        let w: Vec<Complex64> = z.iter().map(|&x| b.eval(x)).collect();
        let sol = solve_disc(&z, &w).unwrap().solved().unwrap();
        degenerate_ok &= sol.degenerate && sol.degree() == d;
        for k in 0..20 {
            let p = circle(k, 20, 0.6);
            worst_gen = worst_gen.max((sol.eval(p) - b.eval(p)).norm());
        }
    }
    g.line(
        "07 disc solver round trip",
        worst_res <= 1e-8 && worst_sup <= 1.0 + 1e-6 && degenerate_ok && worst_gen <= 1e-6,
        format!(
            "node residual={worst_res:.2e}, boundary sup={worst_sup:.10}, degenerate degrees ok={degenerate_ok}, generator match={worst_gen:.2e}"
        ),
    );
}

fn parametrization(g: &mut Gate) {
    let mut rng = ChaCha8Rng::seed_from_u64(88);
    let (mut done, mut worst_interp, mut worst_unit) = (0, 0.0f64, 0.0f64);
    let mut schur_ok = true;
    while done < 10 {
        let n = rng.gen_range(2..=5);
        let (b, scale) = random_schur_function(&mut rng);
        let z = separated_nodes(&mut rng, n, 0.2);
        let w: Vec<Complex64> = z.iter().map(|&x| b.eval(x) * scale).collect();
        let Ok(gm) = parametrization_matrix(&z, &w) else {
            continue;
        };
        done += 1;
        worst_unit = worst_unit.max(gm.unitarity(UNITARITY_SAMPLES).unitarity_deviation);
        for h in [c(0.0, 0.0), c(0.3, 0.0), c(0.0, -0.7)] {
            let f = parametrize_solutions(&z, &w, &RationalSchurFunction::constant(h)).unwrap();
            for (a, t) in z.iter().zip(&w) {
                worst_interp = worst_interp.max((f.eval(*a) - t).norm());
                worst_interp = worst_interp.max((gm.apply(*a, h) - t).norm());
            }
            schur_ok &= f.schur_certificate(BOUNDARY_SAMPLES, 1e-8).passes;
        }
    }
    g.line(
        "08 parametrization of all solutions",
        worst_interp <= 1e-8 && schur_ok && worst_unit <= 1e-8,
        format!("interpolation={worst_interp:.2e}, Schur class={schur_ok}, unitarity={worst_unit:.2e}"),
    );
}

fn realization(g: &mut Gate) {
    let start = Instant::now();
    let samples = vec![hp(1.0, 0.0), hp(1.5, 1.0), hp(2.0, -0.5), hp(3.0, 2.0)];
    let held = [hp(1.25, 0.5), hp(1.75, 0.0), hp(2.5, 1.0), hp(1.2, -0.3)];
    let grid: Vec<HalfPlanePoint> = (0..8).map(|k| hp(1.0 + 0.3 * k as f64, k as f64 - 3.0)).collect();
    let alpha = c(2.0, 0.0);
    let mut all = true;
    for coef in [c(0.3, 0.0), c(0.0, 0.5), c(-0.8, 0.0)] {
        let phi = TestMultiplier::monomial(coef, 2).unwrap();
        let m = build_lurking_isometry(&phi, &samples, 100_000, 1e-6).unwrap();
        let cert = m.certificates;
        let err = |p: &HalfPlanePoint| (evaluate_at(&m, p, alpha).unwrap().value - phi.eval(p.value()).unwrap()).norm();
        let at_samples = samples.iter().map(err).fold(0.0f64, f64::max);
        let at_held = held.iter().map(err).fold(0.0f64, f64::max);
        let negative = verify_direction_ii_to_i(&m.with_scaled_d(1.5), &grid, alpha, 1e-10).unwrap();
        let positive = verify_direction_ii_to_i(&m, &grid, alpha, 1e-10).unwrap();
        let ok = cert.gram_identity_residual <= 1e-6
            && cert.isometry_residual <= 1e-8
            && cert.sigma_max <= 1.0 + 1e-8
            && cert.d_contraction_residual <= 1e-6
            && at_samples <= 1e-4
            && at_held <= 1e-2
            && positive.passes
            && !negative.passes;
        all &= ok;
        g.line(
            &format!("09 realization c={coef}"),
            ok,
            format!(
                "gram={:.2e} iso={:.2e} sigma_max-1={:.2e} D-res={:.2e} samples={at_samples:.2e} held-out={at_held:.2e} (tail bound {:.2e}) verify={} negative control rejected={}",
                cert.gram_identity_residual,
                cert.isometry_residual,
                cert.sigma_max - 1.0,
                cert.d_contraction_residual,
                cert.tail_bound,
                positive.passes,
                !negative.passes
            ),
        );
    }
    let elapsed = start.elapsed();
    g.line(
        "09 realization runtime",
        all && elapsed < Duration::from_secs(120),
        format!("{elapsed:?}"),
    );
}

fn t_lambda(g: &mut Gate) {
    let mut all = true;
    let mut rows = Vec::new();
    for sigma in [0.6, 0.75, 1.0, 2.0, 5.0] {
        let t = build_t_lambda(&hp(sigma, 0.0), c(2.0, 0.0), 100_000).unwrap();
        let diagonal_ok = t.zeta_2sigma < t.zeta_2sigma + 1.0 / t.zeta_2sigma && t.diagonal_inequality;
        let ok = t.v_inverse_norm <= t.epsilon_tilde && t.epsilon_tilde < 1.0 && t.inverse_norm_bound < 1.0 && diagonal_ok;
        all &= ok;
        if sigma == 1.0 {
            all &= (t.v_inverse_norm - 0.8545).abs() < 1e-4 && (t.epsilon_tilde - 0.9301).abs() < 1e-4;
        }
        rows.push(format!("sigma={sigma}: {:.4} <= {:.4}", t.v_inverse_norm, t.epsilon_tilde));
    }
    g.line("10 T_lambda inverse bounds", all, rows.join(", "));
}

fn main() -> ExitCode {
    let mut g = Gate { failures: Vec::new() };
    zeta_table(&mut g);
    zeta_ratio(&mut g);
    counterexamples(&mut g);
    two_by_two_verdicts(&mut g);
    transfer_suite(&mut g);
    arithmetic(&mut g);
    disc_round_trip(&mut g);
    parametrization(&mut g);
    realization(&mut g);
    t_lambda(&mut g);
    if g.failures.is_empty() {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} failing: {}", g.failures.len(), g.failures.join("; "));
        ExitCode::FAILURE
    }
}

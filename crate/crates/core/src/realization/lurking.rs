use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::multiplier::{factor_psi, kappa_phi_gram, sample, TestMultiplier};
use crate::error::{Error, Result};
use crate::kernels::{FeatureMap, KernelSpec};
use crate::linalg::{hermitian_eigen, largest_eigenvalue_of_product, serde_matrix, CMatrix, CVector};
use crate::point::HalfPlanePoint;

/// Relative eigenvalue cutoff for the Moore factorization of `κ_φ`.
pub const FACTOR_TOL: f64 = 1e-12;
/// Columns of the lifted data whose remaining norm falls below this fraction
/// of the largest column norm are dropped from the span basis.
pub const SPAN_DROP_TOL: f64 = 1e-12;
pub const DEFAULT_GRAM_TOL: f64 = 1e-6;

/// Residuals certifying a constructed model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealizationCertificates {
    /// `max |<x_i, x_j> - <y_i, y_j>|`.
    pub gram_identity_residual: f64,
    /// `max |<Ṽx_i, Ṽx_j> - <x_i, x_j>| / (‖x_i‖ ‖x_j‖)`.
    pub isometry_residual: f64,
    /// Largest singular value of the assembled block matrix.
    pub sigma_max: f64,
    /// `max ‖D(e_i ⊗ ψ_i) - (f_i ⊗ ψ_i - γ)‖ / max(1, ‖f_i ⊗ ψ_i‖)`.
    pub d_contraction_residual: f64,
    /// `max ‖Ṽx_i - y_i‖ / ‖y_i‖`.
    pub data_residual: f64,
    /// Bound on the truncation error of the `ζ` features.
    pub tail_bound: f64,
    /// `‖κ_φ - Ψ Ψ*‖_max`.
    pub factor_residual: f64,
    pub span_rank: usize,
}

impl RealizationCertificates {
    pub fn contraction_ok(&self) -> bool {
        self.sigma_max <= 1.0 + 1e-8
    }
}

/// Finite realization `Ṽ = [[a, β*], [γ, D]]` of a contractive multiplier.
///
/// The second block has coordinates `m * r + ρ` for feature index `m < N`
/// and `𝒦`-index `ρ < r`. `D = d_scale · d_left · d_right*` is kept in
/// factored form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealizationModel {
    pub a: Complex64,
    pub beta: Vec<Complex64>,
    pub gamma: Vec<Complex64>,
    #[serde(with = "serde_matrix")]
    pub d_left: CMatrix,
    #[serde(with = "serde_matrix")]
    pub d_right: CMatrix,
    pub d_scale: f64,
    /// Row `i` is `ψ(s_i) ∈ ℂ^r`.
    #[serde(with = "serde_matrix")]
    pub psi: CMatrix,
    pub n: usize,
    pub r: usize,
    pub sample_points: Vec<HalfPlanePoint>,
    pub phi_values: Vec<Complex64>,
    pub certificates: RealizationCertificates,
}

fn lift(head: Complex64, feature: &[Complex64], psi: &[Complex64]) -> Vec<Complex64> {
    let r = psi.len();
    let mut v = Vec::with_capacity(1 + feature.len() * r);
    v.push(head);
    for x in feature {
        for p in psi {
            v.push(x * p);
        }
    }
    v
}

fn dot(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    crate::kernels::inner(x, y)
}

fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Orthonormal basis of the column span by modified Gram-Schmidt with column
/// pivoting, twice-orthogonalized.
fn span_basis(cols: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let top = cols.iter().map(|c| norm(c)).fold(0.0f64, f64::max);
    let mut work: Vec<Vec<Complex64>> = cols.to_vec();
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    let mut remaining: Vec<usize> = (0..cols.len()).collect();
    while !remaining.is_empty() {
        let (pos, best) = remaining
            .iter()
            .enumerate()
            .map(|(p, &i)| (p, norm(&work[i])))
            .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if !(best > SPAN_DROP_TOL * top) {
            break;
        }
        let idx = remaining.swap_remove(pos);
        let mut q = work[idx].clone();
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&q, b);
                for (qi, bi) in q.iter_mut().zip(b) {
                    *qi -= bi * c;
                }
            }
        }
        let qn = norm(&q);
        if !(qn > SPAN_DROP_TOL * top) {
            continue;
        }
        for v in q.iter_mut() {
            *v /= qn;
        }
        for &i in &remaining {
            let c = dot(&work[i], &q);
            for (wi, qi) in work[i].iter_mut().zip(&q) {
                *wi -= qi * c;
            }
        }
        basis.push(q);
    }
    basis
}

fn columns_to_matrix(cols: &[Vec<Complex64>], rows: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols.len(), |i, j| cols[j][i])
}

/// Lurking-isometry construction on `k` sample points with `N` features.
pub fn build_lurking_isometry(
    phi: &TestMultiplier,
    points: &[HalfPlanePoint],
    n: usize,
    tol: f64,
) -> Result<RealizationModel> {
    if n < 10 {
        return Err(Error::InvalidInput(format!("feature truncation must be at least 10, got {n}")));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    let (nodes, values) = sample(phi, points)?;
    let gram = kappa_phi_gram(phi, points)?;
    let factor = factor_psi(&gram, FACTOR_TOL)?;
    let r = factor.rank;
    let k = nodes.len();
    let psi_rows: Vec<Vec<Complex64>> = (0..k)
        .map(|i| (0..r).map(|j| factor.psi[(i, j)]).collect())
        .collect();

    let zeta_map = FeatureMap::new(&KernelSpec::zeta(), n)?;
    let mu_map = FeatureMap::new(&KernelSpec::KappaMu, n)?;
    let e_feat: Vec<Vec<Complex64>> = nodes.iter().map(|&s| zeta_map.coords(s)).collect();
    let f_feat: Vec<Vec<Complex64>> = nodes.iter().map(|&s| mu_map.coords(s)).collect();
    let one = Complex64::new(1.0, 0.0);
    let xs: Vec<Vec<Complex64>> = (0..k).map(|i| lift(one, &e_feat[i], &psi_rows[i])).collect();
    let ys: Vec<Vec<Complex64>> = (0..k).map(|i| lift(values[i], &f_feat[i], &psi_rows[i])).collect();

    let mut gram_res = 0.0f64;
    for i in 0..k {
        for j in 0..k {
            gram_res = gram_res.max((dot(&xs[i], &xs[j]) - dot(&ys[i], &ys[j])).norm());
        }
    }
    if gram_res > tol {
        return Err(Error::Truncation(format!(
            "Gram identity residual {gram_res:e} exceeds {tol:e} at N = {n}; increase the feature truncation"
        )));
    }

    let dim = 1 + n * r;
    let basis = span_basis(&xs);
    let q = basis.len();
    let qm = columns_to_matrix(&basis, dim);
    let xm = columns_to_matrix(&xs, dim);
    let ym = columns_to_matrix(&ys, dim);
    // Procrustes: W = polar(Y R*), R = Q* X, so that Ṽ = W Q* is a partial
    // isometry mapping the span of the x_i as close to the y_i as possible.
    let rm = qm.adjoint() * &xm;
    let m = &ym * rm.adjoint();
    let b = m.adjoint() * &m;
    let (bvals, bvecs) = hermitian_eigen(&b);
    if bvals[0] <= 1e-24 * bvals[q - 1].max(f64::MIN_POSITIVE) {
        return Err(Error::IllConditioned(format!(
            "image span is degenerate (eigenvalues {:e}..{:e})",
            bvals[0],
            bvals[q - 1]
        )));
    }
    let inv_sqrt = &bvecs
        * CMatrix::from_diagonal(&CVector::from_iterator(
            q,
            bvals.iter().map(|&v| Complex64::new(1.0 / v.sqrt(), 0.0)),
        ))
        * bvecs.adjoint();
    let w = &m * inv_sqrt;

    let w0 = w.row(0).into_owned();
    let q0 = qm.row(0).into_owned();
    let w_low = w.rows(1, dim - 1).into_owned();
    let q_low = qm.rows(1, dim - 1).into_owned();
    let a = (0..q).map(|j| w0[j] * q0[j].conj()).sum::<Complex64>();
    let beta: Vec<Complex64> = (&q_low * w0.adjoint()).iter().copied().collect();
    let gamma: Vec<Complex64> = (&w_low * q0.adjoint()).iter().copied().collect();

    let mut model = RealizationModel {
        a,
        beta,
        gamma,
        d_left: w_low,
        d_right: q_low,
        d_scale: 1.0,
        psi: factor.psi.clone(),
        n,
        r,
        sample_points: points.to_vec(),
        phi_values: values,
        certificates: RealizationCertificates {
            gram_identity_residual: gram_res,
            isometry_residual: 0.0,
            sigma_max: 0.0,
            d_contraction_residual: 0.0,
            data_residual: 0.0,
            tail_bound: nodes.iter().map(|&s| zeta_map.tail_bound(s, s)).fold(0.0f64, f64::max),
            factor_residual: factor.residual,
            span_rank: q,
        },
    };

    let images: Vec<Vec<Complex64>> = xs.iter().map(|x| model.apply_v(x)).collect();
    let mut iso = 0.0f64;
    let mut data = 0.0f64;
    for i in 0..k {
        for j in 0..k {
            let want = dot(&xs[i], &xs[j]);
            let got = dot(&images[i], &images[j]);
            iso = iso.max((got - want).norm() / (norm(&xs[i]) * norm(&xs[j])));
        }
        let diff: Vec<Complex64> = images[i].iter().zip(&ys[i]).map(|(a, b)| a - b).collect();
        data = data.max(norm(&diff) / norm(&ys[i]).max(f64::MIN_POSITIVE));
    }
    let mut dres = 0.0f64;
    for i in 0..k {
        let ex = &xs[i][1..];
        let fy = &ys[i][1..];
        let dx = model.apply_d(ex);
        let diff: Vec<Complex64> = dx
            .iter()
            .zip(fy)
            .zip(&model.gamma)
            .map(|((d, f), g)| d - (f - g))
            .collect();
        dres = dres.max(norm(&diff) / norm(fy).max(1.0));
    }
    model.certificates.isometry_residual = iso;
    model.certificates.data_residual = data;
    model.certificates.d_contraction_residual = dres;
    model.certificates.sigma_max = model.sigma_max();
    Ok(model)
}

impl RealizationModel {
    /// Dimension `1 + N r` of the space `Ṽ` acts on.
    pub fn dim(&self) -> usize {
        1 + self.n * self.r
    }

    /// `D v` for `v` in the second block.
    pub fn apply_d(&self, v: &[Complex64]) -> Vec<Complex64> {
        let coeffs = self.d_right.adjoint() * CVector::from_column_slice(v);
        (&self.d_left * coeffs * Complex64::new(self.d_scale, 0.0)).iter().copied().collect()
    }

    /// `Ṽ x` from the blocks.
    pub fn apply_v(&self, x: &[Complex64]) -> Vec<Complex64> {
        let head = x[0];
        let tail = &x[1..];
        let mut out = Vec::with_capacity(x.len());
        out.push(self.a * head + dot(tail, &self.beta));
        let d = self.apply_d(tail);
        out.extend(d.iter().zip(&self.gamma).map(|(dv, g)| dv + g * head));
        out
    }

    /// `‖D‖`.
    pub fn d_norm(&self) -> f64 {
        let l = self.d_left.adjoint() * &self.d_left;
        let r = self.d_right.adjoint() * &self.d_right;
        self.d_scale * largest_eigenvalue_of_product(&l, &r).sqrt()
    }

    /// Largest singular value of `[[a, β*], [γ, D]]`, computed from the
    /// low-rank form `L R*` with `L = [e_0, (0; γ), (0; d_scale·d_left)]` and
    /// `R = [(ā; β), e_0, (0; d_right)]`.
    pub fn sigma_max(&self) -> f64 {
        let q = self.d_left.ncols();
        let low = self.dim() - 1;
        let cols = 2 + q;
        let mut l = CMatrix::zeros(low + 1, cols);
        let mut r = CMatrix::zeros(low + 1, cols);
        l[(0, 0)] = Complex64::new(1.0, 0.0);
        r[(0, 0)] = self.a.conj();
        r[(0, 1)] = Complex64::new(1.0, 0.0);
        for i in 0..low {
            r[(i + 1, 0)] = self.beta[i];
            l[(i + 1, 1)] = self.gamma[i];
            for j in 0..q {
                l[(i + 1, 2 + j)] = self.d_left[(i, j)] * self.d_scale;
                r[(i + 1, 2 + j)] = self.d_right[(i, j)];
            }
        }
        let ll = l.adjoint() * &l;
        let rr = r.adjoint() * &r;
        largest_eigenvalue_of_product(&ll, &rr).sqrt()
    }

    /// Copy with `D` multiplied by `factor`; the certificates are recomputed
    /// only for the contraction bound.
    pub fn with_scaled_d(&self, factor: f64) -> Self {
        let mut out = self.clone();
        out.d_scale *= factor;
        out.certificates.sigma_max = out.sigma_max();
        out
    }
}

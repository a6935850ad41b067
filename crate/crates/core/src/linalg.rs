//! Small dense complex linear-algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `max |M_ij - conj(M_ji)|`.
pub fn hermitian_asymmetry(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// `(M + M*)/2`.
pub fn symmetrize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * c(0.5, 0.0)
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), CMatrix::zeros(0, 0));
    }
    let eig = SymmetricEigen::new(symmetrize(m));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Largest singular value.
pub fn spectral_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .fold(0.0f64, |a, &b| a.max(b))
}

pub fn max_abs_entry(m: &CMatrix) -> f64 {
    m.iter().fold(0.0f64, |a, z| a.max(z.norm()))
}

/// `x* M x`.
pub fn quadratic_form(m: &CMatrix, x: &CVector) -> Complex64 {
    x.dotc(&(m * x))
}

/// Largest eigenvalue of `A B` for Hermitian PSD `A`, `B`, computed through the
/// Hermitian matrix `A^{1/2} B A^{1/2}`.
pub fn largest_eigenvalue_of_product(a: &CMatrix, b: &CMatrix) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    let root = psd_sqrt(a);
    let h = &root * b * &root;
    hermitian_eigen(&h).0.last().copied().unwrap_or(0.0).max(0.0)
}

/// Principal square root of a Hermitian PSD matrix (negative eigenvalues
/// clipped to 0).
pub fn psd_sqrt(a: &CMatrix) -> CMatrix {
    let (vals, vecs) = hermitian_eigen(a);
    let d = CMatrix::from_diagonal(&CVector::from_iterator(
        vals.len(),
        vals.iter().map(|&v| c(v.max(0.0).sqrt(), 0.0)),
    ));
    &vecs * d * vecs.adjoint()
}


/// Serde adapter writing a complex matrix row-major as
/// `[[[re, im], ...], ...]`.
pub mod serde_matrix {
    use super::CMatrix;
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &CMatrix, ser: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<Complex64>> = (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
            .collect();
        rows.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<CMatrix, D::Error> {
        let rows: Vec<Vec<Complex64>> = Vec::deserialize(de)?;
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(serde::de::Error::custom("ragged matrix rows"));
        }
        Ok(CMatrix::from_row_iterator(nrows, ncols, rows.into_iter().flatten()))
    }
}

/// Serde adapter for complex vectors as `[[re, im], ...]`.
pub mod serde_vector {
    use super::CVector;
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &CVector, ser: S) -> Result<S::Ok, S::Error> {
        v.as_slice().serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<CVector, D::Error> {
        let v: Vec<Complex64> = Vec::deserialize(de)?;
        Ok(CVector::from_vec(v))
    }
}

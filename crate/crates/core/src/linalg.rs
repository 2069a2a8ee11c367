//! Dense complex linear algebra helpers on top of `nalgebra`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Largest singular value.
pub fn op_norm(m: &CMat) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .cloned()
        .fold(0.0, f64::max)
}

/// Eigen-decomposition of the Hermitian part of `m`, eigenvalues ascending.
pub fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), CMat::zeros(0, 0));
    }
    let h = (m + m.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMat::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Columns spanning the eigenspace of a Hermitian PSD matrix for eigenvalues `<= tol`.
pub fn null_space_psd(m: &CMat, tol: f64) -> CMat {
    let (values, vectors) = hermitian_eigen(m);
    let keep: Vec<usize> = (0..values.len()).filter(|&i| values[i] <= tol).collect();
    select_columns(&vectors, &keep)
}

pub fn select_columns(m: &CMat, cols: &[usize]) -> CMat {
    CMat::from_fn(m.nrows(), cols.len(), |r, c| m[(r, cols[c])])
}

/// Orthonormalizes `vectors` (each of length `dim`) with two-pass Gram-Schmidt,
/// dropping vectors whose residual norm falls below `tol`.
pub fn orthonormal_basis<I>(dim: usize, vectors: I, tol: f64) -> CMat
where
    I: IntoIterator<Item = CVec>,
{
    let mut basis: Vec<CVec> = Vec::new();
    for v in vectors {
        if let Some(q) = orthogonalize(&basis, v, tol) {
            basis.push(q);
            if basis.len() == dim {
                break;
            }
        }
    }
    columns_to_matrix(dim, &basis)
}

/// Extends an orthonormal set with `v` if `v` has a component outside its span.
pub fn orthogonalize(basis: &[CVec], mut v: CVec, tol: f64) -> Option<CVec> {
    let scale = v.norm();
    if scale <= tol {
        return None;
    }
    for _ in 0..2 {
        for q in basis {
            let c = q.dotc(&v);
            v.axpy(-c, q, ONE);
        }
    }
    let norm = v.norm();
    if norm <= tol * scale.max(1.0) {
        None
    } else {
        Some(v.unscale(norm))
    }
}

pub fn columns_to_matrix(dim: usize, cols: &[CVec]) -> CMat {
    CMat::from_fn(dim, cols.len(), |r, c| cols[c][r])
}

/// Norm of the component of `v` orthogonal to the orthonormal columns of `q`.
pub fn residual(q: &CMat, v: &CVec) -> f64 {
    if q.ncols() == 0 {
        return v.norm();
    }
    let coeffs = q.adjoint() * v;
    (v - q * coeffs).norm()
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

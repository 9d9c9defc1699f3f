//! Dense symmetric eigensolver and SVD, computed with faer and returned as
//! nalgebra matrices.

use faer::{Mat, Side};
use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

fn to_faer(a: &DMatrix<f64>) -> Mat<f64> {
    Mat::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)])
}

fn from_faer(m: faer::MatRef<'_, f64>) -> DMatrix<f64> {
    DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Eigen-decomposition of a real symmetric matrix with eigenvalues sorted
/// ascending and eigenvectors in matching columns.
///
/// The input is symmetrized as `(A + Aᵀ)/2` first.
pub(crate) fn sym_eigen(a: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let n = a.nrows();
    if n == 0 {
        return (DVector::zeros(0), DMatrix::zeros(0, 0));
    }
    let eig = to_faer(&symmetrize(a))
        .self_adjoint_eigen(Side::Lower)
        .expect("symmetric eigensolver converges on finite input");
    let s = eig.S();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| s[i].total_cmp(&s[j]));
    let u = eig.U();
    let values = DVector::from_iterator(n, order.iter().map(|&i| s[i]));
    let vectors = DMatrix::from_fn(n, n, |r, c| u[(r, order[c])]);
    (values, vectors)
}

pub(crate) fn sym_eigenvalues(a: &DMatrix<f64>) -> Vec<f64> {
    sym_eigen(a).0.iter().copied().collect()
}

/// Full SVD `A = U Σ Vᵀ` with singular values in descending order, `U`
/// square of size `rows` and `Vᵀ` square of size `cols`.
pub(crate) fn svd(a: &DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>, DMatrix<f64>)> {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return Ok((Vec::new(), DMatrix::identity(m, m), DMatrix::identity(n, n)));
    }
    let dec = to_faer(a)
        .svd()
        .map_err(|e| Error::InvalidArgument(format!("SVD did not converge: {e:?}")))?;
    let s = dec.S();
    let values = (0..m.min(n)).map(|i| s[i]).collect();
    Ok((values, from_faer(dec.U()), from_faer(dec.V()).transpose()))
}

pub(crate) fn symmetrize(a: &DMatrix<f64>) -> DMatrix<f64> {
    (a + a.transpose()) * 0.5
}

/// Binary entropy `-p ln p - (1-p) ln(1-p)` with `0 ln 0 = 0`; `p` is clamped to [0, 1].
pub(crate) fn binary_entropy(p: f64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    let mut s = 0.0;
    if p > 0.0 {
        s -= p * p.ln();
    }
    if p < 1.0 {
        s -= (1.0 - p) * (1.0 - p).ln();
    }
    s
}

/// `ln(1 + e^x)` without overflow.
pub(crate) fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

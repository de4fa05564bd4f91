//! Small dense linear algebra used internally: cyclic Jacobi eigensolver,
//! Cholesky factorization, shifted power iteration and a pivoted linear
//! solve. Everything is deterministic; sizes are desk scale so O(n³) sweeps
//! are fine.

use crate::error::{Error, Result};
use crate::types::DenseMatrix;

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn normalize(a: &mut [f64]) {
    let n = norm2(a);
    if n > 0.0 {
        for v in a.iter_mut() {
            *v /= n;
        }
    }
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order and the matching eigenvectors as
/// matrix columns.
pub fn symmetric_eigen(a: &DenseMatrix) -> (Vec<f64>, DenseMatrix) {
    assert!(a.is_square(), "eigendecomposition needs a square matrix");
    let n = a.rows();
    let mut m: Vec<f64> = a.entries().to_vec();
    let mut v = DenseMatrix::identity(n);
    let scale = a.max_abs().max(1e-300);

    let idx = |i: usize, j: usize| i * n + j;
    for _sweep in 0..128 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m[idx(p, q)] * m[idx(p, q)];
            }
        }
        if off.sqrt() <= 1e-15 * scale * n as f64 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[idx(p, q)];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (m[idx(q, q)] - m[idx(p, p)]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    1.0 / (2.0 * theta)
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                let app = m[idx(p, p)];
                let aqq = m[idx(q, q)];
                m[idx(p, p)] = app - t * apq;
                m[idx(q, q)] = aqq + t * apq;
                m[idx(p, q)] = 0.0;
                m[idx(q, p)] = 0.0;
                for r in 0..n {
                    if r != p && r != q {
                        let arp = m[idx(r, p)];
                        let arq = m[idx(r, q)];
                        m[idx(r, p)] = c * arp - s * arq;
                        m[idx(p, r)] = m[idx(r, p)];
                        m[idx(r, q)] = s * arp + c * arq;
                        m[idx(q, r)] = m[idx(r, q)];
                    }
                }
                for r in 0..n {
                    let vrp = v.get(r, p);
                    let vrq = v.get(r, q);
                    v.set(r, p, c * vrp - s * vrq);
                    v.set(r, q, s * vrp + c * vrq);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[idx(i, i)].partial_cmp(&m[idx(j, j)]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| m[idx(i, i)]).collect();
    let mut vectors = DenseMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..n {
            vectors.set(r, new_col, v.get(r, old_col));
        }
    }
    (values, vectors)
}

pub fn min_eigenvalue(a: &DenseMatrix) -> f64 {
    symmetric_eigen(a).0[0]
}

/// Largest eigenvalue of a symmetric matrix.
///
/// Power iteration on the Gershgorin-shifted matrix (the shift makes the
/// target eigenvalue strictly dominant in magnitude); falls back to the
/// Jacobi solver if the iteration has not met the residual after the cap.
pub fn largest_eigenvalue(a: &DenseMatrix, tol: f64) -> f64 {
    assert!(a.is_square());
    let n = a.rows();
    let shift = 1.0
        + (0..n)
            .map(|i| a.row(i).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0f64, f64::max);
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 1e-3 * i as f64).collect();
    normalize(&mut v);
    let mut w = vec![0.0; n];
    for _ in 0..200_000 {
        for i in 0..n {
            w[i] = dot(a.row(i), &v) + shift * v[i];
        }
        let lambda = dot(&v, &w);
        let mut resid = 0.0;
        for i in 0..n {
            let r = w[i] - lambda * v[i];
            resid += r * r;
        }
        let nw = norm2(&w);
        if nw == 0.0 {
            return -shift; // a = -shift·I edge case; caller shifts back
        }
        for i in 0..n {
            v[i] = w[i] / nw;
        }
        if resid.sqrt() <= tol * shift.max(lambda.abs()) {
            return lambda - shift;
        }
    }
    *symmetric_eigen(a).0.last().unwrap()
}

/// Largest singular value via power iteration on AᵀA.
pub fn largest_singular_value(a: &DenseMatrix, tol: f64) -> f64 {
    let at = a.transpose();
    let n = a.cols();
    let mut ata = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            ata.set(i, j, dot(at.row(i), at.row(j)));
        }
    }
    largest_eigenvalue(&ata, tol).max(0.0).sqrt()
}

/// Lower-triangular Cholesky factor of a symmetric positive definite matrix.
pub fn cholesky(a: &DenseMatrix) -> Result<DenseMatrix> {
    assert!(a.is_square());
    let n = a.rows();
    let mut l = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut sum = a.get(i, j);
            for k in 0..j {
                sum -= l.get(i, k) * l.get(j, k);
            }
            if i == j {
                if sum <= 0.0 {
                    return Err(Error::NotPsd(format!(
                        "nonpositive pivot {sum} at index {i}"
                    )));
                }
                l.set(i, i, sum.sqrt());
            } else {
                l.set(i, j, sum / l.get(j, j));
            }
        }
    }
    Ok(l)
}

/// Solve a·x = b by Gaussian elimination with partial pivoting.
/// Returns None for (numerically) singular systems.
pub fn solve_linear(a: &DenseMatrix, b: &[f64]) -> Option<Vec<f64>> {
    assert!(a.is_square() && a.rows() == b.len());
    let n = a.rows();
    let mut m: Vec<f64> = a.entries().to_vec();
    let mut rhs = b.to_vec();
    let idx = |i: usize, j: usize| i * n + j;
    for col in 0..n {
        let mut piv = col;
        for r in (col + 1)..n {
            if m[idx(r, col)].abs() > m[idx(piv, col)].abs() {
                piv = r;
            }
        }
        if m[idx(piv, col)].abs() < 1e-12 * (1.0 + rhs.iter().fold(0.0f64, |s, v| s.max(v.abs()))) {
            return None;
        }
        if piv != col {
            for j in 0..n {
                m.swap(idx(col, j), idx(piv, j));
            }
            rhs.swap(col, piv);
        }
        for r in (col + 1)..n {
            let f = m[idx(r, col)] / m[idx(col, col)];
            if f != 0.0 {
                for j in col..n {
                    m[idx(r, j)] -= f * m[idx(col, j)];
                }
                rhs[r] -= f * rhs[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = rhs[i];
        for j in (i + 1)..n {
            s -= m[idx(i, j)] * x[j];
        }
        x[i] = s / m[idx(i, i)];
    }
    Some(x)
}

/// Gram vectors of a near-PSD symmetric matrix: eigen-decompose, clip
/// negative eigenvalues, take rows of V·Λ^{1/2}. Fails when an eigenvalue
/// is below `-tol · trace-scale`.
pub fn gram_vectors(b: &DenseMatrix, tol: f64) -> Result<DenseMatrix> {
    let n = b.rows();
    let (values, vectors) = symmetric_eigen(b);
    let scale = b
        .entries()
        .iter()
        .map(|v| v.abs())
        .fold(1e-300, f64::max)
        .max(values.iter().map(|v| v.abs()).fold(0.0, f64::max));
    if values[0] < -tol * scale.max(1.0) {
        return Err(Error::NotPsd(format!("minimum eigenvalue {}", values[0])));
    }
    let mut g = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for (k, &lam) in values.iter().enumerate() {
            g.set(i, k, vectors.get(i, k) * lam.max(0.0).sqrt());
        }
    }
    Ok(g)
}

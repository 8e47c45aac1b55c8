//! Dense linear algebra on tiny square matrices stored row-major.

use crate::scalar::Scalar;

/// Inverse and determinant by Gauss-Jordan elimination with partial pivoting.
///
/// Returns `None` when a pivot falls below `pivot_tol`; the determinant
/// accumulated so far is returned in the error slot so callers can report it.
pub fn invert<T: Scalar>(a: &[T], n: usize, pivot_tol: T) -> Result<(Vec<T>, T), T> {
    assert_eq!(a.len(), n * n);
    let mut m = a.to_vec();
    let mut inv = vec![T::zero(); n * n];
    for i in 0..n {
        inv[i * n + i] = T::one();
    }
    let mut det = T::one();

    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&r, &s| {
                m[r * n + col]
                    .abs()
                    .partial_cmp(&m[s * n + col].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .unwrap_or(col);
        let pivot = m[pivot_row * n + col];
        if !(pivot.abs() > pivot_tol) {
            return Err(det * pivot);
        }
        if pivot_row != col {
            for k in 0..n {
                m.swap(pivot_row * n + k, col * n + k);
                inv.swap(pivot_row * n + k, col * n + k);
            }
            det = -det;
        }
        det = det * pivot;
        let scale = T::one() / pivot;
        for k in 0..n {
            m[col * n + k] = m[col * n + k] * scale;
            inv[col * n + k] = inv[col * n + k] * scale;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = m[r * n + col];
            if factor == T::zero() {
                continue;
            }
            for k in 0..n {
                m[r * n + k] = m[r * n + k] - factor * m[col * n + k];
                inv[r * n + k] = inv[r * n + k] - factor * inv[col * n + k];
            }
        }
    }
    Ok((inv, det))
}

/// Solves `a x = b`; `None` if `a` is singular to `pivot_tol`.
pub fn solve<T: Scalar>(a: &[T], b: &[T], pivot_tol: T) -> Option<Vec<T>> {
    let n = b.len();
    let (inv, _) = invert(a, n, pivot_tol).ok()?;
    Some((0..n).map(|i| (0..n).map(|j| inv[i * n + j] * b[j]).sum()).collect())
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
pub fn symmetric_eigenvalues<T: Scalar>(a: &[T], n: usize) -> Vec<T> {
    assert_eq!(a.len(), n * n);
    let mut m = a.to_vec();
    let eps = T::epsilon();
    for _sweep in 0..100 {
        let off: T = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[i * n + j] * m[i * n + j])
            .sum();
        let diag: T = (0..n).map(|i| m[i * n + i] * m[i * n + i]).sum();
        if off <= eps * eps * (diag + off) || off == T::zero() {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq == T::zero() {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (T::lit(2.0) * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k * n + p];
                    let mkq = m[k * n + q];
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p * n + k];
                    let mqk = m[q * n + k];
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
            }
        }
    }
    (0..n).map(|i| m[i * n + i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverts_permuted_matrix() {
        let a = [0.0f64, 1.0, 0.0, 0.0, 0.0, 2.0, 3.0, 0.0, 0.0];
        let (inv, det) = invert(&a, 3, 1e-12).unwrap();
        assert!((det - 6.0).abs() < 1e-12);
        let expected = [0.0, 0.0, 1.0 / 3.0, 1.0, 0.0, 0.0, 0.0, 0.5, 0.0];
        for (x, y) in inv.iter().zip(expected) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let a = [1.0f64, 2.0, 2.0, 4.0];
        assert!(invert(&a, 2, 1e-12).is_err());
    }

    #[test]
    fn eigenvalues_of_off_diagonal_block() {
        let a = [0.0f64, -1.0, -1.0, 0.0];
        let mut ev = symmetric_eigenvalues(&a, 2);
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((ev[0] + 1.0).abs() < 1e-14);
        assert!((ev[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn solve_small_system() {
        let a = [2.0f64, 1.0, 1.0, 3.0];
        let x = solve(&a, &[3.0, 5.0], 1e-12).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-14 && (x[1] - 1.4).abs() < 1e-14);
    }
}

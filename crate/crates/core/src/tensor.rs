//! Dense multi-index arrays over a fixed left-invariant frame.
//!
//! Index conventions used throughout the crate:
//!
//! * a vector `v` has components `v[k]`, the coefficient of `e_k`;
//! * an endomorphism `A` is rank 2 with `A[k, j]` the `e_k` component of `A e_j`;
//! * structure constants and connection coefficients are rank 3 with the
//!   upper index first: `c[k, i, j]` for `[e_i, e_j] = c^k_ij e_k` and
//!   `gamma[k, i, j]` for `nabla_{e_i} e_j = Gamma^k_ij e_k`;
//! * every other tensor is fully covariant, `T[i, j, ...] = T(e_i, e_j, ...)`.

use crate::error::{GeometryError, Result};
use crate::linalg;
use crate::scalar::Scalar;
use std::ops::{Add, Mul, Neg, Sub};

/// Basis of a (2n+1)-dimensional Lie algebra, `e_0 .. e_2n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    dim: usize,
    labels: Vec<String>,
}

impl Frame {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < 3 || dim.is_multiple_of(2) {
            return Err(GeometryError::InvalidFrame(dim));
        }
        Ok(Self {
            dim,
            labels: (0..dim).map(|i| format!("e_{i}")).collect(),
        })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut frame = Self::new(labels.len())?;
        frame.labels = labels;
        Ok(frame)
    }

    /// Frame of dimension `2n+1`.
    pub fn odd(n: usize) -> Result<Self> {
        Self::new(2 * n + 1)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `n` with `dim = 2n+1`.
    pub fn n(&self) -> usize {
        (self.dim - 1) / 2
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

/// Row-major dense tensor with every index ranging over `0..dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor<T> {
    dim: usize,
    rank: usize,
    data: Vec<T>,
}

impl<T: Scalar> Tensor<T> {
    pub fn zeros(dim: usize, rank: usize) -> Self {
        Self {
            dim,
            rank,
            data: vec![T::zero(); dim.pow(rank as u32)],
        }
    }

    pub fn scalar(value: T) -> Self {
        Self {
            dim: 0,
            rank: 0,
            data: vec![value],
        }
    }

    pub fn from_vec(dim: usize, rank: usize, data: Vec<T>) -> Result<Self> {
        let expected = dim.pow(rank as u32);
        if data.len() != expected {
            return Err(GeometryError::EntryCount {
                dim,
                rank,
                expected,
                found: data.len(),
            });
        }
        Ok(Self { dim, rank, data })
    }

    pub fn from_fn(dim: usize, rank: usize, mut f: impl FnMut(&[usize]) -> T) -> Self {
        let mut out = Self::zeros(dim, rank);
        let mut idx = vec![0usize; rank];
        for slot in out.data.iter_mut() {
            *slot = f(&idx);
            for pos in (0..rank).rev() {
                idx[pos] += 1;
                if idx[pos] < dim {
                    break;
                }
                idx[pos] = 0;
            }
        }
        out
    }

    pub fn vector(components: Vec<T>) -> Self {
        Self {
            dim: components.len(),
            rank: 1,
            data: components,
        }
    }

    pub fn basis_vector(dim: usize, i: usize) -> Self {
        Self::from_fn(dim, 1, |ix| if ix[0] == i { T::one() } else { T::zero() })
    }

    /// Kronecker delta; also the identity endomorphism.
    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, 2, |ix| if ix[0] == ix[1] { T::one() } else { T::zero() })
    }

    pub fn diagonal(entries: &[T]) -> Self {
        Self::from_fn(entries.len(), 2, |ix| {
            if ix[0] == ix[1] {
                entries[ix[0]]
            } else {
                T::zero()
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank);
        idx.iter().fold(0, |acc, &i| {
            debug_assert!(i < self.dim);
            acc * self.dim + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> T {
        self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: T) {
        let o = self.offset(idx);
        self.data[o] = value;
    }

    #[inline]
    pub fn at1(&self, i: usize) -> T {
        self.data[i]
    }

    #[inline]
    pub fn at2(&self, i: usize, j: usize) -> T {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn at3(&self, i: usize, j: usize, k: usize) -> T {
        self.data[(i * self.dim + j) * self.dim + k]
    }

    #[inline]
    pub fn at4(&self, i: usize, j: usize, k: usize, l: usize) -> T {
        self.data[((i * self.dim + j) * self.dim + k) * self.dim + l]
    }

    /// Value of a rank-0 tensor.
    pub fn value(&self) -> T {
        self.data[0]
    }

    pub fn require(&self, dim: usize, rank: usize) -> Result<()> {
        if self.rank != rank {
            return Err(GeometryError::RankMismatch {
                expected: rank,
                found: self.rank,
            });
        }
        if self.rank > 0 && self.dim != dim {
            return Err(GeometryError::DimensionMismatch {
                expected: dim,
                found: self.dim,
            });
        }
        Ok(())
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Self {
            dim: self.dim,
            rank: self.rank,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn zip_map(&self, other: &Self, f: impl Fn(T, T) -> T) -> Self {
        assert_eq!((self.dim, self.rank), (other.dim, other.rank), "tensor shapes differ");
        Self {
            dim: self.dim,
            rank: self.rank,
            data: self.data.iter().zip(&other.data).map(|(&x, &y)| f(x, y)).collect(),
        }
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|x| x * s)
    }

    /// Tensor product `self (x) other`.
    pub fn outer(&self, other: &Self) -> Self {
        assert!(self.rank == 0 || other.rank == 0 || self.dim == other.dim);
        let dim = self.dim.max(other.dim);
        let data = self
            .data
            .iter()
            .flat_map(|&x| other.data.iter().map(move |&y| x * y))
            .collect();
        Self {
            dim,
            rank: self.rank + other.rank,
            data,
        }
    }

    pub fn max_abs(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, &x| if x.abs() > acc { x.abs() } else { acc })
    }

    /// Frobenius inner product of two tensors of the same shape.
    pub fn dot(&self, other: &Self) -> T {
        self.data.iter().zip(&other.data).map(|(&x, &y)| x * y).sum()
    }

    pub fn transpose(&self) -> Self {
        assert_eq!(self.rank, 2);
        Self::from_fn(self.dim, 2, |ix| self.at2(ix[1], ix[0]))
    }

    /// Max |T_ij - T_ji| of a rank-2 tensor.
    pub fn max_asymmetry(&self) -> T {
        assert_eq!(self.rank, 2);
        let n = self.dim;
        let mut worst = T::zero();
        for i in 0..n {
            for j in (i + 1)..n {
                worst = worst.max((self.at2(i, j) - self.at2(j, i)).abs());
            }
        }
        worst
    }

    pub fn symmetrized(&self) -> Self {
        Self::from_fn(self.dim, 2, |ix| {
            (self.at2(ix[0], ix[1]) + self.at2(ix[1], ix[0])) / T::lit(2.0)
        })
    }

    /// Matrix product of two rank-2 tensors.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!((self.rank, other.rank), (2, 2));
        let n = self.dim;
        Self::from_fn(n, 2, |ix| {
            (0..n).map(|k| self.at2(ix[0], k) * other.at2(k, ix[1])).sum()
        })
    }

    /// Endomorphism applied to a vector: `(A v)^k = A[k, j] v^j`.
    pub fn apply(&self, v: &Self) -> Self {
        assert_eq!((self.rank, v.rank), (2, 1));
        let n = self.dim;
        Self::from_fn(n, 1, |ix| (0..n).map(|j| self.at2(ix[0], j) * v.data[j]).sum())
    }

    /// Bilinear form evaluated on two vectors.
    pub fn form(&self, x: &Self, y: &Self) -> T {
        assert_eq!((self.rank, x.rank, y.rank), (2, 1, 1));
        let n = self.dim;
        let mut acc = T::zero();
        for i in 0..n {
            for j in 0..n {
                acc = acc + x.data[i] * self.at2(i, j) * y.data[j];
            }
        }
        acc
    }
}

impl<T: Scalar> Add for &Tensor<T> {
    type Output = Tensor<T>;
    fn add(self, rhs: Self) -> Tensor<T> {
        self.zip_map(rhs, |a, b| a + b)
    }
}

impl<T: Scalar> Sub for &Tensor<T> {
    type Output = Tensor<T>;
    fn sub(self, rhs: Self) -> Tensor<T> {
        self.zip_map(rhs, |a, b| a - b)
    }
}

impl<T: Scalar> Neg for &Tensor<T> {
    type Output = Tensor<T>;
    fn neg(self) -> Tensor<T> {
        self.map(|a| -a)
    }
}

impl<T: Scalar> Mul<T> for &Tensor<T> {
    type Output = Tensor<T>;
    fn mul(self, rhs: T) -> Tensor<T> {
        self.scale(rhs)
    }
}

/// A symmetric non-degenerate bilinear form and its inverse `g^{ij}`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricPair<T> {
    g: Tensor<T>,
    g_inv: Tensor<T>,
    det: T,
}

impl<T: Scalar> MetricPair<T> {
    pub fn g(&self) -> &Tensor<T> {
        &self.g
    }

    pub fn inv(&self) -> &Tensor<T> {
        &self.g_inv
    }

    pub fn det(&self) -> T {
        self.det
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    /// Lowers the index of a vector: `(v^flat)_j = g_jk v^k`.
    pub fn lower(&self, v: &Tensor<T>) -> Tensor<T> {
        self.g.apply(v)
    }

    /// Raises the index of a covector.
    pub fn raise(&self, w: &Tensor<T>) -> Tensor<T> {
        self.g_inv.apply(w)
    }
}

/// Inverts a constant-coefficient metric.
pub fn invert_metric<T: Scalar>(g: &Tensor<T>) -> Result<MetricPair<T>> {
    if g.rank() != 2 {
        return Err(GeometryError::RankMismatch {
            expected: 2,
            found: g.rank(),
        });
    }
    let asymmetry = g.max_asymmetry();
    if asymmetry > T::linalg_tol() {
        return Err(GeometryError::NotSymmetric {
            asymmetry: asymmetry.as_f64(),
        });
    }
    let n = g.dim();
    let (inv, det) = linalg::invert(g.as_slice(), n, T::linalg_tol())
        .map_err(|det| GeometryError::DegenerateMetric { det: det.as_f64() })?;
    if !(det.abs() > T::linalg_tol()) {
        return Err(GeometryError::DegenerateMetric { det: det.as_f64() });
    }
    let g_inv = Tensor::from_vec(n, 2, inv)?.symmetrized();
    Ok(MetricPair {
        g: g.clone(),
        g_inv,
        det,
    })
}

/// `g^{ij} T_ij`.
pub fn trace_g<T: Scalar>(t: &Tensor<T>, m: &MetricPair<T>) -> Result<T> {
    let n = m.dim();
    t.require(n, 2)?;
    let gi = m.inv();
    let mut acc = T::zero();
    for i in 0..n {
        for j in 0..n {
            acc = acc + gi.at2(i, j) * t.at2(i, j);
        }
    }
    Ok(acc)
}

/// `g^{ij} T(e_i, phi e_j) = g^{ij} T_ik phi^k_j`.
pub fn phi_trace<T: Scalar>(t: &Tensor<T>, m: &MetricPair<T>, phi: &Tensor<T>) -> Result<T> {
    let n = m.dim();
    t.require(n, 2)?;
    phi.require(n, 2)?;
    trace_g(&t.matmul(phi), m)
}

pub fn max_abs<T: Scalar>(t: &Tensor<T>) -> T {
    t.max_abs()
}

//! Cyclic Jacobi eigensolver for small dense symmetric and Hermitian matrices.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// Relative off-diagonal tolerance at which the sweeps stop.
pub const JACOBI_TOL: f64 = 1e-13;
/// Maximum number of full sweeps.
pub const JACOBI_MAX_SWEEPS: usize = 30;

/// Scalar field the solver runs over: `f64` or `Complex64`.
pub trait Scalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero() -> Self;
    fn from_re(x: f64) -> Self;
    fn re(self) -> f64;
    fn conj(self) -> Self;
    fn norm_sqr(self) -> f64;
    fn scale(self, s: f64) -> Self;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn from_re(x: f64) -> Self {
        x
    }
    fn re(self) -> f64 {
        self
    }
    fn conj(self) -> Self {
        self
    }
    fn norm_sqr(self) -> f64 {
        self * self
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn from_re(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn re(self) -> f64 {
        self.re
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn norm_sqr(self) -> f64 {
        Complex64::norm_sqr(&self)
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
}

/// Square matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<T> {
    pub n: usize,
    pub data: Vec<T>,
}

impl<T: Scalar> SquareMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        SquareMatrix { n, data: vec![T::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = T::from_re(1.0);
        }
        m
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                for j in 0..n {
                    out[(i, j)] = out[(i, j)] + a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }
}

impl<T> std::ops::Index<(usize, usize)> for SquareMatrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for SquareMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

/// Eigenpairs of a Hermitian matrix. `vectors` holds eigenvectors as columns,
/// in the same (unsorted) order as `values`.
#[derive(Debug, Clone)]
pub struct HermitianEigen<T> {
    pub values: Vec<f64>,
    pub vectors: SquareMatrix<T>,
    pub sweeps: usize,
}

/// Diagonalizes a Hermitian matrix by cyclic Jacobi rotations.
///
/// Only the Hermitian part of `a` is used. Stops once the off-diagonal
/// Frobenius mass drops below `JACOBI_TOL` times the full Frobenius norm, or
/// after `JACOBI_MAX_SWEEPS` sweeps.
pub fn jacobi_hermitian<T: Scalar>(a: &SquareMatrix<T>) -> HermitianEigen<T> {
    let n = a.n;
    let mut m = a.clone();
    for i in 0..n {
        m[(i, i)] = T::from_re(m[(i, i)].re());
        for j in (i + 1)..n {
            let h = (m[(i, j)] + m[(j, i)].conj()).scale(0.5);
            m[(i, j)] = h;
            m[(j, i)] = h.conj();
        }
    }
    let mut v = SquareMatrix::<T>::identity(n);

    let total: f64 = m.data.iter().map(|x| x.norm_sqr()).sum();
    let threshold = JACOBI_TOL * JACOBI_TOL * total;
    let mut sweeps = 0;
    while sweeps < JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].norm_sqr())
            .sum();
        if off <= threshold || off == 0.0 {
            break;
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    HermitianEigen { values: (0..n).map(|i| m[(i, i)].re()).collect(), vectors: v, sweeps }
}

/// One rotation zeroing entry `(p, q)`.
fn rotate<T: Scalar>(m: &mut SquareMatrix<T>, v: &mut SquareMatrix<T>, p: usize, q: usize) {
    let apq = m[(p, q)];
    let mag = apq.norm_sqr().sqrt();
    if mag == 0.0 {
        return;
    }
    // u = apq / |apq|; the diagonal phase change diag(1, conj(u)) makes the
    // pivot real, after which the classical real rotation applies.
    let u = apq.scale(1.0 / mag);
    let ubar = u.conj();
    let app = m[(p, p)].re();
    let aqq = m[(q, q)].re();
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let n = m.n;

    // columns: X <- X V with V[:,p] = c e_p - s ubar e_q, V[:,q] = s e_p + c ubar e_q
    for k in 0..n {
        let xp = m[(k, p)];
        let xq = m[(k, q)];
        m[(k, p)] = xp.scale(c) - (ubar * xq).scale(s);
        m[(k, q)] = xp.scale(s) + (ubar * xq).scale(c);
        let vp = v[(k, p)];
        let vq = v[(k, q)];
        v[(k, p)] = vp.scale(c) - (ubar * vq).scale(s);
        v[(k, q)] = vp.scale(s) + (ubar * vq).scale(c);
    }
    // rows: X <- V* X
    for k in 0..n {
        let xp = m[(p, k)];
        let xq = m[(q, k)];
        m[(p, k)] = xp.scale(c) - (u * xq).scale(s);
        m[(q, k)] = xp.scale(s) + (u * xq).scale(c);
    }
    m[(p, q)] = T::zero();
    m[(q, p)] = T::zero();
    m[(p, p)] = T::from_re(app - t * mag);
    m[(q, q)] = T::from_re(aqq + t * mag);
}

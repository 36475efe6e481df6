//! Supported Euclidean Jordan algebras and their orthonormal coordinate charts.
//!
//! An algebra is a direct sum of simple factors. Each factor owns a contiguous
//! block of chart coordinates. Charts are orthonormal for the trace inner
//! product:
//!
//! * `RealLine`: the number itself.
//! * `Spin(m)`: `√2·(x0, x̄)` for the natural pair `(x0, x̄) ∈ ℝ × ℝ^{m-1}`.
//! * `SymMatrix(k)`: upper triangle row by row, diagonal entries as is and
//!   off-diagonal entries times `√2`.
//! * `HermMatrix(k)`: upper triangle row by row, diagonal entries as is and
//!   each off-diagonal entry as `√2·Re`, `√2·Im`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::eigen::{jacobi_hermitian, Scalar, SquareMatrix};
use crate::error::{Error, Result};

const SQRT2: f64 = std::f64::consts::SQRT_2;
const FRAC_1_SQRT2: f64 = std::f64::consts::FRAC_1_SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Factor {
    RealLine,
    /// Jordan spin algebra on `ℝ × ℝ^{m-1}`, `m >= 2`.
    Spin(usize),
    /// Real symmetric `k × k` matrices.
    SymMatrix(usize),
    /// Complex Hermitian `k × k` matrices.
    HermMatrix(usize),
}

impl Factor {
    pub fn rank(self) -> usize {
        match self {
            Factor::RealLine => 1,
            Factor::Spin(_) => 2,
            Factor::SymMatrix(k) | Factor::HermMatrix(k) => k,
        }
    }

    pub fn dim(self) -> usize {
        match self {
            Factor::RealLine => 1,
            Factor::Spin(m) => m,
            Factor::SymMatrix(k) => k * (k + 1) / 2,
            Factor::HermMatrix(k) => k * k,
        }
    }

    fn validate(self) -> Result<Self> {
        match self {
            Factor::Spin(m) if m < 2 => Err(Error::Descriptor(format!("spin:{m}"))),
            Factor::SymMatrix(0) => Err(Error::Descriptor("sym:0".into())),
            Factor::HermMatrix(0) => Err(Error::Descriptor("herm:0".into())),
            f => Ok(f),
        }
    }

    pub(crate) fn unit(self, out: &mut [f64]) {
        out.iter_mut().for_each(|x| *x = 0.0);
        match self {
            Factor::RealLine => out[0] = 1.0,
            Factor::Spin(_) => out[0] = SQRT2,
            Factor::SymMatrix(k) | Factor::HermMatrix(k) => {
                let one = SquareMatrix::<f64>::identity(k);
                match self {
                    Factor::SymMatrix(_) => encode_sym(&one, out),
                    _ => encode_herm(&to_complex(&one), out),
                }
            }
        }
    }

    pub(crate) fn jordan_product(self, x: &[f64], y: &[f64], out: &mut [f64]) {
        match self {
            Factor::RealLine => out[0] = x[0] * y[0],
            Factor::Spin(_) => {
                // natural coordinates are chart / √2
                let (x0, xb) = (x[0] * FRAC_1_SQRT2, &x[1..]);
                let (y0, yb) = (y[0] * FRAC_1_SQRT2, &y[1..]);
                let dot: f64 = xb.iter().zip(yb).map(|(a, b)| a * b).sum::<f64>() * 0.5;
                out[0] = (x0 * y0 + dot) * SQRT2;
                for i in 1..x.len() {
                    out[i] = x0 * yb[i - 1] + y0 * xb[i - 1];
                }
            }
            Factor::SymMatrix(k) => {
                let a = decode_sym(x, k);
                let b = decode_sym(y, k);
                encode_sym(&symmetrized_product(&a, &b), out);
            }
            Factor::HermMatrix(k) => {
                let a = decode_herm(x, k);
                let b = decode_herm(y, k);
                encode_herm(&symmetrized_product(&a, &b), out);
            }
        }
    }

    /// Eigenvalues (unsorted) and chart coordinates of a matching Jordan frame.
    pub(crate) fn spectral(self, x: &[f64]) -> Vec<(f64, Vec<f64>)> {
        match self {
            Factor::RealLine => vec![(x[0], vec![1.0])],
            Factor::Spin(m) => {
                let x0 = x[0] * FRAC_1_SQRT2;
                let xb: Vec<f64> = x[1..].iter().map(|v| v * FRAC_1_SQRT2).collect();
                let nrm = xb.iter().map(|v| v * v).sum::<f64>().sqrt();
                let dir: Vec<f64> = if nrm > 0.0 {
                    xb.iter().map(|v| v / nrm).collect()
                } else {
                    let mut u = vec![0.0; m - 1];
                    u[0] = 1.0;
                    u
                };
                // idempotent ½(1, ±u) in natural coordinates
                let idem = |sign: f64| -> Vec<f64> {
                    let mut c = Vec::with_capacity(m);
                    c.push(0.5 * SQRT2);
                    c.extend(dir.iter().map(|u| sign * 0.5 * u * SQRT2));
                    c
                };
                vec![(x0 + nrm, idem(1.0)), (x0 - nrm, idem(-1.0))]
            }
            Factor::SymMatrix(k) => {
                let eig = jacobi_hermitian(&decode_sym(x, k));
                (0..k)
                    .map(|i| {
                        let mut c = vec![0.0; self.dim()];
                        encode_sym(&rank_one(&eig.vectors, i), &mut c);
                        (eig.values[i], c)
                    })
                    .collect()
            }
            Factor::HermMatrix(k) => {
                let eig = jacobi_hermitian(&decode_herm(x, k));
                (0..k)
                    .map(|i| {
                        let mut c = vec![0.0; self.dim()];
                        encode_herm(&rank_one(&eig.vectors, i), &mut c);
                        (eig.values[i], c)
                    })
                    .collect()
            }
        }
    }
}

fn to_complex(m: &SquareMatrix<f64>) -> SquareMatrix<Complex64> {
    SquareMatrix { n: m.n, data: m.data.iter().map(|&x| Complex64::new(x, 0.0)).collect() }
}

fn symmetrized_product<T: Scalar>(a: &SquareMatrix<T>, b: &SquareMatrix<T>) -> SquareMatrix<T> {
    let ab = a.matmul(b);
    let ba = b.matmul(a);
    SquareMatrix {
        n: a.n,
        data: ab.data.iter().zip(&ba.data).map(|(x, y)| (*x + *y).scale(0.5)).collect(),
    }
}

/// `q q*` for column `col` of `vectors`.
fn rank_one<T: Scalar>(vectors: &SquareMatrix<T>, col: usize) -> SquareMatrix<T> {
    let n = vectors.n;
    let mut out = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = vectors[(i, col)] * vectors[(j, col)].conj();
        }
    }
    out
}

/// Dense symmetric matrix of a `SymMatrix(k)` block.
pub fn decode_sym(x: &[f64], k: usize) -> SquareMatrix<f64> {
    let mut m = SquareMatrix::zeros(k);
    let mut idx = 0;
    for i in 0..k {
        m[(i, i)] = x[idx];
        idx += 1;
        for j in (i + 1)..k {
            let v = x[idx] * FRAC_1_SQRT2;
            m[(i, j)] = v;
            m[(j, i)] = v;
            idx += 1;
        }
    }
    m
}

/// Chart coordinates of the symmetric part of `m`.
pub fn encode_sym(m: &SquareMatrix<f64>, out: &mut [f64]) {
    let k = m.n;
    let mut idx = 0;
    for i in 0..k {
        out[idx] = m[(i, i)];
        idx += 1;
        for j in (i + 1)..k {
            out[idx] = (m[(i, j)] + m[(j, i)]) * 0.5 * SQRT2;
            idx += 1;
        }
    }
}

/// Dense Hermitian matrix of a `HermMatrix(k)` block.
pub fn decode_herm(x: &[f64], k: usize) -> SquareMatrix<Complex64> {
    let mut m = SquareMatrix::zeros(k);
    let mut idx = 0;
    for i in 0..k {
        m[(i, i)] = Complex64::new(x[idx], 0.0);
        idx += 1;
        for j in (i + 1)..k {
            let v = Complex64::new(x[idx], x[idx + 1]) * FRAC_1_SQRT2;
            m[(i, j)] = v;
            m[(j, i)] = v.conj();
            idx += 2;
        }
    }
    m
}

/// Chart coordinates of the Hermitian part of `m`.
pub fn encode_herm(m: &SquareMatrix<Complex64>, out: &mut [f64]) {
    let k = m.n;
    let mut idx = 0;
    for i in 0..k {
        out[idx] = m[(i, i)].re;
        idx += 1;
        for j in (i + 1)..k {
            let v = (m[(i, j)] + m[(j, i)].conj()) * (0.5 * SQRT2);
            out[idx] = v.re;
            out[idx + 1] = v.im;
            idx += 2;
        }
    }
}

/// A direct sum of simple factors with its chart layout.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Algebra {
    factors: Vec<Factor>,
    offsets: Vec<usize>,
    dim: usize,
    rank: usize,
}

impl Algebra {
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Descriptor("empty factor list".into()));
        }
        let factors = factors.into_iter().map(Factor::validate).collect::<Result<Vec<_>>>()?;
        let mut offsets = Vec::with_capacity(factors.len());
        let mut dim = 0;
        for f in &factors {
            offsets.push(dim);
            dim += f.dim();
        }
        let rank = factors.iter().map(|f| f.rank()).sum();
        Ok(Algebra { factors, offsets, dim, rank })
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Rank `n` (number of eigenvalues).
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Chart dimension `d`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Iterates over `(factor, coordinate range)`.
    pub fn blocks(&self) -> impl Iterator<Item = (Factor, std::ops::Range<usize>)> + '_ {
        self.factors.iter().zip(&self.offsets).map(|(&f, &o)| (f, o..o + f.dim()))
    }

    /// The single `SymMatrix(k)` size if the algebra is exactly one such factor.
    pub fn single_sym(&self) -> Option<usize> {
        match self.factors.as_slice() {
            [Factor::SymMatrix(k)] => Some(*k),
            _ => None,
        }
    }

    pub fn unit_coords(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for (f, r) in self.blocks() {
            f.unit(&mut out[r]);
        }
        out
    }

    pub fn jordan_product_coords(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for (f, r) in self.blocks() {
            f.jordan_product(&x[r.clone()], &y[r.clone()], &mut out[r]);
        }
        out
    }

    /// Eigenvalues sorted decreasing (stable) with full-length frame coordinates.
    pub fn spectral_coords(&self, x: &[f64]) -> (Vec<f64>, Vec<Vec<f64>>) {
        let mut pairs: Vec<(f64, Vec<f64>)> = Vec::with_capacity(self.rank);
        for (f, r) in self.blocks() {
            for (val, block) in f.spectral(&x[r.clone()]) {
                let mut c = vec![0.0; self.dim];
                c[r.clone()].copy_from_slice(&block);
                pairs.push((val, c));
            }
        }
        pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
        pairs.into_iter().unzip()
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.factors.len() {
            match self.factors[i] {
                Factor::RealLine => {
                    let mut run = 0;
                    while i < self.factors.len() && self.factors[i] == Factor::RealLine {
                        run += 1;
                        i += 1;
                    }
                    parts.push(format!("rn:{run}"));
                    continue;
                }
                Factor::Spin(m) => parts.push(format!("spin:{m}")),
                Factor::SymMatrix(k) => parts.push(format!("sym:{k}")),
                Factor::HermMatrix(k) => parts.push(format!("herm:{k}")),
            }
            i += 1;
        }
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({self})")
    }
}

impl FromStr for Algebra {
    type Err = Error;

    /// Parses descriptors such as `rn:5`, `spin:4`, `sym:2,spin:3`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Descriptor(s.to_string());
        let mut factors = Vec::new();
        for part in s.split(',') {
            let (kind, size) = part.trim().split_once(':').ok_or_else(bad)?;
            let size: usize = size.trim().parse().map_err(|_| bad())?;
            match kind.trim() {
                "rn" => {
                    if size == 0 {
                        return Err(bad());
                    }
                    factors.extend(std::iter::repeat_n(Factor::RealLine, size));
                }
                "spin" => factors.push(Factor::Spin(size)),
                "sym" => factors.push(Factor::SymMatrix(size)),
                "herm" => factors.push(Factor::HermMatrix(size)),
                _ => return Err(bad()),
            }
        }
        Algebra::new(factors).map_err(|_| bad())
    }
}

impl Serialize for Algebra {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Algebra {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

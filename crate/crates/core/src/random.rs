//! Seeded generators for elements and Jordan frames.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::{encode_herm, encode_sym, Algebra, Factor};
use crate::eigen::SquareMatrix;
use crate::element::Element;
use crate::error::{Error, Result};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Counter-based child seed (splitmix64 finalizer over `base ⊕ counter`).
pub fn derive_seed(base: u64, counter: u64) -> u64 {
    let mut z = base ^ counter.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq)]
pub enum ElementStyle {
    /// Chart coordinates i.i.d. standard normal.
    GaussianCoords,
    /// `Σ λᵢ eᵢ` over a random Jordan frame.
    PrescribedSpectrum(Vec<f64>),
}

pub fn gaussian(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn random_element(alg: &Arc<Algebra>, seed: u64, style: &ElementStyle) -> Result<Element> {
    let mut r = rng(seed);
    random_element_with(alg, &mut r, style)
}

pub fn random_element_with(
    alg: &Arc<Algebra>,
    rng: &mut impl Rng,
    style: &ElementStyle,
) -> Result<Element> {
    match style {
        ElementStyle::GaussianCoords => {
            let coords = (0..alg.dim()).map(|_| gaussian(rng)).collect();
            Element::new(alg.clone(), coords)
        }
        ElementStyle::PrescribedSpectrum(values) => {
            if values.len() != alg.rank() {
                return Err(Error::SpectrumLength { expected: alg.rank(), got: values.len() });
            }
            let frame = random_frame(alg, rng);
            Element::from_spectrum(&frame, values)
        }
    }
}

/// A random Jordan frame, listed factor by factor.
pub fn random_frame(alg: &Arc<Algebra>, rng: &mut impl Rng) -> Vec<Element> {
    let mut frame = Vec::with_capacity(alg.rank());
    for (factor, range) in alg.blocks() {
        let blocks: Vec<Vec<f64>> = match factor {
            Factor::RealLine => vec![vec![1.0]],
            Factor::Spin(m) => {
                let u = unit_vector(m - 1, rng);
                let h = 0.5 * std::f64::consts::SQRT_2;
                [1.0, -1.0]
                    .iter()
                    .map(|s| std::iter::once(h).chain(u.iter().map(|x| s * h * x)).collect())
                    .collect()
            }
            Factor::SymMatrix(k) => {
                let q = random_orthonormal(k, rng, |r| gaussian(r));
                (0..k)
                    .map(|i| {
                        let mut c = vec![0.0; factor.dim()];
                        encode_sym(&outer(&q, i), &mut c);
                        c
                    })
                    .collect()
            }
            Factor::HermMatrix(k) => {
                let q = random_orthonormal(k, rng, |r| Complex64::new(gaussian(r), gaussian(r)));
                (0..k)
                    .map(|i| {
                        let mut c = vec![0.0; factor.dim()];
                        encode_herm(&outer(&q, i), &mut c);
                        c
                    })
                    .collect()
            }
        };
        for b in blocks {
            let mut c = vec![0.0; alg.dim()];
            c[range.clone()].copy_from_slice(&b);
            frame.push(Element::new(alg.clone(), c).expect("frame coordinates match dimension"));
        }
    }
    frame
}

fn unit_vector(n: usize, rng: &mut impl Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| gaussian(rng)).collect();
        let nrm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if nrm > 1e-8 {
            return v.into_iter().map(|x| x / nrm).collect();
        }
    }
}


/// Columns of a Haar-like random orthogonal/unitary matrix (modified Gram–Schmidt).
fn random_orthonormal<T: crate::eigen::Scalar, R: Rng>(
    k: usize,
    rng: &mut R,
    mut draw: impl FnMut(&mut R) -> T,
) -> Vec<Vec<T>> {
    let mut cols: Vec<Vec<T>> = Vec::with_capacity(k);
    while cols.len() < k {
        let mut v: Vec<T> = (0..k).map(|_| draw(rng)).collect();
        for q in &cols {
            // v -= <q, v> q with <q, v> = Σ conj(q) v
            let proj = q.iter().zip(&v).fold(T::zero(), |acc, (a, b)| acc + a.conj() * *b);
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi = *vi - proj * *qi;
            }
        }
        let nrm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if nrm > 1e-8 {
            cols.push(v.into_iter().map(|x| x.scale(1.0 / nrm)).collect());
        }
    }
    cols
}

fn outer<T: crate::eigen::Scalar>(cols: &[Vec<T>], i: usize) -> SquareMatrix<T> {
    let q = &cols[i];
    let k = q.len();
    let mut m = SquareMatrix::zeros(k);
    for r in 0..k {
        for c in 0..k {
            m[(r, c)] = q[r] * q[c].conj();
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::ExtExponent;

    fn alg(s: &str) -> Arc<Algebra> {
        Arc::new(s.parse().unwrap())
    }

    #[test]
    fn deterministic_given_seed() {
        let a = alg("herm:3");
        for style in [ElementStyle::GaussianCoords, ElementStyle::PrescribedSpectrum(vec![1.0, 2.0, 3.0])] {
            let x = random_element(&a, 42, &style).unwrap();
            let y = random_element(&a, 42, &style).unwrap();
            assert_eq!(x.coords(), y.coords());
        }
    }

    #[test]
    fn unit_spectrum_gives_unit() {
        for s in ["rn:3", "spin:4", "sym:3", "herm:3", "sym:2,spin:3"] {
            let a = alg(s);
            let x = random_element(&a, 5, &ElementStyle::PrescribedSpectrum(vec![1.0; a.rank()]))
                .unwrap();
            let e = Element::unit(a);
            assert!(x.sub(&e).unwrap().chart_norm() < 1e-10, "{s}");
        }
    }

    #[test]
    fn prescribed_spectrum_norm() {
        let a = alg("sym:3");
        let x = random_element(&a, 1, &ElementStyle::PrescribedSpectrum(vec![5.0, -2.0, 1.0]))
            .unwrap();
        assert!((x.p_norm(ExtExponent::ONE) - 8.0).abs() < 1e-12);
        let l = x.eigenvalues();
        assert!((l[0] - 5.0).abs() < 1e-12 && (l[1] - 1.0).abs() < 1e-12 && (l[2] + 2.0).abs() < 1e-12);
    }

    #[test]
    fn spectrum_length_is_checked() {
        let a = alg("sym:3");
        let err = random_element(&a, 1, &ElementStyle::PrescribedSpectrum(vec![1.0, 2.0]));
        assert_eq!(err.unwrap_err(), Error::SpectrumLength { expected: 3, got: 2 });
    }

    #[test]
    fn derived_seeds_differ() {
        let s: std::collections::HashSet<u64> = (0..1000).map(|i| derive_seed(7, i)).collect();
        assert_eq!(s.len(), 1000);
    }
}

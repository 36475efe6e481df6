//! Elements of an algebra and their spectral data.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exponent::ExtExponent;

/// A point of the algebra in chart coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Element {
    alg: Arc<Algebra>,
    coords: Vec<f64>,
}

/// Eigenvalues sorted decreasing and a Jordan frame with `a = Σ λᵢ eᵢ`.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub frame: Vec<Element>,
}

pub(crate) fn check_same(a: &Algebra, b: &Algebra) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DescriptorMismatch { left: a.to_string(), right: b.to_string() })
    }
}

pub(crate) fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

impl Element {
    pub fn new(alg: Arc<Algebra>, coords: Vec<f64>) -> Result<Self> {
        if coords.len() != alg.dim() {
            return Err(Error::Shape(format!(
                "{} coordinates for algebra {} of dimension {}",
                coords.len(),
                alg,
                alg.dim()
            )));
        }
        Ok(Element { alg, coords })
    }

    pub(crate) fn from_parts(alg: Arc<Algebra>, coords: Vec<f64>) -> Self {
        debug_assert_eq!(coords.len(), alg.dim());
        Element { alg, coords }
    }

    pub fn zero(alg: Arc<Algebra>) -> Self {
        let d = alg.dim();
        Element { alg, coords: vec![0.0; d] }
    }

    /// The unit element `e`.
    pub fn unit(alg: Arc<Algebra>) -> Self {
        let coords = alg.unit_coords();
        Element { alg, coords }
    }

    /// `Σ λᵢ eᵢ` over a frame.
    pub fn from_spectrum(frame: &[Element], values: &[f64]) -> Result<Self> {
        let first = frame.first().ok_or_else(|| Error::Domain("empty frame".into()))?;
        if frame.len() != values.len() {
            return Err(Error::SpectrumLength { expected: frame.len(), got: values.len() });
        }
        let mut coords = vec![0.0; first.coords.len()];
        for (e, &v) in frame.iter().zip(values) {
            check_same(&first.alg, &e.alg)?;
            for (c, x) in coords.iter_mut().zip(&e.coords) {
                *c += v * x;
            }
        }
        Ok(Element { alg: first.alg.clone(), coords })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn jordan_product(&self, other: &Element) -> Result<Element> {
        check_same(&self.alg, &other.alg)?;
        let coords = self.alg.jordan_product_coords(&self.coords, &other.coords);
        Ok(Element { alg: self.alg.clone(), coords })
    }

    /// Trace inner product; equal to the chart dot product.
    pub fn inner_product(&self, other: &Element) -> Result<f64> {
        check_same(&self.alg, &other.alg)?;
        Ok(dot(&self.coords, &other.coords))
    }

    pub fn trace(&self) -> f64 {
        dot(&self.coords, &self.alg.unit_coords())
    }

    pub fn spectral_decomposition(&self) -> SpectralDecomposition {
        let (eigenvalues, frame) = self.alg.spectral_coords(&self.coords);
        SpectralDecomposition {
            eigenvalues,
            frame: frame.into_iter().map(|c| Element::from_parts(self.alg.clone(), c)).collect(),
        }
    }

    /// `λ(a)`, sorted decreasing.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.spectral_decomposition().eigenvalues
    }

    /// Spectral p-norm `||λ(a)||_p`.
    pub fn p_norm(&self, p: ExtExponent) -> f64 {
        p.vec_norm(&self.eigenvalues())
    }

    /// `|a|^γ = Σ |λᵢ|^γ eᵢ`.
    pub fn abs_power(&self, gamma: f64) -> Result<Element> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::Domain(format!("abs_power exponent {gamma} must be > 0")));
        }
        let sd = self.spectral_decomposition();
        let vals: Vec<f64> = sd
            .eigenvalues
            .iter()
            .map(|v| if *v == 0.0 { 0.0 } else { v.abs().powf(gamma) })
            .collect();
        Element::from_spectrum(&sd.frame, &vals)
    }

    pub fn abs(&self) -> Element {
        self.abs_power(1.0).expect("gamma = 1 is valid")
    }

    /// `true` iff every eigenvalue exceeds `tol` in magnitude.
    pub fn is_invertible(&self, tol: f64) -> bool {
        self.eigenvalues().iter().all(|v| v.abs() > tol)
    }

    pub fn scale(&self, s: f64) -> Element {
        Element { alg: self.alg.clone(), coords: self.coords.iter().map(|x| x * s).collect() }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        check_same(&self.alg, &other.alg)?;
        Ok(Element {
            alg: self.alg.clone(),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.scale(-1.0))
    }

    /// Euclidean norm of the coordinates, equal to `||a||_2`.
    pub fn chart_norm(&self) -> f64 {
        dot(&self.coords, &self.coords).sqrt()
    }
}

impl SpectralDecomposition {
    /// `Σ λᵢ eᵢ`.
    pub fn reconstruct(&self) -> Element {
        Element::from_spectrum(&self.frame, &self.eigenvalues).expect("frame is consistent")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::decode_sym;
    use crate::eigen::SquareMatrix;

    fn alg(s: &str) -> Arc<Algebra> {
        Arc::new(s.parse().unwrap())
    }

    fn lcg_coords(d: usize, seed: u64) -> Vec<f64> {
        let mut s = seed;
        (0..d)
            .map(|_| {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
            })
            .collect()
    }

    #[test]
    fn componentwise_product_on_real_line() {
        let a = alg("rn:2");
        let x = Element::new(a.clone(), vec![1.0, 2.0]).unwrap();
        let y = Element::new(a, vec![3.0, 4.0]).unwrap();
        assert_eq!(x.jordan_product(&y).unwrap().coords(), &[3.0, 8.0]);
    }

    #[test]
    fn unit_law_and_trace() {
        for s in ["rn:3", "spin:4", "sym:3", "herm:3", "sym:2,spin:3"] {
            let a = alg(s);
            let e = Element::unit(a.clone());
            let x = Element::new(a.clone(), lcg_coords(a.dim(), 3)).unwrap();
            let ex = e.jordan_product(&x).unwrap();
            for (u, v) in ex.coords().iter().zip(x.coords()) {
                assert!((u - v).abs() < 1e-14, "{s}");
            }
            assert!((e.inner_product(&e).unwrap() - a.rank() as f64).abs() < 1e-14);
            assert!((e.trace() - a.rank() as f64).abs() < 1e-14);
        }
    }

    #[test]
    fn spin_example_eigenvalues() {
        // natural (1, (3, 4)) has eigenvalues 1 ± 5
        let a = alg("spin:3");
        let s2 = std::f64::consts::SQRT_2;
        let x = Element::new(a.clone(), vec![s2, 3.0 * s2, 4.0 * s2]).unwrap();
        let sd = x.spectral_decomposition();
        assert!((sd.eigenvalues[0] - 6.0).abs() < 1e-14);
        assert!((sd.eigenvalues[1] + 4.0).abs() < 1e-14);
        // a² − 2x₀a + (x₀² − |x̄|²)e = 0
        let e = Element::unit(a);
        let sq = x.jordan_product(&x).unwrap();
        let lhs = sq.sub(&x.scale(2.0)).unwrap().add(&e.scale(1.0 - 25.0)).unwrap();
        assert!(lhs.chart_norm() < 1e-13);
        assert!(sd.reconstruct().sub(&x).unwrap().chart_norm() < 1e-13);
    }

    #[test]
    fn spin_zero_vector_part_uses_canonical_frame() {
        let a = alg("spin:3");
        let x = Element::new(a, vec![2.0, 0.0, 0.0]).unwrap();
        let sd = x.spectral_decomposition();
        let h = 0.5 * std::f64::consts::SQRT_2;
        assert_eq!(sd.frame[0].coords(), &[h, h, 0.0]);
        assert_eq!(sd.frame[1].coords(), &[h, -h, 0.0]);
    }

    #[test]
    fn sym_square_matches_dense_square() {
        let a = alg("sym:2");
        let x = Element::new(a, vec![1.5, -0.7, 2.0]).unwrap();
        let sq = x.jordan_product(&x).unwrap();
        let m = decode_sym(x.coords(), 2);
        let m2: SquareMatrix<f64> = m.matmul(&m);
        let got = decode_sym(sq.coords(), 2);
        for (u, v) in got.data.iter().zip(&m2.data) {
            assert!((u - v).abs() < 1e-14);
        }
    }

    #[test]
    fn abs_power_rejects_nonpositive_gamma() {
        let x = Element::unit(alg("sym:2"));
        assert!(matches!(x.abs_power(0.0), Err(Error::Domain(_))));
        assert!(matches!(x.abs_power(-1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn abs_power_of_unit_is_unit() {
        let e = Element::unit(alg("herm:3"));
        let y = e.abs_power(7.0).unwrap();
        assert!(y.sub(&e).unwrap().chart_norm() < 1e-13);
    }

    #[test]
    fn idempotent_is_not_invertible() {
        let a = alg("sym:3");
        let x = Element::new(a.clone(), lcg_coords(a.dim(), 9)).unwrap();
        let e1 = x.spectral_decomposition().frame[0].clone();
        assert!(!e1.is_invertible(1e-8));
        assert!(Element::unit(a).is_invertible(1e-8));
    }

    #[test]
    fn mismatch_is_reported() {
        let x = Element::unit(alg("sym:2"));
        let y = Element::unit(alg("spin:3"));
        assert!(matches!(x.jordan_product(&y), Err(Error::DescriptorMismatch { .. })));
        assert!(x.inner_product(&y).is_err());
    }

    #[test]
    fn unit_norms() {
        let e = Element::unit(alg("sym:2,spin:3"));
        let n = 4.0f64;
        assert!((e.p_norm(ExtExponent::INF) - 1.0).abs() < 1e-15);
        assert!((e.p_norm(ExtExponent::finite(3.0).unwrap()) - n.cbrt()).abs() < 1e-14);
        assert!((e.p_norm(ExtExponent::ONE) - n).abs() < 1e-14);
    }
}

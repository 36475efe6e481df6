//! The complexification `V + iV` with the norm `||a + ib||_p = ||a||_p + ||b||_p`.

use num_complex::Complex64;

use crate::element::Element;
use crate::error::Result;
use crate::exponent::ExtExponent;
use crate::linmap::{op_norm_estimate, EstimatorConfig, LinearMap};

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexElement {
    pub re: Element,
    pub im: Element,
}

impl ComplexElement {
    pub fn new(re: Element, im: Element) -> Result<Self> {
        crate::element::check_same(re.algebra(), im.algebra())?;
        Ok(ComplexElement { re, im })
    }

    pub fn from_real(re: Element) -> Self {
        let im = Element::zero(re.algebra().clone());
        ComplexElement { re, im }
    }

    /// `Σ cⱼ xⱼ` with complex coefficients over real elements.
    pub fn combination(coeffs: &[Complex64], elems: &[Element]) -> Result<Self> {
        let re: Vec<f64> = coeffs.iter().map(|c| c.re).collect();
        let im: Vec<f64> = coeffs.iter().map(|c| c.im).collect();
        Ok(ComplexElement {
            re: Element::from_spectrum(elems, &re)?,
            im: Element::from_spectrum(elems, &im)?,
        })
    }

    pub fn conj(&self) -> Self {
        ComplexElement { re: self.re.clone(), im: self.im.scale(-1.0) }
    }

    pub fn norm(&self, p: ExtExponent) -> f64 {
        self.re.p_norm(p) + self.im.p_norm(p)
    }

    /// `⟨a+ib, c+id⟩ = [⟨a,c⟩ + ⟨b,d⟩] + i[⟨b,c⟩ − ⟨a,d⟩]`, linear in the
    /// first slot and conjugate-linear in the second.
    pub fn inner_product(&self, other: &ComplexElement) -> Result<Complex64> {
        let ac = self.re.inner_product(&other.re)?;
        let bd = self.im.inner_product(&other.im)?;
        let bc = self.im.inner_product(&other.re)?;
        let ad = self.re.inner_product(&other.im)?;
        Ok(Complex64::new(ac + bd, bc - ad))
    }

    /// The bilinear extension of the real inner product, `⟨x, conj(y)⟩`.
    pub fn bilinear(&self, other: &ComplexElement) -> Result<Complex64> {
        self.inner_product(&other.conj())
    }
}

/// `T̃(a + ib) = T(a) + iT(b)`.
#[derive(Debug, Clone)]
pub struct ComplexMap {
    map: LinearMap,
}

pub fn complexify(t: &LinearMap) -> ComplexMap {
    ComplexMap { map: t.clone() }
}

impl ComplexMap {
    pub fn real_part(&self) -> &LinearMap {
        &self.map
    }

    pub fn apply(&self, x: &ComplexElement) -> Result<ComplexElement> {
        Ok(ComplexElement { re: self.map.apply(&x.re)?, im: self.map.apply(&x.im)? })
    }

    /// `||T̃x||_s / ||x||_r`.
    pub fn ratio(&self, x: &ComplexElement, r: ExtExponent, s: ExtExponent) -> Result<f64> {
        Ok(self.apply(x)?.norm(s) / x.norm(r))
    }
}

/// Largest `||T̃x||_s / ||x||_r` over `x = w + icw` and `x = w + iv` for the
/// real estimator witness `w`, a few multiples `c` and real samples `v`.
/// Equals the real estimate when the complexification adds nothing.
pub fn complex_norm_estimate(
    t: &LinearMap,
    r: ExtExponent,
    s: ExtExponent,
    samples: &[Element],
    cfg: &EstimatorConfig,
) -> Result<f64> {
    let est = op_norm_estimate(t, r, s, cfg);
    let tc = complexify(t);
    let w = est.witness_a;
    let mut best = f64::NEG_INFINITY;
    for c in [0.0, 0.5, 1.0, 2.0, -1.0] {
        best = best.max(tc.ratio(&ComplexElement::new(w.clone(), w.scale(c))?, r, s)?);
    }
    for v in samples {
        best = best.max(tc.ratio(&ComplexElement::new(w.clone(), v.clone())?, r, s)?);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_element, ElementStyle};
    use std::sync::Arc;

    #[test]
    fn real_inputs_are_extended() {
        let alg: Arc<crate::Algebra> = Arc::new("herm:2".parse().unwrap());
        let a = random_element(&alg, 1, &ElementStyle::GaussianCoords).unwrap();
        let t = LinearMap::from_action(alg.clone(), |x| x.jordan_product(&a).unwrap());
        let x = random_element(&alg, 2, &ElementStyle::GaussianCoords).unwrap();
        let y = complexify(&t).apply(&ComplexElement::from_real(x.clone())).unwrap();
        assert_eq!(y.re, t.apply(&x).unwrap());
        assert_eq!(y.im.chart_norm(), 0.0);
    }

    #[test]
    fn inner_product_conventions() {
        let alg: Arc<crate::Algebra> = Arc::new("spin:3".parse().unwrap());
        let el = |s| random_element(&alg, s, &ElementStyle::GaussianCoords).unwrap();
        let x = ComplexElement::new(el(1), el(2)).unwrap();
        let y = ComplexElement::new(el(3), el(4)).unwrap();
        let xy = x.inner_product(&y).unwrap();
        let yx = y.inner_product(&x).unwrap();
        assert!((xy - yx.conj()).norm() < 1e-12);
        let xx = x.inner_product(&x).unwrap();
        assert!(xx.im.abs() < 1e-12 && xx.re > 0.0);
        let i = Complex64::i();
        let ix = ComplexElement { re: x.im.scale(-1.0), im: x.re.clone() };
        assert!((ix.inner_product(&y).unwrap() - i * xy).norm() < 1e-12);
        assert!((x.bilinear(&y).unwrap() - y.bilinear(&x).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn complexification_keeps_the_norm() {
        let alg: Arc<crate::Algebra> = Arc::new("sym:3".parse().unwrap());
        let a = random_element(&alg, 3, &ElementStyle::GaussianCoords).unwrap();
        let t = crate::linmap::quadratic_rep(&a);
        let samples: Vec<Element> =
            (10..20).map(|s| random_element(&alg, s, &ElementStyle::GaussianCoords).unwrap()).collect();
        let (r, s) = (ExtExponent::TWO, ExtExponent::INF);
        let cfg = EstimatorConfig::default();
        let real = op_norm_estimate(&t, r, s, &cfg).lower_bound;
        let cplx = complex_norm_estimate(&t, r, s, &samples, &cfg).unwrap();
        assert!((real - cplx).abs() <= 1e-6 * real);
    }

    #[test]
    fn norm_is_sum() {
        let alg: Arc<crate::Algebra> = Arc::new("sym:3".parse().unwrap());
        let a = random_element(&alg, 7, &ElementStyle::GaussianCoords).unwrap();
        let b = random_element(&alg, 8, &ElementStyle::GaussianCoords).unwrap();
        let p: ExtExponent = "3".parse().unwrap();
        let x = ComplexElement::new(a.clone(), b.clone()).unwrap();
        assert_eq!(x.norm(p), a.p_norm(p) + b.p_norm(p));
    }
}

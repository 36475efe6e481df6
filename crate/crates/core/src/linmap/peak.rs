use crate::element::Element;
use crate::error::{Error, Result};
use crate::exponent::ExtExponent;

/// Eigenvalue magnitude below which an element counts as zero.
const ZERO_SPECTRUM: f64 = 1e-14;

/// The unit-`p`-norm element `d` maximizing `⟨c, d⟩`; the maximum is `||c||_q`
/// with `q` the conjugate of `p`. Built in `c`'s own Jordan frame.
pub fn peak(c: &Element, p: ExtExponent) -> Result<Element> {
    let sd = c.spectral_decomposition();
    let vals = &sd.eigenvalues;
    let top = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if top < ZERO_SPECTRUM {
        return Err(Error::DegenerateInput("peak of a zero element".into()));
    }
    let sign = |v: f64| if v < 0.0 { -1.0 } else { 1.0 };

    let weights: Vec<f64> = if p.is_inf() {
        vals.iter().map(|&v| sign(v)).collect()
    } else if p.is_one() {
        let k = vals.iter().position(|v| v.abs() == top).expect("max is attained");
        (0..vals.len()).map(|j| if j == k { sign(vals[k]) } else { 0.0 }).collect()
    } else {
        // dⱼ = sign(cⱼ)|cⱼ|^{q-1} / ||c||_q^{q-1}, computed relative to max|cⱼ|
        let q = p.conjugate();
        let qm1 = q.value() - 1.0;
        let scaled: Vec<f64> = vals.iter().map(|&v| sign(v) * (v.abs() / top).powf(qm1)).collect();
        let nrm = p.vec_norm(&scaled);
        scaled.into_iter().map(|w| w / nrm).collect()
    };
    Element::from_spectrum(&sd.frame, &weights)
}

/// `x / ||x||_p`.
pub fn normalize(x: &Element, p: ExtExponent) -> Result<Element> {
    let n = x.p_norm(p);
    if n == 0.0 || !n.is_finite() {
        return Err(Error::DegenerateInput("cannot normalize a zero element".into()));
    }
    Ok(x.scale(1.0 / n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_element, ElementStyle};
    use std::sync::Arc;

    fn alg(s: &str) -> Arc<crate::Algebra> {
        Arc::new(s.parse().unwrap())
    }

    #[test]
    fn peak_of_unit() {
        let a = alg("sym:3");
        let e = Element::unit(a);
        for p in ["1.5", "2", "3", "inf"] {
            let p: ExtExponent = p.parse().unwrap();
            let d = peak(&e, p).unwrap();
            let n = 3f64;
            assert!(d.sub(&e.scale(n.powf(-p.recip()))).unwrap().chart_norm() < 1e-12);
            let val = e.inner_product(&d).unwrap();
            assert!((val - n.powf(p.conj_recip())).abs() < 1e-12);
        }
    }

    #[test]
    fn peak_at_one_picks_top_idempotent() {
        let a = alg("sym:3");
        let c = random_element(&a, 3, &ElementStyle::PrescribedSpectrum(vec![5.0, -2.0, 1.0]))
            .unwrap();
        let d = peak(&c, ExtExponent::ONE).unwrap();
        assert!((c.inner_product(&d).unwrap() - 5.0).abs() < 1e-12);
        let sd = c.spectral_decomposition();
        assert!(d.sub(&sd.frame[0]).unwrap().chart_norm() < 1e-12);
    }

    #[test]
    fn peak_attains_dual_norm() {
        for s in ["spin:4", "herm:3", "sym:2,spin:3"] {
            let a = alg(s);
            for seed in 0..20 {
                let c = random_element(&a, seed, &ElementStyle::GaussianCoords).unwrap();
                for p in ["1", "4/3", "2", "3", "inf"] {
                    let p: ExtExponent = p.parse().unwrap();
                    let d = peak(&c, p).unwrap();
                    assert!((d.p_norm(p) - 1.0).abs() < 1e-12);
                    let got = c.inner_product(&d).unwrap();
                    let want = c.p_norm(p.conjugate());
                    assert!((got - want).abs() < 1e-10 * (1.0 + want), "{s} {p}");
                }
            }
        }
    }

    #[test]
    fn zero_is_rejected() {
        let z = Element::zero(alg("spin:3"));
        assert!(matches!(peak(&z, ExtExponent::TWO), Err(Error::DegenerateInput(_))));
        assert!(normalize(&z, ExtExponent::TWO).is_err());
    }
}

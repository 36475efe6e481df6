use std::sync::Arc;

use proptest::prelude::*;

use jspec_core::interpolation::{cp_constant, ExponentPair};
use jspec_core::linmap::peak;
use jspec_core::random::{random_element, ElementStyle};
use jspec_core::{Algebra, Element, ExtExponent};

const ALGEBRAS: [&str; 6] = ["rn:4", "spin:5", "sym:3", "herm:3", "sym:2,spin:3", "herm:2,rn:1"];

fn element(desc: usize, seed: u64) -> Element {
    let a: Arc<Algebra> = Arc::new(ALGEBRAS[desc].parse().unwrap());
    random_element(&a, seed, &ElementStyle::GaussianCoords).unwrap()
}

fn pair(desc: usize, seed: u64) -> (Element, Element) {
    (element(desc, seed), element(desc, seed.wrapping_add(0x9e37)))
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn von_neumann_trace_inequality(desc in 0..ALGEBRAS.len(), seed: u64) {
        let (a, b) = pair(desc, seed);
        let lhs = a.inner_product(&b).unwrap();
        let rhs = dot(&a.eigenvalues(), &b.eigenvalues());
        prop_assert!(lhs <= rhs + 1e-9 * (1.0 + rhs.abs()));
    }

    #[test]
    fn holder_and_attainment(desc in 0..ALGEBRAS.len(), seed: u64, rp in 0.0f64..=1.0) {
        let (a, b) = pair(desc, seed);
        let p = ExtExponent::from_recip(rp);
        let q = p.conjugate();
        let lhs = a.inner_product(&b).unwrap().abs();
        prop_assert!(lhs <= a.p_norm(p) * b.p_norm(q) * (1.0 + 1e-12) + 1e-12);
        let d = peak(&a, q).unwrap();
        prop_assert!((a.inner_product(&d).unwrap() - a.p_norm(p)).abs() <= 1e-9 * (1.0 + a.p_norm(p)));
    }

    #[test]
    fn norms_decrease_in_p(desc in 0..ALGEBRAS.len(), seed: u64, r1 in 0.0f64..=1.0, r2 in 0.0f64..=1.0) {
        let a = element(desc, seed);
        let (lo, hi) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
        // recip lo means the larger exponent
        prop_assert!(a.p_norm(ExtExponent::from_recip(lo)) <= a.p_norm(ExtExponent::from_recip(hi)) * (1.0 + 1e-12));
    }

    #[test]
    fn triangle_inequality(desc in 0..ALGEBRAS.len(), seed: u64, rp in 0.0f64..=1.0) {
        let (a, b) = pair(desc, seed);
        let p = ExtExponent::from_recip(rp);
        let s = a.add(&b).unwrap();
        prop_assert!(s.p_norm(p) <= (a.p_norm(p) + b.p_norm(p)) * (1.0 + 1e-12));
    }

    #[test]
    fn generalized_holder(desc in 0..ALGEBRAS.len(), seed: u64, x in 0.0f64..=1.0, y in 0.0f64..=1.0) {
        // 1/s = 1/p + 1/r with all three in [0, 1]
        let (rp, rr) = (x * 0.999, y * (1.0 - x * 0.999));
        let (p, r) = (ExtExponent::from_recip(rp), ExtExponent::from_recip(rr));
        let s = ExtExponent::from_recip(rp + rr);
        let (a, b) = pair(desc, seed);
        let lhs = a.jordan_product(&b).unwrap().p_norm(s);
        let rhs = 2.0 * cp_constant(p.conjugate()) * a.p_norm(p) * b.p_norm(r);
        prop_assert!(lhs <= rhs + 1e-9);
    }

    #[test]
    fn exponent_algebra(r0 in 0.0f64..=1.0, r1 in 0.0f64..=1.0, theta in 0.0f64..=1.0) {
        let (p0, p1) = (ExtExponent::from_recip(r0), ExtExponent::from_recip(r1));
        prop_assert_eq!(p0.conjugate().conjugate(), p0);
        let pt = ExtExponent::interpolate(p0, p1, theta);
        prop_assert!((0.0..=1.0).contains(&pt.recip()));
        let pair = ExponentPair::new(p0, p1, p1, p0, theta).unwrap();
        prop_assert!((0.0..=1.0).contains(&pair.s_theta().recip()));
    }

    #[test]
    fn spectral_reconstruction(desc in 0..ALGEBRAS.len(), seed: u64) {
        let a = element(desc, seed);
        let sd = a.spectral_decomposition();
        prop_assert!(sd.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(sd.reconstruct().sub(&a).unwrap().chart_norm() <= 1e-10 * (1.0 + a.chart_norm()));
        prop_assert!((sd.eigenvalues.iter().sum::<f64>() - a.trace()).abs() <= 1e-10 * (1.0 + a.chart_norm()));
    }
}

//! Numerical replay of the three-lines argument for a fixed pair `(a, b)`.
//!
//! With `α = 1/rθ`, `β = 1/sθ`, `α(z) = (1−z)/r0 + z/r1` and likewise `β(z)`,
//! the families `a_z = Σ |aⱼ|^{α(z)/α} εⱼ eⱼ` and
//! `b_z = Σ |bₖ|^{(1−β(z))/(1−β)} δₖ fₖ` reduce to `a`, `b` at `z = θ`.
//! `φ(z)` pairs `T̃(a_z)` with `b_z` bilinearly, so it is entire in `z`;
//! the sesquilinear pairing would conjugate `b_z` and lose analyticity.
//! Both pairings have the same modulus bound on the boundary lines.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{cp_constant, ComplexElement, ExponentPair};
use crate::element::{dot, Element};
use crate::error::{Error, Result};
use crate::exponent::ExtExponent;
use crate::linmap::{normalize, op_norm_estimate, EstimatorConfig, LinearMap};

/// Boundary lines are sampled on `|Im z| <= LINE_HALF_WIDTH`.
pub const LINE_HALF_WIDTH: f64 = 10.0;
const INVERTIBLE_TOL: f64 = 1e-8;
const LINE_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThreeLinesReport {
    pub theta: f64,
    /// `⟨T(a), b⟩` for the normalized inputs.
    pub pairing: f64,
    pub phi_theta: [f64; 2],
    pub phi_theta_error: f64,
    pub sup_line0: f64,
    pub sup_line1: f64,
    /// Endpoint estimates standing in for `M0`, `M1`; they are lower bounds,
    /// so the line checks below are only as good as the estimator.
    pub m0: f64,
    pub m1: f64,
    /// `C_{r0}C_{s0'}M0` and `C_{r1}C_{s1'}M1`.
    pub line0_bound: f64,
    pub line1_bound: f64,
    pub line_bounds_hold: bool,
    /// Largest `||a_z||_{r0} / C_{r0}` and `||b_z||_{s0'} / C_{s0'}` seen on
    /// line 0, and the line-1 counterparts.
    pub max_constraint_ratio: f64,
    /// `sup_line0^{1−θ} sup_line1^θ`.
    pub hadamard_bound: f64,
    pub hadamard_holds: bool,
}

struct Family {
    frame: Vec<Element>,
    signs: Vec<f64>,
    logs: Vec<f64>,
}

impl Family {
    fn new(x: &Element) -> Result<Self> {
        let sd = x.spectral_decomposition();
        if sd.eigenvalues.iter().any(|v| v.abs() <= INVERTIBLE_TOL) {
            return Err(Error::DegenerateInput("three-lines inputs must be invertible".into()));
        }
        Ok(Family {
            signs: sd.eigenvalues.iter().map(|v| v.signum()).collect(),
            logs: sd.eigenvalues.iter().map(|v| v.abs().ln()).collect(),
            frame: sd.frame,
        })
    }

    /// `Σ sⱼ exp(w ln|xⱼ|)`, principal branch.
    fn coeffs(&self, w: Complex64) -> Vec<Complex64> {
        self.signs.iter().zip(&self.logs).map(|(s, l)| (w * l).exp() * s).collect()
    }

    fn element(&self, w: Complex64) -> ComplexElement {
        ComplexElement::combination(&self.coeffs(w), &self.frame).expect("frame is consistent")
    }
}

/// Builds `a_z`, `b_z` and `φ` for normalized, invertible `a`, `b` and
/// samples `|φ|` on `grid` points of each boundary line.
pub fn three_lines_demo(
    t: &LinearMap,
    pair: &ExponentPair,
    a: &Element,
    b: &Element,
    grid: usize,
    cfg: &EstimatorConfig,
) -> Result<ThreeLinesReport> {
    let theta = pair.theta;
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::Domain(format!("theta {theta} must lie strictly inside (0, 1)")));
    }
    if grid < 2 {
        return Err(Error::Domain("need at least two grid points per line".into()));
    }
    let (rt, st) = (pair.r_theta(), pair.s_theta());
    let (alpha, beta) = (rt.recip(), st.recip());
    if !(alpha > 0.0 && alpha < 1.0 && beta > 0.0 && beta < 1.0) {
        return Err(Error::DegenerateInput(format!("interpolated exponents ({rt}, {st}) must lie in (1, ∞)")));
    }
    let a = normalize(a, rt)?;
    let b = normalize(b, st.conjugate())?;
    let fa = Family::new(&a)?;
    let fb = Family::new(&b)?;

    // G[j][k] = ⟨T eⱼ, fₖ⟩
    let te: Vec<Element> = fa.frame.iter().map(|e| t.apply(e)).collect::<Result<_>>()?;
    let g: Vec<Vec<f64>> = te.iter().map(|x| fb.frame.iter().map(|f| dot(x.coords(), f.coords())).collect()).collect();

    let alpha_z = |z: Complex64| (1.0 - z) * pair.r0.recip() + z * pair.r1.recip();
    let beta_z = |z: Complex64| (1.0 - z) * pair.s0.recip() + z * pair.s1.recip();
    let wa = |z: Complex64| alpha_z(z) / alpha;
    let wb = |z: Complex64| (1.0 - beta_z(z)) / (1.0 - beta);
    let phi = |z: Complex64| {
        let c = fa.coeffs(wa(z));
        let d = fb.coeffs(wb(z));
        let mut acc = Complex64::new(0.0, 0.0);
        for (cj, row) in c.iter().zip(&g) {
            for (dk, gjk) in d.iter().zip(row) {
                acc += cj * dk * gjk;
            }
        }
        acc
    };

    let pairing = dot(t.apply(&a)?.coords(), b.coords());
    let ph = phi(Complex64::new(theta, 0.0));
    let phi_theta_error = (ph - pairing).norm();

    let ys: Vec<f64> = (0..grid)
        .map(|k| -LINE_HALF_WIDTH + 2.0 * LINE_HALF_WIDTH * k as f64 / (grid - 1) as f64)
        .collect();
    let mut sups = [0.0f64; 2];
    let mut max_constraint_ratio = 0.0f64;
    let ends = [(pair.r0, pair.s0), (pair.r1, pair.s1)];
    for (line, &(r, s)) in ends.iter().enumerate() {
        for &y in &ys {
            let z = Complex64::new(line as f64, y);
            sups[line] = sups[line].max(phi(z).norm());
            let az = fa.element(wa(z)).norm(r) / cp_constant(r);
            let bz = fb.element(wb(z)).norm(s.conjugate()) / cp_constant(s.conjugate());
            max_constraint_ratio = max_constraint_ratio.max(az).max(bz);
        }
    }

    let m0 = op_norm_estimate(t, pair.r0, pair.s0, cfg).lower_bound;
    let m1 = op_norm_estimate(t, pair.r1, pair.s1, cfg).lower_bound;
    let line_bound = |r: ExtExponent, s: ExtExponent, m: f64| cp_constant(r) * cp_constant(s.conjugate()) * m;
    let line0_bound = line_bound(pair.r0, pair.s0, m0);
    let line1_bound = line_bound(pair.r1, pair.s1, m1);
    let hadamard_bound = sups[0].powf(1.0 - theta) * sups[1].powf(theta);

    Ok(ThreeLinesReport {
        theta,
        pairing,
        phi_theta: [ph.re, ph.im],
        phi_theta_error,
        sup_line0: sups[0],
        sup_line1: sups[1],
        m0,
        m1,
        line0_bound,
        line1_bound,
        line_bounds_hold: sups[0] <= line0_bound + LINE_SLACK && sups[1] <= line1_bound + LINE_SLACK,
        max_constraint_ratio,
        hadamard_bound,
        hadamard_holds: ph.norm() <= hadamard_bound + LINE_SLACK,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_element, ElementStyle};
    use std::sync::Arc;

    fn p(s: &str) -> ExtExponent {
        s.parse().unwrap()
    }

    #[test]
    fn uniform_spectrum_makes_phi_constant() {
        let alg: Arc<crate::Algebra> = Arc::new("rn:4".parse().unwrap());
        let t = LinearMap::identity(alg.clone());
        let e = Element::unit(alg);
        let pair = ExponentPair::new(p("2"), p("4"), p("2"), p("4"), 0.5).unwrap();
        let rep = three_lines_demo(&t, &pair, &e, &e, 41, &EstimatorConfig::default().with_restarts(4)).unwrap();
        assert!(rep.phi_theta_error < 1e-12);
        assert!((rep.sup_line0 - rep.pairing.abs()).abs() < 1e-12);
        assert!((rep.sup_line1 - rep.pairing.abs()).abs() < 1e-12);
        assert!(rep.hadamard_holds && rep.line_bounds_hold);
    }

    #[test]
    fn uniform_spectrum_modulus_is_constant_on_each_line() {
        // φ(z) = n^{β(z) − α(z)} for T = id, a = b = e
        let alg: Arc<crate::Algebra> = Arc::new("rn:4".parse().unwrap());
        let t = LinearMap::identity(alg.clone());
        let e = Element::unit(alg);
        let pair = ExponentPair::new(p("2"), p("4"), p("3"), p("3/2"), 0.5).unwrap();
        let rep = three_lines_demo(&t, &pair, &e, &e, 41, &EstimatorConfig::default().with_restarts(4)).unwrap();
        let n = 4f64;
        assert!((rep.sup_line0 - n.powf(1.0 / 3.0 - 0.5)).abs() < 1e-12);
        assert!((rep.sup_line1 - n.powf(2.0 / 3.0 - 0.25)).abs() < 1e-12);
        assert!((rep.pairing - n.powf(0.5 - 0.375)).abs() < 1e-12);
        assert!(rep.hadamard_holds);
    }

    #[test]
    fn phi_at_theta_is_the_pairing() {
        let alg: Arc<crate::Algebra> = Arc::new("sym:3".parse().unwrap());
        let m = nalgebra::DMatrix::from_fn(6, 6, |i, j| ((3 * i + 5 * j) % 7) as f64 - 3.0);
        let t = LinearMap::new(alg.clone(), m).unwrap();
        let a = random_element(&alg, 1, &ElementStyle::GaussianCoords).unwrap();
        let b = random_element(&alg, 2, &ElementStyle::GaussianCoords).unwrap();
        let pair = ExponentPair::new(p("inf"), p("4/3"), p("2"), p("inf"), 0.3).unwrap();
        let rep = three_lines_demo(&t, &pair, &a, &b, 101, &EstimatorConfig::default().with_restarts(16)).unwrap();
        assert!(rep.phi_theta_error < 1e-9);
        assert!(rep.hadamard_holds);
        assert!(rep.max_constraint_ratio <= 1.0 + 1e-12);
    }

    #[test]
    fn rejects_bad_inputs() {
        let alg: Arc<crate::Algebra> = Arc::new("sym:2".parse().unwrap());
        let t = LinearMap::identity(alg.clone());
        let e = Element::unit(alg.clone());
        let cfg = EstimatorConfig::default().with_restarts(2);
        let pair = ExponentPair::new(p("2"), p("3"), p("2"), p("3"), 0.0).unwrap();
        assert!(three_lines_demo(&t, &pair, &e, &e, 11, &cfg).is_err());
        let pair = ExponentPair::new(p("1"), p("1"), p("2"), p("3"), 0.5).unwrap();
        assert!(matches!(three_lines_demo(&t, &pair, &e, &e, 11, &cfg), Err(Error::DegenerateInput(_))));
        let idem = random_element(&alg, 3, &ElementStyle::PrescribedSpectrum(vec![1.0, 0.0])).unwrap();
        let pair = ExponentPair::new(p("2"), p("3"), p("2"), p("3"), 0.5).unwrap();
        assert!(matches!(three_lines_demo(&t, &pair, &idem, &e, 11, &cfg), Err(Error::DegenerateInput(_))));
    }
}

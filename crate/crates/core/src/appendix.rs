//! Brute-force checks of `max{||x||_p + ||y||_p : ||x + iy||_p = 1} = C_p` on
//! `ℝⁿ × ℝⁿ` and of the two Clarkson inequalities behind it.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponent::ExtExponent;
use crate::random::{derive_seed, gaussian, rng};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CpProblem {
    n: usize,
    p: ExtExponent,
}

impl CpProblem {
    pub fn new(n: usize, p: ExtExponent) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("C_p problem needs n >= 2, got {n}")));
        }
        Ok(CpProblem { n, p })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> ExtExponent {
        self.p
    }

    /// `f(x, y) = ||x||_p + ||y||_p`.
    pub fn objective(&self, x: &[f64], y: &[f64]) -> f64 {
        self.p.vec_norm(x) + self.p.vec_norm(y)
    }

    /// `g(x, y) = ||x + iy||_p`, the p-norm of the complex moduli.
    pub fn constraint(&self, x: &[f64], y: &[f64]) -> f64 {
        let moduli: Vec<f64> = x.iter().zip(y).map(|(a, b)| a.hypot(*b)).collect();
        self.p.vec_norm(&moduli)
    }

    /// `f / g`; both are positively 1-homogeneous, so this is `f` on `g = 1`.
    fn ratio(&self, z: &[f64]) -> f64 {
        let (x, y) = z.split_at(self.n);
        let g = self.constraint(x, y);
        if g == 0.0 {
            f64::NEG_INFINITY
        } else {
            self.objective(x, y) / g
        }
    }

    /// The known maximizer: `2^{−1/p}(e₁, e₂)` for `p >= 2` and
    /// `δ(1,…,1)` twice with `δ = n^{−1/p}/√2` for `p < 2`.
    pub fn known_maximizer(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.n;
        if self.p.recip() <= 0.5 {
            let c = 2f64.powf(-self.p.recip());
            let mut x = vec![0.0; n];
            let mut y = vec![0.0; n];
            x[0] = c;
            y[1] = c;
            (x, y)
        } else {
            let d = (n as f64).powf(-self.p.recip()) * std::f64::consts::FRAC_1_SQRT_2;
            (vec![d; n], vec![d; n])
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BruteForceConfig {
    pub multistarts: usize,
    /// Maximum compass passes per start.
    pub iters: usize,
    pub seed: u64,
}

impl Default for BruteForceConfig {
    fn default() -> Self {
        BruteForceConfig { multistarts: 200, iters: 4000, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CpResult {
    pub max_found: f64,
    /// Scaled onto `g = 1`.
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

const MIN_STEP: f64 = 1e-9;

/// Compass search on `f/g` from one start; returns the final point and value.
fn compass(prob: &CpProblem, mut z: Vec<f64>, iters: usize) -> (Vec<f64>, f64) {
    let scale = z.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut step = 0.5 * scale;
    let mut best = prob.ratio(&z);
    for _ in 0..iters {
        if step < MIN_STEP * scale {
            break;
        }
        let mut moved = false;
        for k in 0..z.len() {
            let old = z[k];
            // ±step, then zeroing the coordinate; ties are accepted only when
            // they shrink |z_k|, which walks across flat regions at p = ∞
            for cand in [old + step, old - step, 0.0] {
                if cand == z[k] {
                    continue;
                }
                let prev = z[k];
                z[k] = cand;
                let v = prob.ratio(&z);
                if v > best || (v == best && cand.abs() < prev.abs()) {
                    best = v;
                    moved = true;
                } else {
                    z[k] = prev;
                }
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    (z, best)
}

/// Multistart compass search for `max f` on `g = 1`.
pub fn cp_bruteforce(prob: &CpProblem, cfg: &BruteForceConfig) -> CpResult {
    let n = prob.n;
    let mut best: Option<(Vec<f64>, f64)> = None;
    for k in 0..cfg.multistarts.max(1) {
        let mut r = rng(derive_seed(cfg.seed, k as u64));
        let start: Vec<f64> = (0..2 * n).map(|_| gaussian(&mut r)).collect();
        let (z, v) = compass(prob, start, cfg.iters);
        if best.as_ref().is_none_or(|(_, b)| v > *b) {
            best = Some((z, v));
        }
    }
    let (z, max_found) = best.expect("at least one start");
    let (x, y) = z.split_at(n);
    let g = prob.constraint(x, y);
    CpResult {
        max_found,
        x: x.iter().map(|v| v / g).collect(),
        y: y.iter().map(|v| v / g).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClarksonReport {
    pub p: f64,
    pub trials: usize,
    /// `max (LHS − RHS) / RHS`; nonpositive when the inequality held throughout.
    pub max_violation: f64,
    /// For the refined inequality: `max Σ(|xⱼ|^p + |yⱼ|^p) − 2^{1−p/2}` over
    /// random points with `||x + iy||_p = 1`.
    pub max_aggregate_violation: Option<f64>,
}

/// A random complex number; every fourth draw uses a spread of scales so
/// that nearly cancelling and lopsided pairs show up.
fn random_complex(r: &mut impl Rng) -> Complex64 {
    let z = Complex64::new(gaussian(r), gaussian(r));
    if r.random_range(0..4) == 0 {
        z * 10f64.powf(r.random_range(-3.0..3.0))
    } else {
        z
    }
}

fn random_pair(r: &mut impl Rng) -> (Complex64, Complex64) {
    let z = random_complex(r);
    let w = match r.random_range(0..5) {
        // w close to ±z or ±iz
        0 => z * [1.0, -1.0][r.random_range(0..2)] + random_complex(r) * 1e-3,
        1 => z * Complex64::i() + random_complex(r) * 1e-3,
        _ => random_complex(r),
    };
    (z, w)
}

/// `2(|z|^p + |w|^p) <= |z+w|^p + |z−w|^p` for `p >= 2`.
pub fn clarkson_check(p: f64, trials: usize, seed: u64) -> Result<ClarksonReport> {
    if !(2.0..f64::INFINITY).contains(&p) {
        return Err(Error::Domain(format!("Clarkson inequality needs finite p >= 2, got {p}")));
    }
    let mut r = rng(seed);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..trials {
        let (z, w) = random_pair(&mut r);
        let lhs = 2.0 * (z.norm().powf(p) + w.norm().powf(p));
        let rhs = (z + w).norm().powf(p) + (z - w).norm().powf(p);
        if rhs > 0.0 {
            worst = worst.max((lhs - rhs) / rhs);
        }
    }
    Ok(ClarksonReport { p, trials, max_violation: worst, max_aggregate_violation: None })
}

/// `2^{p−1}(|z|^p + |w|^p) + (2 − 2^{p/2}) min{|z+w|^p, |z−w|^p} <= |z+w|^p + |z−w|^p`
/// for `1 <= p < 2`, plus the aggregate `Σ(|xⱼ|^p + |yⱼ|^p) <= 2^{1−p/2}` on
/// random `(x, y) ∈ ℝⁿ × ℝⁿ` with `||x + iy||_p = 1`.
pub fn refined_clarkson_check(p: f64, trials: usize, seed: u64) -> Result<ClarksonReport> {
    if !(1.0..2.0).contains(&p) {
        return Err(Error::Domain(format!("refined Clarkson inequality needs 1 <= p < 2, got {p}")));
    }
    let mut r = rng(seed);
    let c1 = 2f64.powf(p - 1.0);
    let c2 = 2.0 - 2f64.powf(p / 2.0);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..trials {
        let (z, w) = random_pair(&mut r);
        let sp = (z + w).norm().powf(p);
        let sm = (z - w).norm().powf(p);
        let lhs = c1 * (z.norm().powf(p) + w.norm().powf(p)) + c2 * sp.min(sm);
        let rhs = sp + sm;
        if rhs > 0.0 {
            worst = worst.max((lhs - rhs) / rhs);
        }
    }

    let bound = 2f64.powf(1.0 - p / 2.0);
    let pe = ExtExponent::finite(p)?;
    let mut agg = f64::NEG_INFINITY;
    let mut r = rng(derive_seed(seed, 1));
    for _ in 0..trials {
        let n = r.random_range(2..=6);
        let x: Vec<f64> = (0..n).map(|_| gaussian(&mut r)).collect();
        let y: Vec<f64> = (0..n).map(|_| gaussian(&mut r)).collect();
        let prob = CpProblem { n, p: pe };
        let g = prob.constraint(&x, &y);
        let s: f64 = x.iter().chain(&y).map(|v| (v / g).abs().powf(p)).sum();
        agg = agg.max(s - bound);
    }
    Ok(ClarksonReport { p, trials, max_violation: worst, max_aggregate_violation: Some(agg) })
}

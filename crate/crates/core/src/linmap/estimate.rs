//! Multistart alternating-duality ascent for `||T||_{r→s}`.
//!
//! `||T||_{r→s} = sup { ⟨Ta, b⟩ : ||a||_r = 1, ||b||_{s'} = 1 }`. For fixed
//! `a` the best `b` is `peak(Ta, s')`; for fixed `b` the best `a` is
//! `peak(T*b, r)`. Alternating the two exact half-steps never decreases the
//! objective, and every visited pair certifies a lower bound.

use rand::Rng;

use super::peak::{normalize, peak};
use super::LinearMap;
use crate::element::{dot, Element};
use crate::exponent::ExtExponent;
use crate::random::{derive_seed, random_element_with, random_frame, rng, ElementStyle};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimatorConfig {
    pub restarts: usize,
    pub max_iters: usize,
    /// Relative objective change below which a chain stops.
    pub tol: f64,
    pub seed: u64,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        EstimatorConfig { restarts: 64, max_iters: 200, tol: 1e-10, seed: 0 }
    }
}

impl EstimatorConfig {
    pub fn with_restarts(self, restarts: usize) -> Self {
        EstimatorConfig { restarts, ..self }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        EstimatorConfig { seed, ..self }
    }
}

#[derive(Debug, Clone)]
pub struct NormEstimate {
    /// `⟨T(witness_a), witness_b⟩`, a lower bound on `||T||_{r→s}`.
    pub lower_bound: f64,
    pub witness_a: Element,
    pub witness_b: Element,
    pub iterations: usize,
    pub restarts_used: usize,
    pub converged: bool,
}

/// Where an ascent chain starts: from a primal point `a` or a dual point `b`.
#[derive(Debug, Clone)]
pub enum ChainStart {
    Primal(Element),
    Dual(Element),
}

#[derive(Debug, Clone)]
pub struct ChainOutcome {
    pub value: f64,
    pub a: Element,
    pub b: Element,
    /// Objective after every accepted half-step; nondecreasing.
    pub history: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// Runs one ascent chain. `t_adj` must be the adjoint of `t`.
pub fn ascent_chain(
    t: &LinearMap,
    t_adj: &LinearMap,
    r: ExtExponent,
    s: ExtExponent,
    start: ChainStart,
    max_iters: usize,
    tol: f64,
) -> ChainOutcome {
    let alg = t.algebra().clone();
    let s_dual = s.conjugate();
    let fallback = |p: ExtExponent| normalize(&Element::unit(alg.clone()), p).expect("unit is nonzero");

    let (mut a, mut b, mut b_step) = match start {
        ChainStart::Primal(x) => (normalize(&x, r).unwrap_or_else(|_| fallback(r)), fallback(s_dual), true),
        ChainStart::Dual(x) => (fallback(r), normalize(&x, s_dual).unwrap_or_else(|_| fallback(s_dual)), false),
    };

    let mut history: Vec<f64> = Vec::new();
    let mut quiet = 0;
    let mut converged = false;
    let mut half_steps = 0;
    while half_steps < 2 * max_iters {
        half_steps += 1;
        let step = if b_step {
            let ta = t.apply(&a).expect("same algebra");
            peak(&ta, s_dual).map(|nb| (dot(ta.coords(), nb.coords()), None, Some(nb)))
        } else {
            let tb = t_adj.apply(&b).expect("same algebra");
            peak(&tb, r).map(|na| (dot(na.coords(), tb.coords()), Some(na), None))
        };
        let Ok((value, new_a, new_b)) = step else {
            // T a = 0 or T* b = 0: the pairing is zero along this chain
            if history.is_empty() {
                history.push(0.0);
            }
            converged = true;
            break;
        };
        if let Some(&prev) = history.last() {
            if value < prev {
                converged = true;
                break;
            }
            if value - prev <= tol * value.abs() {
                quiet += 1;
            } else {
                quiet = 0;
            }
        }
        history.push(value);
        if let Some(na) = new_a {
            a = na;
        }
        if let Some(nb) = new_b {
            b = nb;
        }
        b_step = !b_step;
        if quiet >= 2 {
            converged = true;
            break;
        }
    }

    let value = dot(t.apply(&a).expect("same algebra").coords(), b.coords());
    ChainOutcome { value, a, b, history, iterations: half_steps.div_ceil(2), converged }
}

/// Deterministic start points: `e`, the idempotents of frames of `T(e)` and
/// `T*(e)` interleaved, then alternating gaussian elements and single
/// idempotents of random frames seeded by counter from `cfg.seed`.
pub fn start_points(t: &LinearMap, t_adj: &LinearMap, cfg: &EstimatorConfig) -> Vec<Element> {
    let alg = t.algebra().clone();
    let e = Element::unit(alg.clone());
    let mut pts = vec![e.clone()];
    let f1 = t.apply(&e).expect("same algebra").spectral_decomposition().frame;
    let f2 = t_adj.apply(&e).expect("same algebra").spectral_decomposition().frame;
    for (x, y) in f1.into_iter().zip(f2) {
        pts.push(x);
        pts.push(y);
    }
    pts.truncate(cfg.restarts);
    let mut counter = 0u64;
    while pts.len() < cfg.restarts {
        let mut r = rng(derive_seed(cfg.seed, counter));
        if counter.is_multiple_of(2) {
            pts.push(
                random_element_with(&alg, &mut r, &ElementStyle::GaussianCoords)
                    .expect("gaussian style never fails"),
            );
        } else {
            let frame = random_frame(&alg, &mut r);
            let k = r.random_range(0..frame.len());
            pts.push(frame[k].clone());
        }
        counter += 1;
    }
    pts
}

/// Lower bound on `||T||_{r→s}` with witnesses. Each start point seeds a
/// primal and a dual chain; the best pairing over all chains is returned.
pub fn op_norm_estimate(
    t: &LinearMap,
    r: ExtExponent,
    s: ExtExponent,
    cfg: &EstimatorConfig,
) -> NormEstimate {
    let alg = t.algebra().clone();
    let s_dual = s.conjugate();
    if t.is_zero() {
        let e = Element::unit(alg);
        return NormEstimate {
            lower_bound: 0.0,
            witness_a: normalize(&e, r).expect("unit is nonzero"),
            witness_b: normalize(&e, s_dual).expect("unit is nonzero"),
            iterations: 0,
            restarts_used: 0,
            converged: true,
        };
    }
    let t_adj = t.adjoint();
    let starts = start_points(t, &t_adj, cfg);
    let mut best: Option<ChainOutcome> = None;
    let mut iterations = 0;
    for x in &starts {
        for start in [ChainStart::Primal(x.clone()), ChainStart::Dual(x.clone())] {
            let out = ascent_chain(t, &t_adj, r, s, start, cfg.max_iters, cfg.tol);
            iterations += out.iterations;
            if best.as_ref().is_none_or(|b| out.value > b.value) {
                best = Some(out);
            }
        }
    }
    let best = best.expect("at least one start point");
    NormEstimate {
        lower_bound: best.value,
        witness_a: best.a,
        witness_b: best.b,
        iterations,
        restarts_used: starts.len(),
        converged: best.converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linmap::{lyapunov, quadratic_rep};
    use crate::random::random_element;
    use std::sync::Arc;

    fn alg(s: &str) -> Arc<crate::Algebra> {
        Arc::new(s.parse().unwrap())
    }

    fn exps() -> Vec<ExtExponent> {
        crate::exponent::parse_grid("1,4/3,2,3,inf").unwrap()
    }

    #[test]
    fn identity_two_to_two() {
        let t = LinearMap::identity(alg("herm:3"));
        let est = op_norm_estimate(&t, ExtExponent::TWO, ExtExponent::TWO, &EstimatorConfig::default());
        assert!((est.lower_bound - 1.0).abs() < 1e-12);
        assert!(est.converged);
    }

    #[test]
    fn zero_map() {
        let t = LinearMap::zero(alg("spin:3"));
        let est = op_norm_estimate(&t, ExtExponent::ONE, ExtExponent::INF, &EstimatorConfig::default());
        assert_eq!(est.lower_bound, 0.0);
        assert!(est.converged);
    }

    #[test]
    fn witnesses_certify_the_bound() {
        let a = alg("sym:3");
        let x = random_element(&a, 8, &ElementStyle::GaussianCoords).unwrap();
        let t = quadratic_rep(&x).compose(&lyapunov(&x.abs())).unwrap();
        for r in exps() {
            for s in exps() {
                let est = op_norm_estimate(&t, r, s, &EstimatorConfig::default().with_restarts(8));
                let pair = t.apply(&est.witness_a).unwrap().inner_product(&est.witness_b).unwrap();
                assert!((pair - est.lower_bound).abs() <= 1e-9 * (1.0 + pair.abs()));
                assert!((est.witness_a.p_norm(r) - 1.0).abs() < 1e-9);
                assert!((est.witness_b.p_norm(s.conjugate()) - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn chain_history_is_monotone() {
        let a = alg("sym:2,spin:3");
        let t = LinearMap::new(
            a.clone(),
            nalgebra::DMatrix::from_fn(6, 6, |i, j| ((i * 7 + j * 3) % 5) as f64 - 2.0),
        )
        .unwrap();
        let t_adj = t.adjoint();
        let cfg = EstimatorConfig::default().with_restarts(12);
        for x in start_points(&t, &t_adj, &cfg) {
            for r in exps() {
                for s in exps() {
                    let out = ascent_chain(&t, &t_adj, r, s, ChainStart::Primal(x.clone()), 200, 1e-10);
                    assert!(out.history.windows(2).all(|w| w[0] <= w[1]));
                }
            }
        }
    }

    #[test]
    fn deterministic() {
        let a = alg("spin:4");
        let x = random_element(&a, 2, &ElementStyle::GaussianCoords).unwrap();
        let t = lyapunov(&x).compose(&quadratic_rep(&x)).unwrap();
        let r: ExtExponent = "3".parse().unwrap();
        let cfg = EstimatorConfig::default().with_restarts(10).with_seed(99);
        let e1 = op_norm_estimate(&t, r, ExtExponent::TWO, &cfg);
        let e2 = op_norm_estimate(&t, r, ExtExponent::TWO, &cfg);
        assert_eq!(e1.lower_bound.to_bits(), e2.lower_bound.to_bits());
        assert_eq!(e1.witness_a, e2.witness_a);
    }
}

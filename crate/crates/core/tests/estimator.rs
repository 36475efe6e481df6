//! The norm estimator against closed-form values, upper bounds and duality.

use std::sync::Arc;

use jspec_core::exponent::parse_grid;
use jspec_core::linmap::{
    closed_form_bounds, closed_form_norm, lyapunov, op_norm_estimate, quadratic_rep, ClosedForm, EstimatorConfig,
    LinearMap, NormFamily, PositiveMap, Relation,
};
use jspec_core::random::{random_element, ElementStyle};
use jspec_core::{Algebra, ExtExponent};

fn alg(s: &str) -> Arc<Algebra> {
    Arc::new(s.parse().unwrap())
}

fn grid() -> Vec<ExtExponent> {
    parse_grid("1,4/3,2,3,4,inf").unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

#[test]
fn sharp_on_lyapunov_and_quadratic_identities() {
    let cfg = EstimatorConfig::default();
    for s in ["rn:6", "spin:5", "sym:4", "herm:3", "sym:2,spin:3"] {
        let a = alg(s);
        for seed in 0..3 {
            let x = random_element(&a, seed, &ElementStyle::GaussianCoords).unwrap();
            for (family, t) in [(NormFamily::Lyapunov(&x), lyapunov(&x)), (NormFamily::QuadRep(&x), quadratic_rep(&x))] {
                for r in grid() {
                    for s2 in grid() {
                        let ClosedForm::Exact(want) = closed_form_norm(family, r, s2).unwrap() else {
                            continue;
                        };
                        let got = op_norm_estimate(&t, r, s2, &cfg.with_seed(seed)).lower_bound;
                        assert!(rel(got, want) <= 1e-5, "{s} seed {seed} ({r},{s2}): {got} vs {want}");
                    }
                }
            }
        }
    }
}

#[test]
fn sharp_on_positive_identities_and_below_bounds() {
    let cfg = EstimatorConfig::default();
    let a = alg("sym:3");
    for seed in 0..6 {
        let x = random_element(&a, seed, &ElementStyle::GaussianCoords).unwrap();
        let m = nalgebra::DMatrix::from_fn(3, 3, |i, j| ((seed as usize + 3 * i + 7 * j) % 5) as f64 - 2.0);
        let maps = [
            PositiveMap::quadratic_rep(&x),
            PositiveMap::congruence(&m, &a).unwrap(),
            PositiveMap::random_doubly_stochastic(&a, seed),
        ];
        for pm in &maps {
            for r in grid() {
                for s in grid() {
                    let got = op_norm_estimate(pm.map(), r, s, &cfg).lower_bound;
                    for b in closed_form_bounds(NormFamily::Positive(pm), r, s).unwrap() {
                        match b.relation {
                            Relation::Equal => assert!(rel(got, b.value) <= 1e-5, "{:?} ({r},{s})", b.source),
                            Relation::Upper => assert!(got <= b.value * (1.0 + 1e-8) + 1e-8, "{:?}", b.source),
                            Relation::Lower => assert!(got >= b.value * (1.0 - 1e-8) - 1e-8, "{:?}", b.source),
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn duality_of_adjoint_norms() {
    let cfg = EstimatorConfig::default().with_seed(11);
    for (k, s) in ["sym:3", "spin:4", "herm:2"].iter().enumerate() {
        let a = alg(s);
        let d = a.dim();
        for seed in 0..4u64 {
            let m = nalgebra::DMatrix::from_fn(d, d, |i, j| {
                let v = (i * 31 + j * 17 + seed as usize * 13 + k) % 11;
                v as f64 / 5.0 - 1.0
            });
            let t = LinearMap::new(a.clone(), m).unwrap();
            for r in grid() {
                for s2 in grid() {
                    let lhs = op_norm_estimate(&t.adjoint(), r, s2, &cfg).lower_bound;
                    let rhs = op_norm_estimate(&t, s2.conjugate(), r.conjugate(), &cfg).lower_bound;
                    assert!(rel(lhs, rhs) <= 1e-5, "{s} ({r},{s2}): {lhs} vs {rhs}");
                }
            }
        }
    }
}

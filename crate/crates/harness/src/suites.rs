//! One function per suite; each runs a single trial from its own seed.

use std::sync::Arc;

use nalgebra::DMatrix;
use rand::Rng;
use serde_json::json;

use jspec_core::appendix::{
    clarkson_check, cp_bruteforce, refined_clarkson_check, BruteForceConfig, CpProblem,
};
use jspec_core::element::Element;
use jspec_core::interpolation::{
    check_corollary4, check_theorem2, cp_constant, theorem2_constant_theta, three_lines_demo, BoundReport,
    ComplexElement, ExponentPair, VIOLATION_TOL,
};
use jspec_core::linmap::{
    closed_form_bounds, find_positivity_counterexample, lyapunov, op_norm_estimate, peak, quadratic_rep,
    random_doubly_stochastic, EstimatorConfig, LinearMap, NormFamily, PositiveMap, Relation,
};
use jspec_core::random::{gaussian, random_element_with, rng, ElementStyle, Rng64};
use jspec_core::{Algebra, Error, ExtExponent};

use crate::config::{CampaignConfig, Suite};
use crate::report::CpRow;

pub(crate) enum Agg {
    Max,
    Sum,
}

pub(crate) struct Check {
    pub name: &'static str,
    pub margin: f64,
    pub tol: f64,
    pub detail: serde_json::Value,
}

#[derive(Default)]
pub(crate) struct TrialOutcome {
    pub checks: Vec<Check>,
    pub metrics: Vec<(&'static str, f64, Agg)>,
    pub rows: Vec<CpRow>,
}

impl TrialOutcome {
    fn check(&mut self, name: &'static str, margin: f64, tol: f64, detail: serde_json::Value) {
        self.checks.push(Check { name, margin, tol, detail });
    }

    fn max(&mut self, name: &'static str, v: f64) {
        if v.is_finite() {
            self.metrics.push((name, v, Agg::Max));
        }
    }

    fn count(&mut self, name: &'static str, hit: bool) {
        self.metrics.push((name, if hit { 1.0 } else { 0.0 }, Agg::Sum));
    }
}

pub(crate) struct Ctx {
    pub alg: Arc<Algebra>,
    pub cfg: CampaignConfig,
}

const INEQ_TOL: f64 = 1e-9;
const IDENTITY_TOL: f64 = 1e-5;
const THREE_LINES_GRID: usize = 401;
const CLARKSON_P: [f64; 4] = [2.0, 3.0, 5.0, 10.0];
const REFINED_CLARKSON_P: [f64; 4] = [1.0, 1.3, 1.7, 1.95];

/// Number of independent units a campaign runs.
pub(crate) fn units(cfg: &CampaignConfig) -> usize {
    match cfg.suite {
        Suite::CpTable => cfg.dims.len() * cfg.exponent_grid.len(),
        Suite::Clarkson => CLARKSON_P.len() + REFINED_CLARKSON_P.len(),
        _ => cfg.trials,
    }
}

pub(crate) fn run_unit(ctx: &Ctx, idx: usize, seed: u64) -> Result<TrialOutcome, Error> {
    let mut r = rng(seed);
    let mut out = TrialOutcome::default();
    let est = ctx.cfg.estimator.with_seed(seed);
    match ctx.cfg.suite {
        Suite::Ftvn => ftvn(ctx, &mut r, &mut out)?,
        Suite::Holder => holder(ctx, &mut r, &mut out)?,
        Suite::GenHolder => gen_holder(ctx, &mut r, &mut out)?,
        Suite::LyapunovNorms | Suite::QuadrepNorms => special_norms(ctx, &mut r, &est, &mut out)?,
        Suite::PositiveNorms => positive_norms(ctx, idx, seed, &mut r, &est, &mut out)?,
        Suite::Theorem1 => theorem1(ctx, idx, &mut r, &est, &mut out)?,
        Suite::Theorem2 => theorem2(ctx, idx, &mut r, &est, &mut out)?,
        Suite::Corollary4 => corollary4(ctx, idx, &mut r, &est, &mut out)?,
        Suite::ThreeLines => three_lines(ctx, idx, &mut r, &est, &mut out)?,
        Suite::CpTable => cp_table_unit(ctx, idx, seed, &mut out)?,
        Suite::Clarkson => clarkson(ctx, idx, seed, &mut out)?,
    }
    Ok(out)
}

fn element(alg: &Arc<Algebra>, r: &mut Rng64) -> Element {
    random_element_with(alg, r, &ElementStyle::GaussianCoords).expect("gaussian style never fails")
}

fn pick<T: Copy>(r: &mut Rng64, xs: &[T]) -> T {
    xs[r.random_range(0..xs.len())]
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn rel(est: f64, exact: f64) -> f64 {
    (est - exact).abs() / exact.abs().max(f64::MIN_POSITIVE)
}

/// An exponent from the grid half the time, otherwise uniform in `1/p`.
fn exponent(ctx: &Ctx, r: &mut Rng64) -> ExtExponent {
    if r.random::<bool>() {
        pick(r, &ctx.cfg.exponent_grid)
    } else {
        ExtExponent::from_recip(r.random::<f64>())
    }
}

/// Test maps cycle through dense gaussian matrices, `L_a`, `P_a`, doubly
/// stochastic mixtures and (on a single symmetric factor) congruences.
fn random_map(alg: &Arc<Algebra>, kind: usize, r: &mut Rng64) -> (LinearMap, &'static str) {
    let d = alg.dim();
    let gaussian_map = |r: &mut Rng64| {
        let s = 1.0 / (d as f64).sqrt();
        let m = DMatrix::from_fn(d, d, |_, _| s * gaussian(r));
        LinearMap::new(alg.clone(), m).expect("square matrix")
    };
    match kind % 5 {
        0 => (gaussian_map(r), "gaussian"),
        1 => (lyapunov(&element(alg, r)), "lyapunov"),
        2 => (quadratic_rep(&element(alg, r)), "quadratic-rep"),
        3 => (random_doubly_stochastic(alg, r.random()), "doubly-stochastic"),
        _ => match alg.single_sym() {
            Some(k) => {
                let m = DMatrix::from_fn(k, k, |_, _| gaussian(r));
                (jspec_core::linmap::congruence(&m, alg).expect("single sym factor"), "congruence")
            }
            None => {
                let (a, b) = (element(alg, r), element(alg, r));
                (lyapunov(&a).compose(&quadratic_rep(&b)).expect("same algebra"), "lyapunov-quadratic")
            }
        },
    }
}

fn ftvn(ctx: &Ctx, r: &mut Rng64, out: &mut TrialOutcome) -> Result<(), Error> {
    let alg = &ctx.alg;
    let a = element(alg, r);
    let b = match r.random_range(0..3) {
        // same frame: equality case
        0 => {
            let mut vals: Vec<f64> = (0..alg.rank()).map(|_| gaussian(r)).collect();
            vals.sort_by(|x, y| y.total_cmp(x));
            Element::from_spectrum(&a.spectral_decomposition().frame, &vals)?
        }
        // repeated eigenvalues
        1 => {
            let vals: Vec<f64> = (0..alg.rank()).map(|_| pick(r, &[-1.0, 0.0, 1.0, 2.0])).collect();
            random_element_with(alg, r, &ElementStyle::PrescribedSpectrum(vals))?
        }
        _ => element(alg, r),
    };
    let lhs = a.inner_product(&b)?;
    let rhs = dot(&a.eigenvalues(), &b.eigenvalues());
    out.check("ftvn", (rhs - lhs) / (1.0 + rhs.abs()), INEQ_TOL, json!({ "lhs": lhs, "rhs": rhs }));
    Ok(())
}

fn holder(ctx: &Ctx, r: &mut Rng64, out: &mut TrialOutcome) -> Result<(), Error> {
    let alg = &ctx.alg;
    let p = exponent(ctx, r);
    let q = p.conjugate();
    let (a, b) = (element(alg, r), element(alg, r));
    let ip = a.inner_product(&b)?.abs();
    let ab1 = a.jordan_product(&b)?.p_norm(ExtExponent::ONE);
    let rhs = a.p_norm(p) * b.p_norm(q);
    let detail = json!({ "p": p, "inner": ip, "product-1-norm": ab1, "rhs": rhs });
    out.check("trace-bound", (ab1 - ip) / (1.0 + ab1), INEQ_TOL, detail.clone());
    out.check("holder", (rhs - ab1) / (1.0 + rhs), INEQ_TOL, detail);

    let d = peak(&a, q)?;
    let want = a.p_norm(p);
    let err = (a.inner_product(&d)? - want).abs() + (d.p_norm(q) - 1.0).abs();
    out.check("sup-attained", -err / (1.0 + want), INEQ_TOL, json!({ "p": p, "norm": want, "error": err }));

    let x = ComplexElement::new(a, b)?;
    let y = ComplexElement::new(element(alg, r), element(alg, r))?;
    let lhs = x.inner_product(&y)?.norm();
    let rhs = x.norm(p) * y.norm(q);
    out.check("complex-holder", (rhs - lhs) / (1.0 + rhs), INEQ_TOL, json!({ "p": p, "lhs": lhs, "rhs": rhs }));
    Ok(())
}

fn gen_holder(ctx: &Ctx, r: &mut Rng64, out: &mut TrialOutcome) -> Result<(), Error> {
    let alg = &ctx.alg;
    let grid = &ctx.cfg.exponent_grid;
    let from_grid = if r.random::<bool>() {
        (0..64).map(|_| (pick(r, grid), pick(r, grid))).find(|(p, rr)| p.recip() + rr.recip() <= 1.0)
    } else {
        None
    };
    let (p, rr) = from_grid.unwrap_or_else(|| {
        let x = r.random::<f64>();
        (ExtExponent::from_recip(x), ExtExponent::from_recip(r.random::<f64>() * (1.0 - x)))
    });
    let s = ExtExponent::from_recip(p.recip() + rr.recip());
    let (a, b) = (element(alg, r), element(alg, r));
    let lhs = a.jordan_product(&b)?.p_norm(s);
    let base = a.p_norm(p) * b.p_norm(rr);
    let rhs = 2.0 * cp_constant(p.conjugate()) * base;
    out.check(
        "generalized-holder",
        (rhs - lhs) / (1.0 + rhs),
        INEQ_TOL,
        json!({ "p": p, "r": rr, "s": s, "lhs": lhs, "rhs": rhs }),
    );
    if base > 0.0 {
        out.max("max-ratio-to-unit-constant", lhs / base);
        out.count("unit-constant-exceedances", lhs > base * (1.0 + 1e-12));
    }
    Ok(())
}

fn judge_bounds(
    family: NormFamily<'_>,
    t: &LinearMap,
    grid: &[ExtExponent],
    est: &EstimatorConfig,
    out: &mut TrialOutcome,
) -> Result<(), Error> {
    for &r in grid {
        for &s in grid {
            let got = op_norm_estimate(t, r, s, est).lower_bound;
            for b in closed_form_bounds(family, r, s)? {
                let detail = json!({ "r": r, "s": s, "source": format!("{:?}", b.source), "estimate": got, "value": b.value });
                match b.relation {
                    Relation::Equal => {
                        let err = rel(got, b.value);
                        out.check("identity", -err, IDENTITY_TOL, detail);
                        out.max("max-identity-rel-error", err);
                    }
                    Relation::Upper => {
                        let margin = (b.value - got) / b.value.abs().max(f64::MIN_POSITIVE);
                        out.check("upper-bound", margin, VIOLATION_TOL, detail);
                        out.max("max-estimate-to-upper-bound", got / b.value);
                    }
                    Relation::Lower => {
                        let margin = (got - b.value) / b.value.abs().max(f64::MIN_POSITIVE);
                        out.check("lower-bound", margin, IDENTITY_TOL, detail);
                    }
                }
            }
        }
    }
    Ok(())
}

fn special_norms(ctx: &Ctx, r: &mut Rng64, est: &EstimatorConfig, out: &mut TrialOutcome) -> Result<(), Error> {
    let a = element(&ctx.alg, r);
    let (family, t) = if ctx.cfg.suite == Suite::LyapunovNorms {
        (NormFamily::Lyapunov(&a), lyapunov(&a))
    } else {
        (NormFamily::QuadRep(&a), quadratic_rep(&a))
    };
    judge_bounds(family, &t, &ctx.cfg.exponent_grid, est, out)
}

fn positive_norms(
    ctx: &Ctx,
    idx: usize,
    seed: u64,
    r: &mut Rng64,
    est: &EstimatorConfig,
    out: &mut TrialOutcome,
) -> Result<(), Error> {
    let alg = &ctx.alg;
    let kinds = if alg.single_sym().is_some() { 3 } else { 2 };
    let pm = match idx % kinds {
        0 => PositiveMap::quadratic_rep(&element(alg, r)),
        1 => PositiveMap::random_doubly_stochastic(alg, r.random()),
        _ => {
            let k = alg.single_sym().expect("checked above");
            PositiveMap::congruence(&DMatrix::from_fn(k, k, |_, _| gaussian(r)), alg)?
        }
    };
    let bad = find_positivity_counterexample(pm.map(), 200, seed, 1e-9);
    out.check(
        "positivity-sampled",
        if bad.is_some() { -1.0 } else { 0.0 },
        0.0,
        json!({ "origin": format!("{:?}", pm.origin()) }),
    );
    judge_bounds(NormFamily::Positive(&pm), pm.map(), &ctx.cfg.exponent_grid, est, out)
}

/// Records a bound report; the configured constant scale is applied to the
/// right-hand side before judging.
fn judge_report(ctx: &Ctx, name: &'static str, rep: &BoundReport, detail: serde_json::Value, out: &mut TrialOutcome) {
    let rhs = rep.rhs * ctx.cfg.constant_scale;
    let margin = if rhs > 0.0 { (rhs - rep.lhs_lower) / rhs } else { -rep.lhs_lower };
    let mut detail = detail;
    detail["report"] = json!(rep);
    out.check(name, margin, VIOLATION_TOL, detail);
    out.count("reestimated", rep.reestimated);
}

fn geometric_ratio(rep: &BoundReport) -> Option<f64> {
    let geo = rep.rhs / rep.constant;
    (geo > 0.0).then(|| rep.lhs_lower / geo)
}

fn interior_thetas(ctx: &Ctx) -> Vec<f64> {
    let t: Vec<f64> = ctx.cfg.thetas.iter().copied().filter(|&t| t > 0.0 && t < 1.0).collect();
    if t.is_empty() {
        ctx.cfg.thetas.clone()
    } else {
        t
    }
}

fn theorem1(ctx: &Ctx, idx: usize, r: &mut Rng64, est: &EstimatorConfig, out: &mut TrialOutcome) -> Result<(), Error> {
    let (t, kind) = random_map(&ctx.alg, idx, r);
    let grid = &ctx.cfg.exponent_grid;
    let p0 = pick(r, grid);
    let p1 = (0..16).map(|_| pick(r, grid)).find(|&x| x != p0).unwrap_or(p0);
    let theta = pick(r, &interior_thetas(ctx));
    // diagonal exponents: (p0 → p0) and (p1 → p1)
    let pair = ExponentPair::new(p0, p1, p0, p1, theta)?;
    let rep = jspec_core::interpolation::check_theorem2_with(&t, &pair, 1.0, est);
    if let Some(x) = geometric_ratio(&rep) {
        out.max("max-ratio-to-geometric-mean", x);
    }
    judge_report(ctx, "theorem1", &rep, json!({ "map": kind, "pair": pair }), out);
    Ok(())
}

fn theorem2(ctx: &Ctx, idx: usize, r: &mut Rng64, est: &EstimatorConfig, out: &mut TrialOutcome) -> Result<(), Error> {
    let (t, kind) = random_map(&ctx.alg, idx, r);
    let grid = &ctx.cfg.exponent_grid;
    let theta = pick(r, &interior_thetas(ctx));
    let pair = ExponentPair::new(pick(r, grid), pick(r, grid), pick(r, grid), pick(r, grid), theta)?;
    let rep = check_theorem2(&t, &pair, est);
    if let Some(x) = geometric_ratio(&rep) {
        out.max("max-ratio-to-geometric-mean", x);
        let ct = theorem2_constant_theta(&pair);
        out.max("max-ratio-to-theta-constant-bound", x / ct);
        out.count("theta-constant-exceedances", x > ct * (1.0 + VIOLATION_TOL));
    }
    judge_report(ctx, "theorem2", &rep, json!({ "map": kind, "pair": pair }), out);
    Ok(())
}

fn corollary4(ctx: &Ctx, idx: usize, r: &mut Rng64, est: &EstimatorConfig, out: &mut TrialOutcome) -> Result<(), Error> {
    let (t, kind) = random_map(&ctx.alg, idx, r);
    let grid = &ctx.cfg.exponent_grid;
    let (rr, s) = (0..64)
        .map(|_| (pick(r, grid), pick(r, grid)))
        .find(|(a, b)| a != b)
        .ok_or_else(|| Error::Domain("corollary campaign needs two distinct exponents".into()))?;
    let rep = check_corollary4(&t, rr, s, est)?;
    let detail = json!({ "map": kind, "r": rr, "s": s });
    if let Some(x) = geometric_ratio(&rep.standard) {
        out.max("max-ratio-to-geometric-mean", x);
    }
    judge_report(ctx, "corollary4-2sqrt2", &rep.standard, detail.clone(), out);
    judge_report(ctx, "corollary4-refined", &rep.refined, detail.clone(), out);
    judge_report(ctx, "corollary4-derived-constant", &rep.derived, detail, out);
    Ok(())
}

fn three_lines(ctx: &Ctx, idx: usize, r: &mut Rng64, est: &EstimatorConfig, out: &mut TrialOutcome) -> Result<(), Error> {
    let (t, kind) = random_map(&ctx.alg, idx, r);
    let grid = &ctx.cfg.exponent_grid;
    let thetas = interior_thetas(ctx);
    let open = |x: ExtExponent| x.recip() > 0.0 && x.recip() < 1.0;
    let pair = (0..256)
        .map(|_| ExponentPair::new(pick(r, grid), pick(r, grid), pick(r, grid), pick(r, grid), pick(r, &thetas)))
        .find(|p| p.as_ref().is_ok_and(|p| p.theta > 0.0 && p.theta < 1.0 && open(p.r_theta()) && open(p.s_theta())))
        .ok_or_else(|| Error::Domain("no exponent pair with interpolated exponents in (1, ∞)".into()))??;
    let mut attempt = 0;
    let rep = loop {
        let (a, b) = (element(&ctx.alg, r), element(&ctx.alg, r));
        match three_lines_demo(&t, &pair, &a, &b, THREE_LINES_GRID, est) {
            Err(Error::DegenerateInput(_)) if attempt < 8 => attempt += 1,
            other => break other?,
        }
    };
    let detail = json!({ "map": kind, "pair": pair, "report": rep });
    let phi = (rep.phi_theta[0].powi(2) + rep.phi_theta[1].powi(2)).sqrt();
    out.check("phi-at-theta", -rep.phi_theta_error / (1.0 + rep.pairing.abs()), INEQ_TOL, detail.clone());
    out.check("hadamard", rep.hadamard_bound - phi, 1e-6, detail.clone());
    out.check("boundary-constraint", 1.0 - rep.max_constraint_ratio, INEQ_TOL, detail);
    out.count("line-bound-shortfalls", !rep.line_bounds_hold);
    if rep.line0_bound > 0.0 {
        out.max("max-line0-to-bound", rep.sup_line0 / rep.line0_bound);
    }
    if rep.line1_bound > 0.0 {
        out.max("max-line1-to-bound", rep.sup_line1 / rep.line1_bound);
    }
    Ok(())
}

fn cp_table_unit(ctx: &Ctx, idx: usize, seed: u64, out: &mut TrialOutcome) -> Result<(), Error> {
    let grid = &ctx.cfg.exponent_grid;
    let (n, p) = (ctx.cfg.dims[idx / grid.len()], grid[idx % grid.len()]);
    let row = cp_row(n, p, &BruteForceConfig { seed, ..Default::default() })?;
    let detail = json!(row);
    out.check("cp-recovery", -row.abs_error, 1e-4, detail.clone());
    out.check("cp-not-exceeded", row.closed_form - row.max_found, 1e-6, detail.clone());
    let prob = CpProblem::new(n, p)?;
    let (x, y) = prob.known_maximizer();
    out.check("maximizer-feasible", -(prob.constraint(&x, &y) - 1.0).abs(), 1e-12, detail.clone());
    out.check("maximizer-value", -(prob.objective(&x, &y) - row.closed_form).abs(), 1e-12, detail);
    out.max("max-cp-abs-error", row.abs_error);
    out.rows.push(row);
    Ok(())
}

pub(crate) fn cp_row(n: usize, p: ExtExponent, cfg: &BruteForceConfig) -> Result<CpRow, Error> {
    let prob = CpProblem::new(n, p)?;
    let res = cp_bruteforce(&prob, cfg);
    let closed_form = cp_constant(p);
    Ok(CpRow { n, p, max_found: res.max_found, closed_form, abs_error: (res.max_found - closed_form).abs() })
}

fn clarkson(ctx: &Ctx, idx: usize, seed: u64, out: &mut TrialOutcome) -> Result<(), Error> {
    let trials = ctx.cfg.trials;
    if idx < CLARKSON_P.len() {
        let rep = clarkson_check(CLARKSON_P[idx], trials, seed)?;
        out.check("clarkson", -rep.max_violation, 1e-12, json!(rep));
        out.max("clarkson-max-violation", rep.max_violation);
    } else {
        let rep = refined_clarkson_check(REFINED_CLARKSON_P[idx - CLARKSON_P.len()], trials, seed)?;
        let agg = rep.max_aggregate_violation.expect("refined check reports the aggregate");
        out.check("refined-clarkson", -rep.max_violation, 1e-12, json!(rep));
        out.check("refined-aggregate", -agg, 1e-12, json!(rep));
        out.max("refined-clarkson-max-violation", rep.max_violation);
    }
    Ok(())
}

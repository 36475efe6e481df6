//! Known values and bounds of `||T||_{r→s}` for Lyapunov transformations,
//! quadratic representations and positive maps.

use super::PositiveMap;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::exponent::ExtExponent;
use crate::interpolation::cp_constant;

const TWO_SQRT2: f64 = 2.0 * std::f64::consts::SQRT_2;

#[derive(Debug, Clone, Copy)]
pub enum NormFamily<'a> {
    /// `L_a` for the given `a`.
    Lyapunov(&'a Element),
    /// `P_a` for the given `a`.
    QuadRep(&'a Element),
    Positive(&'a PositiveMap),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Equal,
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundSource {
    /// `||L_a||_{r→s} = ||a||_∞` (resp. `||a||²_∞` for `P_a`) when `r <= s`.
    SupNormIdentity,
    /// `||L_a||_{p→1} = ||a||_q`, `||P_a||_{p→1} = ||a²||_q`.
    ToOneIdentity,
    /// `||L_a||_{∞→q} = ||a||_q`, `||P_a||_{∞→q} = ||a²||_q`.
    FromInfIdentity,
    /// `||a||_∞ <= ||L_a||_{r→s}` (resp. `||a||²_∞ <= ||P_a||_{r→s}`).
    SupNormLower,
    /// Corollary bound with constant `2√2`.
    Corollary,
    /// `||L_a||_{r→s} <= 2 C_q ||a||_p` with `1/p = 1/s − 1/r`, `r > s`.
    MixedHolder,
    /// `||P||_{∞→p} = ||P(e)||_p`.
    PositiveFromInf,
    /// `||P||_{p→1} = ||P*(e)||_q`.
    PositiveToOne,
    /// `||P||_{p→∞} <= ||P(e)||_∞`.
    PositiveToInf,
    /// `||P||_{1→p} <= ||P*(e)||_∞`.
    PositiveFromOne,
    /// `||P||_{p→p} <= ||P(e)||_∞^{1−1/p} ||P*(e)||_∞^{1/p}`.
    PositiveDiagonal,
    /// The diagonal bound at `p = r` combined with `||x||_s <= ||x||_r` for `r < s`.
    PositiveDiagonalMonotone,
    /// `||P||_{r→s} <= 2 C_q ||P(e)||_p` for self-adjoint positive `P`, `r > s`.
    PositiveMixedHolder,
    /// `||P(e)||_s / ||e||_r`.
    UnitRatio,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bound {
    pub source: BoundSource,
    pub relation: Relation,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedForm {
    Exact(f64),
    Bounds { lower: f64, upper: f64 },
}

impl ClosedForm {
    pub fn upper(&self) -> f64 {
        match *self {
            ClosedForm::Exact(v) => v,
            ClosedForm::Bounds { upper, .. } => upper,
        }
    }

    pub fn lower(&self) -> f64 {
        match *self {
            ClosedForm::Exact(v) => v,
            ClosedForm::Bounds { lower, .. } => lower,
        }
    }
}

fn exact(source: BoundSource, value: f64) -> Bound {
    Bound { source, relation: Relation::Equal, value }
}

fn upper(source: BoundSource, value: f64) -> Bound {
    Bound { source, relation: Relation::Upper, value }
}

fn lower(source: BoundSource, value: f64) -> Bound {
    Bound { source, relation: Relation::Lower, value }
}

/// `r <= s` as exponents.
fn le(r: ExtExponent, s: ExtExponent) -> bool {
    r.recip() >= s.recip()
}

/// `p` with `1/p = 1/s − 1/r` for `r > s`.
fn holder_gap(r: ExtExponent, s: ExtExponent) -> ExtExponent {
    ExtExponent::from_recip((s.recip() - r.recip()).clamp(0.0, 1.0))
}

/// Every identity and bound that applies to `family` at `(r, s)`.
pub fn closed_form_bounds(family: NormFamily<'_>, r: ExtExponent, s: ExtExponent) -> Result<Vec<Bound>> {
    let mut out = Vec::new();
    match family {
        NormFamily::Lyapunov(a) | NormFamily::QuadRep(a) => {
            // The two families share every formula with `a` replaced by `a²`
            // and `||a||_∞` by `||a||²_∞`.
            let base = match family {
                NormFamily::Lyapunov(_) => a.clone(),
                _ => a.jordan_product(a)?,
            };
            let sup = base.p_norm(ExtExponent::INF);
            out.push(lower(BoundSource::SupNormLower, sup));
            if le(r, s) {
                out.push(exact(BoundSource::SupNormIdentity, sup));
            }
            if s.is_one() {
                out.push(exact(BoundSource::ToOneIdentity, base.p_norm(r.conjugate())));
            }
            if r.is_inf() {
                out.push(exact(BoundSource::FromInfIdentity, base.p_norm(s)));
            }
            if !le(r, s) {
                let ratio = ExtExponent::ratio(r, s)?;
                out.push(upper(BoundSource::Corollary, TWO_SQRT2 * base.p_norm(ratio.conjugate())));
                let p = holder_gap(r, s);
                out.push(upper(
                    BoundSource::MixedHolder,
                    2.0 * cp_constant(p.conjugate()) * base.p_norm(p),
                ));
            }
        }
        NormFamily::Positive(pm) => {
            let map = pm.map();
            let e = Element::unit(map.algebra().clone());
            let pe = map.apply(&e)?;
            let pse = map.adjoint().apply(&e)?;
            let pe_inf = pe.p_norm(ExtExponent::INF);
            let pse_inf = pse.p_norm(ExtExponent::INF);
            out.push(lower(BoundSource::UnitRatio, pe.p_norm(s) / e.p_norm(r)));
            if r.is_inf() {
                out.push(exact(BoundSource::PositiveFromInf, pe.p_norm(s)));
            }
            if s.is_one() {
                out.push(exact(BoundSource::PositiveToOne, pse.p_norm(r.conjugate())));
            }
            if s.is_inf() {
                out.push(upper(BoundSource::PositiveToInf, pe_inf));
            }
            if r.is_one() {
                out.push(upper(BoundSource::PositiveFromOne, pse_inf));
            }
            let diagonal = |p: ExtExponent| pe_inf.powf(1.0 - p.recip()) * pse_inf.powf(p.recip());
            if r == s {
                out.push(upper(BoundSource::PositiveDiagonal, diagonal(r)));
            } else if le(r, s) {
                out.push(upper(BoundSource::PositiveDiagonalMonotone, diagonal(r)));
                out.push(upper(
                    BoundSource::Corollary,
                    TWO_SQRT2 * pe_inf.powf(1.0 - r.recip()) * pse_inf.powf(r.recip()),
                ));
            } else {
                let ratio = ExtExponent::ratio(r, s)?;
                out.push(upper(
                    BoundSource::Corollary,
                    TWO_SQRT2 * pe_inf.powf(1.0 - s.recip()) * pse.p_norm(ratio.conjugate()).powf(s.recip()),
                ));
                if map.is_self_adjoint(1e-12) {
                    let p = holder_gap(r, s);
                    out.push(upper(
                        BoundSource::PositiveMixedHolder,
                        2.0 * cp_constant(p.conjugate()) * pe.p_norm(p),
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// The exact value when an identity covers `(r, s)`, otherwise the tightest
/// available lower and upper bounds.
pub fn closed_form_norm(family: NormFamily<'_>, r: ExtExponent, s: ExtExponent) -> Result<ClosedForm> {
    let bounds = closed_form_bounds(family, r, s)?;
    if let Some(b) = bounds.iter().find(|b| b.relation == Relation::Equal) {
        return Ok(ClosedForm::Exact(b.value));
    }
    let up = bounds
        .iter()
        .filter(|b| b.relation == Relation::Upper)
        .map(|b| b.value)
        .fold(f64::INFINITY, f64::min);
    let lo = bounds
        .iter()
        .filter(|b| b.relation == Relation::Lower)
        .map(|b| b.value)
        .fold(0.0, f64::max);
    if !up.is_finite() {
        return Err(Error::Unsupported(format!("no closed form for ({r}, {s})")));
    }
    Ok(ClosedForm::Bounds { lower: lo, upper: up })
}

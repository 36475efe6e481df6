//! Linear transformations on an algebra, stored as dense matrices over the
//! orthonormal chart. The adjoint is the transpose.

mod closed_form;
mod estimate;
mod peak;

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{decode_sym, encode_sym, Algebra};
use crate::element::{check_same, Element};
use crate::error::{Error, Result};
use crate::random::{random_frame, rng};

pub use closed_form::{
    closed_form_bounds, closed_form_norm, Bound, BoundSource, ClosedForm, NormFamily, Relation,
};
pub use estimate::{
    ascent_chain, op_norm_estimate, start_points, ChainOutcome, ChainStart, EstimatorConfig,
    NormEstimate,
};
pub use peak::{normalize, peak};

#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    alg: Arc<Algebra>,
    matrix: DMatrix<f64>,
}

impl LinearMap {
    pub fn new(alg: Arc<Algebra>, matrix: DMatrix<f64>) -> Result<Self> {
        let d = alg.dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::Shape(format!(
                "{}x{} matrix on algebra {} of dimension {}",
                matrix.nrows(),
                matrix.ncols(),
                alg,
                d
            )));
        }
        Ok(LinearMap { alg, matrix })
    }

    pub fn identity(alg: Arc<Algebra>) -> Self {
        let d = alg.dim();
        LinearMap { alg, matrix: DMatrix::identity(d, d) }
    }

    pub fn zero(alg: Arc<Algebra>) -> Self {
        let d = alg.dim();
        LinearMap { alg, matrix: DMatrix::zeros(d, d) }
    }

    /// Builds the matrix column by column from the images of chart basis vectors.
    pub fn from_action(alg: Arc<Algebra>, mut f: impl FnMut(&Element) -> Element) -> Self {
        let d = alg.dim();
        let mut matrix = DMatrix::zeros(d, d);
        for j in 0..d {
            let mut c = vec![0.0; d];
            c[j] = 1.0;
            let img = f(&Element::from_parts(alg.clone(), c));
            for (i, v) in img.coords().iter().enumerate() {
                matrix[(i, j)] = *v;
            }
        }
        LinearMap { alg, matrix }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn apply_coords(&self, x: &[f64]) -> Vec<f64> {
        let v = &self.matrix * DVector::from_column_slice(x);
        v.as_slice().to_vec()
    }

    pub fn apply(&self, a: &Element) -> Result<Element> {
        check_same(&self.alg, a.algebra())?;
        Ok(Element::from_parts(self.alg.clone(), self.apply_coords(a.coords())))
    }

    pub fn adjoint(&self) -> LinearMap {
        LinearMap { alg: self.alg.clone(), matrix: self.matrix.transpose() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        check_same(&self.alg, &other.alg)?;
        Ok(LinearMap { alg: self.alg.clone(), matrix: &self.matrix * &other.matrix })
    }

    pub fn scale(&self, s: f64) -> LinearMap {
        LinearMap { alg: self.alg.clone(), matrix: &self.matrix * s }
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap> {
        check_same(&self.alg, &other.alg)?;
        Ok(LinearMap { alg: self.alg.clone(), matrix: &self.matrix + &other.matrix })
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().all(|v| *v == 0.0)
    }

    pub fn is_self_adjoint(&self, tol: f64) -> bool {
        let scale = self.matrix.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        (&self.matrix - self.matrix.transpose()).iter().all(|v| v.abs() <= tol * scale)
    }

    pub fn to_record(&self) -> MapRecord {
        MapRecord {
            algebra: self.alg.to_string(),
            matrix: self.matrix.transpose().as_slice().to_vec(),
        }
    }

    pub fn from_record(rec: &MapRecord) -> Result<Self> {
        let alg: Arc<Algebra> = Arc::new(rec.algebra.parse()?);
        let d = alg.dim();
        if rec.matrix.len() != d * d {
            return Err(Error::Shape(format!(
                "map record holds {} entries, expected {}",
                rec.matrix.len(),
                d * d
            )));
        }
        LinearMap::new(alg, DMatrix::from_row_slice(d, d, &rec.matrix))
    }
}

/// Serialized form: the algebra descriptor and the row-major `d×d` matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapRecord {
    pub algebra: String,
    pub matrix: Vec<f64>,
}

/// Lyapunov transformation `L_a(v) = a∘v`.
pub fn lyapunov(a: &Element) -> LinearMap {
    LinearMap::from_action(a.algebra().clone(), |v| {
        a.jordan_product(v).expect("same algebra")
    })
}

/// Quadratic representation `P_a = 2L_a² − L_{a²}`.
pub fn quadratic_rep(a: &Element) -> LinearMap {
    let la = lyapunov(a);
    let la2 = lyapunov(&a.jordan_product(a).expect("same algebra"));
    let m = &la.matrix * &la.matrix * 2.0 - &la2.matrix;
    LinearMap { alg: a.algebra().clone(), matrix: m }
}

/// `X ↦ A X Aᵀ` on a single `SymMatrix(k)` algebra.
pub fn congruence(a: &DMatrix<f64>, alg: &Arc<Algebra>) -> Result<LinearMap> {
    let k = alg
        .single_sym()
        .ok_or_else(|| Error::Shape(format!("congruence needs a single sym factor, got {alg}")))?;
    if a.nrows() != k || a.ncols() != k {
        return Err(Error::Shape(format!("{}x{} matrix for sym:{k}", a.nrows(), a.ncols())));
    }
    Ok(LinearMap::from_action(alg.clone(), |x| {
        let xm = decode_sym(x.coords(), k);
        let xd = DMatrix::from_row_slice(k, k, &xm.data);
        let y = a * xd * a.transpose();
        let mut ym = crate::eigen::SquareMatrix::<f64>::zeros(k);
        ym.data.copy_from_slice(y.transpose().as_slice());
        let mut c = vec![0.0; alg.dim()];
        encode_sym(&ym, &mut c);
        Element::from_parts(alg.clone(), c)
    }))
}

/// Convex combination `Σ wᵢ P_{uᵢ}` of quadratic representations.
///
/// With every `uᵢ` a symmetry (`uᵢ∘uᵢ = e`) and weights summing to one, the
/// result is doubly stochastic.
pub fn doubly_stochastic_mixture(terms: &[(f64, Element)]) -> Result<LinearMap> {
    let (_, first) = terms.first().ok_or_else(|| Error::Domain("empty mixture".into()))?;
    let mut acc = LinearMap::zero(first.algebra().clone());
    for (w, u) in terms {
        acc = acc.add(&quadratic_rep(u).scale(*w))?;
    }
    Ok(acc)
}

/// Random doubly stochastic map: a mixture of `P_u` over random symmetries
/// `u = Σ ±eᵢ` built on random frames.
pub fn random_doubly_stochastic(alg: &Arc<Algebra>, seed: u64) -> LinearMap {
    let mut r = rng(seed);
    let count = 2 + (r.random::<u32>() % 3) as usize;
    let raw: Vec<f64> = (0..count).map(|_| r.random::<f64>() + 0.05).collect();
    let total: f64 = raw.iter().sum();
    let terms: Vec<(f64, Element)> = raw
        .into_iter()
        .map(|w| {
            let frame = random_frame(alg, &mut r);
            let signs: Vec<f64> =
                frame.iter().map(|_| if r.random::<bool>() { 1.0 } else { -1.0 }).collect();
            (w / total, Element::from_spectrum(&frame, &signs).expect("frame is consistent"))
        })
        .collect();
    doubly_stochastic_mixture(&terms).expect("non-empty mixture")
}

/// Linear maps known to be positive (cone preserving).
#[derive(Clone, Debug)]
pub struct PositiveMap {
    map: LinearMap,
    origin: Positivity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Positivity {
    QuadraticRep,
    Congruence,
    DoublyStochastic,
    /// Supplied by the caller without proof.
    Claimed,
}

impl PositiveMap {
    pub fn quadratic_rep(a: &Element) -> Self {
        PositiveMap { map: quadratic_rep(a), origin: Positivity::QuadraticRep }
    }

    pub fn congruence(a: &DMatrix<f64>, alg: &Arc<Algebra>) -> Result<Self> {
        Ok(PositiveMap { map: congruence(a, alg)?, origin: Positivity::Congruence })
    }

    pub fn random_doubly_stochastic(alg: &Arc<Algebra>, seed: u64) -> Self {
        PositiveMap { map: random_doubly_stochastic(alg, seed), origin: Positivity::DoublyStochastic }
    }

    /// Wraps a map the caller asserts to be positive. Nothing is verified; see
    /// [`find_positivity_counterexample`] for a sampling falsifier.
    pub fn assume_positive(map: LinearMap) -> Self {
        PositiveMap { map, origin: Positivity::Claimed }
    }

    pub fn map(&self) -> &LinearMap {
        &self.map
    }

    pub fn origin(&self) -> Positivity {
        self.origin
    }
}

/// Samples `b∘b` and returns the first square whose image has an eigenvalue
/// below `-tol`, if any. Finding none is not a certificate of positivity.
pub fn find_positivity_counterexample(
    map: &LinearMap,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Option<Element> {
    let alg = map.algebra();
    let mut r = rng(seed);
    (0..samples).find_map(|_| {
        let coords = (0..alg.dim()).map(|_| crate::random::gaussian(&mut r)).collect();
        let b = Element::from_parts(alg.clone(), coords);
        let sq = b.jordan_product(&b).expect("same algebra");
        let img = map.apply(&sq).expect("same algebra");
        let min = img.eigenvalues().last().copied().unwrap_or(0.0);
        (min < -tol * (1.0 + sq.chart_norm())).then_some(sq)
    })
}

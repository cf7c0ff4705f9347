//! Arithmetic gates for submanifolds of small codimension: connectivity of
//! the inclusion, the shape-operator trace bound, the classification of
//! admissible submanifold types, and the meridian codimension obstruction
//! for Grassmannians.

use std::fmt;
use std::str::FromStr;

use num_traits::{Float, FloatConst};
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{instantiate, presentations, SpaceClass, SpaceInstance, SpaceKey};
use crate::catalog::{ser_rational, CatalogError};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("submanifold dimension {l} outside 1..{dim}")]
    SubDimension { l: u32, dim: u32 },
    #[error("trace bound needs delta > 0, k > 0 and 0 <= sqrt(delta/k)*r < pi/2")]
    TraceDomain,
    #[error("meridian needs a + b = p, a < p and p <= q (got p={p}, q={q}, a={a}, b={b})")]
    Meridian { p: u32, q: u32, a: u32, b: u32 },
    #[error("unknown field '{0}', expected R, C or H")]
    Field(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

/// Connectivity `2l − k_P − dim + 2` of the inclusion of an `l`-dimensional
/// submanifold.
pub fn connectivity(ambient: &SpaceInstance, l: u32) -> Result<i64, GeomError> {
    if l == 0 || l >= ambient.dim {
        return Err(GeomError::SubDimension { l, dim: ambient.dim });
    }
    Ok(2 * l as i64 - ambient.kp as i64 - ambient.dim as i64 + 2)
}

/// `√(δ/k)·k·cot(π/2 − √(δ/k)·r)`, computed as `√(δ/k)·k·tan(√(δ/k)·r)`.
pub fn trace_bound<T: Float + FloatConst>(delta: T, k: u32, r: T) -> Result<T, GeomError> {
    let kf = T::from(k).ok_or(GeomError::TraceDomain)?;
    if delta.is_nan() || delta <= T::zero() || k == 0 || r.is_nan() || r < T::zero() {
        return Err(GeomError::TraceDomain);
    }
    let s = (delta / kf).sqrt();
    let arg = s * r;
    if arg.is_nan() || arg >= T::FRAC_PI_2() {
        return Err(GeomError::TraceDomain);
    }
    Ok(s * kf * arg.tan())
}

/// Metric rescaling by `λ`: focal radii scale by `√λ`, shape-operator
/// traces by `1/√λ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rescaling<T> {
    pub lambda: T,
}

impl<T: Float + FloatConst> Rescaling<T> {
    /// The factor normalizing `Ric_k >= δ` to `Ric_k >= k`.
    pub fn normalizing(delta: T, k: u32) -> Option<Self> {
        Some(Self { lambda: delta / T::from(k)? })
    }

    pub fn focal_radius(&self, foc: T) -> T {
        self.lambda.sqrt() * foc
    }

    pub fn trace(&self, trace: T) -> T {
        trace / self.lambda.sqrt()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HypothesisSet<T> {
    /// Lower bound `δ` on `Ric_{k_P}`.
    pub delta: T,
    /// `r` with `foc_Q > r`.
    pub focal_r: T,
    pub codim: u32,
}

impl<T: Float + FloatConst> HypothesisSet<T> {
    pub fn check(&self) -> Result<(), String> {
        if self.delta.is_nan() || self.delta <= T::zero() {
            return Err("delta must be positive".into());
        }
        if !(self.focal_r >= T::zero() && self.focal_r < T::FRAC_PI_2()) {
            return Err("focal radius floor r must lie in [0, pi/2)".into());
        }
        if self.codim == 0 {
            return Err("a proper submanifold has codimension at least 1".into());
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "item", rename_all = "snake_case")]
pub enum GateVerdict {
    Item1 { allowed: String },
    Item2 { allowed: String },
    Item3 { allowed: String },
    Item4 { allowed: String },
    NotApplicable { reason: String },
}

impl GateVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            GateVerdict::Item1 { .. } => "Item1",
            GateVerdict::Item2 { .. } => "Item2",
            GateVerdict::Item3 { .. } => "Item3",
            GateVerdict::Item4 { .. } => "Item4",
            GateVerdict::NotApplicable { .. } => "NotApplicable",
        }
    }
}

impl fmt::Display for GateVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateVerdict::Item1 { allowed }
            | GateVerdict::Item2 { allowed }
            | GateVerdict::Item3 { allowed }
            | GateVerdict::Item4 { allowed } => write!(f, "{}: Q ~ {allowed}", self.label()),
            GateVerdict::NotApplicable { reason } => write!(f, "NotApplicable: {reason}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GateReport<T> {
    pub ambient: SpaceKey,
    pub hypotheses: HypothesisSet<T>,
    #[serde(serialize_with = "ser_rational")]
    pub cp: Rational,
    /// Connectivity of the inclusion at the given codimension.
    pub connectivity: i64,
    /// Admissible trace of the shape operator on `k_P`-planes.
    pub trace_bound: Option<T>,
    /// Assumed, not computed: `foc_Q <= π/2` once `codim <= C_P`.
    pub focal_precondition: &'static str,
    pub verdict: GateVerdict,
}

const SPHERES: &str = "S(l_1) x ... x S(l_r), l_i >= 10";

fn symbols(s: &SpaceInstance) -> String {
    let names: Vec<String> = s.cartan_symbols().iter().map(ToString::to_string).collect();
    names.join("/")
}

fn is_grassmannian(key: SpaceKey) -> bool {
    presentations(key).iter().any(|k| matches!(k.class, SpaceClass::AIII | SpaceClass::BDI | SpaceClass::CII))
}

/// Classifies the admissible submanifold types of small codimension in a
/// classical irreducible ambient space.
pub fn theorem_a_gate<T: Float + FloatConst>(ambient: &SpaceInstance, h: &HypothesisSet<T>) -> GateReport<T> {
    let codim = h.codim.min(ambient.dim.saturating_sub(1)).max(1);
    let mut report = GateReport {
        ambient: ambient.key,
        hypotheses: *h,
        cp: ambient.cp,
        connectivity: ambient.sharp(codim),
        trace_bound: trace_bound(h.delta, ambient.kp, h.focal_r).ok(),
        focal_precondition: "foc_Q <= pi/2 for codim Q <= C_P",
        verdict: GateVerdict::NotApplicable { reason: String::new() },
    };
    let not = |reason: String| GateVerdict::NotApplicable { reason };
    report.verdict = if ambient.class().is_exceptional() {
        not("the classification covers classical ambient spaces only".into())
    } else if let Err(reason) = h.check() {
        not(reason)
    } else if !ambient.valid {
        not(format!("invalid dimension: C_P = {} < 1", ambient.cp))
    } else if Rational::from(h.codim as i64) > ambient.cp {
        not(format!("codim {} exceeds C_P = {}", h.codim, ambient.cp))
    } else if report.trace_bound.is_none() {
        not("sqrt(delta/k_P) * r >= pi/2 contradicts foc_Q <= pi/2".into())
    } else {
        classify(ambient)
    };
    report
}

fn classify(ambient: &SpaceInstance) -> GateVerdict {
    let key = ambient.key;
    let head = format!("possibly x {SPHERES}");
    match (key.class, key.params) {
        (SpaceClass::Sphere, _) => GateVerdict::Item1 { allowed: SPHERES.into() },
        (SpaceClass::BDI, [2, q]) if q >= 10 => {
            GateVerdict::Item2 { allowed: format!("BDI(2,q') with q' < {q}, or AIII(1,n) with n >= 5; {head}") }
        }
        (SpaceClass::AIII, [1, _]) if ambient.dim >= 11 => {
            GateVerdict::Item2 { allowed: format!("AIII(1,r) with r >= 5, or BDI(2,q) with q >= 10; {head}") }
        }
        _ if is_grassmannian(key) => {
            GateVerdict::Item3 { allowed: format!("a space of Cartan type {}; {head}", symbols(ambient)) }
        }
        _ => {
            GateVerdict::Item4 { allowed: format!("Q_1 x {SPHERES}, r >= 1, Q_1 of Cartan type {}", symbols(ambient)) }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DivisionAlgebra {
    Real,
    Complex,
    Quaternion,
}

impl DivisionAlgebra {
    pub fn real_dim(&self) -> i64 {
        match self {
            DivisionAlgebra::Real => 1,
            DivisionAlgebra::Complex => 2,
            DivisionAlgebra::Quaternion => 4,
        }
    }

    pub fn grassmannian_class(&self) -> SpaceClass {
        match self {
            DivisionAlgebra::Real => SpaceClass::BDI,
            DivisionAlgebra::Complex => SpaceClass::AIII,
            DivisionAlgebra::Quaternion => SpaceClass::CII,
        }
    }
}

impl fmt::Display for DivisionAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DivisionAlgebra::Real => "R",
            DivisionAlgebra::Complex => "C",
            DivisionAlgebra::Quaternion => "H",
        })
    }
}

impl FromStr for DivisionAlgebra {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "R" => Ok(DivisionAlgebra::Real),
            "C" => Ok(DivisionAlgebra::Complex),
            "H" => Ok(DivisionAlgebra::Quaternion),
            _ => Err(GeomError::Field(s.to_string())),
        }
    }
}

/// Codimension of the meridian `Gr(a, n−2b) × Gr(b, 2b)` in `Gr(p, p+q)`.
pub fn meridian_codim(field: DivisionAlgebra, p: u32, q: u32, a: u32, b: u32) -> Result<i64, GeomError> {
    if a + b != p || a >= p || p > q {
        return Err(GeomError::Meridian { p, q, a, b });
    }
    let (c, p, q, a, b) = (field.real_dim(), p as i64, q as i64, a as i64, b as i64);
    let n = p + q;
    Ok(c * p * q - (c * a * (n - 2 * b - a) + c * b * b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeridianCodim {
    pub a: u32,
    pub b: u32,
    pub codim: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TheoremBStatus {
    Applicable,
    NotApplicable { reason: String },
    PreconditionFailed { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremBReport {
    pub field: DivisionAlgebra,
    pub p: u32,
    pub n: u32,
    pub codim: u32,
    pub index_lower_bound: u32,
    #[serde(serialize_with = "ser_rational")]
    pub cp: Rational,
    pub status: TheoremBStatus,
    pub meridians: Vec<MeridianCodim>,
    pub min_meridian_codim: Option<i64>,
    /// Every meridian with `a < p` has codimension above `C_P`.
    pub obstruction_holds: bool,
    /// Real case: the reduction to a meridian uses a pole of `Q` that is not
    /// a pole of `P`.
    pub pole_argument: bool,
    /// Real case: the meridian formula is taken with `c = 1` by analogy.
    pub analogy_derived: bool,
}

/// Meridian sweep for `Gr(field, p, p+q)`: every `(a, p−a)` with `a < p`,
/// the smallest codimension, and whether all exceed `C_P`.
pub fn meridian_sweep(field: DivisionAlgebra, p: u32, q: u32) -> Result<(Vec<MeridianCodim>, Rational), GeomError> {
    let ambient = instantiate(field.grassmannian_class(), &[p, q])?;
    let meridians = (0..p)
        .map(|a| Ok(MeridianCodim { a, b: p - a, codim: meridian_codim(field, p, q, a, p - a)? }))
        .collect::<Result<Vec<_>, GeomError>>()?;
    Ok((meridians, ambient.cp))
}

/// Checks the codimension window `index <= codim <= C_P` for totally
/// geodesic submanifolds of `Gr(field, p, n)` and the meridian obstruction.
pub fn theorem_b_check(field: DivisionAlgebra, p: u32, n: u32, codim: u32, index_lower_bound: u32) -> TheoremBReport {
    let real = field == DivisionAlgebra::Real;
    let mut report = TheoremBReport {
        field,
        p,
        n,
        codim,
        index_lower_bound,
        cp: Rational::from(0),
        status: TheoremBStatus::Applicable,
        meridians: Vec::new(),
        min_meridian_codim: None,
        obstruction_holds: false,
        pole_argument: real,
        analogy_derived: real,
    };
    if p < 3 || 2 * p >= n {
        report.status = TheoremBStatus::PreconditionFailed { reason: format!("needs 3 <= p < n/2, got p={p}, n={n}") };
        return report;
    }
    let (meridians, cp) = match meridian_sweep(field, p, n - p) {
        Ok(x) => x,
        Err(e) => {
            report.status = TheoremBStatus::PreconditionFailed { reason: e.to_string() };
            return report;
        }
    };
    report.cp = cp;
    report.min_meridian_codim = meridians.iter().map(|m| m.codim).min();
    report.obstruction_holds = meridians.iter().all(|m| Rational::from(m.codim) > cp);
    report.meridians = meridians;
    let c = Rational::from(codim as i64);
    if codim < index_lower_bound {
        report.status = TheoremBStatus::NotApplicable {
            reason: format!("codim {codim} below the index bound {index_lower_bound}"),
        };
    } else if c > cp {
        report.status = TheoremBStatus::NotApplicable { reason: format!("codim {codim} exceeds C_P = {cp}") };
    }
    report
}

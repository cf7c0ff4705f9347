//! Invariants of compact symmetric spaces: restricted root systems and k_P,
//! the catalog of irreducible spaces, tabulated homotopy groups through
//! degree 10, degree-9 recognition of Cartan types, and the arithmetic gates
//! for submanifolds of small codimension.

pub mod abelian;
pub mod catalog;
pub mod geom;
pub mod homotopy;
pub mod notation;
pub mod recognize;
pub mod reference;
pub mod rootsys;

/// Exact rational numbers used for codimension budgets.
pub type Rational = num_rational::Ratio<i64>;

/// Theorem-gate hypotheses in double precision.
pub type Hypotheses = geom::HypothesisSet<f64>;

/// Theorem-gate hypotheses in single precision.
pub type Hypotheses32 = geom::HypothesisSet<f32>;

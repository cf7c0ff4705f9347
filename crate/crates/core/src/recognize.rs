//! Telling spaces apart by their low homotopy groups: pairwise verdicts, the
//! irreducible catalog scan with its single blind spot, and the search for
//! products whose rank data match a given space.

use std::cmp::Reverse;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::abelian::{
    compatible, AbelianGroup, CoefficientField, Compatibility, PartialAbelianGroup, RankInterval, Witness,
};
use crate::catalog::{canonical_instance, enumerate_catalog, ProductSpace, SpaceClass, SpaceInstance, SpaceKey};
use crate::homotopy::{Database, HomotopyError, HomotopyProfile};

pub const RECOGNITION_DEGREE: u32 = 9;
pub const DEFAULT_MAX_CANDIDATES: usize = 1_000_000;

const FIELDS: usize = CoefficientField::STANDARD.len();

#[derive(Debug, Error)]
pub enum RecognizeError {
    #[error(transparent)]
    Homotopy(#[from] HomotopyError),
    #[error("degree {0} outside 1..={RECOGNITION_DEGREE}")]
    Degree(u32),
    #[error("search visited more than {cap} candidate products; raise the cap to continue")]
    CandidateCap { cap: usize },
}

/// Rank intervals of `π_k ⊗ F` for each degree and each standard field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankVector {
    pub degrees: Vec<[RankInterval; FIELDS]>,
}

impl RankVector {
    pub fn of(profile: &HomotopyProfile) -> Self {
        let degrees = profile.degrees.iter().map(|g| CoefficientField::STANDARD.map(|f| g.rank(f))).collect();
        RankVector { degrees }
    }

    fn cells(&self) -> impl Iterator<Item = &RankInterval> {
        self.degrees.iter().flatten()
    }
}

/// What separates two profiles in a given degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// Ranks over `field` cannot agree.
    Rank(Witness),
    /// Both groups are known exactly and differ although every rank agrees.
    Torsion { left: AbelianGroup, right: AbelianGroup },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockingCell {
    pub degree: u32,
    pub left: PartialAbelianGroup,
    pub right: PartialAbelianGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Distinguishable { degree: u32, evidence: Evidence },
    Indistinguishable { through: u32 },
    Undetermined { blocking: Vec<BlockingCell> },
}

impl Verdict {
    pub fn is_distinguishable(&self) -> bool {
        matches!(self, Verdict::Distinguishable { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Distinguishable { degree, evidence: Evidence::Rank(w) } => {
                write!(f, "Distinguishable({degree}, {}): rank {} vs {}", w.field, w.left, w.right)
            }
            Verdict::Distinguishable { degree, evidence: Evidence::Torsion { left, right } } => {
                write!(f, "Distinguishable({degree}, torsion): {left} vs {right}")
            }
            Verdict::Indistinguishable { through } => write!(f, "Indistinguishable({through})"),
            Verdict::Undetermined { blocking } => {
                let cells: Vec<String> =
                    blocking.iter().map(|c| format!("pi_{}: {} vs {}", c.degree, c.left, c.right)).collect();
                write!(f, "Undetermined({})", cells.join("; "))
            }
        }
    }
}

/// Compares two profiles degree by degree, lowest degree first.
pub fn compare_profiles(a: &HomotopyProfile, b: &HomotopyProfile) -> Verdict {
    let through = a.max_degree().min(b.max_degree());
    let mut blocking = Vec::new();
    for k in 1..=through {
        let (x, y) = (a.pi(k), b.pi(k));
        match compatible(x, y) {
            Compatibility::Incompatible(w) => {
                return Verdict::Distinguishable { degree: k, evidence: Evidence::Rank(w) };
            }
            Compatibility::Equal => {}
            Compatibility::PossiblyEqual => match (x, y) {
                (PartialAbelianGroup::Exact(l), PartialAbelianGroup::Exact(r)) => {
                    return Verdict::Distinguishable {
                        degree: k,
                        evidence: Evidence::Torsion { left: l.clone(), right: r.clone() },
                    };
                }
                _ => blocking.push(BlockingCell { degree: k, left: x.clone(), right: y.clone() }),
            },
        }
    }
    if blocking.is_empty() {
        Verdict::Indistinguishable { through }
    } else {
        Verdict::Undetermined { blocking }
    }
}

pub fn distinguish(
    db: &Database,
    a: &ProductSpace,
    b: &ProductSpace,
    max_degree: u32,
) -> Result<Verdict, RecognizeError> {
    Ok(compare_profiles(&db.profile(a, max_degree)?, &db.profile(b, max_degree)?))
}

/// `CP^n` with `n >= 5`, or `Gr(R,2,q)` with `q >= 10`.
fn blind_spot_side(key: SpaceKey) -> Option<bool> {
    match (key.class, key.params) {
        (SpaceClass::AIII, [1, n]) if n >= 5 => Some(true),
        (SpaceClass::BDI, [2, q]) if q >= 10 => Some(false),
        _ => None,
    }
}

/// Whether `{a, b}` is a projective space paired with an oriented real
/// Grassmannian of 2-planes, the one pair the scan expects to agree.
pub fn is_blind_spot(a: SpaceKey, b: SpaceKey) -> bool {
    matches!((blind_spot_side(a), blind_spot_side(b)), (Some(x), Some(y)) if x != y)
}

#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub left: SpaceKey,
    pub right: SpaceKey,
    pub verdict: Verdict,
}

impl fmt::Display for PairReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} vs {}: {}", self.left, self.right, self.verdict)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub max_dim: u32,
    pub spaces: usize,
    pub pairs: usize,
    pub distinguishable: usize,
    /// Blind-spot pairs, each expected to be indistinguishable through degree 9.
    pub blind_spot: Vec<PairReport>,
    pub undetermined: Vec<PairReport>,
    /// Pairs contradicting the expected outcome.
    pub violations: Vec<PairReport>,
}

impl ScanReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compares every pair of valid-dimension irreducible spaces of different
/// Cartan types with `dim <= max_dim` through degree 9.
pub fn corollary1_scan(db: &Database, max_dim: u32) -> Result<ScanReport, RecognizeError> {
    let spaces: Vec<SpaceInstance> = enumerate_catalog(max_dim).into_iter().filter(|s| s.valid).collect();
    let profiles = spaces
        .iter()
        .map(|s| db.profile(&ProductSpace::single(s.clone()), RECOGNITION_DEGREE))
        .collect::<Result<Vec<_>, _>>()?;
    let pairs: Vec<PairReport> = (0..spaces.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let (spaces, profiles) = (&spaces, &profiles);
            (i + 1..spaces.len()).filter(move |&j| !spaces[i].same_cartan_type(&spaces[j])).map(move |j| PairReport {
                left: spaces[i].key,
                right: spaces[j].key,
                verdict: compare_profiles(&profiles[i], &profiles[j]),
            })
        })
        .collect();
    let mut report = ScanReport {
        max_dim,
        spaces: spaces.len(),
        pairs: pairs.len(),
        distinguishable: pairs.iter().filter(|p| p.verdict.is_distinguishable()).count(),
        blind_spot: Vec::new(),
        undetermined: Vec::new(),
        violations: Vec::new(),
    };
    for p in pairs {
        let blind = is_blind_spot(p.left, p.right);
        let expected = if blind {
            p.verdict == Verdict::Indistinguishable { through: RECOGNITION_DEGREE }
        } else {
            p.verdict.is_distinguishable()
        };
        if matches!(p.verdict, Verdict::Undetermined { .. }) {
            report.undetermined.push(p.clone());
        }
        if !expected {
            report.violations.push(p.clone());
        }
        if blind {
            report.blind_spot.push(p);
        }
    }
    Ok(report)
}

struct Candidate {
    space: SpaceInstance,
    lo: Vec<u32>,
    hi: Vec<Option<u32>>,
}

struct Search<'a> {
    candidates: &'a [Candidate],
    target: &'a RankVector,
    budget: u32,
    cap: usize,
    visited: &'a AtomicUsize,
}

impl Search<'_> {
    fn fits(&self, lo: &[u32], hi: &[Option<u32>]) -> bool {
        self.target.cells().zip(lo.iter().zip(hi)).all(|(t, (&l, &h))| {
            let sum = RankInterval { lo: l, hi: h };
            !t.is_disjoint(&sum)
        })
    }

    fn dfs(
        &self,
        start: usize,
        chosen: &mut Vec<usize>,
        lo: &mut Vec<u32>,
        hi: &mut Vec<Option<u32>>,
        dim: u32,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<(), RecognizeError> {
        if self.visited.fetch_add(1, Ordering::Relaxed) >= self.cap {
            return Err(RecognizeError::CandidateCap { cap: self.cap });
        }
        if self.fits(lo, hi) {
            out.push(chosen.clone());
        }
        for (i, c) in self.candidates.iter().enumerate().skip(start) {
            if dim + c.space.dim > self.budget {
                continue;
            }
            let new_lo: Vec<u32> = lo.iter().zip(&c.lo).map(|(a, b)| a + b).collect();
            let over = self.target.cells().zip(&new_lo).any(|(t, &l)| t.hi.is_some_and(|h| l > h));
            if over {
                continue;
            }
            let new_hi: Vec<Option<u32>> = hi.iter().zip(&c.hi).map(|(a, b)| a.zip(*b).map(|(x, y)| x + y)).collect();
            let (old_lo, old_hi) = (std::mem::replace(lo, new_lo), std::mem::replace(hi, new_hi));
            chosen.push(i);
            let r = self.dfs(i, chosen, lo, hi, dim + c.space.dim, out);
            chosen.pop();
            *lo = old_lo;
            *hi = old_hi;
            r?;
        }
        Ok(())
    }
}

/// Products of catalog spaces whose rank data through `max_degree` fit those
/// of `ambient` within its dimension, filtered by degreewise compatibility of
/// the full groups. Sorted by total dimension (descending), then by factors.
pub fn decompose(
    db: &Database,
    ambient: &SpaceInstance,
    max_degree: u32,
    max_candidates: usize,
) -> Result<Vec<ProductSpace>, RecognizeError> {
    if !(1..=RECOGNITION_DEGREE).contains(&max_degree) {
        return Err(RecognizeError::Degree(max_degree));
    }
    let ambient = canonical_instance(ambient);
    let target_profile = db.profile(&ProductSpace::single(ambient.clone()), max_degree)?;
    let target = RankVector::of(&target_profile);
    let mut candidates = Vec::new();
    for space in enumerate_catalog(ambient.dim) {
        let rv = RankVector::of(&db.profile(&ProductSpace::single(space.clone()), max_degree)?);
        let lo: Vec<u32> = rv.cells().map(|r| r.lo).collect();
        let hi: Vec<Option<u32>> = rv.cells().map(|r| r.hi).collect();
        if target.cells().zip(&lo).all(|(t, &l)| t.hi.is_none_or(|h| l <= h)) {
            candidates.push(Candidate { space, lo, hi });
        }
    }
    let width = target.cells().count();
    let visited = AtomicUsize::new(0);
    let search = Search {
        candidates: &candidates,
        target: &target,
        budget: ambient.dim,
        cap: max_candidates,
        visited: &visited,
    };
    let found: Vec<Vec<Vec<usize>>> = (0..candidates.len())
        .into_par_iter()
        .map(|i| {
            let c = &candidates[i];
            let (mut lo, mut hi) = (c.lo.clone(), c.hi.clone());
            debug_assert_eq!(lo.len(), width);
            let mut out = Vec::new();
            search.dfs(i, &mut vec![i], &mut lo, &mut hi, c.space.dim, &mut out)?;
            Ok(out)
        })
        .collect::<Result<_, RecognizeError>>()?;
    let mut results = Vec::new();
    for choice in found.into_iter().flatten() {
        let factors = choice.iter().map(|&i| candidates[i].space.clone()).collect();
        let product = ProductSpace::new(factors).expect("nonempty choice");
        let profile = db.profile(&product, max_degree)?;
        let fits = (1..=max_degree)
            .all(|k| !matches!(compatible(profile.pi(k), target_profile.pi(k)), Compatibility::Incompatible(_)));
        if fits {
            results.push(product);
        }
    }
    results.sort_by(|a, b| {
        let keys = |p: &ProductSpace| p.factors.iter().map(|f| f.key).collect::<Vec<_>>();
        (Reverse(a.total_dim()), keys(a)).cmp(&(Reverse(b.total_dim()), keys(b)))
    });
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::{parse_irreducible, parse_space};

    fn db() -> &'static Database {
        Database::builtin()
    }

    fn verdict(a: &str, b: &str) -> Verdict {
        distinguish(db(), &parse_space(a).unwrap(), &parse_space(b).unwrap(), 9).unwrap()
    }

    #[test]
    fn pairwise_verdicts() {
        assert_eq!(verdict("CP(5)", "Gr(R,2,12)"), Verdict::Indistinguishable { through: 9 });
        match verdict("CP(5)", "Gr(R,2,11)") {
            Verdict::Distinguishable { degree: 9, evidence: Evidence::Rank(w) } => {
                assert_eq!(w.field, CoefficientField::Prime(2));
            }
            v => panic!("{v}"),
        }
        match verdict("AI(12)", "AII(6)") {
            Verdict::Distinguishable { degree: 2, evidence: Evidence::Rank(w) } => {
                assert_eq!(w.field, CoefficientField::Prime(2));
            }
            v => panic!("{v}"),
        }
        match verdict("FII", "CP(8)") {
            Verdict::Distinguishable { degree: 2, evidence: Evidence::Rank(w) } => {
                assert_eq!(w.field, CoefficientField::Rational);
            }
            v => panic!("{v}"),
        }
        assert_eq!(verdict("AI(11)", "AI(11)"), Verdict::Indistinguishable { through: 9 });
        match verdict("EII", "EII") {
            Verdict::Undetermined { blocking } => {
                assert_eq!(blocking.iter().map(|c| c.degree).collect::<Vec<_>>(), [3, 9]);
            }
            v => panic!("{v}"),
        }
    }

    #[test]
    fn torsion_only_differences_are_reported() {
        match verdict("S(3)", "SU(3)") {
            Verdict::Distinguishable { degree: 4, .. } => {}
            v => panic!("{v}"),
        }
        let a = HomotopyProfile { space: parse_space("S(3)").unwrap(), degrees: vec!["Z_4".parse().unwrap()] };
        let b = HomotopyProfile { space: parse_space("S(3)").unwrap(), degrees: vec!["Z_2".parse().unwrap()] };
        assert!(matches!(
            compare_profiles(&a, &b),
            Verdict::Distinguishable { evidence: Evidence::Torsion { .. }, .. }
        ));
    }

    #[test]
    fn undetermined_lists_blocking_cells() {
        let a = HomotopyProfile {
            space: parse_space("S(3)").unwrap(),
            degrees: vec!["0".parse().unwrap(), "f".parse().unwrap()],
        };
        let b = HomotopyProfile {
            space: parse_space("S(3)").unwrap(),
            degrees: vec!["0".parse().unwrap(), "Z_2".parse().unwrap()],
        };
        match compare_profiles(&a, &b) {
            Verdict::Undetermined { blocking } => assert_eq!(blocking.len(), 1),
            v => panic!("{v}"),
        }
    }

    #[test]
    fn blind_spot_membership() {
        let cp = |n| SpaceKey::new(SpaceClass::AIII, &[1, n]);
        let gr = |q| SpaceKey::new(SpaceClass::BDI, &[2, q]);
        assert!(is_blind_spot(cp(5), gr(10)));
        assert!(is_blind_spot(gr(30), cp(9)));
        assert!(!is_blind_spot(cp(4), gr(10)));
        assert!(!is_blind_spot(cp(5), gr(9)));
        assert!(!is_blind_spot(cp(5), cp(6)));
    }

    #[test]
    fn small_scan_counts_the_blind_spot() {
        let r = corollary1_scan(db(), 40).unwrap();
        assert_eq!(r.blind_spot.len(), 15 * 11);
        assert!(r.blind_spot.iter().all(|p| p.verdict == Verdict::Indistinguishable { through: 9 }));
    }

    fn heads(results: &[ProductSpace]) -> Vec<String> {
        results.iter().map(ProductSpace::to_string).collect()
    }

    #[test]
    fn decompose_sphere() {
        let s12 = parse_irreducible("S(12)").unwrap();
        let r = decompose(db(), &s12, 9, DEFAULT_MAX_CANDIDATES).unwrap();
        assert_eq!(heads(&r), ["S(12)", "S(11)", "S(10)"]);
    }

    #[test]
    fn decompose_grassmannian_admits_projective_space() {
        let gr = parse_irreducible("Gr(R,2,12)").unwrap();
        let r = decompose(db(), &gr, 9, DEFAULT_MAX_CANDIDATES).unwrap();
        let names = heads(&r);
        assert!(names.contains(&"BDI(2,10)".to_string()));
        assert!(names.contains(&"AIII(1,5)".to_string()));
    }

    #[test]
    fn decompose_is_deterministic_and_capped() {
        let ai = parse_irreducible("AI(11)").unwrap();
        let r1 = decompose(db(), &ai, 9, DEFAULT_MAX_CANDIDATES).unwrap();
        let r2 = decompose(db(), &ai, 9, DEFAULT_MAX_CANDIDATES).unwrap();
        assert_eq!(r1, r2);
        assert!(r1.iter().any(|p| p.to_string() == "AI(11)"));
        for p in &r1 {
            let head = &p.factors.iter().find(|f| !f.is_sphere()).expect("a non-sphere factor").key;
            assert_eq!(head.class, SpaceClass::AI, "{p}");
        }
        assert!(matches!(decompose(db(), &ai, 9, 10), Err(RecognizeError::CandidateCap { cap: 10 })));
        assert!(decompose(db(), &ai, 10, DEFAULT_MAX_CANDIDATES).is_err());
    }
}

//! Irreducible simply-connected symmetric spaces of compact type, their
//! restricted root data and the derived invariants d_P, k_P and C_P.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::rootsys::{kp_enumerated, Multiplicities, RootError, RootSystemType};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpaceClass {
    Sphere,
    SU,
    Spin,
    Sp,
    AI,
    AII,
    AIII,
    BDI,
    CI,
    CII,
    DIII,
    E6,
    E7,
    E8,
    F4,
    G2,
    EI,
    EII,
    EIII,
    EIV,
    EV,
    EVI,
    EVII,
    EVIII,
    EIX,
    FI,
    FII,
    G,
}

/// Cartan symbols; two spaces share a Cartan type when their presentations
/// share a symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CartanSymbol {
    A,
    AI,
    AII,
    AIII,
    BD,
    BDI,
    C,
    CI,
    CII,
    DIII,
    E6,
    E7,
    E8,
    F4,
    G2,
    EI,
    EII,
    EIII,
    EIV,
    EV,
    EVI,
    EVII,
    EVIII,
    EIX,
    FI,
    FII,
    G,
}

impl fmt::Display for CartanSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl SpaceClass {
    pub const ALL: [SpaceClass; 28] = [
        Self::Sphere,
        Self::SU,
        Self::Spin,
        Self::Sp,
        Self::AI,
        Self::AII,
        Self::AIII,
        Self::BDI,
        Self::CI,
        Self::CII,
        Self::DIII,
        Self::E6,
        Self::E7,
        Self::E8,
        Self::F4,
        Self::G2,
        Self::EI,
        Self::EII,
        Self::EIII,
        Self::EIV,
        Self::EV,
        Self::EVI,
        Self::EVII,
        Self::EVIII,
        Self::EIX,
        Self::FI,
        Self::FII,
        Self::G,
    ];

    /// Name in the space-spec grammar.
    pub fn name(&self) -> &'static str {
        match self {
            Self::Sphere => "S",
            Self::SU => "SU",
            Self::Spin => "Spin",
            Self::Sp => "Sp",
            Self::AI => "AI",
            Self::AII => "AII",
            Self::AIII => "AIII",
            Self::BDI => "BDI",
            Self::CI => "CI",
            Self::CII => "CII",
            Self::DIII => "DIII",
            Self::E6 => "E6",
            Self::E7 => "E7",
            Self::E8 => "E8",
            Self::F4 => "F4",
            Self::G2 => "G2",
            Self::EI => "EI",
            Self::EII => "EII",
            Self::EIII => "EIII",
            Self::EIV => "EIV",
            Self::EV => "EV",
            Self::EVI => "EVI",
            Self::EVII => "EVII",
            Self::EVIII => "EVIII",
            Self::EIX => "EIX",
            Self::FI => "FI",
            Self::FII => "FII",
            Self::G => "G",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }

    pub fn arity(&self) -> usize {
        match self {
            Self::AIII | Self::BDI | Self::CII => 2,
            c if c.is_exceptional() => 0,
            _ => 1,
        }
    }

    pub fn is_exceptional(&self) -> bool {
        *self >= Self::E6
    }

    pub fn is_group(&self) -> bool {
        matches!(self, Self::SU | Self::Spin | Self::Sp | Self::E6 | Self::E7 | Self::E8 | Self::F4 | Self::G2)
    }

    pub fn cartan_symbol(&self) -> CartanSymbol {
        use CartanSymbol as S;
        match self {
            Self::Sphere | Self::BDI => S::BDI,
            Self::SU => S::A,
            Self::Spin => S::BD,
            Self::Sp => S::C,
            Self::AI => S::AI,
            Self::AII => S::AII,
            Self::AIII => S::AIII,
            Self::CI => S::CI,
            Self::CII => S::CII,
            Self::DIII => S::DIII,
            Self::E6 => S::E6,
            Self::E7 => S::E7,
            Self::E8 => S::E8,
            Self::F4 => S::F4,
            Self::G2 => S::G2,
            Self::EI => S::EI,
            Self::EII => S::EII,
            Self::EIII => S::EIII,
            Self::EIV => S::EIV,
            Self::EV => S::EV,
            Self::EVI => S::EVI,
            Self::EVII => S::EVII,
            Self::EVIII => S::EVIII,
            Self::EIX => S::EIX,
            Self::FI => S::FI,
            Self::FII => S::FII,
            Self::G => S::G,
        }
    }
}

impl fmt::Display for SpaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Class plus parameters; unused parameter slots are zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpaceKey {
    pub class: SpaceClass,
    pub params: [u32; 2],
}

impl SpaceKey {
    pub fn new(class: SpaceClass, params: &[u32]) -> Self {
        let mut p = [0; 2];
        for (slot, v) in p.iter_mut().zip(params) {
            *slot = *v;
        }
        Self { class, params: p }
    }

    pub fn args(&self) -> &[u32] {
        &self.params[..self.class.arity()]
    }

    /// Quotient description such as `SU(11)/SO(11)`.
    pub fn quotient_name(&self) -> String {
        let [a, b] = self.params;
        match self.class {
            SpaceClass::Sphere => format!("S^{a}"),
            SpaceClass::SU => format!("SU({a})"),
            SpaceClass::Spin => format!("Spin({a})"),
            SpaceClass::Sp => format!("Sp({a})"),
            SpaceClass::AI => format!("SU({a})/SO({a})"),
            SpaceClass::AII => format!("SU({})/Sp({a})", 2 * a),
            SpaceClass::AIII if a == 1 => format!("CP^{b}"),
            SpaceClass::AIII => format!("SU({})/S(U({a})U({b}))", a + b),
            SpaceClass::BDI => format!("SO({})/SO({a})SO({b})", a + b),
            SpaceClass::CI => format!("Sp({a})/U({a})"),
            SpaceClass::CII if a == 1 => format!("HP^{b}"),
            SpaceClass::CII => format!("Sp({})/Sp({a})Sp({b})", a + b),
            SpaceClass::DIII => format!("SO({})/U({a})", 2 * a),
            c => c.name().to_string(),
        }
    }
}

impl fmt::Display for SpaceKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.class.name())?;
        let args = self.args();
        if !args.is_empty() {
            let parts: Vec<String> = args.iter().map(u32::to_string).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

impl Serialize for SpaceKey {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RootData {
    #[serde(rename = "type")]
    pub ty: RootSystemType,
    pub multiplicities: Multiplicities,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SpaceInstance {
    pub key: SpaceKey,
    pub dim: u32,
    pub rank: u32,
    /// Absent for rank one, where k_P = 1 without enumeration.
    pub root: Option<RootData>,
    pub kp: u32,
    pub dp: u32,
    #[serde(serialize_with = "ser_rational")]
    pub cp: Rational,
    pub valid: bool,
}

pub(crate) fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("{class} expects {expected} parameter(s), got {got}")]
    Arity { class: SpaceClass, expected: usize, got: usize },
    #[error("{key} violates {condition}")]
    Constraint { key: SpaceKey, condition: &'static str },
    #[error("a product needs at least one factor")]
    EmptyProduct,
    #[error(transparent)]
    Root(#[from] RootError),
}

/// Printed root data and invariants of the exceptional spaces:
/// class, root system, multiplicities, dim, d_P, k_P.
pub const EXCEPTIONAL_TABLE: [(SpaceClass, RootSystemType, [u32; 3], u32, u32, u32); 17] = {
    use RootSystemType as R;
    use SpaceClass as S;
    [
        (S::E6, R::E6, [0, 2, 0], 78, 32, 46),
        (S::E7, R::E7, [0, 2, 0], 133, 54, 79),
        (S::E8, R::E8, [0, 2, 0], 248, 114, 134),
        (S::EI, R::E6, [0, 1, 0], 42, 16, 26),
        (S::EII, R::F4, [2, 1, 0], 40, 21, 19),
        (S::EIII, R::BC(2), [8, 6, 1], 32, 21, 11),
        (S::EIV, R::A(2), [0, 8, 0], 26, 16, 10),
        (S::EV, R::E7, [0, 1, 0], 70, 27, 43),
        (S::EVI, R::F4, [4, 1, 0], 64, 33, 31),
        (S::EVII, R::C(3), [8, 1, 0], 54, 27, 27),
        (S::EVIII, R::E8, [0, 1, 0], 128, 57, 71),
        (S::EIX, R::F4, [8, 1, 0], 112, 57, 55),
        (S::F4, R::F4, [2, 2, 0], 52, 30, 22),
        (S::FI, R::F4, [1, 1, 0], 28, 15, 13),
        (S::FII, R::BC(1), [8, 0, 7], 16, 15, 1),
        (S::G2, R::G2, [2, 2, 0], 14, 10, 4),
        (S::G, R::G2, [1, 1, 0], 8, 5, 3),
    ]
};

fn classical_root_data(key: SpaceKey) -> (u32, Option<RootData>) {
    use RootSystemType as R;
    let [a, b] = key.params;
    let rd = |ty: RootSystemType, s: u32, l: u32, x: u32| {
        (ty.rank(), Some(RootData { ty, multiplicities: Multiplicities::new(s, l, x) }))
    };
    match key.class {
        SpaceClass::Sphere => (1, None),
        SpaceClass::SU | SpaceClass::AI | SpaceClass::AII if a == 2 => (1, None),
        SpaceClass::SU => rd(R::A(a - 1), 0, 2, 0),
        SpaceClass::AI => rd(R::A(a - 1), 0, 1, 0),
        SpaceClass::AII => rd(R::A(a - 1), 0, 4, 0),
        SpaceClass::Spin if a == 3 => (1, None),
        SpaceClass::Spin if a == 6 => rd(R::A(3), 0, 2, 0),
        SpaceClass::Spin if a % 2 == 1 => rd(R::B(a / 2), 2, 2, 0),
        SpaceClass::Spin => rd(R::D(a / 2), 0, 2, 0),
        SpaceClass::Sp | SpaceClass::CI if a == 1 => (1, None),
        SpaceClass::Sp => rd(R::C(a), 2, 2, 0),
        SpaceClass::CI => rd(R::C(a), 1, 1, 0),
        SpaceClass::AIII | SpaceClass::BDI | SpaceClass::CII if a == 1 => (1, None),
        SpaceClass::AIII if a == b => rd(R::C(a), 2, 1, 0),
        SpaceClass::AIII => rd(R::BC(a), 2 * (b - a), 2, 1),
        SpaceClass::BDI if a == 3 && b == 3 => rd(R::A(3), 0, 1, 0),
        SpaceClass::BDI if a == b => rd(R::D(a), 0, 1, 0),
        SpaceClass::BDI => rd(R::B(a), b - a, 1, 0),
        SpaceClass::CII if a == b => rd(R::C(a), 4, 3, 0),
        SpaceClass::CII => rd(R::BC(a), 4 * (b - a), 4, 3),
        SpaceClass::DIII if a <= 3 => (1, None),
        SpaceClass::DIII if a % 2 == 0 => rd(R::C(a / 2), 4, 1, 0),
        SpaceClass::DIII => rd(R::BC(a / 2), 4, 4, 1),
        _ => unreachable!("exceptional classes use the printed table"),
    }
}

fn classical_dim(key: SpaceKey) -> u32 {
    let [a, b] = key.params;
    match key.class {
        SpaceClass::Sphere => a,
        SpaceClass::SU => a * a - 1,
        SpaceClass::Spin => a * (a - 1) / 2,
        SpaceClass::Sp => a * (2 * a + 1),
        SpaceClass::AI => (a - 1) * (a + 2) / 2,
        SpaceClass::AII => (a - 1) * (2 * a + 1),
        SpaceClass::AIII => 2 * a * b,
        SpaceClass::BDI => a * b,
        SpaceClass::CI => a * (a + 1),
        SpaceClass::CII => 4 * a * b,
        SpaceClass::DIII => a * (a - 1),
        _ => unreachable!("exceptional classes use the printed table"),
    }
}

fn check_constraints(key: SpaceKey) -> Result<(), CatalogError> {
    let [a, b] = key.params;
    let (ok, condition) = match key.class {
        SpaceClass::Sphere => (a >= 2, "n >= 2"),
        SpaceClass::SU | SpaceClass::AI | SpaceClass::AII | SpaceClass::DIII => (a >= 2, "n >= 2"),
        SpaceClass::Spin => (a >= 3 && a != 4, "n >= 3, n != 4"),
        SpaceClass::Sp | SpaceClass::CI => (a >= 1, "n >= 1"),
        SpaceClass::AIII | SpaceClass::CII => (1 <= a && a <= b, "1 <= p <= q"),
        SpaceClass::BDI => {
            (1 <= a && a <= b && (a, b) != (1, 1) && (a, b) != (2, 2), "1 <= p <= q, (p,q) not (1,1) or (2,2)")
        }
        _ => (true, ""),
    };
    if ok {
        Ok(())
    } else {
        Err(CatalogError::Constraint { key, condition })
    }
}

fn finish(key: SpaceKey, dim: u32, rank: u32, root: Option<RootData>) -> Result<SpaceInstance, CatalogError> {
    let kp = match &root {
        None => 1,
        Some(rd) => kp_enumerated(rd.ty, &rd.multiplicities)?.kp as u32,
    };
    let dp = dim - kp;
    let cp = Rational::new(i64::from(dp), 2) - 4;
    Ok(SpaceInstance { key, dim, rank, root, kp, dp, cp, valid: cp >= Rational::from(1) })
}

/// Builds an instance with all derived invariants. Presentations are kept
/// as given; see [`canonical`] for isomorphism classes.
pub fn instantiate(class: SpaceClass, params: &[u32]) -> Result<SpaceInstance, CatalogError> {
    if params.len() != class.arity() {
        return Err(CatalogError::Arity { class, expected: class.arity(), got: params.len() });
    }
    let key = SpaceKey::new(class, params);
    if class.is_exceptional() {
        let &(_, ty, [s, l, x], dim, _, _) =
            EXCEPTIONAL_TABLE.iter().find(|row| row.0 == class).expect("every exceptional class is tabulated");
        let multiplicities = Multiplicities::new(s, l, x);
        let root = (ty.rank() > 1).then_some(RootData { ty, multiplicities });
        return finish(key, dim, ty.rank(), root);
    }
    check_constraints(key)?;
    let (rank, root) = classical_root_data(key);
    finish(key, classical_dim(key), rank, root)
}

pub fn instantiate_key(key: SpaceKey) -> Result<SpaceInstance, CatalogError> {
    instantiate(key.class, key.args())
}

impl SpaceInstance {
    pub fn class(&self) -> SpaceClass {
        self.key.class
    }

    /// `2 + d_P − 2·codim`.
    pub fn sharp(&self, codim: u32) -> i64 {
        2 + i64::from(self.dp) - 2 * i64::from(codim)
    }

    pub fn is_sphere(&self) -> bool {
        self.key.class == SpaceClass::Sphere
    }

    /// Cartan symbols of every presentation of this space.
    pub fn cartan_symbols(&self) -> Vec<CartanSymbol> {
        let mut out: Vec<CartanSymbol> = presentations(self.key).iter().map(|k| k.class.cartan_symbol()).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn same_cartan_type(&self, other: &SpaceInstance) -> bool {
        let mine = self.cartan_symbols();
        other.cartan_symbols().iter().any(|s| mine.contains(s))
    }
}

impl fmt::Display for SpaceInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.key)
    }
}

/// Presentations of the special isomorphisms; the first entry of each row
/// is the canonical one.
const ISOMORPHISMS: &[&[(SpaceClass, [u32; 2])]] = {
    use SpaceClass::*;
    &[
        &[(Sphere, [2, 0]), (AI, [2, 0]), (DIII, [2, 0]), (CI, [1, 0]), (AIII, [1, 1])],
        &[(Sphere, [3, 0]), (SU, [2, 0]), (Spin, [3, 0]), (Sp, [1, 0])],
        &[(Sphere, [4, 0]), (CII, [1, 1])],
        &[(Sphere, [5, 0]), (AII, [2, 0])],
        &[(Sp, [2, 0]), (Spin, [5, 0])],
        &[(SU, [4, 0]), (Spin, [6, 0])],
        &[(AIII, [2, 2]), (BDI, [2, 4])],
        &[(CI, [2, 0]), (BDI, [2, 3])],
        &[(BDI, [2, 6]), (DIII, [4, 0])],
        &[(AI, [4, 0]), (BDI, [3, 3])],
        &[(AIII, [1, 3]), (DIII, [3, 0])],
    ]
};

/// Every presentation isomorphic to `key`, canonical one first.
pub fn presentations(key: SpaceKey) -> Vec<SpaceKey> {
    let key = match key.class {
        SpaceClass::BDI if key.params[0] == 1 => SpaceKey::new(SpaceClass::Sphere, &[key.params[1]]),
        _ => key,
    };
    let mut out: Vec<SpaceKey> = ISOMORPHISMS
        .iter()
        .map(|row| row.iter().map(|&(class, params)| SpaceKey { class, params }).collect::<Vec<_>>())
        .find(|row| row.contains(&key))
        .unwrap_or_else(|| vec![key]);
    if out[0].class == SpaceClass::Sphere {
        out.push(SpaceKey::new(SpaceClass::BDI, &[1, out[0].params[0]]));
    }
    out
}

pub fn canonical(key: SpaceKey) -> SpaceKey {
    presentations(key)[0]
}

/// Canonical representative of the isomorphism class of `s`.
pub fn canonical_instance(s: &SpaceInstance) -> SpaceInstance {
    let key = canonical(s.key);
    if key == s.key {
        s.clone()
    } else {
        instantiate_key(key).expect("canonical presentations are valid instances")
    }
}

/// Finite product of catalog instances, factors ordered by dimension
/// (descending), then by key.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ProductSpace {
    pub factors: Vec<SpaceInstance>,
}

impl ProductSpace {
    pub fn new(mut factors: Vec<SpaceInstance>) -> Result<Self, CatalogError> {
        if factors.is_empty() {
            return Err(CatalogError::EmptyProduct);
        }
        factors.sort_by_key(|f| (Reverse(f.dim), f.key));
        Ok(Self { factors })
    }

    pub fn single(s: SpaceInstance) -> Self {
        Self { factors: vec![s] }
    }

    pub fn total_dim(&self) -> u32 {
        self.factors.iter().map(|f| f.dim).sum()
    }

    /// `total dim − min_i d_P(M_i)`.
    pub fn product_kp(&self) -> u32 {
        self.total_dim() - self.factors.iter().map(|f| f.dp).min().expect("nonempty product")
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1
    }
}

impl fmt::Display for ProductSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|s| s.key.to_string()).collect();
        f.write_str(&parts.join(" x "))
    }
}

/// Every irreducible catalog space with `dim <= max_dim`, one canonical
/// presentation per isomorphism class, ordered by dimension then key.
pub fn enumerate_catalog(max_dim: u32) -> Vec<SpaceInstance> {
    let mut keys: Vec<SpaceKey> = Vec::new();
    for class in SpaceClass::ALL {
        if class.is_exceptional() {
            keys.push(SpaceKey::new(class, &[]));
        } else if class.arity() == 1 {
            for a in 1.. {
                let key = SpaceKey::new(class, &[a]);
                if check_constraints(key).is_err() {
                    continue;
                }
                if classical_dim(key) > max_dim {
                    break;
                }
                keys.push(key);
            }
        } else {
            for a in 1.. {
                if classical_dim(SpaceKey::new(class, &[a, a])) > max_dim {
                    break;
                }
                for b in a.. {
                    let key = SpaceKey::new(class, &[a, b]);
                    if classical_dim(key) > max_dim {
                        break;
                    }
                    if check_constraints(key).is_ok() {
                        keys.push(key);
                    }
                }
            }
        }
    }
    let mut out: BTreeMap<(u32, SpaceKey), SpaceInstance> = BTreeMap::new();
    for key in keys {
        let s = instantiate_key(canonical(key)).expect("enumerated keys satisfy the constraints");
        if s.dim <= max_dim {
            out.insert((s.dim, s.key), s);
        }
    }
    out.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use SpaceClass::*;

    fn inst(class: SpaceClass, params: &[u32]) -> SpaceInstance {
        instantiate(class, params).unwrap()
    }

    #[test]
    fn dimension_is_rank_plus_root_spaces() {
        for s in enumerate_catalog(400) {
            let Some(rd) = s.root else { continue };
            let roots = crate::rootsys::positive_roots(rd.ty).unwrap();
            let sum: u32 = roots.iter().map(|a| rd.multiplicities.of(a.class)).sum();
            assert_eq!(s.rank + sum, s.dim, "{}", s.key);
        }
        for class in [AIII, BDI, CII] {
            for p in 1..=6 {
                for q in p..=9 {
                    if let Ok(s) = instantiate(class, &[p, q]) {
                        if let Some(rd) = s.root {
                            let roots = crate::rootsys::positive_roots(rd.ty).unwrap();
                            let sum: u32 = roots.iter().map(|a| rd.multiplicities.of(a.class)).sum();
                            assert_eq!(s.rank + sum, s.dim, "{}", s.key);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn exceptional_rows() {
        for (class, _, _, dim, d, k) in EXCEPTIONAL_TABLE {
            let s = inst(class, &[]);
            assert_eq!((s.dim, s.dp, s.kp), (dim, d, k), "{class}");
        }
    }

    #[test]
    fn invariants_of_examples() {
        let ai11 = inst(AI, &[11]);
        assert_eq!((ai11.dim, ai11.kp, ai11.dp), (65, 55, 10));
        assert_eq!(ai11.cp, Rational::from(1));
        assert!(ai11.valid);
        let cii22 = inst(CII, &[2, 2]);
        assert_eq!(cii22.sharp(1), 10);
        assert!(!inst(Sphere, &[10]).valid);
        assert!(inst(Sphere, &[11]).valid);
    }

    #[test]
    fn constraints() {
        assert!(instantiate(BDI, &[2, 2]).is_err());
        assert!(instantiate(Spin, &[4]).is_err());
        assert!(instantiate(AIII, &[3, 2]).is_err());
        assert!(instantiate(Sphere, &[1]).is_err());
        assert!(matches!(instantiate(SU, &[2, 3]), Err(CatalogError::Arity { .. })));
    }

    #[test]
    fn isomorphism_classes() {
        let k = |c, p: &[u32]| SpaceKey::new(c, p);
        assert_eq!(canonical(k(BDI, &[3, 3])), k(AI, &[4]));
        assert_eq!(canonical(k(Spin, &[6])), k(SU, &[4]));
        assert_eq!(canonical(k(AI, &[11])), k(AI, &[11]));
        assert_eq!(canonical(k(BDI, &[1, 17])), k(Sphere, &[17]));
        assert_eq!(canonical(k(CI, &[1])), k(Sphere, &[2]));
        assert_eq!(presentations(k(Sphere, &[9])), vec![k(Sphere, &[9]), k(BDI, &[1, 9])]);
        assert!(presentations(k(Sphere, &[3])).contains(&k(BDI, &[1, 3])));
        for row in ISOMORPHISMS {
            let dims: Vec<u32> = row.iter().map(|&(c, p)| instantiate(c, &p[..c.arity()]).unwrap().dim).collect();
            assert!(dims.windows(2).all(|w| w[0] == w[1]), "{row:?}");
        }
    }

    #[test]
    fn catalog_is_canonical_and_sorted() {
        let cat = enumerate_catalog(60);
        for s in &cat {
            assert_eq!(canonical(s.key), s.key);
        }
        assert!(cat.windows(2).all(|w| (w[0].dim, w[0].key) < (w[1].dim, w[1].key)));
        assert!(cat.iter().any(|s| s.key == SpaceKey::new(AI, &[10])));
        assert!(!cat.iter().any(|s| s.key.class == Spin && s.key.params[0] == 6));
    }

    #[test]
    fn cartan_types() {
        let s = inst(Sphere, &[12]);
        assert!(s.same_cartan_type(&inst(BDI, &[3, 9])));
        assert!(!inst(AIII, &[1, 6]).same_cartan_type(&inst(BDI, &[2, 10])));
        assert!(inst(AI, &[4]).cartan_symbols().contains(&CartanSymbol::BDI));
    }

    #[test]
    fn product_invariants() {
        let s2 = inst(Sphere, &[2]);
        let p = ProductSpace::new(vec![s2.clone(), s2]).unwrap();
        assert_eq!(p.product_kp(), 3);
        let s10 = inst(Sphere, &[10]);
        let p = ProductSpace::new(vec![s10.clone(), s10.clone(), s10]).unwrap();
        assert_eq!(p.product_kp(), 21);
        assert!(ProductSpace::new(vec![]).is_err());
    }
}

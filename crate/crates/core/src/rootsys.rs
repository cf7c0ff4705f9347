//! Positive roots of irreducible (possibly non-reduced) root systems and the
//! invariant k_P computed from them.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RootSystemType {
    A(u32),
    B(u32),
    C(u32),
    D(u32),
    BC(u32),
    E6,
    E7,
    E8,
    F4,
    G2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum LengthClass {
    Short,
    Long,
    ExtraLong,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PositiveRoot {
    /// Coefficients in the simple roots, Bourbaki order.
    pub coeffs: Vec<u32>,
    pub class: LengthClass,
}

impl PositiveRoot {
    pub fn height(&self) -> u32 {
        self.coeffs.iter().sum()
    }
}

/// Root-space dimensions per length class. Classes absent from the type
/// must be zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Multiplicities {
    pub short: u32,
    pub long: u32,
    pub extra_long: u32,
}

impl Multiplicities {
    pub fn new(short: u32, long: u32, extra_long: u32) -> Self {
        Self { short, long, extra_long }
    }

    /// All roots of a simply-laced type with multiplicity `m`.
    pub fn uniform(m: u32) -> Self {
        Self { short: 0, long: m, extra_long: 0 }
    }

    pub fn of(&self, class: LengthClass) -> u32 {
        match class {
            LengthClass::Short => self.short,
            LengthClass::Long => self.long,
            LengthClass::ExtraLong => self.extra_long,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("{0} is not a valid root system (rank out of range)")]
    InvalidType(RootSystemType),
    #[error("multiplicity of {class:?} roots in {ty} must be {expected}")]
    InvalidMultiplicity { ty: RootSystemType, class: LengthClass, expected: &'static str },
    #[error("unknown root system '{0}'")]
    Parse(String),
}

impl RootSystemType {
    pub fn rank(&self) -> u32 {
        match *self {
            Self::A(r) | Self::B(r) | Self::C(r) | Self::D(r) | Self::BC(r) => r,
            Self::E6 => 6,
            Self::E7 => 7,
            Self::E8 => 8,
            Self::F4 => 4,
            Self::G2 => 2,
        }
    }

    pub fn validate(&self) -> Result<(), RootError> {
        let ok = match *self {
            Self::A(r) | Self::BC(r) => r >= 1,
            Self::B(r) | Self::C(r) => r >= 2,
            Self::D(r) => r >= 4,
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(RootError::InvalidType(*self))
        }
    }

    pub fn has_class(&self, class: LengthClass) -> bool {
        match class {
            LengthClass::Long => !matches!(self, Self::BC(1)),
            LengthClass::Short => {
                matches!(self, Self::B(_) | Self::C(_) | Self::BC(_) | Self::F4 | Self::G2)
            }
            LengthClass::ExtraLong => matches!(self, Self::BC(_)),
        }
    }

    pub fn check_multiplicities(&self, m: &Multiplicities) -> Result<(), RootError> {
        self.validate()?;
        for class in [LengthClass::Short, LengthClass::Long, LengthClass::ExtraLong] {
            let present = self.has_class(class);
            let v = m.of(class);
            if present && v == 0 {
                return Err(RootError::InvalidMultiplicity { ty: *self, class, expected: ">= 1" });
            }
            if !present && v != 0 {
                return Err(RootError::InvalidMultiplicity { ty: *self, class, expected: "0" });
            }
        }
        Ok(())
    }

    /// Inner products of the simple roots (the reduced part for BC).
    fn gram(&self) -> Vec<Vec<i64>> {
        let r = self.rank() as usize;
        let mut g = vec![vec![0i64; r]; r];
        let chain = |g: &mut Vec<Vec<i64>>, n: usize| {
            for i in 0..n {
                g[i][i] = 2;
                if i + 1 < n {
                    g[i][i + 1] = -1;
                    g[i + 1][i] = -1;
                }
            }
        };
        match *self {
            Self::A(_) => chain(&mut g, r),
            Self::B(_) | Self::BC(_) => {
                chain(&mut g, r);
                g[r - 1][r - 1] = 1;
            }
            Self::C(_) => {
                chain(&mut g, r);
                g[r - 1][r - 1] = 4;
                g[r - 2][r - 1] = -2;
                g[r - 1][r - 2] = -2;
            }
            Self::D(_) => {
                chain(&mut g, r - 1);
                g[r - 1][r - 1] = 2;
                g[r - 3][r - 1] = -1;
                g[r - 1][r - 3] = -1;
            }
            Self::E6 | Self::E7 | Self::E8 => {
                let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
                for (i, row) in g.iter_mut().enumerate() {
                    row[i] = 2;
                }
                for &(a, b) in edges.iter().filter(|&&(a, b)| a < r && b < r) {
                    g[a][b] = -1;
                    g[b][a] = -1;
                }
            }
            Self::F4 => {
                g = vec![vec![4, -2, 0, 0], vec![-2, 4, -2, 0], vec![0, -2, 2, -1], vec![0, 0, -1, 2]];
            }
            Self::G2 => g = vec![vec![2, -3], vec![-3, 6]],
        }
        g
    }
}

impl fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::A(r) => write!(f, "A{r}"),
            Self::B(r) => write!(f, "B{r}"),
            Self::C(r) => write!(f, "C{r}"),
            Self::D(r) => write!(f, "D{r}"),
            Self::BC(r) => write!(f, "BC{r}"),
            other => write!(f, "{other:?}"),
        }
    }
}

impl Serialize for RootSystemType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for RootSystemType {
    type Err = RootError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let fixed = match t {
            "E6" => Some(Self::E6),
            "E7" => Some(Self::E7),
            "E8" => Some(Self::E8),
            "F4" => Some(Self::F4),
            "G2" => Some(Self::G2),
            _ => None,
        };
        if let Some(ty) = fixed {
            return Ok(ty);
        }
        let split = t.find(|c: char| c.is_ascii_digit()).ok_or_else(|| RootError::Parse(t.into()))?;
        let r: u32 = t[split..].parse().map_err(|_| RootError::Parse(t.into()))?;
        let ty = match &t[..split] {
            "A" => Self::A(r),
            "B" => Self::B(r),
            "C" => Self::C(r),
            "D" => Self::D(r),
            "BC" => Self::BC(r),
            _ => return Err(RootError::Parse(t.into())),
        };
        ty.validate()?;
        Ok(ty)
    }
}

fn closure(gram: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = gram.len();
    // cartan[i][j] = <alpha_i, alpha_j^vee>
    let cartan: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| 2 * gram[i][j] / gram[j][j]).collect()).collect();
    let simple: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
    let mut seen: HashSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut all = simple.clone();
    let mut layer = simple;
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..r {
                let pairing: i64 = (0..r).map(|j| beta[j] * cartan[j][i]).sum();
                let mut down = beta.clone();
                let mut p = 0;
                loop {
                    down[i] -= 1;
                    if !seen.contains(&down) {
                        break;
                    }
                    p += 1;
                }
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if seen.insert(up.clone()) {
                        all.push(up.clone());
                        next.push(up);
                    }
                }
            }
        }
        layer = next;
    }
    all
}

fn compute_roots(ty: RootSystemType) -> Vec<PositiveRoot> {
    let gram = ty.gram();
    let r = gram.len();
    let norm = |c: &[i64]| -> i64 {
        (0..r).flat_map(|i| (0..r).map(move |j| (i, j))).map(|(i, j)| c[i] * gram[i][j] * c[j]).sum()
    };
    let longest = (0..r).map(|i| gram[i][i]).max().unwrap_or(0);
    let mut roots: Vec<PositiveRoot> = closure(&gram)
        .into_iter()
        .map(|c| {
            let class = if norm(&c) == longest { LengthClass::Long } else { LengthClass::Short };
            PositiveRoot { coeffs: c.into_iter().map(|x| x as u32).collect(), class }
        })
        .collect();
    if let RootSystemType::BC(_) = ty {
        // B_1 has a single root, which plays the short role in BC_1
        if r == 1 {
            roots[0].class = LengthClass::Short;
        }
        let doubled: Vec<PositiveRoot> = roots
            .iter()
            .filter(|a| a.class == LengthClass::Short)
            .map(|a| PositiveRoot { coeffs: a.coeffs.iter().map(|c| 2 * c).collect(), class: LengthClass::ExtraLong })
            .collect();
        roots.extend(doubled);
    }
    roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.coeffs.cmp(&a.coeffs)));
    roots
}

/// Positive roots, memoized per type.
pub fn positive_roots(ty: RootSystemType) -> Result<Arc<[PositiveRoot]>, RootError> {
    ty.validate()?;
    static CACHE: OnceLock<Mutex<HashMap<RootSystemType, Arc<[PositiveRoot]>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("root cache poisoned").get(&ty) {
        return Ok(hit.clone());
    }
    let roots: Arc<[PositiveRoot]> = compute_roots(ty).into();
    cache.lock().expect("root cache poisoned").insert(ty, roots.clone());
    Ok(roots)
}

/// Numbers of positive roots with vanishing `j`-th coefficient, by class.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ZeroCounts {
    pub short: u32,
    pub long: u32,
    pub extra_long: u32,
}

impl ZeroCounts {
    pub fn weight(&self, m: &Multiplicities) -> u64 {
        u64::from(self.short) * u64::from(m.short)
            + u64::from(self.long) * u64::from(m.long)
            + u64::from(self.extra_long) * u64::from(m.extra_long)
    }
}

/// `j` is 1-based.
pub fn zero_coeff_counts(ty: RootSystemType, j: u32) -> Result<ZeroCounts, RootError> {
    let roots = positive_roots(ty)?;
    if j == 0 || j > ty.rank() {
        return Err(RootError::InvalidType(ty));
    }
    let mut out = ZeroCounts::default();
    for root in roots.iter().filter(|a| a.coeffs[j as usize - 1] == 0) {
        match root.class {
            LengthClass::Short => out.short += 1,
            LengthClass::Long => out.long += 1,
            LengthClass::ExtraLong => out.extra_long += 1,
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KpReport {
    pub kp: u64,
    /// Lowest 1-based index attaining the maximum.
    pub maximizer: u32,
}

/// `k_P = r + max_j Σ_{α > 0, c_j(α) = 0} m_α`.
pub fn kp_enumerated(ty: RootSystemType, m: &Multiplicities) -> Result<KpReport, RootError> {
    ty.check_multiplicities(m)?;
    let mut best = KpReport { kp: 0, maximizer: 0 };
    for j in 1..=ty.rank() {
        let w = zero_coeff_counts(ty, j)?.weight(m);
        if best.maximizer == 0 || w > best.kp {
            best = KpReport { kp: w, maximizer: j };
        }
    }
    best.kp += u64::from(ty.rank());
    Ok(best)
}

/// Zero-coefficient counts `(short, long, extra-long)` per `j` for the
/// low-rank cases whose closed forms do not apply, and for F4.
const B2_TABLE: [(u64, u64, u64); 2] = [(1, 0, 0), (0, 1, 0)];
const B3_TABLE: [(u64, u64, u64); 3] = [(2, 2, 0), (1, 1, 0), (0, 3, 0)];
const C3_TABLE: [(u64, u64, u64); 3] = [(2, 2, 0), (1, 1, 0), (3, 0, 0)];
const BC2_TABLE: [(u64, u64, u64); 2] = [(1, 0, 1), (0, 1, 0)];
const F4_TABLE: [(u64, u64, u64); 4] = [(6, 3, 0), (3, 1, 0), (1, 3, 0), (3, 6, 0)];
const BC3_TABLE: [(u64, u64, u64); 3] = [(2, 2, 2), (1, 1, 1), (0, 3, 0)];

fn table_kp(r: u32, rows: impl Iterator<Item = (u64, u64, u64)>, m: &Multiplicities) -> u64 {
    let (s, l, x) = (u64::from(m.short), u64::from(m.long), u64::from(m.extra_long));
    u64::from(r) + rows.map(|(a, b, c)| a * s + b * l + c * x).max().unwrap_or(0)
}

/// Closed-form k_P per root-system family.
pub fn kp_closed_form(ty: RootSystemType, m: &Multiplicities) -> Result<u64, RootError> {
    ty.check_multiplicities(m)?;
    let (s, l, x) = (u64::from(m.short), u64::from(m.long), u64::from(m.extra_long));
    let kp = match ty {
        RootSystemType::A(r) => {
            let r = u64::from(r);
            r + r * (r - 1) / 2 * l
        }
        RootSystemType::D(r) => {
            let r = u64::from(r);
            r + l * (r - 1) * (r - 2)
        }
        RootSystemType::B(2) => table_kp(2, B2_TABLE.into_iter(), m),
        // C2 is B2 with the simple roots listed in the opposite order
        RootSystemType::C(2) => table_kp(2, B2_TABLE.into_iter().rev(), m),
        RootSystemType::B(3) => table_kp(3, B3_TABLE.into_iter(), m),
        RootSystemType::C(3) => table_kp(3, C3_TABLE.into_iter(), m),
        RootSystemType::BC(1) => 1,
        RootSystemType::BC(2) => table_kp(2, BC2_TABLE.into_iter(), m),
        RootSystemType::BC(3) => table_kp(3, BC3_TABLE.into_iter(), m),
        RootSystemType::B(r) => {
            let r = u64::from(r);
            r + s * (r - 1) + l * (r - 1) * (r - 2)
        }
        RootSystemType::C(r) => {
            let r = u64::from(r);
            r + s * (r - 1) * (r - 2) + l * (r - 1)
        }
        RootSystemType::BC(r) => {
            let r = u64::from(r);
            r + (s + x) * (r - 1) + l * (r - 1) * (r - 2)
        }
        RootSystemType::E6 => 6 + 20 * l,
        RootSystemType::E7 => 7 + 36 * l,
        RootSystemType::E8 => 8 + 63 * l,
        RootSystemType::F4 => table_kp(4, F4_TABLE.into_iter(), m),
        RootSystemType::G2 => 2 + s.max(l),
    };
    Ok(kp)
}

//! Finitely generated abelian groups, exact and partially known, with the
//! rank intervals used to compare them.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// Primes always consulted by [`compatible`], in addition to the primes that
/// occur in the operands.
pub const DEFAULT_PRIMES: [u64; 4] = [2, 3, 5, 7];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
}

impl PrimePower {
    pub fn order(&self) -> u64 {
        self.prime.pow(self.exponent)
    }
}

/// `Z^r ⊕ Z_{p1^e1} ⊕ ...` with torsion kept in primary decomposition.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbelianGroup {
    free_rank: u32,
    torsion: Vec<PrimePower>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("cyclic group of order 0 is not a torsion summand")]
    ZeroOrder,
    #[error("at column {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

fn factorize(mut n: u64) -> Vec<PrimePower> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push(PrimePower { prime: p, exponent: e });
        }
        p += 1;
    }
    if n > 1 {
        out.push(PrimePower { prime: n, exponent: 1 });
    }
    out
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: u32) -> Self {
        Self { free_rank: rank, torsion: Vec::new() }
    }

    /// `Z_n`, split into its primary parts. `Z_1` is trivial.
    pub fn cyclic(order: u64) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::ZeroOrder);
        }
        Ok(Self { free_rank: 0, torsion: factorize(order) }.canonical())
    }

    /// Free rank plus a list of cyclic torsion orders (any orders, not
    /// necessarily prime powers).
    pub fn from_parts(free_rank: u32, orders: &[u64]) -> Result<Self, GroupError> {
        let mut g = Self::free(free_rank);
        for &n in orders {
            g = g.direct_sum(&Self::cyclic(n)?);
        }
        Ok(g)
    }

    fn canonical(mut self) -> Self {
        self.torsion.sort();
        self
    }

    pub fn free_rank(&self) -> u32 {
        self.free_rank
    }

    pub fn torsion(&self) -> &[PrimePower] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn torsion_part(&self) -> Self {
        Self { free_rank: 0, torsion: self.torsion.clone() }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut torsion = self.torsion.clone();
        torsion.extend_from_slice(&other.torsion);
        Self { free_rank: self.free_rank + other.free_rank, torsion }.canonical()
    }

    /// Dimension of `G ⊗ Z_p` over `Z_p`.
    pub fn p_rank(&self, p: u64) -> u32 {
        self.free_rank + self.torsion.iter().filter(|t| t.prime == p).count() as u32
    }

    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.torsion.iter().map(|t| t.prime).collect();
        ps.dedup();
        ps
    }

    /// Whether `self` is isomorphic to a subgroup of `other`.
    pub fn embeds_into(&self, other: &Self) -> bool {
        if self.free_rank > other.free_rank {
            return false;
        }
        self.primes().into_iter().all(|p| {
            let exps = |g: &Self| {
                let mut v: Vec<u32> = g.torsion.iter().filter(|t| t.prime == p).map(|t| t.exponent).collect();
                v.sort_unstable_by(|a, b| b.cmp(a));
                v
            };
            let (a, b) = (exps(self), exps(other));
            a.len() <= b.len() && a.iter().zip(&b).all(|(x, y)| x <= y)
        })
    }
}

/// Closed interval of ranks; `hi == None` means unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RankInterval {
    pub lo: u32,
    pub hi: Option<u32>,
}

impl RankInterval {
    pub fn exact(n: u32) -> Self {
        Self { lo: n, hi: Some(n) }
    }

    pub fn at_least(n: u32) -> Self {
        Self { lo: n, hi: None }
    }

    pub fn is_exact(&self) -> bool {
        self.hi == Some(self.lo)
    }

    pub fn contains(&self, n: u32) -> bool {
        n >= self.lo && self.hi.is_none_or(|h| n <= h)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.hi.is_some_and(|h| h < other.lo) || other.hi.is_some_and(|h| h < self.lo)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { lo: self.lo + other.lo, hi: self.hi.zip(other.hi).map(|(a, b)| a + b) }
    }

    pub fn scale(&self, k: u32) -> Self {
        Self { lo: self.lo * k, hi: self.hi.map(|h| h * k) }
    }
}

impl fmt::Display for RankInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hi {
            Some(h) if h == self.lo => write!(f, "{h}"),
            Some(h) => write!(f, "[{}, {h}]", self.lo),
            None => write!(f, "[{}, inf)", self.lo),
        }
    }
}

/// A homotopy group as far as the tables know it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PartialAbelianGroup {
    Exact(AbelianGroup),
    /// Finite, otherwise unknown (`f`).
    Finite,
    /// `Z ⊕ T` with `T` finite and unknown (`r1`).
    RankOne,
    /// Free rank at least one (`r>=1`).
    RankAtLeastOne,
    /// Contains a subgroup isomorphic to the given one.
    ContainsSubgroup(AbelianGroup),
    Unknown,
}

use PartialAbelianGroup as P;

impl PartialAbelianGroup {
    pub fn trivial() -> Self {
        P::Exact(AbelianGroup::trivial())
    }

    /// `ContainsSubgroup`, collapsing the empty lower bound to `Unknown`.
    pub fn containing(h: AbelianGroup) -> Self {
        if h.is_trivial() {
            P::Unknown
        } else {
            P::ContainsSubgroup(h)
        }
    }

    pub fn exact(&self) -> Option<&AbelianGroup> {
        match self {
            P::Exact(g) => Some(g),
            _ => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, P::Exact(_))
    }

    pub fn q_rank(&self) -> RankInterval {
        match self {
            P::Exact(g) => RankInterval::exact(g.free_rank()),
            P::Finite => RankInterval::exact(0),
            P::RankOne => RankInterval::exact(1),
            P::RankAtLeastOne => RankInterval::at_least(1),
            P::ContainsSubgroup(h) => RankInterval::at_least(h.free_rank()),
            P::Unknown => RankInterval::at_least(0),
        }
    }

    pub fn p_rank(&self, p: u64) -> RankInterval {
        match self {
            P::Exact(g) => RankInterval::exact(g.p_rank(p)),
            P::Finite | P::Unknown => RankInterval::at_least(0),
            P::RankOne | P::RankAtLeastOne => RankInterval::at_least(1),
            P::ContainsSubgroup(h) => RankInterval::at_least(h.p_rank(p)),
        }
    }

    pub fn rank(&self, field: CoefficientField) -> RankInterval {
        match field {
            CoefficientField::Rational => self.q_rank(),
            CoefficientField::Prime(p) => self.p_rank(p),
        }
    }

    /// Largest exact group guaranteed to sit inside every refinement.
    fn lower_bound(&self) -> AbelianGroup {
        match self {
            P::Exact(g) | P::ContainsSubgroup(g) => g.clone(),
            P::RankOne | P::RankAtLeastOne => AbelianGroup::free(1),
            P::Finite | P::Unknown => AbelianGroup::trivial(),
        }
    }

    pub fn primes(&self) -> Vec<u64> {
        match self {
            P::Exact(g) | P::ContainsSubgroup(g) => g.primes(),
            _ => Vec::new(),
        }
    }

    /// Whether the exact group `g` is one of the groups this value describes.
    pub fn admits(&self, g: &AbelianGroup) -> bool {
        match self {
            P::Exact(h) => h == g,
            P::Finite => g.is_finite(),
            P::RankOne => g.free_rank() == 1,
            P::RankAtLeastOne => g.free_rank() >= 1,
            P::ContainsSubgroup(h) => h.embeds_into(g),
            P::Unknown => true,
        }
    }
}

/// Direct sum of partially known groups. Exact on exact operands; otherwise
/// the result is a conservative description of every possible sum.
pub fn direct_sum(a: &PartialAbelianGroup, b: &PartialAbelianGroup) -> PartialAbelianGroup {
    if let (P::Exact(x), P::Exact(y)) = (a, b) {
        return P::Exact(x.direct_sum(y));
    }
    let lower = a.lower_bound().direct_sum(&b.lower_bound());
    let open = |g: &PartialAbelianGroup| matches!(g, P::Unknown | P::ContainsSubgroup(_));
    if open(a) || open(b) {
        return P::containing(lower);
    }
    let q = a.q_rank().add(&b.q_rank());
    match (q.lo, q.hi) {
        (0, Some(0)) => P::Finite,
        (1, Some(1)) => P::RankOne,
        (1, None) => P::RankAtLeastOne,
        _ => P::containing(lower),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoefficientField {
    Rational,
    Prime(u64),
}

impl CoefficientField {
    /// Q, Z_2, Z_3, Z_5, Z_7 in witness order.
    pub const STANDARD: [CoefficientField; 5] = [
        CoefficientField::Rational,
        CoefficientField::Prime(2),
        CoefficientField::Prime(3),
        CoefficientField::Prime(5),
        CoefficientField::Prime(7),
    ];
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Rational => f.write_str("Q"),
            CoefficientField::Prime(p) => write!(f, "Z_{p}"),
        }
    }
}

impl Serialize for CoefficientField {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub field: CoefficientField,
    pub left: RankInterval,
    pub right: RankInterval,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Compatibility {
    Equal,
    PossiblyEqual,
    Incompatible(Witness),
}

/// Compares over Q and over `Z_p` for the default primes plus every prime
/// occurring in either operand.
pub fn compatible(a: &PartialAbelianGroup, b: &PartialAbelianGroup) -> Compatibility {
    let mut primes: Vec<u64> = DEFAULT_PRIMES.to_vec();
    primes.extend(a.primes());
    primes.extend(b.primes());
    compatible_over(a, b, &primes)
}

/// Compares over Q and over `Z_p` for each prime in `primes`, first
/// witness in the order Q, then primes ascending.
pub fn compatible_over(a: &PartialAbelianGroup, b: &PartialAbelianGroup, primes: &[u64]) -> Compatibility {
    let mut primes = primes.to_vec();
    primes.sort_unstable();
    primes.dedup();
    let fields = std::iter::once(CoefficientField::Rational).chain(primes.into_iter().map(CoefficientField::Prime));
    for field in fields {
        let (l, r) = (a.rank(field), b.rank(field));
        if l.is_disjoint(&r) {
            return Compatibility::Incompatible(Witness { field, left: l, right: r });
        }
    }
    match (a, b) {
        (P::Exact(x), P::Exact(y)) if x == y => Compatibility::Equal,
        _ => Compatibility::PossiblyEqual,
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let t = self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|&&u| u == t).count();
            if run == 1 {
                parts.push(format!("Z_{}", t.order()));
            } else {
                parts.push(format!("Z_{}^{run}", t.order()));
            }
            i += run;
        }
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Display for PartialAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P::Exact(g) => write!(f, "{g}"),
            P::Finite => f.write_str("f"),
            P::RankOne => f.write_str("r1"),
            P::RankAtLeastOne => f.write_str("r>=1"),
            P::ContainsSubgroup(h) => write!(f, "{h} in"),
            P::Unknown => f.write_str("?"),
        }
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Serialize for PartialAbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn format_group(g: &PartialAbelianGroup) -> String {
    g.to_string()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, GroupError> {
        Err(GroupError::Parse { pos: self.pos + 1, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u64, GroupError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match text.parse() {
            Ok(n) => Ok(n),
            Err(_) => self.err("number out of range"),
        }
    }

    fn term(&mut self) -> Result<PartialAbelianGroup, GroupError> {
        self.skip_ws();
        if self.eat("r>=1") {
            return Ok(P::RankAtLeastOne);
        }
        if self.eat("r1") {
            return Ok(P::RankOne);
        }
        if self.eat("f") {
            return Ok(P::Finite);
        }
        if self.eat("?") {
            return Ok(P::Unknown);
        }
        if self.eat("0") {
            return Ok(PartialAbelianGroup::trivial());
        }
        if !self.eat("Z") {
            return self.err("expected Z, Z_n, f, r1, r>=1, ? or 0");
        }
        let mut order = None;
        if self.eat("_") {
            let mut n = self.number()?;
            if self.eat("!") {
                n = (1..=n).product();
            }
            if n == 0 {
                return self.err("Z_0 is not allowed");
            }
            order = Some(n);
        }
        let mut power = 1;
        if self.eat("^") {
            power = self.number()?;
        }
        let base = match order {
            None => AbelianGroup::free(1),
            Some(n) => AbelianGroup::cyclic(n)?,
        };
        let mut g = AbelianGroup::trivial();
        for _ in 0..power {
            g = g.direct_sum(&base);
        }
        Ok(P::Exact(g))
    }

    fn group(&mut self) -> Result<PartialAbelianGroup, GroupError> {
        let mut acc = self.term()?;
        while self.eat("+") {
            acc = direct_sum(&acc, &self.term()?);
        }
        self.skip_ws();
        if self.src[self.pos..].starts_with(b"in") {
            let Some(h) = acc.exact().cloned() else {
                return self.err("only an exact group can precede 'in'");
            };
            self.pos += 2;
            acc = PartialAbelianGroup::containing(h);
        }
        self.skip_ws();
        if self.pos != self.src.len() {
            return self.err("unexpected trailing input");
        }
        Ok(acc)
    }
}

/// Parses the group mini-grammar: summands `Z`, `Z_n`, `Z^k`, `Z_n^k`,
/// `Z_n!`, `0`, `f`, `r1`, `r>=1`, `?` joined by `+`, optionally followed
/// by `in` for a lower bound.
pub fn parse_group(text: &str) -> Result<PartialAbelianGroup, GroupError> {
    Parser { src: text.as_bytes(), pos: 0 }.group()
}

impl FromStr for PartialAbelianGroup {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_group(s)
    }
}

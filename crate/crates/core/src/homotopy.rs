//! Homotopy groups in degrees 1 to 10, read from line-oriented table files.
//!
//! Each record reads `pattern | guard | key=group; key=group; ...`. The
//! pattern is a space spec whose arguments may be variables, the guard is a
//! comma-separated list of linear comparisons (or `-`), and keys are degrees
//! written as linear expressions or ranges `a..b` in the pattern variables.
//! A `@kind sphere|unstable|stable` line sets the table kind for the records
//! that follow.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::abelian::{direct_sum, parse_group, PartialAbelianGroup};
use crate::catalog::{canonical_instance, presentations, ProductSpace, SpaceClass, SpaceInstance, SpaceKey};
use crate::notation::{parse_ast, ArgAst};

pub const MAX_DEGREE: u32 = 10;

const BUILTIN: [(&str, &str); 6] = [
    ("spheres.txt", include_str!("../data/spheres.txt")),
    ("unstable.txt", include_str!("../data/unstable.txt")),
    ("real_grassmannians.txt", include_str!("../data/real_grassmannians.txt")),
    ("derived.txt", include_str!("../data/derived.txt")),
    ("exceptional.txt", include_str!("../data/exceptional.txt")),
    ("stable.txt", include_str!("../data/stable.txt")),
];

#[derive(Debug, Error)]
pub enum HomotopyError {
    #[error("{file}:{line}: {msg}")]
    Data { file: String, line: usize, msg: String },
    #[error("reading {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("degree {0} outside 1..={MAX_DEGREE}")]
    Degree(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    Sphere,
    Unstable,
    Stable,
}

impl TableKind {
    const LOOKUP_ORDER: [TableKind; 3] = [TableKind::Sphere, TableKind::Unstable, TableKind::Stable];
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableKind::Sphere => "sphere",
            TableKind::Unstable => "unstable",
            TableKind::Stable => "stable",
        })
    }
}

/// Integer linear expression `c + Σ a_i·x_i` over named variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinExpr {
    pub constant: i64,
    pub terms: Vec<(i64, String)>,
}

impl LinExpr {
    fn parse(text: &str) -> Result<Self, String> {
        let mut e = LinExpr { constant: 0, terms: Vec::new() };
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err("empty expression".into());
        }
        let mut rest = s.as_str();
        let mut sign = 1;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        }
        loop {
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let (term, tail) = rest.split_at(end);
            let digits = term.find(|c: char| !c.is_ascii_digit()).unwrap_or(term.len());
            let (num, var) = term.split_at(digits);
            let coeff: i64 = if num.is_empty() { 1 } else { num.parse().map_err(|_| format!("bad number '{num}'"))? };
            if var.is_empty() {
                if num.is_empty() {
                    return Err(format!("bad term in '{text}'"));
                }
                e.constant += sign * coeff;
            } else if var.chars().all(|c| c.is_ascii_alphabetic()) {
                e.terms.push((sign * coeff, var.to_string()));
            } else {
                return Err(format!("bad term '{term}'"));
            }
            match tail.chars().next() {
                None => return Ok(e),
                Some(c) => {
                    sign = if c == '+' { 1 } else { -1 };
                    rest = &tail[1..];
                }
            }
        }
    }

    fn mentions(&self, var: &str) -> bool {
        self.terms.iter().any(|(_, v)| v == var)
    }

    fn eval(&self, env: &Env) -> Option<i64> {
        self.terms.iter().try_fold(self.constant, |acc, (c, v)| Some(acc + c * env.get(v)?))
    }
}

impl fmt::Display for LinExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, v) in &self.terms {
            let sign = if *c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            write!(f, "{sign}{mag}{v}")?;
            first = false;
        }
        if first || self.constant != 0 {
            if !first && self.constant > 0 {
                f.write_str("+")?;
            }
            write!(f, "{}", self.constant)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Cmp {
    Le,
    Lt,
    Ge,
    Gt,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Condition {
    lhs: LinExpr,
    cmp: Cmp,
    rhs: LinExpr,
}

impl Condition {
    fn parse(text: &str) -> Result<Self, String> {
        for (tok, cmp) in [("<=", Cmp::Le), (">=", Cmp::Ge), ("<", Cmp::Lt), (">", Cmp::Gt), ("=", Cmp::Eq)] {
            if let Some((l, r)) = text.split_once(tok) {
                return Ok(Condition { lhs: LinExpr::parse(l)?, cmp, rhs: LinExpr::parse(r)? });
            }
        }
        Err(format!("no comparison in '{text}'"))
    }

    fn holds(&self, env: &Env) -> Option<bool> {
        let (l, r) = (self.lhs.eval(env)?, self.rhs.eval(env)?);
        Some(match self.cmp {
            Cmp::Le => l <= r,
            Cmp::Lt => l < r,
            Cmp::Ge => l >= r,
            Cmp::Gt => l > r,
            Cmp::Eq => l == r,
        })
    }

    fn mentions(&self, var: &str) -> bool {
        self.lhs.mentions(var) || self.rhs.mentions(var)
    }
}

/// Conjunction of linear comparisons; conditions on `k` restrict degrees.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Guard {
    params: Vec<Condition>,
    degree: Vec<Condition>,
    text: String,
}

impl Guard {
    fn parse(text: &str) -> Result<Self, String> {
        let text = text.trim();
        let mut g = Guard { text: text.to_string(), ..Guard::default() };
        if text == "-" {
            return Ok(g);
        }
        for part in text.split(',') {
            let c = Condition::parse(part.trim())?;
            if c.mentions("k") {
                g.degree.push(c);
            } else {
                g.params.push(c);
            }
        }
        Ok(g)
    }

    fn admits_params(&self, env: &Env) -> bool {
        self.params.iter().all(|c| c.holds(env) == Some(true))
    }

    fn admits_degree(&self, env: &Env, k: u32) -> bool {
        let env = env.with("k", k as i64);
        self.degree.iter().all(|c| c.holds(&env) == Some(true))
    }
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

#[derive(Clone, Debug, Default)]
struct Env(Vec<(String, i64)>);

impl Env {
    fn get(&self, var: &str) -> Option<i64> {
        self.0.iter().find(|(v, _)| v == var).map(|&(_, x)| x)
    }

    fn with(&self, var: &str, x: i64) -> Env {
        let mut e = self.clone();
        e.0.push((var.to_string(), x));
        e
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum PatternArg {
    Fixed(u32),
    Var(String),
}

/// Space class with literal or variable parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    class: SpaceClass,
    args: Vec<PatternArg>,
}

impl Pattern {
    fn parse(text: &str) -> Result<Self, String> {
        let ast = parse_ast(text).map_err(|e| e.to_string())?;
        let [f] = ast.factors.as_slice() else {
            return Err("a pattern names a single space".into());
        };
        let class = SpaceClass::from_name(&f.name).ok_or_else(|| format!("unknown class '{}'", f.name))?;
        if f.args.len() != class.arity() {
            return Err(format!("{class} takes {} parameter(s)", class.arity()));
        }
        let args = f
            .args
            .iter()
            .map(|a| match a {
                ArgAst::Int(n) => PatternArg::Fixed(*n),
                ArgAst::Ident(v) => PatternArg::Var(v.clone()),
            })
            .collect();
        Ok(Pattern { class, args })
    }

    fn bind(&self, key: SpaceKey) -> Option<Env> {
        if key.class != self.class {
            return None;
        }
        let mut env = Env::default();
        for (arg, &x) in self.args.iter().zip(key.args()) {
            match arg {
                PatternArg::Fixed(n) if *n != x => return None,
                PatternArg::Fixed(_) => {}
                PatternArg::Var(v) => match env.get(v) {
                    Some(y) if y != x as i64 => return None,
                    Some(_) => {}
                    None => env.0.push((v.clone(), x as i64)),
                },
            }
        }
        Some(env)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.class.name())?;
        if !self.args.is_empty() {
            let parts: Vec<String> = self
                .args
                .iter()
                .map(|a| match a {
                    PatternArg::Fixed(n) => n.to_string(),
                    PatternArg::Var(v) => v.clone(),
                })
                .collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

/// A single degree or an inclusive range of degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeKey {
    Single(LinExpr),
    Range(LinExpr, LinExpr),
}

impl DegreeKey {
    fn parse(text: &str) -> Result<Self, String> {
        match text.split_once("..") {
            Some((a, b)) => Ok(DegreeKey::Range(LinExpr::parse(a)?, LinExpr::parse(b)?)),
            None => Ok(DegreeKey::Single(LinExpr::parse(text)?)),
        }
    }

    fn covers(&self, env: &Env, k: u32) -> bool {
        let k = k as i64;
        match self {
            DegreeKey::Single(e) => e.eval(env) == Some(k),
            DegreeKey::Range(a, b) => matches!((a.eval(env), b.eval(env)), (Some(a), Some(b)) if a <= k && k <= b),
        }
    }
}

/// One table row.
#[derive(Clone, Debug)]
pub struct HomotopyRecord {
    pub kind: TableKind,
    pub pattern: Pattern,
    pub guard: Guard,
    pub cells: Vec<(DegreeKey, PartialAbelianGroup)>,
    pub file: String,
    pub line: usize,
}

impl HomotopyRecord {
    fn cell(&self, env: &Env, k: u32) -> Option<&PartialAbelianGroup> {
        self.cells.iter().find(|(d, _)| d.covers(env, k)).map(|(_, g)| g)
    }

    /// The entry this record gives for `key` in degree `k`, if any.
    pub fn value(&self, key: SpaceKey, k: u32) -> Option<&PartialAbelianGroup> {
        let env = self.pattern.bind(key)?;
        if !self.guard.admits_params(&env) {
            return None;
        }
        match self.kind {
            TableKind::Stable => {
                if !self.guard.admits_degree(&env, k) {
                    return None;
                }
                let column = if k >= 10 { (k - 2) % 8 + 2 } else { k };
                self.cell(&env, column)
            }
            _ => self.cell(&env, k),
        }
    }
}

/// Where a looked-up group came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub kind: TableKind,
    /// The presentation the record matched.
    pub via: SpaceKey,
    pub record: String,
    pub file: String,
    pub line: usize,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} table, {} via {} ({}:{})", self.kind, self.record, self.via, self.file, self.line)
    }
}

/// A group together with its source; `source` is `None` when no table covers
/// the cell, in which case `group` is `Unknown`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lookup {
    pub group: PartialAbelianGroup,
    pub source: Option<Provenance>,
}

impl Lookup {
    pub fn is_covered(&self) -> bool {
        self.source.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomotopyProfile {
    pub space: ProductSpace,
    /// Entry `i` is the group in degree `i + 1`.
    pub degrees: Vec<PartialAbelianGroup>,
}

impl HomotopyProfile {
    pub fn max_degree(&self) -> u32 {
        self.degrees.len() as u32
    }

    pub fn pi(&self, k: u32) -> &PartialAbelianGroup {
        &self.degrees[k as usize - 1]
    }
}

#[derive(Clone, Debug, Default)]
pub struct Database {
    records: Vec<HomotopyRecord>,
}

fn parse_file(name: &str, text: &str, out: &mut Vec<HomotopyRecord>) -> Result<(), HomotopyError> {
    let mut kind = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |msg: String| HomotopyError::Data { file: name.to_string(), line, msg };
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(k) = body.strip_prefix("@kind") {
            kind = Some(match k.trim() {
                "sphere" => TableKind::Sphere,
                "unstable" => TableKind::Unstable,
                "stable" => TableKind::Stable,
                other => return Err(err(format!("unknown table kind '{other}'"))),
            });
            continue;
        }
        let kind = kind.ok_or_else(|| err("record before any @kind line".into()))?;
        let fields: Vec<&str> = body.split('|').map(str::trim).collect();
        let [pattern, guard, cells] = fields.as_slice() else {
            return Err(err("expected 'pattern | guard | cells'".into()));
        };
        let pattern = Pattern::parse(pattern).map_err(err)?;
        let guard = Guard::parse(guard).map_err(err)?;
        let cells = cells
            .split(';')
            .map(|cell| {
                let (d, g) = cell.split_once('=').ok_or_else(|| format!("cell '{cell}' lacks '='"))?;
                let group = parse_group(g.trim()).map_err(|e| format!("cell '{}': {e}", cell.trim()))?;
                Ok((DegreeKey::parse(d.trim())?, group))
            })
            .collect::<Result<Vec<_>, String>>()
            .map_err(err)?;
        out.push(HomotopyRecord { kind, pattern, guard, cells, file: name.to_string(), line });
    }
    Ok(())
}

impl Database {
    pub fn from_sources<'a>(sources: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Self, HomotopyError> {
        let mut records = Vec::new();
        for (name, text) in sources {
            parse_file(name, text, &mut records)?;
        }
        Ok(Database { records })
    }

    /// The tables shipped with the crate, parsed once.
    pub fn builtin() -> &'static Database {
        static DB: OnceLock<Database> = OnceLock::new();
        DB.get_or_init(|| Database::from_sources(BUILTIN).expect("shipped tables parse"))
    }

    /// Loads every `*.txt` file of `dir`, in file-name order.
    pub fn from_dir(dir: &Path) -> Result<Self, HomotopyError> {
        let io = |path: &Path, source| HomotopyError::Io { path: path.display().to_string(), source };
        let mut files = Vec::new();
        for entry in std::fs::read_dir(dir).map_err(|e| io(dir, e))? {
            let path = entry.map_err(|e| io(dir, e))?.path();
            if path.extension().is_some_and(|e| e == "txt") {
                files.push(path);
            }
        }
        files.sort();
        let mut texts = Vec::new();
        for path in &files {
            let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            texts.push((name, std::fs::read_to_string(path).map_err(|e| io(path, e))?));
        }
        Self::from_sources(texts.iter().map(|(n, t)| (n.as_str(), t.as_str())))
    }

    pub fn records(&self) -> &[HomotopyRecord] {
        &self.records
    }

    fn check_degree(k: u32) -> Result<(), HomotopyError> {
        if (1..=MAX_DEGREE).contains(&k) {
            Ok(())
        } else {
            Err(HomotopyError::Degree(k))
        }
    }

    fn hits(&self, key: SpaceKey, k: u32) -> impl Iterator<Item = Lookup> + '_ {
        presentations(key).into_iter().flat_map(move |via| {
            TableKind::LOOKUP_ORDER.into_iter().flat_map(move |kind| {
                self.records.iter().filter(move |r| r.kind == kind).filter_map(move |r| {
                    r.value(via, k).map(|g| Lookup {
                        group: g.clone(),
                        source: Some(Provenance {
                            kind,
                            via,
                            record: format!("{} | {}", r.pattern, r.guard),
                            file: r.file.clone(),
                            line: r.line,
                        }),
                    })
                })
            })
        })
    }

    /// First covering entry: presentations in canonical order, and for each
    /// the sphere, unstable and stable tables in turn.
    pub fn lookup(&self, key: SpaceKey, k: u32) -> Result<Lookup, HomotopyError> {
        Self::check_degree(k)?;
        Ok(self.hits(key, k).next().unwrap_or(Lookup { group: PartialAbelianGroup::Unknown, source: None }))
    }

    /// Every entry covering `key` in degree `k`, across all presentations.
    pub fn all_hits(&self, key: SpaceKey, k: u32) -> Result<Vec<Lookup>, HomotopyError> {
        Self::check_degree(k)?;
        Ok(self.hits(key, k).collect())
    }

    pub fn pi(&self, s: &SpaceInstance, k: u32) -> Result<PartialAbelianGroup, HomotopyError> {
        Ok(self.lookup(s.key, k)?.group)
    }

    /// Degreewise direct sum over the factors, degrees `1..=max_degree`.
    pub fn profile(&self, q: &ProductSpace, max_degree: u32) -> Result<HomotopyProfile, HomotopyError> {
        Self::check_degree(max_degree)?;
        let degrees = (1..=max_degree)
            .map(|k| {
                let mut groups = q.factors.iter().map(|f| self.pi(f, k));
                let first = groups.next().expect("nonempty product")?;
                groups.try_fold(first, |acc, g| Ok(direct_sum(&acc, &g?)))
            })
            .collect::<Result<_, HomotopyError>>()?;
        Ok(HomotopyProfile { space: q.clone(), degrees })
    }

    /// `π_{n+i}(S^n)` from the sphere table.
    pub fn sphere_stem(&self, n: u32, i: u32) -> Option<PartialAbelianGroup> {
        let key = SpaceKey::new(SpaceClass::Sphere, &[n]);
        self.records.iter().filter(|r| r.kind == TableKind::Sphere).find_map(|r| r.value(key, n + i).cloned())
    }

    /// Every stored value for every space in `keys`, grouped by space and
    /// degree, for auditing overlaps.
    pub fn coverage(&self, keys: &[SpaceKey]) -> BTreeMap<(SpaceKey, u32), Vec<Lookup>> {
        let mut out = BTreeMap::new();
        for &key in keys {
            for k in 1..=MAX_DEGREE {
                out.insert((key, k), self.hits(key, k).collect());
            }
        }
        out
    }
}

/// The canonical representative of the isomorphism class of `s`.
pub fn resolve_isomorphism(s: &SpaceInstance) -> SpaceInstance {
    canonical_instance(s)
}

fn spin_pi(db: &Database, n: u32, k: u32) -> Result<PartialAbelianGroup, HomotopyError> {
    let s3 = || crate::catalog::instantiate(SpaceClass::Sphere, &[3]).expect("S^3 is a catalog space");
    let space = match n {
        4 => ProductSpace::new(vec![s3(), s3()]).expect("nonempty"),
        _ => ProductSpace::single(
            crate::catalog::instantiate(SpaceClass::Spin, &[n]).expect("Spin(n) for n >= 3, n != 4"),
        ),
    };
    Ok(db.profile(&space, k)?.pi(k).clone())
}

/// `π_5(SU(n)/SO(n)) ≅ Z ⊕ π_4(SO(n))` for `3 <= n <= 7`.
pub fn ai_pi5_via_so(db: &Database, n: u32) -> Option<PartialAbelianGroup> {
    if !(3..=7).contains(&n) {
        return None;
    }
    let z = PartialAbelianGroup::Exact(crate::abelian::AbelianGroup::free(1));
    spin_pi(db, n, 4).ok().map(|g| direct_sum(&z, &g))
}

/// `π_6(SU(n)/SO(n)) ≅ π_5(SO(n))` for `3 <= n <= 7`.
pub fn ai_pi6_via_so(db: &Database, n: u32) -> Option<PartialAbelianGroup> {
    if !(3..=7).contains(&n) {
        return None;
    }
    spin_pi(db, n, 5).ok()
}

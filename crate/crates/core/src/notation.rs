//! The space-spec grammar: `S(n)`, `SU(n)`, `AIII(p,q)`, `Gr(R|C|H,p,n)`,
//! `CP(n)`, `HP(n)`, the exceptional names, and products joined by ` x `.

use std::fmt;

use thiserror::Error;

use crate::catalog::{canonical_instance, instantiate, CatalogError, ProductSpace, SpaceClass, SpaceInstance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at column {pos}: {msg}")]
pub struct SpecError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArgAst {
    Int(u32),
    Ident(String),
}

impl fmt::Display for ArgAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArgAst::Int(n) => write!(f, "{n}"),
            ArgAst::Ident(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorAst {
    pub name: String,
    pub args: Vec<ArgAst>,
    /// 1-based column of the name.
    pub pos: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceSpecAst {
    pub factors: Vec<FactorAst>,
}

impl fmt::Display for FactorAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if !self.args.is_empty() {
            let parts: Vec<String> = self.args.iter().map(ArgAst::to_string).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Display for SpaceSpecAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(FactorAst::to_string).collect();
        f.write_str(&parts.join(" x "))
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, SpecError> {
        Err(SpecError { pos: self.pos + 1, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(&f) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn arg(&mut self) -> Result<ArgAst, SpecError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit());
                match digits.parse() {
                    Ok(n) => Ok(ArgAst::Int(n)),
                    Err(_) => self.err("number out of range"),
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                Ok(ArgAst::Ident(self.take_while(|c| c.is_ascii_alphanumeric()).to_string()))
            }
            _ => self.err("expected a number or a name"),
        }
    }

    fn factor(&mut self) -> Result<FactorAst, SpecError> {
        if !self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            return self.err("expected a space name");
        }
        let pos = self.pos + 1;
        let name = self.take_while(|c| c.is_ascii_alphanumeric()).to_string();
        let mut args = Vec::new();
        if self.eat('(') {
            loop {
                args.push(self.arg()?);
                if self.eat(')') {
                    break;
                }
                if !self.eat(',') {
                    return self.err("expected ',' or ')'");
                }
            }
        }
        Ok(FactorAst { name, args, pos })
    }

    fn separator(&mut self) -> bool {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        if rest.starts_with('×') {
            self.pos += '×'.len_utf8();
            return true;
        }
        let mut chars = rest.chars();
        if chars.next() == Some('x') && chars.next().is_some_and(char::is_whitespace) {
            self.pos += 1;
            return true;
        }
        false
    }
}

/// Parses the grammar into an AST without resolving names.
pub fn parse_ast(text: &str) -> Result<SpaceSpecAst, SpecError> {
    let mut lx = Lexer { src: text, pos: 0 };
    let mut factors = vec![lx.factor()?];
    while lx.separator() {
        factors.push(lx.factor()?);
    }
    if lx.peek().is_some() {
        return lx.err("unexpected trailing input");
    }
    Ok(SpaceSpecAst { factors })
}

fn constraint(pos: usize, e: CatalogError) -> SpecError {
    SpecError { pos, msg: e.to_string() }
}

fn int_args(f: &FactorAst) -> Result<Vec<u32>, SpecError> {
    f.args
        .iter()
        .map(|a| match a {
            ArgAst::Int(n) => Ok(*n),
            ArgAst::Ident(s) => Err(SpecError { pos: f.pos, msg: format!("'{s}' is not a number") }),
        })
        .collect()
}

/// Resolves one factor, expanding aliases, without canonicalizing.
pub fn resolve_factor(f: &FactorAst) -> Result<SpaceInstance, SpecError> {
    let bad = |msg: String| SpecError { pos: f.pos, msg };
    match f.name.as_str() {
        "Gr" => {
            let [ArgAst::Ident(field), ArgAst::Int(p), ArgAst::Int(n)] = f.args.as_slice() else {
                return Err(bad("Gr expects (R|C|H, p, n)".into()));
            };
            let (p, n) = (*p, *n);
            if p == 0 || p >= n {
                return Err(bad(format!("Gr({field},{p},{n}) needs 1 <= p < n")));
            }
            let (a, b) = (p.min(n - p), p.max(n - p));
            let class = match field.as_str() {
                "R" => SpaceClass::BDI,
                "C" => SpaceClass::AIII,
                "H" => SpaceClass::CII,
                _ => return Err(bad(format!("unknown field '{field}', expected R, C or H"))),
            };
            instantiate(class, &[a, b]).map_err(|e| constraint(f.pos, e))
        }
        "CP" | "HP" => {
            let args = int_args(f)?;
            let [n] = args.as_slice() else {
                return Err(bad(format!("{} expects one parameter", f.name)));
            };
            let class = if f.name == "CP" { SpaceClass::AIII } else { SpaceClass::CII };
            instantiate(class, &[1, *n]).map_err(|e| constraint(f.pos, e))
        }
        name => {
            let class = SpaceClass::from_name(name).ok_or_else(|| bad(format!("unknown space '{name}'")))?;
            instantiate(class, &int_args(f)?).map_err(|e| constraint(f.pos, e))
        }
    }
}

/// Parses and resolves a space spec, canonicalizing every factor.
pub fn parse_space(text: &str) -> Result<ProductSpace, SpecError> {
    let ast = parse_ast(text)?;
    let factors =
        ast.factors.iter().map(|f| resolve_factor(f).map(|s| canonical_instance(&s))).collect::<Result<Vec<_>, _>>()?;
    Ok(ProductSpace::new(factors).expect("the grammar has at least one factor"))
}

/// Parses a spec that must denote a single irreducible space.
pub fn parse_irreducible(text: &str) -> Result<SpaceInstance, SpecError> {
    let mut p = parse_space(text)?;
    if p.factors.len() != 1 {
        return Err(SpecError { pos: 1, msg: "expected a single irreducible space".into() });
    }
    Ok(p.factors.remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::SpaceKey;

    #[test]
    fn aliases() {
        let s = parse_irreducible("Gr(R,3,10)").unwrap();
        assert_eq!(s.key, SpaceKey::new(SpaceClass::BDI, &[3, 7]));
        let s = parse_irreducible("Gr(H,1,5)").unwrap();
        assert_eq!(s.key, SpaceKey::new(SpaceClass::CII, &[1, 4]));
        assert_eq!(s.rank, 1);
        assert_eq!(parse_irreducible("Gr(C,7,10)").unwrap().key, SpaceKey::new(SpaceClass::AIII, &[3, 7]));
        assert_eq!(parse_irreducible("Spin(6)").unwrap().key, SpaceKey::new(SpaceClass::SU, &[4]));
        assert_eq!(parse_irreducible("Gr(R,1,9)").unwrap().key, SpaceKey::new(SpaceClass::Sphere, &[8]));
    }

    #[test]
    fn products() {
        let p = parse_space("AI(11) x S(12)").unwrap();
        assert_eq!(p.factors.len(), 2);
        assert_eq!(p.to_string(), "AI(11) x S(12)");
        assert_eq!(parse_space("S(12)×E8").unwrap().factors.len(), 2);
    }

    #[test]
    fn ast_round_trip() {
        for s in ["S(3)", "AIII(2,5) x Gr(R,2,12) x E8", "BDI(p,q)", "CP(6) x HP(3)"] {
            let ast = parse_ast(s).unwrap();
            assert_eq!(ast.to_string(), s);
            assert_eq!(parse_ast(&ast.to_string()).unwrap(), ast);
        }
    }

    #[test]
    fn errors_are_positioned() {
        let e = parse_space("AI(11) x Spin(4)").unwrap_err();
        assert_eq!(e.pos, 10);
        let e = parse_space("AI(11) y").unwrap_err();
        assert_eq!(e.pos, 8);
        assert!(parse_space("Gr(Q,2,5)").is_err());
        assert!(parse_space("Foo(3)").is_err());
        assert!(parse_space("SU(3").is_err());
    }
}

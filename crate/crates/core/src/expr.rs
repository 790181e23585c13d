//! A small wiring-expression language for stating identities between
//! linear maps.
//!
//! ```text
//! expr := term ("o" term)*      composition, rightmost factor first
//! term := atom ("x" atom)*      tensor product
//! atom := NAME | "(" expr ")"
//! NAME := [A-Za-z_][A-Za-z0-9_.]* ("[" args "]")?
//! ```
//!
//! `o` and `x` are reserved words. Bracketed generators are resolved by the
//! environment: `id[V]`, `swap[V,W]`, `unit[A]`, `eps[C]` for named spaces
//! and structures.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::hopf::HopfAlgebra;
use crate::linmap::LinMap;
use crate::modcoalg::ModuleCoalgebra;
use crate::report::CheckReport;
use crate::scalar::FieldSpec;
use crate::space::Space;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Compose(Vec<Expr>),
    Tensor(Vec<Expr>),
    Generator(String),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Generator(name) => f.write_str(name),
            Expr::Compose(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" o ")?;
                    }
                    match p {
                        Expr::Compose(_) => write!(f, "({p})")?,
                        _ => write!(f, "{p}")?,
                    }
                }
                Ok(())
            }
            Expr::Tensor(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    match p {
                        Expr::Generator(_) => write!(f, "{p}")?,
                        _ => write!(f, "({p})")?,
                    }
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    Compose,
    Tensor,
    Open,
    Close,
}

fn is_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_cont(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '.'
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let err = |offset, message: &str| Error::Parse { offset, message: message.to_string() };
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
        } else if c == '(' {
            it.next();
            out.push((i, Tok::Open));
        } else if c == ')' {
            it.next();
            out.push((i, Tok::Close));
        } else if is_start(c) {
            let mut name = String::new();
            while let Some(&(_, c)) = it.peek() {
                if !is_cont(c) {
                    break;
                }
                name.push(c);
                it.next();
            }
            if let Some(&(j, '[')) = it.peek() {
                it.next();
                name.push('[');
                loop {
                    match it.next() {
                        Some((_, ']')) => break,
                        Some((_, c)) if c.is_whitespace() => {}
                        Some((_, c)) if is_cont(c) || c == ',' => name.push(c),
                        Some((k, _)) => return Err(err(k, "unexpected character in generator arguments")),
                        None => return Err(err(j, "unterminated '['")),
                    }
                }
                name.push(']');
            }
            out.push((
                i,
                match name.as_str() {
                    "o" => Tok::Compose,
                    "x" => Tok::Tensor,
                    _ => Tok::Name(name),
                },
            ));
        } else {
            return Err(err(i, &format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn fail<T>(&self, message: &str) -> Result<T> {
        Err(Error::Parse { offset: self.offset(), message: message.to_string() })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut parts = vec![self.term()?];
        while self.peek() == Some(&Tok::Compose) {
            self.pos += 1;
            parts.push(self.term()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Expr::Compose(parts) })
    }

    fn term(&mut self) -> Result<Expr> {
        let mut parts = vec![self.atom()?];
        while self.peek() == Some(&Tok::Tensor) {
            self.pos += 1;
            parts.push(self.atom()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Expr::Tensor(parts) })
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Name(n)) => {
                self.pos += 1;
                Ok(Expr::Generator(n))
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Close) {
                    return self.fail("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(_) => self.fail("expected a generator or '('"),
            None => self.fail("unexpected end of input"),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(src)?, pos: 0, end: src.len() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.fail("trailing input");
    }
    Ok(e)
}

/// Named spaces and generators for elaboration.
#[derive(Clone, Debug)]
pub struct Env {
    field: FieldSpec,
    spaces: BTreeMap<String, Space>,
    maps: BTreeMap<String, LinMap>,
    units: BTreeMap<String, LinMap>,
    counits: BTreeMap<String, LinMap>,
}

impl Env {
    pub fn new(field: FieldSpec) -> Self {
        let mut spaces = BTreeMap::new();
        spaces.insert("k".to_string(), Space::ground(field));
        Env { field, spaces, maps: BTreeMap::new(), units: BTreeMap::new(), counits: BTreeMap::new() }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn add_space(&mut self, name: &str, space: &Space) -> &mut Self {
        self.spaces.insert(name.to_string(), space.clone());
        self
    }

    pub fn bind(&mut self, name: &str, map: LinMap) -> Result<&mut Self> {
        if map.field() != self.field {
            return Err(Error::FieldMismatch(self.field.to_string(), map.field().to_string()));
        }
        self.maps.insert(name.to_string(), map);
        Ok(self)
    }

    /// `P.mult`, `P.unit`, `P.delta`, `P.eps`, `P.S`, `P.Sbar` and the space `P`.
    pub fn add_hopf(&mut self, prefix: &str, h: &HopfAlgebra) -> Result<&mut Self> {
        self.add_space(prefix, h.space());
        self.bind(&format!("{prefix}.mult"), h.mult().clone())?;
        self.bind(&format!("{prefix}.unit"), h.unit().clone())?;
        self.bind(&format!("{prefix}.delta"), h.delta().clone())?;
        self.bind(&format!("{prefix}.eps"), h.eps().clone())?;
        self.bind(&format!("{prefix}.S"), h.antipode().clone())?;
        if let Ok(sbar) = h.antipode_inverse() {
            self.bind(&format!("{prefix}.Sbar"), sbar.clone())?;
        }
        self.units.insert(prefix.to_string(), h.unit().clone());
        self.counits.insert(prefix.to_string(), h.eps().clone());
        Ok(self)
    }

    /// `H.*` for the Hopf algebra and `P.delta`, `P.eps`, `P.act` with space `P`.
    pub fn add_module_coalgebra(&mut self, prefix: &str, mc: &ModuleCoalgebra) -> Result<&mut Self> {
        self.add_hopf("H", mc.h())?;
        self.add_space(prefix, mc.space());
        self.bind(&format!("{prefix}.delta"), mc.delta().clone())?;
        self.bind(&format!("{prefix}.eps"), mc.eps().clone())?;
        self.bind(&format!("{prefix}.act"), mc.act().clone())?;
        self.counits.insert(prefix.to_string(), mc.eps().clone());
        Ok(self)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.maps.keys().map(String::as_str)
    }

    fn space(&self, name: &str) -> Result<&Space> {
        self.spaces.get(name).ok_or_else(|| Error::UnknownGenerator(format!("space {name}")))
    }

    pub fn resolve(&self, name: &str) -> Result<LinMap> {
        if let Some(m) = self.maps.get(name) {
            return Ok(m.clone());
        }
        let unknown = || Error::UnknownGenerator(name.to_string());
        let (head, args) = name.strip_suffix(']').and_then(|n| n.split_once('[')).ok_or_else(unknown)?;
        let args: Vec<&str> = args.split(',').collect();
        match (head, args.as_slice()) {
            ("id", [v]) => Ok(LinMap::identity(self.space(v)?)),
            ("swap", [a, b]) => LinMap::swap(self.space(a)?, self.space(b)?),
            ("unit", [a]) => self.units.get(*a).cloned().ok_or_else(unknown),
            ("eps", [c]) => self.counits.get(*c).cloned().ok_or_else(unknown),
            _ => Err(unknown()),
        }
    }
}

/// Bottom-up evaluation: Kronecker product for `x`, composition for `o`.
pub fn elaborate(e: &Expr, env: &Env) -> Result<LinMap> {
    match e {
        Expr::Generator(name) => env.resolve(name),
        Expr::Tensor(parts) => {
            let mut acc = elaborate(&parts[0], env)?;
            for p in &parts[1..] {
                acc = acc.kron(&elaborate(p, env)?)?;
            }
            Ok(acc)
        }
        Expr::Compose(parts) => {
            let mut acc = elaborate(parts.last().expect("nonempty composition"), env)?;
            for (i, p) in parts.iter().enumerate().rev().skip(1) {
                let f = elaborate(p, env)?;
                if f.domain() != acc.codomain() {
                    let tail = Expr::Compose(parts[i + 1..].to_vec());
                    return Err(Error::mismatch(
                        format!("composition `{p}` after `{}`", simplify(tail)),
                        f.domain().name(),
                        acc.codomain().name(),
                    ));
                }
                acc = f.compose(&acc)?;
            }
            Ok(acc)
        }
    }
}

fn simplify(e: Expr) -> Expr {
    match e {
        Expr::Compose(mut parts) if parts.len() == 1 => parts.pop().unwrap(),
        e => e,
    }
}

/// Parses and elaborates both sides and records whether they agree exactly.
pub fn check_equation(lhs: &str, rhs: &str, env: &Env) -> Result<CheckReport> {
    let mut r = CheckReport::new("equation");
    check_into(&mut r, lhs, rhs, env)?;
    Ok(r)
}

fn check_into(r: &mut CheckReport, lhs: &str, rhs: &str, env: &Env) -> Result<bool> {
    let (l, rr) = (parse(lhs)?, parse(rhs)?);
    let name = format!("{l} == {rr}");
    Ok(r.check_maps(name, &elaborate(&l, env)?, &elaborate(&rr, env)?))
}

/// One `LHS == RHS` per line; blank lines and `#` comments are skipped.
pub fn parse_equations(text: &str) -> Result<Vec<(usize, String, String)>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for (n, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        if !body.trim().is_empty() {
            let (l, r) = body.split_once("==").ok_or(Error::Parse {
                offset,
                message: format!("line {}: expected `LHS == RHS`", n + 1),
            })?;
            out.push((n + 1, l.trim().to_string(), r.trim().to_string()));
        }
        offset += line.len() + 1;
    }
    Ok(out)
}

/// Checks every equation of a file, one report entry per line.
pub fn check_file(text: &str, env: &Env) -> Result<CheckReport> {
    let mut r = CheckReport::new("equations");
    for (line, l, rhs) in parse_equations(text)? {
        check_into(&mut r, &l, &rhs, env).map_err(|e| match e {
            Error::Parse { offset, message } => Error::Parse { offset, message: format!("line {line}: {message}") },
            e => e,
        })?;
    }
    Ok(r)
}

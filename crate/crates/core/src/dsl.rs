//! A tiny language for equational laws over one binary operation `+`.
//!
//! ```text
//! law      := NAME | equation
//! equation := term '=' term
//! term     := VAR | term '+' term | '(' term ')'      ('+' associates to the left)
//! spec     := 'assume' law (',' law)* ';' 'refute' law ';' 'orders' INT '..' INT
//! ```
//!
//! Variables are single letters `a`..`z`; names are the built-in law tags,
//! matched case-insensitively.

use std::fmt;

use thiserror::Error;

use crate::law::Law;
use crate::search::SearchSpec;

/// A term over variables `a`..`z` (stored as `0..26`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(u8),
    Op(Box<Term>, Box<Term>),
}

impl Term {
    pub fn op(l: Term, r: Term) -> Term {
        Term::Op(Box::new(l), Box::new(r))
    }

    fn collect_vars(&self, out: &mut Vec<u8>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(*v);
                }
            }
            Term::Op(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    fn rename(&self, map: &[u8]) -> Term {
        match self {
            Term::Var(v) => Term::Var(map[*v as usize]),
            Term::Op(l, r) => Term::op(l.rename(map), r.rename(map)),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::Op(l, r) => 1 + l.depth().max(r.depth()),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{}", (b'a' + v) as char),
            Term::Op(l, r) => {
                write!(f, "{l} + ")?;
                match **r {
                    Term::Var(_) => write!(f, "{r}"),
                    Term::Op(..) => write!(f, "({r})"),
                }
            }
        }
    }
}

/// `lhs = rhs`, universally closed over its variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Self { lhs, rhs }
    }

    /// Variables in order of first occurrence, left to right.
    pub fn variables(&self) -> Vec<u8> {
        let mut vars = Vec::new();
        self.lhs.collect_vars(&mut vars);
        self.rhs.collect_vars(&mut vars);
        vars
    }

    pub fn variable_names(&self) -> Vec<String> {
        self.variables()
            .into_iter()
            .map(|v| ((b'a' + v) as char).to_string())
            .collect()
    }

    /// Renames variables to `a, b, c, ...` by first occurrence.
    pub fn normalized(&self) -> Equation {
        let mut map = [0u8; 26];
        for (i, v) in self.variables().into_iter().enumerate() {
            map[v as usize] = i as u8;
        }
        Equation::new(self.lhs.rename(&map), self.rhs.rename(&map))
    }

    fn swapped(&self) -> Equation {
        Equation::new(self.rhs.clone(), self.lhs.clone())
    }

    /// Alpha-equivalence, also accepting the sides in swapped order.
    pub fn alpha_eq(&self, other: &Equation) -> bool {
        let other = other.normalized();
        self.normalized() == other || self.swapped().normalized() == other
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslErrorKind {
    #[error("unknown law name {0:?}")]
    UnknownName(String),
    #[error("unbalanced parenthesis")]
    UnbalancedParen,
    #[error("empty {0} side")]
    EmptySide(&'static str),
    #[error("invalid character {0:?}")]
    InvalidChar(char),
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("{0}")]
    Spec(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at offset {offset}")]
pub struct DslError {
    pub kind: DslErrorKind,
    /// Byte offset into the parsed text.
    pub offset: usize,
}

impl DslError {
    fn new(kind: DslErrorKind, offset: usize) -> Self {
        Self { kind, offset }
    }

    fn shifted(mut self, by: usize) -> Self {
        self.offset += by;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Var(u8),
    Plus,
    LParen,
    RParen,
    Eq,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, DslError> {
    let mut toks = Vec::new();
    for (i, ch) in text.char_indices() {
        let tok = match ch {
            'a'..='z' => Tok::Var(ch as u8 - b'a'),
            '+' => Tok::Plus,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '=' => Tok::Eq,
            c if c.is_whitespace() => continue,
            c => return Err(DslError::new(DslErrorKind::InvalidChar(c), i)),
        };
        toks.push((tok, i));
    }
    toks.push((Tok::End, text.len()));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> (Tok, usize) {
        self.toks[self.pos]
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos];
        if t.0 != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn term(&mut self) -> Result<Term, DslError> {
        let mut acc = self.primary()?;
        while self.peek().0 == Tok::Plus {
            self.bump();
            let rhs = self.primary()?;
            acc = Term::op(acc, rhs);
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<Term, DslError> {
        match self.bump() {
            (Tok::Var(v), _) => Ok(Term::Var(v)),
            (Tok::LParen, _) => {
                self.depth += 1;
                let inner = self.term()?;
                match self.bump() {
                    (Tok::RParen, _) => {
                        self.depth -= 1;
                        Ok(inner)
                    }
                    (Tok::Eq | Tok::End, off) => {
                        Err(DslError::new(DslErrorKind::UnbalancedParen, off))
                    }
                    (_, off) => Err(DslError::new(DslErrorKind::Expected("')'"), off)),
                }
            }
            (Tok::Eq | Tok::End, off) if self.depth > 0 => {
                Err(DslError::new(DslErrorKind::UnbalancedParen, off))
            }
            (Tok::RParen, off) if self.depth == 0 => {
                Err(DslError::new(DslErrorKind::UnbalancedParen, off))
            }
            (_, off) => Err(DslError::new(DslErrorKind::Expected("a term"), off)),
        }
    }

    fn side(&mut self, name: &'static str) -> Result<Term, DslError> {
        if let (Tok::Eq | Tok::End, off) = self.peek() {
            return Err(DslError::new(DslErrorKind::EmptySide(name), off));
        }
        self.term()
    }

    fn expect_after_term(&mut self, want: Tok, what: &'static str) -> Result<(), DslError> {
        match self.bump() {
            (t, _) if t == want => Ok(()),
            (Tok::RParen, off) => Err(DslError::new(DslErrorKind::UnbalancedParen, off)),
            (_, off) => Err(DslError::new(DslErrorKind::Expected(what), off)),
        }
    }
}

/// Parses `term = term`.
pub fn parse_equation(text: &str) -> Result<Equation, DslError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
        depth: 0,
    };
    let lhs = p.side("left")?;
    p.expect_after_term(Tok::Eq, "'+' or '='")?;
    let rhs = p.side("right")?;
    p.expect_after_term(Tok::End, "'+' or end of input")?;
    Ok(Equation::new(lhs, rhs))
}

/// Parses a built-in name or a user equation.
pub fn parse_law(text: &str) -> Result<Law, DslError> {
    if text.contains('=') {
        return parse_equation(text).map(Law::User);
    }
    let start = text.len() - text.trim_start().len();
    let name = text.trim();
    if name.is_empty() {
        return Err(DslError::new(DslErrorKind::Expected("a law"), start));
    }
    if let Some((i, c)) = name
        .char_indices()
        .find(|(_, c)| !c.is_ascii_alphanumeric() && *c != '_')
    {
        // something other than a bare name, but without '='
        if "+()".contains(c) {
            return Err(DslError::new(DslErrorKind::Expected("'='"), text.len()));
        }
        return Err(DslError::new(DslErrorKind::InvalidChar(c), start + i));
    }
    Law::from_name(name).ok_or_else(|| DslError::new(DslErrorKind::UnknownName(name.into()), start))
}

/// Parses a `.law` file: one law per line, `#` comments and blank lines skipped.
/// Errors carry the 1-based line number.
pub fn parse_law_file(text: &str) -> Result<Vec<Law>, (usize, DslError)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(i, l)| parse_law(l).map_err(|e| (i + 1, e)))
        .collect()
}

fn spec_err(msg: impl Into<String>, offset: usize) -> DslError {
    DslError::new(DslErrorKind::Spec(msg.into()), offset)
}

/// Strips `keyword` from the front of `part` (which starts at `offset`),
/// returning the remainder and its offset.
fn keyword<'a>(part: &'a str, offset: usize, kw: &str) -> Result<(&'a str, usize), DslError> {
    let lead = part.len() - part.trim_start().len();
    let rest = &part[lead..];
    match rest.get(..kw.len()) {
        Some(head)
            if head.eq_ignore_ascii_case(kw)
                && rest[kw.len()..]
                    .chars()
                    .next()
                    .is_none_or(|c| !c.is_ascii_alphanumeric()) =>
        {
            Ok((&rest[kw.len()..], offset + lead + kw.len()))
        }
        _ => Err(spec_err(format!("expected '{kw}'"), offset + lead)),
    }
}

fn law_at(text: &str, offset: usize, after: &str) -> Result<Law, DslError> {
    if text.trim().is_empty() {
        return Err(spec_err(format!("expected law after '{after}'"), offset));
    }
    parse_law(text).map_err(|e| e.shifted(offset))
}

/// Parses `assume L, ...; refute L; orders LO..HI`.
pub fn parse_spec(text: &str) -> Result<SearchSpec, DslError> {
    let mut parts = Vec::new();
    let mut start = 0;
    for (i, c) in text.char_indices() {
        if c == ';' {
            parts.push((&text[start..i], start));
            start = i + 1;
        }
    }
    parts.push((&text[start..], start));
    if parts.len() != 3 {
        return Err(spec_err(
            format!("expected 3 ';'-separated clauses, found {}", parts.len()),
            0,
        ));
    }

    let (body, off) = keyword(parts[0].0, parts[0].1, "assume")?;
    let mut assume = Vec::new();
    let mut item_start = 0;
    for piece in body.split(',') {
        assume.push(law_at(piece, off + item_start, "assume")?);
        item_start += piece.len() + 1;
    }

    let (body, off) = keyword(parts[1].0, parts[1].1, "refute")?;
    if body.contains(',') {
        return Err(spec_err("exactly one law may be refuted", off));
    }
    let refute = law_at(body, off, "refute")?;

    let (body, off) = keyword(parts[2].0, parts[2].1, "orders")?;
    let range = body.trim();
    let bad = || spec_err(format!("malformed order range {range:?}"), off);
    let (lo, hi) = range.split_once("..").ok_or_else(bad)?;
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo == 0 || lo > hi {
        return Err(bad());
    }

    Ok(SearchSpec {
        assume,
        refute,
        orders: lo..=hi,
        up_to_iso: false,
    })
}

/// Alpha-equivalence for user equations; tag equality between built-ins;
/// a user equation equals an equational built-in when their equations agree.
pub fn law_equal(l1: &Law, l2: &Law) -> bool {
    match (l1.equation(), l2.equation()) {
        (Some(e1), Some(e2)) => e1.alpha_eq(&e2),
        (None, None) => l1 == l2,
        _ => false,
    }
}

//! Decision procedures for the named properties, with failure witnesses.
//!
//! Equational laws are decided by scanning all `n^k` assignments of their
//! `k` variables, the last variable varying fastest; the first failing
//! assignment is the witness. H and CA are decided by duplicate scans of the
//! rows and then the columns of the table.

use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::dsl::{Equation, Term};
use crate::law::Law;
use crate::magma::Magma;

/// Marks an unfilled cell in a partial table.
pub(crate) const UNSET: u8 = u8::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PropertyError {
    #[error("{0} is not an equational law")]
    NotEquational(String),
    #[error("element {0} is not a two-sided neutral")]
    NotNeutral(usize),
    #[error("element {element} is outside 0..{order}")]
    NoSuchElement { element: usize, order: usize },
}

/// A variable assignment, in the law's variable order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Witness(pub Vec<(String, usize)>);

impl Witness {
    pub fn get(&self, var: &str) -> Option<usize> {
        self.0.iter().find(|(k, _)| k == var).map(|&(_, v)| v)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn of(pairs: &[(&str, usize)]) -> Self {
        Witness(pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect())
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(", "))
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Line {
    Row,
    Column,
}

/// Structured context for a failed check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Detail {
    /// Values of both sides of an equation at the witness.
    Sides { lhs: usize, rhs: usize },
    /// `value` occurs twice in the given row or column, at `positions`.
    Duplicate {
        line: Line,
        index: usize,
        value: usize,
        positions: [usize; 2],
    },
    /// No two-sided neutral; one-sided neutrals listed.
    Neutrals(NeutralReport),
    /// `element` has no two-sided inverse with respect to `neutral`.
    MissingInverse { neutral: usize, element: usize },
    /// The first failing component of a composite law.
    Component {
        failed: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        inner: Option<Box<Detail>>,
    },
}

/// Outcome of checking one law on one magma.
///
/// A failure always carries a witness. For NE, and for IN when no neutral
/// exists, the violation is not pinned to an assignment: the witness is empty
/// and `detail` carries the neutral scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub order: usize,
    pub law: Law,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Detail>,
}

impl CheckReport {
    fn pass(m: &Magma, law: Law) -> Self {
        Self {
            order: m.order(),
            law,
            holds: true,
            witness: None,
            detail: None,
        }
    }

    fn fail(m: &Magma, law: Law, witness: Witness, detail: Detail) -> Self {
        Self {
            order: m.order(),
            law,
            holds: false,
            witness: Some(witness),
            detail: Some(detail),
        }
    }

    /// One-line human summary, e.g. `CAI: holds` or `A: fails (a=0, b=0, c=1)`.
    pub fn summary(&self) -> String {
        match &self.witness {
            None => format!("{}: holds", self.law),
            Some(w) if w.is_empty() => format!("{}: fails", self.law),
            Some(w) => format!("{}: fails ({w})", self.law),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct NeutralReport {
    /// All `e` with `e + a = a` for every `a`.
    pub left: Vec<usize>,
    /// All `e` with `a + e = a` for every `a`.
    pub right: Vec<usize>,
    pub two_sided: Option<usize>,
}

/// Solutions of `a + x = a` and `y + a = a` for one element `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalIdentities {
    pub element: usize,
    /// Every `x` with `a + x = a`.
    pub right: Vec<usize>,
    /// Every `y` with `y + a = a`.
    pub left: Vec<usize>,
}

impl LocalIdentities {
    /// `e_a`, when `a + x = a` has exactly one solution.
    pub fn e(&self) -> Option<usize> {
        (self.right.len() == 1).then(|| self.right[0])
    }

    /// `ê_a`, when `y + a = a` has exactly one solution.
    pub fn e_hat(&self) -> Option<usize> {
        (self.left.len() == 1).then(|| self.left[0])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Structure {
    Magma,
    Commutative,
    Semigroup,
    Monoid,
    Group,
    AbelianGroup,
    Quasigroup,
    Loop,
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Structure::Magma => "magma",
            Structure::Commutative => "commutative",
            Structure::Semigroup => "semigroup",
            Structure::Monoid => "monoid",
            Structure::Group => "group",
            Structure::AbelianGroup => "abelian-group",
            Structure::Quasigroup => "quasigroup",
            Structure::Loop => "loop",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub order: usize,
    pub labels: Vec<Structure>,
    pub neutrals: NeutralReport,
    /// `inverses[a]` is the two-sided inverse of `a`, when every element has one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverses: Option<Vec<usize>>,
}

impl StructureReport {
    pub fn is(&self, s: Structure) -> bool {
        self.labels.contains(&s)
    }
}

// ---------------------------------------------------------------------------
// compiled equations

#[derive(Debug, Clone, Copy)]
enum Node {
    Var(u8),
    Op(u16, u16),
}

/// A term flattened into an index tree over assignment slots.
#[derive(Debug, Clone)]
struct CompiledTerm {
    nodes: Vec<Node>,
    root: u16,
}

impl CompiledTerm {
    fn new(term: &Term, slots: &[u8]) -> Self {
        fn go(t: &Term, slots: &[u8], nodes: &mut Vec<Node>) -> u16 {
            let node = match t {
                Term::Var(v) => Node::Var(slots.iter().position(|s| s == v).unwrap() as u8),
                Term::Op(l, r) => {
                    let l = go(l, slots, nodes);
                    let r = go(r, slots, nodes);
                    Node::Op(l, r)
                }
            };
            nodes.push(node);
            (nodes.len() - 1) as u16
        }
        let mut nodes = Vec::new();
        let root = go(term, slots, &mut nodes);
        Self { nodes, root }
    }

    #[inline]
    fn eval(&self, vals: &[u8], table: &[u8], n: usize) -> u8 {
        self.eval_at(self.root, vals, table, n)
    }

    fn eval_at(&self, i: u16, vals: &[u8], table: &[u8], n: usize) -> u8 {
        match self.nodes[i as usize] {
            Node::Var(s) => vals[s as usize],
            Node::Op(l, r) => {
                let a = self.eval_at(l, vals, table, n) as usize;
                let b = self.eval_at(r, vals, table, n) as usize;
                table[a * n + b]
            }
        }
    }

    /// `None` if evaluation reaches an unfilled cell.
    fn eval_partial(&self, i: u16, vals: &[u8], table: &[u8], n: usize) -> Option<u8> {
        match self.nodes[i as usize] {
            Node::Var(s) => Some(vals[s as usize]),
            Node::Op(l, r) => {
                let a = self.eval_partial(l, vals, table, n)? as usize;
                let b = self.eval_partial(r, vals, table, n)? as usize;
                let v = table[a * n + b];
                (v != UNSET).then_some(v)
            }
        }
    }
}

/// An equation ready for repeated evaluation.
#[derive(Debug, Clone)]
pub(crate) struct CompiledEquation {
    lhs: CompiledTerm,
    rhs: CompiledTerm,
    names: Vec<String>,
}

/// Steps `vals[..k]` through `0..n` odometer-style, last slot fastest.
#[inline]
fn advance(vals: &mut [u8], n: usize) -> bool {
    for v in vals.iter_mut().rev() {
        *v += 1;
        if (*v as usize) < n {
            return true;
        }
        *v = 0;
    }
    false
}

impl CompiledEquation {
    pub(crate) fn new(eq: &Equation) -> Self {
        let slots = eq.variables();
        Self {
            lhs: CompiledTerm::new(&eq.lhs, &slots),
            rhs: CompiledTerm::new(&eq.rhs, &slots),
            names: eq.variable_names(),
        }
    }

    fn arity(&self) -> usize {
        self.names.len()
    }

    /// First failing assignment with both side values.
    fn first_failure(&self, table: &[u8], n: usize) -> Option<(Vec<u8>, u8, u8)> {
        let mut vals = vec![0u8; self.arity()];
        loop {
            let l = self.lhs.eval(&vals, table, n);
            let r = self.rhs.eval(&vals, table, n);
            if l != r {
                return Some((vals, l, r));
            }
            if !advance(&mut vals, n) {
                return None;
            }
        }
    }

    fn holds(&self, table: &[u8], n: usize) -> bool {
        self.first_failure(table, n).is_none()
    }

    /// True if some assignment evaluates fully on the filled cells and fails.
    pub(crate) fn violated_partial(&self, table: &[u8], n: usize) -> bool {
        let mut vals = vec![0u8; self.arity()];
        loop {
            if let (Some(l), Some(r)) = (
                self.lhs.eval_partial(self.lhs.root, &vals, table, n),
                self.rhs.eval_partial(self.rhs.root, &vals, table, n),
            ) {
                if l != r {
                    return true;
                }
            }
            if !advance(&mut vals, n) {
                return false;
            }
        }
    }

    fn report(&self, m: &Magma, law: Law) -> CheckReport {
        match self.first_failure(m.table(), m.order()) {
            None => CheckReport::pass(m, law),
            Some((vals, l, r)) => {
                let witness = Witness(
                    self.names
                        .iter()
                        .cloned()
                        .zip(vals.iter().map(|&v| v as usize))
                        .collect(),
                );
                CheckReport::fail(
                    m,
                    law,
                    witness,
                    Detail::Sides {
                        lhs: l as usize,
                        rhs: r as usize,
                    },
                )
            }
        }
    }
}

// ---------------------------------------------------------------------------
// duplicate scans (H and CA)

/// First repeated value in a row (then a column), as `(line, index, value, first, second)`.
fn first_duplicate(table: &[u8], n: usize) -> Option<(Line, usize, usize, usize, usize)> {
    for a in 0..n {
        let mut seen = [u16::MAX; 256];
        for b in 0..n {
            let v = table[a * n + b];
            if v == UNSET {
                continue;
            }
            if seen[v as usize] != u16::MAX {
                return Some((Line::Row, a, v as usize, seen[v as usize] as usize, b));
            }
            seen[v as usize] = b as u16;
        }
    }
    for a in 0..n {
        let mut seen = [u16::MAX; 256];
        for b in 0..n {
            let v = table[b * n + a];
            if v == UNSET {
                continue;
            }
            if seen[v as usize] != u16::MAX {
                return Some((Line::Column, a, v as usize, seen[v as usize] as usize, b));
            }
            seen[v as usize] = b as u16;
        }
    }
    None
}

fn duplicate_report(m: &Magma, law: Law) -> CheckReport {
    match first_duplicate(m.table(), m.order()) {
        None => CheckReport::pass(m, law),
        Some((line, index, value, first, second)) => CheckReport::fail(
            m,
            law,
            Witness::of(&[("a", index), ("b", first), ("c", second)]),
            Detail::Duplicate {
                line,
                index,
                value,
                positions: [first, second],
            },
        ),
    }
}

/// H: every row and every column is a permutation of the carrier.
///
/// On a finite carrier this is exactly unique solvability of `x + a = b` and
/// `a + y = b`. On failure the witness `(a, b, c)` has `a + b = a + c` (row
/// duplicate) or `b + a = c + a` (column duplicate) with `b < c`.
pub fn check_h(m: &Magma) -> CheckReport {
    duplicate_report(m, Law::Quasigroup)
}

/// CA: left and right cancellation. Same witness shape as [`check_h`].
pub fn check_cancellative(m: &Magma) -> CheckReport {
    duplicate_report(m, Law::Cancellative)
}

// ---------------------------------------------------------------------------
// neutrals and inverses

pub fn find_neutrals(m: &Magma) -> NeutralReport {
    let n = m.order();
    let left: Vec<usize> = (0..n)
        .filter(|&e| (0..n).all(|a| m.op(e, a) == a))
        .collect();
    let right: Vec<usize> = (0..n)
        .filter(|&e| (0..n).all(|a| m.op(a, e) == a))
        .collect();
    let two_sided = left.iter().copied().find(|e| right.contains(e));
    NeutralReport {
        left,
        right,
        two_sided,
    }
}

fn two_sided_neutral(m: &Magma) -> Option<usize> {
    let n = m.order();
    (0..n).find(|&e| (0..n).all(|a| m.op(e, a) == a && m.op(a, e) == a))
}

fn inverse_of(m: &Magma, e: usize, a: usize) -> Option<usize> {
    (0..m.order()).find(|&b| m.op(a, b) == e && m.op(b, a) == e)
}

/// Every element has a two-sided inverse with respect to the neutral `e`.
pub fn check_inverses(m: &Magma, e: usize) -> Result<CheckReport, PropertyError> {
    let n = m.order();
    if e >= n {
        return Err(PropertyError::NoSuchElement {
            element: e,
            order: n,
        });
    }
    if !(0..n).all(|a| m.op(e, a) == a && m.op(a, e) == a) {
        return Err(PropertyError::NotNeutral(e));
    }
    Ok(match (0..n).find(|&a| inverse_of(m, e, a).is_none()) {
        None => CheckReport::pass(m, Law::Inverses),
        Some(a) => CheckReport::fail(
            m,
            Law::Inverses,
            Witness::of(&[("a", a)]),
            Detail::MissingInverse {
                neutral: e,
                element: a,
            },
        ),
    })
}

fn check_neutral(m: &Magma) -> CheckReport {
    let report = find_neutrals(m);
    if report.two_sided.is_some() {
        CheckReport::pass(m, Law::Neutral)
    } else {
        CheckReport::fail(
            m,
            Law::Neutral,
            Witness::default(),
            Detail::Neutrals(report),
        )
    }
}

fn check_inverses_any(m: &Magma) -> CheckReport {
    match two_sided_neutral(m) {
        Some(e) => check_inverses(m, e).expect("e is a two-sided neutral"),
        None => CheckReport::fail(
            m,
            Law::Inverses,
            Witness::default(),
            Detail::Neutrals(find_neutrals(m)),
        ),
    }
}

/// All solutions of `a + x = a` and `y + a = a`.
pub fn local_identities(m: &Magma, a: usize) -> Result<LocalIdentities, PropertyError> {
    let n = m.order();
    if a >= n {
        return Err(PropertyError::NoSuchElement {
            element: a,
            order: n,
        });
    }
    Ok(LocalIdentities {
        element: a,
        right: (0..n).filter(|&x| m.op(a, x) == a).collect(),
        left: (0..n).filter(|&y| m.op(y, a) == a).collect(),
    })
}

// ---------------------------------------------------------------------------
// dispatch

/// Equational laws only (A, C, CAI, CAII, AGI, AGII, R, user equations).
pub fn check_identity_law(m: &Magma, law: &Law) -> Result<CheckReport, PropertyError> {
    let eq = law
        .equation()
        .ok_or_else(|| PropertyError::NotEquational(law.tag()))?;
    Ok(CompiledEquation::new(&eq).report(m, law.clone()))
}

/// Checks any law.
pub fn check(m: &Magma, law: &Law) -> CheckReport {
    LawChecker::new(law).report(m)
}

pub fn holds(m: &Magma, law: &Law) -> bool {
    LawChecker::new(law).holds(m)
}

/// A law compiled for repeated checking.
#[derive(Debug, Clone)]
pub struct LawChecker {
    law: Law,
    kind: CheckerKind,
}

#[derive(Debug, Clone)]
enum CheckerKind {
    Equation(CompiledEquation),
    Latin,
    Neutral,
    Inverses,
    All(Vec<LawChecker>),
}

impl LawChecker {
    pub fn new(law: &Law) -> Self {
        let kind = match law {
            Law::Quasigroup | Law::Cancellative => CheckerKind::Latin,
            Law::Neutral => CheckerKind::Neutral,
            Law::Inverses => CheckerKind::Inverses,
            Law::Loop | Law::Group | Law::Abelian => {
                CheckerKind::All(law.components().iter().map(LawChecker::new).collect())
            }
            other => CheckerKind::Equation(CompiledEquation::new(
                &other.equation().expect("remaining laws are equational"),
            )),
        };
        Self {
            law: law.clone(),
            kind,
        }
    }

    pub fn law(&self) -> &Law {
        &self.law
    }

    pub fn holds(&self, m: &Magma) -> bool {
        match &self.kind {
            CheckerKind::Equation(eq) => eq.holds(m.table(), m.order()),
            CheckerKind::Latin => first_duplicate(m.table(), m.order()).is_none(),
            CheckerKind::Neutral => two_sided_neutral(m).is_some(),
            CheckerKind::Inverses => two_sided_neutral(m)
                .is_some_and(|e| (0..m.order()).all(|a| inverse_of(m, e, a).is_some())),
            CheckerKind::All(parts) => parts.iter().all(|p| p.holds(m)),
        }
    }

    pub fn report(&self, m: &Magma) -> CheckReport {
        match &self.kind {
            CheckerKind::Equation(eq) => eq.report(m, self.law.clone()),
            CheckerKind::Latin => duplicate_report(m, self.law.clone()),
            CheckerKind::Neutral => check_neutral(m),
            CheckerKind::Inverses => check_inverses_any(m),
            CheckerKind::All(parts) => {
                for p in parts {
                    let r = p.report(m);
                    if !r.holds {
                        return CheckReport::fail(
                            m,
                            self.law.clone(),
                            r.witness.unwrap_or_default(),
                            Detail::Component {
                                failed: r.law.tag(),
                                inner: r.detail.map(Box::new),
                            },
                        );
                    }
                }
                CheckReport::pass(m, self.law.clone())
            }
        }
    }

    /// True if the filled cells of a partial table (unfilled = `UNSET`)
    /// already rule out every completion.
    pub(crate) fn violated_partial(&self, table: &[u8], n: usize) -> bool {
        match &self.kind {
            CheckerKind::Equation(eq) => eq.violated_partial(table, n),
            CheckerKind::Latin => first_duplicate(table, n).is_some(),
            CheckerKind::Neutral | CheckerKind::Inverses => false,
            CheckerKind::All(parts) => parts.iter().any(|p| p.violated_partial(table, n)),
        }
    }

    pub(crate) fn prunes(&self) -> bool {
        match &self.kind {
            CheckerKind::Equation(_) | CheckerKind::Latin => true,
            CheckerKind::Neutral | CheckerKind::Inverses => false,
            CheckerKind::All(parts) => parts.iter().any(LawChecker::prunes),
        }
    }
}

/// Labels every named structure the magma instantiates.
pub fn classify(m: &Magma) -> StructureReport {
    let n = m.order();
    let neutrals = find_neutrals(m);
    let assoc = holds(m, &Law::Associative);
    let comm = holds(m, &Law::Commutative);
    let latin = first_duplicate(m.table(), n).is_none();
    let inverses = neutrals.two_sided.and_then(|e| {
        (0..n)
            .map(|a| inverse_of(m, e, a))
            .collect::<Option<Vec<_>>>()
    });

    let monoid = assoc && neutrals.two_sided.is_some();
    let group = monoid && inverses.is_some();
    let mut labels = vec![Structure::Magma];
    let flags = [
        (comm, Structure::Commutative),
        (assoc, Structure::Semigroup),
        (monoid, Structure::Monoid),
        (group, Structure::Group),
        (group && comm, Structure::AbelianGroup),
        (latin, Structure::Quasigroup),
        (latin && neutrals.two_sided.is_some(), Structure::Loop),
    ];
    labels.extend(flags.iter().filter(|(on, _)| *on).map(|&(_, s)| s));

    StructureReport {
        order: n,
        labels,
        neutrals,
        inverses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3_add() -> Magma {
        Magma::from_fn(3, |a, b| (a + b) % 3)
    }
    fn z3_sub() -> Magma {
        Magma::from_rows(3, &[[0, 2, 1], [1, 0, 2], [2, 1, 0]]).unwrap()
    }
    fn trivalent() -> Magma {
        Magma::from_rows(3, &[[2, 0, 0], [0, 2, 1], [0, 1, 2]]).unwrap()
    }
    fn proj1() -> Magma {
        Magma::from_rows(2, &[[0, 0], [1, 1]]).unwrap()
    }
    fn proj2() -> Magma {
        Magma::from_rows(2, &[[0, 1], [0, 1]]).unwrap()
    }
    fn trivial() -> Magma {
        Magma::from_rows(1, &[[0]]).unwrap()
    }

    #[test]
    fn identity_laws_on_small_tables() {
        assert!(
            check_identity_law(&z3_add(), &Law::Associative)
                .unwrap()
                .holds
        );
        assert!(
            check_identity_law(&trivalent(), &Law::Commutative)
                .unwrap()
                .holds
        );

        let r = check_identity_law(&trivalent(), &Law::Associative).unwrap();
        assert!(!r.holds);
        assert_eq!(
            r.witness,
            Some(Witness::of(&[("a", 0), ("b", 0), ("c", 1)]))
        );
        // a + (b + c) = 0 <-> (0 <-> 1/2) = 1, (a + b) + c = 1 <-> 1/2 = 1/2
        assert_eq!(r.detail, Some(Detail::Sides { lhs: 2, rhs: 1 }));

        assert!(
            check_identity_law(&z3_sub(), &Law::AbelGrassmannI)
                .unwrap()
                .holds
        );
        assert!(
            !check_identity_law(&z3_sub(), &Law::AbelGrassmannII)
                .unwrap()
                .holds
        );
        assert_eq!(
            check_identity_law(&z3_add(), &Law::Quasigroup),
            Err(PropertyError::NotEquational("H".into()))
        );
    }

    #[test]
    fn neutral_scans() {
        assert_eq!(find_neutrals(&trivalent()).two_sided, Some(2));
        assert_eq!(
            find_neutrals(&proj2()),
            NeutralReport {
                left: vec![0, 1],
                right: vec![],
                two_sided: None
            }
        );
        assert_eq!(
            find_neutrals(&z3_sub()),
            NeutralReport {
                left: vec![],
                right: vec![0],
                two_sided: None
            }
        );
        let r = check(&proj2(), &Law::Neutral);
        assert!(!r.holds);
        assert_eq!(r.witness, Some(Witness::default()));
    }

    #[test]
    fn inverses() {
        assert!(check_inverses(&z3_add(), 0).unwrap().holds);
        assert!(check_inverses(&trivial(), 0).unwrap().holds);
        assert!(check_inverses(&trivalent(), 2).unwrap().holds);
        let meet = Magma::from_fn(3, |a, b| a.min(b));
        let r = check_inverses(&meet, 2).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness.unwrap().get("a"), Some(0));
        assert_eq!(
            check_inverses(&z3_add(), 1),
            Err(PropertyError::NotNeutral(1))
        );
        assert!(check_inverses(&z3_add(), 5).is_err());
        assert!(!check(&z3_sub(), &Law::Inverses).holds);
    }

    #[test]
    fn latin_checks() {
        assert!(check_h(&z3_add()).holds);
        assert!(check_h(&z3_sub()).holds);
        let r = check_h(&proj2());
        assert!(!r.holds);
        assert_eq!(
            r.detail,
            Some(Detail::Duplicate {
                line: Line::Column,
                index: 0,
                value: 0,
                positions: [0, 1]
            })
        );

        assert!(check_cancellative(&z3_sub()).holds);
        assert!(check_cancellative(&trivial()).holds);
        let r = check_cancellative(&proj1());
        assert_eq!(
            r.witness,
            Some(Witness::of(&[("a", 0), ("b", 0), ("c", 1)]))
        );
        assert_eq!(proj1().op(0, 0), proj1().op(0, 1));
    }

    #[test]
    fn local_identity_scans() {
        let li = local_identities(&z3_sub(), 1).unwrap();
        assert_eq!((li.e(), li.e_hat()), (Some(0), Some(2)));
        for a in 0..3 {
            let li = local_identities(&z3_add(), a).unwrap();
            assert_eq!((li.e(), li.e_hat()), (Some(0), Some(0)));
        }
        let li = local_identities(&proj2(), 0).unwrap();
        assert_eq!(li.e(), Some(0));
        assert_eq!(li.left, vec![0, 1]);
        assert_eq!(li.e_hat(), None);
        assert!(local_identities(&proj2(), 2).is_err());
    }

    #[test]
    fn classification() {
        use Structure::*;
        assert_eq!(
            classify(&z3_add()).labels,
            vec![
                Magma,
                Commutative,
                Semigroup,
                Monoid,
                Group,
                AbelianGroup,
                Quasigroup,
                Loop
            ]
        );
        assert_eq!(classify(&z3_add()).inverses, Some(vec![0, 2, 1]));
        assert_eq!(classify(&z3_sub()).labels, vec![Magma, Quasigroup]);
        let meet = crate::magma::Magma::from_fn(3, |a, b| a.min(b));
        let r = classify(&meet);
        assert_eq!(r.labels, vec![Magma, Commutative, Semigroup, Monoid]);
        assert_eq!(r.neutrals.two_sided, Some(2));
    }

    #[test]
    fn composite_reports_name_the_failed_component() {
        let r = check(&z3_sub(), &Law::Abelian);
        assert!(!r.holds);
        match r.detail {
            Some(Detail::Component { failed, .. }) => assert_eq!(failed, "A"),
            other => panic!("unexpected detail {other:?}"),
        }
        assert!(check(&z3_add(), &Law::Abelian).holds);
        assert!(check(&z3_add(), &Law::Loop).holds);
        assert!(!check(&z3_sub(), &Law::Loop).holds);
    }

    #[test]
    fn report_json_shape() {
        let r = check(&trivalent(), &Law::Associative);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["order"], 3);
        assert_eq!(v["law"], "A");
        assert_eq!(v["holds"], false);
        assert_eq!(v["witness"], serde_json::json!({"a": 0, "b": 0, "c": 1}));
        assert_eq!(v["detail"]["kind"], "sides");
        let v = serde_json::to_value(check(&z3_add(), &Law::CyclicI)).unwrap();
        assert!(v.get("witness").is_none());
    }

    #[test]
    fn partial_pruning() {
        let n = 2;
        // only cell (0,0)=1 and (1,0)=0 filled: a=0,b=0: 0+0=1, (0+0)+0 = 1+0 = 0, 0+(0+0) = 0+1 unset
        let t = [1, UNSET, 0, UNSET];
        let assoc = LawChecker::new(&Law::Associative);
        assert!(!assoc.violated_partial(&t, n));
        let t = [1, 1, 0, UNSET];
        // 0+(0+0) = 0+1 = 1, (0+0)+0 = 1+0 = 0
        assert!(assoc.violated_partial(&t, n));
        let latin = LawChecker::new(&Law::Quasigroup);
        assert!(latin.violated_partial(&[0, 0, UNSET, UNSET], n));
        assert!(!latin.violated_partial(&[0, 1, UNSET, UNSET], n));
    }
}

//! Built-in example structures: finite families as Cayley tables, and
//! infinite carriers (integers, naturals, the unit interval) sampled on a
//! finite window with exact rational arithmetic.
//!
//! A law that holds on a window is only a necessary condition for the
//! infinite carrier. A failure on a window is a genuine counterexample.
//! Solvability questions (H, NE, IN) are answered by solving the equations
//! exactly over the whole carrier, so their failures are genuine too.

use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::dsl::{parse_law, Equation};
use crate::law::Law;
use crate::magma::Magma;
use crate::properties::{self, find_neutrals, NeutralReport};

/// Exact rational value.
pub type Q = Ratio<i64>;

/// Assignment count above which a window check is refused.
pub const WINDOW_ASSIGNMENT_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("unknown structure {0:?}")]
    Unknown(String),
    #[error("invalid parameter for {name}: {reason}")]
    BadParam { name: &'static str, reason: String },
    #[error("window of {size} values needs {assignments} assignments for {law}, above the cap of {WINDOW_ASSIGNMENT_CAP}")]
    WindowTooLarge {
        law: String,
        size: usize,
        assignments: u64,
    },
    #[error("{0} is a finite structure; check its table directly")]
    NotWindowed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowOp {
    /// `x - y` on the integers
    IntSub,
    /// `x + y` on the integers
    IntAdd,
    /// `x + y` on the naturals
    NatAdd,
    /// `x * y` on the naturals
    NatMul,
    /// `1 - x*y` on `[0, 1]`
    ProbStar,
}

/// Solution set of a one-unknown equation over the full carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solutions {
    None,
    One(Q),
    Many,
}

fn q(n: i64) -> Q {
    Q::from_integer(n)
}

impl WindowOp {
    pub fn apply(self, x: Q, y: Q) -> Q {
        match self {
            WindowOp::IntSub => x - y,
            WindowOp::IntAdd | WindowOp::NatAdd => x + y,
            WindowOp::NatMul => x * y,
            WindowOp::ProbStar => q(1) - x * y,
        }
    }

    pub fn in_carrier(self, x: Q) -> bool {
        match self {
            WindowOp::IntSub | WindowOp::IntAdd => x.is_integer(),
            WindowOp::NatAdd | WindowOp::NatMul => x.is_integer() && x >= q(0),
            WindowOp::ProbStar => x >= q(0) && x <= q(1),
        }
    }

    fn one_if_in(self, x: Q) -> Solutions {
        if self.in_carrier(x) {
            Solutions::One(x)
        } else {
            Solutions::None
        }
    }

    /// Solutions of `x + a = b`.
    pub fn solve_left(self, a: Q, b: Q) -> Solutions {
        match self {
            WindowOp::IntSub => self.one_if_in(b + a),
            WindowOp::IntAdd | WindowOp::NatAdd => self.one_if_in(b - a),
            WindowOp::NatMul => {
                if a == q(0) {
                    if b == q(0) {
                        Solutions::Many
                    } else {
                        Solutions::None
                    }
                } else {
                    self.one_if_in(b / a)
                }
            }
            WindowOp::ProbStar => {
                if a == q(0) {
                    if b == q(1) {
                        Solutions::Many
                    } else {
                        Solutions::None
                    }
                } else {
                    self.one_if_in((q(1) - b) / a)
                }
            }
        }
    }

    /// Solutions of `a + y = b`.
    pub fn solve_right(self, a: Q, b: Q) -> Solutions {
        match self {
            WindowOp::IntSub => self.one_if_in(a - b),
            _ => self.solve_left(a, b),
        }
    }
}

/// An infinite structure sampled on a finite window of its carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Windowed {
    pub op: WindowOp,
    /// Sample values in scan order; integer windows run 0, 1, -1, 2, -2, ...
    pub window: Vec<Q>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuiltinKind {
    Finite(Magma),
    Windowed(Windowed),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuiltinStructure {
    pub name: &'static str,
    pub param: Option<i64>,
    pub description: String,
    pub kind: BuiltinKind,
}

impl BuiltinStructure {
    pub fn magma(&self) -> Option<&Magma> {
        match &self.kind {
            BuiltinKind::Finite(m) => Some(m),
            BuiltinKind::Windowed(_) => None,
        }
    }

    pub fn label(&self) -> String {
        match self.param {
            Some(p) => format!("{}({p})", self.name),
            None => self.name.to_string(),
        }
    }
}

pub const BUILTIN_NAMES: [&str; 13] = [
    "zn_add",
    "zn_sub",
    "zn_rsub",
    "proj1",
    "proj2",
    "chain_meet",
    "chain_join",
    "trivalent_equiv",
    "prob_star",
    "int_sub_window",
    "int_add_window",
    "nat_add_window",
    "nat_mul_window",
];

fn positive(
    name: &'static str,
    p: Option<i64>,
    default: i64,
    max: i64,
) -> Result<i64, StructureError> {
    let p = p.unwrap_or(default);
    if p < 1 || p > max {
        return Err(StructureError::BadParam {
            name,
            reason: format!("expected 1..={max}, got {p}"),
        });
    }
    Ok(p)
}

/// Looks up a built-in by name. `param` is the carrier size (finite
/// families), the window radius (integers), the window maximum (naturals), or
/// the grid denominator (`prob_star`).
pub fn builtin(name: &str, param: Option<i64>) -> Result<BuiltinStructure, StructureError> {
    let name: &'static str = BUILTIN_NAMES
        .iter()
        .find(|n| **n == name)
        .ok_or_else(|| StructureError::Unknown(name.to_string()))?;
    let finite =
        |n: i64, description: String, f: &dyn Fn(usize, usize) -> usize| BuiltinStructure {
            name,
            param: Some(n),
            description,
            kind: BuiltinKind::Finite(Magma::from_fn(n as usize, f)),
        };
    let windowed = |p: i64, description: String, op: WindowOp, window: Vec<Q>| BuiltinStructure {
        name,
        param: Some(p),
        description,
        kind: BuiltinKind::Windowed(Windowed { op, window }),
    };
    let max = crate::magma::MAX_ORDER as i64;
    Ok(match name {
        "zn_add" => {
            let n = positive(name, param, 3, max)?;
            let m = n as usize;
            finite(n, format!("a + b mod {n}"), &|a, b| (a + b) % m)
        }
        "zn_sub" => {
            let n = positive(name, param, 3, max)?;
            let m = n as usize;
            finite(n, format!("a - b mod {n}"), &|a, b| (a + m - b) % m)
        }
        "zn_rsub" => {
            let n = positive(name, param, 3, max)?;
            let m = n as usize;
            finite(n, format!("b - a mod {n}"), &|a, b| (b + m - a) % m)
        }
        "proj1" => {
            let n = positive(name, param, 3, max)?;
            finite(n, format!("first projection on {n} elements"), &|a, _| a)
        }
        "proj2" => {
            let n = positive(name, param, 3, max)?;
            finite(n, format!("second projection on {n} elements"), &|_, b| b)
        }
        "chain_meet" => {
            let n = positive(name, param, 4, max)?;
            finite(n, format!("meet (min) on a {n}-element chain"), &|a, b| {
                a.min(b)
            })
        }
        "chain_join" => {
            let n = positive(name, param, 4, max)?;
            finite(n, format!("join (max) on a {n}-element chain"), &|a, b| {
                a.max(b)
            })
        }
        "trivalent_equiv" => {
            if param.is_some() {
                return Err(StructureError::BadParam {
                    name,
                    reason: "takes no parameter".into(),
                });
            }
            // elements 0, 1/2, 1 are indices 0, 1, 2
            let m = Magma::from_rows(3, &[[2, 0, 0], [0, 2, 1], [0, 1, 2]]).expect("valid table");
            BuiltinStructure {
                name,
                param: None,
                description: "three-valued equivalence on 0 < 1/2 < 1 (indices 0, 1, 2)".into(),
                kind: BuiltinKind::Finite(m),
            }
        }
        "prob_star" => {
            let d = positive(name, param, 4, 1000)?;
            let grid = (0..=d).map(|k| Q::new(k, d)).collect();
            windowed(
                d,
                format!("1 - pq on the grid k/{d} of [0, 1]"),
                WindowOp::ProbStar,
                grid,
            )
        }
        "int_sub_window" | "int_add_window" => {
            let r = positive(name, param, 5, 100_000)?;
            let op = if name == "int_sub_window" {
                WindowOp::IntSub
            } else {
                WindowOp::IntAdd
            };
            let sym = if op == WindowOp::IntSub { '-' } else { '+' };
            windowed(
                r,
                format!("x {sym} y on the integers, window [-{r}, {r}]"),
                op,
                (0..=r)
                    .flat_map(|k| if k == 0 { vec![k] } else { vec![k, -k] })
                    .map(q)
                    .collect(),
            )
        }
        "nat_add_window" | "nat_mul_window" => {
            let k = positive(name, param, 10, 100_000)?;
            let op = if name == "nat_add_window" {
                WindowOp::NatAdd
            } else {
                WindowOp::NatMul
            };
            let sym = if op == WindowOp::NatAdd { '+' } else { '*' };
            windowed(
                k,
                format!("x {sym} y on the naturals, window [0, {k}]"),
                op,
                (0..=k).map(q).collect(),
            )
        }
        _ => unreachable!("name checked against BUILTIN_NAMES"),
    })
}

/// Strength of a window verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Scope {
    /// A pass on a sample of an infinite carrier.
    #[serde(rename = "necessary-condition only")]
    NecessaryOnly,
    /// A concrete violation on the full carrier.
    #[serde(rename = "genuine counterexample")]
    Genuine,
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scope::NecessaryOnly => "necessary-condition only",
            Scope::Genuine => "genuine counterexample",
        })
    }
}

fn ser_q<S: Serializer>(v: &[(String, Q)], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(v.len()))?;
    for (k, x) in v {
        map.serialize_entry(k, &x.to_string())?;
    }
    map.end()
}

fn ser_opt_q<S: Serializer>(v: &Option<Vec<(String, Q)>>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => ser_q(v, s),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowReport {
    pub law: Law,
    pub holds: bool,
    pub scope: Scope,
    #[serde(serialize_with = "ser_opt_q", skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<(String, Q)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl WindowReport {
    fn pass(law: &Law, note: Option<String>) -> Self {
        Self {
            law: law.clone(),
            holds: true,
            scope: Scope::NecessaryOnly,
            witness: None,
            note,
        }
    }

    fn fail(law: &Law, witness: Vec<(&str, Q)>, note: impl Into<String>) -> Self {
        Self {
            law: law.clone(),
            holds: false,
            scope: Scope::Genuine,
            witness: Some(
                witness
                    .into_iter()
                    .map(|(k, v)| (k.to_string(), v))
                    .collect(),
            ),
            note: Some(note.into()),
        }
    }

    pub fn witness_value(&self, var: &str) -> Option<Q> {
        self.witness
            .as_ref()?
            .iter()
            .find(|(k, _)| k == var)
            .map(|&(_, v)| v)
    }
}

fn eval(op: WindowOp, t: &crate::dsl::Term, vals: &[(u8, Q)]) -> Q {
    match t {
        crate::dsl::Term::Var(v) => vals.iter().find(|(k, _)| k == v).unwrap().1,
        crate::dsl::Term::Op(l, r) => op.apply(eval(op, l, vals), eval(op, r, vals)),
    }
}

impl Windowed {
    fn guard(&self, law: &Law, arity: u32) -> Result<(), StructureError> {
        let assignments = (self.window.len() as u64).saturating_pow(arity);
        if assignments > WINDOW_ASSIGNMENT_CAP {
            return Err(StructureError::WindowTooLarge {
                law: law.tag(),
                size: self.window.len(),
                assignments,
            });
        }
        Ok(())
    }

    fn equation(&self, law: &Law, eq: &Equation) -> Result<WindowReport, StructureError> {
        let vars = eq.variables();
        self.guard(law, vars.len() as u32)?;
        let w = &self.window;
        let mut idx = vec![0usize; vars.len()];
        loop {
            let vals: Vec<(u8, Q)> = vars.iter().zip(&idx).map(|(&v, &i)| (v, w[i])).collect();
            let l = eval(self.op, &eq.lhs, &vals);
            let r = eval(self.op, &eq.rhs, &vals);
            if l != r {
                let names = eq.variable_names();
                let witness = names
                    .iter()
                    .map(String::as_str)
                    .zip(vals.iter().map(|p| p.1))
                    .collect();
                return Ok(WindowReport::fail(
                    law,
                    witness,
                    format!("{} = {l} but {} = {r}", eq.lhs, eq.rhs),
                ));
            }
            // odometer, last variable fastest
            let mut k = idx.len();
            loop {
                if k == 0 {
                    return Ok(WindowReport::pass(law, None));
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < w.len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    fn cancellative(&self, law: &Law) -> Result<WindowReport, StructureError> {
        self.guard(law, 3)?;
        let (op, w) = (self.op, &self.window);
        for &a in w {
            for &b in w {
                for &c in w {
                    if b == c {
                        continue;
                    }
                    if op.apply(a, b) == op.apply(a, c) {
                        return Ok(WindowReport::fail(
                            law,
                            vec![("a", a), ("b", b), ("c", c)],
                            "a + b = a + c with b != c",
                        ));
                    }
                    if op.apply(b, a) == op.apply(c, a) {
                        return Ok(WindowReport::fail(
                            law,
                            vec![("a", a), ("b", b), ("c", c)],
                            "b + a = c + a with b != c",
                        ));
                    }
                }
            }
        }
        Ok(WindowReport::pass(law, None))
    }

    fn unique_solvability(&self, law: &Law) -> Result<WindowReport, StructureError> {
        self.guard(law, 2)?;
        let (op, w) = (self.op, &self.window);
        for &a in w {
            for &b in w {
                for (sols, eqn) in [
                    (op.solve_left(a, b), "x + a = b"),
                    (op.solve_right(a, b), "a + y = b"),
                ] {
                    let problem = match sols {
                        Solutions::One(_) => continue,
                        Solutions::None => "has no solution",
                        Solutions::Many => "has more than one solution",
                    };
                    return Ok(WindowReport::fail(
                        law,
                        vec![("a", a), ("b", b)],
                        format!("{eqn} {problem} in the carrier"),
                    ));
                }
            }
        }
        Ok(WindowReport::pass(law, None))
    }

    /// The only possible two-sided neutral, from `e + a0 = a0` for some sample `a0`.
    fn neutral(&self, law: &Law) -> Result<Q, WindowReport> {
        let (op, w) = (self.op, &self.window);
        for &a0 in w {
            match op.solve_left(a0, a0) {
                Solutions::Many => continue,
                Solutions::None => {
                    return Err(WindowReport::fail(
                        law,
                        vec![("a", a0)],
                        "e + a = a has no solution",
                    ));
                }
                Solutions::One(e) => {
                    for &a in w {
                        if op.apply(e, a) != a || op.apply(a, e) != a {
                            return Err(WindowReport::fail(
                                law,
                                vec![("e", e), ("a", a)],
                                "the only candidate e is not neutral at a",
                            ));
                        }
                    }
                    return Ok(e);
                }
            }
        }
        Err(WindowReport {
            law: law.clone(),
            holds: false,
            scope: Scope::NecessaryOnly,
            witness: Some(Vec::new()),
            note: Some("no sample pins down a neutral candidate".into()),
        })
    }

    fn inverses(&self, law: &Law) -> WindowReport {
        let e = match self.neutral(law) {
            Ok(e) => e,
            Err(r) => return r,
        };
        let op = self.op;
        for &a in &self.window {
            match op.solve_right(a, e) {
                Solutions::One(x) if op.apply(x, a) == e => {}
                _ => {
                    return WindowReport::fail(
                        law,
                        vec![("a", a)],
                        format!("no two-sided inverse for a with respect to {e}"),
                    )
                }
            }
        }
        WindowReport::pass(law, Some(format!("neutral {e}")))
    }

    /// Checks `law` on every assignment drawn from the window.
    pub fn check(&self, law: &Law) -> Result<WindowReport, StructureError> {
        match law {
            Law::Cancellative => self.cancellative(law),
            Law::Quasigroup => self.unique_solvability(law),
            Law::Neutral => Ok(match self.neutral(law) {
                Ok(e) => WindowReport::pass(law, Some(format!("neutral {e}"))),
                Err(r) => r,
            }),
            Law::Inverses => Ok(self.inverses(law)),
            Law::Loop | Law::Group | Law::Abelian => {
                for part in law.components() {
                    let r = self.check(&part)?;
                    if !r.holds {
                        let note =
                            format!("{} fails: {}", part, r.note.clone().unwrap_or_default());
                        return Ok(WindowReport {
                            law: law.clone(),
                            note: Some(note),
                            ..r
                        });
                    }
                }
                Ok(WindowReport::pass(law, None))
            }
            other => self.equation(law, &other.equation().expect("equational")),
        }
    }
}

pub fn windowed_check(s: &BuiltinStructure, law: &Law) -> Result<WindowReport, StructureError> {
    match &s.kind {
        BuiltinKind::Windowed(w) => w.check(law),
        BuiltinKind::Finite(_) => Err(StructureError::NotWindowed(s.label())),
    }
}

// ---------------------------------------------------------------------------
// example suite

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimStatus {
    Agree,
    Disagree,
    /// Differs from the stated claim for a documented, confirmed reason.
    DocumentedDiscrepancy,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub law: Law,
    pub claimed: bool,
    pub actual: bool,
    /// Window verdicts only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scope: Option<Scope>,
    pub status: ClaimStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExampleOutcome {
    pub example: u8,
    pub structure: String,
    pub description: String,
    pub verdicts: Vec<Verdict>,
    /// One-sided neutral scan (finite structures).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub neutrals: Option<NeutralReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    /// Set when this example carries a documented one-sided-neutral discrepancy.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flag: Option<String>,
}

impl ExampleOutcome {
    pub fn disagreements(&self) -> usize {
        self.verdicts
            .iter()
            .filter(|v| v.status == ClaimStatus::Disagree)
            .count()
    }
}

/// A stated verdict known to be wrong, confirmed against the table before it is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flag {
    /// Stated to have a neutral element; only left neutrals exist.
    OnlyLeft,
    /// Stated to have none; right neutrals exist.
    RightExists,
    /// Stated to satisfy AGII; the mirror image of AGI, `(c+b)+a = (a+b)+c`, holds instead.
    MirroredAgi,
}

impl Flag {
    fn law(self) -> Law {
        match self {
            Flag::OnlyLeft | Flag::RightExists => Law::Neutral,
            Flag::MirroredAgi => Law::AbelGrassmannII,
        }
    }
}

struct Case {
    example: u8,
    name: &'static str,
    param: Option<i64>,
    claims: Vec<(Law, bool)>,
    flag: Option<Flag>,
}

fn case(example: u8, name: &'static str, param: Option<i64>, claims: &[(Law, bool)]) -> Case {
    Case {
        example,
        name,
        param,
        claims: claims.to_vec(),
        flag: None,
    }
}

fn cases() -> Vec<Case> {
    use Law::*;
    let comm_semigroup_not_qg = [
        (Associative, true),
        (Commutative, true),
        (Quasigroup, false),
    ];
    let ex1 = [
        (Associative, true),
        (Commutative, true),
        (Neutral, true),
        (Quasigroup, false),
    ];
    let ex2 = [
        (Associative, true),
        (Commutative, true),
        (Neutral, true),
        (Quasigroup, true),
        (Loop, true),
    ];
    let ex4 = [
        (Quasigroup, true),
        (AbelGrassmannI, true),
        (AbelGrassmannII, false),
        (CyclicI, false),
        (CyclicII, false),
        (Reduced, false),
        (Associative, false),
        (Commutative, false),
        (Neutral, false),
    ];
    let ex5 = [
        (Quasigroup, true),
        (AbelGrassmannII, true),
        (AbelGrassmannI, false),
        (CyclicI, false),
        (CyclicII, false),
        (Reduced, false),
        (Associative, false),
        (Commutative, false),
        (Neutral, false),
    ];
    let ex6 = [
        (Associative, true),
        (Commutative, false),
        (AbelGrassmannII, true),
        (AbelGrassmannI, false),
        (CyclicI, false),
        (CyclicII, false),
        (Reduced, false),
        (Neutral, true),
        (Quasigroup, false),
    ];
    let ex7 = [
        (Associative, true),
        (Commutative, false),
        (Reduced, true),
        (AbelGrassmannI, false),
        (AbelGrassmannII, false),
        (CyclicI, false),
        (CyclicII, false),
        (Neutral, false),
        (Quasigroup, false),
    ];
    let ex8 = [
        (Commutative, true),
        (Associative, false),
        (Neutral, false),
        (AbelGrassmannI, false),
        (AbelGrassmannII, false),
        (CyclicI, false),
        (CyclicII, false),
        (Reduced, false),
        (Quasigroup, false),
    ];
    let ex9 = [
        (Commutative, true),
        (Associative, false),
        (Neutral, true),
        (AbelGrassmannI, false),
        (AbelGrassmannII, false),
        (CyclicI, false),
        (CyclicII, false),
        (Reduced, false),
        (Quasigroup, false),
    ];
    vec![
        case(1, "nat_add_window", None, &ex1),
        case(1, "nat_mul_window", None, &ex1),
        case(2, "int_add_window", None, &ex2),
        case(2, "zn_add", Some(5), &ex2),
        case(3, "chain_meet", Some(4), &comm_semigroup_not_qg),
        case(3, "chain_join", Some(4), &comm_semigroup_not_qg),
        case(4, "int_sub_window", None, &ex4),
        case(4, "zn_sub", Some(3), &ex4),
        Case {
            flag: Some(Flag::MirroredAgi),
            ..case(5, "zn_rsub", Some(3), &ex5)
        },
        Case {
            flag: Some(Flag::OnlyLeft),
            ..case(6, "proj2", Some(3), &ex6)
        },
        Case {
            flag: Some(Flag::RightExists),
            ..case(7, "proj1", Some(3), &ex7)
        },
        case(8, "prob_star", None, &ex8),
        case(9, "trivalent_equiv", None, &ex9),
    ]
}

fn confirm_flag(flag: Flag, m: &Magma) -> Option<String> {
    let n = find_neutrals(m);
    if flag != Flag::MirroredAgi && n.two_sided.is_some() {
        return None;
    }
    match flag {
        Flag::OnlyLeft if !n.left.is_empty() && n.right.is_empty() => Some(format!(
            "stated to have a neutral element, but only left neutrals {:?} exist; no two-sided neutral",
            n.left
        )),
        Flag::RightExists if !n.right.is_empty() => Some(format!(
            "stated to have no neutral element; true for two-sided neutrals, but right neutrals {:?} exist",
            n.right
        )),
        Flag::MirroredAgi => {
            let agii = properties::check(m, &Law::AbelGrassmannII);
            let mirror = parse_law("(c + b) + a = (a + b) + c").expect("valid law");
            if agii.holds || !properties::holds(m, &mirror) {
                return None;
            }
            Some(format!(
                "stated to satisfy AGII, but it fails at {}; the identity (c + b) + a = (a + b) + c holds instead",
                agii.witness.map(|w| w.to_string()).unwrap_or_default()
            ))
        }
        _ => None,
    }
}

fn run_case(c: &Case) -> Result<ExampleOutcome, StructureError> {
    let s = builtin(c.name, c.param)?;
    let (neutrals, labels) = match &s.kind {
        BuiltinKind::Finite(m) => {
            let report = properties::classify(m);
            (
                Some(find_neutrals(m)),
                Some(report.labels.iter().map(ToString::to_string).collect()),
            )
        }
        BuiltinKind::Windowed(_) => (None, None),
    };
    let flag = match (c.flag, s.magma()) {
        (Some(f), Some(m)) => confirm_flag(f, m),
        _ => None,
    };

    let mut verdicts = Vec::new();
    for (law, claimed) in &c.claims {
        let (actual, scope) = match &s.kind {
            BuiltinKind::Finite(m) => (properties::holds(m, law), None),
            BuiltinKind::Windowed(w) => {
                let r = w.check(law)?;
                (r.holds, Some(r.scope))
            }
        };
        let explained = flag.is_some() && c.flag.is_some_and(|f| f.law() == *law);
        let status = match (actual == *claimed, explained) {
            (_, true) => ClaimStatus::DocumentedDiscrepancy,
            (true, false) => ClaimStatus::Agree,
            (false, false) => ClaimStatus::Disagree,
        };
        verdicts.push(Verdict {
            law: law.clone(),
            claimed: *claimed,
            actual,
            scope,
            status,
        });
    }
    Ok(ExampleOutcome {
        example: c.example,
        structure: s.label(),
        description: s.description.clone(),
        verdicts,
        neutrals,
        labels,
        flag,
    })
}

/// Runs every example structure against its stated verdicts.
pub fn example_suite() -> Vec<ExampleOutcome> {
    cases()
        .iter()
        .map(|c| run_case(c).expect("built-in example cases are well formed"))
        .collect()
}

/// The finite built-ins used by the example suite, for export.
pub fn finite_examples() -> Vec<BuiltinStructure> {
    cases()
        .iter()
        .filter_map(|c| builtin(c.name, c.param).ok())
        .filter(|s| s.magma().is_some())
        .collect()
}

//! Named properties of a binary operation, plus user-written equations.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::dsl::{Equation, Term};

/// A property a magma may satisfy.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Law {
    /// A: `a + (b + c) = (a + b) + c`
    Associative,
    /// C: `a + b = b + a`
    Commutative,
    /// NE: a two-sided neutral element exists.
    Neutral,
    /// IN: a two-sided neutral exists and every element has a two-sided inverse.
    Inverses,
    /// CAI: `a + (b + c) = c + (a + b)`
    CyclicI,
    /// CAII: `a + (b + c) = (c + a) + b`
    CyclicII,
    /// AGI: `a + (b + c) = c + (b + a)`
    AbelGrassmannI,
    /// AGII: `a + (b + c) = (b + a) + c`
    AbelGrassmannII,
    /// R: `(a + b) + c = a + (c + b)`
    Reduced,
    /// H: `x + a = b` and `a + y = b` have unique solutions (Latin square).
    Quasigroup,
    /// CA: left and right cancellation.
    Cancellative,
    Loop,
    Group,
    Abelian,
    User(Equation),
}

/// The seven purely equational built-ins.
pub const IDENTITY_LAWS: [Law; 7] = [
    Law::Associative,
    Law::Commutative,
    Law::CyclicI,
    Law::CyclicII,
    Law::AbelGrassmannI,
    Law::AbelGrassmannII,
    Law::Reduced,
];

/// Every built-in law, in tag order.
pub const BUILTIN_LAWS: [Law; 14] = [
    Law::Associative,
    Law::Commutative,
    Law::Neutral,
    Law::Inverses,
    Law::CyclicI,
    Law::CyclicII,
    Law::AbelGrassmannI,
    Law::AbelGrassmannII,
    Law::Reduced,
    Law::Quasigroup,
    Law::Cancellative,
    Law::Loop,
    Law::Group,
    Law::Abelian,
];

fn v(i: u8) -> Term {
    Term::Var(i)
}

fn op(l: Term, r: Term) -> Term {
    Term::op(l, r)
}

const A: u8 = 0;
const B: u8 = 1;
const C: u8 = 2;

impl Law {
    pub fn tag(&self) -> String {
        match self {
            Law::User(eq) => eq.to_string(),
            other => other.builtin_tag().unwrap().to_string(),
        }
    }

    fn builtin_tag(&self) -> Option<&'static str> {
        Some(match self {
            Law::Associative => "A",
            Law::Commutative => "C",
            Law::Neutral => "NE",
            Law::Inverses => "IN",
            Law::CyclicI => "CAI",
            Law::CyclicII => "CAII",
            Law::AbelGrassmannI => "AGI",
            Law::AbelGrassmannII => "AGII",
            Law::Reduced => "R",
            Law::Quasigroup => "H",
            Law::Cancellative => "CA",
            Law::Loop => "LOOP",
            Law::Group => "GROUP",
            Law::Abelian => "ABELIAN",
            Law::User(_) => return None,
        })
    }

    /// Case-insensitive lookup of a built-in name.
    pub fn from_name(name: &str) -> Option<Law> {
        BUILTIN_LAWS
            .iter()
            .find(|l| l.builtin_tag().unwrap().eq_ignore_ascii_case(name))
            .cloned()
    }

    /// The defining equation for equational laws.
    pub fn equation(&self) -> Option<Equation> {
        let (lhs, rhs) = match self {
            Law::Associative => (op(v(A), op(v(B), v(C))), op(op(v(A), v(B)), v(C))),
            Law::Commutative => (op(v(A), v(B)), op(v(B), v(A))),
            Law::CyclicI => (op(v(A), op(v(B), v(C))), op(v(C), op(v(A), v(B)))),
            Law::CyclicII => (op(v(A), op(v(B), v(C))), op(op(v(C), v(A)), v(B))),
            Law::AbelGrassmannI => (op(v(A), op(v(B), v(C))), op(v(C), op(v(B), v(A)))),
            Law::AbelGrassmannII => (op(v(A), op(v(B), v(C))), op(op(v(B), v(A)), v(C))),
            Law::Reduced => (op(op(v(A), v(B)), v(C)), op(v(A), op(v(C), v(B)))),
            Law::User(eq) => return Some(eq.clone()),
            _ => return None,
        };
        Some(Equation::new(lhs, rhs))
    }

    pub fn is_equational(&self) -> bool {
        matches!(
            self,
            Law::Associative
                | Law::Commutative
                | Law::CyclicI
                | Law::CyclicII
                | Law::AbelGrassmannI
                | Law::AbelGrassmannII
                | Law::Reduced
                | Law::User(_)
        )
    }

    /// Primitive laws whose conjunction is this law.
    pub fn components(&self) -> Vec<Law> {
        match self {
            Law::Loop => vec![Law::Quasigroup, Law::Neutral],
            Law::Group => vec![Law::Associative, Law::Neutral, Law::Inverses],
            Law::Abelian => vec![
                Law::Associative,
                Law::Commutative,
                Law::Neutral,
                Law::Inverses,
            ],
            other => vec![other.clone()],
        }
    }

    /// H, LOOP, or a composite containing H: enumeration can stay inside Latin squares.
    pub fn implies_latin(&self) -> bool {
        matches!(self, Law::Quasigroup | Law::Loop)
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Law::User(eq) => write!(f, "{eq}"),
            other => f.write_str(other.builtin_tag().unwrap()),
        }
    }
}

impl Serialize for Law {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.tag())
    }
}

pub fn format_laws(laws: &[Law]) -> String {
    laws.iter().map(Law::tag).collect::<Vec<_>>().join(", ")
}

//! The theorem catalog, verified extensionally over every finite structure
//! of small order.
//!
//! A pass means "no counterexample up to order N". It is evidence for a
//! statement about arbitrary carriers, not a proof of it.

use std::fmt;
use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::caps::Caps;
use crate::enumerate::{EnumError, EnumSpec, Enumeration};
use crate::law::{format_laws, Law};
use crate::magma::Magma;
use crate::properties::LawChecker;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TheoremId(pub u8);

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}", self.0)
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl std::str::FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits = s.strip_prefix(['T', 't']).unwrap_or(s);
        match digits.parse::<u8>() {
            Ok(k @ 1..=11) => Ok(TheoremId(k)),
            _ => Err(format!("unknown theorem {s:?}, expected T1..T11")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Domain {
    AllMagmas,
    QuasigroupsOnly,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::AllMagmas => "all-magmas",
            Domain::QuasigroupsOnly => "quasigroups-only",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClauseKind {
    Implication,
    Equivalence,
}

/// `premises ⇒ conclusions`, or `premises ⇔ conclusions` (each side a conjunction).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub premises: Vec<Law>,
    pub conclusions: Vec<Law>,
    pub kind: ClauseKind,
}

impl Clause {
    fn implies(premises: &[Law], conclusions: &[Law]) -> Self {
        Self {
            premises: premises.to_vec(),
            conclusions: conclusions.to_vec(),
            kind: ClauseKind::Implication,
        }
    }

    fn iff(left: &[Law], right: &[Law]) -> Self {
        Self {
            kind: ClauseKind::Equivalence,
            ..Self::implies(left, right)
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrow = match self.kind {
            ClauseKind::Implication => "=>",
            ClauseKind::Equivalence => "<=>",
        };
        write!(
            f,
            "{{{}}} {arrow} {{{}}}",
            format_laws(&self.premises),
            format_laws(&self.conclusions)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremSpec {
    pub id: TheoremId,
    pub statement: &'static str,
    pub domain: Domain,
    pub clauses: Vec<Clause>,
}

impl TheoremSpec {
    pub fn is_equivalence_list(&self) -> bool {
        self.clauses
            .iter()
            .all(|c| c.kind == ClauseKind::Equivalence)
    }
}

/// The eleven theorems. T5 and T11 carry one equivalence per listed condition.
pub fn theorem_catalog() -> Vec<TheoremSpec> {
    use Law::*;
    let t = |id, statement, domain, clauses| TheoremSpec {
        id: TheoremId(id),
        statement,
        domain,
        clauses,
    };
    let all = Domain::AllMagmas;
    let qg = Domain::QuasigroupsOnly;
    vec![
        t(
            1,
            "commutative semigroups satisfy CAI, CAII, AGI, AGII and R",
            all,
            vec![Clause::implies(
                &[Associative, Commutative],
                &[CyclicI, CyclicII, AbelGrassmannI, AbelGrassmannII, Reduced],
            )],
        ),
        t(
            2,
            "abelian groups satisfy H",
            all,
            vec![Clause::implies(&[Abelian], &[Quasigroup])],
        ),
        t(
            3,
            "a magma with a neutral element satisfying AGII is a commutative semigroup",
            all,
            vec![Clause::implies(
                &[Neutral, AbelGrassmannII],
                &[Associative, Commutative],
            )],
        ),
        t(
            4,
            "a magma with a neutral element satisfying CAI, CAII, AGI or R is a commutative semigroup",
            all,
            [CyclicI, CyclicII, AbelGrassmannI, Reduced]
                .into_iter()
                .map(|x| Clause::implies(&[Neutral, x], &[Associative, Commutative]))
                .collect(),
        ),
        t(
            5,
            "abelian group <=> NE, IN and one of CAI, CAII, AGI, AGII, R",
            all,
            [CyclicI, CyclicII, AbelGrassmannI, AbelGrassmannII, Reduced]
                .into_iter()
                .map(|x| Clause::iff(&[Abelian], &[Neutral, Inverses, x]))
                .collect(),
        ),
        t(
            6,
            "an associative commutative quasigroup is an abelian group, and conversely",
            all,
            vec![
                Clause::implies(&[Quasigroup, Associative, Commutative], &[Abelian]),
                Clause::implies(&[Abelian], &[Quasigroup, Associative, Commutative]),
            ],
        ),
        t(
            7,
            "quasigroups are cancellative",
            all,
            vec![Clause::implies(&[Quasigroup], &[Cancellative])],
        ),
        t(
            8,
            "a quasigroup satisfying CAI is a loop",
            qg,
            vec![Clause::implies(&[Quasigroup, CyclicI], &[Loop])],
        ),
        t(
            9,
            "a quasigroup satisfying CAII is a loop, and is associative with CAI",
            qg,
            vec![
                Clause::implies(&[Quasigroup, CyclicII], &[Loop]),
                Clause::implies(&[Quasigroup, CyclicII], &[Associative, CyclicI]),
            ],
        ),
        t(
            10,
            "a quasigroup satisfying AGII or R is a loop",
            qg,
            vec![
                Clause::implies(&[Quasigroup, AbelGrassmannII], &[Loop]),
                Clause::implies(&[Quasigroup, Reduced], &[Loop]),
            ],
        ),
        t(
            11,
            "abelian group <=> H and one of CAI, CAII, AGII, R",
            qg,
            [CyclicI, CyclicII, AbelGrassmannII, Reduced]
                .into_iter()
                .map(|x| Clause::iff(&[Abelian], &[Quasigroup, x]))
                .collect(),
        ),
    ]
}

pub fn theorem(id: TheoremId) -> Option<TheoremSpec> {
    theorem_catalog().into_iter().find(|t| t.id == id)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error("unknown theorem {0}")]
    Unknown(TheoremId),
    #[error("{id} ranges over {domain}; order {order} exceeds the cap of {cap}")]
    Infeasible {
        id: TheoremId,
        domain: Domain,
        order: usize,
        cap: usize,
    },
    #[error(transparent)]
    Enum(#[from] EnumError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub magma: Magma,
    /// Index into the theorem's clauses.
    pub clause: usize,
    /// Laws that hold on the side that should imply the other.
    pub satisfied: Vec<Law>,
    /// Laws that fail on the implied side.
    pub violated: Vec<Law>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub theorem: TheoremSpec,
    pub max_order: usize,
    pub structures_examined: u64,
    pub counterexample: Option<Counterexample>,
    #[serde(serialize_with = "as_secs")]
    pub elapsed: Duration,
}

fn as_secs<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

struct CompiledClause {
    left: Vec<LawChecker>,
    right: Vec<LawChecker>,
    kind: ClauseKind,
}

fn failing(checkers: &[LawChecker], m: &Magma) -> Vec<Law> {
    checkers
        .iter()
        .filter(|c| !c.holds(m))
        .map(|c| c.law().clone())
        .collect()
}

impl CompiledClause {
    fn new(c: &Clause) -> Self {
        Self {
            left: c.premises.iter().map(LawChecker::new).collect(),
            right: c.conclusions.iter().map(LawChecker::new).collect(),
            kind: c.kind,
        }
    }

    /// `(satisfied side, violated laws)` when `m` breaks this clause.
    fn violation(&self, m: &Magma) -> Option<(Vec<Law>, Vec<Law>)> {
        let left_ok = self.left.iter().all(|c| c.holds(m));
        if left_ok {
            let bad = failing(&self.right, m);
            if !bad.is_empty() {
                let sat = self.left.iter().map(|c| c.law().clone()).collect();
                return Some((sat, bad));
            }
            return None;
        }
        if self.kind == ClauseKind::Equivalence && self.right.iter().all(|c| c.holds(m)) {
            let sat = self.right.iter().map(|c| c.law().clone()).collect();
            return Some((sat, failing(&self.left, m)));
        }
        None
    }
}

/// Re-checks a counterexample against its theorem.
pub fn recheck(spec: &TheoremSpec, cx: &Counterexample) -> bool {
    spec.clauses
        .get(cx.clause)
        .and_then(|c| CompiledClause::new(c).violation(&cx.magma))
        .is_some()
}

fn domain_enum(domain: Domain, order: usize) -> EnumSpec {
    match domain {
        Domain::AllMagmas => EnumSpec::all_magmas(order),
        Domain::QuasigroupsOnly => EnumSpec::latin_squares(order),
    }
}

pub fn domain_cap(domain: Domain, caps: &Caps) -> usize {
    match domain {
        Domain::AllMagmas => caps.magma_order,
        Domain::QuasigroupsOnly => caps.quasigroup_theorem_order.min(caps.latin_order),
    }
}

pub fn verify_theorem(id: TheoremId, max_order: usize) -> Result<VerificationReport, TheoremError> {
    verify_theorem_with(id, max_order, 1, &Caps::from_env())
}

/// Checks every structure of order `1..=max_order` in the theorem's domain.
pub fn verify_theorem_with(
    id: TheoremId,
    max_order: usize,
    workers: usize,
    caps: &Caps,
) -> Result<VerificationReport, TheoremError> {
    let spec = theorem(id).ok_or(TheoremError::Unknown(id))?;
    let cap = domain_cap(spec.domain, caps);
    if max_order > cap {
        return Err(TheoremError::Infeasible {
            id,
            domain: spec.domain,
            order: max_order,
            cap,
        });
    }
    let clauses: Vec<CompiledClause> = spec.clauses.iter().map(CompiledClause::new).collect();
    let started = Instant::now();
    let mut examined = 0;
    let mut counterexample = None;
    for order in 1..=max_order {
        let e = Enumeration::with_caps(&domain_enum(spec.domain, order), caps)?;
        let scan = e.scan(workers, |m| {
            clauses
                .iter()
                .enumerate()
                .find_map(|(i, c)| c.violation(m).map(|v| (i, v)))
        });
        examined += scan.examined;
        if let Some((magma, (clause, (satisfied, violated)))) = scan.first {
            counterexample = Some(Counterexample {
                magma,
                clause,
                satisfied,
                violated,
            });
            break;
        }
    }
    Ok(VerificationReport {
        theorem: spec,
        max_order,
        structures_examined: examined,
        counterexample,
        elapsed: started.elapsed(),
    })
}

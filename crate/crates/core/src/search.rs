//! Model search: a table satisfying every assumed law and violating one target law.

use std::ops::RangeInclusive;

use serde::Serialize;
use thiserror::Error;

use crate::caps::Caps;
use crate::enumerate::{EnumError, EnumSpec, Enumeration, Mode};
use crate::law::Law;
use crate::magma::Magma;
use crate::properties::LawChecker;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpec {
    pub assume: Vec<Law>,
    pub refute: Law,
    pub orders: RangeInclusive<usize>,
    pub up_to_iso: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error("empty order range")]
    EmptyRange,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub found: Option<Magma>,
    /// Orders searched completely without finding a model.
    pub orders_exhausted: Option<RangeInclusive<usize>>,
    /// Tables satisfying the assumptions that were examined.
    pub structures_examined: u64,
}

impl SearchResult {
    pub fn found_order(&self) -> Option<usize> {
        self.found.as_ref().map(Magma::order)
    }
}

impl SearchSpec {
    pub fn new(
        assume: impl IntoIterator<Item = Law>,
        refute: Law,
        orders: RangeInclusive<usize>,
    ) -> Self {
        Self {
            assume: assume.into_iter().collect(),
            refute,
            orders,
            up_to_iso: false,
        }
    }

    /// Latin squares when the assumptions include H, all magmas otherwise.
    pub fn mode(&self) -> Mode {
        if self.assume.iter().any(Law::implies_latin) {
            Mode::LatinSquares
        } else {
            Mode::AllMagmas
        }
    }

    pub fn enum_spec(&self, order: usize) -> EnumSpec {
        EnumSpec {
            order,
            constraints: self.assume.clone(),
            up_to_iso: self.up_to_iso,
            mode: self.mode(),
        }
    }

    fn enumerations(&self, caps: &Caps) -> Result<Vec<Enumeration>, SearchError> {
        if self.orders.is_empty() || *self.orders.start() == 0 {
            return Err(SearchError::EmptyRange);
        }
        // validate every order before doing any work
        self.orders
            .clone()
            .map(|n| Enumeration::with_caps(&self.enum_spec(n), caps).map_err(Into::into))
            .collect()
    }

    /// Largest order this spec's mode allows under `caps`.
    pub fn order_cap(&self, caps: &Caps) -> usize {
        self.enum_spec(1).cap(caps)
    }
}

pub fn find_model(spec: &SearchSpec) -> Result<SearchResult, SearchError> {
    find_model_with(spec, 1, &Caps::from_env())
}

/// Returns the first model in enumeration order; the same for any `workers`.
pub fn find_model_with(
    spec: &SearchSpec,
    workers: usize,
    caps: &Caps,
) -> Result<SearchResult, SearchError> {
    let enumerations = spec.enumerations(caps)?;
    let refute = LawChecker::new(&spec.refute);
    let mut examined = 0;
    let lo = *spec.orders.start();
    for e in &enumerations {
        let scan = e.scan(workers, |m| (!refute.holds(m)).then_some(()));
        examined += scan.examined;
        if let Some((m, ())) = scan.first {
            let order = m.order();
            return Ok(SearchResult {
                found: Some(m),
                orders_exhausted: (order > lo).then(|| lo..=order - 1),
                structures_examined: examined,
            });
        }
    }
    Ok(SearchResult {
        found: None,
        orders_exhausted: Some(spec.orders.clone()),
        structures_examined: examined,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixEntry {
    pub assume: Law,
    pub refute: Law,
    pub max_order: usize,
    pub result: SearchResult,
}

/// Runs `find_model(assume {P}, refute Q)` for every ordered pair `P != Q`.
///
/// Each pair searches orders `1..=max_order`, clamped to what its mode allows.
pub fn independence_matrix(
    laws: &[Law],
    max_order: usize,
    workers: usize,
    caps: &Caps,
) -> Result<Vec<MatrixEntry>, SearchError> {
    let mut out = Vec::new();
    for p in laws {
        for q in laws {
            if p == q {
                continue;
            }
            let mut spec = SearchSpec::new([p.clone()], q.clone(), 1..=max_order);
            let top = max_order.min(spec.order_cap(caps));
            spec.orders = 1..=top;
            out.push(MatrixEntry {
                assume: p.clone(),
                refute: q.clone(),
                max_order: top,
                result: find_model_with(&spec, workers, caps)?,
            });
        }
    }
    Ok(out)
}

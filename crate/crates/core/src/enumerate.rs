//! Exhaustive generation of Cayley tables.
//!
//! Tables are filled cell by cell in row-major order, trying values in
//! increasing order, so every stream comes out in lexicographic order of the
//! flattened table. Latin-square mode keeps per-row and per-column bitmasks of
//! used symbols. Constraints that can be refuted on a partial table (equations,
//! H, CA) are checked after every cell; the rest are checked on complete tables.
//!
//! Parallel runs split the tree at the first row: each admissible first row is
//! a subtree, and results are merged by subtree index.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::caps::Caps;
use crate::law::Law;
use crate::magma::{self, Magma};
use crate::properties::{LawChecker, UNSET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    AllMagmas,
    LatinSquares,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::AllMagmas => "all-magmas",
            Mode::LatinSquares => "latin-squares",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("order must be positive")]
    ZeroOrder,
    #[error("{mode} enumeration at order {order} exceeds the cap of {cap}")]
    Infeasible {
        mode: Mode,
        order: usize,
        cap: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumSpec {
    pub order: usize,
    pub constraints: Vec<Law>,
    pub up_to_iso: bool,
    pub mode: Mode,
}

impl EnumSpec {
    pub fn all_magmas(order: usize) -> Self {
        Self {
            order,
            constraints: Vec::new(),
            up_to_iso: false,
            mode: Mode::AllMagmas,
        }
    }

    pub fn latin_squares(order: usize) -> Self {
        Self {
            mode: Mode::LatinSquares,
            ..Self::all_magmas(order)
        }
    }

    pub fn with_constraints(mut self, laws: impl IntoIterator<Item = Law>) -> Self {
        self.constraints.extend(laws);
        self
    }

    pub fn up_to_iso(mut self, on: bool) -> Self {
        self.up_to_iso = on;
        self
    }

    fn has_equational_constraint(&self) -> bool {
        self.constraints
            .iter()
            .flat_map(Law::components)
            .any(|l| l.is_equational())
    }

    /// The order cap that applies to this spec.
    pub fn cap(&self, caps: &Caps) -> usize {
        let cap = match self.mode {
            Mode::LatinSquares => caps.latin_order,
            Mode::AllMagmas if self.has_equational_constraint() => caps.pruned_magma_order,
            Mode::AllMagmas => caps.magma_order,
        };
        if self.up_to_iso {
            cap.min(caps.canon_order)
        } else {
            cap
        }
    }

    pub fn validate(&self, caps: &Caps) -> Result<(), EnumError> {
        if self.order == 0 {
            return Err(EnumError::ZeroOrder);
        }
        let cap = self.cap(caps);
        if self.order > cap {
            return Err(EnumError::Infeasible {
                mode: self.mode,
                order: self.order,
                cap,
            });
        }
        Ok(())
    }
}

/// Constraint checkers split by when they can be decided.
#[derive(Debug, Clone)]
struct Compiled {
    n: usize,
    latin: bool,
    partial: Vec<LawChecker>,
    leaf: Vec<LawChecker>,
    canonical_only: bool,
}

impl Compiled {
    fn new(spec: &EnumSpec) -> Self {
        let latin = spec.mode == Mode::LatinSquares;
        let mut partial = Vec::new();
        let mut leaf = Vec::new();
        for law in spec.constraints.iter().flat_map(Law::components) {
            // Latin mode already enforces H and CA
            if latin && matches!(law, Law::Quasigroup | Law::Cancellative) {
                continue;
            }
            let checker = LawChecker::new(&law);
            if checker.prunes() {
                partial.push(checker);
            } else {
                leaf.push(checker);
            }
        }
        Self {
            n: spec.order,
            latin,
            partial,
            leaf,
            canonical_only: spec.up_to_iso,
        }
    }
}

/// Depth-first walker over one subtree of table completions.
struct Walker<'c> {
    c: &'c Compiled,
    table: Vec<u8>,
    row_used: Vec<u32>,
    col_used: Vec<u32>,
    start: usize,
    stop: usize,
    pos: usize,
    check_leaf: bool,
    done: bool,
}

impl<'c> Walker<'c> {
    /// Walks completions of `prefix` (assumed admissible) up to `stop` cells.
    fn new(c: &'c Compiled, prefix: &[u8], stop: usize, check_leaf: bool) -> Self {
        let n = c.n;
        let mut w = Self {
            c,
            table: vec![UNSET; n * n],
            row_used: vec![0; n],
            col_used: vec![0; n],
            start: prefix.len(),
            stop,
            pos: prefix.len(),
            check_leaf,
            done: false,
        };
        for (i, &v) in prefix.iter().enumerate() {
            w.table[i] = v;
            w.mark(i, v);
        }
        w
    }

    #[inline]
    fn mark(&mut self, cell: usize, v: u8) {
        let n = self.c.n;
        self.row_used[cell / n] |= 1 << v;
        self.col_used[cell % n] |= 1 << v;
    }

    #[inline]
    fn unmark(&mut self, cell: usize, v: u8) {
        let n = self.c.n;
        self.row_used[cell / n] &= !(1 << v);
        self.col_used[cell % n] &= !(1 << v);
    }

    fn accept_leaf(&self) -> bool {
        if !self.check_leaf || (self.c.leaf.is_empty() && !self.c.canonical_only) {
            return true;
        }
        let m = Magma::from_flat_unchecked(self.c.n, self.table.clone());
        self.c.leaf.iter().all(|l| l.holds(&m))
            && (!self.c.canonical_only || magma::is_canonical(&m))
    }

    /// Moves to the next accepted leaf. The filled cells are then `table[..stop]`.
    fn advance(&mut self) -> bool {
        let n = self.c.n;
        if self.done {
            return false;
        }
        if self.start == self.stop {
            // nothing left to fill: the prefix is the only leaf
            self.done = true;
            return self.accept_leaf();
        }
        loop {
            if self.pos == self.stop {
                self.pos -= 1;
                if self.accept_leaf() {
                    return true;
                }
                continue;
            }
            let pos = self.pos;
            let cur = self.table[pos];
            let mut v = if cur == UNSET {
                0
            } else {
                if self.c.latin {
                    self.unmark(pos, cur);
                }
                cur as usize + 1
            };
            if self.c.latin {
                let used = self.row_used[pos / n] | self.col_used[pos % n];
                while v < n && used & (1 << v) != 0 {
                    v += 1;
                }
            }
            if v >= n {
                self.table[pos] = UNSET;
                if pos == self.start {
                    self.done = true;
                    return false;
                }
                self.pos -= 1;
                continue;
            }
            self.table[pos] = v as u8;
            if self.c.latin {
                self.mark(pos, v as u8);
            }
            if self
                .c
                .partial
                .iter()
                .any(|p| p.violated_partial(&self.table, n))
            {
                continue;
            }
            self.pos += 1;
        }
    }

    fn current(&self) -> Magma {
        Magma::from_flat_unchecked(self.c.n, self.table.clone())
    }
}

/// Outcome of a scan for the first table matching a predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scan<T> {
    pub first: Option<(Magma, T)>,
    /// Tables examined in enumeration order up to and including the hit,
    /// or the whole stream when there is no hit.
    pub examined: u64,
}

/// A validated enumeration, ready to stream, count, or scan.
#[derive(Debug, Clone)]
pub struct Enumeration {
    spec: EnumSpec,
    compiled: Compiled,
}

impl Enumeration {
    pub fn new(spec: &EnumSpec) -> Result<Self, EnumError> {
        Self::with_caps(spec, &Caps::from_env())
    }

    pub fn with_caps(spec: &EnumSpec, caps: &Caps) -> Result<Self, EnumError> {
        spec.validate(caps)?;
        Ok(Self {
            spec: spec.clone(),
            compiled: Compiled::new(spec),
        })
    }

    pub fn spec(&self) -> &EnumSpec {
        &self.spec
    }

    /// Sequential lexicographic stream.
    pub fn iter(&self) -> Tables<'_> {
        Tables {
            walker: Walker::new(&self.compiled, &[], self.spec.order.pow(2), true),
        }
    }

    /// Admissible first rows, in lexicographic order.
    fn subtrees(&self) -> Vec<Vec<u8>> {
        let n = self.spec.order;
        let mut w = Walker::new(&self.compiled, &[], n, false);
        let mut out = Vec::new();
        while w.advance() {
            out.push(w.table[..n].to_vec());
        }
        out
    }

    fn walk(&self, prefix: &[u8]) -> Walker<'_> {
        Walker::new(&self.compiled, prefix, self.spec.order.pow(2), true)
    }

    pub fn count(&self, workers: usize) -> u64 {
        let count_one = |p: &Vec<u8>| {
            let mut w = self.walk(p);
            let mut k = 0u64;
            while w.advance() {
                k += 1;
            }
            k
        };
        let subtrees = self.subtrees();
        run_pool(workers, || subtrees.par_iter().map(count_one).sum())
    }

    /// Every table, in lexicographic order regardless of `workers`.
    pub fn collect(&self, workers: usize) -> Vec<Magma> {
        let subtrees = self.subtrees();
        let parts: Vec<Vec<Magma>> = run_pool(workers, || {
            subtrees
                .par_iter()
                .map(|p| {
                    let mut w = self.walk(p);
                    let mut out = Vec::new();
                    while w.advance() {
                        out.push(w.current());
                    }
                    out
                })
                .collect()
        });
        parts.into_iter().flatten().collect()
    }

    /// Finds the first table (in enumeration order) for which `hit` returns
    /// `Some`. The result does not depend on `workers`.
    pub fn scan<T, F>(&self, workers: usize, hit: F) -> Scan<T>
    where
        T: Send,
        F: Fn(&Magma) -> Option<T> + Sync,
    {
        let subtrees = self.subtrees();
        let best = AtomicUsize::new(usize::MAX);
        let results: Vec<(u64, Option<(Magma, T)>)> = run_pool(workers, || {
            subtrees
                .par_iter()
                .enumerate()
                .map(|(i, p)| {
                    if i > best.load(Ordering::Relaxed) {
                        return (0, None);
                    }
                    let mut w = self.walk(p);
                    let mut examined = 0u64;
                    while w.advance() {
                        examined += 1;
                        let m = w.current();
                        if let Some(t) = hit(&m) {
                            best.fetch_min(i, Ordering::Relaxed);
                            return (examined, Some((m, t)));
                        }
                        // a hit in an earlier subtree makes this one irrelevant
                        if examined.is_multiple_of(4096) && i > best.load(Ordering::Relaxed) {
                            return (examined, None);
                        }
                    }
                    (examined, None)
                })
                .collect()
        });

        let mut examined = 0;
        for (k, found) in results {
            examined += k;
            if found.is_some() {
                return Scan {
                    first: found,
                    examined,
                };
            }
        }
        Scan {
            first: None,
            examined,
        }
    }
}

/// Lazy lexicographic stream of tables.
pub struct Tables<'a> {
    walker: Walker<'a>,
}

impl Iterator for Tables<'_> {
    type Item = Magma;

    fn next(&mut self) -> Option<Magma> {
        self.walker.advance().then(|| self.walker.current())
    }
}

/// Runs `f` on a dedicated pool of `workers` threads.
pub(crate) fn run_pool<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> R {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("failed to start worker pool")
        .install(f)
}

/// Every table satisfying `spec`, sequentially.
pub fn enumerate(spec: &EnumSpec) -> Result<Vec<Magma>, EnumError> {
    Ok(Enumeration::new(spec)?.iter().collect())
}

pub fn count(spec: &EnumSpec) -> Result<u64, EnumError> {
    Ok(Enumeration::new(spec)?.count(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(count(&EnumSpec::all_magmas(1)).unwrap(), 1);
        assert_eq!(count(&EnumSpec::all_magmas(2)).unwrap(), 16);
        assert_eq!(count(&EnumSpec::latin_squares(1)).unwrap(), 1);
        assert_eq!(count(&EnumSpec::latin_squares(2)).unwrap(), 2);
        assert_eq!(count(&EnumSpec::latin_squares(3)).unwrap(), 12);
    }

    #[test]
    fn stream_is_lexicographic() {
        let tables = enumerate(&EnumSpec::all_magmas(2)).unwrap();
        assert_eq!(tables.len(), 16);
        assert!(tables.windows(2).all(|w| w[0].table() < w[1].table()));
        assert_eq!(tables[0].table(), &[0, 0, 0, 0]);
        assert_eq!(tables[15].table(), &[1, 1, 1, 1]);
    }

    #[test]
    fn caps_are_enforced() {
        assert_eq!(
            Enumeration::with_caps(&EnumSpec::all_magmas(4), &Caps::default()).unwrap_err(),
            EnumError::Infeasible {
                mode: Mode::AllMagmas,
                order: 4,
                cap: 3
            }
        );
        let pruned = EnumSpec::all_magmas(4).with_constraints([Law::Associative]);
        assert!(Enumeration::with_caps(&pruned, &Caps::default()).is_ok());
        assert!(Enumeration::with_caps(&EnumSpec::latin_squares(7), &Caps::default()).is_err());
        assert!(Enumeration::with_caps(&EnumSpec::latin_squares(0), &Caps::default()).is_err());
        assert!(Enumeration::with_caps(&EnumSpec::all_magmas(4), &Caps::uniform(4)).is_ok());
    }

    #[test]
    fn groups_of_order_three() {
        let spec = EnumSpec::all_magmas(3).with_constraints([
            Law::Associative,
            Law::Commutative,
            Law::Neutral,
            Law::Inverses,
        ]);
        assert_eq!(count(&spec).unwrap(), 3);
        assert_eq!(count(&spec.clone().up_to_iso(true)).unwrap(), 1);
    }

    #[test]
    fn workers_do_not_change_results() {
        let e = Enumeration::new(&EnumSpec::latin_squares(4)).unwrap();
        let seq: Vec<Magma> = e.iter().collect();
        assert_eq!(e.collect(1), seq);
        assert_eq!(e.collect(3), seq);
        assert_eq!(e.count(2), 576);
        let is_comm = |m: &Magma| (m.op(0, 1) != m.op(1, 0)).then_some(());
        let a = e.scan(1, is_comm);
        let b = e.scan(4, is_comm);
        assert_eq!(a, b);
        assert!(a.first.is_some());
        assert_eq!(
            a.examined,
            1 + seq.iter().position(|m| is_comm(m).is_some()).unwrap() as u64
        );
    }

    #[test]
    fn order_one_single_prefix() {
        let e = Enumeration::new(&EnumSpec::latin_squares(1)).unwrap();
        assert_eq!(e.collect(2).len(), 1);
        assert_eq!(e.count(1), 1);
        let e =
            Enumeration::new(&EnumSpec::all_magmas(1).with_constraints([Law::Neutral])).unwrap();
        assert_eq!(e.count(1), 1);
    }
}

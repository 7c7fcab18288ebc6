//! Cayley-table representation of finite magmas.
//!
//! Elements are the dense indices `0..n`. The table is stored row-major, so
//! `a + b` is `table[a * n + b]`.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::caps::Caps;

/// Largest order a table can hold; entries are stored as bytes.
pub const MAX_ORDER: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MagmaError {
    #[error("order must be between 1 and {MAX_ORDER}, got {0}")]
    BadOrder(usize),
    #[error("expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RowLength {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("entry {value} out of range at ({row},{col})")]
    OutOfRange { row: usize, col: usize, value: i64 },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("canonicalization is capped at order {cap}, got order {order}")]
    AboveCap { order: usize, cap: usize },
}

/// A finite groupoid given by its Cayley table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Magma {
    order: usize,
    table: Vec<u8>,
}

impl Magma {
    /// Builds a magma from a flat row-major table.
    pub fn from_flat(order: usize, table: Vec<u8>) -> Result<Self, MagmaError> {
        if order == 0 || order > MAX_ORDER {
            return Err(MagmaError::BadOrder(order));
        }
        if table.len() != order * order {
            return Err(MagmaError::RowCount {
                expected: order,
                found: table.len() / order,
            });
        }
        if let Some(pos) = table.iter().position(|&v| v as usize >= order) {
            return Err(MagmaError::OutOfRange {
                row: pos / order,
                col: pos % order,
                value: table[pos] as i64,
            });
        }
        Ok(Self { order, table })
    }

    /// Caller guarantees the table is valid for `order`.
    pub(crate) fn from_flat_unchecked(order: usize, table: Vec<u8>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        debug_assert!(table.iter().all(|&v| (v as usize) < order));
        Self { order, table }
    }

    pub fn from_rows<R: AsRef<[i64]>>(order: usize, rows: &[R]) -> Result<Self, MagmaError> {
        if order == 0 || order > MAX_ORDER {
            return Err(MagmaError::BadOrder(order));
        }
        if rows.len() != order {
            return Err(MagmaError::RowCount {
                expected: order,
                found: rows.len(),
            });
        }
        let mut table = Vec::with_capacity(order * order);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != order {
                return Err(MagmaError::RowLength {
                    row: r,
                    expected: order,
                    found: row.len(),
                });
            }
            for (c, &v) in row.iter().enumerate() {
                if v < 0 || v as usize >= order {
                    return Err(MagmaError::OutOfRange {
                        row: r,
                        col: c,
                        value: v,
                    });
                }
                table.push(v as u8);
            }
        }
        Ok(Self { order, table })
    }

    /// Builds the table of `f` on `0..order`. Panics if `f` leaves the carrier.
    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        assert!(
            order > 0 && order <= MAX_ORDER,
            "order {order} out of range"
        );
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let v = f(a, b);
                assert!(v < order, "{a} + {b} = {v} is outside 0..{order}");
                table.push(v as u8);
            }
        }
        Self { order, table }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    pub fn row(&self, a: usize) -> &[u8] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(|r| r.iter().map(|&v| v as usize).collect())
            .collect()
    }

    /// Relabels the carrier along `perm`: element `x` becomes `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Magma {
        assert_eq!(perm.len(), self.order, "permutation has wrong length");
        let n = self.order;
        let mut table = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[self.op(a, b)] as u8;
            }
        }
        Magma { order: n, table }
    }

    /// Cayley file text, `n` on the first line followed by the rows.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Magma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.order)?;
        for row in self.table.chunks(self.order) {
            let mut first = true;
            for v in row {
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
                first = false;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

impl Serialize for Magma {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Magma", 2)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("table", &self.rows())?;
        st.end()
    }
}

/// Parses the Cayley file format. `#` lines and blank lines are skipped.
pub fn parse_table(text: &str) -> Result<Magma, MagmaError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(MagmaError::Syntax {
        line: 1,
        message: "missing order header".into(),
    })?;
    let order: usize = header.parse().map_err(|_| MagmaError::Syntax {
        line: header_line,
        message: format!("malformed header {header:?}, expected a positive integer"),
    })?;
    if order == 0 || order > MAX_ORDER {
        return Err(MagmaError::Syntax {
            line: header_line,
            message: format!("order must be between 1 and {MAX_ORDER}, got {order}"),
        });
    }

    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(order);
    for (line, content) in lines {
        if rows.len() == order {
            return Err(MagmaError::Syntax {
                line,
                message: format!("expected {order} rows, found more"),
            });
        }
        let row = content
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i64>().map_err(|_| MagmaError::Syntax {
                    line,
                    message: format!("non-integer token {tok:?}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != order {
            return Err(MagmaError::Syntax {
                line,
                message: format!("expected {order} entries, found {}", row.len()),
            });
        }
        rows.push(row);
    }
    Magma::from_rows(order, &rows)
}

pub fn format_table(m: &Magma) -> String {
    m.to_text()
}

/// Visits every permutation of `0..n` in lexicographic order.
pub(crate) fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        f(&p);
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Compares the relabeling of `m` given by `inv` (new index -> old index)
/// against `best`, entry by entry in row-major order.
fn cmp_relabeled(m: &Magma, inv: &[usize], fwd: &[usize], best: &[u8]) -> std::cmp::Ordering {
    let n = m.order;
    for i in 0..n {
        for j in 0..n {
            let v = fwd[m.op(inv[i], inv[j])] as u8;
            let b = best[i * n + j];
            if v != b {
                return v.cmp(&b);
            }
        }
    }
    std::cmp::Ordering::Equal
}

fn check_canon_cap(m: &Magma) -> Result<(), MagmaError> {
    let cap = Caps::from_env().canon_order;
    if m.order > cap {
        return Err(MagmaError::AboveCap {
            order: m.order,
            cap,
        });
    }
    Ok(())
}

/// The lexicographically least flattened table over all `n!` relabelings.
pub fn canonical_form(m: &Magma) -> Result<Magma, MagmaError> {
    check_canon_cap(m)?;
    Ok(canonical_form_unchecked(m))
}

pub(crate) fn canonical_form_unchecked(m: &Magma) -> Magma {
    let n = m.order;
    let mut best = m.table.clone();
    let mut fwd = vec![0usize; n];
    for_each_permutation(n, |inv| {
        for (new, &old) in inv.iter().enumerate() {
            fwd[old] = new;
        }
        if cmp_relabeled(m, inv, &fwd, &best).is_lt() {
            for i in 0..n {
                for j in 0..n {
                    best[i * n + j] = fwd[m.op(inv[i], inv[j])] as u8;
                }
            }
        }
    });
    Magma::from_flat_unchecked(n, best)
}

/// True when no relabeling of `m` produces a smaller table.
pub(crate) fn is_canonical(m: &Magma) -> bool {
    let n = m.order;
    let mut fwd = vec![0usize; n];
    let mut canonical = true;
    for_each_permutation(n, |inv| {
        if !canonical {
            return;
        }
        for (new, &old) in inv.iter().enumerate() {
            fwd[old] = new;
        }
        if cmp_relabeled(m, inv, &fwd, &m.table).is_lt() {
            canonical = false;
        }
    });
    canonical
}

/// Order mismatch is simply `false`.
pub fn is_isomorphic(m1: &Magma, m2: &Magma) -> Result<bool, MagmaError> {
    if m1.order != m2.order {
        return Ok(false);
    }
    Ok(canonical_form(m1)? == canonical_form(m2)?)
}

/// Finds a permutation `p` with `m.relabel(p) == target`, if one exists.
pub fn find_isomorphism(m: &Magma, target: &Magma) -> Option<Vec<usize>> {
    if m.order != target.order {
        return None;
    }
    let mut found = None;
    for_each_permutation(m.order, |p| {
        if found.is_none() && m.relabel(p) == *target {
            found = Some(p.to_vec());
        }
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> Magma {
        Magma::from_rows(2, &[[0, 1], [1, 0]]).unwrap()
    }

    fn proj2() -> Magma {
        Magma::from_rows(2, &[[0, 1], [0, 1]]).unwrap()
    }

    #[test]
    fn builds_trivial_and_cyclic() {
        let t = Magma::from_rows(1, &[[0]]).unwrap();
        assert_eq!(t.order(), 1);
        assert_eq!(t.op(0, 0), 0);
        let z3 = Magma::from_rows(3, &[[0, 1, 2], [1, 2, 0], [2, 0, 1]]).unwrap();
        assert_eq!(z3.op(2, 2), 1);
        assert_eq!(z3, Magma::from_fn(3, |a, b| (a + b) % 3));
    }

    #[test]
    fn rejects_out_of_range_entry() {
        let err = Magma::from_rows(3, &[[0, 1, 2], [1, 2, 3], [2, 0, 1]]).unwrap_err();
        assert_eq!(err.to_string(), "entry 3 out of range at (1,2)");
        let err = Magma::from_rows(2, &[[0, 1]]).unwrap_err();
        assert_eq!(
            err,
            MagmaError::RowCount {
                expected: 2,
                found: 1
            }
        );
        assert!(Magma::from_rows(2, &[vec![0, 1], vec![0]]).is_err());
        assert!(Magma::from_rows(2, &[[0, -1], [0, 0]]).is_err());
    }

    #[test]
    fn parses_and_formats() {
        let t = parse_table("1\n0\n").unwrap();
        assert_eq!(t.order(), 1);
        let z3 = Magma::from_fn(3, |a, b| (a + b) % 3);
        assert_eq!(format_table(&z3), "3\n0 1 2\n1 2 0\n2 0 1\n");
        assert_eq!(parse_table(&format_table(&z3)).unwrap(), z3);
        // comments, no trailing newline
        let m = parse_table("# z2\n2\n0 1\n# mid\n1 0").unwrap();
        assert_eq!(m, z2());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_table("2\n0 1\n").unwrap_err();
        assert_eq!(err.to_string(), "expected 2 rows, found 1");
        let err = parse_table("two\n0 1\n1 0\n").unwrap_err();
        assert!(matches!(err, MagmaError::Syntax { line: 1, .. }), "{err}");
        let err = parse_table("2\n0 1\n1 x\n").unwrap_err();
        assert!(matches!(err, MagmaError::Syntax { line: 3, .. }), "{err}");
        let err = parse_table("2\n0 1\n1 0\n0 0\n").unwrap_err();
        assert!(matches!(err, MagmaError::Syntax { line: 4, .. }), "{err}");
        let err = parse_table("2\n0 1 1\n1 0\n").unwrap_err();
        assert!(matches!(err, MagmaError::Syntax { line: 2, .. }), "{err}");
        assert!(parse_table("").is_err());
        assert!(parse_table("0\n").is_err());
    }

    #[test]
    fn canonical_forms_of_small_tables() {
        let t = Magma::from_rows(1, &[[0]]).unwrap();
        assert_eq!(canonical_form(&t).unwrap(), t);
        assert_eq!(canonical_form(&z2()).unwrap(), z2());
        assert_eq!(canonical_form(&proj2()).unwrap(), proj2());
        // Z2 with 1 as identity relabels to the 0-identity table
        let z2_swapped = z2().relabel(&[1, 0]);
        assert_eq!(z2_swapped.rows(), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(canonical_form(&z2_swapped).unwrap(), z2());
        assert!(is_canonical(&z2()));
        assert!(!is_canonical(&z2_swapped));
    }

    #[test]
    fn isomorphism_checks() {
        assert!(is_isomorphic(&z2(), &z2()).unwrap());
        assert!(!is_isomorphic(&z2(), &proj2()).unwrap());
        let z3 = Magma::from_fn(3, |a, b| (a + b) % 3);
        assert!(!is_isomorphic(&z2(), &z3).unwrap());
        let p = find_isomorphism(&z2().relabel(&[1, 0]), &z2()).unwrap();
        assert_eq!(p, vec![1, 0]);
    }

    #[test]
    fn canonical_form_respects_cap() {
        let big = Magma::from_fn(8, |a, b| (a + b) % 8);
        assert!(matches!(
            canonical_form(&big),
            Err(MagmaError::AboveCap { order: 8, .. })
        ));
    }

    #[test]
    fn permutations_are_lexicographic() {
        let mut seen = Vec::new();
        for_each_permutation(3, |p| seen.push(p.to_vec()));
        assert_eq!(
            seen,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0]
            ]
        );
    }
}

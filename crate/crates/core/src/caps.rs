//! Feasibility caps for exhaustive work.

/// Environment variable that raises every cap to the given order.
pub const MAX_ORDER_ENV: &str = "MAGMA_LAB_MAX_ORDER";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Unconstrained all-magmas enumeration (`n^(n²)` tables).
    pub magma_order: usize,
    /// All-magmas enumeration with at least one equational constraint to prune on.
    pub pruned_magma_order: usize,
    /// Latin-square enumeration.
    pub latin_order: usize,
    /// Theorem verification over every quasigroup of each order.
    pub quasigroup_theorem_order: usize,
    /// Full-permutation canonicalization.
    pub canon_order: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            magma_order: 3,
            pruned_magma_order: 4,
            latin_order: 6,
            quasigroup_theorem_order: 5,
            canon_order: 7,
        }
    }
}

impl Caps {
    /// Defaults, unless `MAGMA_LAB_MAX_ORDER` is set to a positive integer.
    pub fn from_env() -> Self {
        match std::env::var(MAX_ORDER_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            Some(n) if n > 0 => Self::uniform(n),
            _ => Self::default(),
        }
    }

    pub fn uniform(n: usize) -> Self {
        Self {
            magma_order: n,
            pruned_magma_order: n,
            latin_order: n,
            quasigroup_theorem_order: n,
            canon_order: n,
        }
    }
}

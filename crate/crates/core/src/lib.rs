//! Finite magma workbench.
//!
//! Cayley tables, law checking with witnesses, exhaustive enumeration of
//! magmas and Latin squares, bounded theorem verification and model search
//! for axiom independence.

pub mod caps;
pub mod cli;
pub mod dsl;
pub mod enumerate;
pub mod law;
pub mod magma;
pub mod properties;
pub mod search;
pub mod structures;
pub mod theorems;

pub use caps::Caps;
pub use dsl::{parse_equation, parse_law, parse_spec, Equation, Term};
pub use enumerate::{count, enumerate, EnumSpec, Enumeration, Mode};
pub use law::Law;
pub use magma::{canonical_form, format_table, is_isomorphic, parse_table, Magma, MagmaError};
pub use properties::{check, classify, holds, CheckReport};
pub use search::{find_model, independence_matrix, SearchResult, SearchSpec};
pub use theorems::{theorem_catalog, verify_theorem, TheoremId, VerificationReport};

//! Exact combinatorics of strongly stable monomial sets.
//!
//! Degree-two strongly stable sets are shifted Ferrers diagrams of strict
//! partitions. This crate enumerates them, counts maximal NE-paths (the
//! multiplicity of the generated subalgebra) three independent ways, computes
//! exact Hilbert functions and polynomials from chain counts, and runs an
//! exhaustive check that a Lex or RevLex segment always minimises the
//! multiplicity. Brute-force product sets cover arbitrary degree.

pub mod arith;
pub mod enumerate;
pub mod error;
pub mod export;
pub mod hilbert;
pub mod monomial;
pub mod multiplicity;
pub mod partition;
pub mod verify;

pub use arith::BigNat;
pub use error::{Error, Result};
pub use monomial::{
    borel_closure, partition_to_stable_set, stable_set_to_partition, Monomial, StableSet,
};
pub use multiplicity::{
    lex_multiplicity, lex_segment, path_count, revlex_multiplicity, revlex_segment,
    subpartition_count, SegmentSpec,
};
pub use partition::{Cell, StrictPartition};

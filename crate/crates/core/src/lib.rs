//! Spherical curves as decorated Gauss words: realizability, two-arrow
//! counting invariants, Reidemeister move generation, move-sequence search
//! and exhaustive tables of small curves.

pub mod corpus;
pub mod embedding;
pub mod error;
pub mod invariants;
pub mod moves;
pub mod search;
pub mod word;

pub use embedding::{faces, genus, realizable};
pub use error::{Error, Result};
pub use invariants::{invariant_vector, InvariantVector};
pub use moves::{enumerate_moves, MoveInstance, MoveKind};
pub use search::{bfs_reachable, BfsOutcome};
pub use word::{canonicalize, CanonicalKey, KeyMode, Word};

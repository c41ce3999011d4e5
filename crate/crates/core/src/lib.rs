//! Games on colored arenas under the Rope Ladder winning condition.
//!
//! The crate models edge-colored arenas whose colors are monotone maps of the
//! poset Ω = ℕ × {0,1}, finite-memory Protagonist strategies on top of general
//! or chromatic memory structures, and an exact decision procedure for
//! whether such a strategy keeps the "ant" (the running composition of colors
//! applied to `(0,0)`) below a fixed layer forever.
//!
//! On top of that sit two constructions:
//!
//! * [`synthesize`] turns any finite-memory strategy into one with two states
//!   of general memory that wins from the same nodes;
//! * [`separation`] builds, for small `Q`, an arena over five colors where two
//!   states of general memory win but no strategy with at most `Q` states of
//!   chromatic memory does.

pub mod arena;
pub mod cli;
pub mod fixtures;
pub mod omega;
pub mod random;
pub mod separation;
pub mod strategy;
pub mod synthesize;
pub mod verify;

pub use arena::{Arena, EdgeId, NodeId, Owner, Path};
pub use omega::{BitMap, ColorMap, NamedMap, OmegaPoint};
pub use strategy::{FiniteMemoryStrategy, MemoryKind, MemoryStructure};
pub use verify::{verify_strategy, Verdict};

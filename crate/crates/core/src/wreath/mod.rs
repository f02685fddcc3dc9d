//! Cycle types in iterated imprimitive wreath products.
//!
//! A tower is listed from the top block action downward: `[G_r, …, G_1]`
//! acts on `deg G_r · … · deg G_1` points, with `G_r` permuting the blocks.
//! If `f = f_1 ∘ … ∘ f_r` then `G_r` belongs to the outermost map's blocks.

pub mod cycle_type;
pub mod groups;
pub mod proportion;
pub mod tower;

use thiserror::Error;

pub use cycle_type::CycleType;
pub use groups::{agl1_types, group_cycle_index, GroupDescriptor};
pub use proportion::{brute_force_tower, full_cycle_proportion, holomorph_full_cycles};
pub use tower::{obstruction_all_towers, parity_necessary, realizable_in_tower, realizing_tower, ParityOutcome, Tower, TypeTree};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WreathError {
    #[error("invalid cycle type: {0}")]
    InvalidType(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("degree mismatch: cycle type has degree {got}, tower has degree {expected}")]
    DegreeMismatch { expected: u64, got: u64 },
    #[error("too large to enumerate: {0}")]
    TooLarge(String),
}

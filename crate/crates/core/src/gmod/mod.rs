//! Finite groups as multiplication tables and their actions on FgAb.

mod group;
mod module;

pub use group::{FiniteGroup, Subgroup};
pub use module::{Coinvariants, GammaModule, HomModule, Invariants, TensorModule};

//! Finite-level group cohomology for tori: Tate cohomology, extensions and Fox
//! calculus, the low-degree LHS differential, the Tate-Nakayama criterion, the
//! Kottwitz map and duality pairing, and the finite Fourier/Hecke layer.

pub mod corpus;
pub mod int;
pub mod langlands;
pub mod lhs;
pub mod par;
pub mod tn;
pub mod extgrp;
pub mod fourier;
pub mod gmod;
pub mod tate;
pub mod zlin;

pub use int::{int, Int};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("malformed homomorphism: {0}")]
    MalformedHom(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("degree {0} is outside the window [-3, 3]")]
    DegreeOutOfWindow(i32),
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("not a cocycle: {0}")]
    NotACocycle(String),
    #[error("invalid factor set: {0}")]
    InvalidFactorSet(String),
    #[error("lifting failed: {0}")]
    LiftingFailed(String),
    #[error("Tate-Nakayama criterion fails: {0}")]
    TNFailed(String),
    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),
    #[error("bad field: {0}")]
    BadField(String),
    #[error("map is not surjective: {0}")]
    NotSurjective(String),
    #[error("not a module: {0}")]
    NotAModule(String),
    #[error("requires a finite group: {0}")]
    NotFinite(String),
}

pub type Result<T> = std::result::Result<T, Error>;

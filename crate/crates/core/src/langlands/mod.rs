//! Tori at finite level: the Kottwitz set, H₁ of a Weil datum, the
//! Tate-Nakayama isomorphism, algebraic cocycles and the Kottwitz map, the TOR
//! comparison, the duality pairing with its order identity, functoriality and
//! Shapiro.
//!
//! Multiplicative groups are written additively: T(E) is L̂⊗A, the Λ-points of
//! the dual torus are L⊗C_m with C_m = ℤ/m.

mod kottwitz;
mod pairing;
mod shapiro;
mod torus;

pub use kottwitz::{
    c_prime, c_prime_closed_form, cores_h1, kottwitz_map, tate_nakayama_iso_check, tor_top_differential, transfer_cocycle_value, verify_tor_quasi_iso,
    AlgebraicH1, Convention, IsoCheck, KottwitzMap, TorReport,
};
pub use pairing::{
    duality_orders, functoriality_check, induced_pairing_table, pairing_cocycle_check, poincare_pairing, table_is_perfect, DualPoints, DualityReport,
    FunctorialityReport, PairingCheck, PairingTable,
};
pub use shapiro::{shapiro_check, ShapiroReport};
pub use torus::{h1_weil, kottwitz_set, TorusDatum, WeilDatum};

//! Exact integer linear algebra and finitely generated abelian groups.

mod fgab;
mod hom;
mod matrix;
mod snf;
pub mod sparse;

pub use fgab::{FgAb, Quotient};
pub use hom::{exact_at, ext1_ab, hom_ab, hom_group, tensor_ab, tensor_quotient, AbHom, HomGroup, KernelImage, Subquotient};
pub use matrix::IntMatrix;
pub use snf::{hermite_basis, hermite_reduce, smith_normal_form, Smith};
pub use sparse::SVec;

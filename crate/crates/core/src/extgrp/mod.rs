//! Extensions of finite groups by FgAb from factor sets, their presentations and
//! Fox calculus, and H₁ / Z¹ / H¹ for modules on which the kernel acts trivially.

mod ext;
mod factor;
mod present;

pub use ext::{abelianization, ExtElement, ExtTable, Extension};
pub use factor::{FactorSet, Violation};
pub use present::{Gen, GroupRingElt, Presentation, Relator, Word, H1, Z1};

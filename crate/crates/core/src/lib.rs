//! Exact computation with finite associative rings.

pub mod actions;
pub mod arith;
pub mod bounds;
pub mod construct;
pub mod corpus;
pub mod error;
pub mod field;
pub mod format;
pub mod fp;
pub mod hom;
pub mod howell;
pub mod iso;
pub mod maximal;
pub mod profinite;
pub mod radical;
pub mod ring;
pub mod smith;
pub mod subgroup;
pub mod tower;
pub mod verdict;
pub mod wedderburn;

pub use error::{Error, Result};
pub use hom::{HomFlags, RingHom};
pub use ring::{Coeffs, FiniteRing, RingElement};
pub use subgroup::{Side, Subgroup, SubgroupKind};
pub use verdict::Verdict;

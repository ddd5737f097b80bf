//! Finite permutation groups: stabilizer chains, block systems, wreath
//! products, subdirect powers of AGL_1(q) and S_4, and degree-8 searches.

pub mod blocks;
pub mod enum8;
pub mod error;
pub mod group;
pub mod lemmas;
pub mod module;
pub mod perm;
pub mod probe;
pub mod wreath;

pub use error::{GroupError, Result};
pub use group::PermGroup;
pub use module::{augmentation_module, ElemAbelianModule};
pub use perm::Perm;

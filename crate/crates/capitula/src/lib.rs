//! Artin transfer kernels/targets and capitulation-type algebra for finite
//! 3-groups, together with conductor/species/multiplicity arithmetic for
//! pure cubic fields and an embedded cross-validation dataset.

pub mod artin;
pub mod cubic;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod perm;
pub mod tower;

pub use error::{Error, Result};
pub use group::{AbelianInvariants, Group, Quotient};
pub use perm::Perm;

//! Finite 2-groups presented as crossed modules, their nerves, and the
//! cohomology of those nerves and of related discrete groups.

pub mod corpus;
pub mod crossed;
pub mod error;
pub mod group;
pub mod group_cohomology;
pub mod homology;
pub mod linalg;
pub mod nerve;
pub mod spec_file;
pub mod structural;

pub use crossed::{CrossedModule, CrossedModuleMorphism};
pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupAction, GroupHom};

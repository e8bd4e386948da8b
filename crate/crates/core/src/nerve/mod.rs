//! The nerve `N_•[G → H]` of a finite crossed module as an enumerated
//! simplicial set.

pub mod chart;
pub mod kan;
pub mod levels;
pub mod simplex;

pub use chart::{star_triangles, Coords2, Coords3, NormalizedCoordinates};
pub use kan::{check_kan, KanReport};
pub use levels::{degeneracy, face, level_count, nondegenerate_count, LevelTable, NerveLevels, DEFAULT_BUDGET};
pub use simplex::NerveSimplex;

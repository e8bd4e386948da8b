//! Exact linear algebra: sparse integer matrices, Smith normal form, and
//! streaming rank computations over ℚ and GF(p).

pub mod echelon;
pub mod rational;
pub mod snf;
pub mod sparse;

pub use echelon::{Field, RankAccumulator};
pub use rational::RatMatrix;
pub use snf::{smith_normal_form, SNFResult};
pub use sparse::SparseIntMatrix;

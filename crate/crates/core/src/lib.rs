//! Perturbative planar two-point function of the noncommutative three-colour
//! scalar model in two dimensions.

pub mod closedforms;
pub mod error;
pub mod grid;
pub mod polylog;
pub mod quad;
pub mod recursion;
pub mod ribbon;

pub use closedforms::MomentumPair;
pub use error::{Error, Result};
pub use quad::{make_rule, QuadratureRule};

//! Instance files, generators, the tournament-fixing reduction, and bracket
//! rendering around the `demand-tf` solvers.

pub mod format;
pub mod gen;
pub mod reduce;
pub mod render;

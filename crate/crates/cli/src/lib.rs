//! File formats, the lattice catalogue and the command implementations
//! behind the `sperf` binary.

pub mod catalogue;
pub mod format;

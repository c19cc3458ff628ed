//! Flag vectors, cd-indices and recursive partition certificates for
//! Eulerian and semi-Eulerian graded posets.

pub mod flags;
pub mod ncpoly;
pub mod partition;
pub mod poset;
pub mod zoo;

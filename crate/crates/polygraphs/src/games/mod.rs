//! Game frontends: each turns a game description into the square multilinear
//! indifference system and polynomial graph that the counting machinery
//! consumes.

pub mod ent;
pub mod extensive;
pub mod normal;

//! Specialization functions, their motivic versions and Chern–Schwartz–MacPherson
//! classes, computed from normal-crossings resolutions.

pub mod chowsurf;
pub mod corpus;
pub mod curveres;
pub mod ering;
pub mod fixtures;
pub mod ncmodel;
pub mod suite;

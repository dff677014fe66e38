//! Equational logic of the variety generated by the ten two-element semirings
//! with absorbing zero, and the lattice of its subvarieties.

pub mod criteria;
pub mod models;
pub mod term;
pub mod variety;
pub mod lattice;
pub mod proofs;
pub mod acceptance;

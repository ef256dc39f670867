//! Exact signature pairs of the group-invariant Hermitian polynomial
//! `Phi_G = 1 - prod_{g in G} (1 - <g z, z>)` for finite subgroups G of U(2).

pub mod chern;
pub mod closedforms;
pub mod cyclotomic;
pub mod error;
pub mod fpq;
pub mod group;
pub mod invariant;
pub mod poly;
pub mod signature;
pub mod verify;

pub use cyclotomic::Cyclotomic;
pub use error::{Error, Result};

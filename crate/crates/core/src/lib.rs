//! Finite groupoid toolkit: identities of right modular groupoids, inflations and
//! generalised inflations of subgroupoids, one-point extensions, and exhaustive
//! search harnesses over small orders.

pub mod error;
pub mod extension;
pub mod fixtures;
pub mod identities;
pub mod inflation;
pub mod magma;
pub mod morphisms;
pub mod search;

pub use error::{Error, Result};
pub use magma::{Elem, ElementSet, Magma};

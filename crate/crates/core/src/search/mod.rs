//! Exhaustive enumeration and the verification harnesses built on it.

pub mod enumerate;
pub mod golden;
pub mod harness;
pub mod hunt;

pub use enumerate::{count_magmas, enumerate_magmas, EnumerationConstraints, Enumerator, Requirement};
pub use harness::{HarnessReport, TheoremBounds, Violation};
pub use hunt::{hunt_open_question, HuntBounds, HuntMode, HuntReport};

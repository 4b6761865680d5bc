//! Exact intersection-theoretic computations on products of projective spaces.
//!
//! The pipeline runs from Chern classes of bundle expressions ([`bundle`]) in
//! the truncated Chow ring ([`chow`]), through the virtual Chern numbers of a
//! codimension-2 degeneracy locus ([`degeneracy`]), to the invariants and
//! slope of the resulting family of curves ([`family`]) and the slope after
//! base change along two multisections ([`base_change`]). All arithmetic is
//! over exact rationals.

pub mod base_change;
pub mod bundle;
pub mod chow;
pub mod decimal;
pub mod degeneracy;
pub mod error;
pub mod expr;
pub mod family;
pub mod report;
pub mod scenario;

pub use bundle::BundleClass;
pub use chow::{rat, ChowElement, ProductSpace, Rational};
pub use error::{Error, Result};
pub use report::{run_scenario, Format, Report, RunOptions};
pub use scenario::{parse_scenario, Scenario};

//! Finite orthogonality diagrams and their probability types.
//!
//! An [`OrthoDiagram`] is a hypergraph of atoms grouped into contexts
//! (Boolean blocks) pasted at shared atoms. On top of that model this crate
//! provides:
//!
//! * exhaustive enumeration of two-valued states and the partition logic
//!   they induce ([`states`]),
//! * exact-arithmetic classical bounds, hull membership and facet
//!   enumeration over the polytope of two-valued states ([`polytope`]),
//! * real faithful orthogonal representations, the pentagon umbrella and
//!   squared-inner-product probabilities ([`quantum`]),
//! * generalized urn models and a seeded two-agent correlation experiment
//!   ([`urn`]).

pub mod bell;
pub mod corpus;
pub mod diagram;
mod error;
pub mod float;
pub mod polytope;
pub mod quantum;
pub mod rational;
pub mod states;
pub mod urn;

pub use diagram::{OrthoDiagram, Violation};
pub use error::Error;
pub use rational::Rational;

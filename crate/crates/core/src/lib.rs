//! Exact analysis of self-maintaining binary social-choice functions.
//!
//! - [`scf`]: truth tables, named rules and structural predicates.
//! - [`belief`]: exact beliefs over preference profiles.
//! - [`stability`]: utilities, choice vectors, self-maintenance checks,
//!   exhaustive classification, refutation search and replacement dynamics.
//! - [`jury`]: the common-value oligarchy model and its parameter sweeps.

pub mod belief;
pub mod error;
pub mod jury;
pub mod rational;
pub mod scf;
pub mod stability;

pub use belief::{Belief, IidParameter, Regime};
pub use error::{Error, Result};
pub use scf::{NamedScf, Scf, VotingVector};
pub use stability::{TieBreak, Universe};

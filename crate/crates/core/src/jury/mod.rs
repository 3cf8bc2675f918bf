//! Common-value oligarchy model.
//!
//! Oligarchy `O_i` decides by strict majority of a nested elite of size `i`.
//! Insiders value a rule by a mix of their extractive share `1/i` and the
//! probability `P(i)` that the elite majority matches the true state:
//! `g(i) = λ/i + (1-λ)·P(i)`. Replacement motions are voted on by the
//! incumbent elite only.

mod dynamics;
mod grid;
mod model;
mod probability;
mod svg;

use serde::Serialize;

use crate::error::{Error, Result};

pub use dynamics::{Basin, Dynamics};
pub use grid::{grid_csv, stable_grid, CellClass, GridCell};
pub use model::{Discrepancy, JuryModel, JuryStabilityResult, OligarchyProfile, SizeStability};
pub use probability::{
    majority_correct_probability, majority_correct_probability_exact,
    majority_correct_probability_with, ProbabilityTable, MAX_COMMITTEE,
};
pub use svg::{dynamics_svg, grid_svg};

pub const DEFAULT_EPSILON: f64 = 1e-12;
/// Sizes up to this are drawn as small oligarchies.
pub const SMALL_MAX: usize = 3;
/// Sizes from this up count as committees.
pub const LARGE_MIN: usize = 10;

/// How an exact tie among an even number of signals is scored.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieRule {
    /// A tie counts as an incorrect decision.
    #[default]
    StrictMajority,
    /// A tie is correct with probability 1/2.
    HalfCredit,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct JuryConfig {
    pub n: usize,
    pub lambda: f64,
    pub p: f64,
    pub epsilon: f64,
    pub tie_rule: TieRule,
}

impl JuryConfig {
    pub fn new(n: usize, lambda: f64, p: f64) -> Result<Self> {
        let cfg = JuryConfig {
            n,
            lambda,
            p,
            epsilon: DEFAULT_EPSILON,
            tie_rule: TieRule::default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Result<Self> {
        self.epsilon = epsilon;
        self.validate()?;
        Ok(self)
    }

    pub fn with_tie_rule(mut self, rule: TieRule) -> Self {
        self.tie_rule = rule;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > MAX_COMMITTEE {
            return Err(Error::Parameter(format!(
                "n must lie in 1..={MAX_COMMITTEE}, got {}",
                self.n
            )));
        }
        if !(0.0..=1.0).contains(&self.lambda) {
            return Err(Error::Parameter(format!(
                "lambda must lie in [0, 1], got {}",
                self.lambda
            )));
        }
        probability::check_accuracy(self.p)?;
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::Parameter(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        Ok(())
    }
}

/// Size class used for plotting and basin labels.
pub fn size_class(i: usize) -> &'static str {
    match i {
        1 => "dictatorship",
        i if i < LARGE_MIN => "oligarchy",
        _ => "committee",
    }
}

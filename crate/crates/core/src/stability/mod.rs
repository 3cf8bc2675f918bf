//! Self-maintenance of SCFs under belief-driven replacement votes.
//!
//! Voters compare their ex-ante utility under the incumbent `f` and a
//! challenger `f'`. The motion to replace `f` is aggregated by `f` itself;
//! `f` is self-maintaining when every such motion is rejected.

mod choice;
mod engine;
mod equilibrium;
mod graph;
mod iid;
mod optimistic;
mod refute;
mod report;
mod threshold;
mod utility;
mod weights;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scf::{check_voters, NamedScf, Scf};

pub use choice::{choice_profiles, ChoiceProfileSet};
pub use engine::{
    classify, classify_candidates, is_self_maintaining, verify_witness, Classification,
    EnumerationScope, StabilityVerdict, Witness,
};
pub use equilibrium::best_response_equilibrium;
pub use graph::{transition_graph, TransitionGraph};
pub use iid::{check_main_structural_lemma, classify_iid, partition_s123, S123Partition};
pub use optimistic::{
    find_lexicographic_support, find_lexicographic_support_with, lexicographic_orders, TailWeight,
};
pub use refute::{pessimistic_refute, Refutation};
pub use report::{StabilityReport, WelfareRow};
pub use threshold::{threshold_iid_graph, ThresholdGraph, MAX_THRESHOLD_VOTERS};
pub use utility::{nash_welfare, utilities, utility, welfare};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieBreak {
    /// Indifferent voters may vote either way.
    Arbitrary,
    /// Indifferent voters keep the incumbent.
    StatusQuoBias,
}

impl fmt::Display for TieBreak {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TieBreak::Arbitrary => "arbitrary",
            TieBreak::StatusQuoBias => "sqb",
        })
    }
}

impl FromStr for TieBreak {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "arbitrary" => Ok(TieBreak::Arbitrary),
            "sqb" | "status-quo-bias" | "status-quo" => Ok(TieBreak::StatusQuoBias),
            other => Err(Error::Parse(format!(
                "unknown tie-break {other:?} (arbitrary | sqb)"
            ))),
        }
    }
}

/// The set of challengers a rule must withstand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Universe {
    AllScfs,
    /// Threshold rules `η(v,1) >= k` for `k` in `1..=n`.
    Thresholds,
    Explicit(Vec<Scf>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UniverseKind {
    AllScfs,
    Thresholds,
    Explicit,
}

impl Universe {
    pub fn kind(&self) -> UniverseKind {
        match self {
            Universe::AllScfs => UniverseKind::AllScfs,
            Universe::Thresholds => UniverseKind::Thresholds,
            Universe::Explicit(_) => UniverseKind::Explicit,
        }
    }

    pub fn thresholds(n: usize) -> Result<Vec<Scf>> {
        check_voters(n)?;
        (1..=n)
            .map(|k| NamedScf::Threshold(k).materialize(n))
            .collect()
    }

    /// Members of the universe at `n` voters, in canonical order.
    pub fn members(&self, n: usize) -> Result<Vec<Scf>> {
        match self {
            Universe::AllScfs => Ok(Scf::enumerate(n)?.collect()),
            Universe::Thresholds => Self::thresholds(n),
            Universe::Explicit(list) => {
                for f in list {
                    crate::error::ensure_same_n(n, f.n())?;
                }
                let mut list = list.clone();
                list.sort();
                list.dedup();
                Ok(list)
            }
        }
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Universe::AllScfs => f.write_str("all"),
            Universe::Thresholds => f.write_str("thresholds"),
            Universe::Explicit(list) => write!(f, "explicit({})", list.len()),
        }
    }
}

impl FromStr for Universe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "all" | "all-scfs" => Ok(Universe::AllScfs),
            "thresholds" => Ok(Universe::Thresholds),
            other => Err(Error::Parse(format!(
                "unknown universe {other:?} (all | thresholds)"
            ))),
        }
    }
}

use std::collections::BTreeMap;

use serde::Serialize;

use crate::belief::Belief;
use crate::error::Result;
use crate::rational::format_rational;
use crate::scf::{NamedScf, Scf};

use super::engine::{Classification, Witness};
use super::utility::{nash_welfare, utilities, welfare};
use super::{TieBreak, UniverseKind};

#[derive(Clone, Debug, Serialize)]
pub struct WelfareRow {
    pub scf: Scf,
    pub label: Option<String>,
    pub utilities: Vec<String>,
    pub social_welfare: String,
    pub nash_welfare: String,
}

impl WelfareRow {
    pub fn new(f: &Scf, belief: &Belief) -> Result<Self> {
        Ok(WelfareRow {
            scf: f.clone(),
            label: NamedScf::identify(f).map(|name| name.to_string()),
            utilities: utilities(f, belief)?.iter().map(format_rational).collect(),
            social_welfare: format_rational(&welfare(f, belief)?),
            nash_welfare: format_rational(&nash_welfare(f, belief)?),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportConfig {
    pub n: usize,
    pub tie_break: TieBreak,
    pub universe: UniverseKind,
    pub belief: Belief,
}

/// JSON-ready summary of a classification run.
#[derive(Clone, Debug, Serialize)]
pub struct StabilityReport {
    pub config: ReportConfig,
    pub stable_set: Vec<Scf>,
    pub witnesses: BTreeMap<String, Witness>,
    pub welfare_table: Vec<WelfareRow>,
}

impl StabilityReport {
    pub fn new(c: &Classification, belief: &Belief) -> Result<Self> {
        Ok(StabilityReport {
            config: ReportConfig {
                n: c.n,
                tie_break: c.tie_break,
                universe: c.universe,
                belief: belief.clone(),
            },
            stable_set: c.stable.clone(),
            witnesses: c
                .witnesses
                .iter()
                .map(|(f, w)| (f.to_canonical(), w.clone()))
                .collect(),
            welfare_table: c
                .stable
                .iter()
                .map(|f| WelfareRow::new(f, belief))
                .collect::<Result<_>>()?,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

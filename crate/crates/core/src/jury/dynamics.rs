use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::model::JuryModel;
use super::{JuryConfig, LARGE_MIN};

/// Which kinds of stable rule a starting size can drift into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basin {
    Dictatorship,
    Oligarchy,
    Committee,
    /// Both an oligarchy (2..=9) and a committee, but no dictatorship.
    CommitteeAndOligarchy,
    /// Any other combination involving the dictatorship.
    Mixed,
    /// No stable size is reachable.
    Unstable,
}

impl Basin {
    fn of(sinks: &[usize]) -> Self {
        let dict = sinks.contains(&1);
        let olig = sinks.iter().any(|&i| i > 1 && i < LARGE_MIN);
        let comm = sinks.iter().any(|&i| i >= LARGE_MIN);
        match (dict, olig, comm) {
            (false, false, false) => Basin::Unstable,
            (true, false, false) => Basin::Dictatorship,
            (false, true, false) => Basin::Oligarchy,
            (false, false, true) => Basin::Committee,
            (false, true, true) => Basin::CommitteeAndOligarchy,
            _ => Basin::Mixed,
        }
    }
}

/// Motion graph on oligarchy sizes with reachable stable sizes per start.
#[derive(Clone, Debug)]
pub struct Dynamics {
    pub config: JuryConfig,
    /// `edges[i - 1]`: sizes `i` can move to in one motion.
    pub edges: Vec<Vec<usize>>,
    pub stable: Vec<usize>,
    /// `reachable[i - 1]`: stable sizes reachable from `i` (including itself).
    pub reachable: Vec<Vec<usize>>,
}

impl Dynamics {
    pub fn new(model: &JuryModel) -> Self {
        let n = model.config().n;
        let edges: Vec<Vec<usize>> = (1..=n)
            .into_par_iter()
            .map(|i| (1..=n).filter(|&j| model.passes_unchecked(i, j)).collect())
            .collect();
        let stable: Vec<usize> = (1..=n).filter(|i| edges[i - 1].is_empty()).collect();
        let mut reverse = vec![vec![]; n + 1];
        for (from, out) in edges.iter().enumerate() {
            for &to in out {
                reverse[to].push(from + 1);
            }
        }
        let mut reachable = vec![BTreeSet::new(); n];
        for &sink in &stable {
            let mut seen = vec![false; n + 1];
            seen[sink] = true;
            let mut queue = VecDeque::from([sink]);
            while let Some(v) = queue.pop_front() {
                reachable[v - 1].insert(sink);
                for &u in &reverse[v] {
                    if !seen[u] {
                        seen[u] = true;
                        queue.push_back(u);
                    }
                }
            }
        }
        let reachable = reachable
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect();
        Dynamics {
            config: *model.config(),
            edges,
            stable,
            reachable,
        }
    }

    pub fn basin(&self, i: usize) -> Basin {
        Basin::of(&self.reachable[i - 1])
    }

    pub fn basins(&self) -> Vec<Basin> {
        (1..=self.config.n).map(|i| self.basin(i)).collect()
    }

    pub fn to_json(&self) -> Value {
        let edges: BTreeMap<String, &Vec<usize>> = self
            .edges
            .iter()
            .enumerate()
            .map(|(k, e)| ((k + 1).to_string(), e))
            .collect();
        let reachable: BTreeMap<String, &Vec<usize>> = self
            .reachable
            .iter()
            .enumerate()
            .map(|(k, r)| ((k + 1).to_string(), r))
            .collect();
        let basins: BTreeMap<String, Basin> = (1..=self.config.n)
            .map(|i| (i.to_string(), self.basin(i)))
            .collect();
        json!({
            "config": self.config,
            "edges": edges,
            "stable": self.stable,
            "reachable": reachable,
            "basins": basins,
        })
    }
}

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::belief::Belief;
use crate::error::{Error, Result};
use crate::scf::{Scf, VotingVector};

use super::engine::{find_violation, Witness};
use super::weights::ScaledBelief;
use super::{TieBreak, Universe};

/// Upper bound on the number of candidate beliefs a refutation may scan.
pub const MAX_REFUTATION_BELIEFS: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Refutation {
    Refuted {
        belief: Belief,
        witness: Witness,
    },
    /// No belief within the budget breaks `f`; this is not a stability proof.
    NotRefuted {
        budget: usize,
        beliefs_checked: u64,
    },
}

impl Refutation {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Refutation::Refuted { .. })
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, j| acc.saturating_mul(n - j) / (j + 1))
}

/// Searches uniform beliefs on supports of size `1..=budget`, smallest first,
/// for one under which `f` votes itself out against a member of `universe`.
pub fn pessimistic_refute(
    f: &Scf,
    tb: TieBreak,
    budget: usize,
    universe: &Universe,
) -> Result<Refutation> {
    if budget == 0 {
        return Err(Error::Parameter("support budget must be at least 1".into()));
    }
    let n = f.n();
    let omega = 1u64 << n;
    let budget = budget.min(omega as usize);
    let total: u64 = (1..=budget as u64)
        .map(|k| binomial(omega, k))
        .fold(0, u64::saturating_add);
    if total > MAX_REFUTATION_BELIEFS {
        return Err(Error::Capacity(format!(
            "budget {budget} at n={n} needs {total} beliefs (limit {MAX_REFUTATION_BELIEFS})"
        )));
    }
    for k in 1..=budget {
        let supports: Vec<Vec<u32>> = (0..omega as u32).combinations(k).collect();
        let hit = supports
            .par_iter()
            .map(|support| {
                let scaled = ScaledBelief::uniform(n, support.clone());
                find_violation(f, &scaled, tb, universe).map(|w| w.map(|w| (support, w)))
            })
            .find_map_first(|r| match r {
                Ok(None) => None,
                other => Some(other),
            });
        match hit {
            Some(Ok(Some((support, witness)))) => {
                let vs: Vec<VotingVector> = support
                    .iter()
                    .map(|&b| VotingVector::from_raw(n, b))
                    .collect();
                let belief = Belief::uniform_support(&vs)?;
                return Ok(Refutation::Refuted { belief, witness });
            }
            Some(Err(e)) => return Err(e),
            _ => {}
        }
    }
    Ok(Refutation::NotRefuted {
        budget,
        beliefs_checked: total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scf::NamedScf;
    use crate::stability::engine::verify_witness;

    #[test]
    fn point_masses_break_every_nonzero_rule() {
        for f in Scf::enumerate(3).unwrap().skip(1).step_by(9) {
            let r = pessimistic_refute(&f, TieBreak::Arbitrary, 1, &Universe::AllScfs).unwrap();
            let Refutation::Refuted { belief, witness } = r else {
                panic!("{f} survived")
            };
            assert_eq!(belief.support_len(), 1);
            assert!(verify_witness(
                &f,
                &belief,
                TieBreak::Arbitrary,
                &Universe::AllScfs,
                &witness
            )
            .unwrap());
        }
        let zero = Scf::constant(3, false).unwrap();
        let r = pessimistic_refute(&zero, TieBreak::Arbitrary, 2, &Universe::AllScfs).unwrap();
        assert_eq!(
            r,
            Refutation::NotRefuted {
                budget: 2,
                beliefs_checked: 8 + 28
            }
        );
    }

    #[test]
    fn three_oligopoly_survives_under_sqb() {
        let f = NamedScf::Oligarchy(vec![0, 1, 2]).materialize(3).unwrap();
        let r = pessimistic_refute(&f, TieBreak::StatusQuoBias, 3, &Universe::AllScfs).unwrap();
        assert!(!r.is_refuted());
    }

    #[test]
    fn majority_of_five_falls_to_three_vectors() {
        let f = NamedScf::SimpleMajority.materialize(5).unwrap();
        let r = pessimistic_refute(&f, TieBreak::StatusQuoBias, 3, &Universe::Thresholds).unwrap();
        let Refutation::Refuted { belief, witness } = r else {
            panic!("majority survived")
        };
        assert_eq!(belief.support_len(), 3);
        assert!(verify_witness(
            &f,
            &belief,
            TieBreak::StatusQuoBias,
            &Universe::Thresholds,
            &witness
        )
        .unwrap());
    }

    #[test]
    fn budget_limits() {
        let f = Scf::constant(3, false).unwrap();
        assert!(matches!(
            pessimistic_refute(&f, TieBreak::Arbitrary, 0, &Universe::AllScfs),
            Err(Error::Parameter(_))
        ));
        let big = Scf::constant(16, false).unwrap();
        let err = pessimistic_refute(&big, TieBreak::Arbitrary, 3, &Universe::Thresholds);
        assert!(matches!(err, Err(Error::Capacity(_))));
    }
}

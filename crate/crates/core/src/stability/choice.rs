use std::cmp::Ordering;

use serde::Serialize;

use crate::belief::Belief;
use crate::error::{ensure_same_n, Result};
use crate::scf::{Scf, VotingVector};

use super::utility::utilities;
use super::TieBreak;

/// Votes of each voter on the motion to replace `f` by `f2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChoiceProfileSet {
    pub n: usize,
    /// Voters whose vote is forced to 1 (strictly prefer the challenger).
    pub forced_for: Vec<usize>,
    /// Voters whose vote is forced to 0.
    pub forced_against: Vec<usize>,
    /// Tied voters free to vote either way; empty under status-quo bias.
    pub free: Vec<usize>,
}

impl ChoiceProfileSet {
    fn forced_bits(&self) -> u32 {
        self.forced_for.iter().fold(0, |acc, &i| acc | (1 << i))
    }

    fn free_bits(&self) -> u32 {
        self.free.iter().fold(0, |acc, &i| acc | (1 << i))
    }

    pub fn count(&self) -> u64 {
        1u64 << self.free.len()
    }

    pub fn contains(&self, c: VotingVector) -> bool {
        c.n() == self.n && (c.bits() & !self.free_bits()) == self.forced_bits()
    }

    /// All admissible choice vectors, ordered by encoding.
    pub fn admissible(&self) -> Vec<VotingVector> {
        let free = self.free_bits();
        let forced = self.forced_bits();
        let mut out = Vec::with_capacity(self.count() as usize);
        let mut sub = 0u32;
        loop {
            out.push(VotingVector::from_raw(self.n, forced | sub));
            if sub == free {
                break;
            }
            sub = sub.wrapping_sub(free) & free;
        }
        out
    }
}

/// Choice vectors for the motion `f -> f2`, from exact utilities.
pub fn choice_profiles(
    f: &Scf,
    f2: &Scf,
    belief: &Belief,
    tb: TieBreak,
) -> Result<ChoiceProfileSet> {
    ensure_same_n(f.n(), f2.n())?;
    let old = utilities(f, belief)?;
    let new = utilities(f2, belief)?;
    let mut set = ChoiceProfileSet {
        n: f.n(),
        forced_for: vec![],
        forced_against: vec![],
        free: vec![],
    };
    for (i, (a, b)) in old.iter().zip(&new).enumerate() {
        match b.cmp(a) {
            Ordering::Greater => set.forced_for.push(i),
            Ordering::Less => set.forced_against.push(i),
            Ordering::Equal => match tb {
                TieBreak::Arbitrary => set.free.push(i),
                TieBreak::StatusQuoBias => set.forced_against.push(i),
            },
        }
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::belief::IidParameter;
    use crate::scf::NamedScf;

    fn half() -> Belief {
        Belief::iid(&IidParameter::parse("1/2").unwrap(), 3).unwrap()
    }

    #[test]
    fn majority_versus_dictator() {
        let sm = NamedScf::SimpleMajority.materialize(3).unwrap();
        let d0 = NamedScf::Dictatorship(0).materialize(3).unwrap();
        for tb in [TieBreak::Arbitrary, TieBreak::StatusQuoBias] {
            let set = choice_profiles(&sm, &d0, &half(), tb).unwrap();
            assert_eq!(set.forced_for, vec![0]);
            assert_eq!(set.forced_against, vec![1, 2]);
            assert!(set.free.is_empty());
        }
    }

    #[test]
    fn self_comparison_is_all_tied() {
        let f = NamedScf::Unanimity.materialize(3).unwrap();
        let sqb = choice_profiles(&f, &f, &half(), TieBreak::StatusQuoBias).unwrap();
        assert_eq!(sqb.admissible(), vec![VotingVector::zeros(3).unwrap()]);
        let arb = choice_profiles(&f, &f, &half(), TieBreak::Arbitrary).unwrap();
        assert_eq!(arb.admissible().len(), 8);
        assert!(VotingVector::all(3).all(|c| arb.contains(c)));
    }

    #[test]
    fn dictator_never_wants_to_leave() {
        let d = NamedScf::Dictatorship(1).materialize(3).unwrap();
        let b = Belief::iid(&IidParameter::parse("2/7").unwrap(), 3).unwrap();
        for g in Scf::enumerate(3).unwrap().filter(|g| *g != d) {
            let set = choice_profiles(&d, &g, &b, TieBreak::Arbitrary).unwrap();
            assert!(set.forced_against.contains(&1));
        }
    }

    #[test]
    fn admissible_partitions_match_count() {
        let set = ChoiceProfileSet {
            n: 4,
            forced_for: vec![2],
            forced_against: vec![0],
            free: vec![1, 3],
        };
        let all = set.admissible();
        assert_eq!(all.len() as u64, set.count());
        assert!(all
            .iter()
            .all(|c| set.contains(*c) && c.vote(2) && !c.vote(0)));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }
}

//! Structural predicates on SCFs, each decided by a direct scan of the table.

use serde::Serialize;

use super::{full_mask, Scf, VotingVector};

/// No profile `v` with f(v) = f(¬v) = 1.
pub fn is_never_negation_agnostic(f: &Scf) -> bool {
    f.accepting().all(|v| !f.eval(v.negate()))
}

/// Rejected profiles are closed under intersecting their supporter sets.
pub fn is_downward_closed(f: &Scf) -> bool {
    let rejected: Vec<u32> = VotingVector::all(f.n())
        .filter(|v| !f.eval(*v))
        .map(|v| v.bits())
        .collect();
    rejected
        .iter()
        .enumerate()
        .all(|(a, &s1)| rejected[a + 1..].iter().all(|&s2| !f.eval_bits(s1 & s2)))
}

pub fn respects_rejective_consensus(f: &Scf) -> bool {
    !f.eval_bits(0)
}

/// Whenever S1 ⊂ S2 with f(S1) = 1 and f(S2) = 0, every S3 ⊇ S1 that avoids
/// S2 \ S1 is accepted.
pub fn has_bounded_monotonicity_violation(f: &Scf) -> bool {
    let full = full_mask(f.n());
    for s1 in f.accepting().map(|v| v.bits()) {
        let outside = full & !s1;
        // strict supersets of s1 that are rejected
        let mut extra = outside;
        while extra != 0 {
            let s2 = s1 | extra;
            if !f.eval_bits(s2) {
                let allowed = outside & !extra;
                let mut sub = allowed;
                loop {
                    if !f.eval_bits(s1 | sub) {
                        return false;
                    }
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & allowed;
                }
            }
            extra = (extra - 1) & outside;
        }
    }
    true
}

/// Every accepted profile with at least three supporters has at most two
/// rejected one-supporter-removed sub-profiles.
pub fn has_bounded_downward_sensitivity(f: &Scf) -> bool {
    f.accepting().filter(|v| v.count(true) >= 3).all(|v| {
        let bits = v.bits();
        let rejected = v
            .support()
            .into_iter()
            .filter(|&i| !f.eval_bits(bits & !(1 << i)))
            .count();
        rejected <= 2
    })
}

/// Some profile with exactly two supporters is accepted.
pub fn has_strong_duo(f: &Scf) -> bool {
    f.accepting().any(|v| v.count(true) == 2)
}

/// Invariant under every permutation of voters, i.e. a function of η(v, 1).
pub fn is_anonymous(f: &Scf) -> bool {
    let mut by_count: Vec<Option<bool>> = vec![None; f.n() + 1];
    VotingVector::all(f.n()).all(|v| {
        let slot = &mut by_count[v.count(true)];
        let value = f.eval(v);
        *slot.get_or_insert(value) == value
    })
}

pub fn is_monotone(f: &Scf) -> bool {
    let n = f.n();
    f.accepting().all(|v| {
        (0..n)
            .filter(|&i| !v.vote(i))
            .all(|i| f.eval_bits(v.bits() | 1 << i))
    })
}

/// The six conditions every non-constant SCF must meet to survive all
/// beliefs under status-quo tie-breaking.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NecessaryConditions {
    pub never_negation_agnostic: bool,
    pub downward_closed: bool,
    pub respects_rejective_consensus: bool,
    pub bounded_monotonicity_violation: bool,
    pub bounded_downward_sensitivity: bool,
    pub strong_duo: bool,
}

impl NecessaryConditions {
    pub fn evaluate(f: &Scf) -> Self {
        Self {
            never_negation_agnostic: is_never_negation_agnostic(f),
            downward_closed: is_downward_closed(f),
            respects_rejective_consensus: respects_rejective_consensus(f),
            bounded_monotonicity_violation: has_bounded_monotonicity_violation(f),
            bounded_downward_sensitivity: has_bounded_downward_sensitivity(f),
            strong_duo: has_strong_duo(f),
        }
    }

    pub fn all(&self) -> bool {
        self.never_negation_agnostic
            && self.downward_closed
            && self.respects_rejective_consensus
            && self.bounded_monotonicity_violation
            && self.bounded_downward_sensitivity
            && self.strong_duo
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scf::NamedScf;

    fn v(s: &str) -> VotingVector {
        VotingVector::parse_binary(s).unwrap()
    }

    fn accepting(list: &[&str]) -> Scf {
        let vs: Vec<_> = list.iter().map(|s| v(s)).collect();
        Scf::from_accepting(list.first().map_or(3, |s| s.len()), &vs).unwrap()
    }

    fn named(x: NamedScf) -> Scf {
        x.materialize(3).unwrap()
    }

    fn gap_example() -> Scf {
        accepting(&["110", "100"])
    }

    // Oracles written straight from the set-theoretic definitions, looping
    // over explicit supporter sets rather than bit tricks.
    fn supporters(x: VotingVector) -> Vec<usize> {
        x.support()
    }

    fn subset(a: &[usize], b: &[usize]) -> bool {
        a.iter().all(|i| b.contains(i))
    }

    fn brute_downward_closed(f: &Scf) -> bool {
        let n = f.n();
        for v1 in VotingVector::all(n) {
            for v2 in VotingVector::all(n) {
                if v1 == v2 || f.eval(v1) || f.eval(v2) {
                    continue;
                }
                let common: Vec<usize> = supporters(v1)
                    .into_iter()
                    .filter(|i| supporters(v2).contains(i))
                    .collect();
                if f.eval(VotingVector::from_support(n, &common).unwrap()) {
                    return false;
                }
            }
        }
        true
    }

    fn brute_bounded_monotonicity(f: &Scf) -> bool {
        let n = f.n();
        for v1 in VotingVector::all(n) {
            for v2 in VotingVector::all(n) {
                let (s1, s2) = (supporters(v1), supporters(v2));
                if !(subset(&s1, &s2) && s1 != s2 && f.eval(v1) && !f.eval(v2)) {
                    continue;
                }
                let diff: Vec<usize> = s2.iter().copied().filter(|i| !s1.contains(i)).collect();
                for v3 in VotingVector::all(n) {
                    let s3 = supporters(v3);
                    if subset(&s1, &s3) && !s3.iter().any(|i| diff.contains(i)) && !f.eval(v3) {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn never_negation_agnostic_examples() {
        assert!(is_never_negation_agnostic(&named(NamedScf::ConstantZero)));
        assert!(is_never_negation_agnostic(&named(NamedScf::SimpleMajority)));
        assert!(!is_never_negation_agnostic(&accepting(&["100", "011"])));
    }

    #[test]
    fn named_rules_are_never_negation_agnostic() {
        use crate::rational::ratio;
        for x in [
            NamedScf::Unanimity,
            NamedScf::SimpleMajority,
            NamedScf::QualifiedMajority(ratio(2, 3)),
            NamedScf::QualifiedMajority(ratio(1, 1)),
            NamedScf::ConstantZero,
            NamedScf::Oligarchy(vec![0, 1, 2]),
            NamedScf::Oligarchy(vec![1]),
            NamedScf::Oligarchy(vec![0, 2]),
            NamedScf::ConsensusDuopoly(0, 1),
            NamedScf::OligopolyWithVeto(2, 0, 1),
        ]
        .into_iter()
        .chain((0..3).map(NamedScf::Dictatorship))
        .chain((0..3).map(NamedScf::AntiDictatorship))
        {
            assert!(is_never_negation_agnostic(&named(x.clone())), "{x}");
        }
    }

    #[test]
    fn downward_closed_examples() {
        assert!(is_downward_closed(&named(NamedScf::ConstantZero)));
        assert!(is_downward_closed(&named(NamedScf::SimpleMajority)));
        assert!(!is_downward_closed(&accepting(&["000"])));
    }

    #[test]
    fn rejective_consensus_examples() {
        assert!(respects_rejective_consensus(&named(
            NamedScf::Dictatorship(1)
        )));
        assert!(!respects_rejective_consensus(&named(
            NamedScf::AntiDictatorship(1)
        )));
        assert!(respects_rejective_consensus(&named(NamedScf::Unanimity)));
    }

    #[test]
    fn bounded_monotonicity_examples() {
        assert!(has_bounded_monotonicity_violation(&named(
            NamedScf::SimpleMajority
        )));
        assert!(has_bounded_monotonicity_violation(&gap_example()));
        assert!(!has_bounded_monotonicity_violation(&accepting(&["100"])));
    }

    #[test]
    fn bounded_downward_sensitivity_examples() {
        assert!(!has_bounded_downward_sensitivity(&accepting(&["111"])));
        assert!(has_bounded_downward_sensitivity(&accepting(&[
            "111", "110"
        ])));
        assert!(has_bounded_downward_sensitivity(&accepting(&[
            "110", "100", "001"
        ])));
    }

    #[test]
    fn strong_duo_examples() {
        assert!(has_strong_duo(&named(NamedScf::ConsensusDuopoly(0, 1))));
        assert!(!has_strong_duo(&named(NamedScf::ConstantZero)));
        assert!(!has_strong_duo(&named(NamedScf::Unanimity)));
    }

    #[test]
    fn anonymity_and_monotonicity() {
        let sm = named(NamedScf::SimpleMajority);
        assert!(is_anonymous(&sm) && is_monotone(&sm));
        let d = named(NamedScf::Dictatorship(0));
        assert!(!is_anonymous(&d) && is_monotone(&d));
        assert!(!is_monotone(&named(NamedScf::AntiDictatorship(0))));
    }

    #[test]
    fn anonymous_monotone_count_at_three() {
        // threshold k = 0..=4 gives five distinct tables
        let count = Scf::enumerate(3)
            .unwrap()
            .filter(|f| is_anonymous(f) && is_monotone(f))
            .count();
        assert_eq!(count, 5);
        let thresholds: std::collections::BTreeSet<Scf> =
            (0..=4).map(|k| named(NamedScf::Threshold(k))).collect();
        assert_eq!(thresholds.len(), 5);
        assert!(thresholds.iter().all(|f| is_anonymous(f) && is_monotone(f)));
    }

    #[test]
    fn scans_match_brute_force_definitions() {
        for f in Scf::enumerate(3).unwrap() {
            assert_eq!(is_downward_closed(&f), brute_downward_closed(&f), "{f}");
            assert_eq!(
                has_bounded_monotonicity_violation(&f),
                brute_bounded_monotonicity(&f),
                "{f}"
            );
        }
    }

    #[test]
    fn gap_example_meets_all_six_conditions() {
        assert!(NecessaryConditions::evaluate(&gap_example()).all());
    }
}

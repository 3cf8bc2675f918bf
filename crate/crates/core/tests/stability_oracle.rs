//! Self-maintenance checked against a direct reading of the definition:
//! utilities from the exact belief, every challenger, every admissible vote.

use constlab::stability::{is_self_maintaining, utility, verify_witness};
use constlab::{Belief, IidParameter, Scf, TieBreak, Universe, VotingVector};
use num_rational::BigRational;
use proptest::prelude::*;

fn all_utilities(fs: &[Scf], b: &Belief) -> Vec<Vec<BigRational>> {
    fs.iter()
        .map(|f| (0..b.n()).map(|i| utility(f, b, i).unwrap()).collect())
        .collect()
}

fn oracle_stable(f: usize, fs: &[Scf], utils: &[Vec<BigRational>], tb: TieBreak) -> bool {
    let n = fs[f].n();
    (0..fs.len()).filter(|&g| g != f).all(|g| {
        VotingVector::all(n).all(|c| {
            let admissible = (0..n).all(|i| match utils[g][i].cmp(&utils[f][i]) {
                std::cmp::Ordering::Greater => c.vote(i),
                std::cmp::Ordering::Less => !c.vote(i),
                std::cmp::Ordering::Equal => tb == TieBreak::Arbitrary || !c.vote(i),
            });
            !admissible || !fs[f].eval(c)
        })
    })
}

fn agree_on_every_rule(b: &Belief) {
    let fs: Vec<Scf> = Scf::enumerate(3).unwrap().collect();
    let utils = all_utilities(&fs, b);
    for tb in [TieBreak::Arbitrary, TieBreak::StatusQuoBias] {
        for (k, f) in fs.iter().enumerate() {
            let verdict = is_self_maintaining(f, b, tb, &Universe::AllScfs).unwrap();
            assert_eq!(
                verdict.stable,
                oracle_stable(k, &fs, &utils, tb),
                "{f} under {tb}"
            );
            if let Some(w) = verdict.witness {
                assert!(verify_witness(f, b, tb, &Universe::AllScfs, &w).unwrap());
            }
        }
    }
}

#[test]
fn iid_beliefs_match_the_definition() {
    for p in ["1/2", "1/3", "4/5"] {
        agree_on_every_rule(&Belief::iid(&IidParameter::parse(p).unwrap(), 3).unwrap());
    }
}

#[test]
fn sparse_belief_matches_the_definition() {
    let v = |s| VotingVector::parse_binary(s).unwrap();
    agree_on_every_rule(&Belief::uniform_support(&[v("110"), v("011"), v("000")]).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_beliefs_match_the_definition(
        weights in prop::collection::vec(0u32..5, 8),
        f in 0u64..256,
    ) {
        prop_assume!(weights.iter().any(|w| *w > 0));
        let total: u32 = weights.iter().sum();
        let entries = weights.iter().enumerate().filter(|(_, w)| **w > 0).map(|(bits, w)| {
            (VotingVector::new(3, bits as u32).unwrap(), BigRational::new((*w).into(), total.into()))
        });
        let b = Belief::from_pmf(3, entries).unwrap();
        let fs: Vec<Scf> = Scf::enumerate(3).unwrap().collect();
        let utils = all_utilities(&fs, &b);
        for tb in [TieBreak::Arbitrary, TieBreak::StatusQuoBias] {
            let verdict = is_self_maintaining(&fs[f as usize], &b, tb, &Universe::AllScfs).unwrap();
            prop_assert_eq!(verdict.stable, oracle_stable(f as usize, &fs, &utils, tb));
        }
    }
}

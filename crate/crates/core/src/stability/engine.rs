use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::belief::Belief;
use crate::error::{ensure_same_n, Error, Result};
use crate::scf::{check_voters, Scf, VotingVector, MAX_ENUMERABLE_VOTERS};

use super::choice::choice_profiles;
use super::weights::{Scaled, ScaledBelief, Weight};
use super::{TieBreak, Universe, UniverseKind};

/// Largest belief support the all-SCF search will expand (`2^k` subsets).
pub(crate) const MAX_SUPPORT_FOR_ALL_SCFS: usize = 20;

/// A challenger and a choice vector on which the incumbent votes itself out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub f_prime: Scf,
    pub c: VotingVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityVerdict {
    pub stable: bool,
    pub witness: Option<Witness>,
    pub universe: UniverseKind,
}

/// Decides whether `f` rejects every motion to switch to a member of `universe`.
pub fn is_self_maintaining(
    f: &Scf,
    belief: &Belief,
    tb: TieBreak,
    universe: &Universe,
) -> Result<StabilityVerdict> {
    ensure_same_n(f.n(), belief.n())?;
    let witness = find_violation(f, &ScaledBelief::new(belief), tb, universe)?;
    Ok(StabilityVerdict {
        stable: witness.is_none(),
        witness,
        universe: universe.kind(),
    })
}

/// Re-checks a witness from exact utilities, independently of the search.
pub fn verify_witness(
    f: &Scf,
    belief: &Belief,
    tb: TieBreak,
    universe: &Universe,
    w: &Witness,
) -> Result<bool> {
    ensure_same_n(f.n(), w.f_prime.n())?;
    let member = match universe {
        Universe::AllScfs => true,
        Universe::Thresholds => Universe::thresholds(f.n())?.contains(&w.f_prime),
        Universe::Explicit(list) => list.contains(&w.f_prime),
    };
    if !member || w.f_prime == *f || !f.eval(w.c) {
        return Ok(false);
    }
    Ok(choice_profiles(f, &w.f_prime, belief, tb)?.contains(w.c))
}

pub(crate) fn find_violation(
    f: &Scf,
    belief: &ScaledBelief,
    tb: TieBreak,
    universe: &Universe,
) -> Result<Option<Witness>> {
    ensure_same_n(f.n(), belief.n())?;
    match belief {
        ScaledBelief::Small(s) => violation(f, s, tb, universe),
        ScaledBelief::Big(s) => violation(f, s, tb, universe),
    }
}

/// Whether the motion `f -> g` can pass, and on which choice vector.
pub(crate) fn motion_passes(
    f: &Scf,
    g: &Scf,
    belief: &ScaledBelief,
    tb: TieBreak,
) -> Option<VotingVector> {
    let c = match belief {
        ScaledBelief::Small(s) => bad_choice(f, &pair_deltas(f, g, s), tb),
        ScaledBelief::Big(s) => bad_choice(f, &pair_deltas(f, g, s), tb),
    };
    c.map(|bits| VotingVector::from_raw(f.n(), bits))
}

fn violation<W: Weight>(
    f: &Scf,
    s: &Scaled<W>,
    tb: TieBreak,
    universe: &Universe,
) -> Result<Option<Witness>> {
    match universe {
        Universe::AllScfs => all_scfs_violation(f, s, tb),
        Universe::Thresholds => Ok(explicit_violation(f, s, tb, &Universe::thresholds(f.n())?)),
        Universe::Explicit(list) => {
            for g in list {
                ensure_same_n(f.n(), g.n())?;
            }
            Ok(explicit_violation(f, s, tb, list))
        }
    }
}

fn explicit_violation<W: Weight>(
    f: &Scf,
    s: &Scaled<W>,
    tb: TieBreak,
    list: &[Scf],
) -> Option<Witness> {
    list.iter().filter(|g| *g != f).find_map(|g| {
        bad_choice(f, &pair_deltas(f, g, s), tb).map(|c| Witness {
            f_prime: g.clone(),
            c: VotingVector::from_raw(f.n(), c),
        })
    })
}

/// Scaled utility gain `u_i(g) - u_i(f)` for every voter.
fn pair_deltas<W: Weight>(f: &Scf, g: &Scf, s: &Scaled<W>) -> Vec<W> {
    let mut deltas = vec![W::zero(); s.n];
    for (&v, w) in s.vectors.iter().zip(&s.weights) {
        let old = f.eval_bits(v);
        if old == g.eval_bits(v) {
            continue;
        }
        for (i, d) in deltas.iter_mut().enumerate() {
            if (v >> i & 1 == 1) != old {
                *d += w;
            } else {
                *d -= w;
            }
        }
    }
    deltas
}

/// An admissible choice vector accepted by `f`, if any.
fn bad_choice<W: Weight>(f: &Scf, deltas: &[W], tb: TieBreak) -> Option<u32> {
    let zero = W::zero();
    let mut forced = 0u32;
    let mut free = 0u32;
    for (i, d) in deltas.iter().enumerate() {
        match d.cmp(&zero) {
            std::cmp::Ordering::Greater => forced |= 1 << i,
            std::cmp::Ordering::Equal if tb == TieBreak::Arbitrary => free |= 1 << i,
            _ => {}
        }
    }
    let mut sub = 0u32;
    loop {
        if f.eval_bits(forced | sub) {
            return Some(forced | sub);
        }
        if sub == free {
            return None;
        }
        sub = sub.wrapping_sub(free) & free;
    }
}

/// Utility deltas depend on a challenger only through the support vectors on
/// which it differs from `f`, so it suffices to visit every subset of the
/// support, plus one off-support edit that leaves every voter tied.
fn all_scfs_violation<W: Weight>(f: &Scf, s: &Scaled<W>, tb: TieBreak) -> Result<Option<Witness>> {
    let m = s.vectors.len();
    if m > MAX_SUPPORT_FOR_ALL_SCFS {
        return Err(Error::Capacity(format!(
            "belief support of {m} vectors exceeds the all-SCF search limit of {MAX_SUPPORT_FOR_ALL_SCFS}"
        )));
    }
    let n = s.n;
    if m < 1 << n {
        let off = (0..1u32 << n)
            .find(|v| s.vectors.binary_search(v).is_err())
            .expect("support is not full");
        if let Some(c) = bad_choice(f, &vec![W::zero(); n], tb) {
            let f_prime = f.with_flipped(VotingVector::from_raw(n, off));
            return Ok(Some(Witness {
                f_prime,
                c: VotingVector::from_raw(n, c),
            }));
        }
    }
    // voters who agree with the challenger on vector k when it differs from f there
    let gainers: Vec<u32> = s
        .vectors
        .iter()
        .map(|&v| if f.eval_bits(v) { !v } else { v })
        .collect();
    let mut deltas = vec![W::zero(); n];
    let mut flipped = 0u64;
    for step in 1u64..1 << m {
        let k = step.trailing_zeros() as usize;
        flipped ^= 1 << k;
        let entering = flipped >> k & 1 == 1;
        let w = &s.weights[k];
        for (i, d) in deltas.iter_mut().enumerate() {
            if (gainers[k] >> i & 1 == 1) == entering {
                *d += w;
            } else {
                *d -= w;
            }
        }
        if let Some(c) = bad_choice(f, &deltas, tb) {
            let mut f_prime = f.clone();
            for (j, &v) in s.vectors.iter().enumerate() {
                if flipped >> j & 1 == 1 {
                    f_prime = f_prime.with_flipped(VotingVector::from_raw(n, v));
                }
            }
            return Ok(Some(Witness {
                f_prime,
                c: VotingVector::from_raw(n, c),
            }));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EnumerationScope {
    /// Exhaustive classification up to three voters.
    #[default]
    Standard,
    /// Also allows four voters (65,536 candidates).
    Extended,
}

impl EnumerationScope {
    pub fn max_voters(self) -> usize {
        match self {
            EnumerationScope::Standard => 3,
            EnumerationScope::Extended => MAX_ENUMERABLE_VOTERS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub n: usize,
    pub tie_break: TieBreak,
    pub universe: UniverseKind,
    pub stable: Vec<Scf>,
    pub witnesses: BTreeMap<Scf, Witness>,
}

impl EnumerationScope {
    /// Rejects exhaustive all-SCF runs beyond this scope.
    pub fn check(self, n: usize, universe: &Universe) -> Result<()> {
        check_voters(n)?;
        if matches!(universe, Universe::AllScfs) && n > self.max_voters() {
            return Err(Error::Capacity(format!(
                "classifying all SCFs at n={n} needs the extended scope (max n={})",
                self.max_voters()
            )));
        }
        Ok(())
    }
}

/// Splits every member of `universe` into stable rules and refuted ones.
pub fn classify(
    n: usize,
    belief: &Belief,
    tb: TieBreak,
    universe: &Universe,
    scope: EnumerationScope,
) -> Result<Classification> {
    scope.check(n, universe)?;
    classify_candidates(belief, tb, universe, universe.members(n)?)
}

/// Classifies the given candidates, in any order, against `universe`.
/// The output is sorted and does not depend on the input order.
pub fn classify_candidates(
    belief: &Belief,
    tb: TieBreak,
    universe: &Universe,
    candidates: Vec<Scf>,
) -> Result<Classification> {
    let n = belief.n();
    let scaled = ScaledBelief::new(belief);
    let verdicts: Vec<Option<Witness>> = candidates
        .par_iter()
        .map(|f| find_violation(f, &scaled, tb, universe))
        .collect::<Result<_>>()?;
    let mut out = Classification {
        n,
        tie_break: tb,
        universe: universe.kind(),
        stable: vec![],
        witnesses: BTreeMap::new(),
    };
    for (f, w) in candidates.into_iter().zip(verdicts) {
        match w {
            None => out.stable.push(f),
            Some(w) => {
                out.witnesses.insert(f, w);
            }
        }
    }
    out.stable.sort();
    out.stable.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::belief::IidParameter;
    use crate::scf::NamedScf;
    use crate::stability::utility::utilities;
    use proptest::prelude::*;

    fn iid(p: &str, n: usize) -> Belief {
        Belief::iid(&IidParameter::parse(p).unwrap(), n).unwrap()
    }

    /// Brute force straight from the definition: every challenger, exact
    /// utilities, every admissible choice vector.
    fn brute_stable(f: &Scf, b: &Belief, tb: TieBreak) -> bool {
        let uf = utilities(f, b).unwrap();
        Scf::enumerate(f.n()).unwrap().filter(|g| g != f).all(|g| {
            let ug = utilities(&g, b).unwrap();
            VotingVector::all(f.n()).all(|c| {
                let admissible = (0..f.n()).all(|i| match ug[i].cmp(&uf[i]) {
                    std::cmp::Ordering::Greater => c.vote(i),
                    std::cmp::Ordering::Less => !c.vote(i),
                    std::cmp::Ordering::Equal => tb == TieBreak::Arbitrary || !c.vote(i),
                });
                !admissible || !f.eval(c)
            })
        })
    }

    fn named(s: &str) -> Scf {
        s.parse::<NamedScf>().unwrap().materialize(3).unwrap()
    }

    #[test]
    fn spec_examples() {
        let half = iid("1/2", 3);
        let zero = Scf::constant(3, false).unwrap();
        for tb in [TieBreak::Arbitrary, TieBreak::StatusQuoBias] {
            assert!(
                is_self_maintaining(&zero, &half, tb, &Universe::AllScfs)
                    .unwrap()
                    .stable
            );
        }
        for p in ["1/3", "1/2", "4/5"] {
            let v = is_self_maintaining(
                &named("dictatorship:1"),
                &iid(p, 3),
                TieBreak::Arbitrary,
                &Universe::AllScfs,
            );
            assert!(v.unwrap().stable);
        }
        let sm = named("simple-majority");
        let v = is_self_maintaining(&sm, &half, TieBreak::Arbitrary, &Universe::AllScfs).unwrap();
        assert!(!v.stable);
        let w = v.witness.unwrap();
        assert!(verify_witness(&sm, &half, TieBreak::Arbitrary, &Universe::AllScfs, &w).unwrap());
    }

    #[test]
    fn matches_brute_force_on_a_sample() {
        for p in ["1/2", "1/3"] {
            let b = iid(p, 3);
            for f in Scf::enumerate(3).unwrap().step_by(5) {
                for tb in [TieBreak::Arbitrary, TieBreak::StatusQuoBias] {
                    let fast = is_self_maintaining(&f, &b, tb, &Universe::AllScfs).unwrap();
                    assert_eq!(fast.stable, brute_stable(&f, &b, tb), "{f} {p} {tb}");
                }
            }
        }
    }

    #[test]
    fn unbiased_arbitrary_classification() {
        let c = classify(
            3,
            &iid("1/2", 3),
            TieBreak::Arbitrary,
            &Universe::AllScfs,
            EnumerationScope::Standard,
        )
        .unwrap();
        let mut want = vec![Scf::constant(3, false).unwrap()];
        want.extend(NamedScf::dictatorships(3).unwrap());
        want.extend(NamedScf::anti_dictatorships(3).unwrap());
        want.sort();
        assert_eq!(c.stable, want);
        assert_eq!(c.witnesses.len(), 256 - 7);
    }

    #[test]
    fn sqb_adds_consensus_duopolies() {
        let c = classify(
            3,
            &iid("1/2", 3),
            TieBreak::StatusQuoBias,
            &Universe::AllScfs,
            EnumerationScope::Standard,
        )
        .unwrap();
        for s in [
            "consensus-duopoly:0,1",
            "consensus-duopoly:0,2",
            "consensus-duopoly:1,2",
            "dictatorship:2",
        ] {
            assert!(c.stable.contains(&named(s)), "{s}");
        }
    }

    #[test]
    fn scope_guard() {
        let b = iid("1/2", 4);
        let err = classify(
            4,
            &b,
            TieBreak::Arbitrary,
            &Universe::AllScfs,
            EnumerationScope::Standard,
        );
        assert!(matches!(err, Err(Error::Capacity(_))));
    }

    #[test]
    fn thresholds_universe_excludes_self() {
        let sm = NamedScf::SimpleMajority.materialize(5).unwrap();
        let b = iid("2/3", 5);
        let v =
            is_self_maintaining(&sm, &b, TieBreak::StatusQuoBias, &Universe::Thresholds).unwrap();
        assert!(v.stable);
        assert_eq!(v.universe, UniverseKind::Thresholds);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn witnesses_reverify_and_arbitrary_implies_sqb(
            index in 0u64..256,
            weights in proptest::collection::vec(0u32..4, 8),
        ) {
            prop_assume!(weights.iter().any(|&w| w > 0));
            let total: u32 = weights.iter().sum();
            let entries = weights.iter().enumerate().filter(|(_, w)| **w > 0).map(|(k, w)| {
                (VotingVector::new(3, k as u32).unwrap(), crate::rational::ratio(*w as i64, total as i64))
            });
            let b = Belief::from_pmf(3, entries).unwrap();
            let f = Scf::from_index(3, index).unwrap();
            let arb = is_self_maintaining(&f, &b, TieBreak::Arbitrary, &Universe::AllScfs).unwrap();
            let sqb = is_self_maintaining(&f, &b, TieBreak::StatusQuoBias, &Universe::AllScfs).unwrap();
            prop_assert!(!arb.stable || sqb.stable);
            prop_assert_eq!(arb.stable, brute_stable(&f, &b, TieBreak::Arbitrary));
            prop_assert_eq!(sqb.stable, brute_stable(&f, &b, TieBreak::StatusQuoBias));
            for (v, tb) in [(arb, TieBreak::Arbitrary), (sqb, TieBreak::StatusQuoBias)] {
                prop_assert_eq!(v.stable, v.witness.is_none());
                if let Some(w) = v.witness {
                    prop_assert!(verify_witness(&f, &b, tb, &Universe::AllScfs, &w).unwrap());
                }
            }
        }
    }
}

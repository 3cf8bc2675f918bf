use serde::Serialize;

use super::{Scf, VotingVector};

/// Shape of the entangled pair set S(f).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "center", rename_all = "kebab-case")]
pub enum EntangledClass {
    NotEntangled,
    ThreeOligopoly,
    FlowerForm(usize),
    ConservativeFlowerForm(usize),
}

/// Pairs `(i, j)`, `i < j`, such that f(v) = v_i whenever v_i = v_j.
pub fn entangled_pairs(f: &Scf) -> Vec<(usize, usize)> {
    let n = f.n();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let forced = VotingVector::all(n)
                .filter(|v| v.vote(i) == v.vote(j))
                .all(|v| f.eval(v) == v.vote(i));
            if forced {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// Classifies `f` by its entangled pairs. A single pair has two possible
/// centers; the lower-indexed voter is reported.
///
/// Every non-empty pair set is either a triangle or shares a common voter,
/// so the remaining case cannot occur.
pub fn classify_entangled(f: &Scf) -> EntangledClass {
    let pairs = entangled_pairs(f);
    if pairs.is_empty() {
        return EntangledClass::NotEntangled;
    }
    let center = (0..f.n()).find(|&c| pairs.iter().all(|&(i, j)| i == c || j == c));
    let Some(center) = center else {
        let mut voters: Vec<usize> = pairs.iter().flat_map(|&(i, j)| [i, j]).collect();
        voters.sort_unstable();
        voters.dedup();
        assert!(
            pairs.len() == 3 && voters.len() == 3,
            "entangled pairs {pairs:?} are neither a flower nor a 3-oligopoly"
        );
        return EntangledClass::ThreeOligopoly;
    };
    let partners: Vec<usize> = pairs
        .iter()
        .map(|&(i, j)| if i == center { j } else { i })
        .collect();
    let conservative = VotingVector::all(f.n())
        .filter(|v| partners.iter().all(|&j| v.vote(j) != v.vote(center)))
        .all(|v| !f.eval(v));
    if conservative {
        EntangledClass::ConservativeFlowerForm(center)
    } else {
        EntangledClass::FlowerForm(center)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scf::NamedScf;
    use std::collections::BTreeMap;

    fn named(x: NamedScf, n: usize) -> Scf {
        x.materialize(n).unwrap()
    }

    #[test]
    fn pairs_of_named_rules() {
        assert_eq!(
            entangled_pairs(&named(NamedScf::Oligarchy(vec![0, 1, 2]), 3)),
            vec![(0, 1), (0, 2), (1, 2)]
        );
        assert_eq!(
            entangled_pairs(&named(NamedScf::ConsensusDuopoly(0, 1), 3)),
            vec![(0, 1)]
        );
        assert!(entangled_pairs(&named(NamedScf::ConstantZero, 3)).is_empty());
    }

    #[test]
    fn classes_of_named_rules() {
        let veto = named(NamedScf::OligopolyWithVeto(0, 1, 2), 3);
        assert_eq!(entangled_pairs(&veto), vec![(0, 1), (0, 2)]);
        assert_eq!(
            classify_entangled(&veto),
            EntangledClass::ConservativeFlowerForm(0)
        );
        assert_eq!(
            classify_entangled(&named(NamedScf::Oligarchy(vec![0, 1, 2]), 3)),
            EntangledClass::ThreeOligopoly
        );
        assert_eq!(
            classify_entangled(&named(NamedScf::Oligarchy(vec![1, 2, 3]), 4)),
            EntangledClass::ThreeOligopoly
        );
        // the dictator agrees with the outcome whenever anyone agrees with it
        assert_eq!(
            entangled_pairs(&named(NamedScf::Dictatorship(0), 3)),
            vec![(0, 1), (0, 2)]
        );
        assert_eq!(
            classify_entangled(&named(NamedScf::Dictatorship(0), 3)),
            EntangledClass::FlowerForm(0)
        );
        assert_eq!(
            classify_entangled(&named(NamedScf::SimpleMajority, 5)),
            EntangledClass::NotEntangled
        );
        assert_eq!(
            classify_entangled(&named(NamedScf::ConsensusDuopoly(1, 2), 3)),
            EntangledClass::ConservativeFlowerForm(1)
        );
    }

    #[test]
    fn every_entangled_scf_is_flower_or_triangle() {
        // classify_entangled asserts the structure; this walks every table.
        for n in [3, 4] {
            for f in Scf::enumerate(n).unwrap() {
                let class = classify_entangled(&f);
                assert_eq!(
                    class == EntangledClass::NotEntangled,
                    entangled_pairs(&f).is_empty()
                );
            }
        }
    }

    #[test]
    fn unique_conservative_scf_per_flower() {
        let mut conservative: BTreeMap<Vec<(usize, usize)>, usize> = BTreeMap::new();
        for f in Scf::enumerate(3).unwrap() {
            if let EntangledClass::ConservativeFlowerForm(_) = classify_entangled(&f) {
                *conservative.entry(entangled_pairs(&f)).or_default() += 1;
            }
        }
        // three single pairs and three two-petal flowers
        let flowers: Vec<Vec<(usize, usize)>> = vec![
            vec![(0, 1)],
            vec![(0, 2)],
            vec![(1, 2)],
            vec![(0, 1), (0, 2)],
            vec![(0, 1), (1, 2)],
            vec![(0, 2), (1, 2)],
        ];
        for flower in &flowers {
            assert_eq!(conservative.get(flower), Some(&1), "{flower:?}");
        }
        assert_eq!(conservative.len(), flowers.len());
    }
}

use constlab::jury::{majority_correct_probability, JuryConfig, JuryModel};

/// Counts pro-change insiders one by one from the utility definitions.
fn oracle_passes(m: &JuryModel, i: usize, i2: usize) -> bool {
    let cfg = m.config();
    let g = |k| m.insider_utility(k).unwrap();
    let new_utility = |j: usize| {
        if j <= i2 {
            g(i2)
        } else {
            (1.0 - cfg.lambda) * majority_correct_probability(i2, cfg.p).unwrap()
        }
    };
    let gain = (1..=i)
        .filter(|&j| new_utility(j) > g(i) + cfg.epsilon)
        .count();
    2 * gain > i
}

#[test]
fn motions_match_member_by_member_count() {
    for (lambda, p) in [(0.0, 0.6), (0.3, 0.7), (0.6, 0.6), (0.9, 0.8), (1.0, 0.6)] {
        let m = JuryModel::new(JuryConfig::new(40, lambda, p).unwrap()).unwrap();
        for i in 1..=40 {
            for i2 in (1..=40).filter(|&k| k != i) {
                assert_eq!(
                    m.passes_motion(i, i2).unwrap(),
                    oracle_passes(&m, i, i2),
                    "{lambda} {p} {i}->{i2}"
                );
            }
            let stable = (1..=40)
                .filter(|&k| k != i)
                .all(|k| !oracle_passes(&m, i, k));
            assert_eq!(m.is_stable(i).unwrap().full_check, stable);
        }
    }
}

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

use super::TieRule;

/// Largest committee size the recurrence is validated for.
pub const MAX_COMMITTEE: usize = 100_000;

/// Neumaier-compensated running sum.
#[derive(Default, Clone, Copy)]
struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum + self.carry
    }
}

pub(crate) fn check_accuracy(p: f64) -> Result<()> {
    if p > 0.5 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "signal accuracy must lie in (1/2, 1), got {p}"
        )))
    }
}

/// Probability that a strict majority of `i` independent signals with
/// accuracy `p` is correct.
pub fn majority_correct_probability(i: usize, p: f64) -> Result<f64> {
    majority_correct_probability_with(i, p, TieRule::StrictMajority)
}

/// Binomial terms are built outward from the mode by ratio recurrences, so
/// every term is at most 1 and no factorial or power is ever formed; the
/// tail is normalized by the compensated total.
pub fn majority_correct_probability_with(i: usize, p: f64, rule: TieRule) -> Result<f64> {
    check_accuracy(p)?;
    if i == 0 || i > MAX_COMMITTEE {
        return Err(Error::Domain(format!(
            "committee size must lie in 1..={MAX_COMMITTEE}, got {i}"
        )));
    }
    let q = 1.0 - p;
    let odds = p / q;
    let mode = (((i + 1) as f64) * p).floor().min(i as f64) as usize;
    let mut terms = vec![0.0f64; i + 1];
    terms[mode] = 1.0;
    for k in mode..i {
        terms[k + 1] = terms[k] * ((i - k) as f64 / (k + 1) as f64) * odds;
    }
    for k in (1..=mode).rev() {
        terms[k - 1] = terms[k] * (k as f64 / (i - k + 1) as f64) / odds;
    }
    let mut total = Compensated::default();
    let mut tail = Compensated::default();
    for (k, &t) in terms.iter().enumerate() {
        total.add(t);
        if 2 * k > i {
            tail.add(t);
        } else if 2 * k == i && rule == TieRule::HalfCredit {
            tail.add(0.5 * t);
        }
    }
    Ok(tail.value() / total.value())
}

/// Exact strict-majority probability for rational `p`; a reference oracle.
///
/// With `p = a/b` the sum is `Σ C(i,k) a^k (b-a)^(i-k) / b^i`, accumulated
/// over integers and reduced once.
pub fn majority_correct_probability_exact(i: usize, p: &BigRational) -> BigRational {
    let a = p.numer().clone();
    let b = p.denom().clone();
    let c = &b - &a;
    let mut c_pows = vec![BigInt::one()];
    for j in 1..=i {
        let next = &c_pows[j - 1] * &c;
        c_pows.push(next);
    }
    let mut binom = BigInt::one();
    let mut a_pow = BigInt::one();
    let mut acc = BigInt::zero();
    for k in 0..=i {
        if k > 0 {
            binom = binom * BigInt::from(i - k + 1) / BigInt::from(k);
            a_pow *= &a;
        }
        if 2 * k > i {
            acc += &binom * &a_pow * &c_pows[i - k];
        }
    }
    BigRational::new(acc, num_traits::pow(b, i))
}

/// `P(i)` for every size `0..=n` at a fixed accuracy (`P(0)` is unused).
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilityTable {
    pub p: f64,
    pub rule: TieRule,
    values: Vec<f64>,
}

impl ProbabilityTable {
    pub fn new(n: usize, p: f64, rule: TieRule) -> Result<Self> {
        let mut values = vec![f64::NAN];
        for i in 1..=n {
            values.push(majority_correct_probability_with(i, p, rule)?);
        }
        Ok(ProbabilityTable { p, rule, values })
    }

    pub fn get(&self, i: usize) -> f64 {
        self.values[i]
    }

    pub fn len(&self) -> usize {
        self.values.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{parse_rational, to_f64};
    use proptest::prelude::*;

    #[test]
    fn small_sizes() {
        for p in [0.55, 0.6, 0.9] {
            assert!((majority_correct_probability(1, p).unwrap() - p).abs() < 1e-15);
            assert!((majority_correct_probability(2, p).unwrap() - p * p).abs() < 1e-15);
            let three = p * p * p + 3.0 * p * p * (1.0 - p);
            assert!((majority_correct_probability(3, p).unwrap() - three).abs() < 1e-15);
            let half = majority_correct_probability_with(2, p, TieRule::HalfCredit).unwrap();
            assert!((half - p).abs() < 1e-15);
        }
    }

    #[test]
    fn brute_force_signal_outcomes() {
        let p = 0.7f64;
        for i in 1..=10usize {
            let mut want = 0.0;
            for mask in 0u32..1 << i {
                let correct = mask.count_ones() as usize;
                if 2 * correct > i {
                    want += p.powi(correct as i32) * (1.0 - p).powi((i - correct) as i32);
                }
            }
            assert!(
                (majority_correct_probability(i, p).unwrap() - want).abs() < 1e-14,
                "i={i}"
            );
        }
    }

    #[test]
    fn agrees_with_exact_oracle() {
        for text in ["3/5", "13/20", "7/10", "51/100"] {
            let exact_p = parse_rational(text).unwrap();
            let p = to_f64(&exact_p);
            for i in 1..=60 {
                let exact = to_f64(&majority_correct_probability_exact(i, &exact_p));
                let fast = majority_correct_probability(i, p).unwrap();
                assert!(
                    (exact - fast).abs() <= 1e-13,
                    "i={i} p={text}: {fast} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn large_sizes_stay_accurate() {
        let exact_p = parse_rational("501/1000").unwrap();
        for i in [1999, 2000] {
            let exact = to_f64(&majority_correct_probability_exact(i, &exact_p));
            let fast = majority_correct_probability(i, 0.501).unwrap();
            assert!((exact - fast).abs() <= 1e-13, "i={i}");
        }
    }

    #[test]
    fn domain_errors() {
        assert!(majority_correct_probability(3, 0.5).is_err());
        assert!(majority_correct_probability(3, 1.0).is_err());
        assert!(majority_correct_probability(0, 0.6).is_err());
    }

    proptest! {
        #[test]
        fn odd_sizes_increase_and_ties_hurt(p in 0.51f64..0.99, k in 1usize..300) {
            let odd = majority_correct_probability(2 * k + 1, p).unwrap();
            let prev_odd = majority_correct_probability(2 * k - 1, p).unwrap();
            let even = majority_correct_probability(2 * k, p).unwrap();
            prop_assert!(odd >= prev_odd - 1e-15);
            prop_assert!(odd >= even - 1e-15);
        }

        #[test]
        fn increasing_in_accuracy(p in 0.51f64..0.97, i in 1usize..200) {
            let lo = majority_correct_probability(i, p).unwrap();
            let hi = majority_correct_probability(i, p + 0.02).unwrap();
            prop_assert!(hi > lo || (hi == 1.0 && lo == 1.0));
        }

        #[test]
        fn hoeffding_lower_bound(p in 0.51f64..0.99, i in 1usize..500) {
            let bound = 1.0 - (-2.0 * i as f64 * (p - 0.5).powi(2)).exp();
            prop_assert!(bound <= majority_correct_probability(i, p).unwrap() + 1e-15);
        }
    }
}

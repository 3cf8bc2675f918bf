//! Beliefs rescaled to integer weights over a common denominator.
//!
//! Utility comparisons only need the sign of differences, so the engine works
//! with integer numerators. Weights that fit in `i64` use `i128` accumulators
//! (at most 2^16 terms); anything larger falls back to `BigInt`.

use std::ops::{AddAssign, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::belief::Belief;

pub(crate) trait Weight:
    Clone + Ord + Zero + Send + Sync + for<'a> AddAssign<&'a Self> + for<'a> SubAssign<&'a Self>
{
}

impl Weight for i128 {}
impl Weight for BigInt {}

#[derive(Clone, Debug)]
pub(crate) struct Scaled<W> {
    pub n: usize,
    /// Support vectors in encoding order.
    pub vectors: Vec<u32>,
    pub weights: Vec<W>,
}

#[derive(Clone, Debug)]
pub(crate) enum ScaledBelief {
    Small(Scaled<i128>),
    Big(Scaled<BigInt>),
}

impl ScaledBelief {
    pub fn new(belief: &Belief) -> Self {
        let mut lcm = BigInt::one();
        for (_, p) in belief.support() {
            lcm = lcm.lcm(p.denom());
        }
        let vectors: Vec<u32> = belief.support().map(|(v, _)| v.bits()).collect();
        let big: Vec<BigInt> = belief
            .support()
            .map(|(_, p)| p.numer() * (&lcm / p.denom()))
            .collect();
        match big
            .iter()
            .map(|w| w.to_i64().map(i128::from))
            .collect::<Option<Vec<i128>>>()
        {
            Some(weights) => ScaledBelief::Small(Scaled {
                n: belief.n(),
                vectors,
                weights,
            }),
            None => ScaledBelief::Big(Scaled {
                n: belief.n(),
                vectors,
                weights: big,
            }),
        }
    }

    /// Equal weights on distinct `vectors`.
    pub fn uniform(n: usize, vectors: Vec<u32>) -> Self {
        let weights = vec![1i128; vectors.len()];
        ScaledBelief::Small(Scaled {
            n,
            vectors,
            weights,
        })
    }

    /// Explicit small integer weights, e.g. the lexicographic 2^k ladder.
    pub fn from_integer_weights(n: usize, mut entries: Vec<(u32, i128)>) -> Self {
        entries.sort_unstable();
        let (vectors, weights) = entries.into_iter().unzip();
        ScaledBelief::Small(Scaled {
            n,
            vectors,
            weights,
        })
    }

    pub fn n(&self) -> usize {
        match self {
            ScaledBelief::Small(s) => s.n,
            ScaledBelief::Big(s) => s.n,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::belief::IidParameter;
    use crate::rational::parse_rational;
    use crate::scf::VotingVector;

    #[test]
    fn iid_weights_share_a_denominator() {
        let b = Belief::iid(&IidParameter::parse("1/3").unwrap(), 3).unwrap();
        let ScaledBelief::Small(s) = ScaledBelief::new(&b) else {
            panic!("expected fast path")
        };
        // (1/3)^k (2/3)^(3-k) * 27
        assert_eq!(s.weights, vec![8, 4, 4, 2, 4, 2, 2, 1]);
    }

    #[test]
    fn huge_denominators_fall_back_to_bigint() {
        let tiny = parse_rational("1/340282366920938463463374607431768211456").unwrap();
        let rest = num_rational::BigRational::one() - &tiny;
        let b = Belief::from_pmf(
            3,
            [
                (VotingVector::parse_binary("100").unwrap(), tiny),
                (VotingVector::parse_binary("010").unwrap(), rest),
            ],
        )
        .unwrap();
        assert!(matches!(ScaledBelief::new(&b), ScaledBelief::Big(_)));
    }
}

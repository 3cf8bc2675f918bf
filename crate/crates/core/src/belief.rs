//! Common beliefs: exact probability mass functions over `{0,1}^n`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational};
use crate::scf::{check_voters, full_mask, VotingVector};

/// Exact pmf over profiles. Only vectors with positive mass are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Belief {
    n: usize,
    pmf: BTreeMap<u32, BigRational>,
}

impl Belief {
    pub fn from_pmf(
        n: usize,
        entries: impl IntoIterator<Item = (VotingVector, BigRational)>,
    ) -> Result<Self> {
        check_voters(n)?;
        let mut pmf = BTreeMap::new();
        for (v, p) in entries {
            crate::error::ensure_same_n(n, v.n())?;
            if p.is_negative() {
                return Err(Error::Parameter(format!("negative probability at {v}")));
            }
            if pmf.contains_key(&v.bits()) {
                return Err(Error::Parameter(format!("duplicate entry for {v}")));
            }
            if !p.is_zero() {
                pmf.insert(v.bits(), p);
            }
        }
        let total: BigRational = pmf.values().sum();
        if !total.is_one() {
            return Err(Error::Parameter(format!(
                "probabilities sum to {}, not 1",
                format_rational(&total)
            )));
        }
        Ok(Self { n, pmf })
    }

    pub fn point_mass(v: VotingVector) -> Self {
        Self {
            n: v.n(),
            pmf: BTreeMap::from([(v.bits(), BigRational::one())]),
        }
    }

    /// Equal mass on each listed vector.
    pub fn uniform_support(vs: &[VotingVector]) -> Result<Self> {
        let first = vs
            .first()
            .ok_or_else(|| Error::Parameter("empty support".into()))?;
        let share = BigRational::new(BigInt::one(), BigInt::from(vs.len()));
        Self::from_pmf(first.n(), vs.iter().map(|v| (*v, share.clone())))
    }

    /// Weight 2^-i on the i-th vector of `order` (1-based) and 2^-(|Ω|-1)
    /// on the last, which must be the all-ones vector preceded by all-zeros.
    pub fn lexicographic(order: &[VotingVector]) -> Result<Self> {
        let first = order
            .first()
            .ok_or_else(|| Error::Parameter("empty ordering".into()))?;
        let n = first.n();
        check_voters(n)?;
        let size = 1usize << n;
        if order.len() != size {
            return Err(Error::Parameter(format!(
                "ordering has {} vectors, expected {size}",
                order.len()
            )));
        }
        let distinct: BTreeSet<u32> = order.iter().map(|v| v.bits()).collect();
        if distinct.len() != size || order.iter().any(|v| v.n() != n) {
            return Err(Error::Parameter(
                "ordering is not a permutation of all profiles".into(),
            ));
        }
        if order[size - 2].bits() != 0 || order[size - 1].bits() != full_mask(n) {
            return Err(Error::Parameter(
                "ordering must end with the all-zeros then the all-ones vector".into(),
            ));
        }
        let two = BigInt::from(2);
        let pmf = order
            .iter()
            .enumerate()
            .map(|(pos, v)| {
                let exponent = (pos + 1).min(size - 1);
                (
                    v.bits(),
                    BigRational::new(BigInt::one(), num_traits::pow(two.clone(), exponent)),
                )
            })
            .collect();
        Ok(Self { n, pmf })
    }

    /// Product of independent Bernoulli(p) votes.
    pub fn iid(p: &IidParameter, n: usize) -> Result<Self> {
        check_voters(n)?;
        let q = BigRational::one() - p.value();
        let pmf = VotingVector::all(n)
            .map(|v| {
                let ones = v.count(true);
                let mass =
                    num_traits::pow(p.value().clone(), ones) * num_traits::pow(q.clone(), n - ones);
                (v.bits(), mass)
            })
            .filter(|(_, mass)| !mass.is_zero())
            .collect();
        Ok(Self { n, pmf })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn prob(&self, v: VotingVector) -> BigRational {
        self.pmf
            .get(&v.bits())
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Vectors with positive mass, in encoding order.
    pub fn support(&self) -> impl Iterator<Item = (VotingVector, &BigRational)> + '_ {
        self.pmf
            .iter()
            .map(|(&bits, p)| (VotingVector::from_raw(self.n, bits), p))
    }

    pub fn support_len(&self) -> usize {
        self.pmf.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&BeliefJson::from(self)).expect("belief serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: BeliefJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        raw.try_into()
    }
}

/// Wire form: `{"n": 3, "pmf": {"101": "1/2", ...}}`, voter 0 leftmost.
#[derive(Serialize, Deserialize)]
pub struct BeliefJson {
    pub n: usize,
    pub pmf: BTreeMap<String, String>,
}

impl From<&Belief> for BeliefJson {
    fn from(b: &Belief) -> Self {
        let pmf = b
            .support()
            .map(|(v, p)| (v.to_binary_string(), format_rational(p)))
            .collect();
        Self { n: b.n, pmf }
    }
}

impl TryFrom<BeliefJson> for Belief {
    type Error = Error;

    fn try_from(raw: BeliefJson) -> Result<Self> {
        let entries = raw
            .pmf
            .iter()
            .map(|(k, p)| {
                let v = VotingVector::parse_binary(k)?;
                Ok((v, parse_rational(p)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Belief::from_pmf(raw.n, entries)
    }
}

impl Serialize for Belief {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BeliefJson::from(self).serialize(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    ChangeAverse,
    Unbiased,
    ChangeInclined,
}

/// Bernoulli parameter of i.i.d. voters, an exact rational in [0, 1].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IidParameter(BigRational);

impl IidParameter {
    pub fn new(p: BigRational) -> Result<Self> {
        if p.is_negative() || p > BigRational::one() {
            return Err(Error::Parameter(format!(
                "p = {} outside [0, 1]",
                format_rational(&p)
            )));
        }
        Ok(Self(p))
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(parse_rational(text)?)
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn regime(&self) -> Regime {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        match self.0.cmp(&half) {
            std::cmp::Ordering::Less => Regime::ChangeAverse,
            std::cmp::Ordering::Equal => Regime::Unbiased,
            std::cmp::Ordering::Greater => Regime::ChangeInclined,
        }
    }
}

impl std::fmt::Display for IidParameter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn v(s: &str) -> VotingVector {
        VotingVector::parse_binary(s).unwrap()
    }

    fn total(b: &Belief) -> BigRational {
        b.support().map(|(_, p)| p.clone()).sum()
    }

    #[test]
    fn point_mass_and_uniform() {
        let b = Belief::point_mass(v("101"));
        assert_eq!(b.prob(v("101")), ratio(1, 1));
        assert_eq!(b.prob(v("100")), ratio(0, 1));
        assert!(total(&b).is_one());

        let b = Belief::uniform_support(&[v("110"), v("011")]).unwrap();
        assert_eq!(b.prob(v("110")), ratio(1, 2));
        let b = Belief::uniform_support(&[v("110"), v("011"), v("000")]).unwrap();
        assert_eq!(b.prob(v("000")), ratio(1, 3));
        assert!(total(&b).is_one());

        assert!(Belief::uniform_support(&[]).is_err());
        assert!(Belief::uniform_support(&[v("110"), v("110")]).is_err());
    }

    fn default_order(n: usize) -> Vec<VotingVector> {
        let ones = VotingVector::ones(n).unwrap();
        let zeros = VotingVector::zeros(n).unwrap();
        let mut order: Vec<_> = VotingVector::all(n)
            .filter(|x| *x != ones && *x != zeros)
            .collect();
        order.push(zeros);
        order.push(ones);
        order
    }

    #[test]
    fn lexicographic_weights() {
        let order = default_order(3);
        let b = Belief::lexicographic(&order).unwrap();
        for (pos, x) in order.iter().enumerate().take(7) {
            assert_eq!(b.prob(*x), ratio(1, 1 << (pos + 1)));
        }
        assert_eq!(b.prob(order[7]), ratio(1, 128));
        assert!(total(&b).is_one());
        // each weight equals the combined weight of everything after it
        for i in 0..7 {
            let tail: BigRational = order[i + 1..].iter().map(|x| b.prob(*x)).sum();
            assert!(b.prob(order[i]) >= tail);
            assert_eq!(b.prob(order[i]), tail);
        }
    }

    #[test]
    fn lexicographic_rejects_bad_orders() {
        let mut order = default_order(3);
        order.swap(6, 7);
        assert!(Belief::lexicographic(&order).is_err());
        let mut order = default_order(3);
        order[0] = order[1];
        assert!(Belief::lexicographic(&order).is_err());
        assert!(Belief::lexicographic(&default_order(3)[..7]).is_err());
    }

    #[test]
    fn iid_masses() {
        let half = IidParameter::new(ratio(1, 2)).unwrap();
        let b = Belief::iid(&half, 3).unwrap();
        assert!(VotingVector::all(3).all(|x| b.prob(x) == ratio(1, 8)));

        let third = IidParameter::new(ratio(1, 3)).unwrap();
        assert_eq!(Belief::iid(&third, 3).unwrap().prob(v("110")), ratio(2, 27));

        let b = Belief::iid(&IidParameter::new(ratio(2, 5)).unwrap(), 3).unwrap();
        assert!(total(&b).is_one());

        let b = Belief::iid(&IidParameter::new(ratio(0, 1)).unwrap(), 3).unwrap();
        assert_eq!(b.support_len(), 1);
    }

    #[test]
    fn iid_is_exchangeable() {
        let b = Belief::iid(&IidParameter::new(ratio(2, 7)).unwrap(), 3).unwrap();
        for x in VotingVector::all(3) {
            for y in VotingVector::all(3) {
                if x.count(true) == y.count(true) {
                    assert_eq!(b.prob(x), b.prob(y));
                }
            }
        }
    }

    #[test]
    fn regimes() {
        assert_eq!(
            IidParameter::parse("1/3").unwrap().regime(),
            Regime::ChangeAverse
        );
        assert_eq!(
            IidParameter::parse("0.5").unwrap().regime(),
            Regime::Unbiased
        );
        assert_eq!(
            IidParameter::parse("2/3").unwrap().regime(),
            Regime::ChangeInclined
        );
        assert!(IidParameter::parse("3/2").is_err());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let b = Belief::iid(&IidParameter::parse("1/3").unwrap(), 3).unwrap();
        let text = b.to_json();
        assert!(text.contains("\"110\": \"2/27\""));
        assert_eq!(Belief::from_json(&text).unwrap(), b);
        assert!(Belief::from_json(r#"{"n": 3, "pmf": {"110": "1/2"}}"#).is_err());
        assert!(Belief::from_json(r#"{"n": 3, "pmf": {"110": "3/2", "000": "-1/2"}}"#).is_err());
        assert!(Belief::from_json(r#"{"n": 3, "pmf": {"10": "1/1"}}"#).is_err());
    }
}

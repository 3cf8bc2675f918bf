//! Binary social-choice functions over `n` voters.
//!
//! A preference profile is a [`VotingVector`]: bit `i` of its integer encoding
//! is voter `i`'s vote. An [`Scf`] is a truth table over all `2^n` profiles,
//! stored as a `2^n`-bit integer whose bit `k` is the outcome on profile `k`.

mod entangled;
mod named;
mod predicates;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use entangled::{classify_entangled, entangled_pairs, EntangledClass};
pub use named::NamedScf;
pub use predicates::{
    has_bounded_downward_sensitivity, has_bounded_monotonicity_violation, has_strong_duo,
    is_anonymous, is_downward_closed, is_monotone, is_never_negation_agnostic,
    respects_rejective_consensus, NecessaryConditions,
};

pub const MIN_VOTERS: usize = 3;
/// Largest voter count for which truth tables are materialized.
pub const MAX_VOTERS: usize = 16;
/// Largest voter count for which the space of all SCFs can be enumerated.
pub const MAX_ENUMERABLE_VOTERS: usize = 4;

pub(crate) fn check_voters(n: usize) -> Result<()> {
    if !(MIN_VOTERS..=MAX_VOTERS).contains(&n) {
        return Err(Error::Parameter(format!(
            "voter count {n} outside supported range {MIN_VOTERS}..={MAX_VOTERS}"
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct VotingVector {
    n: u8,
    bits: u32,
}

impl VotingVector {
    pub fn new(n: usize, bits: u32) -> Result<Self> {
        check_voters(n)?;
        if u64::from(bits) >= 1u64 << n {
            return Err(Error::Parameter(format!(
                "vector {bits} out of range for n={n}"
            )));
        }
        Ok(Self { n: n as u8, bits })
    }

    pub(crate) fn from_raw(n: usize, bits: u32) -> Self {
        debug_assert!(u64::from(bits) < 1u64 << n);
        Self { n: n as u8, bits }
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(n, 0)
    }

    pub fn ones(n: usize) -> Result<Self> {
        check_voters(n)?;
        Ok(Self::from_raw(n, full_mask(n)))
    }

    /// Vector supported exactly on `voters`.
    pub fn from_support(n: usize, voters: &[usize]) -> Result<Self> {
        check_voters(n)?;
        let mut bits = 0u32;
        for &i in voters {
            if i >= n {
                return Err(Error::Parameter(format!(
                    "voter {i} out of range for n={n}"
                )));
            }
            bits |= 1 << i;
        }
        Ok(Self::from_raw(n, bits))
    }

    pub fn n(self) -> usize {
        usize::from(self.n)
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn vote(self, voter: usize) -> bool {
        self.bits >> voter & 1 == 1
    }

    /// η(v, x): number of voters voting `x`.
    pub fn count(self, x: bool) -> usize {
        let ones = self.bits.count_ones() as usize;
        if x {
            ones
        } else {
            self.n() - ones
        }
    }

    pub fn support(self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.vote(i)).collect()
    }

    pub fn negate(self) -> Self {
        Self::from_raw(self.n(), !self.bits & full_mask(self.n()))
    }

    /// Every profile over `n` voters in encoding order.
    pub fn all(n: usize) -> impl Iterator<Item = VotingVector> {
        (0..1u32 << n).map(move |bits| VotingVector::from_raw(n, bits))
    }

    /// Binary string with voter 0 leftmost.
    pub fn to_binary_string(self) -> String {
        (0..self.n())
            .map(|i| if self.vote(i) { '1' } else { '0' })
            .collect()
    }

    pub fn parse_binary(text: &str) -> Result<Self> {
        let n = text.len();
        check_voters(n)?;
        let mut bits = 0u32;
        for (i, c) in text.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(Error::Parse(format!("invalid voting vector {text:?}"))),
            }
        }
        Ok(Self::from_raw(n, bits))
    }
}

impl fmt::Display for VotingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_binary_string())
    }
}

pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scf {
    n: usize,
    words: Vec<u64>,
}

impl Scf {
    pub fn from_fn(n: usize, rule: impl Fn(VotingVector) -> bool) -> Result<Self> {
        check_voters(n)?;
        let mut scf = Self::zeros(n);
        for v in VotingVector::all(n) {
            if rule(v) {
                scf.set_bits(v.bits, true);
            }
        }
        Ok(scf)
    }

    pub fn constant(n: usize, value: bool) -> Result<Self> {
        Self::from_fn(n, |_| value)
    }

    pub fn from_accepting(n: usize, accepted: &[VotingVector]) -> Result<Self> {
        check_voters(n)?;
        let mut scf = Self::zeros(n);
        for v in accepted {
            crate::error::ensure_same_n(n, v.n())?;
            scf.set_bits(v.bits, true);
        }
        Ok(scf)
    }

    /// SCF whose table, read as an integer, equals `index` (`n <= 6`).
    pub fn from_index(n: usize, index: u64) -> Result<Self> {
        check_voters(n)?;
        if n > 6 {
            return Err(Error::Capacity(format!(
                "integer table index needs n <= 6, got {n}"
            )));
        }
        let len = 1u32 << n;
        if len < 64 && index >> len != 0 {
            return Err(Error::Parameter(format!(
                "table {index:#x} too wide for n={n}"
            )));
        }
        Ok(Self {
            n,
            words: vec![index],
        })
    }

    pub fn index(&self) -> Option<u64> {
        (self.words.len() == 1).then(|| self.words[0])
    }

    fn zeros(n: usize) -> Self {
        let words = (1usize << n).div_ceil(64);
        Self {
            n,
            words: vec![0; words],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table_len(&self) -> usize {
        1 << self.n
    }

    pub fn eval(&self, v: VotingVector) -> bool {
        debug_assert_eq!(v.n(), self.n);
        self.eval_bits(v.bits)
    }

    pub(crate) fn eval_bits(&self, bits: u32) -> bool {
        let k = bits as usize;
        self.words[k / 64] >> (k % 64) & 1 == 1
    }

    fn set_bits(&mut self, bits: u32, value: bool) {
        let k = bits as usize;
        if value {
            self.words[k / 64] |= 1 << (k % 64);
        } else {
            self.words[k / 64] &= !(1 << (k % 64));
        }
    }

    pub fn set(&mut self, v: VotingVector, value: bool) {
        debug_assert_eq!(v.n(), self.n);
        self.set_bits(v.bits, value);
    }

    /// Copy of `self` with the outcome on `v` negated.
    pub fn with_flipped(&self, v: VotingVector) -> Self {
        let mut out = self.clone();
        out.set_bits(v.bits, !self.eval(v));
        out
    }

    pub fn accepting(&self) -> impl Iterator<Item = VotingVector> + '_ {
        VotingVector::all(self.n).filter(move |v| self.eval(*v))
    }

    pub fn is_constant_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Voters whose vote can change the outcome for some profile.
    pub fn depends_on(&self, voter: usize) -> bool {
        VotingVector::all(self.n)
            .filter(|v| !v.vote(voter))
            .any(|v| self.eval_bits(v.bits) != self.eval_bits(v.bits | 1 << voter))
    }

    /// Every SCF over `n` voters, in table-integer order.
    pub fn enumerate(n: usize) -> Result<impl Iterator<Item = Scf>> {
        check_voters(n)?;
        if n > MAX_ENUMERABLE_VOTERS {
            return Err(Error::Capacity(format!(
                "enumerating all SCFs needs n <= {MAX_ENUMERABLE_VOTERS}, got {n}"
            )));
        }
        let count = 1u64 << (1u32 << n);
        Ok((0..count).map(move |index| Scf {
            n,
            words: vec![index],
        }))
    }

    pub fn count_all(n: usize) -> Result<u64> {
        check_voters(n)?;
        if n > MAX_ENUMERABLE_VOTERS {
            return Err(Error::Capacity(format!(
                "enumerating all SCFs needs n <= {MAX_ENUMERABLE_VOTERS}, got {n}"
            )));
        }
        Ok(1u64 << (1u32 << n))
    }

    pub fn to_canonical(&self) -> String {
        format!("n={};table={}", self.n, self.table_hex())
    }

    fn table_hex(&self) -> String {
        let nibbles = (self.table_len() / 4).max(1);
        (0..nibbles)
            .rev()
            .map(|j| {
                let bit = 4 * j;
                let nibble = (self.words[bit / 64] >> (bit % 64)) & 0xf;
                char::from_digit(nibble as u32, 16).unwrap()
            })
            .collect()
    }

    pub fn parse_canonical(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected \"n=<n>;table=<hex>\", got {text:?}"));
        let (n_part, table_part) = text.trim().split_once(';').ok_or_else(bad)?;
        let n: usize = n_part
            .trim()
            .strip_prefix("n=")
            .ok_or_else(bad)?
            .parse()
            .map_err(|_| bad())?;
        let hex = table_part.trim().strip_prefix("table=").ok_or_else(bad)?;
        check_voters(n)?;
        let mut scf = Self::zeros(n);
        let digits: Vec<u32> = hex
            .chars()
            .rev()
            .map(|c| c.to_digit(16).ok_or_else(bad))
            .collect::<Result<_>>()?;
        if digits.is_empty() {
            return Err(bad());
        }
        for (j, d) in digits.into_iter().enumerate() {
            for b in 0..4 {
                if d >> b & 1 == 1 {
                    let k = 4 * j + b;
                    if k >= scf.table_len() {
                        return Err(Error::Parse(format!("table {hex} too wide for n={n}")));
                    }
                    scf.set_bits(k as u32, true);
                }
            }
        }
        Ok(scf)
    }
}

impl fmt::Display for Scf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical())
    }
}

impl fmt::Debug for Scf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scf({})", self.to_canonical())
    }
}

impl FromStr for Scf {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_canonical(s)
    }
}

impl Serialize for VotingVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_binary_string())
    }
}

impl Serialize for Scf {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_canonical())
    }
}

impl<'de> Deserialize<'de> for Scf {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Scf::parse_canonical(&text).map_err(serde::de::Error::custom)
    }
}

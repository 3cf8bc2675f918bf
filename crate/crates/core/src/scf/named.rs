use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{check_voters, Scf};
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational};

/// The social-choice functions that have names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedScf {
    Unanimity,
    SimpleMajority,
    /// Passes iff η(v,1) > q·n, with 1/2 < q <= 1.
    QualifiedMajority(BigRational),
    Dictatorship(usize),
    AntiDictatorship(usize),
    /// Strict majority within the given voter set.
    Oligarchy(Vec<usize>),
    ConsensusDuopoly(usize, usize),
    /// `OligopolyWithVeto(i, j, k)`: majority of {i, j, k}, vetoed whenever `i` votes 0.
    OligopolyWithVeto(usize, usize, usize),
    ConstantZero,
    /// Passes iff η(v,1) >= k, for k in 0..=n+1.
    Threshold(usize),
}

impl NamedScf {
    pub fn materialize(&self, n: usize) -> Result<Scf> {
        check_voters(n)?;
        let voter = |i: usize| {
            if i < n {
                Ok(i)
            } else {
                Err(Error::Parameter(format!(
                    "voter {i} out of range for n={n}"
                )))
            }
        };
        let distinct = |ids: &[usize]| {
            let mut sorted = ids.to_vec();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() == ids.len() {
                Ok(())
            } else {
                Err(Error::Parameter(format!("voters {ids:?} must be distinct")))
            }
        };
        match self {
            NamedScf::Unanimity => Scf::from_fn(n, |v| v.count(true) == n),
            NamedScf::SimpleMajority => Scf::from_fn(n, |v| v.count(true) > v.count(false)),
            NamedScf::QualifiedMajority(q) => {
                let half = BigRational::new(BigInt::one(), BigInt::from(2));
                if *q <= half || *q > BigRational::one() {
                    return Err(Error::Parameter(format!(
                        "qualified majority needs 1/2 < q <= 1, got {}",
                        format_rational(q)
                    )));
                }
                let quota = q * BigInt::from(n);
                Scf::from_fn(n, |v| {
                    BigRational::from_integer(BigInt::from(v.count(true))) > quota
                })
            }
            NamedScf::Dictatorship(i) => {
                let i = voter(*i)?;
                Scf::from_fn(n, |v| v.vote(i))
            }
            NamedScf::AntiDictatorship(i) => {
                let i = voter(*i)?;
                Scf::from_fn(n, |v| !v.vote(i))
            }
            NamedScf::Oligarchy(members) => {
                if members.is_empty() {
                    return Err(Error::Parameter(
                        "oligarchy needs at least one member".into(),
                    ));
                }
                for &i in members {
                    voter(i)?;
                }
                distinct(members)?;
                Scf::from_fn(n, |v| {
                    2 * members.iter().filter(|&&i| v.vote(i)).count() > members.len()
                })
            }
            NamedScf::ConsensusDuopoly(i, j) => {
                let (i, j) = (voter(*i)?, voter(*j)?);
                distinct(&[i, j])?;
                Scf::from_fn(n, |v| v.vote(i) && v.vote(j))
            }
            NamedScf::OligopolyWithVeto(i, j, k) => {
                let (i, j, k) = (voter(*i)?, voter(*j)?, voter(*k)?);
                distinct(&[i, j, k])?;
                Scf::from_fn(n, |v| v.vote(i) && (v.vote(j) || v.vote(k)))
            }
            NamedScf::ConstantZero => Scf::constant(n, false),
            NamedScf::Threshold(k) => {
                if *k > n + 1 {
                    return Err(Error::Parameter(format!(
                        "threshold {k} outside 0..={}",
                        n + 1
                    )));
                }
                Scf::from_fn(n, |v| v.count(true) >= *k)
            }
        }
    }

    /// All dictatorships over `n` voters.
    pub fn dictatorships(n: usize) -> Result<Vec<Scf>> {
        (0..n)
            .map(|i| NamedScf::Dictatorship(i).materialize(n))
            .collect()
    }

    pub fn anti_dictatorships(n: usize) -> Result<Vec<Scf>> {
        (0..n)
            .map(|i| NamedScf::AntiDictatorship(i).materialize(n))
            .collect()
    }

    /// Named rules over `n` voters, most specific name first.
    pub fn catalogue(n: usize) -> Vec<NamedScf> {
        let mut out = vec![NamedScf::ConstantZero];
        out.extend((0..n).map(NamedScf::Dictatorship));
        out.extend((0..n).map(NamedScf::AntiDictatorship));
        out.push(NamedScf::SimpleMajority);
        out.push(NamedScf::Unanimity);
        for i in 0..n {
            for j in i + 1..n {
                out.push(NamedScf::ConsensusDuopoly(i, j));
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in j + 1..n {
                    if i != j && i != k {
                        out.push(NamedScf::OligopolyWithVeto(i, j, k));
                    }
                }
            }
        }
        if n > 3 {
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        out.push(NamedScf::Oligarchy(vec![i, j, k]));
                    }
                }
            }
        }
        out.extend((0..=n + 1).map(NamedScf::Threshold));
        out
    }

    /// The first catalogue name whose table equals `f`; only tried for small `n`.
    pub fn identify(f: &Scf) -> Option<NamedScf> {
        if f.n() > super::MAX_ENUMERABLE_VOTERS {
            return None;
        }
        NamedScf::catalogue(f.n())
            .into_iter()
            .find(|name| name.materialize(f.n()).ok().as_ref() == Some(f))
    }
}

impl fmt::Display for NamedScf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |ids: &[usize]| {
            ids.iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            NamedScf::Unanimity => write!(f, "unanimity"),
            NamedScf::SimpleMajority => write!(f, "simple-majority"),
            NamedScf::QualifiedMajority(q) => {
                write!(f, "qualified-majority:{}", format_rational(q))
            }
            NamedScf::Dictatorship(i) => write!(f, "dictatorship:{i}"),
            NamedScf::AntiDictatorship(i) => write!(f, "anti-dictatorship:{i}"),
            NamedScf::Oligarchy(s) => write!(f, "oligarchy:{}", list(s)),
            NamedScf::ConsensusDuopoly(i, j) => write!(f, "consensus-duopoly:{i},{j}"),
            NamedScf::OligopolyWithVeto(i, j, k) => write!(f, "oligopoly-with-veto:{i},{j},{k}"),
            NamedScf::ConstantZero => write!(f, "constant-zero"),
            NamedScf::Threshold(k) => write!(f, "threshold:{k}"),
        }
    }
}

impl FromStr for NamedScf {
    type Err = Error;

    /// Parses the `name[:args]` form produced by `Display`, e.g. `oligarchy:0,1,2`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = s.trim().split_once(':').unwrap_or((s.trim(), ""));
        let ids = || -> Result<Vec<usize>> {
            args.split(',')
                .map(|a| {
                    a.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad voter list in {s:?}")))
                })
                .collect()
        };
        let arity = |want: usize| -> Result<Vec<usize>> {
            let got = ids()?;
            if got.len() == want {
                Ok(got)
            } else {
                Err(Error::Parse(format!(
                    "{name} takes {want} voter(s), got {s:?}"
                )))
            }
        };
        Ok(match name {
            "unanimity" => NamedScf::Unanimity,
            "simple-majority" => NamedScf::SimpleMajority,
            "qualified-majority" => NamedScf::QualifiedMajority(parse_rational(args)?),
            "dictatorship" => NamedScf::Dictatorship(arity(1)?[0]),
            "anti-dictatorship" => NamedScf::AntiDictatorship(arity(1)?[0]),
            "oligarchy" => NamedScf::Oligarchy(ids()?),
            "consensus-duopoly" => {
                let a = arity(2)?;
                NamedScf::ConsensusDuopoly(a[0], a[1])
            }
            "oligopoly-with-veto" => {
                let a = arity(3)?;
                NamedScf::OligopolyWithVeto(a[0], a[1], a[2])
            }
            "constant-zero" => NamedScf::ConstantZero,
            "threshold" => NamedScf::Threshold(arity(1)?[0]),
            _ => return Err(Error::Parse(format!("unknown SCF name {name:?}"))),
        })
    }
}

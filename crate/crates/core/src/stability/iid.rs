use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::belief::{Belief, IidParameter};
use crate::error::Result;
use crate::rational::ratio;
use crate::scf::{Scf, VotingVector};

use super::engine::{classify, Classification, EnumerationScope};
use super::utility::utilities;
use super::{TieBreak, Universe};

/// Voters split by utility against `2p(1-p)` and `p^2 + (1-p)^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct S123Partition {
    /// Utility below `2p(1-p)`.
    pub s1: Vec<usize>,
    /// Utility in `[2p(1-p), p^2 + (1-p)^2)`.
    pub s2: Vec<usize>,
    /// Utility at least `p^2 + (1-p)^2`.
    pub s3: Vec<usize>,
}

impl S123Partition {
    fn mask(voters: &[usize]) -> u32 {
        voters.iter().fold(0, |m, &i| m | 1 << i)
    }
}

pub fn partition_s123(f: &Scf, p: &IidParameter) -> Result<S123Partition> {
    let belief = Belief::iid(p, f.n())?;
    let p = p.value();
    let q = BigRational::one() - p;
    let low = ratio(2, 1) * p * &q;
    let high = p * p + &q * &q;
    let mut out = S123Partition {
        s1: vec![],
        s2: vec![],
        s3: vec![],
    };
    for (i, u) in utilities(f, &belief)?.into_iter().enumerate() {
        if u < low {
            out.s1.push(i);
        } else if u < high {
            out.s2.push(i);
        } else {
            out.s3.push(i);
        }
    }
    Ok(out)
}

/// Checks both structural clauses: `f` rejects every profile on which all of
/// `S1 ∪ S2` vote 1, and every profile on which all of `S2 ∪ S3` vote 0.
///
/// Only meaningful for stable rules other than dictatorships,
/// anti-dictatorships and the constant 0, which generally fail it.
pub fn check_main_structural_lemma(f: &Scf, p: &IidParameter) -> Result<bool> {
    let part = partition_s123(f, p)?;
    let s1 = S123Partition::mask(&part.s1);
    let s2 = S123Partition::mask(&part.s2);
    let s3 = S123Partition::mask(&part.s3);
    Ok(VotingVector::all(f.n()).filter(|v| f.eval(*v)).all(|v| {
        let ones = v.bits();
        let zeros = v.negate().bits();
        let (low, high) = (s1 | s2, s2 | s3);
        ones & low != low && zeros & high != high
    }))
}

/// Every SCF over `n` voters that is self-maintaining under `iid(p)`.
pub fn classify_iid(
    n: usize,
    p: &IidParameter,
    tb: TieBreak,
    scope: EnumerationScope,
) -> Result<Classification> {
    classify(n, &Belief::iid(p, n)?, tb, &Universe::AllScfs, scope)
}

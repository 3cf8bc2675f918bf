use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::belief::Belief;
use crate::error::{ensure_same_n, Error, Result};
use crate::scf::Scf;

/// Probability under `belief` that `f` agrees with voter `i`'s own vote.
pub fn utility(f: &Scf, belief: &Belief, i: usize) -> Result<BigRational> {
    ensure_same_n(f.n(), belief.n())?;
    if i >= f.n() {
        return Err(Error::Parameter(format!(
            "voter {i} out of range for n={}",
            f.n()
        )));
    }
    Ok(belief
        .support()
        .filter(|(v, _)| f.eval(*v) == v.vote(i))
        .fold(BigRational::zero(), |acc, (_, p)| acc + p))
}

pub fn utilities(f: &Scf, belief: &Belief) -> Result<Vec<BigRational>> {
    (0..f.n()).map(|i| utility(f, belief, i)).collect()
}

pub fn welfare(f: &Scf, belief: &Belief) -> Result<BigRational> {
    Ok(utilities(f, belief)?
        .into_iter()
        .fold(BigRational::zero(), |a, u| a + u))
}

pub fn nash_welfare(f: &Scf, belief: &Belief) -> Result<BigRational> {
    Ok(utilities(f, belief)?
        .into_iter()
        .fold(BigRational::one(), |a, u| a * u))
}

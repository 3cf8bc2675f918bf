use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scf::{full_mask, Scf, VotingVector};

use super::engine::find_violation;
use super::weights::ScaledBelief;
use super::{TieBreak, Universe};

/// Lexicographic orders are only enumerated where `(2^n - 2)!` stays small.
pub const MAX_LEXICOGRAPHIC_VOTERS: usize = 3;

/// Every admissible lexicographic order over `n` voters: any arrangement of
/// the mixed profiles, followed by all-zeros and then all-ones.
pub fn lexicographic_orders(n: usize) -> Result<impl Iterator<Item = Vec<VotingVector>>> {
    crate::scf::check_voters(n)?;
    if n > MAX_LEXICOGRAPHIC_VOTERS {
        return Err(Error::Capacity(format!(
            "lexicographic orders are enumerated for n <= {MAX_LEXICOGRAPHIC_VOTERS}, got {n}"
        )));
    }
    let ones = full_mask(n);
    let middle: Vec<u32> = (1..ones).collect();
    let k = middle.len();
    Ok(middle.into_iter().permutations(k).map(move |mut order| {
        order.push(0);
        order.push(ones);
        order
            .into_iter()
            .map(|b| VotingVector::from_raw(n, b))
            .collect()
    }))
}

/// How the weight of the final profile relates to the one before it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TailWeight {
    /// The last two profiles weigh the same, so every weight equals the sum
    /// of all later ones ([`Belief::lexicographic`](crate::Belief::lexicographic)).
    #[default]
    Repeated,
    /// Weights keep halving to the end, so each strictly exceeds its tail.
    Halved,
}

/// Integer weights proportional to the lexicographic belief for `order`.
fn lexicographic_weights(order: &[VotingVector], tail: TailWeight) -> ScaledBelief {
    let last = order.len() - 1;
    let exponent = |pos: usize| match tail {
        TailWeight::Repeated => last - pos.min(last - 1) - 1,
        TailWeight::Halved => last - pos,
    };
    let entries = order
        .iter()
        .enumerate()
        .map(|(pos, v)| (v.bits(), 1i128 << exponent(pos)))
        .collect();
    ScaledBelief::from_integer_weights(order[0].n(), entries)
}

/// The first lexicographic order (in enumeration order) under which `f` is
/// self-maintaining against all SCFs, if one exists.
pub fn find_lexicographic_support(f: &Scf, tb: TieBreak) -> Result<Option<Vec<VotingVector>>> {
    find_lexicographic_support_with(f, tb, TailWeight::Repeated)
}

pub fn find_lexicographic_support_with(
    f: &Scf,
    tb: TieBreak,
    tail: TailWeight,
) -> Result<Option<Vec<VotingVector>>> {
    let orders: Vec<Vec<VotingVector>> = lexicographic_orders(f.n())?.collect();
    orders
        .into_par_iter()
        .map(|order| {
            let stable = find_violation(
                f,
                &lexicographic_weights(&order, tail),
                tb,
                &Universe::AllScfs,
            )?
            .is_none();
            Ok(stable.then_some(order))
        })
        .find_map_first(|r: Result<Option<_>>| r.transpose())
        .transpose()
}

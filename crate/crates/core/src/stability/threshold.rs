use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::belief::IidParameter;
use crate::error::{Error, Result};
use crate::rational::format_rational;
use crate::scf::MIN_VOTERS;

use super::TieBreak;

/// Largest electorate for the closed-form threshold graph.
pub const MAX_THRESHOLD_VOTERS: usize = 63;

/// Transition graph over threshold rules `1..=n` under an iid belief.
///
/// Exchangeability gives every voter the same utility under a threshold rule,
/// so each motion is decided unanimously and needs no profile enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdGraph {
    pub n: usize,
    pub p: IidParameter,
    pub tie_break: TieBreak,
    /// `utilities[k - 1]` is every voter's utility under threshold `k`.
    pub utilities: Vec<BigRational>,
    /// `edges[k - 1]` lists the thresholds reachable from `k` in one motion.
    pub edges: Vec<Vec<usize>>,
}

fn binomials(m: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for j in 1..=m {
        let next = &row[j - 1] * BigInt::from(m - j + 1) / BigInt::from(j);
        row.push(next);
    }
    row
}

/// Common voter utility under threshold `k`, for `k` in `0..=n+1`.
fn threshold_utility(n: usize, k: usize, p: &BigRational) -> BigRational {
    let q = BigRational::one() - p;
    let c = binomials(n - 1);
    (0..=n).fold(BigRational::zero(), |acc, j| {
        let mass = num_traits::pow(p.clone(), j) * num_traits::pow(q.clone(), n - j);
        // profiles with j supporters where this voter agrees with the outcome
        let agree = if j >= k {
            if j >= 1 {
                c[j - 1].clone()
            } else {
                BigInt::zero()
            }
        } else if j < n {
            c[j].clone()
        } else {
            BigInt::zero()
        };
        acc + mass * BigRational::from_integer(agree)
    })
}

pub fn threshold_iid_graph(n: usize, p: &IidParameter, tb: TieBreak) -> Result<ThresholdGraph> {
    if !(MIN_VOTERS..=MAX_THRESHOLD_VOTERS).contains(&n) {
        return Err(Error::Capacity(format!(
            "threshold graphs need {MIN_VOTERS} <= n <= {MAX_THRESHOLD_VOTERS}, got {n}"
        )));
    }
    let utilities: Vec<BigRational> = (1..=n)
        .map(|k| threshold_utility(n, k, p.value()))
        .collect();
    let edges = (1..=n)
        .map(|k| {
            (1..=n)
                .filter(|&k2| k2 != k)
                .filter(|&k2| match utilities[k2 - 1].cmp(&utilities[k - 1]) {
                    std::cmp::Ordering::Greater => true,
                    std::cmp::Ordering::Equal => tb == TieBreak::Arbitrary,
                    std::cmp::Ordering::Less => false,
                })
                .collect()
        })
        .collect();
    Ok(ThresholdGraph {
        n,
        p: p.clone(),
        tie_break: tb,
        utilities,
        edges,
    })
}

impl ThresholdGraph {
    /// Thresholds with no outgoing motion.
    pub fn stable_thresholds(&self) -> Vec<usize> {
        (1..=self.n)
            .filter(|k| self.edges[k - 1].is_empty())
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph thresholds {\n");
        for k in 1..=self.n {
            let shape = if self.edges[k - 1].is_empty() {
                "doublecircle"
            } else {
                "circle"
            };
            out.push_str(&format!(
                "  {k} [label=\"threshold:{k}\", shape={shape}];\n"
            ));
        }
        for (k, out_edges) in self.edges.iter().enumerate() {
            for j in out_edges {
                out.push_str(&format!("  {} -> {j};\n", k + 1));
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "p": self.p.to_string(),
            "tie_break": self.tie_break,
            "utilities": self.utilities.iter().map(format_rational).collect::<Vec<_>>(),
            "edges": self.edges,
            "stable": self.stable_thresholds(),
        })
    }
}

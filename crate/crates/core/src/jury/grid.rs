use std::collections::HashMap;
use std::fmt::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;

use super::model::{Discrepancy, JuryModel};
use super::probability::ProbabilityTable;
use super::{JuryConfig, TieRule, LARGE_MIN, SMALL_MAX};

/// Which size classes are stable in a cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CellClass {
    pub small: bool,
    pub medium: bool,
    pub large: bool,
}

impl CellClass {
    fn of(sizes: &[usize]) -> Self {
        CellClass {
            small: sizes.iter().any(|&i| i <= SMALL_MAX),
            medium: sizes.iter().any(|&i| i > SMALL_MAX && i < LARGE_MIN),
            large: sizes.iter().any(|&i| i >= LARGE_MIN),
        }
    }

    pub fn label(&self) -> String {
        let parts: Vec<&str> = [
            (self.small, "small"),
            (self.medium, "medium"),
            (self.large, "large"),
        ]
        .into_iter()
        .filter_map(|(on, name)| on.then_some(name))
        .collect();
        if parts.is_empty() {
            "none".into()
        } else {
            parts.join("+")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridCell {
    pub lambda: f64,
    pub p: f64,
    pub n: usize,
    pub stable_sizes: Vec<usize>,
    pub class: CellClass,
    pub discrepancies: Vec<Discrepancy>,
}

impl GridCell {
    pub fn largest_committee(&self) -> Option<usize> {
        self.stable_sizes
            .iter()
            .copied()
            .filter(|&i| i >= LARGE_MIN)
            .max()
    }
}

/// Stable oligarchy sizes for every `(λ, p)` pair, in row-major order
/// (`lambdas` outer, `ps` inner).
pub fn stable_grid(
    lambdas: &[f64],
    ps: &[f64],
    n: usize,
    epsilon: f64,
    rule: TieRule,
) -> Result<Vec<GridCell>> {
    let mut tables = HashMap::new();
    for &p in ps {
        if let std::collections::hash_map::Entry::Vacant(e) = tables.entry(p.to_bits()) {
            e.insert(ProbabilityTable::new(n, p, rule)?);
        }
    }
    let cells: Vec<(f64, f64)> = lambdas
        .iter()
        .flat_map(|&l| ps.iter().map(move |&p| (l, p)))
        .collect();
    cells
        .par_iter()
        .map(|&(lambda, p)| {
            let cfg = JuryConfig::new(n, lambda, p)?
                .with_epsilon(epsilon)?
                .with_tie_rule(rule);
            let result = JuryModel::with_table(cfg, tables[&p.to_bits()].clone())?.analyze();
            Ok(GridCell {
                lambda,
                p,
                n,
                class: CellClass::of(&result.stable_sizes),
                stable_sizes: result.stable_sizes,
                discrepancies: result.discrepancies,
            })
        })
        .collect()
}

/// CSV with columns `lambda,p,n,stable_sizes,classification`.
pub fn grid_csv(cells: &[GridCell]) -> String {
    let mut out = String::from("lambda,p,n,stable_sizes,classification\n");
    for c in cells {
        let sizes: Vec<String> = c.stable_sizes.iter().map(usize::to_string).collect();
        writeln!(
            out,
            "{},{},{},{},{}",
            c.lambda,
            c.p,
            c.n,
            sizes.join(";"),
            c.class.label()
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let cells = stable_grid(&[0.1, 0.9], &[0.6], 60, 1e-12, TieRule::StrictMajority).unwrap();
        let csv = grid_csv(&cells);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "lambda,p,n,stable_sizes,classification");
        assert!(lines[1].starts_with("0.1,0.6,60,"));
        assert!(lines[2].starts_with("0.9,0.6,60,"));
        assert_eq!(lines.len(), 3);
    }

    #[test]
    fn class_labels() {
        assert_eq!(CellClass::of(&[]).label(), "none");
        assert_eq!(CellClass::of(&[1, 2, 217]).label(), "small+large");
        assert_eq!(CellClass::of(&[5]).label(), "medium");
    }

    #[test]
    fn parallel_grid_is_deterministic() {
        let a = stable_grid(
            &[0.2, 0.5, 0.8],
            &[0.6, 0.8],
            80,
            1e-12,
            TieRule::StrictMajority,
        )
        .unwrap();
        let b = stable_grid(
            &[0.2, 0.5, 0.8],
            &[0.6, 0.8],
            80,
            1e-12,
            TieRule::StrictMajority,
        )
        .unwrap();
        assert_eq!(grid_csv(&a), grid_csv(&b));
    }
}

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

use super::probability::ProbabilityTable;
use super::JuryConfig;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OligarchyProfile {
    pub i: usize,
    pub extractive: f64,
    pub participative: f64,
    pub g: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SizeStability {
    pub full_check: bool,
    pub right_maximal: bool,
    pub halving_safe: bool,
    /// Smallest proposed size whose motion passes, when one does.
    pub passing_motion: Option<usize>,
}

/// A size where the exact check and the RM/HS characterization disagree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub i: usize,
    pub full_check: bool,
    pub right_maximal: bool,
    pub halving_safe: bool,
    pub passing_motion: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JuryStabilityResult {
    pub config: JuryConfig,
    pub stable_sizes: Vec<usize>,
    pub per_size: BTreeMap<usize, SizeStability>,
    pub discrepancies: Vec<Discrepancy>,
    /// Sizes the Hoeffding screen would discard.
    pub screened_out: Vec<usize>,
}

impl JuryStabilityResult {
    /// Largest stable size that counts as a committee.
    pub fn largest_committee(&self) -> Option<usize> {
        self.stable_sizes
            .iter()
            .copied()
            .filter(|&i| i >= super::LARGE_MIN)
            .max()
    }
}

/// Utilities of every oligarchy size under one configuration.
#[derive(Clone, Debug)]
pub struct JuryModel {
    cfg: JuryConfig,
    table: ProbabilityTable,
    g: Vec<f64>,
}

impl JuryModel {
    pub fn new(cfg: JuryConfig) -> Result<Self> {
        cfg.validate()?;
        let table = ProbabilityTable::new(cfg.n, cfg.p, cfg.tie_rule)?;
        Self::with_table(cfg, table)
    }

    /// Reuses a precomputed table; it must cover `cfg.n` at `cfg.p`.
    pub fn with_table(cfg: JuryConfig, table: ProbabilityTable) -> Result<Self> {
        cfg.validate()?;
        if table.len() < cfg.n || table.p != cfg.p || table.rule != cfg.tie_rule {
            return Err(Error::Parameter(
                "probability table does not match the configuration".into(),
            ));
        }
        let mut g = vec![f64::NAN];
        g.extend((1..=cfg.n).map(|i| cfg.lambda / i as f64 + (1.0 - cfg.lambda) * table.get(i)));
        Ok(JuryModel { cfg, table, g })
    }

    pub fn config(&self) -> &JuryConfig {
        &self.cfg
    }

    fn check(&self, i: usize) -> Result<()> {
        if (1..=self.cfg.n).contains(&i) {
            Ok(())
        } else {
            Err(Error::Parameter(format!(
                "oligarchy size {i} outside 1..={}",
                self.cfg.n
            )))
        }
    }

    pub fn profile(&self, i: usize) -> Result<OligarchyProfile> {
        self.check(i)?;
        Ok(OligarchyProfile {
            i,
            extractive: 1.0 / i as f64,
            participative: self.table.get(i),
            g: self.g[i],
        })
    }

    /// Insider utility `g(i)`.
    pub fn insider_utility(&self, i: usize) -> Result<f64> {
        self.check(i)?;
        Ok(self.g[i])
    }

    /// `(i, g(i))` for every size.
    pub fn g_curve(&self) -> Vec<(usize, f64)> {
        (1..=self.cfg.n).map(|i| (i, self.g[i])).collect()
    }

    /// Members who gain more than ε from moving `i -> i2`. Insiders of both
    /// elites compare `g`; members dropped from the elite keep only the
    /// participative part of the new rule.
    fn supporters(&self, i: usize, i2: usize) -> usize {
        let eps = self.cfg.epsilon;
        let stay = if self.g[i2] > self.g[i] + eps {
            i.min(i2)
        } else {
            0
        };
        let dropped = if i2 < i && (1.0 - self.cfg.lambda) * self.table.get(i2) > self.g[i] + eps {
            i - i2
        } else {
            0
        };
        stay + dropped
    }

    /// Whether the elite of `O_i` adopts `O_{i2}` by strict majority.
    pub fn passes_motion(&self, i: usize, i2: usize) -> Result<bool> {
        self.check(i)?;
        self.check(i2)?;
        if i == i2 {
            return Err(Error::Parameter(format!("motion from {i} to itself")));
        }
        Ok(2 * self.supporters(i, i2) > i)
    }

    pub(crate) fn passes_unchecked(&self, i: usize, i2: usize) -> bool {
        i != i2 && 2 * self.supporters(i, i2) > i
    }

    pub fn is_stable(&self, i: usize) -> Result<SizeStability> {
        self.check(i)?;
        let eps = self.cfg.epsilon;
        let passing_motion = (1..=self.cfg.n).find(|&i2| self.passes_unchecked(i, i2));
        let right_maximal = (i + 1..=self.cfg.n).all(|j| self.g[i] >= self.g[j] - eps);
        let halving_safe = (i / 2 + 1..i).all(|j| self.g[i] >= self.g[j] - eps);
        Ok(SizeStability {
            full_check: passing_motion.is_none(),
            right_maximal,
            halving_safe,
            passing_motion,
        })
    }

    /// `λ/i2 + (1-λ)(1 - exp(-2·i2·(p - 1/2)^2))`, a lower bound on `g(i2)`.
    pub fn hoeffding_bound(&self, i2: usize) -> f64 {
        let d = self.cfg.p - 0.5;
        let i2 = i2 as f64;
        self.cfg.lambda / i2 + (1.0 - self.cfg.lambda) * (1.0 - (-2.0 * i2 * d * d).exp())
    }

    /// True when a cheap necessary condition already rules `i` out: even the
    /// best case `λ/i + (1-λ)` loses to the bound at `⌈(i+1)/2⌉` or `2i-1`.
    pub fn hoeffding_discards(&self, i: usize) -> bool {
        let ceiling = self.cfg.lambda / i as f64 + (1.0 - self.cfg.lambda) + self.cfg.epsilon;
        [(i + 1).div_ceil(2), 2 * i - 1]
            .into_iter()
            .filter(|&j| j != i && (1..=self.cfg.n).contains(&j))
            .any(|j| ceiling < self.hoeffding_bound(j))
    }

    pub fn analyze(&self) -> JuryStabilityResult {
        let mut per_size = BTreeMap::new();
        let mut stable_sizes = vec![];
        let mut discrepancies = vec![];
        let mut screened_out = vec![];
        for i in 1..=self.cfg.n {
            let s = self.is_stable(i).expect("size in range");
            if s.full_check {
                stable_sizes.push(i);
            }
            if s.full_check != (s.right_maximal && s.halving_safe) {
                discrepancies.push(Discrepancy {
                    i,
                    full_check: s.full_check,
                    right_maximal: s.right_maximal,
                    halving_safe: s.halving_safe,
                    passing_motion: s.passing_motion,
                });
            }
            if self.hoeffding_discards(i) {
                screened_out.push(i);
            }
            per_size.insert(i, s);
        }
        JuryStabilityResult {
            config: self.cfg,
            stable_sizes,
            per_size,
            discrepancies,
            screened_out,
        }
    }
}

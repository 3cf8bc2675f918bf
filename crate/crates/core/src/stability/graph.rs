use std::collections::VecDeque;
use std::fmt::Write;

use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::belief::Belief;
use crate::error::{Error, Result};
use crate::rational::format_rational;
use crate::scf::{NamedScf, Scf};

use super::engine::motion_passes;
use super::utility::utilities;
use super::weights::ScaledBelief;
use super::{TieBreak, Universe, UniverseKind};

/// Replacement dynamics: an edge `f -> g` whenever the motion to adopt `g`
/// can pass under `f`.
#[derive(Clone, Debug)]
pub struct TransitionGraph {
    pub n: usize,
    pub tie_break: TieBreak,
    pub universe: UniverseKind,
    pub nodes: Vec<Scf>,
    pub labels: Vec<Option<NamedScf>>,
    /// Sorted successor indices per node.
    pub edges: Vec<Vec<usize>>,
    pub utilities: Vec<Vec<BigRational>>,
}

pub fn transition_graph(
    belief: &Belief,
    tb: TieBreak,
    universe: &Universe,
) -> Result<TransitionGraph> {
    let n = belief.n();
    if matches!(universe, Universe::AllScfs) && n > 3 {
        return Err(Error::Capacity(format!(
            "the all-SCF transition graph is limited to n=3, got {n}"
        )));
    }
    let nodes = universe.members(n)?;
    let scaled = ScaledBelief::new(belief);
    let edges: Vec<Vec<usize>> = nodes
        .par_iter()
        .map(|f| {
            nodes
                .iter()
                .enumerate()
                .filter(|(_, g)| *g != f && motion_passes(f, g, &scaled, tb).is_some())
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    let utilities = nodes
        .par_iter()
        .map(|f| utilities(f, belief))
        .collect::<Result<_>>()?;
    let labels = nodes.iter().map(NamedScf::identify).collect();
    Ok(TransitionGraph {
        n,
        tie_break: tb,
        universe: universe.kind(),
        nodes,
        labels,
        edges,
        utilities,
    })
}

impl TransitionGraph {
    pub fn index_of(&self, f: &Scf) -> Option<usize> {
        self.nodes.iter().position(|g| g == f)
    }

    /// Nodes with no outgoing edge: the self-maintaining rules.
    pub fn sinks(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&i| self.edges[i].is_empty())
            .collect()
    }

    /// For every node, whether some node in `targets` is reachable from it.
    pub fn can_reach(&self, targets: &[usize]) -> Vec<bool> {
        let mut reverse = vec![vec![]; self.nodes.len()];
        for (u, out) in self.edges.iter().enumerate() {
            for &v in out {
                reverse[v].push(u);
            }
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut queue: VecDeque<usize> = targets.iter().copied().collect();
        for &t in targets {
            seen[t] = true;
        }
        while let Some(v) = queue.pop_front() {
            for &u in &reverse[v] {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen
    }

    fn label(&self, i: usize) -> String {
        self.labels[i]
            .as_ref()
            .map(ToString::to_string)
            .unwrap_or_default()
    }

    pub fn welfare(&self, i: usize) -> BigRational {
        self.utilities[i]
            .iter()
            .fold(BigRational::from_integer(0.into()), |a, u| a + u)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph transitions {\n");
        for (i, f) in self.nodes.iter().enumerate() {
            let shape = if self.edges[i].is_empty() {
                "doublecircle"
            } else {
                "circle"
            };
            let name = match self.label(i) {
                l if l.is_empty() => f.to_canonical(),
                l => format!("{l}\\n{f}"),
            };
            writeln!(out, "  {i} [label=\"{name}\", shape={shape}];").unwrap();
        }
        for (i, out_edges) in self.edges.iter().enumerate() {
            for j in out_edges {
                writeln!(out, "  {i} -> {j};").unwrap();
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        let nodes: Vec<Value> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, f)| {
                json!({
                    "scf": f.to_canonical(),
                    "label": self.labels[i].as_ref().map(ToString::to_string),
                    "stable": self.edges[i].is_empty(),
                    "utilities": self.utilities[i].iter().map(format_rational).collect::<Vec<_>>(),
                    "welfare": format_rational(&self.welfare(i)),
                })
            })
            .collect();
        json!({
            "n": self.n,
            "tie_break": self.tie_break,
            "universe": self.universe,
            "nodes": nodes,
            "adjacency": self.edges,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::belief::IidParameter;

    fn iid(p: &str, n: usize) -> Belief {
        Belief::iid(&IidParameter::parse(p).unwrap(), n).unwrap()
    }

    #[test]
    fn small_threshold_graph() {
        let g = transition_graph(
            &iid("1/2", 5),
            TieBreak::StatusQuoBias,
            &Universe::Thresholds,
        )
        .unwrap();
        let sinks: Vec<_> = g.sinks().into_iter().map(|i| g.nodes[i].clone()).collect();
        assert_eq!(
            sinks,
            vec![NamedScf::SimpleMajority.materialize(5).unwrap()]
        );
        assert!(g.can_reach(&g.sinks()).into_iter().all(|r| r));
        let dot = g.to_dot();
        assert!(dot.starts_with("digraph") && dot.contains("doublecircle"));
        assert_eq!(g.to_json()["nodes"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn all_scf_graph_is_capped() {
        let err = transition_graph(&iid("1/2", 4), TieBreak::Arbitrary, &Universe::AllScfs);
        assert!(matches!(err, Err(Error::Capacity(_))));
    }

    #[test]
    fn reverse_reachability() {
        let g = TransitionGraph {
            n: 3,
            tie_break: TieBreak::Arbitrary,
            universe: UniverseKind::Explicit,
            nodes: (0..4).map(|k| Scf::from_index(3, k).unwrap()).collect(),
            labels: vec![None; 4],
            edges: vec![vec![1], vec![2], vec![], vec![3]],
            utilities: vec![vec![]; 4],
        };
        assert_eq!(g.can_reach(&[2]), vec![true, true, true, false]);
        assert_eq!(g.sinks(), vec![2]);
    }
}

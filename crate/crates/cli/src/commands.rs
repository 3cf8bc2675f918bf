use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use constlab::jury::{self, Dynamics, JuryConfig, JuryModel, TieRule};
use constlab::rational::{parse_range, parse_rational, to_f64};
use constlab::stability::{
    classify_candidates, pessimistic_refute, threshold_iid_graph, transition_graph,
    EnumerationScope, StabilityReport,
};
use constlab::{Belief, IidParameter, NamedScf, Scf, TieBreak, Universe, VotingVector};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rayon::prelude::*;
use serde_json::json;

use crate::args::{
    BeliefArgs, ClassifyArgs, Command, GraphArgs, JuryCommon, JuryDynamicsArgs, JuryGridArgs,
    RefuteArgs, VerifyArgs,
};
use crate::theorems::{self, CRITERIA};
use crate::{Cli, EXIT_FINDING, EXIT_OK};

pub(crate) fn dispatch(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::VerifyTheorems(a) => verify(a),
        Command::Classify(a) => classify(a, cli.seed),
        Command::Refute(a) => refute(a, cli.seed),
        Command::Graph(a) => graph(a),
        Command::JuryGrid(a) => jury_grid(a),
        Command::JuryDynamics(a) => jury_dynamics(a),
    }
}

fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize")
}

fn load_belief(args: &BeliefArgs, n: usize) -> Result<Belief> {
    let belief = if let Some(p) = &args.iid {
        Belief::iid(&IidParameter::parse(p)?, n)?
    } else if let Some(path) = &args.belief {
        let text =
            fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        Belief::from_json(&text)?
    } else if let Some(path) = &args.lexicographic {
        let text =
            fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        let order = text
            .lines()
            .filter(|l| !l.trim_start().starts_with('#'))
            .flat_map(|l| l.split(|c: char| c == ',' || c.is_whitespace()))
            .filter(|t| !t.is_empty())
            .map(VotingVector::parse_binary)
            .collect::<constlab::Result<Vec<_>>>()?;
        Belief::lexicographic(&order)?
    } else {
        bail!("a belief is required: pass --iid, --belief or --lexicographic");
    };
    if belief.n() != n {
        bail!("belief is over {} voters but --n is {n}", belief.n());
    }
    Ok(belief)
}

fn verify(a: &VerifyArgs) -> Result<u8> {
    if a.n != 3 {
        bail!("the exhaustive checks are defined at n=3, got --n {}", a.n);
    }
    let ids: Vec<u8> = CRITERIA
        .iter()
        .map(|(id, _)| *id)
        .filter(|id| theorems::in_suite(*id, a.suite))
        .collect();
    let mut failed = 0;
    for id in ids {
        let check = theorems::run_check(id, a.jury_n);
        println!("{}", check.line());
        failed += usize::from(!check.passed);
    }
    println!("{failed} failed");
    Ok(if failed == 0 { EXIT_OK } else { EXIT_FINDING })
}

fn shuffled<T>(mut items: Vec<T>, seed: u64) -> Vec<T> {
    items.shuffle(&mut StdRng::seed_from_u64(seed));
    items
}

fn classify(a: &ClassifyArgs, seed: u64) -> Result<u8> {
    let tb: TieBreak = a.tie.parse()?;
    let universe: Universe = a.universe.parse()?;
    let scope = if a.extended {
        EnumerationScope::Extended
    } else {
        EnumerationScope::Standard
    };
    scope.check(a.n, &universe)?;
    let belief = load_belief(&a.belief, a.n)?;
    let candidates = shuffled(universe.members(a.n)?, seed);
    let c = classify_candidates(&belief, tb, &universe, candidates)?;
    emit(
        &StabilityReport::new(&c, &belief)?.to_json(),
        a.out.as_deref(),
    )?;
    Ok(EXIT_OK)
}

fn parse_scf(text: &str, n: usize) -> Result<Scf> {
    let f = if text.starts_with("n=") {
        text.parse::<Scf>()?
    } else {
        text.parse::<NamedScf>()?.materialize(n)?
    };
    if f.n() != n {
        bail!("{text} is over {} voters but --n is {n}", f.n());
    }
    Ok(f)
}

fn refute(a: &RefuteArgs, seed: u64) -> Result<u8> {
    let tb: TieBreak = a.tie.parse()?;
    let universe: Universe = a.universe.parse()?;
    let record = |f: &Scf| -> Result<serde_json::Value> {
        let r = pessimistic_refute(f, tb, a.budget, &universe)?;
        Ok(json!({
            "scf": f,
            "name": NamedScf::identify(f).map(|l| l.to_string()),
            "result": r,
        }))
    };
    let header =
        json!({"n": a.n, "tie_break": tb, "budget": a.budget, "universe": universe.to_string()});
    let out = if a.all {
        EnumerationScope::Standard.check(a.n, &Universe::AllScfs)?;
        let fs = shuffled(Scf::enumerate(a.n)?.collect::<Vec<_>>(), seed);
        let mut rows: Vec<(Scf, serde_json::Value)> = fs
            .par_iter()
            .map(|f| record(f).map(|v| (f.clone(), v)))
            .collect::<Result<_>>()?;
        rows.sort_by(|x, y| x.0.cmp(&y.0));
        let refuted = rows
            .iter()
            .filter(|(_, v)| v["result"]["status"] == "refuted")
            .count();
        json!({"config": header, "refuted": refuted, "rules": rows.into_iter().map(|(_, v)| v).collect::<Vec<_>>()})
    } else {
        let text = a.scf.as_deref().expect("clap requires --scf without --all");
        json!({"config": header, "rules": [record(&parse_scf(text, a.n)?)?]})
    };
    emit(&pretty(&out), a.out.as_deref())?;
    Ok(EXIT_OK)
}

fn graph(a: &GraphArgs) -> Result<u8> {
    let tb: TieBreak = a.tie.parse()?;
    let universe: Universe = a.universe.parse()?;
    let (dot, json) = match (&universe, &a.belief.iid) {
        (Universe::Thresholds, Some(p)) => {
            let g = threshold_iid_graph(a.n, &IidParameter::parse(p)?, tb)?;
            (g.to_dot(), g.to_json())
        }
        _ => {
            let belief = load_belief(&a.belief, a.n)?;
            let g = transition_graph(&belief, tb, &universe)?;
            (g.to_dot(), g.to_json())
        }
    };
    if a.dot.is_none() && a.json.is_none() {
        emit(&dot, None)?;
    }
    if let Some(path) = &a.dot {
        write_file(path, &dot)?;
    }
    if let Some(path) = &a.json {
        write_file(path, &pretty(&json))?;
    }
    Ok(EXIT_OK)
}

fn tie_rule(c: &JuryCommon) -> TieRule {
    if c.half_credit_ties {
        TieRule::HalfCredit
    } else {
        TieRule::StrictMajority
    }
}

fn jury_grid(a: &JuryGridArgs) -> Result<u8> {
    let lambdas: Vec<f64> = parse_range(&a.lambdas)?.iter().map(to_f64).collect();
    let ps: Vec<f64> = parse_range(&a.ps)?.iter().map(to_f64).collect();
    let cells = jury::stable_grid(
        &lambdas,
        &ps,
        a.common.n,
        a.common.epsilon,
        tie_rule(&a.common),
    )?;
    let csv = jury::grid_csv(&cells);
    if a.csv.is_none() && a.svg.is_none() && a.json.is_none() {
        emit(csv.trim_end(), None)?;
    }
    if let Some(path) = &a.csv {
        write_file(path, &csv)?;
    }
    if let Some(path) = &a.svg {
        write_file(path, &jury::grid_svg(&cells))?;
    }
    if let Some(path) = &a.json {
        write_file(path, &pretty(&serde_json::to_value(&cells)?))?;
    }
    let flagged: Vec<_> = cells
        .iter()
        .filter(|c| !c.discrepancies.is_empty())
        .collect();
    for c in &flagged {
        eprintln!(
            "discrepancy at lambda={} p={}: {:?}",
            c.lambda, c.p, c.discrepancies
        );
    }
    Ok(if flagged.is_empty() {
        EXIT_OK
    } else {
        EXIT_FINDING
    })
}

fn jury_dynamics(a: &JuryDynamicsArgs) -> Result<u8> {
    let lambda = to_f64(&parse_rational(&a.lambda)?);
    let p = to_f64(&parse_rational(&a.p)?);
    let cfg = JuryConfig::new(a.common.n, lambda, p)?
        .with_epsilon(a.common.epsilon)?
        .with_tie_rule(tie_rule(&a.common));
    let d = Dynamics::new(&JuryModel::new(cfg)?);
    let json = pretty(&d.to_json());
    if a.json.is_none() && a.svg.is_none() {
        emit(&json, None)?;
    }
    if let Some(path) = &a.json {
        write_file(path, &json)?;
    }
    if let Some(path) = &a.svg {
        write_file(path, &jury::dynamics_svg(&d))?;
    }
    Ok(EXIT_OK)
}

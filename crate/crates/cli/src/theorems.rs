//! Machine checks of the stability results (exhaustive at three voters) and
//! of the oligarchy model's reference numbers.

use constlab::belief::{Belief, IidParameter};
use constlab::jury::{self, JuryConfig, JuryModel, TieRule};
use constlab::rational::{parse_rational, to_f64};
use constlab::scf::{is_never_negation_agnostic, NecessaryConditions};
use constlab::stability::{
    self, best_response_equilibrium, classify_iid, find_lexicographic_support_with, nash_welfare,
    pessimistic_refute, transition_graph, utilities, welfare, EnumerationScope, TailWeight,
};
use constlab::{NamedScf, Result, Scf, TieBreak, Universe, VotingVector};
use num_rational::BigRational;
use rayon::prelude::*;

use crate::args::Suite;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        format!("[{status}] {:>2} {}: {}", self.id, self.name, self.detail)
    }
}

pub const CRITERIA: [(u8, &str); 14] = [
    (1, "unbiased classification"),
    (2, "paths to dictatorship"),
    (3, "optimistic characterization"),
    (4, "pessimistic arbitrary collapse"),
    (5, "pessimistic sqb survivors"),
    (6, "biased iid welfare bound"),
    (7, "consensus duopoly"),
    (8, "threshold universe"),
    (9, "equilibrium rule"),
    (10, "jury corner cases"),
    (11, "jury grid shape"),
    (12, "committee point"),
    (13, "numeric honesty"),
    (14, "rm/hs equivalence audit"),
];

pub fn in_suite(id: u8, suite: Suite) -> bool {
    match suite {
        Suite::All => true,
        Suite::Stability => id <= 9,
        Suite::Jury => id >= 10,
    }
}

/// Electorate used by the grid-based checks.
pub const DEFAULT_JURY_N: usize = 500;

pub fn run_check(id: u8, jury_n: usize) -> Check {
    let name = CRITERIA
        .iter()
        .find(|(k, _)| *k == id)
        .map(|(_, name)| *name)
        .unwrap_or("unknown");
    let outcome = match id {
        1 => unbiased_classification(),
        2 => paths_to_dictatorship(),
        3 => optimistic_characterization(),
        4 => pessimistic_arbitrary(),
        5 => pessimistic_sqb(),
        6 => biased_welfare(),
        7 => consensus_duopoly(),
        8 => threshold_universe(),
        9 => equilibrium(),
        10 => jury_corners(&[51, jury_n]),
        11 => grid_shape(jury_n),
        12 => committee_point(&[400, jury_n.max(400)]),
        13 => numeric_honesty(),
        14 => equivalence_audit(jury_n),
        _ => Ok((false, format!("no check numbered {id}"))),
    };
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    Check {
        id,
        name,
        passed,
        detail,
    }
}

type Outcome = Result<(bool, String)>;

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

fn named(name: &str, n: usize) -> Scf {
    name.parse::<NamedScf>()
        .and_then(|s| s.materialize(n))
        .expect("catalogue name")
}

fn iid(p: &str) -> IidParameter {
    IidParameter::parse(p).expect("grid parameter")
}

fn tenths() -> Vec<IidParameter> {
    (1..=9)
        .map(|k| IidParameter::new(ratio(k, 10)).expect("in range"))
        .collect()
}

fn scf_list(fs: &[Scf]) -> String {
    fs.iter()
        .map(|f| NamedScf::identify(f).map_or_else(|| f.to_canonical(), |l| l.to_string()))
        .collect::<Vec<_>>()
        .join(", ")
}

fn unbiased_classification() -> Outcome {
    let c = classify_iid(
        3,
        &iid("1/2"),
        TieBreak::Arbitrary,
        EnumerationScope::Standard,
    )?;
    let mut want = vec![Scf::constant(3, false)?];
    want.extend(NamedScf::dictatorships(3)?);
    want.extend(NamedScf::anti_dictatorships(3)?);
    want.sort();
    Ok((
        c.stable == want,
        format!("stable set {{{}}}", scf_list(&c.stable)),
    ))
}

fn paths_to_dictatorship() -> Outcome {
    let b = Belief::iid(&iid("1/2"), 3)?;
    let g = transition_graph(&b, TieBreak::Arbitrary, &Universe::AllScfs)?;
    let dicts: Vec<usize> = NamedScf::dictatorships(3)?
        .iter()
        .filter_map(|d| g.index_of(d))
        .collect();
    let sinks = g.sinks();
    let reach = g.can_reach(&dicts);
    let stranded: Vec<Scf> = (0..g.nodes.len())
        .filter(|i| !sinks.contains(i) && !reach[*i])
        .map(|i| g.nodes[i].clone())
        .collect();
    let ok = sinks.len() == 7 && dicts.len() == 3 && stranded.is_empty();
    Ok((
        ok,
        format!(
            "{} nodes, {} sinks, {} non-sinks without a path",
            g.nodes.len(),
            sinks.len(),
            stranded.len()
        ),
    ))
}

fn lexicographic_mismatches(tail: TailWeight) -> Result<usize> {
    let fs: Vec<Scf> = Scf::enumerate(3)?.collect();
    let flags = fs
        .par_iter()
        .map(|f| {
            let found = find_lexicographic_support_with(f, TieBreak::Arbitrary, tail)?.is_some();
            Ok(found != is_never_negation_agnostic(f))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(flags.into_iter().filter(|m| *m).count())
}

fn optimistic_characterization() -> Outcome {
    let supported = Scf::enumerate(3)?
        .filter(is_never_negation_agnostic)
        .count();
    let mismatches = lexicographic_mismatches(TailWeight::Repeated)?;
    if mismatches == 0 {
        return Ok((
            true,
            format!("{supported}/256 never negation-agnostic, each with a supporting order"),
        ));
    }
    let halved = lexicographic_mismatches(TailWeight::Halved)?;
    Ok((
        false,
        format!(
            "{supported}/256 never negation-agnostic; {mismatches} have no supporting order \
             (with strictly halving weights: {halved} mismatches)"
        ),
    ))
}

fn pessimistic_arbitrary() -> Outcome {
    let refuted = Scf::enumerate(3)?
        .skip(1)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|f| {
            pessimistic_refute(f, TieBreak::Arbitrary, 1, &Universe::AllScfs)
                .map(|r| r.is_refuted())
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|r| *r)
        .count();
    Ok((
        refuted == 255,
        format!("{refuted}/255 non-constant rules refuted by a point mass"),
    ))
}

fn gap_example() -> Scf {
    let v = |s: &str| VotingVector::parse_binary(s).expect("literal");
    Scf::from_accepting(3, &[v("110"), v("100")]).expect("three voters")
}

fn pessimistic_sqb() -> Outcome {
    let cases = [
        ("3-oligopoly", named("oligarchy:0,1,2", 3)),
        ("consensus-duopoly", named("consensus-duopoly:0,1", 3)),
        ("oligopoly-with-veto", named("oligopoly-with-veto:0,1,2", 3)),
        ("gap example", gap_example()),
    ];
    let mut failures = vec![];
    for (label, f) in &cases {
        let survived =
            !pessimistic_refute(f, TieBreak::StatusQuoBias, 3, &Universe::AllScfs)?.is_refuted();
        let conditions = NecessaryConditions::evaluate(f).all();
        if !survived || !conditions {
            failures.push(format!(
                "{label} (survived={survived}, conditions={conditions})"
            ));
        }
    }
    let detail = if failures.is_empty() {
        "all four survive budget 3 and meet the six conditions".into()
    } else {
        failures.join("; ")
    };
    Ok((failures.is_empty(), detail))
}

fn dictatorship_welfare(p: &IidParameter) -> Result<(BigRational, BigRational)> {
    let b = Belief::iid(p, 3)?;
    let d = named("dictatorship:0", 3);
    Ok((welfare(&d, &b)?, nash_welfare(&d, &b)?))
}

fn biased_welfare() -> Outcome {
    let mut violations = vec![];
    let mut family_seen = vec![];
    for p in tenths().into_iter().filter(|p| *p.value() != ratio(1, 2)) {
        let b = Belief::iid(&p, 3)?;
        let (sw_d, nw_d) = dictatorship_welfare(&p)?;
        let c = classify_iid(3, &p, TieBreak::Arbitrary, EnumerationScope::Standard)?;
        let pv = p.value().clone();
        let one = ratio(1, 1);
        let q = &one - &pv;
        let mut family = vec![&q * &q, &q * (&pv + &pv * &pv + &q * &q), &q * (&one + &pv)];
        family.sort();
        for f in c.stable.iter().filter(|f| !f.is_constant_zero()) {
            if welfare(f, &b)? > sw_d || nash_welfare(f, &b)? > nw_d {
                violations.push(format!("{f} at p={p}"));
            }
            let mut u = utilities(f, &b)?;
            u.sort();
            if u == family {
                family_seen.push(p.to_string());
            }
        }
    }
    family_seen.dedup();
    let ok = violations.is_empty() && !family_seen.is_empty();
    Ok((
        ok,
        format!(
            "{} welfare violations; case family stable at p in {{{}}}",
            violations.len(),
            family_seen.join(", ")
        ),
    ))
}

fn consensus_duopoly() -> Outcome {
    let duo = named("consensus-duopoly:0,1", 3);
    let mut problems = vec![];
    for p in tenths() {
        let b = Belief::iid(&p, 3)?;
        if !stability::is_self_maintaining(&duo, &b, TieBreak::StatusQuoBias, &Universe::AllScfs)?
            .stable
        {
            problems.push(format!("unstable at p={p}"));
        }
        if *p.value() <= ratio(1, 2) {
            let (sw_d, nw_d) = dictatorship_welfare(&p)?;
            if welfare(&duo, &b)? < sw_d || nash_welfare(&duo, &b)? < nw_d {
                problems.push(format!("dominated at p={p}"));
            }
        }
    }
    let detail = if problems.is_empty() {
        "stable at all nine p; welfare dominance for p <= 1/2".into()
    } else {
        problems.join("; ")
    };
    Ok((problems.is_empty(), detail))
}

fn threshold_universe() -> Outcome {
    let mut problems = vec![];
    for n in [3, 5, 7] {
        let sm = named("simple-majority", n);
        for p in ["1/3", "1/2", "2/3"] {
            let b = Belief::iid(&iid(p), n)?;
            let c = stability::classify(
                n,
                &b,
                TieBreak::StatusQuoBias,
                &Universe::Thresholds,
                EnumerationScope::Standard,
            )?;
            if c.stable != vec![sm.clone()] {
                problems.push(format!("n={n} p={p}: stable {{{}}}", scf_list(&c.stable)));
            }
        }
        let refuted = pessimistic_refute(&sm, TieBreak::StatusQuoBias, 3, &Universe::Thresholds)?;
        let expect_refuted = n > 3;
        let three_vector = match &refuted {
            stability::Refutation::Refuted { belief, .. } => belief.support_len() == 3,
            _ => false,
        };
        if refuted.is_refuted() != expect_refuted || (expect_refuted && !three_vector) {
            problems.push(format!(
                "n={n}: pessimistic outcome {}",
                if refuted.is_refuted() {
                    "refuted"
                } else {
                    "not refuted"
                }
            ));
        }
    }
    let detail = if problems.is_empty() {
        "majority unique at n=3,5,7; survives pessimistic at 3, refuted by three vectors at 5 and 7"
            .into()
    } else {
        problems.join("; ")
    };
    Ok((problems.is_empty(), detail))
}

fn equilibrium() -> Outcome {
    let mut ok = true;
    for i in 0..3 {
        let d = named(&format!("dictatorship:{i}"), 3);
        let a = named(&format!("anti-dictatorship:{i}"), 3);
        ok &= best_response_equilibrium(&a).as_ref() == Some(&d);
        ok &= best_response_equilibrium(&d).as_ref() == Some(&d);
    }
    Ok((
        ok,
        "anti-dictatorship and dictatorship both map to dictatorship".into(),
    ))
}

fn stable_sizes(n: usize, lambda: f64, p: f64) -> Result<Vec<usize>> {
    Ok(JuryModel::new(JuryConfig::new(n, lambda, p)?)?
        .analyze()
        .stable_sizes)
}

/// Accuracy at which the corner cases are checked; higher accuracies push
/// `P(i)` within ε of 1 for large committees, where the check is vacuous.
pub const CORNER_ACCURACY: f64 = 0.6;

fn jury_corners(ns: &[usize]) -> Outcome {
    let mut problems = vec![];
    for &n in ns {
        let extractive = stable_sizes(n, 1.0, CORNER_ACCURACY)?;
        if extractive != vec![1, 2] {
            problems.push(format!("lambda=1 n={n}: {extractive:?}"));
        }
        let participative = stable_sizes(n, 0.0, CORNER_ACCURACY)?;
        if participative != vec![n] {
            problems.push(format!(
                "lambda=0 n={n}: {participative:?} instead of [{n}]"
            ));
        }
    }
    let detail = if problems.is_empty() {
        format!("exact at n in {ns:?}")
    } else {
        problems.join("; ")
    };
    Ok((problems.is_empty(), detail))
}

pub fn reference_grid() -> Result<(Vec<f64>, Vec<f64>)> {
    let lambdas = constlab::rational::parse_range("0.1:0.9:0.1")?
        .iter()
        .map(to_f64)
        .collect();
    let ps = constlab::rational::parse_range("0.6:0.95:0.05")?
        .iter()
        .map(to_f64)
        .collect();
    Ok((lambdas, ps))
}

fn grid_shape(n: usize) -> Outcome {
    let (lambdas, ps) = reference_grid()?;
    let cells = jury::stable_grid(
        &lambdas,
        &ps,
        n,
        jury::DEFAULT_EPSILON,
        TieRule::StrictMajority,
    )?;
    let size = |li: usize, pi: usize| cells[li * ps.len() + pi].largest_committee().unwrap_or(0);
    let mut problems = vec![];
    for li in 0..lambdas.len() {
        for pi in 0..ps.len() {
            if li + 1 < lambdas.len() && size(li + 1, pi) > size(li, pi) {
                problems.push(format!("rises in lambda at ({}, {})", lambdas[li], ps[pi]));
            }
            if pi + 1 < ps.len() && size(li, pi + 1) > size(li, pi) {
                problems.push(format!("rises in p at ({}, {})", lambdas[li], ps[pi]));
            }
        }
    }
    let corner = &cells[(lambdas.len() - 1) * ps.len()];
    if corner.largest_committee().is_some() {
        problems.push(format!(
            "committee stable at (0.9, 0.6): {:?}",
            corner.stable_sizes
        ));
    }
    let detail = if problems.is_empty() {
        format!("{} cells monotone; no committee at (0.9, 0.6)", cells.len())
    } else {
        problems.join("; ")
    };
    Ok((problems.is_empty(), detail))
}

fn committee_point(ns: &[usize]) -> Outcome {
    let mut problems = vec![];
    let mut found = vec![];
    for &n in ns {
        let model = JuryModel::new(JuryConfig::new(n, 0.6, 0.6)?)?;
        let largest = model.analyze().largest_committee();
        found.push(format!("n={n}: {largest:?}"));
        if !matches!(largest, Some(i) if i.abs_diff(217) <= 2) {
            let curve: Vec<String> = model
                .g_curve()
                .iter()
                .map(|(i, g)| format!("{i}:{g:.15}"))
                .collect();
            problems.push(format!(
                "n={n}: largest {largest:?}; g-curve {}",
                curve.join(" ")
            ));
        }
    }
    let detail = if problems.is_empty() {
        format!("largest stable committee {}", found.join(", "))
    } else {
        problems.join("; ")
    };
    Ok((problems.is_empty(), detail))
}

fn numeric_honesty() -> Outcome {
    let mut worst = 0.0f64;
    let mut hoeffding_ok = true;
    for text in ["3/5", "13/20", "7/10"] {
        let exact_p = parse_rational(text)?;
        let p = to_f64(&exact_p);
        for i in 1..=60 {
            let exact = to_f64(&jury::majority_correct_probability_exact(i, &exact_p));
            let fast = jury::majority_correct_probability(i, p)?;
            worst = worst.max((exact - fast).abs());
            hoeffding_ok &= 1.0 - (-2.0 * i as f64 * (p - 0.5).powi(2)).exp() <= fast;
        }
    }
    let ok = worst <= 1e-13 && hoeffding_ok;
    Ok((
        ok,
        format!("max deviation {worst:.2e}; Hoeffding bound holds: {hoeffding_ok}"),
    ))
}

fn equivalence_audit(n: usize) -> Outcome {
    let (lambdas, ps) = reference_grid()?;
    let cells = jury::stable_grid(
        &lambdas,
        &ps,
        n,
        jury::DEFAULT_EPSILON,
        TieRule::StrictMajority,
    )?;
    let reports: Vec<String> = cells
        .iter()
        .filter(|c| !c.discrepancies.is_empty())
        .map(|c| format!("({}, {}): {:?}", c.lambda, c.p, c.discrepancies))
        .collect();
    let detail = if reports.is_empty() {
        format!(
            "RM and HS match the full check on all {} cells",
            cells.len()
        )
    } else {
        format!("discrepancies: {}", reports.join("; "))
    };
    Ok((reports.is_empty(), detail))
}

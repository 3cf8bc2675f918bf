//! Python bindings. Probabilities and utilities cross the boundary as exact
//! `"num/den"` strings; profiles as binary strings with voter 0 first.

use ::constlab as core;
use core::jury::{self, JuryConfig, JuryModel, TieRule};
use core::rational::format_rational;
use core::scf::NecessaryConditions;
use core::stability::{self, EnumerationScope};
use core::{IidParameter, NamedScf, TieBreak, Universe, VotingVector};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn vectors(profiles: &[String]) -> PyResult<Vec<VotingVector>> {
    profiles
        .iter()
        .map(|s| VotingVector::parse_binary(s).map_err(err))
        .collect()
}

fn tie(text: &str) -> PyResult<TieBreak> {
    text.parse().map_err(err)
}

fn universe(text: &str) -> PyResult<Universe> {
    text.parse().map_err(err)
}

/// A binary social-choice function over `n` voters.
#[pyclass(name = "Scf", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyScf(core::Scf);

#[pymethods]
impl PyScf {
    /// Parses `n=<n>;table=<hex>`.
    #[new]
    fn new(canonical: &str) -> PyResult<Self> {
        canonical.parse().map(Self).map_err(err)
    }

    /// A catalogue rule such as `dictatorship:0` or `simple-majority`.
    #[staticmethod]
    fn named(name: &str, n: usize) -> PyResult<Self> {
        name.parse::<NamedScf>()
            .and_then(|s| s.materialize(n))
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn from_accepting(n: usize, profiles: Vec<String>) -> PyResult<Self> {
        core::Scf::from_accepting(n, &vectors(&profiles)?)
            .map(Self)
            .map_err(err)
    }

    /// Every SCF over `n` voters, in table order.
    #[staticmethod]
    fn enumerate(n: usize) -> PyResult<Vec<Self>> {
        Ok(core::Scf::enumerate(n).map_err(err)?.map(Self).collect())
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn canonical(&self) -> String {
        self.0.to_canonical()
    }

    /// The catalogue name, if the rule has one.
    #[getter]
    fn name(&self) -> Option<String> {
        NamedScf::identify(&self.0).map(|s| s.to_string())
    }

    fn __call__(&self, profile: &str) -> PyResult<bool> {
        Ok(self
            .0
            .eval(VotingVector::parse_binary(profile).map_err(err)?))
    }

    fn accepting(&self) -> Vec<String> {
        self.0.accepting().map(|v| v.to_binary_string()).collect()
    }

    fn is_never_negation_agnostic(&self) -> bool {
        core::scf::is_never_negation_agnostic(&self.0)
    }

    /// The six necessary conditions as a name -> bool mapping, as JSON.
    fn necessary_conditions(&self) -> String {
        serde_json::to_string(&NecessaryConditions::evaluate(&self.0)).expect("plain struct")
    }

    fn __repr__(&self) -> String {
        match self.name() {
            Some(name) => format!("Scf({name}, n={})", self.0.n()),
            None => format!("Scf('{}')", self.0.to_canonical()),
        }
    }
}

/// An exact belief over voting profiles.
#[pyclass(name = "Belief", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyBelief(core::Belief);

#[pymethods]
impl PyBelief {
    /// Reads `{"n": .., "pmf": {"101": "1/2", ..}}`.
    #[new]
    fn new(json: &str) -> PyResult<Self> {
        core::Belief::from_json(json).map(Self).map_err(err)
    }

    #[staticmethod]
    fn iid(p: &str, n: usize) -> PyResult<Self> {
        let p = IidParameter::parse(p).map_err(err)?;
        core::Belief::iid(&p, n).map(Self).map_err(err)
    }

    #[staticmethod]
    fn uniform(profiles: Vec<String>) -> PyResult<Self> {
        core::Belief::uniform_support(&vectors(&profiles)?)
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn lexicographic(order: Vec<String>) -> PyResult<Self> {
        core::Belief::lexicographic(&vectors(&order)?)
            .map(Self)
            .map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn prob(&self, profile: &str) -> PyResult<String> {
        Ok(format_rational(
            &self
                .0
                .prob(VotingVector::parse_binary(profile).map_err(err)?),
        ))
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn __repr__(&self) -> String {
        format!("Belief(n={}, support={})", self.0.n(), self.0.support_len())
    }
}

/// Each voter's ex-ante utility under `f`.
#[pyfunction]
fn utilities(f: &PyScf, belief: &PyBelief) -> PyResult<Vec<String>> {
    Ok(stability::utilities(&f.0, &belief.0)
        .map_err(err)?
        .iter()
        .map(format_rational)
        .collect())
}

#[pyfunction]
fn welfare(f: &PyScf, belief: &PyBelief) -> PyResult<String> {
    stability::welfare(&f.0, &belief.0)
        .map(|w| format_rational(&w))
        .map_err(err)
}

#[pyfunction]
fn nash_welfare(f: &PyScf, belief: &PyBelief) -> PyResult<String> {
    stability::nash_welfare(&f.0, &belief.0)
        .map(|w| format_rational(&w))
        .map_err(err)
}

/// Returns `(stable, witness)`; the witness is `(challenger, vote)` or None.
#[pyfunction]
#[pyo3(signature = (f, belief, tie_break = "arbitrary", universe = "all"))]
fn is_self_maintaining(
    f: &PyScf,
    belief: &PyBelief,
    tie_break: &str,
    universe: &str,
) -> PyResult<(bool, Option<(PyScf, String)>)> {
    let v = stability::is_self_maintaining(
        &f.0,
        &belief.0,
        tie(tie_break)?,
        &self::universe(universe)?,
    )
    .map_err(err)?;
    Ok((
        v.stable,
        v.witness
            .map(|w| (PyScf(w.f_prime), w.c.to_binary_string())),
    ))
}

/// Every self-maintaining rule in the universe, sorted by table.
#[pyfunction]
#[pyo3(signature = (n, belief, tie_break = "arbitrary", universe = "all", extended = false))]
fn classify(
    py: Python<'_>,
    n: usize,
    belief: &PyBelief,
    tie_break: &str,
    universe: &str,
    extended: bool,
) -> PyResult<Vec<PyScf>> {
    let tb = tie(tie_break)?;
    let u = self::universe(universe)?;
    let scope = if extended {
        EnumerationScope::Extended
    } else {
        EnumerationScope::Standard
    };
    let b = belief.0.clone();
    let c = py
        .detach(|| stability::classify(n, &b, tb, &u, scope))
        .map_err(err)?;
    Ok(c.stable.into_iter().map(PyScf).collect())
}

/// Searches uniform beliefs on up to `budget` profiles; returns the JSON record.
#[pyfunction]
#[pyo3(signature = (f, tie_break = "sqb", budget = 3, universe = "all"))]
fn pessimistic_refute(
    py: Python<'_>,
    f: &PyScf,
    tie_break: &str,
    budget: usize,
    universe: &str,
) -> PyResult<String> {
    let tb = tie(tie_break)?;
    let u = self::universe(universe)?;
    let r = py
        .detach(|| stability::pessimistic_refute(&f.0, tb, budget, &u))
        .map_err(err)?;
    Ok(serde_json::to_string(&r).expect("serializable"))
}

#[pyfunction]
#[pyo3(signature = (i, p, half_credit_ties = false))]
fn majority_correct_probability(i: usize, p: f64, half_credit_ties: bool) -> PyResult<f64> {
    let rule = if half_credit_ties {
        TieRule::HalfCredit
    } else {
        TieRule::StrictMajority
    };
    jury::majority_correct_probability_with(i, p, rule).map_err(err)
}

/// Stable oligarchy sizes for one parameter point.
#[pyfunction]
#[pyo3(signature = (n, lam, p, epsilon = jury::DEFAULT_EPSILON, half_credit_ties = false))]
fn stable_oligarchy_sizes(
    n: usize,
    lam: f64,
    p: f64,
    epsilon: f64,
    half_credit_ties: bool,
) -> PyResult<Vec<usize>> {
    let rule = if half_credit_ties {
        TieRule::HalfCredit
    } else {
        TieRule::StrictMajority
    };
    let cfg = JuryConfig::new(n, lam, p)
        .and_then(|c| c.with_epsilon(epsilon))
        .map_err(err)?
        .with_tie_rule(rule);
    Ok(JuryModel::new(cfg).map_err(err)?.analyze().stable_sizes)
}

#[pymodule]
fn constlab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyScf>()?;
    m.add_class::<PyBelief>()?;
    m.add_function(wrap_pyfunction!(utilities, m)?)?;
    m.add_function(wrap_pyfunction!(welfare, m)?)?;
    m.add_function(wrap_pyfunction!(nash_welfare, m)?)?;
    m.add_function(wrap_pyfunction!(is_self_maintaining, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(pessimistic_refute, m)?)?;
    m.add_function(wrap_pyfunction!(majority_correct_probability, m)?)?;
    m.add_function(wrap_pyfunction!(stable_oligarchy_sizes, m)?)?;
    Ok(())
}

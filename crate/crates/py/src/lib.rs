//! Python bindings: games and profiles as opaque objects, verdicts as dicts.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyList, PyString};

use coopverif_core::bisim::{bisimilar as bisim_check, verify_bisimulation};
use coopverif_core::coop::ltl::{CoopSolver, SearchOptions};
use coopverif_core::coop::Verdict;
use coopverif_core::format::{parse_game, parse_profile, print_game, print_profile, verdict_json};
use coopverif_core::game::{AgentId, Coalition};
use coopverif_core::gen::build_example;
use coopverif_core::ltl::parse_ltl;
use coopverif_core::mp::{is_lower_bound as lower_bound, mp_core_membership, mp_e_core, Rational};
use coopverif_core::strategy::{run_of, winners, StrategyProfile};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    use serde_json::Value;
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => PyBool::new(py, *b).to_owned().into_any(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any(),
            None => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => PyString::new(py, s).into_any(),
        Value::Array(items) => {
            let items: Vec<Bound<'py, PyAny>> = items.iter().map(|x| to_py(py, x)).collect::<PyResult<_>>()?;
            PyList::new(py, items)?.into_any()
        }
        Value::Object(map) => {
            let d = PyDict::new(py);
            for (k, x) in map {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_any()
        }
    })
}

/// A parsed game (ltl or mp flavour).
#[pyclass(frozen, module = "coopverif")]
struct Game {
    inner: coopverif_core::game::Game,
}

#[pymethods]
impl Game {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Game {
            inner: parse_game(text).map_err(err)?,
        })
    }

    /// A built-in example game.
    #[staticmethod]
    fn example(name: &str) -> PyResult<Self> {
        Ok(Game {
            inner: build_example(name).map_err(err)?.game,
        })
    }

    fn to_text(&self) -> String {
        print_game(&self.inner)
    }

    #[getter]
    fn flavour(&self) -> &'static str {
        match self.inner {
            coopverif_core::game::Game::Ltl(_) => "ltl",
            coopverif_core::game::Game::MeanPayoff(_) => "mp",
        }
    }

    #[getter]
    fn agents(&self) -> usize {
        self.inner.structure().agent_count()
    }

    #[getter]
    fn states(&self) -> Vec<String> {
        self.inner.structure().state_names().to_vec()
    }

    fn __repr__(&self) -> String {
        format!(
            "Game({}, agents={}, states={})",
            self.flavour(),
            self.agents(),
            self.inner.structure().state_count()
        )
    }
}

/// A strategy profile bound to the game it was parsed against.
#[pyclass(frozen, module = "coopverif")]
struct Profile {
    inner: StrategyProfile,
}

#[pymethods]
impl Profile {
    #[staticmethod]
    fn parse(game: &Game, text: &str) -> PyResult<Self> {
        Ok(Profile {
            inner: parse_profile(text, game.inner.structure()).map_err(err)?,
        })
    }

    fn to_text(&self, game: &Game) -> String {
        print_profile(game.inner.structure(), &self.inner)
    }
}

/// Reference profiles of a built-in example, by name.
#[pyfunction]
fn example_profiles(name: &str) -> PyResult<Vec<(String, Profile)>> {
    let ex = build_example(name).map_err(err)?;
    Ok(ex
        .profiles
        .into_iter()
        .map(|(n, p)| (n, Profile { inner: p }))
        .collect())
}

fn verdict<'py>(py: Python<'py>, game: &Game, v: &Verdict) -> PyResult<Bound<'py, PyAny>> {
    let j = serde_json::to_value(verdict_json(game.inner.structure(), v)).map_err(err)?;
    to_py(py, &j)
}

fn ltl_solver<'g>(game: &'g Game, bound: usize) -> PyResult<CoopSolver<'g>> {
    let lg = game.inner.as_ltl().map_err(err)?;
    Ok(CoopSolver::new(lg, SearchOptions::with_bound(bound)))
}

/// The run of a profile: `{"stem", "loop"}` plus winners (ltl) or payoffs (mp, as strings).
#[pyfunction]
fn run<'py>(py: Python<'py>, game: &Game, profile: &Profile) -> PyResult<Bound<'py, PyAny>> {
    let m = game.inner.structure();
    let lasso = run_of(m, &profile.inner).map_err(err)?;
    let (stem, cycle) = lasso.names(m);
    let mut obj = serde_json::json!({"stem": stem, "loop": cycle});
    match &game.inner {
        coopverif_core::game::Game::Ltl(g) => {
            obj["winners"] = winners(g, &lasso).members().map(|a| a.0 + 1).collect::<Vec<_>>().into();
        }
        coopverif_core::game::Game::MeanPayoff(g) => {
            let pay = coopverif_core::mp::mp_of_lasso(&g.weights, &lasso);
            obj["payoffs"] = pay.iter().map(|r| r.to_string()).collect::<Vec<_>>().into();
        }
    }
    to_py(py, &obj)
}

#[pyfunction]
#[pyo3(signature = (game, profile, bound = 1))]
fn core_member<'py>(py: Python<'py>, game: &Game, profile: &Profile, bound: usize) -> PyResult<Bound<'py, PyAny>> {
    let v = ltl_solver(game, bound)?.core_membership(&profile.inner).map_err(err)?;
    verdict(py, game, &v)
}

#[pyfunction]
#[pyo3(signature = (game, profile, bound = 1))]
fn strong_core_member<'py>(
    py: Python<'py>,
    game: &Game,
    profile: &Profile,
    bound: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let v = ltl_solver(game, bound)?
        .strong_core_membership(&profile.inner)
        .map_err(err)?;
    verdict(py, game, &v)
}

#[pyfunction]
#[pyo3(signature = (game, coalition, bound = 1))]
fn fulfilled<'py>(py: Python<'py>, game: &Game, coalition: Vec<usize>, bound: usize) -> PyResult<Bound<'py, PyAny>> {
    let c = agents(game, &coalition)?;
    let v = ltl_solver(game, bound)?.is_fulfilled(c);
    verdict(py, game, &v)
}

#[pyfunction]
#[pyo3(signature = (game, phi, bound = 1))]
fn e_core<'py>(py: Python<'py>, game: &Game, phi: &str, bound: usize) -> PyResult<Bound<'py, PyAny>> {
    let f = parse_ltl(phi).map_err(err)?;
    let v = ltl_solver(game, bound)?.e_core(&f);
    verdict(py, game, &v)
}

#[pyfunction]
#[pyo3(signature = (game, phi, bound = 1))]
fn a_core<'py>(py: Python<'py>, game: &Game, phi: &str, bound: usize) -> PyResult<Bound<'py, PyAny>> {
    let f = parse_ltl(phi).map_err(err)?;
    let v = ltl_solver(game, bound)?.a_core(&f);
    verdict(py, game, &v)
}

#[pyfunction]
fn mp_core_member<'py>(py: Python<'py>, game: &Game, profile: &Profile) -> PyResult<Bound<'py, PyAny>> {
    let g = game.inner.as_mp().map_err(err)?;
    let v = mp_core_membership(g, &profile.inner).map_err(err)?;
    verdict(py, game, &v)
}

/// First memoryless core member and its payoffs (as strings), or None.
#[pyfunction]
fn mp_e_core_profile(game: &Game) -> PyResult<Option<(Profile, Vec<String>)>> {
    let g = game.inner.as_mp().map_err(err)?;
    Ok(mp_e_core(g)
        .map_err(err)?
        .map(|(p, pay)| (Profile { inner: p }, pay.iter().map(|r| r.to_string()).collect())))
}

fn agents(game: &Game, list: &[usize]) -> PyResult<Coalition> {
    let n = game.agents();
    let mut c = Coalition::empty();
    for &i in list {
        if !(1..=n).contains(&i) {
            return Err(PyValueError::new_err(format!("agent {i} out of range 1..={n}")));
        }
        c = c.with(AgentId(i - 1));
    }
    Ok(c)
}

/// Can `coalition` guarantee mean payoffs at least `z` (rationals as strings like "1/2")?
#[pyfunction]
fn is_lower_bound(game: &Game, coalition: Vec<usize>, z: Vec<String>) -> PyResult<bool> {
    let g = game.inner.as_mp().map_err(err)?;
    let c = agents(game, &coalition)?;
    let z: Vec<Rational> = z
        .iter()
        .map(|t| t.trim().parse().map_err(|_| PyValueError::new_err(format!("bad rational {t}"))))
        .collect::<PyResult<_>>()?;
    lower_bound(g, c, &z).map_err(err)
}

/// Bisimilarity of the initial states of two ltl games, checked against the returned relation.
#[pyfunction]
fn bisimilar(left: &Game, right: &Game) -> PyResult<bool> {
    let (a, b) = (left.inner.as_ltl().map_err(err)?, right.inner.as_ltl().map_err(err)?);
    let rel = bisim_check(&a.structure, &a.labelling, &b.structure, &b.labelling).map_err(err)?;
    Ok(rel.is_some_and(|r| verify_bisimulation(&a.structure, &a.labelling, &b.structure, &b.labelling, &r)))
}

/// Module entry point; public so embedders can register it.
#[pymodule]
pub fn coopverif(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Game>()?;
    m.add_class::<Profile>()?;
    m.add_function(wrap_pyfunction!(example_profiles, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(core_member, m)?)?;
    m.add_function(wrap_pyfunction!(strong_core_member, m)?)?;
    m.add_function(wrap_pyfunction!(fulfilled, m)?)?;
    m.add_function(wrap_pyfunction!(e_core, m)?)?;
    m.add_function(wrap_pyfunction!(a_core, m)?)?;
    m.add_function(wrap_pyfunction!(mp_core_member, m)?)?;
    m.add_function(wrap_pyfunction!(mp_e_core_profile, m)?)?;
    m.add_function(wrap_pyfunction!(is_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(bisimilar, m)?)?;
    Ok(())
}

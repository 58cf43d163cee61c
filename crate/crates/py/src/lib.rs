//! Python bindings: algebras as `Algebra` objects, checks and solvers
//! returning plain dicts.

use std::collections::BTreeMap;

use jpn_core::bimodule::BimoduleCase;
use jpn_core::identities::{check_super_jordan, check_supercommutative};
use jpn_core::json::{action_to_json, algebra_to_json, parse_algebra};
use jpn_core::matrix::{build_jpn, build_mnn, build_pn_action};
use jpn_core::peirce::{check_peirce_relations, peirce_decompose, verify_orthogonal_idempotents};
use jpn_core::wpt::symbolic::instances;
use jpn_core::wpt::{derive_constraints, reduce_constraints, shear_twist, solve_complement, symbolic_lift, verify_complement, InstanceMode};
use jpn_core::{Element, Family, GradedAlgebra, Label, Rational};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use serde::Serialize;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(v).map_err(err)?;
    py.import("json")?.call_method1("loads", (s,))
}

fn case(name: &str) -> PyResult<BimoduleCase> {
    name.parse().map_err(err)
}

/// A finite-dimensional superalgebra with exact rational structure constants.
#[pyclass(frozen, module = "jpn")]
struct Algebra {
    alg: GradedAlgebra,
    radical: Vec<usize>,
}

impl Algebra {
    fn index(&self, label: &str) -> PyResult<usize> {
        let l: Label = label.parse().map_err(err)?;
        self.alg
            .basis()
            .index_of(&l)
            .ok_or_else(|| err(format!("no basis element {label}")))
    }

    fn element(&self, x: &BTreeMap<String, String>) -> PyResult<Element> {
        let mut terms = Vec::new();
        for (l, c) in x {
            terms.push((self.index(l)?, c.parse::<Rational>().map_err(err)?));
        }
        Ok(Element::from_terms(terms))
    }

    fn coords(&self, e: &Element) -> BTreeMap<String, String> {
        e.terms()
            .iter()
            .map(|(k, c)| (self.alg.basis().label(*k).to_string(), c.to_string()))
            .collect()
    }
}

#[pymethods]
impl Algebra {
    #[getter]
    fn dim(&self) -> usize {
        self.alg.dim()
    }

    /// Basis labels in index order.
    fn labels(&self) -> Vec<String> {
        (0..self.alg.dim()).map(|k| self.alg.basis().label(k).to_string()).collect()
    }

    /// 0 for even, 1 for odd, per basis index.
    fn parities(&self) -> Vec<u8> {
        (0..self.alg.dim()).map(|k| self.alg.parity(k).bit()).collect()
    }

    /// Labels of the square-zero radical (empty unless an extension).
    fn radical(&self) -> Vec<String> {
        self.radical.iter().map(|&k| self.alg.basis().label(k).to_string()).collect()
    }

    /// Product of two basis elements as `{label: "p/q"}`.
    fn product(&self, x: &str, y: &str) -> PyResult<BTreeMap<String, String>> {
        Ok(self.coords(self.alg.product(self.index(x)?, self.index(y)?)))
    }

    /// Product of elements given as `{label: "p/q"}`.
    fn multiply(&self, x: BTreeMap<String, String>, y: BTreeMap<String, String>) -> PyResult<BTreeMap<String, String>> {
        let p = self.alg.multiply(&self.element(&x)?, &self.element(&y)?).map_err(err)?;
        Ok(self.coords(&p))
    }

    fn to_json(&self) -> PyResult<String> {
        let radical = (!self.radical.is_empty()).then_some(self.radical.as_slice());
        serde_json::to_string_pretty(&algebra_to_json(&self.alg, radical)).map_err(err)
    }

    /// Supercommutativity report.
    fn check_supercommutative<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &check_supercommutative(&self.alg))
    }

    /// Super-Jordan identity on every basis quadruple.
    fn check_super_jordan<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let r = py.detach(|| check_super_jordan(&self.alg)).map_err(err)?;
        to_py(py, &r)
    }

    /// Peirce decomposition relative to `u_1, ..., u_n`.
    fn peirce<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let b = self.alg.basis();
        let es: Vec<Element> = (1..)
            .map_while(|i| b.index_of(&Label::one(Family::U, i)).map(Element::basis))
            .collect();
        if es.is_empty() {
            return Err(err("basis has no u_i idempotents"));
        }
        let idem = verify_orthogonal_idempotents(&self.alg, &es).map_err(err)?;
        let d = peirce_decompose(&self.alg, &es).map_err(err)?;
        let rel = check_peirce_relations(&self.alg, &d).map_err(err)?;
        let out = PyDict::new(py);
        out.set_item("passed", idem.passed && rel.passed)?;
        out.set_item("components", to_py(py, &d.summary(&self.alg))?)?;
        out.set_item("reports", to_py(py, &[idem, rel])?)?;
        Ok(out.into_any())
    }

    fn __repr__(&self) -> String {
        format!("Algebra(dim={}, radical={})", self.alg.dim(), self.radical.len())
    }
}

/// JP_n.
#[pyfunction]
fn jpn(n: usize) -> PyResult<Algebra> {
    let (alg, _) = build_jpn(n).map_err(err)?;
    Ok(Algebra { alg, radical: vec![] })
}

/// M_{n|n} under the super-Jordan product.
#[pyfunction]
fn mnn(n: usize) -> PyResult<Algebra> {
    let (alg, _) = build_mnn(n).map_err(err)?;
    Ok(Algebra { alg, radical: vec![] })
}

/// Split null extension of JP_n by `reg`, `regop`, `pn` or `pnop`.
#[pyfunction]
#[pyo3(signature = (case_name, n=3))]
fn extension(case_name: &str, n: usize) -> PyResult<Algebra> {
    let ext = case(case_name)?.extension(n).map_err(err)?;
    Ok(Algebra {
        radical: ext.radical_indices(),
        alg: ext.into_ambient(),
    })
}

/// Parses a structure-constant JSON document.
#[pyfunction]
fn from_json(text: &str) -> PyResult<Algebra> {
    let (alg, radical) = parse_algebra(text).map_err(err)?;
    Ok(Algebra {
        alg,
        radical: radical.unwrap_or_default(),
    })
}

/// Action table of JP_n on P_n as JSON.
#[pyfunction]
fn pn_action_json(n: usize) -> PyResult<String> {
    let m = build_pn_action(n).map_err(err)?;
    serde_json::to_string_pretty(&action_to_json(&m)).map_err(err)
}

/// Twists an extension with `seed`, solves for a complement and verifies it.
#[pyfunction]
#[pyo3(signature = (case_name, n=3, seed=0))]
fn wpt_solve<'py>(py: Python<'py>, case_name: &str, n: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let c = case(case_name)?;
    let (canon, _) = build_jpn(n).map_err(err)?;
    let ext = c.extension(n).map_err(err)?;
    let tw = shear_twist(&ext, seed).map_err(err)?;
    let naive = verify_complement(&tw.algebra, tw.lift.elements(), &tw.radical, &canon).map_err(err)?;
    let sol = solve_complement(&tw.algebra, &tw.radical, &tw.lift, &canon, None).map_err(err)?;
    let verdict = verify_complement(&tw.algebra, &sol.complement, &tw.radical, &canon).map_err(err)?;
    let labels = tw.lift.canonical();
    let corrections: BTreeMap<String, String> = sol
        .corrections
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_zero())
        .map(|(b, e)| (labels.label(b).to_string(), e.display(tw.algebra.basis())))
        .collect();
    let out = PyDict::new(py);
    out.set_item("case", c.to_string())?;
    out.set_item("seed", seed)?;
    out.set_item("naive_lift_passed", naive.passed)?;
    out.set_item("unknowns", sol.unknowns)?;
    out.set_item("equations", sol.equations)?;
    out.set_item("free", sol.free)?;
    out.set_item("corrections", corrections)?;
    out.set_item("verdict", to_py(py, &verdict)?)?;
    out.set_item("passed", verdict.passed)?;
    Ok(out.into_any())
}

/// Derives and reduces the constraints of the parametrized lift.
#[pyfunction]
#[pyo3(signature = (case_name, n=3, mode="exhaustive"))]
fn lemma_derive<'py>(py: Python<'py>, case_name: &str, n: usize, mode: &str) -> PyResult<Bound<'py, PyAny>> {
    let c = case(case_name)?;
    let mode = match mode {
        "exhaustive" => InstanceMode::Exhaustive,
        "curated" => InstanceMode::Curated,
        m => return Err(err(format!("unknown mode {m}"))),
    };
    let cs = py
        .detach(|| {
            let (sym, _) = symbolic_lift(c, n)?;
            derive_constraints(&sym, &instances(&sym, mode)).map(|cs| reduce_constraints(&cs))
        })
        .map_err(err)?;
    let out = to_py(py, &cs)?;
    out.set_item("all_zero", cs.is_all_zero())?;
    Ok(out)
}

#[pymodule]
#[pyo3(name = "jpn")]
pub fn jpn_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Algebra>()?;
    m.add_function(wrap_pyfunction!(jpn, m)?)?;
    m.add_function(wrap_pyfunction!(mnn, m)?)?;
    m.add_function(wrap_pyfunction!(extension, m)?)?;
    m.add_function(wrap_pyfunction!(from_json, m)?)?;
    m.add_function(wrap_pyfunction!(pn_action_json, m)?)?;
    m.add_function(wrap_pyfunction!(wpt_solve, m)?)?;
    m.add_function(wrap_pyfunction!(lemma_derive, m)?)?;
    Ok(())
}

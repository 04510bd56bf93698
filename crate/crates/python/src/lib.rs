//! Python bindings. Graphs are passed in the text form accepted by
//! `MultiGraph::parse` (e.g. `"3; 0 1; 1 2; 2 3"`), permutations as one-line
//! strings such as `"14523"`.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyTuple};

use flowgp::reduction::{strategy_from_name, verify_theorem_a, LdMultiset};
use flowgp::scan::default_strategies;
use flowgp::{arrays, flow, newton, schubert, EdgeSubset, MultiGraph, Permutation};

type Core<T> = flowgp::Result<T>;

fn py<T>(r: Core<T>) -> PyResult<T> {
    r.map_err(|e| PyValueError::new_err(e.to_string()))
}

fn subset(g: &MultiGraph, f: &str) -> Core<EdgeSubset> {
    if f.trim().is_empty() {
        Ok(EdgeSubset::empty())
    } else {
        EdgeSubset::parse(g, f)
    }
}

/// `(sequence, F, multiplicity)` per distinct labelled leaf.
pub fn ld_entries(graph: &str, strategy: &str) -> Core<Vec<(Vec<u32>, String, u64)>> {
    let g = MultiGraph::parse(graph)?;
    let ld = LdMultiset::of(&g, strategy_from_name(strategy)?.as_ref());
    Ok(ld.entries.iter().map(|((s, f), m)| (s.clone(), f.to_string(), *m)).collect())
}

pub fn tri_rows(graph: &str, f: &str, latex: bool) -> Core<Vec<String>> {
    let g = MultiGraph::parse(graph)?;
    let tri = arrays::tri_array(&g, &subset(&g, f)?)?;
    Ok(if latex { tri.to_latex() } else { tri.to_text() })
}

pub fn z_values(graph: &str, f: &str) -> Core<Vec<i64>> {
    let g = MultiGraph::parse(graph)?;
    Ok(newton::z_parameters(&g, &subset(&g, f)?)?.values().to_vec())
}

pub fn theorem_a(graph: &str, seed: u64) -> Core<bool> {
    let g = MultiGraph::parse(graph)?;
    let strategies = default_strategies(seed);
    let refs: Vec<_> = strategies.iter().map(|s| s.as_ref()).collect();
    Ok(verify_theorem_a(&g, &refs)?.holds)
}

pub fn polynomial_terms(p: &flowgp::SparsePolynomial) -> BTreeMap<Vec<u32>, i64> {
    p.terms().clone()
}

/// Number of integer flows on `graph` with netflow `netflow`.
#[pyfunction]
fn kostant(graph: &str, netflow: Vec<i64>) -> PyResult<u64> {
    py(MultiGraph::parse(graph).and_then(|g| flow::kostant(&g, &netflow)))
}

#[pyfunction]
fn feasible(graph: &str, netflow: Vec<i64>) -> PyResult<bool> {
    py(MultiGraph::parse(graph).and_then(|g| flow::feasible(&g, &netflow)))
}

/// Normalized volume of the flow polytope of the tilde graph.
#[pyfunction]
fn volume(graph: &str) -> PyResult<u64> {
    py(MultiGraph::parse(graph).and_then(|g| newton::volume(&g)))
}

/// Ehrhart coefficients, constant term first, as fraction strings.
#[pyfunction]
fn ehrhart(graph: &str) -> PyResult<Vec<String>> {
    py(MultiGraph::parse(graph).and_then(|g| newton::ehrhart(&g)).map(|e| e.coefficient_strings()))
}

#[pyfunction]
#[pyo3(signature = (graph, strategy = "special"))]
fn ld(graph: &str, strategy: &str) -> PyResult<Vec<(Vec<u32>, String, u64)>> {
    py(ld_entries(graph, strategy))
}

#[pyfunction]
#[pyo3(signature = (graph, f = "", latex = true))]
fn tri(graph: &str, f: &str, latex: bool) -> PyResult<Vec<String>> {
    py(tri_rows(graph, f, latex))
}

/// z-parameters of `LD(G, F)`, indexed by subset bitmask.
#[pyfunction]
#[pyo3(signature = (graph, f = ""))]
fn z_parameters(graph: &str, f: &str) -> PyResult<Vec<i64>> {
    py(z_values(graph, f))
}

#[pyfunction]
#[pyo3(signature = (graph, seed = 1))]
fn verify_theorem_a_py(graph: &str, seed: u64) -> PyResult<bool> {
    py(theorem_a(graph, seed))
}

/// `{exponent tuple: coefficient}`.
fn terms_dict<'py>(p: Python<'py>, poly: Core<flowgp::SparsePolynomial>) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(p);
    for (exp, c) in polynomial_terms(&py(poly)?) {
        d.set_item(PyTuple::new(p, exp)?, c)?;
    }
    Ok(d)
}

/// Schubert polynomial as `{exponent tuple: coefficient}`.
#[pyfunction(name = "schubert")]
fn schubert_py<'py>(p: Python<'py>, perm: &str) -> PyResult<Bound<'py, PyDict>> {
    terms_dict(p, Permutation::parse(perm).and_then(|pi| schubert::schubert(&pi)))
}

#[pyfunction(name = "grothendieck")]
fn grothendieck_py<'py>(p: Python<'py>, perm: &str) -> PyResult<Bound<'py, PyDict>> {
    terms_dict(p, Permutation::parse(perm).and_then(|pi| schubert::grothendieck(&pi)))
}

#[pyfunction(name = "transition")]
fn transition_py<'py>(p: Python<'py>, perm: &str) -> PyResult<Bound<'py, PyDict>> {
    terms_dict(p, Permutation::parse(perm).and_then(|pi| schubert::transition(&pi)))
}

/// `(counterexamples, permutations)` over S_n.
#[pyfunction]
fn conjecture_scan(n: usize) -> PyResult<(usize, usize)> {
    py(schubert::conjecture_scan(n)).map(|r| (r.counterexamples, r.permutations))
}

#[pymodule]
fn pyflowgp(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(kostant, m)?)?;
    m.add_function(wrap_pyfunction!(feasible, m)?)?;
    m.add_function(wrap_pyfunction!(volume, m)?)?;
    m.add_function(wrap_pyfunction!(ehrhart, m)?)?;
    m.add_function(wrap_pyfunction!(ld, m)?)?;
    m.add_function(wrap_pyfunction!(tri, m)?)?;
    m.add_function(wrap_pyfunction!(z_parameters, m)?)?;
    m.add("verify_theorem_a", wrap_pyfunction!(verify_theorem_a_py, m)?)?;
    m.add_function(wrap_pyfunction!(schubert_py, m)?)?;
    m.add_function(wrap_pyfunction!(grothendieck_py, m)?)?;
    m.add_function(wrap_pyfunction!(transition_py, m)?)?;
    m.add_function(wrap_pyfunction!(conjecture_scan, m)?)?;
    Ok(())
}

//! Python bindings. Rationals go in as anything whose `str()` parses
//! (`int`, `Fraction`, `"3/7"`) and come back as `fractions.Fraction`.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use splitcut::corner::{CornerRelaxation, CutCoefficients, Disjunction};
use splitcut::cutfn::{self, AlphaCut, GmiFunction};
use splitcut::exact::parse_rational;
use splitcut::experiments::{ip_optimum_bruteforce, make_bad_family, run_gap_experiment};
use splitcut::instance::InstanceFile;
use splitcut::separation::{self, ClosureStrategy, Optimum};
use splitcut::split::SplitSet;
use splitcut::{IntVector, Rational, RationalVector};

fn err(e: splitcut::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_rat(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let text = obj.str()?;
    parse_rational(text.to_str()?).map_err(err)
}

fn to_vec(objs: Vec<Bound<'_, PyAny>>) -> PyResult<RationalVector> {
    Ok(RationalVector::new(objs.iter().map(to_rat).collect::<PyResult<_>>()?))
}

fn to_rats(objs: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<Rational>> {
    objs.iter().map(to_rat).collect()
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((r.to_string(),))
}

fn fractions<'py>(py: Python<'py>, rs: &[Rational]) -> PyResult<Vec<Bound<'py, PyAny>>> {
    rs.iter().map(|r| fraction(py, r)).collect()
}

fn alpha_of(alpha: Vec<BigInt>) -> IntVector {
    IntVector::new(alpha)
}

fn optimum_value<'py>(py: Python<'py>, opt: &Optimum) -> PyResult<Option<Bound<'py, PyAny>>> {
    opt.value().map(|v| fraction(py, v)).transpose()
}

fn optimum_status(opt: &Optimum) -> &'static str {
    match opt {
        Optimum::Infeasible => "infeasible",
        Optimum::Finite { .. } => "optimal",
        Optimum::Unbounded => "unbounded",
    }
}

/// Corner relaxation x = f + sum r s + sum q y, s >= 0, y >= 0.
#[pyclass(name = "Relaxation", module = "splitcut", frozen, skip_from_py_object)]
struct PyRelaxation {
    inner: CornerRelaxation,
}

#[pymethods]
impl PyRelaxation {
    #[new]
    #[pyo3(signature = (f, r = Vec::new(), q = Vec::new()))]
    fn new(f: Vec<Bound<'_, PyAny>>, r: Vec<Vec<Bound<'_, PyAny>>>, q: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Self> {
        let f = to_vec(f)?;
        let r = r.into_iter().map(to_vec).collect::<PyResult<_>>()?;
        let q = q.into_iter().map(to_vec).collect::<PyResult<_>>()?;
        Ok(PyRelaxation {
            inner: CornerRelaxation::new(f, r, q).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        let inst = InstanceFile::parse(text).map_err(err)?;
        Ok(PyRelaxation { inner: inst.relaxation })
    }

    fn to_text(&self) -> String {
        InstanceFile::new(self.inner.clone()).to_string()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn f<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        fractions(py, self.inner.f().entries())
    }

    #[getter]
    fn r<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        self.inner.r_cols().iter().map(|c| fractions(py, c.entries())).collect()
    }

    #[getter]
    fn q<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        self.inner.q_cols().iter().map(|c| fractions(py, c.entries())).collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "Relaxation(n={}, r={}, q={})",
            self.inner.dim(),
            self.inner.r_cols().len(),
            self.inner.q_cols().len()
        )
    }
}

type Tables<'py> = (Vec<Bound<'py, PyAny>>, Vec<Bound<'py, PyAny>>);

fn tables<'py>(py: Python<'py>, cut: &CutCoefficients) -> PyResult<Tables<'py>> {
    Ok((fractions(py, &cut.psi)?, fractions(py, &cut.pi)?))
}

/// Gauge of S(alpha, f) at r.
#[pyfunction]
fn gauge<'py>(
    py: Python<'py>,
    alpha: Vec<BigInt>,
    f: Vec<Bound<'py, PyAny>>,
    r: Vec<Bound<'py, PyAny>>,
) -> PyResult<Bound<'py, PyAny>> {
    let split = SplitSet::new(alpha_of(alpha), to_vec(f)?).map_err(err)?;
    fraction(py, &split.gauge(&to_vec(r)?).map_err(err)?)
}

#[pyfunction]
fn gmi_psi<'py>(py: Python<'py>, f: Bound<'py, PyAny>, r: Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    let g = GmiFunction::new(&to_rat(&f)?).map_err(err)?;
    fraction(py, &g.psi(&to_rat(&r)?))
}

#[pyfunction]
fn gmi_pi<'py>(py: Python<'py>, f: Bound<'py, PyAny>, q: Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    let g = GmiFunction::new(&to_rat(&f)?).map_err(err)?;
    fraction(py, &g.pi(&to_rat(&q)?))
}

#[pyfunction]
fn alpha_psi<'py>(
    py: Python<'py>,
    alpha: Vec<BigInt>,
    f: Vec<Bound<'py, PyAny>>,
    r: Vec<Bound<'py, PyAny>>,
) -> PyResult<Bound<'py, PyAny>> {
    let cut = AlphaCut::new(alpha_of(alpha), to_vec(f)?).map_err(err)?;
    fraction(py, &cut.psi(&to_vec(r)?).map_err(err)?)
}

#[pyfunction]
fn alpha_pi<'py>(
    py: Python<'py>,
    alpha: Vec<BigInt>,
    f: Vec<Bound<'py, PyAny>>,
    q: Vec<Bound<'py, PyAny>>,
) -> PyResult<Bound<'py, PyAny>> {
    let cut = AlphaCut::new(alpha_of(alpha), to_vec(f)?).map_err(err)?;
    fraction(py, &cut.pi(&to_vec(q)?).map_err(err)?)
}

/// Trivial lifting of S(alpha, f) at q. Returns (value, w).
#[pyfunction]
fn trivial_lifting<'py>(
    py: Python<'py>,
    alpha: Vec<BigInt>,
    f: Vec<Bound<'py, PyAny>>,
    q: Vec<Bound<'py, PyAny>>,
) -> PyResult<(Bound<'py, PyAny>, BigInt)> {
    let split = SplitSet::new(alpha_of(alpha), to_vec(f)?).map_err(err)?;
    let (value, w) = cutfn::trivial_lifting(&split, &to_vec(q)?).map_err(err)?;
    Ok((fraction(py, &value)?, w))
}

/// (psi, pi) tables of the alpha-cut on the relaxation's columns.
#[pyfunction]
fn alpha_cut<'py>(py: Python<'py>, rel: &PyRelaxation, alpha: Vec<BigInt>) -> PyResult<Tables<'py>> {
    let cut = AlphaCut::new(alpha_of(alpha), rel.inner.f().clone()).map_err(err)?;
    tables(py, &CutCoefficients::alpha_cut(&rel.inner, &cut).map_err(err)?)
}

fn disjunction(rel: &CornerRelaxation, alpha: Vec<BigInt>, beta: Option<Vec<BigInt>>) -> PyResult<Disjunction> {
    let beta = beta.unwrap_or_else(|| vec![BigInt::from(0); rel.q_cols().len()]);
    Disjunction::new(rel, alpha_of(alpha), beta).map_err(err)
}

/// Deepest cut for the disjunction D(alpha, beta, f).
#[pyfunction]
#[pyo3(signature = (rel, alpha, beta = None))]
fn deepest_cut<'py>(
    py: Python<'py>,
    rel: &PyRelaxation,
    alpha: Vec<BigInt>,
    beta: Option<Vec<BigInt>>,
) -> PyResult<Tables<'py>> {
    let d = disjunction(&rel.inner, alpha, beta)?;
    tables(py, &separation::deepest_disjunctive_cut(&rel.inner, &d).map_err(err)?)
}

/// True when psi s + pi y >= 1 holds on both sides of the disjunction.
#[pyfunction]
#[pyo3(signature = (rel, psi, pi, alpha, beta = None))]
fn verify_split_cut(
    rel: &PyRelaxation,
    psi: Vec<Bound<'_, PyAny>>,
    pi: Vec<Bound<'_, PyAny>>,
    alpha: Vec<BigInt>,
    beta: Option<Vec<BigInt>>,
) -> PyResult<bool> {
    let cut = CutCoefficients::new(to_rats(psi)?, to_rats(pi)?).map_err(err)?;
    let d = disjunction(&rel.inner, alpha, beta)?;
    Ok(separation::verify_split_cut(&rel.inner, &cut, &d).map_err(err)?.valid)
}

/// Minimize objective (s then y) over the split closure.
#[pyfunction]
#[pyo3(signature = (rel, objective, r#box = None))]
fn closure<'py>(
    py: Python<'py>,
    rel: &PyRelaxation,
    objective: Vec<Bound<'py, PyAny>>,
    r#box: Option<u32>,
) -> PyResult<Bound<'py, PyDict>> {
    let strategy = r#box.map_or(ClosureStrategy::Period, ClosureStrategy::Box);
    let res = separation::split_closure_optimize(&rel.inner, &to_rats(objective)?, strategy).map_err(err)?;
    let out = PyDict::new(py);
    out.set_item("status", optimum_status(&res.optimum))?;
    out.set_item("value", optimum_value(py, &res.optimum)?)?;
    out.set_item("exact", res.exact)?;
    out.set_item("period", res.period)?;
    out.set_item("family_size", res.family_size)?;
    let binding: Vec<Vec<BigInt>> = res.binding.iter().map(|a| a.entries().to_vec()).collect();
    out.set_item("binding", binding)?;
    Ok(out)
}

/// Integer optimum by enumeration with sum(y) <= cap. None when nothing
/// feasible was found.
#[pyfunction]
#[pyo3(signature = (rel, objective, cap = 40))]
fn ip_opt<'py>(
    py: Python<'py>,
    rel: &PyRelaxation,
    objective: Vec<Bound<'py, PyAny>>,
    cap: u64,
) -> PyResult<Option<Bound<'py, PyDict>>> {
    let Some(opt) = ip_optimum_bruteforce(&rel.inner, &to_rats(objective)?, cap).map_err(err)? else {
        return Ok(None);
    };
    let out = PyDict::new(py);
    out.set_item("value", fraction(py, &opt.value)?)?;
    out.set_item("y", fractions(py, &opt.witness.y)?)?;
    out.set_item("certified", opt.certified)?;
    Ok(Some(out))
}

#[pyfunction]
fn bad_family(epsilon: Bound<'_, PyAny>) -> PyResult<PyRelaxation> {
    Ok(PyRelaxation {
        inner: make_bad_family(&to_rat(&epsilon)?).map_err(err)?,
    })
}

/// Integrality gap experiment on the epsilon family.
#[pyfunction]
#[pyo3(signature = (epsilon, cap = None))]
fn gap<'py>(py: Python<'py>, epsilon: Bound<'py, PyAny>, cap: Option<u64>) -> PyResult<Bound<'py, PyDict>> {
    let report = run_gap_experiment(&to_rat(&epsilon)?, cap).map_err(err)?;
    let opt = |v: &Option<Rational>| v.as_ref().map(|v| fraction(py, v)).transpose();
    let out = PyDict::new(py);
    out.set_item("epsilon", fraction(py, &report.epsilon)?)?;
    out.set_item("cap", report.cap)?;
    out.set_item("ip_opt", opt(&report.ip_optimum)?)?;
    out.set_item("ip_certified", report.ip_certified)?;
    out.set_item("closure_opt", opt(&report.closure_optimum)?)?;
    out.set_item("ratio", opt(&report.ratio)?)?;
    out.set_item("paper_bound", fraction(py, &report.paper_bound)?)?;
    out.set_item("alpha_period", report.alpha_period.clone())?;
    out.set_item("status", report.status.label())?;
    out.set_item("exit_code", report.status.exit_code())?;
    Ok(out)
}

#[pymodule]
#[pyo3(name = "splitcut")]
fn splitcut_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRelaxation>()?;
    m.add_function(wrap_pyfunction!(gauge, m)?)?;
    m.add_function(wrap_pyfunction!(gmi_psi, m)?)?;
    m.add_function(wrap_pyfunction!(gmi_pi, m)?)?;
    m.add_function(wrap_pyfunction!(alpha_psi, m)?)?;
    m.add_function(wrap_pyfunction!(alpha_pi, m)?)?;
    m.add_function(wrap_pyfunction!(trivial_lifting, m)?)?;
    m.add_function(wrap_pyfunction!(alpha_cut, m)?)?;
    m.add_function(wrap_pyfunction!(deepest_cut, m)?)?;
    m.add_function(wrap_pyfunction!(verify_split_cut, m)?)?;
    m.add_function(wrap_pyfunction!(closure, m)?)?;
    m.add_function(wrap_pyfunction!(ip_opt, m)?)?;
    m.add_function(wrap_pyfunction!(bad_family, m)?)?;
    m.add_function(wrap_pyfunction!(gap, m)?)?;
    Ok(())
}

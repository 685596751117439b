//! Python bindings. Descriptors and reports come back as plain dicts and
//! lists with the same shape as the CLI's JSON output.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;
use serde_json::Value;

use frobvar::field::Field;
use frobvar::oracle::{self, Check};
use frobvar::{dpalg, linkage, varieties, Error, SimpleRegistry, Weight};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    match v {
        Value::Null => Ok(py.None()),
        Value::Bool(b) => b.into_py_any(py),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.into_py_any(py),
            (_, Some(u)) => u.into_py_any(py),
            _ => n.as_f64().unwrap_or(f64::NAN).into_py_any(py),
        },
        Value::String(s) => s.into_py_any(py),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for x in items {
                list.append(to_py(py, x)?)?;
            }
            list.into_py_any(py)
        }
        Value::Object(map) => {
            let d = PyDict::new(py);
            for (k, x) in map {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_py_any(py)
        }
    }
}

fn ser<T: serde::Serialize>(py: Python<'_>, x: &T) -> PyResult<Py<PyAny>> {
    to_py(py, &serde_json::to_value(x).map_err(|e| PyValueError::new_err(e.to_string()))?)
}

fn registry(text: Option<&str>) -> PyResult<SimpleRegistry> {
    SimpleRegistry::from_json_str(text.unwrap_or("")).map_err(err)
}

/// A root system of type A, B, C or D, named like `A2`, `SL3`, `Sp4`, `SO7`.
#[pyclass(name = "RootSystem", module = "pyfrobvar", frozen)]
struct PyRootSystem {
    inner: frobvar::RootSystem,
}

impl PyRootSystem {
    fn weight(&self, lambda: Vec<i64>) -> PyResult<Weight> {
        let w = Weight(lambda);
        self.inner.check_weight(&w).map_err(err)?;
        Ok(w)
    }
}

#[pymethods]
impl PyRootSystem {
    #[new]
    fn new(name: &str) -> PyResult<Self> {
        Ok(PyRootSystem { inner: frobvar::RootSystem::from_name(name).map_err(err)? })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank
    }

    #[getter]
    fn coxeter_number(&self) -> i64 {
        self.inner.coxeter_number
    }

    /// The constant `c` of the gate `p > h·c`, as `"n/d"` or `"n"`.
    #[getter]
    fn cln_constant(&self) -> String {
        self.inner.cln_constant.to_string()
    }

    #[getter]
    fn num_positive(&self) -> usize {
        self.inner.num_positive()
    }

    #[getter]
    fn cartan(&self) -> Vec<Vec<i64>> {
        self.inner.cartan.clone()
    }

    fn positive_roots(&self) -> Vec<Vec<i64>> {
        self.inner.positive_roots().map(|(_, r)| r.simple_root_coords.clone()).collect()
    }

    fn gate(&self, py: Python<'_>, p: u64) -> PyResult<Py<PyAny>> {
        ser(py, &self.inner.gate_check(p))
    }

    fn smallest_admissible_prime(&self) -> u64 {
        self.inner.smallest_admissible_prime()
    }

    #[pyo3(signature = (lambda, p, pad_to=None))]
    fn steinberg_digits(&self, lambda: Vec<i64>, p: u64, pad_to: Option<usize>) -> PyResult<Vec<Vec<i64>>> {
        let w = self.weight(lambda)?;
        Ok(self.inner.steinberg_digits(&w, p, pad_to).map_err(err)?.into_iter().map(|d| d.0).collect())
    }

    fn dot_orbit(&self, lambda: Vec<i64>) -> PyResult<Vec<Vec<i64>>> {
        let w = Weight(lambda);
        Ok(self.inner.dot_orbit(&w).map_err(err)?.into_iter().map(|d| d.0).collect())
    }

    fn jantzen_m(&self, lambda: Vec<i64>, p: u64) -> PyResult<u32> {
        linkage::jantzen_m(&self.inner, &self.weight(lambda)?, p).map_err(err)
    }

    fn digit_m(&self, lambda: Vec<i64>, p: u64, r: u32) -> PyResult<u32> {
        linkage::digit_m(&self.inner, &self.weight(lambda)?, p, r).map_err(err)
    }

    fn same_block(&self, lambda: Vec<i64>, mu: Vec<i64>, p: u64, r: u32) -> PyResult<bool> {
        linkage::same_block(&self.inner, &self.weight(lambda)?, &self.weight(mu)?, p, r).map_err(err)
    }

    /// Block classes of `X_r(T)` as dicts with `representative`, `m`, `members`.
    fn blocks(&self, py: Python<'_>, p: u64, r: u32) -> PyResult<Py<PyAny>> {
        let classes = linkage::block_partition(&self.inner, p, r).map_err(err)?;
        let v: Vec<Value> = classes
            .iter()
            .map(|c| serde_json::json!({"representative": c.base_weight, "m": c.m, "members": c.members}))
            .collect();
        to_py(py, &Value::Array(v))
    }

    /// `Φ_λ` as simple-root coordinates.
    fn phi_lambda(&self, lambda: Vec<i64>, p: u64) -> PyResult<Vec<Vec<i64>>> {
        let phi = varieties::phi_lambda(&self.inner, &self.weight(lambda)?, p).map_err(err)?;
        Ok(phi.iter().map(|&k| self.inner.roots[k].simple_root_coords.clone()).collect())
    }

    /// `(w, I)` with `w(Φ_λ) = ZI ∩ Φ`, both 1-based.
    fn levi_conjugate(&self, lambda: Vec<i64>, p: u64) -> PyResult<(Vec<usize>, Vec<usize>)> {
        let phi = varieties::phi_lambda(&self.inner, &self.weight(lambda)?, p).map_err(err)?;
        let (w, levi) = varieties::levi_conjugate(&self.inner, &phi).map_err(err)?;
        Ok((w.word.iter().map(|i| i + 1).collect(), levi.iter().map(|i| i + 1).collect()))
    }

    fn induced_variety(&self, py: Python<'_>, lambda: Vec<i64>, p: u64) -> PyResult<Py<PyAny>> {
        ser(py, &varieties::induced_variety(&self.inner, &self.weight(lambda)?, p).map_err(err)?)
    }

    #[pyo3(signature = (lambda, p, r, registry_json=None))]
    fn simple_variety(&self, py: Python<'_>, lambda: Vec<i64>, p: u64, r: u32, registry_json: Option<&str>) -> PyResult<Py<PyAny>> {
        let reg = registry(registry_json)?;
        ser(py, &varieties::simple_variety(&self.inner, &self.weight(lambda)?, p, r, &reg).map_err(err)?)
    }

    fn block_variety(&self, py: Python<'_>, lambda: Vec<i64>, p: u64, r: u32) -> PyResult<Py<PyAny>> {
        ser(py, &varieties::block_variety(&self.inner, &self.weight(lambda)?, p, r).map_err(err)?)
    }

    #[pyo3(signature = (lambda, p, r, registry_json=None))]
    fn complexity_upper(&self, lambda: Vec<i64>, p: u64, r: u32, registry_json: Option<&str>) -> PyResult<Option<usize>> {
        let reg = registry(registry_json)?;
        varieties::complexity_upper(&self.inner, &self.weight(lambda)?, p, r, &reg).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("RootSystem('{}')", self.inner.name())
    }
}

/// Expands `dψ_r(u_{r-1})` and checks its shape.
#[pyfunction]
#[pyo3(signature = (p, r, dump=false))]
fn verify_dist(py: Python<'_>, p: u64, r: u32, dump: bool) -> PyResult<Py<PyAny>> {
    let rep = dpalg::verify_claim(r, p).map_err(err)?;
    let mut v = serde_json::to_value(&rep).map_err(|e| PyValueError::new_err(e.to_string()))?;
    if dump {
        v["expansion"] = Value::String(rep.expansion.render());
    }
    to_py(py, &v)
}

/// Runs one exhaustive `SL_2` comparison: `simple`, `equal`, `block`,
/// `h0-remark` or `friedlander`.
#[pyfunction]
#[pyo3(signature = (p, r, check="simple", field_ext=1))]
fn oracle_verify(py: Python<'_>, p: u64, r: u32, check: &str, field_ext: u32) -> PyResult<Py<PyAny>> {
    let check = match check {
        "simple" => Check::Simple,
        "equal" => Check::Equal,
        "block" => Check::Block,
        "h0-remark" => Check::H0Remark,
        "friedlander" => Check::Friedlander,
        other => return Err(PyValueError::new_err(format!("unknown check {other}"))),
    };
    if !frobvar::field::is_prime(p) {
        return Err(err(Error::NotPrime(p)));
    }
    if !(1..=2).contains(&field_ext) {
        return Err(PyValueError::new_err("field_ext must be 1 or 2"));
    }
    let f = Field::new(p, field_ext);
    let rep = py.detach(|| oracle::run_check(check, &f, r)).map_err(err)?;
    ser(py, &rep)
}

/// Runs the command-line front end; returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let (mut out, mut errb) = (Vec::new(), Vec::new());
    let argv = std::iter::once("frobvar".to_string()).chain(args);
    let code = frobvar::cli::run(argv, &mut out, &mut errb);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&errb).into_owned())
}

#[pymodule]
fn pyfrobvar(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRootSystem>()?;
    m.add_function(wrap_pyfunction!(verify_dist, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_verify, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}

//! Python bindings. Elements are immutable and carry their signature; arithmetic between
//! elements of different signatures raises `ValueError`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;

use superck_core::algebra::{BlockId, Sig, Signature as CoreSignature, SuperElement};
use superck_core::cauchy;
use superck_core::ck::{self, Param};
use superck_core::integration::{self, Weight};
use superck_core::ops;
use superck_core::planewave;
use superck_core::report::{CommandEcho, Report};
use superck_core::suites::{self, Grid};
use superck_core::text::{parse, render};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_to_py<'py>(py: Python<'py>, v: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(v).map_err(err)?;
    py.import("json")?.call_method1("loads", (s,))
}

/// A signature with block x of dimension (m|2n), optionally a block w sharing the
/// generators of x, and a parameter block y of dimension (p|2q) when p + q > 0.
#[pyclass(name = "Signature", frozen, module = "superck")]
struct PySignature {
    sig: Sig,
}

#[pymethods]
impl PySignature {
    #[new]
    #[pyo3(signature = (m, n, p = 0, q = 0, plane_wave = false))]
    fn new(m: usize, n: usize, p: usize, q: usize, plane_wave: bool) -> PyResult<Self> {
        let mut b = CoreSignature::builder().block("x", m, n);
        if plane_wave {
            b = b.block_sharing("w", "x");
        }
        if p + q > 0 {
            b = b.block("y", p, q);
        }
        Ok(PySignature { sig: b.build().map_err(err)? })
    }

    fn parse(&self, expr: &str) -> PyResult<PyElement> {
        Ok(PyElement(parse(&self.sig, expr).map_err(err)?))
    }

    /// Superdimension m - 2n of a block.
    fn super_dim(&self, block: &str) -> PyResult<i64> {
        Ok(self.sig.block(self.sig.block_id(block).map_err(err)?).super_dim())
    }

    fn blocks(&self) -> Vec<String> {
        self.sig.blocks().iter().map(|b| b.name.clone()).collect()
    }
}

#[pyclass(name = "Element", frozen, skip_from_py_object, module = "superck")]
#[derive(Clone)]
struct PyElement(SuperElement);

impl PyElement {
    fn block(&self, name: &str) -> PyResult<BlockId> {
        self.0.sig().block_id(name).map_err(err)
    }

    fn same_sig(&self, o: &PyElement) -> PyResult<()> {
        if self.0.sig() == o.0.sig() {
            Ok(())
        } else {
            Err(PyValueError::new_err("elements live in different signatures"))
        }
    }

    fn param(&self, param: &str) -> PyResult<Param> {
        if param == "x0" {
            Ok(Param::X0)
        } else {
            Ok(Param::Block(self.block(param)?))
        }
    }
}

#[pymethods]
impl PyElement {
    fn __str__(&self) -> String {
        render(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Element({:?})", render(&self.0))
    }

    fn __eq__(&self, o: &PyElement) -> bool {
        self.0 == o.0
    }

    fn __add__(&self, o: &PyElement) -> PyResult<PyElement> {
        self.same_sig(o)?;
        Ok(PyElement(&self.0 + &o.0))
    }

    fn __sub__(&self, o: &PyElement) -> PyResult<PyElement> {
        self.same_sig(o)?;
        Ok(PyElement(&self.0 - &o.0))
    }

    fn __mul__(&self, o: &PyElement) -> PyResult<PyElement> {
        self.same_sig(o)?;
        Ok(PyElement(&self.0 * &o.0))
    }

    fn __neg__(&self) -> PyElement {
        PyElement(-&self.0)
    }

    fn __pow__(&self, e: u32, _modulo: Option<u32>) -> PyElement {
        PyElement(self.0.pow(e))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    #[pyo3(signature = (block = "x"))]
    fn dirac(&self, block: &str) -> PyResult<PyElement> {
        Ok(PyElement(ops::dirac(&self.0, self.block(block)?)))
    }

    #[pyo3(signature = (block = "x"))]
    fn laplacian(&self, block: &str) -> PyResult<PyElement> {
        Ok(PyElement(ops::laplacian(&self.0, self.block(block)?)))
    }

    #[pyo3(signature = (block = "x"))]
    fn euler(&self, block: &str) -> PyResult<PyElement> {
        Ok(PyElement(ops::euler(&self.0, self.block(block)?)))
    }

    #[pyo3(signature = (block = "x"))]
    fn sphere_integral(&self, block: &str) -> PyResult<PyElement> {
        Ok(PyElement(integration::sphere_integral(&self.0, self.block(block)?).map_err(err)?))
    }

    /// The normalized supersphere integral, defined when M = -2k.
    #[pyo3(signature = (block = "x"))]
    fn normalized_integral(&self, block: &str) -> PyResult<PyElement> {
        Ok(PyElement(integration::normalized_integral(&self.0, self.block(block)?, &Weight::Unit).map_err(err)?))
    }

    #[pyo3(signature = (block = "x"))]
    fn berezin(&self, block: &str) -> PyResult<PyElement> {
        Ok(PyElement(integration::berezin(&self.0, self.block(block)?)))
    }

    /// CK-extension in block x with parameter "y" or "x0", as {case, block, terms}.
    #[pyo3(signature = (param = "y", odd = None))]
    fn ck_extend<'py>(&self, py: Python<'py>, param: &str, odd: Option<&PyElement>) -> PyResult<Bound<'py, PyAny>> {
        let s = ck::ck_extend(&self.0, 0, self.param(param)?, odd.map(|o| &o.0)).map_err(err)?;
        json_to_py(py, &s.to_json(self.0.sig()))
    }

    /// The CK-extension summed into a single element.
    #[pyo3(signature = (param = "y", odd = None))]
    fn ck_extension(&self, param: &str, odd: Option<&PyElement>) -> PyResult<PyElement> {
        let s = ck::ck_extend(&self.0, 0, self.param(param)?, odd.map(|o| &o.0)).map_err(err)?;
        Ok(PyElement(s.materialize(self.0.sig())))
    }

    /// The plane-wave form of the CK-extension. Needs a signature built with plane_wave=True.
    #[pyo3(signature = (param = "y", odd = None))]
    fn plane_wave_decomposition(&self, param: &str, odd: Option<&PyElement>) -> PyResult<PyElement> {
        let w = self.block("w")?;
        let r = planewave::pw_decomposition(&self.0, 0, w, self.param(param)?, odd.map(|o| &o.0)).map_err(err)?;
        Ok(PyElement(r))
    }
}

/// The Cauchy kernel of the (m|2n) super Dirac operator as a closed form.
#[pyfunction]
fn cauchy_kernel(m: usize, n: usize) -> PyResult<PyElement> {
    Ok(PyElement(cauchy::cauchy_kernel(m, n).map_err(err)?.element()))
}

/// Taylor series of the Cauchy kernel in x, as {case, block, terms}.
#[pyfunction]
#[pyo3(signature = (m, n, degree = 6))]
fn cauchy_kernel_series<'py>(py: Python<'py>, m: usize, n: usize, degree: usize) -> PyResult<Bound<'py, PyAny>> {
    let k = cauchy::cauchy_kernel_series(m, n, degree).map_err(err)?;
    match &k.repr {
        cauchy::KernelRepr::Series(s) => json_to_py(py, &s.to_json(&k.sig)),
        cauchy::KernelRepr::Fraction(_) => Err(PyValueError::new_err("expected a series")),
    }
}

/// Both sides of the plane-wave decomposition of the Cauchy kernel through x-degree `degree`.
#[pyfunction]
#[pyo3(signature = (m, n, degree = 4))]
fn verify_pwdck(m: usize, n: usize, degree: usize) -> PyResult<(bool, String, String)> {
    let r = cauchy::verify_pwdck(m, n, degree).map_err(err)?;
    Ok((r.passed(), render(&r.kernel), render(&r.decomposition)))
}

/// Runs a verification suite and returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (suite = "all", degree = 4, seed = 42, cases = 5))]
fn verify<'py>(py: Python<'py>, suite: &str, degree: usize, seed: u64, cases: usize) -> PyResult<Bound<'py, PyAny>> {
    let grid = Grid { degree, seed, cases, ..Grid::default() };
    let checks = py.detach(|| suites::run_suite(suite, &grid)).map_err(err)?;
    let echo =
        CommandEcho { verb: "verify".into(), suite: Some(suite.into()), degree, seed, cases, ..Default::default() };
    json_to_py(py, &Report::new(echo, checks))
}

#[pymodule]
fn superck(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySignature>()?;
    m.add_class::<PyElement>()?;
    m.add_function(wrap_pyfunction!(cauchy_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(cauchy_kernel_series, m)?)?;
    m.add_function(wrap_pyfunction!(verify_pwdck, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("SUITES", suites::SUITES.to_vec())?;
    m.add("REPORT_SCHEMA", superck_core::report::REPORT_SCHEMA)?;
    Ok(())
}

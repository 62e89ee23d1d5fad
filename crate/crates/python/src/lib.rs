//! Python bindings for the polariscope core library.

use polariscope::experiments::{self, SweepGrid};
use polariscope::observables::{atomic_energy, photon_number, DipoleOperator, StateVector};
use polariscope::spectra::{self, DEFAULT_LINE_THRESHOLD};
use polariscope::{self as core, Coupling, Error, FockBasis};
use pyo3::exceptions::{PyArithmeticError, PyIndexError, PyOSError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Io { .. } => PyOSError::new_err(e.to_string()),
        Error::NonConvergence { .. }
        | Error::InvalidMatrix(_)
        | Error::BlockLeak { .. }
        | Error::AmbiguousTracking { .. } => PyArithmeticError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn coupling(name: &str) -> PyResult<Coupling> {
    match name {
        "full" | "rabi" => Ok(Coupling::Rabi),
        "rwa" => Ok(Coupling::Rwa),
        _ => Err(PyValueError::new_err(format!(
            "coupling must be 'full' or 'rwa' (got '{name}')"
        ))),
    }
}

#[pyclass(name = "ModelParams", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PyModelParams(core::ModelParams);

#[pymethods]
impl PyModelParams {
    #[new]
    #[pyo3(signature = (omega1 = 0.0, omega2 = 1.0, omega_c = 1.0, lam = 0.0))]
    fn new(omega1: f64, omega2: f64, omega_c: f64, lam: f64) -> PyResult<Self> {
        core::ModelParams::new(omega1, omega2, omega_c, lam)
            .map(Self)
            .map_err(to_py)
    }

    #[getter]
    fn omega1(&self) -> f64 {
        self.0.omega1()
    }

    #[getter]
    fn omega2(&self) -> f64 {
        self.0.omega2()
    }

    #[getter]
    fn omega_c(&self) -> f64 {
        self.0.omega_c()
    }

    #[getter]
    fn lam(&self) -> f64 {
        self.0.lambda()
    }

    #[getter]
    fn detuning(&self) -> f64 {
        self.0.detuning()
    }

    fn with_lambda(&self, lam: f64) -> PyResult<Self> {
        self.0.with_lambda(lam).map(Self).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!(
            "ModelParams(omega1={}, omega2={}, omega_c={}, lam={})",
            self.0.omega1(),
            self.0.omega2(),
            self.0.omega_c(),
            self.0.lambda()
        )
    }
}

/// Eigenpairs; model-built systems also carry their Fock basis.
#[pyclass(name = "EigenSystem", frozen)]
struct PyEigenSystem {
    eig: core::EigenSystem,
    basis: Option<FockBasis>,
}

impl PyEigenSystem {
    fn basis(&self) -> PyResult<&FockBasis> {
        self.basis
            .as_ref()
            .ok_or_else(|| PyValueError::new_err("eigensystem was not built from the model"))
    }

    fn state(&self, k: usize) -> PyResult<StateVector<'_>> {
        self.check(k)?;
        StateVector::eigenstate(self.basis()?, &self.eig, k).map_err(to_py)
    }

    fn check(&self, k: usize) -> PyResult<()> {
        if k < self.eig.dim() {
            Ok(())
        } else {
            Err(PyIndexError::new_err(format!("state {k} out of range")))
        }
    }
}

#[pymethods]
impl PyEigenSystem {
    #[getter]
    fn dim(&self) -> usize {
        self.eig.dim()
    }

    #[getter]
    fn eigenvalues(&self) -> Vec<f64> {
        self.eig.eigenvalues().to_vec()
    }

    #[getter]
    fn parities(&self) -> Vec<&'static str> {
        self.eig.parities().iter().map(|p| p.as_str()).collect()
    }

    fn eigenvector(&self, k: usize) -> PyResult<Vec<f64>> {
        self.check(k)?;
        Ok(self.eig.eigenvector(k).to_vec())
    }

    fn orthonormality_error(&self) -> f64 {
        self.eig.orthonormality_error()
    }

    fn photon_number(&self, k: usize) -> PyResult<f64> {
        Ok(photon_number(&self.state(k)?))
    }

    fn atomic_energy(&self, k: usize, params: PyModelParams) -> PyResult<f64> {
        Ok(atomic_energy(&self.state(k)?, &params.0))
    }

    fn __len__(&self) -> usize {
        self.eig.dim()
    }
}

#[pyclass(name = "SpectralLine", frozen, get_all)]
struct PySpectralLine {
    from_index: usize,
    to_index: usize,
    frequency: f64,
    raw_intensity: f64,
    intensity: f64,
}

#[pymethods]
impl PySpectralLine {
    fn __repr__(&self) -> String {
        format!(
            "SpectralLine(to_index={}, frequency={:.6}, intensity={:.6})",
            self.to_index, self.frequency, self.intensity
        )
    }
}

#[pyclass(name = "SweepRow", frozen, get_all)]
struct PySweepRow {
    lam: f64,
    regime: &'static str,
    energies_full: Vec<f64>,
    energies_rwa: Vec<f64>,
    photon_numbers_full: Vec<f64>,
    photon_numbers_rwa: Vec<f64>,
    atomic_energies_full: Vec<f64>,
    atomic_energies_rwa: Vec<f64>,
    nu_full: Vec<f64>,
    nu_rwa: Vec<f64>,
    delta_nu_full: f64,
    delta_nu_rwa: f64,
    labels_full: Vec<usize>,
    labels_rwa: Vec<usize>,
}

/// Hamiltonian matrix as a list of rows.
#[pyfunction]
#[pyo3(signature = (params, n_max = 14, kind = "full"))]
fn build_hamiltonian(params: PyModelParams, n_max: usize, kind: &str) -> PyResult<Vec<Vec<f64>>> {
    let basis = core::build_basis(n_max);
    let h = core::build_hamiltonian(coupling(kind)?, &params.0, &basis);
    Ok((0..h.dim()).map(|i| h.row(i).to_vec()).collect())
}

#[pyfunction]
#[pyo3(signature = (matrix, tol = 1e-12))]
fn diagonalize(py: Python<'_>, matrix: Vec<Vec<f64>>, tol: f64) -> PyResult<PyEigenSystem> {
    let m = core::SymMatrix::from_rows(&matrix).map_err(to_py)?;
    let eig = py.detach(|| core::diagonalize(&m, tol)).map_err(to_py)?;
    Ok(PyEigenSystem { eig, basis: None })
}

/// Build and diagonalize one Hamiltonian.
#[pyfunction]
#[pyo3(signature = (params, n_max = 14, kind = "full", tol = 1e-12))]
fn solve(
    py: Python<'_>,
    params: PyModelParams,
    n_max: usize,
    kind: &str,
    tol: f64,
) -> PyResult<PyEigenSystem> {
    let c = coupling(kind)?;
    let basis = core::build_basis(n_max);
    let eig = py
        .detach(|| core::diagonalize(&core::build_hamiltonian(c, &params.0, &basis), tol))
        .map_err(to_py)?;
    Ok(PyEigenSystem {
        eig,
        basis: Some(basis),
    })
}

/// `(ε₋, ε₊)` of excitation block `n`.
#[pyfunction]
fn rwa_levels(params: PyModelParams, n: usize) -> PyResult<(f64, f64)> {
    let (m, p) = spectra::rwa_analytic_levels(&params.0, n).map_err(to_py)?;
    Ok((m.energy, p.energy))
}

#[pyfunction]
fn rwa_ground_energy(params: PyModelParams) -> f64 {
    spectra::rwa_ground_energy(&params.0)
}

#[pyfunction]
#[pyo3(signature = (lam, omega_c = 1.0))]
fn classify_regime(lam: f64, omega_c: f64) -> &'static str {
    core::classify_regime(lam, omega_c).as_str()
}

#[pyfunction]
#[pyo3(signature = (params, n_max = 14, kind = "full", threshold = DEFAULT_LINE_THRESHOLD, hermitian = false))]
fn absorption_lines(
    params: PyModelParams,
    n_max: usize,
    kind: &str,
    threshold: f64,
    hermitian: bool,
) -> PyResult<Vec<PySpectralLine>> {
    let basis = core::build_basis(n_max);
    let h = core::build_hamiltonian(coupling(kind)?, &params.0, &basis);
    let eig = core::diagonalize(&h, 1e-12).map_err(to_py)?;
    let op = if hermitian {
        DipoleOperator::Hermitian
    } else {
        DipoleOperator::Raising
    };
    let lines = spectra::absorption_lines_with(&eig, &basis, 0, threshold, op).map_err(to_py)?;
    Ok(lines
        .into_iter()
        .map(|l| PySpectralLine {
            from_index: l.from_index,
            to_index: l.to_index,
            frequency: l.frequency,
            raw_intensity: l.raw_intensity,
            intensity: l.intensity,
        })
        .collect())
}

/// Sweep `λ` over `[lambda_min, lambda_max]`; `params.lam` is ignored.
#[pyfunction]
#[pyo3(signature = (params, lambda_max = 1.2, steps = 121, n_max = 14, k_states = 7, lambda_min = 0.0))]
fn run_sweep(
    py: Python<'_>,
    params: PyModelParams,
    lambda_max: f64,
    steps: usize,
    n_max: usize,
    k_states: usize,
    lambda_min: f64,
) -> PyResult<Vec<PySweepRow>> {
    let grid = SweepGrid::new(lambda_min, lambda_max, steps, params.0).map_err(to_py)?;
    let rows = py
        .detach(|| experiments::run_sweep(&grid, n_max, k_states))
        .map_err(to_py)?;
    Ok(rows
        .into_iter()
        .map(|r| PySweepRow {
            lam: r.lambda,
            regime: r.regime.as_str(),
            energies_full: r.energies_full,
            energies_rwa: r.energies_rwa,
            photon_numbers_full: r.photon_numbers_full,
            photon_numbers_rwa: r.photon_numbers_rwa,
            atomic_energies_full: r.atomic_energies_full,
            atomic_energies_rwa: r.atomic_energies_rwa,
            nu_full: r.nu_full,
            nu_rwa: r.nu_rwa,
            delta_nu_full: r.delta_nu_full,
            delta_nu_rwa: r.delta_nu_rwa,
            labels_full: r.labels_full,
            labels_rwa: r.labels_rwa,
        })
        .collect())
}

/// `[(n_max, energies, max_deviation)]` against the largest truncation.
#[pyfunction]
#[pyo3(signature = (params, n_max_list, k_states = 7))]
fn convergence(
    py: Python<'_>,
    params: PyModelParams,
    n_max_list: Vec<usize>,
    k_states: usize,
) -> PyResult<Vec<(usize, Vec<f64>, f64)>> {
    let table = py
        .detach(|| experiments::convergence_study(&params.0, &n_max_list, k_states))
        .map_err(to_py)?;
    Ok(table
        .rows
        .into_iter()
        .map(|r| (r.n_max, r.energies, r.max_deviation))
        .collect())
}

#[pymodule]
#[pyo3(name = "polariscope")]
fn polariscope_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyModelParams>()?;
    m.add_class::<PyEigenSystem>()?;
    m.add_class::<PySpectralLine>()?;
    m.add_class::<PySweepRow>()?;
    m.add_function(wrap_pyfunction!(build_hamiltonian, m)?)?;
    m.add_function(wrap_pyfunction!(diagonalize, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(rwa_levels, m)?)?;
    m.add_function(wrap_pyfunction!(rwa_ground_energy, m)?)?;
    m.add_function(wrap_pyfunction!(classify_regime, m)?)?;
    m.add_function(wrap_pyfunction!(absorption_lines, m)?)?;
    m.add_function(wrap_pyfunction!(run_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(convergence, m)?)?;
    Ok(())
}

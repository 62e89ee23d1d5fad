//! Expectation values and dipole matrix elements in the product basis.

use crate::eigensolve::EigenSystem;
use crate::error::{Error, Result};
use crate::model::{Atom, FockBasis, ModelParams};

const NORM_TOL: f64 = 1e-10;

/// Borrowed real amplitudes on a `FockBasis`, unit norm.
#[derive(Debug, Clone, Copy)]
pub struct StateVector<'a> {
    basis: &'a FockBasis,
    amplitudes: &'a [f64],
}

impl<'a> StateVector<'a> {
    pub fn new(basis: &'a FockBasis, amplitudes: &'a [f64]) -> Result<Self> {
        if amplitudes.len() != basis.dim() {
            return Err(Error::BasisMismatch {
                left: amplitudes.len(),
                right: basis.dim(),
            });
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a * a).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(StateVector { basis, amplitudes })
    }

    /// Eigenvector `k` of `eig`, without copying.
    pub fn eigenstate(basis: &'a FockBasis, eig: &'a EigenSystem, k: usize) -> Result<Self> {
        Self::new(basis, eig.eigenvector(k))
    }

    pub fn basis(&self) -> &'a FockBasis {
        self.basis
    }

    pub fn amplitudes(&self) -> &'a [f64] {
        self.amplitudes
    }

    fn weights(&self) -> impl Iterator<Item = (crate::model::BasisState, f64)> + 'a {
        let basis = self.basis;
        self.amplitudes
            .iter()
            .enumerate()
            .map(move |(i, a)| (basis.state(i), a * a))
    }
}

/// `⟨a†a⟩`.
pub fn photon_number(state: &StateVector<'_>) -> f64 {
    state.weights().map(|(s, w)| s.photons as f64 * w).sum()
}

/// `(P(g), P(e))`, the summed weights on each atomic level.
pub fn atom_populations(state: &StateVector<'_>) -> (f64, f64) {
    state
        .weights()
        .fold((0.0, 0.0), |(g, e), (s, w)| match s.atom {
            Atom::Ground => (g + w, e),
            Atom::Excited => (g, e + w),
        })
}

/// `⟨ω₁|g⟩⟨g| + ω₂|e⟩⟨e|⟩`.
pub fn atomic_energy(state: &StateVector<'_>, params: &ModelParams) -> f64 {
    let (pg, pe) = atom_populations(state);
    params.omega1() * pg + params.omega2() * pe
}

/// Dipole operator used for line intensities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DipoleOperator {
    /// `|e⟩⟨g| ⊗ 1`.
    #[default]
    Raising,
    /// `(|e⟩⟨g| + |g⟩⟨e|) ⊗ 1`.
    Hermitian,
}

/// `⟨to| |e⟩⟨g| |from⟩ = Σ_n to(e,n) · from(g,n)`.
pub fn dipole_element(from: &StateVector<'_>, to: &StateVector<'_>) -> Result<f64> {
    dipole_element_with(from, to, DipoleOperator::Raising)
}

pub fn dipole_element_with(
    from: &StateVector<'_>,
    to: &StateVector<'_>,
    op: DipoleOperator,
) -> Result<f64> {
    if from.basis.dim() != to.basis.dim() {
        return Err(Error::BasisMismatch {
            left: from.basis.dim(),
            right: to.basis.dim(),
        });
    }
    let f = from.amplitudes;
    let t = to.amplitudes;
    let mut acc = 0.0;
    // canonical ordering pairs |g,n⟩ = 2n with |e,n⟩ = 2n+1
    for n in 0..=from.basis.n_max() {
        let (g, e) = (2 * n, 2 * n + 1);
        acc += t[e] * f[g];
        if op == DipoleOperator::Hermitian {
            acc += t[g] * f[e];
        }
    }
    Ok(acc)
}

/// Split of an eigenvalue into field, zero-point, atomic and interaction parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyPartition {
    pub field: f64,
    pub zero_point: f64,
    pub atomic: f64,
    /// Eigenvalue minus the other three terms.
    pub interaction: f64,
}

impl EnergyPartition {
    pub fn total(&self) -> f64 {
        self.field + self.zero_point + self.atomic + self.interaction
    }
}

pub fn energy_partition(
    state: &StateVector<'_>,
    params: &ModelParams,
    eigenvalue: f64,
) -> EnergyPartition {
    let field = photon_number(state) * params.omega_c();
    let zero_point = 0.5 * params.omega_c();
    let atomic = atomic_energy(state, params);
    EnergyPartition {
        field,
        zero_point,
        atomic,
        interaction: eigenvalue - field - zero_point - atomic,
    }
}

/// Excitation number `N` if all but `tol` of the weight sits in block `N`.
pub fn excitation_block(state: &StateVector<'_>, tol: f64) -> Option<usize> {
    let (dominant, _) = state.weights().fold((None, 0.0), |(best, bw), (s, w)| {
        if w > bw {
            (Some(s.excitation_count()), w)
        } else {
            (best, bw)
        }
    });
    let block = dominant?;
    let outside: f64 = state
        .weights()
        .filter(|(s, _)| s.excitation_count() != block)
        .map(|(_, w)| w)
        .sum();
    (outside <= tol).then_some(block)
}

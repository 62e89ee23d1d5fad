//! Physical parameters, the truncated product basis `|atom, n⟩`, and the
//! Hamiltonian matrices of the full (Rabi) and rotating-wave models.
//!
//! Units: ħ = 1. The basis is interleaved, `index(|g,n⟩) = 2n` and
//! `index(|e,n⟩) = 2n + 1`.

use std::fmt;

use crate::error::{Error, Result};

/// Default photon cutoff: 15 Fock levels, dimension 30.
pub const DEFAULT_N_MAX: usize = 14;

/// Energies and coupling of a two-level emitter in a single-mode cavity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    omega1: f64,
    omega2: f64,
    omega_c: f64,
    lambda: f64,
}

impl ModelParams {
    pub fn new(omega1: f64, omega2: f64, omega_c: f64, lambda: f64) -> Result<Self> {
        let params = ModelParams {
            omega1,
            omega2,
            omega_c,
            lambda,
        };
        params.validate()?;
        Ok(params)
    }

    /// `ω₁ = 0`, `ω₂ = 1`, `ω_c = 1`: the emitter resonant with the cavity.
    pub fn resonant(lambda: f64) -> Result<Self> {
        Self::new(0.0, 1.0, 1.0, lambda)
    }

    fn validate(&self) -> Result<()> {
        let all = [self.omega1, self.omega2, self.omega_c, self.lambda];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::Validation(
                "all of omega1, omega2, omega_c, lambda must be finite".into(),
            ));
        }
        if self.omega_c <= 0.0 {
            return Err(Error::Validation(format!(
                "omega_c must be > 0 (got {})",
                self.omega_c
            )));
        }
        if self.lambda < 0.0 {
            return Err(Error::Validation(format!(
                "lambda must be >= 0 (got {})",
                self.lambda
            )));
        }
        if self.omega2 <= self.omega1 {
            return Err(Error::Validation(format!(
                "omega2 must exceed omega1 (got omega1 = {}, omega2 = {})",
                self.omega1, self.omega2
            )));
        }
        Ok(())
    }

    pub fn omega1(&self) -> f64 {
        self.omega1
    }

    pub fn omega2(&self) -> f64 {
        self.omega2
    }

    pub fn omega_c(&self) -> f64 {
        self.omega_c
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Bare atomic transition frequency `ω₂ − ω₁`.
    pub fn omega21(&self) -> f64 {
        self.omega2 - self.omega1
    }

    /// Detuning `Δ = ω₂₁ − ω_c`.
    pub fn detuning(&self) -> f64 {
        self.omega21() - self.omega_c
    }

    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        Self::new(self.omega1, self.omega2, self.omega_c, lambda)
    }

    /// Multiply every energy scale (and the coupling) by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if factor <= 0.0 || !factor.is_finite() {
            return Err(Error::Validation(format!(
                "scale factor must be finite and > 0 (got {factor})"
            )));
        }
        Self::new(
            self.omega1 * factor,
            self.omega2 * factor,
            self.omega_c * factor,
            self.lambda * factor,
        )
    }
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams {
            omega1: 0.0,
            omega2: 1.0,
            omega_c: 1.0,
            lambda: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Ground,
    Excited,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_count(count: usize) -> Self {
        if count.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// Product state `|atom⟩ ⊗ |photons⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisState {
    pub atom: Atom,
    pub photons: usize,
}

impl BasisState {
    pub fn ground(photons: usize) -> Self {
        BasisState {
            atom: Atom::Ground,
            photons,
        }
    }

    pub fn excited(photons: usize) -> Self {
        BasisState {
            atom: Atom::Excited,
            photons,
        }
    }

    /// Photons plus one if the emitter is excited.
    pub fn excitation_count(&self) -> usize {
        self.photons + usize::from(self.atom == Atom::Excited)
    }

    pub fn parity(&self) -> Parity {
        Parity::of_count(self.excitation_count())
    }
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = match self.atom {
            Atom::Ground => 'g',
            Atom::Excited => 'e',
        };
        write!(f, "|{a},{}>", self.photons)
    }
}

pub fn excitation_count(state: &BasisState) -> usize {
    state.excitation_count()
}

pub fn parity(state: &BasisState) -> Parity {
    state.parity()
}

/// Parity of the canonical basis index `i` (`|g,n⟩ = 2n`, `|e,n⟩ = 2n+1`).
pub fn parity_of_index(i: usize) -> Parity {
    Parity::of_count(i / 2 + i % 2)
}

/// Canonically ordered truncated product basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockBasis {
    n_max: usize,
    states: Vec<BasisState>,
}

impl FockBasis {
    pub fn new(n_max: usize) -> Self {
        let states = (0..=n_max)
            .flat_map(|n| [BasisState::ground(n), BasisState::excited(n)])
            .collect();
        FockBasis { n_max, states }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[BasisState] {
        &self.states
    }

    pub fn state(&self, index: usize) -> BasisState {
        self.states[index]
    }

    /// Canonical index of `state`, `None` if it lies above the cutoff.
    pub fn index_of(&self, state: BasisState) -> Option<usize> {
        (state.photons <= self.n_max)
            .then(|| 2 * state.photons + usize::from(state.atom == Atom::Excited))
    }

    pub fn parities(&self) -> impl Iterator<Item = Parity> + '_ {
        self.states.iter().map(BasisState::parity)
    }
}

pub fn build_basis(n_max: usize) -> FockBasis {
    FockBasis::new(n_max)
}

/// Dense real symmetric matrix stored row-major.
///
/// Off-diagonal entries can only be written in symmetric pairs, so
/// `get(i, j) == get(j, i)` holds bit-for-bit.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    entries: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Self {
        SymMatrix {
            dim,
            entries: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Build from explicit rows; rejects ragged, asymmetric or non-finite input.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidMatrix("matrix must be non-empty".into()));
        }
        let mut m = Self::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::InvalidMatrix(format!(
                    "row {i} has length {} (expected {dim})",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::InvalidMatrix(format!(
                        "entry ({i}, {j}) is not finite"
                    )));
                }
                if v != rows[j][i] {
                    return Err(Error::InvalidMatrix(format!(
                        "entry ({i}, {j}) = {v} differs from ({j}, {i}) = {}",
                        rows[j][i]
                    )));
                }
                m.entries[i * dim + j] = v;
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    /// Set `(i, j)` and `(j, i)` together.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.entries[i * self.dim + j] = value;
        self.entries[j * self.dim + i] = value;
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Principal submatrix on `indices`, in the order given.
    pub fn submatrix(&self, indices: &[usize]) -> SymMatrix {
        let mut sub = SymMatrix::zeros(indices.len());
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate().take(a + 1) {
                sub.set(a, b, self.get(i, j));
            }
        }
        sub
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Which coupling term is kept in the Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coupling {
    /// `λ(σ₊ + σ₋)(a + a†)`, counter-rotating terms included.
    Rabi,
    /// `λ(σ₊a + σ₋a†)`, excitation-conserving terms only.
    Rwa,
}

impl Coupling {
    pub fn as_str(&self) -> &'static str {
        match self {
            Coupling::Rabi => "full",
            Coupling::Rwa => "rwa",
        }
    }
}

fn diagonal_part(params: &ModelParams, basis: &FockBasis) -> SymMatrix {
    let mut h = SymMatrix::zeros(basis.dim());
    for (i, s) in basis.states().iter().enumerate() {
        let atom = match s.atom {
            Atom::Ground => params.omega1,
            Atom::Excited => params.omega2,
        };
        h.set(i, i, atom + (s.photons as f64 + 0.5) * params.omega_c);
    }
    h
}

pub fn build_hamiltonian(coupling: Coupling, params: &ModelParams, basis: &FockBasis) -> SymMatrix {
    let mut h = diagonal_part(params, basis);
    let lam = params.lambda;
    for n in 0..=basis.n_max() {
        let g = 2 * n;
        // ⟨e,n−1| σ₊ a |g,n⟩ = √n
        if n >= 1 {
            h.set(g, 2 * (n - 1) + 1, lam * (n as f64).sqrt());
        }
        // ⟨e,n+1| σ₊ a† |g,n⟩ = √(n+1)
        if coupling == Coupling::Rabi && n < basis.n_max() {
            h.set(g, 2 * (n + 1) + 1, lam * ((n + 1) as f64).sqrt());
        }
    }
    h
}

pub fn build_rabi_hamiltonian(params: &ModelParams, basis: &FockBasis) -> SymMatrix {
    build_hamiltonian(Coupling::Rabi, params, basis)
}

pub fn build_rwa_hamiltonian(params: &ModelParams, basis: &FockBasis) -> SymMatrix {
    build_hamiltonian(Coupling::Rwa, params, basis)
}

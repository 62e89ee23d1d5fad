//! Spectra of a two-level emitter coupled to one cavity mode, with and
//! without the rotating-wave approximation.
//!
//! The crate builds the truncated Fock-space Hamiltonians ([`model`]),
//! diagonalizes them with an in-house Jacobi solver ([`eigensolve`]),
//! evaluates photon numbers, atomic energies and dipole elements
//! ([`observables`]), derives transition frequencies, absorption sticks and
//! coupling regimes ([`spectra`]), and runs λ sweeps and truncation studies
//! ([`experiments`]). [`config`], [`dataset`], [`plot`] and [`cli`] provide
//! the command-line front end.

pub mod cli;
pub mod config;
pub mod dataset;
pub mod eigensolve;
pub mod error;
pub mod experiments;
pub mod model;
pub mod observables;
pub mod plot;
pub mod spectra;

pub use dataset::{Dataset, Format};
pub use eigensolve::{
    diagonalize, diagonalize_with, parity_blocks, EigenSystem, SolverConfig, StateParity,
};
pub use error::{Error, Result};
pub use model::{
    build_basis, build_hamiltonian, build_rabi_hamiltonian, build_rwa_hamiltonian, Atom,
    BasisState, Coupling, FockBasis, ModelParams, Parity, SymMatrix,
};
pub use spectra::{classify_regime, Regime, SpectralLine};

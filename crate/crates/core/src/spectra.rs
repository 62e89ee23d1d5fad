//! Closed-form RWA levels, transition frequencies, stick absorption
//! spectra and coupling-regime classification.

use std::fmt;

use crate::eigensolve::EigenSystem;
use crate::error::{Error, Result};
use crate::model::{FockBasis, ModelParams};
use crate::observables::{dipole_element_with, excitation_block, DipoleOperator, StateVector};

/// Default relative intensity cutoff for absorption lines.
pub const DEFAULT_LINE_THRESHOLD: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Minus,
    Plus,
}

/// Polariton level `P±⁽ⁿ⁾` of the RWA Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RwaLevel {
    pub block_n: usize,
    pub branch: Branch,
    pub energy: f64,
}

/// `ε±⁽ⁿ⁾ = ½(ω₁+ω₂) + nω_c ± ½√(Δ² + 4nλ²)`, from the 2×2 block
/// `{|g,n⟩, |e,n−1⟩}` with the zero-point term included.
pub fn rwa_analytic_levels(params: &ModelParams, n: usize) -> Result<(RwaLevel, RwaLevel)> {
    if n == 0 {
        return Err(Error::Validation(
            "polariton blocks start at n = 1; use rwa_ground_energy for |g,0>".into(),
        ));
    }
    let centre = 0.5 * (params.omega1() + params.omega2()) + n as f64 * params.omega_c();
    let d = params.detuning();
    let lam = params.lambda();
    let half = 0.5 * (d * d + 4.0 * n as f64 * lam * lam).sqrt();
    Ok((
        RwaLevel {
            block_n: n,
            branch: Branch::Minus,
            energy: centre - half,
        },
        RwaLevel {
            block_n: n,
            branch: Branch::Plus,
            energy: centre + half,
        },
    ))
}

/// Energy of the decoupled vacuum `|g,0⟩`: `ω₁ + ½ω_c`.
pub fn rwa_ground_energy(params: &ModelParams) -> f64 {
    params.omega1() + 0.5 * params.omega_c()
}

/// Every eigenvalue of the truncated RWA matrix in closed form, ascending:
/// `|g,0⟩`, blocks `1..=n_max`, and the unpaired top state `|e,n_max⟩`.
pub fn rwa_truncated_spectrum(params: &ModelParams, n_max: usize) -> Vec<f64> {
    let mut levels = vec![rwa_ground_energy(params)];
    for n in 1..=n_max {
        let (m, p) = rwa_analytic_levels(params, n).expect("n >= 1");
        levels.push(m.energy);
        levels.push(p.energy);
    }
    levels.push(params.omega2() + (n_max as f64 + 0.5) * params.omega_c());
    levels.sort_by(f64::total_cmp);
    levels
}

/// `ν_k = E_k − E_ground` for every `k > ground_index`.
pub fn transition_frequencies(eig: &EigenSystem, ground_index: usize) -> Vec<f64> {
    let e0 = eig.eigenvalue(ground_index);
    eig.eigenvalues()[ground_index + 1..]
        .iter()
        .map(|e| e - e0)
        .collect()
}

/// Energy-sorted indices of `|g,0⟩`, `P−⁽¹⁾` and `P+⁽¹⁾` in an RWA eigensystem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RwaLowIndices {
    pub vacuum: usize,
    pub p1_minus: usize,
    pub p1_plus: usize,
}

/// Locate the zero- and one-excitation eigenstates by their block content.
pub fn rwa_low_indices(eig: &EigenSystem, basis: &FockBasis) -> Option<RwaLowIndices> {
    let mut vacuum = None;
    let mut block1 = Vec::with_capacity(2);
    for k in 0..eig.dim() {
        let state = StateVector::new(basis, eig.eigenvector(k)).ok()?;
        match excitation_block(&state, 1e-12) {
            Some(0) => vacuum = Some(k),
            Some(1) => block1.push(k),
            _ => {}
        }
    }
    match (vacuum, block1.as_slice()) {
        (Some(vacuum), &[a, b]) => Some(RwaLowIndices {
            vacuum,
            p1_minus: a.min(b),
            p1_plus: a.max(b),
        }),
        _ => None,
    }
}

/// A ground-to-excited absorption stick.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralLine {
    pub from_index: usize,
    pub to_index: usize,
    pub frequency: f64,
    /// Squared dipole element.
    pub raw_intensity: f64,
    /// `raw_intensity` relative to the strongest line.
    pub intensity: f64,
}

pub fn absorption_lines(
    eig: &EigenSystem,
    basis: &FockBasis,
    threshold: f64,
) -> Result<Vec<SpectralLine>> {
    absorption_lines_with(eig, basis, 0, threshold, DipoleOperator::Raising)
}

/// Lines from `ground_index` to every higher eigenstate whose relative
/// intensity exceeds `threshold`, sorted by frequency.
pub fn absorption_lines_with(
    eig: &EigenSystem,
    basis: &FockBasis,
    ground_index: usize,
    threshold: f64,
    op: DipoleOperator,
) -> Result<Vec<SpectralLine>> {
    if threshold.is_nan() || threshold < 0.0 {
        return Err(Error::Validation(format!(
            "line threshold must be >= 0 (got {threshold})"
        )));
    }
    let ground = StateVector::eigenstate(basis, eig, ground_index)?;
    let e0 = eig.eigenvalue(ground_index);
    let mut raw = Vec::new();
    for k in ground_index + 1..eig.dim() {
        let to = StateVector::eigenstate(basis, eig, k)?;
        let d = dipole_element_with(&ground, &to, op)?;
        raw.push((k, eig.eigenvalue(k) - e0, d * d));
    }
    let strongest = raw.iter().fold(0.0_f64, |m, &(_, _, i)| m.max(i));
    if strongest == 0.0 {
        return Ok(Vec::new());
    }
    let mut lines: Vec<SpectralLine> = raw
        .into_iter()
        .map(|(k, frequency, raw_intensity)| SpectralLine {
            from_index: ground_index,
            to_index: k,
            frequency,
            raw_intensity,
            intensity: raw_intensity / strongest,
        })
        .filter(|l| l.intensity > threshold)
        .collect();
    lines.sort_by(|a, b| {
        a.frequency
            .total_cmp(&b.frequency)
            .then(a.to_index.cmp(&b.to_index))
    });
    Ok(lines)
}

/// Coupling regime by `λ/ω_c`, ordered from weakest to strongest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regime {
    Moderate,
    Strong,
    UltraStrong,
    DeepStrong,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Moderate => "moderate",
            Regime::Strong => "strong",
            Regime::UltraStrong => "ultra-strong",
            Regime::DeepStrong => "deep-strong",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Boundaries belong to the weaker regime: `(0, 0.1]`, `(0.1, 0.5]`,
/// `(0.5, 1.0]`, `(1.0, ∞)`.
pub fn classify_regime(lambda: f64, omega_c: f64) -> Regime {
    debug_assert!(omega_c > 0.0 && lambda >= 0.0);
    let r = lambda / omega_c;
    if r <= 0.1 {
        Regime::Moderate
    } else if r <= 0.5 {
        Regime::Strong
    } else if r <= 1.0 {
        Regime::UltraStrong
    } else {
        Regime::DeepStrong
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn levels(lam: f64, n: usize) -> (f64, f64) {
        let (m, p) = rwa_analytic_levels(&ModelParams::resonant(lam).unwrap(), n).unwrap();
        (m.energy, p.energy)
    }

    #[test]
    fn first_block_at_half_coupling() {
        let (m, p) = levels(0.5, 1);
        assert!((m - 1.0).abs() < 1e-15);
        assert!((p - 2.0).abs() < 1e-15);
        assert!((p - m - 1.0).abs() < 1e-15);
    }

    #[test]
    fn vacuum_degeneracy_at_unit_coupling() {
        let (m, _) = levels(1.0, 1);
        let eg = rwa_ground_energy(&ModelParams::resonant(1.0).unwrap());
        assert_eq!(eg, 0.5);
        assert!((m - eg).abs() < 1e-15);
    }

    #[test]
    fn second_block_splitting() {
        let (m, p) = levels(0.5, 2);
        assert!((p - m - 2.0 * 0.5 * 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn block_zero_rejected() {
        assert!(rwa_analytic_levels(&ModelParams::resonant(0.1).unwrap(), 0).is_err());
    }

    #[test]
    fn regime_examples_and_boundaries() {
        assert_eq!(classify_regime(0.05, 1.0), Regime::Moderate);
        assert_eq!(classify_regime(0.5, 1.0), Regime::Strong);
        assert_eq!(classify_regime(1.5, 1.0), Regime::DeepStrong);
        assert_eq!(classify_regime(0.1, 1.0), Regime::Moderate);
        assert_eq!(classify_regime(1.0, 1.0), Regime::UltraStrong);
        assert_eq!(classify_regime(0.0, 1.0), Regime::Moderate);
        assert_eq!(classify_regime(1.0, 2.0), Regime::Strong);
    }

    #[test]
    fn truncated_spectrum_length() {
        let p = ModelParams::resonant(0.3).unwrap();
        assert_eq!(rwa_truncated_spectrum(&p, 14).len(), 30);
    }
}

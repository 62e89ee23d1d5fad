//! Coupling-strength sweeps, state tracking, truncation convergence and the
//! per-figure datasets built from them.

use std::f64::consts::FRAC_1_SQRT_2;

use rayon::prelude::*;

use crate::dataset::{indexed_columns, Dataset, Value};
use crate::eigensolve::{diagonalize_with, EigenSystem, SolverConfig, StateParity};
use crate::error::{Error, Result};
use crate::model::{build_basis, build_hamiltonian, Coupling, FockBasis, ModelParams};
use crate::observables::{
    atomic_energy, excitation_block, photon_number, DipoleOperator, StateVector,
};
use crate::spectra::{
    absorption_lines_with, classify_regime, rwa_low_indices, transition_frequencies, Regime,
    SpectralLine, DEFAULT_LINE_THRESHOLD,
};

/// Number of eigenstates reported per row by default.
pub const DEFAULT_K_STATES: usize = 7;

/// Energy window inside which previous eigenstates count as one degenerate
/// cluster during tracking.
pub const TRACKING_DEGENERACY_TOL: f64 = 1e-9;

/// Uniform inclusive grid of coupling strengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepGrid {
    lambda_min: f64,
    lambda_max: f64,
    steps: usize,
    base: ModelParams,
}

impl SweepGrid {
    /// `base.lambda()` is ignored.
    pub fn new(lambda_min: f64, lambda_max: f64, steps: usize, base: ModelParams) -> Result<Self> {
        if !(lambda_min >= 0.0 && lambda_min < lambda_max && lambda_max.is_finite()) {
            return Err(Error::Validation(format!(
                "sweep grid needs 0 <= lambda_min < lambda_max (got [{lambda_min}, {lambda_max}])"
            )));
        }
        if steps < 2 {
            return Err(Error::Validation(format!(
                "sweep grid needs at least 2 steps (got {steps})"
            )));
        }
        Ok(SweepGrid {
            lambda_min,
            lambda_max,
            steps,
            base,
        })
    }

    /// `λ/ω_c ∈ [0, 1.2]` in 121 points.
    pub fn default_for(base: ModelParams) -> Self {
        Self::new(0.0, 1.2 * base.omega_c(), 121, base).expect("valid default grid")
    }

    pub fn lambda_min(&self) -> f64 {
        self.lambda_min
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn base(&self) -> &ModelParams {
        &self.base
    }

    pub fn points(&self) -> Vec<f64> {
        let span = self.lambda_max - self.lambda_min;
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.lambda_max
                } else {
                    self.lambda_min + span * i as f64 / last
                }
            })
            .collect()
    }

    pub fn params_at(&self, lambda: f64) -> Result<ModelParams> {
        self.base.with_lambda(lambda)
    }
}

/// Both Hamiltonians diagonalized at one coupling strength.
#[derive(Debug, Clone)]
pub struct PointSolution {
    pub params: ModelParams,
    pub full: EigenSystem,
    pub rwa: EigenSystem,
}

pub fn solve_point(
    params: &ModelParams,
    basis: &FockBasis,
    solver: &SolverConfig,
) -> Result<PointSolution> {
    let solve = |c| {
        diagonalize_with(&build_hamiltonian(c, params, basis), solver)
            .map_err(|e| e.at_lambda(params.lambda()))
    };
    Ok(PointSolution {
        params: *params,
        full: solve(Coupling::Rabi)?,
        rwa: solve(Coupling::Rwa)?,
    })
}

/// Observables of the lowest `K` eigenstates of both Hamiltonians at one λ.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub lambda: f64,
    pub energies_full: Vec<f64>,
    pub energies_rwa: Vec<f64>,
    pub photon_numbers_full: Vec<f64>,
    pub photon_numbers_rwa: Vec<f64>,
    pub atomic_energies_full: Vec<f64>,
    pub atomic_energies_rwa: Vec<f64>,
    /// `E_k − E_0`, `k = 1..K`.
    pub nu_full: Vec<f64>,
    pub nu_rwa: Vec<f64>,
    /// `E_2 − E_1` of the full Hamiltonian.
    pub delta_nu_full: f64,
    /// `ε₊⁽¹⁾ − ε₋⁽¹⁾`, identified by excitation block.
    pub delta_nu_rwa: f64,
    pub regime: Regime,
    pub parities_full: Vec<StateParity>,
    pub blocks_rwa: Vec<usize>,
    /// RWA energies of `|g,0⟩`, `P−⁽¹⁾`, `P+⁽¹⁾`.
    pub rwa_vacuum: f64,
    pub rwa_p1_minus: f64,
    pub rwa_p1_plus: f64,
    /// Curve labels from overlap tracking (label = energy index at the first grid point).
    pub labels_full: Vec<usize>,
    pub labels_rwa: Vec<usize>,
    /// Weakest overlap used to continue the labels from the previous grid
    /// point (1 at the first point); below 1/√2 the labels are unreliable.
    pub tracking_overlap: f64,
}

fn check_sizes(n_max: usize, k_states: usize) -> Result<()> {
    if n_max == 0 {
        return Err(Error::Validation("n_max must be >= 1 for sweeps".into()));
    }
    if k_states < 3 {
        return Err(Error::Validation(format!(
            "k_states must be >= 3 (got {k_states})"
        )));
    }
    if k_states > 2 * (n_max + 1) {
        return Err(Error::Validation(format!(
            "k_states = {k_states} exceeds the basis dimension {}",
            2 * (n_max + 1)
        )));
    }
    Ok(())
}

pub fn run_sweep(grid: &SweepGrid, n_max: usize, k_states: usize) -> Result<Vec<SweepRow>> {
    run_sweep_with(grid, n_max, k_states, &SolverConfig::default())
}

pub fn run_sweep_with(
    grid: &SweepGrid,
    n_max: usize,
    k_states: usize,
    solver: &SolverConfig,
) -> Result<Vec<SweepRow>> {
    check_sizes(n_max, k_states)?;
    let basis = build_basis(n_max);
    let solutions: Vec<PointSolution> = grid
        .points()
        .par_iter()
        .map(|&lam| solve_point(&grid.params_at(lam)?, &basis, solver))
        .collect::<Result<_>>()?;

    let dim = basis.dim();
    let mut labels_full: Vec<usize> = (0..dim).collect();
    let mut labels_rwa: Vec<usize> = (0..dim).collect();
    let mut rows = Vec::with_capacity(solutions.len());
    let mut tracking_overlap = 1.0;
    for (i, sol) in solutions.iter().enumerate() {
        if i > 0 {
            let prev = &solutions[i - 1];
            let lam = sol.params.lambda();
            let full = assign_states(&prev.full, &sol.full, TRACKING_DEGENERACY_TOL)
                .map_err(|e| e.at_lambda(lam))?;
            let rwa = assign_states(&prev.rwa, &sol.rwa, TRACKING_DEGENERACY_TOL)
                .map_err(|e| e.at_lambda(lam))?;
            labels_full = full.mapping.iter().map(|&j| labels_full[j]).collect();
            labels_rwa = rwa.mapping.iter().map(|&j| labels_rwa[j]).collect();
            tracking_overlap = full.min_overlap().min(rwa.min_overlap());
        }
        rows.push(build_row(
            sol,
            &basis,
            k_states,
            &labels_full[..k_states],
            &labels_rwa[..k_states],
            tracking_overlap,
        )?);
    }
    Ok(rows)
}

fn build_row(
    sol: &PointSolution,
    basis: &FockBasis,
    k: usize,
    labels_full: &[usize],
    labels_rwa: &[usize],
    tracking_overlap: f64,
) -> Result<SweepRow> {
    let params = &sol.params;
    let observe = |eig: &EigenSystem| -> Result<(Vec<f64>, Vec<f64>)> {
        let mut nbar = Vec::with_capacity(k);
        let mut eatom = Vec::with_capacity(k);
        for j in 0..k {
            let s = StateVector::eigenstate(basis, eig, j)?;
            nbar.push(photon_number(&s));
            eatom.push(atomic_energy(&s, params));
        }
        Ok((nbar, eatom))
    };
    let (photon_numbers_full, atomic_energies_full) = observe(&sol.full)?;
    let (photon_numbers_rwa, atomic_energies_rwa) = observe(&sol.rwa)?;

    let low = rwa_low_indices(&sol.rwa, basis).ok_or_else(|| {
        Error::InvalidMatrix(format!(
            "could not identify RWA polaritons at lambda = {}",
            params.lambda()
        ))
    })?;
    let rwa_e = sol.rwa.eigenvalues();
    let blocks_rwa = (0..k)
        .map(|j| {
            let s = StateVector::eigenstate(basis, &sol.rwa, j)?;
            excitation_block(&s, 1e-12).ok_or_else(|| {
                Error::InvalidMatrix(format!("RWA eigenstate {j} spans several blocks"))
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let full_e = sol.full.eigenvalues();
    Ok(SweepRow {
        lambda: params.lambda(),
        energies_full: full_e[..k].to_vec(),
        energies_rwa: rwa_e[..k].to_vec(),
        photon_numbers_full,
        photon_numbers_rwa,
        atomic_energies_full,
        atomic_energies_rwa,
        nu_full: transition_frequencies(&sol.full, 0)[..k - 1].to_vec(),
        nu_rwa: transition_frequencies(&sol.rwa, 0)[..k - 1].to_vec(),
        delta_nu_full: full_e[2] - full_e[1],
        delta_nu_rwa: rwa_e[low.p1_plus] - rwa_e[low.p1_minus],
        regime: classify_regime(params.lambda(), params.omega_c()),
        parities_full: sol.full.parities()[..k].to_vec(),
        blocks_rwa,
        rwa_vacuum: rwa_e[low.vacuum],
        rwa_p1_minus: rwa_e[low.p1_minus],
        rwa_p1_plus: rwa_e[low.p1_plus],
        labels_full: labels_full.to_vec(),
        labels_rwa: labels_rwa.to_vec(),
        tracking_overlap,
    })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Greedy maximum-overlap assignment: `mapping[i]` is the previous
/// eigenstate continued by current eigenstate `i`.
pub fn track_states(previous: &EigenSystem, current: &EigenSystem) -> Result<Vec<usize>> {
    track_states_with(previous, current, TRACKING_DEGENERACY_TOL)
}

/// As [`track_states`]. Previous states within `degeneracy_tol` in energy are
/// treated as one subspace: the ambiguity test uses the overlap with the
/// whole cluster (assigned members included), and the cluster's lowest unassigned index (among members
/// with comparable overlap) is taken, so split degenerate levels keep their
/// energy order.
pub fn track_states_with(
    previous: &EigenSystem,
    current: &EigenSystem,
    degeneracy_tol: f64,
) -> Result<Vec<usize>> {
    let tracked = assign_states(previous, current, degeneracy_tol)?;
    match tracked.worst {
        Some((index, overlap)) if overlap < FRAC_1_SQRT_2 => {
            Err(Error::AmbiguousTracking { index, overlap })
        }
        _ => Ok(tracked.mapping),
    }
}

/// Greedy assignment result, with the weakest subspace overlap seen.
#[derive(Debug, Clone, PartialEq)]
pub struct Tracking {
    pub mapping: Vec<usize>,
    /// `(current index, overlap)` of the least certain assignment.
    pub worst: Option<(usize, f64)>,
}

impl Tracking {
    pub fn min_overlap(&self) -> f64 {
        self.worst.map_or(1.0, |(_, o)| o)
    }
}

/// The assignment behind [`track_states_with`] without the ambiguity check.
pub fn assign_states(
    previous: &EigenSystem,
    current: &EigenSystem,
    degeneracy_tol: f64,
) -> Result<Tracking> {
    if previous.dim() != current.dim() {
        return Err(Error::BasisMismatch {
            left: previous.dim(),
            right: current.dim(),
        });
    }
    let n = current.dim();
    let mut used = vec![false; n];
    let mut mapping = Vec::with_capacity(n);
    let mut worst: Option<(usize, f64)> = None;
    for i in 0..n {
        let v = current.eigenvector(i);
        let tag = current.parity(i);
        let overlaps: Vec<f64> = (0..n)
            .map(|j| {
                if previous.parity(j) != tag {
                    f64::NAN
                } else {
                    dot(previous.eigenvector(j), v).abs()
                }
            })
            .collect();
        let best = (0..n)
            .filter(|&j| !used[j] && !overlaps[j].is_nan())
            .max_by(|&a, &b| overlaps[a].total_cmp(&overlaps[b]).then(b.cmp(&a)))
            .ok_or(Error::AmbiguousTracking {
                index: i,
                overlap: 0.0,
            })?;
        let e_best = previous.eigenvalue(best);
        let cluster: Vec<usize> = (0..n)
            .filter(|&j| {
                !overlaps[j].is_nan() && (previous.eigenvalue(j) - e_best).abs() <= degeneracy_tol
            })
            .collect();
        let subspace = cluster
            .iter()
            .map(|&j| overlaps[j] * overlaps[j])
            .sum::<f64>()
            .sqrt();
        if worst.is_none_or(|(_, o)| subspace < o) {
            worst = Some((i, subspace));
        }
        let floor = 0.5 * overlaps[best] * overlaps[best];
        let chosen = cluster
            .iter()
            .copied()
            .find(|&j| !used[j] && overlaps[j] * overlaps[j] >= floor)
            .unwrap_or(best);
        used[chosen] = true;
        mapping.push(chosen);
    }
    Ok(Tracking { mapping, worst })
}

/// Lowest-K full-Hamiltonian energies for one truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n_max: usize,
    pub energies: Vec<f64>,
    /// `max_k |E_k(n_max) − E_k(largest n_max)|`.
    pub max_deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub params: ModelParams,
    pub k_states: usize,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceTable {
    pub fn row(&self, n_max: usize) -> Option<&ConvergenceRow> {
        self.rows.iter().find(|r| r.n_max == n_max)
    }
}

pub fn convergence_study(
    params: &ModelParams,
    n_max_list: &[usize],
    k_states: usize,
) -> Result<ConvergenceTable> {
    convergence_study_with(params, n_max_list, k_states, &SolverConfig::default())
}

pub fn convergence_study_with(
    params: &ModelParams,
    n_max_list: &[usize],
    k_states: usize,
    solver: &SolverConfig,
) -> Result<ConvergenceTable> {
    if n_max_list.is_empty() {
        return Err(Error::Validation("n_max list is empty".into()));
    }
    if n_max_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Validation(
            "n_max list must be strictly ascending".into(),
        ));
    }
    if k_states == 0 || 2 * (n_max_list[0] + 1) < k_states {
        return Err(Error::Validation(format!(
            "every truncation must hold k_states = {k_states} states"
        )));
    }
    let spectra: Vec<Vec<f64>> = n_max_list
        .par_iter()
        .map(|&n_max| {
            let basis = build_basis(n_max);
            let h = build_hamiltonian(Coupling::Rabi, params, &basis);
            diagonalize_with(&h, solver)
                .map(|eig| eig.eigenvalues()[..k_states].to_vec())
                .map_err(|e| e.at_lambda(params.lambda()))
        })
        .collect::<Result<_>>()?;
    let reference = spectra.last().expect("non-empty").clone();
    let rows = n_max_list
        .iter()
        .zip(spectra)
        .map(|(&n_max, energies)| {
            let max_deviation = energies
                .iter()
                .zip(&reference)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            ConvergenceRow {
                n_max,
                energies,
                max_deviation,
            }
        })
        .collect();
    Ok(ConvergenceTable {
        params: *params,
        k_states,
        rows,
    })
}

/// Inputs for [`figure_datasets`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureConfig {
    pub grid: SweepGrid,
    pub n_max: usize,
    pub k_states: usize,
    pub fig5_lambda: f64,
    pub threshold: f64,
    pub dipole: DipoleOperator,
    pub solver: SolverConfig,
}

impl FigureConfig {
    pub fn new(base: ModelParams) -> Self {
        FigureConfig {
            grid: SweepGrid::default_for(base),
            n_max: crate::model::DEFAULT_N_MAX,
            k_states: DEFAULT_K_STATES,
            fig5_lambda: 0.5 * base.omega_c(),
            threshold: DEFAULT_LINE_THRESHOLD,
            dipole: DipoleOperator::Raising,
            solver: SolverConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureDatasets {
    pub sweep: Dataset,
    pub fig2: Dataset,
    pub fig3: Dataset,
    pub fig4_left: Dataset,
    pub fig4_right: Dataset,
    pub fig5: Dataset,
}

impl FigureDatasets {
    pub fn iter(&self) -> impl Iterator<Item = &Dataset> {
        [
            &self.sweep,
            &self.fig2,
            &self.fig3,
            &self.fig4_left,
            &self.fig4_right,
            &self.fig5,
        ]
        .into_iter()
    }
}

pub fn figure_datasets(config: &FigureConfig) -> Result<FigureDatasets> {
    let rows = run_sweep_with(&config.grid, config.n_max, config.k_states, &config.solver)?;
    let base = config.grid.base();
    let lines = absorption_datasets_lines(
        &base.with_lambda(config.fig5_lambda)?,
        config.n_max,
        config.threshold,
        config.dipole,
        &config.solver,
    )?;
    let (sweep, fig2, fig3, fig4_left, fig4_right) = sweep_datasets(&rows, base)?;
    Ok(FigureDatasets {
        sweep,
        fig2,
        fig3,
        fig4_left,
        fig4_right,
        fig5: fig5_dataset(&lines)?,
    })
}

/// Absorption lines of both Hamiltonians at `params.lambda()`.
pub fn absorption_datasets_lines(
    params: &ModelParams,
    n_max: usize,
    threshold: f64,
    dipole: DipoleOperator,
    solver: &SolverConfig,
) -> Result<Vec<(Coupling, SpectralLine)>> {
    let basis = build_basis(n_max);
    let sol = solve_point(params, &basis, solver)?;
    let mut out = Vec::new();
    for (c, eig) in [(Coupling::Rabi, &sol.full), (Coupling::Rwa, &sol.rwa)] {
        for line in absorption_lines_with(eig, &basis, 0, threshold, dipole)? {
            out.push((c, line));
        }
    }
    Ok(out)
}

pub fn fig5_dataset(lines: &[(Coupling, SpectralLine)]) -> Result<Dataset> {
    let schema = [
        "hamiltonian",
        "from_index",
        "to_index",
        "frequency",
        "raw_intensity",
        "intensity",
    ];
    let mut d = Dataset::new("fig5", schema.iter().map(|s| s.to_string()).collect());
    for (c, l) in lines {
        d.push_row(vec![
            c.as_str().into(),
            l.from_index.into(),
            l.to_index.into(),
            l.frequency.into(),
            l.raw_intensity.into(),
            l.intensity.into(),
        ])?;
    }
    Ok(d)
}

fn nums(v: &[f64]) -> impl Iterator<Item = Value> + '_ {
    v.iter().map(|&x| Value::Num(x))
}

fn ints(v: &[usize]) -> impl Iterator<Item = Value> + '_ {
    v.iter().map(|&x| Value::from(x))
}

fn parity_values(v: &[StateParity]) -> impl Iterator<Item = Value> + '_ {
    v.iter().map(|p| Value::from(p.as_str()))
}

/// Full sweep table followed by the fig2, fig3, fig4_left and fig4_right views.
pub fn sweep_datasets(
    rows: &[SweepRow],
    base: &ModelParams,
) -> Result<(Dataset, Dataset, Dataset, Dataset, Dataset)> {
    let k = rows
        .first()
        .map_or(DEFAULT_K_STATES, |r| r.energies_full.len());
    let cols = |p: &str| indexed_columns(p, 0..k);
    let nu_cols = |p: &str| indexed_columns(p, 1..k);

    let mut sweep_schema = vec!["lambda".to_string()];
    for p in [
        "e_full",
        "e_rwa",
        "nbar_full",
        "nbar_rwa",
        "eatom_full",
        "eatom_rwa",
    ] {
        sweep_schema.extend(cols(p));
    }
    sweep_schema.extend(nu_cols("nu_full"));
    sweep_schema.extend(nu_cols("nu_rwa"));
    sweep_schema.extend(["delta_nu_full", "delta_nu_rwa", "regime"].map(String::from));
    for p in ["parity_full", "block_rwa", "trk_full", "trk_rwa"] {
        sweep_schema.extend(cols(p));
    }
    sweep_schema.push("trk_overlap".into());

    let fig2_schema: Vec<String> = [
        "lambda",
        "e_full_0",
        "e_full_1",
        "e_full_2",
        "e_rwa_g0",
        "e_rwa_p1_minus",
        "e_rwa_p1_plus",
    ]
    .map(String::from)
    .to_vec();
    let fig3_schema: Vec<String> = [
        "lambda",
        "nu_full_1",
        "nu_full_2",
        "nu_rwa_p1_minus",
        "nu_rwa_p1_plus",
        "delta_nu_full",
        "delta_nu_rwa",
        "nu_bare",
    ]
    .map(String::from)
    .to_vec();
    let mut fig4l_schema = vec!["lambda".to_string()];
    fig4l_schema.extend(cols("nbar_full"));
    fig4l_schema.extend(cols("nbar_rwa"));
    let mut fig4r_schema = vec!["lambda".to_string()];
    fig4r_schema.extend(cols("eatom_full"));
    fig4r_schema.extend(cols("eatom_rwa"));
    for s in [&mut fig4l_schema, &mut fig4r_schema] {
        for p in ["parity_full", "block_rwa", "trk_full", "trk_rwa"] {
            s.extend(cols(p));
        }
    }

    let mut sweep = Dataset::new("sweep", sweep_schema);
    let mut fig2 = Dataset::new("fig2", fig2_schema);
    let mut fig3 = Dataset::new("fig3", fig3_schema);
    let mut fig4l = Dataset::new("fig4_left", fig4l_schema);
    let mut fig4r = Dataset::new("fig4_right", fig4r_schema);

    for r in rows {
        let lam = Value::Num(r.lambda);
        let mut row = vec![lam.clone()];
        for v in [
            &r.energies_full,
            &r.energies_rwa,
            &r.photon_numbers_full,
            &r.photon_numbers_rwa,
            &r.atomic_energies_full,
            &r.atomic_energies_rwa,
            &r.nu_full,
            &r.nu_rwa,
        ] {
            row.extend(nums(v));
        }
        row.extend([
            r.delta_nu_full.into(),
            r.delta_nu_rwa.into(),
            r.regime.as_str().into(),
        ]);
        row.extend(parity_values(&r.parities_full));
        row.extend(ints(&r.blocks_rwa));
        row.extend(ints(&r.labels_full));
        row.extend(ints(&r.labels_rwa));
        row.push(r.tracking_overlap.into());
        sweep.push_row(row)?;

        fig2.push_row(vec![
            lam.clone(),
            r.energies_full[0].into(),
            r.energies_full[1].into(),
            r.energies_full[2].into(),
            r.rwa_vacuum.into(),
            r.rwa_p1_minus.into(),
            r.rwa_p1_plus.into(),
        ])?;
        fig3.push_row(vec![
            lam.clone(),
            r.nu_full[0].into(),
            r.nu_full[1].into(),
            (r.rwa_p1_minus - r.rwa_vacuum).into(),
            (r.rwa_p1_plus - r.rwa_vacuum).into(),
            r.delta_nu_full.into(),
            r.delta_nu_rwa.into(),
            base.omega21().into(),
        ])?;

        let tail = |row: &mut Vec<Value>| {
            row.extend(parity_values(&r.parities_full));
            row.extend(ints(&r.blocks_rwa));
            row.extend(ints(&r.labels_full));
            row.extend(ints(&r.labels_rwa));
        };
        let mut l = vec![lam.clone()];
        l.extend(nums(&r.photon_numbers_full));
        l.extend(nums(&r.photon_numbers_rwa));
        tail(&mut l);
        fig4l.push_row(l)?;
        let mut rr = vec![lam];
        rr.extend(nums(&r.atomic_energies_full));
        rr.extend(nums(&r.atomic_energies_rwa));
        tail(&mut rr);
        fig4r.push_row(rr)?;
    }
    Ok((sweep, fig2, fig3, fig4l, fig4r))
}

pub fn convergence_dataset(table: &ConvergenceTable) -> Result<Dataset> {
    let mut schema = vec!["n_max".to_string(), "dim".to_string()];
    schema.extend(indexed_columns("e", 0..table.k_states));
    schema.push("max_deviation".into());
    let mut d = Dataset::new("converge", schema);
    for r in &table.rows {
        let mut row = vec![Value::from(r.n_max), Value::from(2 * (r.n_max + 1))];
        row.extend(nums(&r.energies));
        row.push(r.max_deviation.into());
        d.push_row(row)?;
    }
    Ok(d)
}

/// One-λ eigentable for both Hamiltonians (all eigenstates).
pub fn spectrum_dataset(sol: &PointSolution, basis: &FockBasis) -> Result<Dataset> {
    let schema = [
        "hamiltonian",
        "index",
        "energy",
        "parity",
        "block",
        "nbar",
        "eatom",
    ];
    let mut d = Dataset::new("spectrum", schema.iter().map(|s| s.to_string()).collect());
    for (c, eig) in [(Coupling::Rabi, &sol.full), (Coupling::Rwa, &sol.rwa)] {
        for k in 0..eig.dim() {
            let s = StateVector::eigenstate(basis, eig, k)?;
            let block = excitation_block(&s, 1e-12).map_or(Value::Int(-1), Value::from);
            d.push_row(vec![
                c.as_str().into(),
                k.into(),
                eig.eigenvalue(k).into(),
                eig.parity(k).as_str().into(),
                block,
                photon_number(&s).into(),
                atomic_energy(&s, &sol.params).into(),
            ])?;
        }
    }
    Ok(d)
}

pub fn regimes_dataset(grid: &SweepGrid) -> Result<Dataset> {
    let schema = ["lambda", "ratio", "regime"];
    let mut d = Dataset::new("regimes", schema.iter().map(|s| s.to_string()).collect());
    let wc = grid.base().omega_c();
    for lam in grid.points() {
        d.push_row(vec![
            lam.into(),
            (lam / wc).into(),
            classify_regime(lam, wc).as_str().into(),
        ])?;
    }
    Ok(d)
}

mod common;

use polariscope::experiments::{
    convergence_study, figure_datasets, run_sweep, track_states, FigureConfig, SweepGrid, SweepRow,
    DEFAULT_K_STATES,
};
use polariscope::model::DEFAULT_N_MAX;
use polariscope::observables::{excitation_block, StateVector};
use polariscope::{
    build_basis, build_rabi_hamiltonian, build_rwa_hamiltonian, diagonalize, Dataset, Error,
    ModelParams,
};

fn params(lam: f64) -> ModelParams {
    ModelParams::new(0.0, 1.0, 1.0, lam).unwrap()
}

fn sweep(max: f64, steps: usize) -> Vec<SweepRow> {
    let grid = SweepGrid::new(0.0, max, steps, params(0.0)).unwrap();
    run_sweep(&grid, DEFAULT_N_MAX, DEFAULT_K_STATES).unwrap()
}

fn column(d: &Dataset, name: &str) -> Vec<f64> {
    d.column_f64(name)
        .unwrap_or_else(|| panic!("missing column {name}"))
}

#[test]
fn coarse_sweep_rows_coincide_at_zero_coupling() {
    let grid = SweepGrid::new(0.0, 1.0, 2, params(0.0)).unwrap();
    let rows = run_sweep(&grid, DEFAULT_N_MAX, 3).unwrap();
    assert_eq!(rows.len(), 2);
    let r = &rows[0];
    assert_eq!(r.energies_full, r.energies_rwa);
    assert_eq!(r.photon_numbers_full, r.photon_numbers_rwa);
    assert_eq!(r.atomic_energies_full, r.atomic_energies_rwa);
    assert_eq!(r.nu_full, r.nu_rwa);
    assert_eq!(r.delta_nu_full, r.delta_nu_rwa);
    assert!(rows.iter().all(|r| r.energies_full.len() == 3));
}

#[test]
fn weak_coupling_spectra_agree() {
    let rows = sweep(0.1, 2);
    let r = &rows[1];
    let d = common::max_abs_diff(&r.energies_full[..3], &r.energies_rwa[..3]);
    assert!(d <= 1e-2, "max deviation {d}");
}

#[test]
fn lowest_full_energies_drop_by_strong_coupling() {
    let rows = sweep(1.2, 2);
    for k in 0..3 {
        assert!(rows[1].energies_full[k] < rows[0].energies_full[k]);
    }
}

#[test]
fn full_ground_state_monotone_to_deep_strong_coupling() {
    let rows = sweep(1.5, 151);
    for w in rows.windows(2) {
        assert!(w[1].energies_full[0] < w[0].energies_full[0]);
        assert!(w[1].photon_numbers_full[0] > w[0].photon_numbers_full[0]);
    }
}

#[test]
fn rwa_vacuum_energy_is_constant() {
    for r in sweep(1.2, 121) {
        assert_eq!(r.rwa_vacuum, 0.5);
        let j = r.labels_rwa.iter().position(|&l| l == 0).unwrap();
        assert_eq!(r.energies_rwa[j], 0.5);
    }
}

#[test]
fn rwa_lowest_level_is_the_empty_vacuum() {
    for r in sweep(1.2, 121) {
        assert_eq!(r.energies_rwa[0], 0.5, "energy at λ = {}", r.lambda);
        assert_eq!(r.photon_numbers_rwa[0], 0.0, "photons at λ = {}", r.lambda);
    }
}

#[test]
fn tracked_second_excited_state_outgrows_third_in_photons() {
    let rows = sweep(1.2, 121);
    let hit = rows.iter().filter(|r| r.lambda > 0.8).any(|r| {
        let at = |label: usize| {
            let j = r.labels_full.iter().position(|&l| l == label).unwrap();
            r.photon_numbers_full[j]
        };
        at(2) > at(3)
    });
    assert!(hit);
}

#[test]
fn default_grid_tracks_unambiguously() {
    for r in sweep(1.2, 121) {
        assert!(
            r.tracking_overlap >= std::f64::consts::FRAC_1_SQRT_2,
            "λ = {}",
            r.lambda
        );
        let mut labels = r.labels_full.clone();
        labels.sort();
        labels.dedup();
        assert_eq!(labels.len(), r.labels_full.len());
    }
}

#[test]
fn tracking_identity_and_parity_consistency() {
    let basis = build_basis(DEFAULT_N_MAX);
    let h = |lam: f64| build_rabi_hamiltonian(&params(lam), &basis);
    let e = diagonalize(&h(0.9), 1e-12).unwrap();
    assert_eq!(
        track_states(&e, &e).unwrap(),
        (0..basis.dim()).collect::<Vec<_>>()
    );
    let mut prev = diagonalize(&h(0.7), 1e-12).unwrap();
    for i in 1..=60 {
        let cur = diagonalize(&h(0.7 + 0.01 * i as f64), 1e-12).unwrap();
        let map = track_states(&prev, &cur).unwrap();
        let mut seen = map.clone();
        seen.sort();
        assert_eq!(seen, (0..basis.dim()).collect::<Vec<_>>());
        for (c, &p) in map.iter().enumerate() {
            assert_eq!(cur.parity(c), prev.parity(p));
        }
        prev = cur;
    }
}

#[test]
fn rwa_tracking_preserves_excitation_block() {
    let basis = build_basis(DEFAULT_N_MAX);
    let block = |eig: &polariscope::EigenSystem, k: usize| {
        excitation_block(&StateVector::eigenstate(&basis, eig, k).unwrap(), 1e-12).unwrap()
    };
    let mut prev = diagonalize(&build_rwa_hamiltonian(&params(0.01), &basis), 1e-12).unwrap();
    for i in 2..=120 {
        let cur = diagonalize(
            &build_rwa_hamiltonian(&params(0.01 * i as f64), &basis),
            1e-12,
        )
        .unwrap();
        let map = track_states(&prev, &cur).unwrap();
        for (c, &p) in map.iter().enumerate() {
            assert_eq!(block(&cur, c), block(&prev, p));
        }
        prev = cur;
    }
}

#[test]
fn coarse_steps_report_ambiguous_tracking() {
    let basis = build_basis(DEFAULT_N_MAX);
    let a = diagonalize(&build_rabi_hamiltonian(&params(0.0), &basis), 1e-12).unwrap();
    let b = diagonalize(&build_rabi_hamiltonian(&params(1.0), &basis), 1e-12).unwrap();
    assert!(matches!(
        track_states(&a, &b),
        Err(Error::AmbiguousTracking { .. })
    ));
}

#[test]
fn zero_coupling_is_truncation_independent() {
    let t = convergence_study(&params(0.0), &[4, 8, 14], 7).unwrap();
    for r in &t.rows {
        assert_eq!(r.energies, t.rows[2].energies);
        assert_eq!(r.max_deviation, 0.0);
    }
}

#[test]
fn unit_coupling_truncation_error_within_1e_8() {
    let t = convergence_study(&params(1.0), &[14, 63], 7).unwrap();
    let d = t.row(14).unwrap().max_deviation;
    assert!(d <= 1e-8, "max |E_k(14) - E_k(63)| = {d:e}");
}

#[test]
fn truncation_error_shrinks_with_basis_size() {
    let t = convergence_study(&params(1.5), &[4, 14, 63], 7).unwrap();
    assert!(t.row(4).unwrap().max_deviation > t.row(14).unwrap().max_deviation);
    assert_eq!(t.row(63).unwrap().max_deviation, 0.0);
}

#[test]
fn convergence_rejects_bad_lists() {
    assert!(convergence_study(&params(0.5), &[8, 4], 3).is_err());
    assert!(convergence_study(&params(0.5), &[2], 7).is_err());
    assert!(convergence_study(&params(0.5), &[], 3).is_err());
}

#[test]
fn figure_datasets_content() {
    let sets = figure_datasets(&FigureConfig::new(params(0.0))).unwrap();
    let h = sets.fig5.column_index("hamiltonian").unwrap();
    let rwa_rows = sets
        .fig5
        .rows()
        .iter()
        .filter(|r| r[h] == "rwa".into())
        .count();
    assert_eq!(rwa_rows, 2);

    let lam = column(&sets.fig3, "lambda");
    let pairs = [
        ("nu_full_1", "nu_rwa_p1_minus"),
        ("nu_full_2", "nu_rwa_p1_plus"),
    ];
    for (full, rwa) in pairs {
        let (f, r) = (column(&sets.fig3, full), column(&sets.fig3, rwa));
        for i in (0..lam.len()).filter(|&i| lam[i] <= 0.4 + 1e-12) {
            assert!((f[i] - r[i]).abs() <= 0.05, "{full} at λ={}", lam[i]);
        }
    }

    let trk = column(&sets.fig4_left, "trk_rwa_0");
    assert_eq!(trk.len(), 121);
    let left = &sets.fig4_left;
    for (i, row) in left.rows().iter().enumerate() {
        let j = (0..DEFAULT_K_STATES)
            .find(|k| column(left, &format!("trk_rwa_{k}"))[i] == 0.0)
            .unwrap();
        assert_eq!(
            row[left.column_index(&format!("nbar_rwa_{j}")).unwrap()],
            0.0.into()
        );
    }
}

#[test]
fn sweep_schema_expands_per_state() {
    let sets = figure_datasets(&FigureConfig {
        grid: SweepGrid::new(0.0, 0.2, 3, params(0.0)).unwrap(),
        ..FigureConfig::new(params(0.0))
    })
    .unwrap();
    let schema = sets.sweep.schema();
    assert_eq!(schema[0], "lambda");
    assert_eq!(schema[1], "e_full_0");
    assert_eq!(schema[1 + DEFAULT_K_STATES], "e_rwa_0");
    assert_eq!(schema[1 + 2 * DEFAULT_K_STATES], "nbar_full_0");
    assert_eq!(sets.sweep.len(), 3);
}

#[test]
fn invalid_sweep_sizes_rejected() {
    let grid = SweepGrid::new(0.0, 1.0, 3, params(0.0)).unwrap();
    assert!(matches!(run_sweep(&grid, 0, 3), Err(Error::Validation(_))));
    assert!(matches!(run_sweep(&grid, 4, 2), Err(Error::Validation(_))));
    assert!(matches!(run_sweep(&grid, 1, 5), Err(Error::Validation(_))));
    assert!(SweepGrid::new(0.5, 0.5, 3, params(0.0)).is_err());
    assert!(SweepGrid::new(0.0, 1.0, 1, params(0.0)).is_err());
}

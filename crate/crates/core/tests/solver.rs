mod common;

use polariscope::model::DEFAULT_N_MAX;
use polariscope::{
    build_basis, build_rabi_hamiltonian, build_rwa_hamiltonian, diagonalize, parity_blocks,
    ModelParams, StateParity, SymMatrix,
};
use proptest::prelude::*;

use common::{grid, max_abs_diff, rabi_chain, rabi_spectrum, rwa_spectrum};

fn params(lam: f64) -> ModelParams {
    ModelParams::new(0.0, 1.0, 1.0, lam).unwrap()
}

#[test]
fn ground_energy_at_unit_coupling_matches_bisection() {
    let basis = build_basis(DEFAULT_N_MAX);
    let eig = diagonalize(&build_rabi_hamiltonian(&params(1.0), &basis), 1e-12).unwrap();
    let even = rabi_chain(0.0, 1.0, 1.0, 1.0, DEFAULT_N_MAX, false).eigenvalues(1e-14);
    assert!((eig.eigenvalue(0) - even[0]).abs() < 1e-10);
    assert!(eig.eigenvalue(0) < 0.5);
    assert_eq!(eig.parity(0), StateParity::Even);
}

#[test]
fn full_spectrum_matches_bisection_oracle() {
    for n_max in [1, 5, 14, 30] {
        let basis = build_basis(n_max);
        for lam in [0.05, 0.5, 1.0, 1.5] {
            let eig = diagonalize(&build_rabi_hamiltonian(&params(lam), &basis), 1e-12).unwrap();
            let oracle = rabi_spectrum(0.0, 1.0, 1.0, lam, n_max);
            assert!(
                max_abs_diff(eig.eigenvalues(), &oracle) < 1e-10,
                "n_max {n_max} λ {lam}"
            );
        }
    }
}

#[test]
fn ground_energy_decreases_monotonically() {
    let basis = build_basis(DEFAULT_N_MAX);
    let e0: Vec<f64> = grid(1.5, 0.05)
        .into_iter()
        .map(|lam| {
            diagonalize(&build_rabi_hamiltonian(&params(lam), &basis), 1e-12)
                .unwrap()
                .eigenvalue(0)
        })
        .collect();
    assert!(e0.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn parity_block_spectra_union_is_full_spectrum() {
    let basis = build_basis(DEFAULT_N_MAX);
    for lam in [0.1, 0.6, 1.2] {
        let h = build_rabi_hamiltonian(&params(lam), &basis);
        let blocks = parity_blocks(&h, &basis).unwrap();
        let mut union: Vec<f64> = diagonalize(&blocks.even, 1e-12)
            .unwrap()
            .eigenvalues()
            .to_vec();
        union.extend_from_slice(diagonalize(&blocks.odd, 1e-12).unwrap().eigenvalues());
        union.sort_by(f64::total_cmp);
        let full = diagonalize(&h, 1e-12).unwrap();
        assert!(max_abs_diff(&union, full.eigenvalues()) < 1e-10);
        assert_eq!(blocks.reassemble(), h);
    }
}

#[test]
fn rwa_blocks_match_closed_form_off_resonance() {
    for n_max in [2, 9, 14] {
        let basis = build_basis(n_max);
        for lam in grid(1.5, 0.1) {
            let p = ModelParams::new(0.3, 1.5, 1.0, lam).unwrap();
            let eig = diagonalize(&build_rwa_hamiltonian(&p, &basis), 1e-12).unwrap();
            let oracle = rwa_spectrum(0.3, 1.5, 1.0, lam, n_max);
            assert!(max_abs_diff(eig.eigenvalues(), &oracle) < 1e-10);
        }
    }
}

#[test]
fn repeated_calls_are_bit_identical() {
    let basis = build_basis(DEFAULT_N_MAX);
    let h = build_rabi_hamiltonian(&params(0.8), &basis);
    assert_eq!(
        diagonalize(&h, 1e-12).unwrap(),
        diagonalize(&h, 1e-12).unwrap()
    );
}

fn symmetric(max_dim: usize) -> impl Strategy<Value = SymMatrix> {
    (1..=max_dim).prop_flat_map(|n| {
        proptest::collection::vec(-5.0..5.0f64, n * (n + 1) / 2).prop_map(move |upper| {
            let mut m = SymMatrix::zeros(n);
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in i..n {
                    m.set(i, j, it.next().unwrap());
                }
            }
            m
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn random_symmetric_matrices_decompose(m in symmetric(24)) {
        let eig = diagonalize(&m, 1e-12).unwrap();
        let scale = m.frobenius_norm();
        prop_assert!(eig.eigenvalues().windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(eig.reconstruction_error(&m) <= 1e-9);
        prop_assert!(eig.orthonormality_error() <= 1e-10);
        for k in 0..m.dim() {
            prop_assert!(eig.residual(&m, k) <= 1e-12 * scale);
            let v = eig.eigenvector(k);
            let big = v.iter().fold(0.0f64, |a, x| a.max(x.abs()));
            let first = v.iter().position(|x| x.abs() >= big * (1.0 - 1e-12)).unwrap();
            prop_assert!(v[first] > 0.0);
        }
    }

    #[test]
    fn model_eigenvectors_have_definite_parity(lam in 0.0..1.5f64, n_max in 1usize..20) {
        let basis = build_basis(n_max);
        let eig = diagonalize(&build_rabi_hamiltonian(&params(lam), &basis), 1e-12).unwrap();
        prop_assert!(eig.parities().iter().all(|&p| p != StateParity::Mixed));
        prop_assert!(eig.reconstruction_error(&build_rabi_hamiltonian(&params(lam), &basis)) <= 1e-9);
    }
}

//! Cyclic Jacobi eigensolver for dense real symmetric matrices and
//! parity-block utilities.
//!
//! Rotations are only applied to nonzero off-diagonal entries, so any block
//! structure present in the input (parity chains, RWA excitation blocks) is
//! preserved exactly and every eigenvector stays inside one block.

use crate::error::{Error, Result};
use crate::model::{parity_of_index, FockBasis, Parity, SymMatrix};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Stop once the off-diagonal norm is `<= tol * ‖A‖_F`.
    pub tol: f64,
    pub max_sweeps: usize,
    /// Largest opposite-parity weight still tagged as a pure parity state.
    pub purity_tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tol: 1e-12,
            max_sweeps: 64,
            purity_tol: 1e-10,
        }
    }
}

impl SolverConfig {
    pub fn with_tol(tol: f64) -> Self {
        SolverConfig {
            tol,
            ..Self::default()
        }
    }
}

/// Parity tag of an eigenvector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StateParity {
    Even,
    Odd,
    Mixed,
}

impl StateParity {
    pub fn as_str(&self) -> &'static str {
        match self {
            StateParity::Even => "even",
            StateParity::Odd => "odd",
            StateParity::Mixed => "mixed",
        }
    }

    pub fn definite(&self) -> Option<Parity> {
        match self {
            StateParity::Even => Some(Parity::Even),
            StateParity::Odd => Some(Parity::Odd),
            StateParity::Mixed => None,
        }
    }
}

/// Ascending eigenvalues with unit eigenvectors stored column by column.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem {
    dim: usize,
    eigenvalues: Vec<f64>,
    // column-major: vector k occupies [k*dim, (k+1)*dim)
    vectors: Vec<f64>,
    parities: Vec<StateParity>,
}

impl EigenSystem {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvalue(&self, k: usize) -> f64 {
        self.eigenvalues[k]
    }

    pub fn eigenvector(&self, k: usize) -> &[f64] {
        &self.vectors[k * self.dim..(k + 1) * self.dim]
    }

    pub fn eigenvectors(&self) -> impl Iterator<Item = &[f64]> {
        self.vectors.chunks_exact(self.dim)
    }

    pub fn parities(&self) -> &[StateParity] {
        &self.parities
    }

    pub fn parity(&self, k: usize) -> StateParity {
        self.parities[k]
    }

    /// `‖A − V Λ Vᵀ‖_F / ‖A‖_F` (absolute when `A = 0`).
    pub fn reconstruction_error(&self, matrix: &SymMatrix) -> f64 {
        let n = self.dim;
        let mut err = 0.0;
        for i in 0..n {
            for j in 0..n {
                let mut r = 0.0;
                for (k, &lam) in self.eigenvalues.iter().enumerate() {
                    let v = self.eigenvector(k);
                    r += v[i] * lam * v[j];
                }
                let d = matrix.get(i, j) - r;
                err += d * d;
            }
        }
        let norm = matrix.frobenius_norm();
        let err = err.sqrt();
        if norm > 0.0 {
            err / norm
        } else {
            err
        }
    }

    /// `max |⟨v_i, v_j⟩ − δ_ij|` over all pairs.
    pub fn orthonormality_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..=i {
                let dot: f64 = self
                    .eigenvector(i)
                    .iter()
                    .zip(self.eigenvector(j))
                    .map(|(a, b)| a * b)
                    .sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    /// `‖A v_k − λ_k v_k‖₂`.
    pub fn residual(&self, matrix: &SymMatrix, k: usize) -> f64 {
        let v = self.eigenvector(k);
        let av = matrix.mul_vec(v);
        av.iter()
            .zip(v)
            .map(|(a, b)| (a - self.eigenvalues[k] * b).powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

pub fn diagonalize(matrix: &SymMatrix, tol: f64) -> Result<EigenSystem> {
    diagonalize_with(matrix, &SolverConfig::with_tol(tol))
}

pub fn diagonalize_with(matrix: &SymMatrix, config: &SolverConfig) -> Result<EigenSystem> {
    if config.tol.is_nan() || config.tol <= 0.0 {
        return Err(Error::Validation(format!(
            "solver tolerance must be > 0 (got {})",
            config.tol
        )));
    }
    if matrix.entries().iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidMatrix("matrix has non-finite entries".into()));
    }
    let n = matrix.dim();
    let norm = matrix.frobenius_norm();
    let mut a = matrix.entries().to_vec();
    // row-major: v[i*n + k] is component i of vector k
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    jacobi_sweeps(
        &mut a,
        &mut v,
        n,
        config.tol * norm,
        config.max_sweeps,
        norm,
    )?;

    let raw_values: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    let mut columns: Vec<Vec<f64>> = (0..n)
        .map(|k| (0..n).map(|i| v[i * n + k]).collect())
        .collect();
    let dominant: Vec<usize> = columns.iter_mut().map(|c| fix_sign(c)).collect();
    let tags: Vec<StateParity> = columns
        .iter()
        .map(|c| parity_tag(c, config.purity_tol))
        .collect();

    let mut order: Vec<usize> = (0..n).collect();
    // exact ties fall back to parity, then to the dominant component
    order.sort_by(|&i, &j| {
        raw_values[i]
            .total_cmp(&raw_values[j])
            .then(tags[i].cmp(&tags[j]))
            .then(dominant[i].cmp(&dominant[j]))
            .then(i.cmp(&j))
    });

    let mut vectors = Vec::with_capacity(n * n);
    for &k in &order {
        vectors.extend_from_slice(&columns[k]);
    }
    Ok(EigenSystem {
        dim: n,
        eigenvalues: order.iter().map(|&k| raw_values[k]).collect(),
        vectors,
        parities: order.iter().map(|&k| tags[k]).collect(),
    })
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            s += 2.0 * a[p * n + q] * a[p * n + q];
        }
    }
    s.sqrt()
}

fn jacobi_sweeps(
    a: &mut [f64],
    v: &mut [f64],
    n: usize,
    threshold: f64,
    max_sweeps: usize,
    norm: f64,
) -> Result<()> {
    for sweep in 0..max_sweeps {
        if off_diagonal_norm(a, n) <= threshold {
            return Ok(());
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let g = 100.0 * apq.abs();
                if sweep > 3 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    if akp == 0.0 && akq == 0.0 {
                        continue;
                    }
                    let kp = c * akp - s * akq;
                    let kq = s * akp + c * akq;
                    a[k * n + p] = kp;
                    a[p * n + k] = kp;
                    a[k * n + q] = kq;
                    a[q * n + k] = kq;
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let off = off_diagonal_norm(a, n);
    if off <= threshold {
        return Ok(());
    }
    Err(Error::NonConvergence {
        sweeps: max_sweeps,
        residual: if norm > 0.0 { off / norm } else { off },
        lambda: None,
    })
}

/// Flip `v` so its largest-magnitude component is positive; returns that
/// component's index. Near-ties resolve to the lowest index.
fn fix_sign(v: &mut [f64]) -> usize {
    let max = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let idx = v
        .iter()
        .position(|x| x.abs() >= max * (1.0 - 1e-12))
        .unwrap_or(0);
    if v[idx] < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
    idx
}

fn parity_tag(v: &[f64], purity_tol: f64) -> StateParity {
    let (mut even, mut odd) = (0.0, 0.0);
    for (i, x) in v.iter().enumerate() {
        match parity_of_index(i) {
            Parity::Even => even += x * x,
            Parity::Odd => odd += x * x,
        }
    }
    if odd <= purity_tol {
        StateParity::Even
    } else if even <= purity_tol {
        StateParity::Odd
    } else {
        StateParity::Mixed
    }
}

/// Even and odd principal submatrices of a model Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct ParityBlocks {
    pub even: SymMatrix,
    pub odd: SymMatrix,
    /// Original basis indices: even states ascending, then odd states ascending.
    pub permutation: Vec<usize>,
}

impl ParityBlocks {
    pub fn even_indices(&self) -> &[usize] {
        &self.permutation[..self.even.dim()]
    }

    pub fn odd_indices(&self) -> &[usize] {
        &self.permutation[self.even.dim()..]
    }

    /// Rebuild the matrix in the original basis ordering.
    pub fn reassemble(&self) -> SymMatrix {
        let dim = self.permutation.len();
        let mut m = SymMatrix::zeros(dim);
        for (block, idx) in [
            (&self.even, self.even_indices()),
            (&self.odd, self.odd_indices()),
        ] {
            for (a, &i) in idx.iter().enumerate() {
                for (b, &j) in idx.iter().enumerate().take(a + 1) {
                    m.set(i, j, block.get(a, b));
                }
            }
        }
        m
    }
}

pub fn parity_blocks(matrix: &SymMatrix, basis: &FockBasis) -> Result<ParityBlocks> {
    if matrix.dim() != basis.dim() {
        return Err(Error::BasisMismatch {
            left: matrix.dim(),
            right: basis.dim(),
        });
    }
    let (even, odd): (Vec<usize>, Vec<usize>) =
        (0..basis.dim()).partition(|&i| basis.state(i).parity() == Parity::Even);
    for &i in &even {
        for &j in &odd {
            let value = matrix.get(i, j);
            if value.abs() > 0.0 {
                return Err(Error::BlockLeak {
                    row: i,
                    col: j,
                    value,
                });
            }
        }
    }
    let permutation = even.iter().chain(&odd).copied().collect();
    Ok(ParityBlocks {
        even: matrix.submatrix(&even),
        odd: matrix.submatrix(&odd),
        permutation,
    })
}

//! Reference values computed without the crate's solver.
#![allow(dead_code)]

/// Symmetric tridiagonal matrix: `diag[i]` and `off[i]` coupling `i`, `i+1`.
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl Tridiagonal {
    /// Number of eigenvalues strictly below `x` (Sturm sequence count).
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = 1.0;
        for i in 0..self.diag.len() {
            let b2 = if i == 0 {
                0.0
            } else {
                self.off[i - 1] * self.off[i - 1]
            };
            q = self.diag[i] - x - if i == 0 { 0.0 } else { b2 / q };
            if q == 0.0 {
                q = -f64::EPSILON * (1.0 + x.abs());
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// All eigenvalues ascending, each bisected to `tol`.
    pub fn eigenvalues(&self, tol: f64) -> Vec<f64> {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (0..n)
            .map(|k| {
                let (mut a, mut b) = (lo - 1.0, hi + 1.0);
                while b - a > tol {
                    let m = 0.5 * (a + b);
                    if self.count_below(m) > k {
                        b = m;
                    } else {
                        a = m;
                    }
                }
                0.5 * (a + b)
            })
            .collect()
    }
}

/// One parity chain of the Rabi Hamiltonian, ordered by photon number.
/// `odd = false` starts at `|g,0⟩`, `odd = true` at `|e,0⟩`.
pub fn rabi_chain(w1: f64, w2: f64, wc: f64, lam: f64, n_max: usize, odd: bool) -> Tridiagonal {
    let mut diag = Vec::new();
    let mut off = Vec::new();
    for n in 0..=n_max {
        let excited = (n % 2 == 1) != odd;
        let atom = if excited { w2 } else { w1 };
        diag.push(atom + (n as f64 + 0.5) * wc);
        if n < n_max {
            off.push(lam * ((n + 1) as f64).sqrt());
        }
    }
    Tridiagonal { diag, off }
}

/// Full spectrum of the truncated Rabi Hamiltonian from its two chains.
pub fn rabi_spectrum(w1: f64, w2: f64, wc: f64, lam: f64, n_max: usize) -> Vec<f64> {
    let mut all = rabi_chain(w1, w2, wc, lam, n_max, false).eigenvalues(1e-13);
    all.extend(rabi_chain(w1, w2, wc, lam, n_max, true).eigenvalues(1e-13));
    all.sort_by(f64::total_cmp);
    all
}

/// Closed-form spectrum of the truncated RWA Hamiltonian.
pub fn rwa_spectrum(w1: f64, w2: f64, wc: f64, lam: f64, n_max: usize) -> Vec<f64> {
    let delta = (w2 - w1) - wc;
    let mut out = vec![w1 + 0.5 * wc];
    for n in 1..=n_max {
        let c = 0.5 * (w1 + w2) + n as f64 * wc;
        let h = 0.5 * (delta * delta + 4.0 * n as f64 * lam * lam).sqrt();
        out.push(c - h);
        out.push(c + h);
    }
    out.push(w2 + (n_max as f64 + 0.5) * wc);
    out.sort_by(f64::total_cmp);
    out
}

/// Second-order ground-state photon number.
pub fn perturbative_nbar(w21: f64, wc: f64, lam: f64) -> f64 {
    lam * lam / ((w21 + wc) * (w21 + wc))
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// `0, step, 2·step, …` up to and including `max`.
pub fn grid(max: f64, step: f64) -> Vec<f64> {
    let n = (max / step).round() as usize;
    (0..=n).map(|i| i as f64 * step).collect()
}

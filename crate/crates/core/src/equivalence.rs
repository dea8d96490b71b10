//! CAZAC sequences viewed as circulant complex Hadamard matrices and as
//! cyclic N-roots.

use crate::sequences::Sequence;
use crate::{Error, Result, Tolerances, C64};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

/// Circulant matrix whose row `i` is the first row shifted right by `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct CirculantMatrix {
    first_row: Vec<C64>,
}

impl CirculantMatrix {
    pub fn new(first_row: Vec<C64>) -> Self {
        Self { first_row }
    }

    pub fn n(&self) -> usize {
        self.first_row.len()
    }

    pub fn first_row(&self) -> &[C64] {
        &self.first_row
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        let n = self.n();
        self.first_row[(j + n - i % n) % n]
    }

    pub fn to_matrix(&self) -> DMatrix<C64> {
        let n = self.n();
        DMatrix::from_fn(n, n, |i, j| self.get(i, j))
    }
}

pub fn circulant_from(phi: &Sequence) -> CirculantMatrix {
    CirculantMatrix::new(phi.entries().to_vec())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HadamardCheck {
    pub is_hadamard: bool,
    /// `max | |H[i,j]| - 1 |`.
    pub unimodular_residual: f64,
    /// `max |(H H^* - N Id)[i, j]|` over all entries.
    pub orthogonality_residual: f64,
}

/// Complex Hadamard test: unimodular entries and `H H^* = N Id`.
///
/// The diagonal of `H H^*` is fixed by unimodularity, so only the
/// off-diagonal part is thresholded at `tol.zero * N`; the reported residual
/// still covers every entry.
pub fn is_hadamard(h: &CirculantMatrix, tol: &Tolerances) -> HadamardCheck {
    let n = h.n();
    let m = h.to_matrix();
    let unimodular_residual = m.iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max);
    let gram = &m * m.adjoint();
    let mut off_diag = 0.0f64;
    let mut all = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { n as f64 } else { 0.0 };
            let r = (gram[(i, j)] - target).norm();
            all = all.max(r);
            if i != j {
                off_diag = off_diag.max(r);
            }
        }
    }
    HadamardCheck {
        is_hadamard: unimodular_residual <= tol.unit && off_diag <= tol.zero * n as f64,
        unimodular_residual,
        orthogonality_residual: all,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CyclicRoot {
    pub z: Vec<C64>,
    /// Set when the cyclic N-root equations were checked and hold.
    pub verified: bool,
}

impl CyclicRoot {
    pub fn new(z: Vec<C64>) -> Self {
        Self { z, verified: false }
    }

    pub fn n(&self) -> usize {
        self.z.len()
    }
}

/// Consecutive quotients `(phi_1/phi_0, ..., phi_0/phi_{N-1})`.
pub fn to_cyclic_root(phi: &Sequence, tol: &Tolerances) -> Result<CyclicRoot> {
    let x = phi.entries();
    if let Some(k) = x.iter().position(|z| *z == C64::new(0.0, 0.0)) {
        return Err(Error::ZeroEntry(k));
    }
    let n = x.len();
    let z: Vec<C64> = (0..n).map(|k| x[(k + 1) % n] / x[k]).collect();
    let verified = verify_cyclic_root(&z, tol).passed;
    Ok(CyclicRoot { z, verified })
}

/// `phi_0 = 1`, `phi_k = phi_{k-1} z_{k-1}`.
pub fn from_cyclic_root(root: &CyclicRoot) -> Result<Sequence> {
    let n = root.n();
    if n == 0 {
        return Err(Error::EmptyLength);
    }
    let mut entries = Vec::with_capacity(n);
    entries.push(C64::new(1.0, 0.0));
    for k in 1..n {
        entries.push(entries[k - 1] * root.z[k - 1]);
    }
    Sequence::custom(entries)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CyclicRootCheck {
    pub passed: bool,
    /// `residuals[k-1]` is `|sum_j prod_{t<k} z_{j+t}|` for `k < N` and
    /// `|prod z - 1|` for `k = N`.
    pub residuals: Vec<f64>,
}

pub fn verify_cyclic_root(z: &[C64], tol: &Tolerances) -> CyclicRootCheck {
    let n = z.len();
    let mut window: Vec<C64> = vec![C64::new(1.0, 0.0); n];
    let mut residuals = Vec::with_capacity(n);
    for k in 1..=n {
        for (j, w) in window.iter_mut().enumerate() {
            *w *= z[(j + k - 1) % n];
        }
        if k < n {
            residuals.push(window.iter().sum::<C64>().norm());
        } else {
            residuals.push((window.first().copied().unwrap_or(C64::new(1.0, 0.0)) - 1.0).norm());
        }
    }
    let bound = tol.zero * n as f64;
    CyclicRootCheck {
        passed: n > 0 && residuals.iter().all(|&r| r <= bound),
        residuals,
    }
}

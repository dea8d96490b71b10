use super::{inner, GaborSystem};
use crate::tf::{dpaf, twiddles, DpafMatrix};
use crate::{Tolerances, C64};
use nalgebra::DMatrix;
use std::collections::HashMap;

/// `G[i, j] = <v_i, v_j>` over the system order.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    entries: DMatrix<C64>,
}

impl GramMatrix {
    pub fn size(&self) -> usize {
        self.entries.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.entries[(i, j)]
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn max_hermitian_defect(&self) -> f64 {
        let g = &self.entries;
        let n = g.nrows();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((g[(i, j)] - g[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `|G[i, j]| > threshold` indicator grid.
    pub fn support(&self, threshold: f64) -> Vec<Vec<bool>> {
        let n = self.size();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.entries[(i, j)].norm() > threshold)
                    .collect()
            })
            .collect()
    }
}

/// Inner products of the materialized vectors.
pub fn gram_direct(sys: &GaborSystem) -> GramMatrix {
    let size = sys.len();
    let v = sys.vectors();
    let entries = DMatrix::from_fn(size, size, |i, j| inner(&v[i], &v[j]));
    GramMatrix { entries }
}

/// `G[i, j] = N e^{-2 pi i k_j (l_j - l_i) / N} A[k_j - k_i, l_j - l_i]`.
pub fn gram_via_dpaf(sys: &GaborSystem) -> GramMatrix {
    let n = sys.dim();
    let a = dpaf(sys.phi().entries());
    let w = twiddles(n, -1);
    let shifts = sys.shifts();
    let size = shifts.len();
    let entries = DMatrix::from_fn(size, size, |i, j| {
        let (ki, li) = shifts[i];
        let (kj, lj) = shifts[j];
        let dk = (kj + n - ki) % n;
        let dl = (lj + n - li) % n;
        w[(kj * dl) % n] * a.grid.values()[dk * n + dl] * n as f64
    });
    GramMatrix { entries }
}

/// Gram matrix stored by rows of nonzero entries. Entries are produced by the
/// ambiguity-function formula, visiting only lags where `|A|` exceeds the
/// zero threshold, so the cost scales with the DPAF support rather than
/// `|Lambda|^2`.
pub(crate) struct SparseGram {
    pub rows: Vec<Vec<(usize, C64)>>,
}

impl SparseGram {
    pub fn build(sys: &GaborSystem, a: &DpafMatrix, tol: &Tolerances) -> Self {
        let n = sys.dim();
        let a00 = a.get(0, 0).re;
        let threshold = tol.zero * a00.max(f64::MIN_POSITIVE);
        let lags: Vec<(usize, usize, C64)> = (0..n)
            .flat_map(|m| (0..n).map(move |f| (m, f)))
            .filter_map(|(m, f)| {
                let v = a.grid.values()[m * n + f];
                (v.norm() > threshold).then_some((m, f, v))
            })
            .collect();

        let mut index = vec![u32::MAX; n * n];
        for (i, &(k, l)) in sys.shifts().iter().enumerate() {
            index[k * n + l] = i as u32;
        }
        let w = twiddles(n, -1);
        let scale = n as f64;
        let rows = sys
            .shifts()
            .iter()
            .map(|&(ki, li)| {
                let mut row: Vec<(usize, C64)> = lags
                    .iter()
                    .filter_map(|&(dk, dl, value)| {
                        let kj = (ki + dk) % n;
                        let lj = (li + dl) % n;
                        let j = index[kj * n + lj];
                        (j != u32::MAX).then(|| (j as usize, w[(kj * dl) % n] * value * scale))
                    })
                    .collect();
                row.sort_unstable_by_key(|&(j, _)| j);
                row
            })
            .collect();
        Self { rows }
    }

    /// Connected components of the support graph; `G` is block diagonal
    /// over them.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let size = self.rows.len();
        let mut parent: Vec<usize> = (0..size).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, _) in row {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for i in 0..size {
            let root = find(&mut parent, i);
            let g = *slot.entry(root).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[g].push(i);
        }
        groups
    }

    /// Dense principal submatrix on `members` (sorted).
    pub fn block(&self, members: &[usize]) -> DMatrix<C64> {
        let mut b = DMatrix::<C64>::zeros(members.len(), members.len());
        for (bi, &i) in members.iter().enumerate() {
            for &(j, v) in &self.rows[i] {
                if let Ok(bj) = members.binary_search(&j) {
                    b[(bi, bj)] = v;
                }
            }
        }
        b
    }
}

/// Row-support structure of a Gram matrix.
#[derive(Debug, Clone)]
pub struct StructureReport {
    /// Rows grouped by identical support, each class sorted, classes ordered
    /// by their first row.
    pub classes: Vec<Vec<usize>>,
    /// Distinct supports never overlap.
    pub supports_equal_or_disjoint: bool,
    /// `multipliers[i]` relates row `i` to the first row `r` of its class:
    /// `G[i, :] = multipliers[i] * G[r, :]` on the common support.
    pub multipliers: Vec<C64>,
    pub max_multiplier_modulus_deviation: f64,
    /// Largest `|G[i, j] - mu_i G[r, j]| / max_j |G[r, j]|` over all rows.
    pub max_proportionality_residual: f64,
    pub rows_are_multiples: bool,
    pub multipliers_unimodular: bool,
}

pub fn gram_structure_probe(sys: &GaborSystem, tol: &Tolerances) -> StructureReport {
    let a = dpaf(sys.phi().entries());
    let sg = SparseGram::build(sys, &a, tol);
    probe_rows(&sg.rows, tol)
}

fn probe_rows(rows: &[Vec<(usize, C64)>], tol: &Tolerances) -> StructureReport {
    let size = rows.len();
    let mut by_support: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let support: Vec<usize> = row.iter().map(|&(j, _)| j).collect();
        let c = *by_support.entry(support).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[c].push(i);
    }

    let mut owner = vec![usize::MAX; size];
    let mut supports_equal_or_disjoint = true;
    for (c, members) in classes.iter().enumerate() {
        for &(j, _) in &rows[members[0]] {
            if owner[j] != usize::MAX && owner[j] != c {
                supports_equal_or_disjoint = false;
            }
            owner[j] = c;
        }
    }

    let mut multipliers = vec![C64::new(0.0, 0.0); size];
    let mut max_modulus_dev = 0.0f64;
    let mut max_residual = 0.0f64;
    for members in &classes {
        let rep = &rows[members[0]];
        let scale = rep.iter().map(|&(_, v)| v.norm()).fold(0.0, f64::max);
        for &i in members {
            let row = &rows[i];
            let mu = match (row.first(), rep.first()) {
                (Some(&(_, x)), Some(&(_, y))) => x / y,
                _ => C64::new(1.0, 0.0),
            };
            multipliers[i] = mu;
            max_modulus_dev = max_modulus_dev.max((mu.norm() - 1.0).abs());
            if scale > 0.0 {
                for (&(_, x), &(_, y)) in row.iter().zip(rep) {
                    max_residual = max_residual.max((x - mu * y).norm() / scale);
                }
            }
        }
    }

    StructureReport {
        classes,
        supports_equal_or_disjoint,
        multipliers,
        max_multiplier_modulus_deviation: max_modulus_dev,
        max_proportionality_residual: max_residual,
        rows_are_multiples: max_residual <= tol.zero,
        multipliers_unimodular: max_modulus_dev <= tol.zero,
    }
}

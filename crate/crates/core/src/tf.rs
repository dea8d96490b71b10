//! Time-frequency primitives on `C^N`: translation, modulation, the
//! unnormalized DFT, the discrete STFT and the discrete periodic ambiguity
//! function (DPAF)
//!
//! ```text
//! A[m, n] = (1/N) sum_k phi[k + m] conj(phi[k]) e^{-2 pi i n k / N}
//! ```
//!
//! All indices are taken modulo `N`.

use crate::arith::{modn, root_of_unity};
use crate::lattice::TFSubgroup;
use crate::sequences::{Family, Params};
use crate::{Error, Result, Tolerances, C64};

/// `out[j] = phi[j - k]`.
pub fn translate(phi: &[C64], k: i64) -> Vec<C64> {
    let n = phi.len();
    if n == 0 {
        return Vec::new();
    }
    let k = modn(k, n);
    (0..n).map(|j| phi[(j + n - k) % n]).collect()
}

/// `out[j] = e^{2 pi i j l / N} phi[j]`.
pub fn modulate(phi: &[C64], l: i64) -> Vec<C64> {
    let n = phi.len();
    if n == 0 {
        return Vec::new();
    }
    let twiddle = twiddles(n, 1);
    let l = modn(l, n);
    phi.iter()
        .enumerate()
        .map(|(j, &z)| z * twiddle[(j * l) % n])
        .collect()
}

/// `e_l T_k phi`.
pub fn tf_shift(phi: &[C64], k: i64, l: i64) -> Vec<C64> {
    modulate(&translate(phi, k), l)
}

/// Table of `e^{sign 2 pi i t / N}` for `t` in `0..N`.
pub(crate) fn twiddles(n: usize, sign: i128) -> Vec<C64> {
    (0..n as i128)
        .map(|t| root_of_unity(sign * t, n as i128))
        .collect()
}

/// Unnormalized forward DFT, direct `O(N^2)` evaluation.
pub fn dft(phi: &[C64]) -> Vec<C64> {
    let n = phi.len();
    let w = twiddles(n, -1);
    (0..n)
        .map(|l| {
            phi.iter()
                .enumerate()
                .map(|(k, &z)| z * w[(k * l) % n])
                .sum()
        })
        .collect()
}

/// Inverse of [`dft`], including the `1/N` factor.
pub fn idft(phi_hat: &[C64]) -> Vec<C64> {
    let n = phi_hat.len();
    let w = twiddles(n, 1);
    let scale = 1.0 / n as f64;
    (0..n)
        .map(|k| {
            phi_hat
                .iter()
                .enumerate()
                .map(|(l, &z)| z * w[(k * l) % n])
                .sum::<C64>()
                * scale
        })
        .collect()
}

/// Row-major `N x N` complex grid indexed by `(m, n)` modulo `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct TfGrid {
    n: usize,
    values: Vec<C64>,
}

impl TfGrid {
    fn from_rows(n: usize, values: Vec<C64>) -> Self {
        debug_assert_eq!(values.len(), n * n);
        Self { n, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at `(m mod N, n mod N)`.
    pub fn get(&self, m: i64, n: i64) -> C64 {
        self.values[modn(m, self.n) * self.n + modn(n, self.n)]
    }

    pub fn row(&self, m: usize) -> &[C64] {
        &self.values[m * self.n..(m + 1) * self.n]
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }
}

/// `V_psi(phi)[m, n] = <phi, e_n T_m psi>`.
#[derive(Debug, Clone, PartialEq)]
pub struct StftMatrix {
    pub grid: TfGrid,
    pub window_norm_sq: f64,
}

impl StftMatrix {
    pub fn n(&self) -> usize {
        self.grid.n
    }

    pub fn get(&self, m: i64, n: i64) -> C64 {
        self.grid.get(m, n)
    }
}

/// The ambiguity surface `A_p(phi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DpafMatrix {
    pub grid: TfGrid,
}

impl DpafMatrix {
    pub fn n(&self) -> usize {
        self.grid.n
    }

    pub fn get(&self, m: i64, n: i64) -> C64 {
        self.grid.get(m, n)
    }

    pub fn row(&self, m: usize) -> &[C64] {
        self.grid.row(m)
    }

    /// Fraction of entries with `|A| > threshold`.
    pub fn nonzero_fraction(&self, threshold: f64) -> f64 {
        let count = self
            .grid
            .values
            .iter()
            .filter(|z| z.norm() > threshold)
            .count();
        count as f64 / self.grid.values.len() as f64
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

pub fn stft(phi: &[C64], psi: &[C64]) -> Result<StftMatrix> {
    let n = phi.len();
    check_len(n, psi.len())?;
    let w = twiddles(n, -1);
    let mut values = Vec::with_capacity(n * n);
    for m in 0..n {
        for freq in 0..n {
            let v: C64 = (0..n)
                .map(|k| phi[k] * psi[(k + n - m) % n].conj() * w[(freq * k) % n])
                .sum();
            values.push(v);
        }
    }
    Ok(StftMatrix {
        grid: TfGrid::from_rows(n, values),
        window_norm_sq: psi.iter().map(|z| z.norm_sqr()).sum(),
    })
}

/// `phi = 1/(N ||psi||^2) sum_{m,n} V[m, n] e_n T_m psi`.
pub fn istft(v: &StftMatrix, psi: &[C64]) -> Result<Vec<C64>> {
    let n = v.n();
    check_len(n, psi.len())?;
    let norm_sq: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
    if norm_sq == 0.0 {
        return Err(Error::ZeroWindow);
    }
    let w = twiddles(n, 1);
    let mut out = vec![C64::new(0.0, 0.0); n];
    for m in 0..n {
        for freq in 0..n {
            let coeff = v.grid.values[m * n + freq];
            for (j, o) in out.iter_mut().enumerate() {
                *o += coeff * w[(freq * j) % n] * psi[(j + n - m) % n];
            }
        }
    }
    let scale = 1.0 / (n as f64 * norm_sq);
    out.iter_mut().for_each(|z| *z *= scale);
    Ok(out)
}

/// Definitional DPAF over the full `N x N` grid.
pub fn dpaf(phi: &[C64]) -> DpafMatrix {
    let n = phi.len();
    let w = twiddles(n, -1);
    let scale = 1.0 / n as f64;
    let mut values = Vec::with_capacity(n * n);
    let mut lagged = vec![C64::new(0.0, 0.0); n];
    for m in 0..n {
        for (k, slot) in lagged.iter_mut().enumerate() {
            *slot = phi[(k + m) % n] * phi[k].conj();
        }
        for freq in 0..n {
            let v: C64 = lagged
                .iter()
                .enumerate()
                .map(|(k, &z)| z * w[(freq * k) % n])
                .sum();
            values.push(v * scale);
        }
    }
    DpafMatrix {
        grid: TfGrid::from_rows(n, values),
    }
}

/// A single definitional DPAF entry.
pub fn dpaf_entry(phi: &[C64], m: i64, n: i64) -> C64 {
    let len = phi.len();
    let m = modn(m, len);
    let n = modn(n, len);
    let sum: C64 = (0..len)
        .map(|k| {
            phi[(k + m) % len] * phi[k].conj() * root_of_unity(-((n * k) as i128), len as i128)
        })
        .sum();
    sum / len as f64
}

/// Closed-form DPAF value for a sequence family.
///
/// Chirp families (Chu, P4, Wiener) are fully explicit. For square-length
/// Björck-Saffari, Milewski and Kronecker sequences the remaining finite sum
/// over one index is evaluated directly; the inner DPAF of the generating
/// sequence is taken definitionally.
pub fn dpaf_closed(family: Family, params: &Params, len: usize, m: i64, n: i64) -> Result<C64> {
    if len == 0 {
        return Err(Error::EmptyLength);
    }
    let big = len as i128;
    let mi = modn(m, len) as i128;
    let ni = modn(n, len) as i128;
    let zero = C64::new(0.0, 0.0);
    match (family, params) {
        (Family::Chu, _) => {
            if len % 2 == 0 {
                return Err(Error::EvenChuLength(len));
            }
            Ok(if mi == ni {
                root_of_unity(mi * mi - mi, 2 * big)
            } else {
                zero
            })
        }
        (Family::P4, _) => Ok(if mi == ni {
            // (-1)^m e^{pi i m^2 / N} = e^{pi i (m^2 + m N) / N}
            root_of_unity(mi * mi + mi * big, 2 * big)
        } else {
            zero
        }),
        (Family::Wiener, Params::Wiener { s }) => {
            let s = *s as i128;
            if len % 2 == 1 {
                Ok(if (2 * s * mi - ni).rem_euclid(big) == 0 {
                    root_of_unity(s * mi * mi, big)
                } else {
                    zero
                })
            } else {
                Ok(if (s * mi - ni).rem_euclid(big) == 0 {
                    root_of_unity(s * mi * mi, 2 * big)
                } else {
                    zero
                })
            }
        }
        (Family::BjorckSaffariSq, Params::BjorckSaffariSq { c, sigma }) => {
            let root = c.len();
            if root * root != len || sigma.len() != root {
                return Err(Error::InvalidParams(format!(
                    "Björck-Saffari parameters of size {root} do not match length {len}"
                )));
            }
            Ok(bjorck_saffari_closed(c, sigma, mi as usize, ni as usize))
        }
        (Family::Milewski, Params::Milewski { v, m: vm, n: vn }) => {
            if v.len() != *vm || vm * vn * vn != len {
                return Err(Error::InvalidParams(format!(
                    "Milewski parameters M = {vm}, N = {vn} do not match length {len}"
                )));
            }
            Ok(milewski_closed(v, *vn, mi as usize, ni as usize))
        }
        (Family::Kronecker, Params::Kronecker { u, v }) => {
            if u.len() * v.len() != len {
                return Err(Error::InvalidParams(format!(
                    "Kronecker factors of lengths {} and {} do not match length {len}",
                    u.len(),
                    v.len()
                )));
            }
            Ok(kronecker_closed(u, v, mi as usize, ni as usize))
        }
        (Family::Wiener | Family::BjorckSaffariSq | Family::Milewski | Family::Kronecker, p) => {
            Err(Error::InvalidParams(format!(
                "parameters {p:?} do not belong to family {family}"
            )))
        }
        (Family::Bjorck | Family::Custom, _) => Err(Error::UnknownFamily(family.to_string())),
    }
}

/// Square-length Björck-Saffari DPAF at `(sN + t, kN + l)`: the sum over the
/// row block collapses to `N` times an indicator of
/// `sigma(h + t) - sigma(h) - l = 0 mod N`, leaving a sum over `h`.
fn bjorck_saffari_closed(c: &[C64], sigma: &[usize], m: usize, n: usize) -> C64 {
    let root = c.len();
    let big = (root * root) as i128;
    let (s, t) = (m / root, m % root);
    let (k, l) = (n / root, n % root);
    let mut acc = C64::new(0.0, 0.0);
    for h in 0..root {
        let ht = h + t;
        let carry = ht / root;
        let ht = ht % root;
        if (sigma[ht] as i64 - sigma[h] as i64 - l as i64).rem_euclid(root as i64) != 0 {
            continue;
        }
        // e^{2 pi i (s + carry) sigma(h+t) / N} e^{-2 pi i (k h N + l h) / N^2}
        let num = ((s + carry) * sigma[ht] * root) as i128 - ((k * h * root + l * h) as i128);
        acc += c[ht] * c[h].conj() * root_of_unity(num, big);
    }
    acc / root as f64
}

/// Milewski DPAF at `(kN + l, s)` for `phi[aN + b] = v[a] w^{ab}`,
/// `w = e^{2 pi i / (MN)}`. Vanishes unless `s = l mod N`; otherwise with
/// `s = l + N s'` and carry `c = floor((b + l) / N)`
///
/// ```text
/// A[kN + l, s] = (1/N) sum_b w^{(k + c)(b + l - cN)} e^{-2 pi i s b / (M N^2)} A_v[k + c, s' + c]
/// ```
fn milewski_closed(v: &[C64], n: usize, m_idx: usize, s: usize) -> C64 {
    let vm = v.len();
    let len = (vm * n * n) as i128;
    let (k, l) = (m_idx / n, m_idx % n);
    if (s + n - l) % n != 0 {
        return C64::new(0.0, 0.0);
    }
    let s_prime = (s as i64 - l as i64).div_euclid(n as i64);
    let mut acc = C64::new(0.0, 0.0);
    for b in 0..n {
        let carry = (b + l) / n;
        let shift = (k + carry) as i128;
        let offset = (b + l) as i128 - (carry * n) as i128;
        // w^x = e^{2 pi i x N / (M N^2)}
        let num = shift * offset * n as i128 - (s * b) as i128;
        let inner = dpaf_entry(v, shift as i64, s_prime + carry as i64);
        acc += root_of_unity(num, len) * inner;
    }
    acc / n as f64
}

/// Kronecker-product DPAF at `(rN + s, l)`:
///
/// ```text
/// (1/N) sum_k v[s + k] conj(v[k]) e^{-2 pi i k l / (MN)} A_u[r + floor((s + k)/N), l]
/// ```
fn kronecker_closed(u: &[C64], v: &[C64], m_idx: usize, l: usize) -> C64 {
    let vn = v.len();
    let len = (u.len() * vn) as i128;
    let (r, s) = (m_idx / vn, m_idx % vn);
    let mut acc = C64::new(0.0, 0.0);
    for k in 0..vn {
        let carry = (s + k) / vn;
        let phase = root_of_unity(-((k * l) as i128), len);
        acc += v[(s + k) % vn] * v[k].conj() * phase * dpaf_entry(u, (r + carry) as i64, l as i64);
    }
    acc / vn as f64
}

/// A nonzero DPAF value found on the adjoint lattice away from the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub m: usize,
    pub n: usize,
    pub value: C64,
}

/// All `(m, n)` in `adjoint \ {(0,0)}` with `|A[m, n]| > tol.zero`.
pub fn check_sparse(
    d: &DpafMatrix,
    adjoint: &TFSubgroup,
    tol: &Tolerances,
) -> Result<Vec<Witness>> {
    check_len(d.n(), adjoint.n())?;
    Ok(adjoint
        .elements()
        .iter()
        .filter(|&&(m, n)| (m, n) != (0, 0))
        .filter_map(|&(m, n)| {
            let value = d.get(m as i64, n as i64);
            (value.norm() > tol.zero).then_some(Witness { m, n, value })
        })
        .collect())
}

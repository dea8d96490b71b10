//! CAZAC sequence families and the constant-amplitude / zero-autocorrelation
//! checks.
//!
//! Every generator returns a [`Sequence`] carrying its family tag and the
//! parameters it was built from, so that closed-form ambiguity functions can
//! be evaluated later without re-deriving them from the samples.

use crate::arith::{gcd_signed, is_prime, legendre, root_of_unity};
use crate::{Error, Result, Tolerances, C64};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Chu,
    P4,
    Wiener,
    Bjorck,
    BjorckSaffariSq,
    Milewski,
    Kronecker,
    Custom,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Chu => "chu",
            Family::P4 => "p4",
            Family::Wiener => "wiener",
            Family::Bjorck => "bjorck",
            Family::BjorckSaffariSq => "bjorck_saffari_sq",
            Family::Milewski => "milewski",
            Family::Kronecker => "kronecker",
            Family::Custom => "custom",
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "chu" => Family::Chu,
            "p4" => Family::P4,
            "wiener" => Family::Wiener,
            "bjorck" => Family::Bjorck,
            "bjorck_saffari_sq" | "bjorck-saffari-sq" | "bjorck-saffari" => Family::BjorckSaffariSq,
            "milewski" => Family::Milewski,
            "kronecker" => Family::Kronecker,
            "custom" => Family::Custom,
            other => return Err(Error::Format(format!("unknown family `{other}`"))),
        })
    }
}

/// Family-specific construction parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum Params {
    None,
    Wiener {
        s: i64,
    },
    Bjorck {
        p: u64,
    },
    BjorckSaffariSq {
        c: Vec<C64>,
        sigma: Vec<usize>,
    },
    /// `v` has length `m`; the sequence has length `m * n^2`.
    Milewski {
        v: Vec<C64>,
        m: usize,
        n: usize,
    },
    Kronecker {
        u: Vec<C64>,
        v: Vec<C64>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sequence {
    family: Family,
    params: Params,
    entries: Vec<C64>,
}

impl Sequence {
    /// An untagged sequence.
    pub fn custom(entries: Vec<C64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyLength);
        }
        Ok(Self {
            family: Family::Custom,
            params: Params::None,
            entries,
        })
    }

    /// Reassemble a sequence from its parts, e.g. after deserialization.
    pub fn from_parts(family: Family, params: Params, entries: Vec<C64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyLength);
        }
        Ok(Self {
            family,
            params,
            entries,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<C64> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn norm_sq(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }
}

impl AsRef<[C64]> for Sequence {
    fn as_ref(&self) -> &[C64] {
        &self.entries
    }
}

/// Outcome of [`verify_cazac`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CazacReport {
    pub is_ca: bool,
    pub is_zac: bool,
    pub max_amplitude_deviation: f64,
    pub max_autocorrelation_magnitude: f64,
}

impl CazacReport {
    pub fn is_cazac(&self) -> bool {
        self.is_ca && self.is_zac
    }
}

/// `e^{i pi p[k] / N}` for an integer phase polynomial `p`.
fn chirp(n: usize, phase: impl Fn(i128) -> i128) -> Vec<C64> {
    let two_n = 2 * n as i128;
    (0..n as i128)
        .map(|k| root_of_unity(phase(k), two_n))
        .collect()
}

/// Chu sequence, `p[k] = k (k - 1)`, odd `N` only.
pub fn gen_chu(n: usize) -> Result<Sequence> {
    if n == 0 {
        return Err(Error::EmptyLength);
    }
    if n % 2 == 0 {
        return Err(Error::EvenChuLength(n));
    }
    Ok(Sequence {
        family: Family::Chu,
        params: Params::None,
        entries: chirp(n, |k| k * (k - 1)),
    })
}

/// P4 sequence, `p[k] = k (k - N)`.
pub fn gen_p4(n: usize) -> Result<Sequence> {
    if n == 0 {
        return Err(Error::EmptyLength);
    }
    let nn = n as i128;
    Ok(Sequence {
        family: Family::P4,
        params: Params::None,
        entries: chirp(n, |k| k * (k - nn)),
    })
}

/// Wiener sequence: `p[k] = 2 s k^2` for odd `N`, `p[k] = s k^2` for even `N`
/// (with respect to the common `e^{i pi p / N}` form).
pub fn gen_wiener(n: usize, s: i64) -> Result<Sequence> {
    if n == 0 {
        return Err(Error::EmptyLength);
    }
    let entries = if n % 2 == 1 {
        if gcd_signed(s, n as u64) != 1 {
            return Err(Error::WienerOddGcd { n, s });
        }
        chirp(n, |k| 2 * s as i128 * k * k)
    } else {
        if gcd_signed(s, 2 * n as u64) != 1 {
            return Err(Error::WienerEvenGcd { n, s });
        }
        chirp(n, |k| s as i128 * k * k)
    };
    Ok(Sequence {
        family: Family::Wiener,
        params: Params::Wiener { s },
        entries,
    })
}

/// Björck sequence of prime length `p`.
///
/// For `p = 1 mod 4` the phase is `(k/p) arccos(1 / (1 + sqrt p))`. Otherwise
/// (including `p = 2`, which has no quadratic non-residue) the phase is
/// `arccos((1 - p) / (1 + p))` on non-residues and 0 elsewhere.
pub fn gen_bjorck(p: u64) -> Result<Sequence> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let pf = p as f64;
    let entries = if p % 4 == 1 {
        let theta = (1.0 / (1.0 + pf.sqrt())).acos();
        (0..p)
            .map(|k| C64::from_polar(1.0, f64::from(legendre(k as i64, p)) * theta))
            .collect()
    } else {
        let theta = ((1.0 - pf) / (1.0 + pf)).acos();
        (0..p)
            .map(|k| match legendre(k as i64, p) {
                -1 => C64::from_polar(1.0, theta),
                _ => C64::new(1.0, 0.0),
            })
            .collect()
    };
    Ok(Sequence {
        family: Family::Bjorck,
        params: Params::Bjorck { p },
        entries,
    })
}

fn check_unimodular(what: &'static str, x: &[C64], tol: &Tolerances) -> Result<()> {
    if x.is_empty() {
        return Err(Error::EmptyLength);
    }
    for (index, z) in x.iter().enumerate() {
        let modulus = z.norm();
        if (modulus - 1.0).abs() > tol.unit || !modulus.is_finite() {
            return Err(Error::NotUnimodular {
                what,
                index,
                modulus,
            });
        }
    }
    Ok(())
}

/// Square-length Björck-Saffari sequence:
/// `phi[r N + h] = c[h] e^{2 pi i r sigma(h) / N}` for `r, h` in `0..N`.
pub fn gen_bjorck_saffari_sq(c: &[C64], sigma: &[usize], tol: &Tolerances) -> Result<Sequence> {
    check_unimodular("c", c, tol)?;
    let n = c.len();
    if sigma.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: sigma.len(),
        });
    }
    let mut seen = vec![false; n];
    for &s in sigma {
        if s >= n || std::mem::replace(&mut seen[s], true) {
            return Err(Error::NotPermutation(n));
        }
    }
    let mut entries = Vec::with_capacity(n * n);
    for r in 0..n {
        for h in 0..n {
            entries.push(c[h] * root_of_unity((r * sigma[h]) as i128, n as i128));
        }
    }
    Ok(Sequence {
        family: Family::BjorckSaffariSq,
        params: Params::BjorckSaffariSq {
            c: c.to_vec(),
            sigma: sigma.to_vec(),
        },
        entries,
    })
}

/// Milewski sequence of length `M N^2` built from a CAZAC `v` of length `M`:
/// `phi[a N + b] = v[a mod M] e^{2 pi i a b / (M N)}`, `a` in `0..MN`, `b` in `0..N`.
pub fn gen_milewski(v: &Sequence, n: usize, tol: &Tolerances) -> Result<Sequence> {
    if n == 0 {
        return Err(Error::EmptyLength);
    }
    let report = verify_cazac(v, tol);
    if !report.is_cazac() {
        return Err(Error::NotCazac {
            amplitude: report.max_amplitude_deviation,
            autocorrelation: report.max_autocorrelation_magnitude,
        });
    }
    let m = v.len();
    let mn = (m * n) as i128;
    let mut entries = Vec::with_capacity(m * n * n);
    for a in 0..m * n {
        for b in 0..n {
            entries.push(v.entries[a % m] * root_of_unity((a * b) as i128, mn));
        }
    }
    Ok(Sequence {
        family: Family::Milewski,
        params: Params::Milewski {
            v: v.entries.clone(),
            m,
            n,
        },
        entries,
    })
}

/// Kronecker product `u ⊗ v`: `phi[r N + s] = u[r] v[s]`.
pub fn gen_kronecker(u: &[C64], v: &[C64], tol: &Tolerances) -> Result<Sequence> {
    check_unimodular("u", u, tol)?;
    check_unimodular("v", v, tol)?;
    let entries = u
        .iter()
        .flat_map(|&ur| v.iter().map(move |&vs| ur * vs))
        .collect();
    Ok(Sequence {
        family: Family::Kronecker,
        params: Params::Kronecker {
            u: u.to_vec(),
            v: v.to_vec(),
        },
        entries,
    })
}

/// Cyclic autocorrelation `sum_k x[k + m] conj(x[k])`.
pub fn autocorrelation(x: &[C64], m: usize) -> C64 {
    let n = x.len();
    (0..n).map(|k| x[(k + m) % n] * x[k].conj()).sum()
}

pub fn verify_cazac(phi: impl AsRef<[C64]>, tol: &Tolerances) -> CazacReport {
    let x = phi.as_ref();
    let n = x.len();
    let max_amplitude_deviation = x.iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max);
    let max_autocorrelation_magnitude = (1..n)
        .map(|m| autocorrelation(x, m).norm())
        .fold(0.0, f64::max);
    CazacReport {
        is_ca: max_amplitude_deviation <= tol.unit,
        is_zac: max_autocorrelation_magnitude <= tol.zero * n as f64,
        max_amplitude_deviation,
        max_autocorrelation_magnitude,
    }
}

/// Rotate so that the first entry becomes 1.
pub fn normalize_rotation(phi: &Sequence) -> Result<Sequence> {
    let first = phi.entries[0];
    if first == C64::new(0.0, 0.0) {
        return Err(Error::ZeroFirstEntry);
    }
    let scale = first.inv();
    let mut entries: Vec<C64> = phi.entries.iter().map(|&z| z * scale).collect();
    entries[0] = C64::new(1.0, 0.0);
    Sequence::custom(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn close(a: C64, b: C64, eps: f64) -> bool {
        (a - b).norm() <= eps
    }

    /// Autocorrelation oracle via |DFT|^2: the inverse transform of the power
    /// spectrum is the cyclic autocorrelation.
    fn oracle_max_offpeak_autocorrelation(x: &[C64]) -> f64 {
        let n = x.len();
        let nf = n as f64;
        let spectrum: Vec<f64> = (0..n)
            .map(|l| {
                x.iter()
                    .enumerate()
                    .map(|(k, &z)| z * C64::from_polar(1.0, -2.0 * PI * (k * l) as f64 / nf))
                    .sum::<C64>()
                    .norm_sqr()
            })
            .collect();
        (1..n)
            .map(|m| {
                spectrum
                    .iter()
                    .enumerate()
                    .map(|(l, &p)| p * C64::from_polar(1.0, 2.0 * PI * (l * m) as f64 / nf))
                    .sum::<C64>()
                    .norm()
                    / nf
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn chu_small_lengths() {
        assert_eq!(gen_chu(1).unwrap().entries(), &[C64::new(1.0, 0.0)]);
        let chu3 = gen_chu(3).unwrap();
        let expected = [
            C64::new(1.0, 0.0),
            C64::new(1.0, 0.0),
            C64::from_polar(1.0, 2.0 * PI / 3.0),
        ];
        for (a, b) in chu3.entries().iter().zip(expected) {
            assert!(close(*a, b, 1e-15));
        }
        assert!(matches!(gen_chu(4), Err(Error::EvenChuLength(4))));
        assert!(verify_cazac(gen_chu(5).unwrap(), &tol()).is_cazac());
        assert!(oracle_max_offpeak_autocorrelation(gen_chu(5).unwrap().entries()) < 1e-12);
    }

    #[test]
    fn p4_length_four_matches_listing() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected = [
            C64::new(1.0, 0.0),
            C64::new(-h, -h),
            C64::new(-1.0, 0.0),
            C64::new(-h, -h),
        ];
        let p4 = gen_p4(4).unwrap();
        for (a, b) in p4.entries().iter().zip(expected) {
            assert!(close(*a, b, 1e-15), "{a} vs {b}");
        }
        assert_eq!(gen_p4(1).unwrap().entries(), &[C64::new(1.0, 0.0)]);
        assert!(verify_cazac(gen_p4(6).unwrap(), &tol()).is_zac);
    }

    #[test]
    fn wiener_parities_and_gcd_errors() {
        let w = gen_wiener(5, 1).unwrap();
        for (k, z) in w.entries().iter().enumerate() {
            let expected = C64::from_polar(1.0, 2.0 * PI * (k * k) as f64 / 5.0);
            assert!(close(*z, expected, 1e-14));
        }
        assert!(matches!(gen_wiener(3, 3), Err(Error::WienerOddGcd { .. })));
        assert!(matches!(gen_wiener(4, 2), Err(Error::WienerEvenGcd { .. })));
        assert!(verify_cazac(gen_wiener(4, 1).unwrap(), &tol()).is_cazac());
        assert!(verify_cazac(gen_wiener(9, -2).unwrap(), &tol()).is_cazac());
    }

    #[test]
    fn bjorck_eleven_pattern_and_angle() {
        let b = gen_bjorck(11).unwrap();
        let theta = (-10.0f64 / 12.0).acos();
        let pattern = [0, 0, 1, 0, 0, 0, 1, 1, 1, 0, 1];
        for (z, &on) in b.entries().iter().zip(&pattern) {
            let expected = if on == 1 {
                C64::from_polar(1.0, theta)
            } else {
                C64::new(1.0, 0.0)
            };
            assert!(close(*z, expected, 1e-15));
        }
        assert!(verify_cazac(&b, &tol()).is_cazac());

        // The alternative angle arccos(-10/11) does not give a CAZAC sequence.
        let alt: Vec<C64> = pattern
            .iter()
            .map(|&on| {
                C64::from_polar(
                    1.0,
                    if on == 1 {
                        (-10.0f64 / 11.0).acos()
                    } else {
                        0.0
                    },
                )
            })
            .collect();
        assert!(!verify_cazac(&alt, &tol()).is_zac);
    }

    #[test]
    fn bjorck_two_and_errors() {
        let b2 = gen_bjorck(2).unwrap();
        assert_eq!(b2.entries(), &[C64::new(1.0, 0.0), C64::new(1.0, 0.0)]);
        assert!(matches!(gen_bjorck(9), Err(Error::NotPrime(9))));
        assert!(matches!(gen_bjorck(1), Err(Error::NotPrime(1))));
        assert!(verify_cazac(gen_bjorck(7).unwrap(), &tol()).is_cazac());
    }

    #[test]
    fn bjorck_saffari_small_cases() {
        let one = C64::new(1.0, 0.0);
        let s1 = gen_bjorck_saffari_sq(&[one], &[0], &tol()).unwrap();
        assert_eq!(s1.entries(), &[one]);
        let s2 = gen_bjorck_saffari_sq(&[one, one], &[0, 1], &tol()).unwrap();
        let expected = [one, one, one, -one];
        for (a, b) in s2.entries().iter().zip(expected) {
            assert!(close(*a, b, 1e-15));
        }
        let c = gen_chu(3).unwrap();
        let s3 = gen_bjorck_saffari_sq(c.entries(), &[0, 1, 2], &tol()).unwrap();
        assert_eq!(s3.len(), 9);
        assert!(verify_cazac(&s3, &tol()).is_cazac());
        assert!(oracle_max_offpeak_autocorrelation(s3.entries()) < 1e-12);

        assert!(matches!(
            gen_bjorck_saffari_sq(&[one, C64::new(0.5, 0.0)], &[0, 1], &tol()),
            Err(Error::NotUnimodular { .. })
        ));
        assert!(matches!(
            gen_bjorck_saffari_sq(&[one, one], &[1, 1], &tol()),
            Err(Error::NotPermutation(2))
        ));
    }

    #[test]
    fn milewski_small_cases() {
        let unit = Sequence::custom(vec![C64::new(1.0, 0.0)]).unwrap();
        assert_eq!(
            gen_milewski(&unit, 1, &tol()).unwrap().entries(),
            &[C64::new(1.0, 0.0)]
        );

        let m = gen_milewski(&gen_chu(3).unwrap(), 2, &tol()).unwrap();
        assert_eq!(m.len(), 12);
        assert!(verify_cazac(&m, &tol()).is_cazac());
        assert!(oracle_max_offpeak_autocorrelation(m.entries()) < 1e-12);

        // Direct evaluation at all 8 indices for v = P4 of length 2, N = 2.
        let v = gen_p4(2).unwrap();
        let m = gen_milewski(&v, 2, &tol()).unwrap();
        for a in 0..4usize {
            for b in 0..2usize {
                let expected =
                    v.entries()[a % 2] * C64::from_polar(1.0, 2.0 * PI * (a * b) as f64 / 4.0);
                assert!(close(m.entries()[a * 2 + b], expected, 1e-15));
            }
        }

        let constant = Sequence::custom(vec![C64::new(1.0, 0.0); 3]).unwrap();
        assert!(matches!(
            gen_milewski(&constant, 2, &tol()),
            Err(Error::NotCazac { .. })
        ));
    }

    #[test]
    fn kronecker_cases() {
        let one = C64::new(1.0, 0.0);
        let k = gen_kronecker(&[one], &[one, -one], &tol()).unwrap();
        assert_eq!(k.entries(), &[one, -one]);

        let k = gen_kronecker(&[one, one], &[one, one], &tol()).unwrap();
        assert!(k.entries().iter().all(|&z| z == one));
        assert!(!verify_cazac(&k, &tol()).is_zac);

        let u = gen_bjorck(7).unwrap();
        let v = gen_p4(4).unwrap();
        let k = gen_kronecker(u.entries(), v.entries(), &tol()).unwrap();
        assert_eq!(k.len(), 28);
        for r in 0..7 {
            for s in 0..4 {
                assert_eq!(k.entries()[r * 4 + s], u.entries()[r] * v.entries()[s]);
            }
        }
        assert!(gen_kronecker(&[C64::new(2.0, 0.0)], &[one], &tol()).is_err());
    }

    #[test]
    fn verify_cazac_examples() {
        let one = C64::new(1.0, 0.0);
        let r = verify_cazac([one, one, one], &tol());
        assert!(r.is_ca && !r.is_zac);
        assert!((r.max_autocorrelation_magnitude - 3.0).abs() < 1e-15);

        let r = verify_cazac(gen_chu(7).unwrap(), &tol());
        assert!(r.is_ca && r.is_zac);

        let r = verify_cazac([one, C64::new(0.5, 0.0)], &tol());
        assert!(!r.is_ca);
        assert!((r.max_amplitude_deviation - 0.5).abs() < 1e-15);
    }

    #[test]
    fn normalize_rotation_examples() {
        let i = C64::new(0.0, 1.0);
        let n = normalize_rotation(&Sequence::custom(vec![i, -i]).unwrap()).unwrap();
        assert!(close(n.entries()[0], C64::new(1.0, 0.0), 0.0));
        assert!(close(n.entries()[1], C64::new(-1.0, 0.0), 1e-15));

        let zero_first = Sequence::custom(vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)]).unwrap();
        assert!(matches!(
            normalize_rotation(&zero_first),
            Err(Error::ZeroFirstEntry)
        ));

        let rotated: Vec<C64> = gen_chu(9)
            .unwrap()
            .entries()
            .iter()
            .map(|&z| z * C64::from_polar(1.0, 0.7))
            .collect();
        let n = normalize_rotation(&Sequence::custom(rotated).unwrap()).unwrap();
        assert!(verify_cazac(&n, &tol()).is_cazac());
    }

    #[test]
    fn family_names_round_trip() {
        for f in [
            Family::Chu,
            Family::P4,
            Family::Wiener,
            Family::Bjorck,
            Family::BjorckSaffariSq,
            Family::Milewski,
            Family::Kronecker,
            Family::Custom,
        ] {
            assert_eq!(f.as_str().parse::<Family>().unwrap(), f);
        }
        assert!("gauss".parse::<Family>().is_err());
    }
}

//! Integer helpers on `Z_N`.

use crate::C64;
use std::f64::consts::PI;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `gcd(|a|, b)` for a signed `a`.
pub fn gcd_signed(a: i64, b: u64) -> u64 {
    gcd(a.unsigned_abs(), b)
}

/// Representative of `x mod n` in `0..n`.
pub fn modn(x: i64, n: usize) -> usize {
    x.rem_euclid(n as i64) as usize
}

/// Deterministic trial division; adequate for the lengths handled here.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Legendre symbol `(k / p)` by Euler's criterion. `p` must be prime.
pub fn legendre(k: i64, p: u64) -> i8 {
    let r = k.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    match pow_mod(r, (p - 1) / 2, p) {
        1 => 1,
        _ => -1,
    }
}

/// `exp(2 pi i * num / den)` with the numerator reduced modulo `den` first,
/// so that large integer phases keep full precision.
pub fn root_of_unity(num: i128, den: i128) -> C64 {
    debug_assert!(den > 0);
    let r = num.rem_euclid(den);
    C64::from_polar(1.0, 2.0 * PI * (r as f64) / (den as f64))
}

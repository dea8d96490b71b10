/// Numerical thresholds shared by the checks in this crate.
///
/// `zero` is applied absolutely to ambiguity-function values (which are
/// bounded by 1 for unimodular inputs) and scaled by `N` wherever a sum of
/// `N` unit-size terms is compared against zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Allowed deviation of `|x[k]|` from 1.
    pub unit: f64,
    /// Absolute zero threshold.
    pub zero: f64,
    /// Eigenvalues below `rank * lambda_max` count as zero.
    pub rank: f64,
    /// Allowed relative spread among nonzero eigenvalues.
    pub eig: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            unit: 1e-9,
            zero: 1e-9,
            rank: 1e-8,
            eig: 1e-8,
        }
    }
}

impl Tolerances {
    /// Defaults with `zero` replaced by `value`.
    pub fn with_zero(value: f64) -> Self {
        Self {
            zero: value,
            ..Self::default()
        }
    }
}

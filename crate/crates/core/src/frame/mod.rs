//! Gabor systems `(phi, Lambda) = {e_l T_k phi : (k, l) in Lambda}` and the
//! operators attached to them.
//!
//! Vectors are ordered by the canonical (lexicographic) element order of the
//! subgroup. For a product `K x L` this is translation-major with modulation
//! varying fastest, so row `r |L| + s` is `e_{l_s} T_{k_r} phi`.

mod certify;
mod gram;

pub use certify::{
    certify_bruteforce, certify_gram, certify_sparsity, gram_spectrum, reconstruct,
    wexler_raz_check, Method, TightnessReport, WexlerRaz,
};
pub use gram::{gram_direct, gram_structure_probe, gram_via_dpaf, GramMatrix, StructureReport};

use crate::lattice::{adjoint, TFSubgroup};
use crate::sequences::Sequence;
use crate::tf::{tf_shift, twiddles};
use crate::{Error, Result, C64};
use nalgebra::DMatrix;

#[derive(Debug, Clone)]
pub struct GaborSystem {
    phi: Sequence,
    lambda: TFSubgroup,
    vectors: Vec<Vec<C64>>,
}

impl GaborSystem {
    pub fn phi(&self) -> &Sequence {
        &self.phi
    }

    pub fn lambda(&self) -> &TFSubgroup {
        &self.lambda
    }

    /// Ambient dimension `N`.
    pub fn dim(&self) -> usize {
        self.phi.len()
    }

    /// Number of vectors, `|Lambda|`.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<C64>] {
        &self.vectors
    }

    /// `(k, l)` of each vector, in system order.
    pub fn shifts(&self) -> &[(usize, usize)] {
        self.lambda.elements()
    }
}

pub fn build_system(phi: &Sequence, lambda: &TFSubgroup) -> Result<GaborSystem> {
    check_dim(phi.len(), lambda.n())?;
    let vectors = lambda
        .elements()
        .iter()
        .map(|&(k, l)| tf_shift(phi.entries(), k as i64, l as i64))
        .collect();
    Ok(GaborSystem {
        phi: phi.clone(),
        lambda: lambda.clone(),
        vectors,
    })
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// `<x, y> = sum x[j] conj(y[j])`.
pub(crate) fn inner(x: &[C64], y: &[C64]) -> C64 {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

/// Analysis coefficients `<x, v_i>` in system order.
pub fn analysis_apply(sys: &GaborSystem, x: &[C64]) -> Result<Vec<C64>> {
    check_dim(sys.dim(), x.len())?;
    Ok(sys.vectors.iter().map(|v| inner(x, v)).collect())
}

/// `sum_i c_i v_i`.
pub fn synthesis_apply(sys: &GaborSystem, c: &[C64]) -> Result<Vec<C64>> {
    check_dim(sys.len(), c.len())?;
    let mut out = vec![C64::new(0.0, 0.0); sys.dim()];
    for (coef, v) in c.iter().zip(&sys.vectors) {
        for (o, &vj) in out.iter_mut().zip(v) {
            *o += coef * vj;
        }
    }
    Ok(out)
}

/// Matrix of `S x = sum_i <x, v_i> v_i`, i.e. `sum_i v_i v_i^*`.
pub fn frame_operator(sys: &GaborSystem) -> DMatrix<C64> {
    let n = sys.dim();
    let mut s = DMatrix::<C64>::zeros(n, n);
    for v in &sys.vectors {
        for j in 0..n {
            let vj = v[j];
            for k in 0..n {
                s[(j, k)] += vj * v[k].conj();
            }
        }
    }
    s
}

/// Matrix of the operator `e_l T_k`.
pub fn tf_operator(n: usize, k: usize, l: usize) -> DMatrix<C64> {
    let w = twiddles(n, 1);
    let mut op = DMatrix::<C64>::zeros(n, n);
    for j in 0..n {
        op[(j, (j + n - k % n) % n)] = w[(j * l) % n];
    }
    op
}

/// Janssen representation of the frame operator,
/// `S = (|Lambda| / N) sum_{(m,n) in Lambda°} <phi, e_n T_m phi> e_n T_m`.
pub fn janssen_operator(phi: &Sequence, lambda: &TFSubgroup) -> Result<DMatrix<C64>> {
    let n = phi.len();
    check_dim(n, lambda.n())?;
    let adj = adjoint(lambda);
    let w = twiddles(n, 1);
    let scale = lambda.len() as f64 / n as f64;
    let mut s = DMatrix::<C64>::zeros(n, n);
    for &(m, freq) in adj.elements() {
        let shifted = tf_shift(phi.entries(), m as i64, freq as i64);
        let coef = inner(phi.entries(), &shifted) * scale;
        for j in 0..n {
            s[(j, (j + n - m) % n)] += coef * w[(j * freq) % n];
        }
    }
    Ok(s)
}

pub(crate) fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{cyclic_subgroup, full_lattice, product_subgroup, trivial_subgroup};
    use crate::sequences::{gen_bjorck, gen_chu, gen_p4};
    use crate::TFSubgroup;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn identity_defect(s: &DMatrix<C64>, bound: f64) -> f64 {
        let n = s.nrows();
        max_abs(&(s - DMatrix::<C64>::identity(n, n) * c(bound, 0.0)))
    }

    #[test]
    fn trivial_system_is_phi() {
        let phi = gen_chu(5).unwrap();
        let sys = build_system(&phi, &trivial_subgroup(5)).unwrap();
        assert_eq!(sys.vectors(), &[phi.entries().to_vec()]);
        let s = frame_operator(&sys);
        for j in 0..5 {
            for k in 0..5 {
                let expected = phi.entries()[j] * phi.entries()[k].conj();
                assert!((s[(j, k)] - expected).norm() < 1e-15);
            }
        }
        assert!(build_system(&phi, &trivial_subgroup(4)).is_err());
    }

    #[test]
    fn p4_remark_vectors() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let phi = gen_p4(4).unwrap();
        let lambda = TFSubgroup::from_elements(4, vec![(0, 0), (0, 2), (2, 0), (2, 2)]).unwrap();
        let sys = build_system(&phi, &lambda).unwrap();
        let expected = [
            [c(1.0, 0.0), c(-h, -h), c(-1.0, 0.0), c(-h, -h)],
            [c(1.0, 0.0), c(h, h), c(-1.0, 0.0), c(h, h)],
            [c(-1.0, 0.0), c(-h, -h), c(1.0, 0.0), c(-h, -h)],
            [c(-1.0, 0.0), c(h, h), c(1.0, 0.0), c(h, h)],
        ];
        for (v, e) in sys.vectors().iter().zip(&expected) {
            for (a, b) in v.iter().zip(e) {
                assert!((a - b).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn chu15_vectors_have_norm_sqrt15() {
        let sys = build_system(
            &gen_chu(15).unwrap(),
            &product_subgroup(15, 3, 5, 1).unwrap(),
        )
        .unwrap();
        assert_eq!(sys.len(), 15);
        for v in sys.vectors() {
            let norm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            assert!((norm_sq - 15.0).abs() < 1e-12);
        }
    }

    #[test]
    fn analysis_and_synthesis() {
        // The translates of a delta form an orthonormal basis.
        let delta = Sequence::custom(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let lambda = cyclic_subgroup(3, (1, 0));
        let sys = build_system(&delta, &lambda).unwrap();
        let coeffs = analysis_apply(&sys, &sys.vectors()[0]).unwrap();
        assert_eq!(coeffs, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(analysis_apply(&sys, &[c(0.0, 0.0); 3])
            .unwrap()
            .iter()
            .all(|z| z.norm() == 0.0));

        let e0 = synthesis_apply(&sys, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(e0, sys.vectors()[0]);
        assert!(synthesis_apply(&sys, &[c(0.0, 0.0); 3])
            .unwrap()
            .iter()
            .all(|z| z.norm() == 0.0));
        assert!(synthesis_apply(&sys, &[c(0.0, 0.0); 2]).is_err());

        // S = F* F on an arbitrary system and input.
        let phi = gen_bjorck(7).unwrap();
        let sys = build_system(&phi, &cyclic_subgroup(7, (1, 2))).unwrap();
        let x: Vec<C64> = (0..7).map(|j| c(j as f64 - 2.0, 0.5 * j as f64)).collect();
        let via_ops = synthesis_apply(&sys, &analysis_apply(&sys, &x).unwrap()).unwrap();
        let s = frame_operator(&sys);
        for j in 0..7 {
            let direct: C64 = (0..7).map(|k| s[(j, k)] * x[k]).sum();
            assert!((direct - via_ops[j]).norm() < 1e-12);
        }
    }

    #[test]
    fn full_lattice_energy_identity() {
        let phi = gen_chu(5).unwrap();
        let sys = build_system(&phi, &full_lattice(5)).unwrap();
        let x: Vec<C64> = (0..5)
            .map(|j| c(1.0 / (j + 1) as f64, -(j as f64)))
            .collect();
        let energy: f64 = analysis_apply(&sys, &x)
            .unwrap()
            .iter()
            .map(|z| z.norm_sqr())
            .sum();
        let x_norm_sq: f64 = x.iter().map(|z| z.norm_sqr()).sum();
        assert!((energy - 5.0 * 5.0 * x_norm_sq).abs() < 1e-9);
    }

    #[test]
    fn frame_operator_examples() {
        let chu3 = gen_chu(3).unwrap();
        let s = frame_operator(&build_system(&chu3, &full_lattice(3)).unwrap());
        assert!(identity_defect(&s, 9.0) < 1e-12);

        let chu15 = gen_chu(15).unwrap();
        let sys = build_system(&chu15, &product_subgroup(15, 3, 5, 1).unwrap()).unwrap();
        assert!(identity_defect(&frame_operator(&sys), 15.0) < 1e-9);
    }

    #[test]
    fn janssen_examples() {
        let phi = gen_chu(7).unwrap();
        let j = janssen_operator(&phi, &full_lattice(7)).unwrap();
        assert!(identity_defect(&j, 7.0 * 7.0) < 1e-12);

        let phi = gen_p4(6).unwrap();
        let lambda = product_subgroup(6, 2, 3, 1).unwrap();
        let j = janssen_operator(&phi, &lambda).unwrap();
        let s = frame_operator(&build_system(&phi, &lambda).unwrap());
        assert!(max_abs(&(&j - &s)) < 1e-9);

        let phi = gen_bjorck(7).unwrap();
        let lambda = cyclic_subgroup(7, (1, 2));
        let j = janssen_operator(&phi, &lambda).unwrap();
        let s = frame_operator(&build_system(&phi, &lambda).unwrap());
        assert!(max_abs(&(&j - &s)) < 1e-9);
        assert!(identity_defect(&s, s[(0, 0)].re) > 1e-3);
    }

    #[test]
    fn tf_operator_matches_shift() {
        let x: Vec<C64> = (0..6).map(|j| c(j as f64, 1.0 - j as f64)).collect();
        let op = tf_operator(6, 2, 5);
        let shifted = tf_shift(&x, 2, 5);
        for j in 0..6 {
            let v: C64 = (0..6).map(|k| op[(j, k)] * x[k]).sum();
            assert!((v - shifted[j]).norm() < 1e-14);
        }
    }
}

use super::gram::SparseGram;
use super::{
    analysis_apply, check_dim, frame_operator, inner, max_abs, synthesis_apply, GaborSystem,
};
use crate::lattice::{adjoint_bruteforce, adjoint_product_closed, Structure, TFSubgroup};
use crate::sequences::Sequence;
use crate::tf::{check_sparse, dpaf, tf_shift, twiddles, Witness};
use crate::{Error, Result, Tolerances, C64};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Sparsity,
    Gram,
    Bruteforce,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Sparsity => "sparsity",
            Method::Gram => "gram",
            Method::Bruteforce => "bruteforce",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sparsity" => Ok(Method::Sparsity),
            "gram" => Ok(Method::Gram),
            "bruteforce" => Ok(Method::Bruteforce),
            other => Err(Error::InvalidParams(format!("unknown method `{other}`"))),
        }
    }
}

/// Outcome of one certifier.
///
/// `frame_bound` is only meaningful when `is_tight`; `lower_bound` and
/// `upper_bound` are filled by the brute-force method, `gram_rank` by the
/// Gram method.
#[derive(Debug, Clone, PartialEq)]
pub struct TightnessReport {
    pub method: Method,
    pub is_frame: bool,
    pub is_tight: bool,
    pub frame_bound: f64,
    pub lower_bound: Option<f64>,
    pub upper_bound: Option<f64>,
    pub witnesses: Vec<Witness>,
    pub gram_rank: Option<usize>,
}

/// Adjoint of `lambda`, comparing the closed form against brute force when
/// the subgroup is product-structured.
fn checked_adjoint(lambda: &TFSubgroup) -> Result<TFSubgroup> {
    let brute = adjoint_bruteforce(lambda);
    if let Structure::Product { a, b, n_prime } = lambda.structure() {
        let closed = adjoint_product_closed(lambda.n(), a, b, n_prime)?;
        if closed != brute {
            return Err(Error::CrossCheck(format!(
                "closed-form adjoint of product({}, {a}, {b}, {n_prime}) differs from brute force",
                lambda.n()
            )));
        }
    }
    Ok(brute)
}

/// Tightness from vanishing of the DPAF on `Lambda° \ {0}`.
///
/// When witnesses exist, `is_frame` is decided from the smallest eigenvalue
/// of the frame operator assembled in its Janssen form from DPAF values.
pub fn certify_sparsity(
    phi: &Sequence,
    lambda: &TFSubgroup,
    tol: &Tolerances,
) -> Result<TightnessReport> {
    let n = phi.len();
    check_dim(n, lambda.n())?;
    let adj = checked_adjoint(lambda)?;
    let a = dpaf(phi.entries());
    let witnesses = check_sparse(&a, &adj, tol)?;
    let a00 = a.get(0, 0);
    let frame_bound = lambda.len() as f64 * a00.re;
    let is_tight = witnesses.is_empty() && frame_bound > 0.0;

    let is_frame = if witnesses.is_empty() {
        is_tight
    } else {
        let w = twiddles(n, 1);
        let w_neg = twiddles(n, -1);
        let scale = lambda.len() as f64;
        let mut s = DMatrix::<C64>::zeros(n, n);
        for &(m, f) in adj.elements() {
            let coef = w_neg[(m * f) % n] * a.get(m as i64, f as i64) * scale;
            for j in 0..n {
                s[(j, (j + n - m) % n)] += coef * w[(j * f) % n];
            }
        }
        let eig = s.symmetric_eigenvalues();
        let max = eig.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min = eig.iter().cloned().fold(f64::INFINITY, f64::min);
        max > 0.0 && min > tol.rank * max
    };

    Ok(TightnessReport {
        method: Method::Sparsity,
        is_frame,
        is_tight,
        frame_bound,
        lower_bound: None,
        upper_bound: None,
        witnesses,
        gram_rank: None,
    })
}

/// Tightness from the Gram spectrum: rank `N` and a single nonzero
/// eigenvalue.
///
/// `G` is assembled from DPAF values over its support and split into the
/// connected components of that support, so each eigenproblem is only as
/// large as one block. A tight verdict additionally requires `G / A` to be a
/// projection of trace `N`, checked without the eigensolver.
pub fn certify_gram(sys: &GaborSystem, tol: &Tolerances) -> TightnessReport {
    let n = sys.dim();
    let blocks = gram_blocks(sys, tol);
    let eig = block_eigenvalues(&blocks);
    let max = eig.iter().cloned().fold(0.0, f64::max);
    let nonzero: Vec<f64> = eig
        .iter()
        .cloned()
        .filter(|&e| e > tol.rank * max)
        .collect();
    let rank = nonzero.len();
    let is_frame = rank == n && n > 0;
    let frame_bound = if nonzero.is_empty() {
        0.0
    } else {
        nonzero.iter().sum::<f64>() / rank as f64
    };
    let min_nz = nonzero.iter().cloned().fold(f64::INFINITY, f64::min);

    let mut is_tight = is_frame && max / min_nz <= 1.0 + tol.eig;
    if is_tight {
        let bound = frame_bound;
        let mut trace = 0.0;
        for b in &blocks {
            trace += b.diagonal().iter().map(|z| z.re).sum::<f64>();
            let defect = max_abs(&(b * b - b * C64::new(bound, 0.0)));
            if defect > 1e-8 * bound * bound {
                is_tight = false;
            }
        }
        if (trace - bound * n as f64).abs() > 1e-8 * bound * n as f64 {
            is_tight = false;
        }
    }

    TightnessReport {
        method: Method::Gram,
        is_frame,
        is_tight,
        frame_bound,
        lower_bound: None,
        upper_bound: None,
        witnesses: Vec::new(),
        gram_rank: Some(rank),
    }
}

fn gram_blocks(sys: &GaborSystem, tol: &Tolerances) -> Vec<DMatrix<C64>> {
    let a = dpaf(sys.phi().entries());
    let sg = SparseGram::build(sys, &a, tol);
    sg.components().iter().map(|c| sg.block(c)).collect()
}

fn block_eigenvalues(blocks: &[DMatrix<C64>]) -> Vec<f64> {
    let mut eig: Vec<f64> = blocks
        .iter()
        .flat_map(|b| {
            b.clone()
                .symmetric_eigenvalues()
                .iter()
                .copied()
                .collect::<Vec<_>>()
        })
        .collect();
    eig.sort_by(f64::total_cmp);
    eig
}

/// Eigenvalues of the Gram matrix in ascending order, computed block-wise.
pub fn gram_spectrum(sys: &GaborSystem, tol: &Tolerances) -> Vec<f64> {
    block_eigenvalues(&gram_blocks(sys, tol))
}

/// Optimal frame bounds as the extreme eigenvalues of the frame operator.
pub fn certify_bruteforce(sys: &GaborSystem, tol: &Tolerances) -> TightnessReport {
    let eig = frame_operator(sys).symmetric_eigenvalues();
    let lower = eig.iter().cloned().fold(f64::INFINITY, f64::min);
    let upper = eig.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let is_frame = upper > 0.0 && lower > tol.rank * upper;
    let is_tight = is_frame && upper - lower <= tol.eig * upper;
    TightnessReport {
        method: Method::Bruteforce,
        is_frame,
        is_tight,
        frame_bound: 0.5 * (lower + upper),
        lower_bound: Some(lower),
        upper_bound: Some(upper),
        witnesses: Vec::new(),
        gram_rank: None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WexlerRaz {
    pub passed: bool,
    /// `max |<phi, e_l T_k dual> - (N/|Lambda|) delta|` over the adjoint.
    pub residual: f64,
}

pub fn wexler_raz_check(
    phi: &Sequence,
    dual: &[C64],
    lambda: &TFSubgroup,
    tol: &Tolerances,
) -> Result<WexlerRaz> {
    let n = phi.len();
    check_dim(n, lambda.n())?;
    check_dim(n, dual.len())?;
    let adj = adjoint_bruteforce(lambda);
    let target = n as f64 / lambda.len() as f64;
    let residual = adj
        .elements()
        .iter()
        .map(|&(k, l)| {
            let value = inner(phi.entries(), &tf_shift(dual, k as i64, l as i64));
            let expected = if (k, l) == (0, 0) { target } else { 0.0 };
            (value - expected).norm()
        })
        .fold(0.0, f64::max);
    Ok(WexlerRaz {
        passed: residual <= tol.zero * n as f64,
        residual,
    })
}

/// `x = (1/A) sum <x, v_i> v_i` for a certified tight system.
pub fn reconstruct(sys: &GaborSystem, report: &TightnessReport, x: &[C64]) -> Result<Vec<C64>> {
    if !report.is_tight || report.frame_bound <= 0.0 {
        return Err(Error::NotTight);
    }
    let y = synthesis_apply(sys, &analysis_apply(sys, x)?)?;
    let inv = 1.0 / report.frame_bound;
    Ok(y.into_iter().map(|z| z * inv).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::build_system;
    use crate::lattice::{cyclic_subgroup, full_lattice, product_subgroup};
    use crate::sequences::{gen_bjorck, gen_chu, gen_kronecker, gen_milewski, gen_p4};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    fn all_three(phi: &Sequence, lambda: &TFSubgroup) -> [TightnessReport; 3] {
        let sys = build_system(phi, lambda).unwrap();
        [
            certify_sparsity(phi, lambda, &tol()).unwrap(),
            certify_gram(&sys, &tol()),
            certify_bruteforce(&sys, &tol()),
        ]
    }

    #[test]
    fn chu15_product_is_tight() {
        let phi = gen_chu(15).unwrap();
        for r in all_three(&phi, &product_subgroup(15, 3, 5, 1).unwrap()) {
            assert!(r.is_tight && r.is_frame, "{:?}", r.method);
            assert!(rel(r.frame_bound, 15.0) < 1e-9);
        }
    }

    #[test]
    fn p4_18_gram_spectrum() {
        let phi = gen_p4(18).unwrap();
        let sys = build_system(&phi, &product_subgroup(18, 2, 3, 3).unwrap()).unwrap();
        let r = certify_gram(&sys, &tol());
        assert_eq!(r.gram_rank, Some(18));
        assert!(r.is_tight);
        assert!(rel(r.frame_bound, 54.0) < 1e-9);
        let eig = gram_spectrum(&sys, &tol());
        assert_eq!(eig.len(), 54);
        assert!(eig[..36].iter().all(|e| e.abs() < 1e-9));
        assert!(eig[36..].iter().all(|&e| rel(e, 54.0) < 1e-9));
    }

    #[test]
    fn p4_remark_is_not_a_frame() {
        let phi = gen_p4(4).unwrap();
        let lambda = TFSubgroup::from_elements(4, vec![(0, 0), (0, 2), (2, 0), (2, 2)]).unwrap();
        let [s, g, b] = all_three(&phi, &lambda);
        assert!(!s.is_frame && !s.is_tight && !s.witnesses.is_empty());
        assert!(!g.is_frame && g.gram_rank == Some(2));
        assert!(!b.is_frame);
        assert!(b.lower_bound.unwrap().abs() < 1e-9);
    }

    #[test]
    fn full_lattice_gram() {
        let phi = gen_bjorck(5).unwrap();
        let sys = build_system(&phi, &full_lattice(5)).unwrap();
        let r = certify_gram(&sys, &tol());
        assert_eq!(r.gram_rank, Some(5));
        assert!(r.is_tight && rel(r.frame_bound, 25.0) < 1e-9);
    }

    #[test]
    fn orthonormal_basis_bounds() {
        let delta = Sequence::custom(vec![
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
        ])
        .unwrap();
        let sys = build_system(&delta, &cyclic_subgroup(4, (1, 0))).unwrap();
        let r = certify_bruteforce(&sys, &tol());
        assert!((r.lower_bound.unwrap() - 1.0).abs() < 1e-12);
        assert!((r.upper_bound.unwrap() - 1.0).abs() < 1e-12);
        assert!(r.is_tight);
    }

    #[test]
    fn kronecker_bruteforce_bound() {
        let u = gen_bjorck(7).unwrap();
        let v = gen_p4(4).unwrap();
        let phi = gen_kronecker(u.entries(), v.entries(), &tol()).unwrap();
        // Translations step by len(v) = 4, modulations by len(u) = 7.
        let lambda = product_subgroup(28, 4, 7, 1).unwrap();
        assert_eq!(lambda.product_factors().unwrap().1, vec![0, 7, 14, 21]);
        for r in all_three(&phi, &lambda) {
            assert!(r.is_tight, "{:?}", r.method);
            assert!(rel(r.frame_bound, 28.0) < 1e-9);
        }
        // The transposed lattice is not tight.
        let transposed = product_subgroup(28, 7, 4, 1).unwrap();
        let b = certify_bruteforce(&build_system(&phi, &transposed).unwrap(), &tol());
        assert!(b.is_frame && !b.is_tight);
    }

    #[test]
    fn milewski_example_bound() {
        // v = Chu 3, N = 2: length 12; a = 1, b = 2, N' = 6 gives j = 3.
        let v = gen_chu(3).unwrap();
        let phi = gen_milewski(&v, 2, &tol()).unwrap();
        let lambda = product_subgroup(12, 1, 2, 6).unwrap();
        for r in all_three(&phi, &lambda) {
            assert!(r.is_tight, "{:?}", r.method);
            assert!(rel(r.frame_bound, 3.0 * 3.0 * 8.0) < 1e-9);
        }
    }

    #[test]
    fn bjorck_negative_control() {
        let phi = gen_bjorck(7).unwrap();
        let lambda = cyclic_subgroup(7, (1, 2));
        let [s, g, b] = all_three(&phi, &lambda);
        assert!(!s.is_tight && !g.is_tight && !b.is_tight);
        assert!(s.witnesses.iter().any(|w| w.value.norm() > 1e-3));
        assert_eq!(s.is_frame, b.is_frame);
    }

    #[test]
    fn wexler_raz_examples() {
        let phi = gen_chu(15).unwrap();
        let lambda = product_subgroup(15, 3, 5, 1).unwrap();
        let bound = certify_sparsity(&phi, &lambda, &tol()).unwrap().frame_bound;
        let dual: Vec<C64> = phi.entries().iter().map(|z| z / bound).collect();
        let wr = wexler_raz_check(&phi, &dual, &lambda, &tol()).unwrap();
        assert!(wr.passed && wr.residual < 1e-9);

        let zero = vec![C64::new(0.0, 0.0); 15];
        assert!(
            !wexler_raz_check(&phi, &zero, &lambda, &tol())
                .unwrap()
                .passed
        );

        let phi = gen_bjorck(7).unwrap();
        let lambda = cyclic_subgroup(7, (1, 2));
        let dual: Vec<C64> = phi.entries().iter().map(|z| z / 7.0).collect();
        let wr = wexler_raz_check(&phi, &dual, &lambda, &tol()).unwrap();
        assert!(!wr.passed && wr.residual > 1e-3);
    }

    #[test]
    fn reconstruct_round_trip() {
        let phi = gen_chu(15).unwrap();
        let lambda = product_subgroup(15, 3, 5, 1).unwrap();
        let sys = build_system(&phi, &lambda).unwrap();
        let report = certify_sparsity(&phi, &lambda, &tol()).unwrap();
        let mut x = vec![C64::new(0.0, 0.0); 15];
        x[3] = C64::new(1.0, 0.0);
        let y = reconstruct(&sys, &report, &x).unwrap();
        for (a, b) in x.iter().zip(&y) {
            assert!((a - b).norm() < 1e-9);
        }
        let zero = vec![C64::new(0.0, 0.0); 15];
        assert!(reconstruct(&sys, &report, &zero)
            .unwrap()
            .iter()
            .all(|z| z.norm() < 1e-15));

        let phi = gen_bjorck(7).unwrap();
        let lambda = cyclic_subgroup(7, (1, 2));
        let sys = build_system(&phi, &lambda).unwrap();
        let report = certify_sparsity(&phi, &lambda, &tol()).unwrap();
        assert!(matches!(
            reconstruct(&sys, &report, &[C64::new(1.0, 0.0); 7]),
            Err(Error::NotTight)
        ));
    }

    #[test]
    fn method_parse_roundtrip() {
        for m in [Method::Sparsity, Method::Gram, Method::Bruteforce] {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), m);
        }
        assert!("all".parse::<Method>().is_err());
    }
}

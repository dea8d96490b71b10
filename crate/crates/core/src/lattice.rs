//! Subgroups of the time-frequency lattice `Z_N x Z_N` and their adjoints.
//!
//! A subgroup is stored as an explicit, lexicographically sorted list of
//! `(k, l)` pairs (translation, modulation). The adjoint `Lambda°` collects
//! the shifts `(m, n)` whose operators commute with every shift in `Lambda`,
//! i.e. `l m = k n (mod N)` for all `(k, l)` in `Lambda`.

use crate::arith::gcd;
use crate::{Error, Result};
use std::collections::VecDeque;

/// How a subgroup was constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Structure {
    /// `K x L` with `K = <a>` of order `b N'` and `L = <b>` of order `a N'`.
    Product {
        a: usize,
        b: usize,
        n_prime: usize,
    },
    Cyclic {
        generator: (usize, usize),
    },
    Explicit,
}

#[derive(Debug, Clone)]
pub struct TFSubgroup {
    n: usize,
    elements: Vec<(usize, usize)>,
    structure: Structure,
}

/// Set equality; construction history is ignored.
impl PartialEq for TFSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.elements == other.elements
    }
}

impl Eq for TFSubgroup {}

impl TFSubgroup {
    fn from_sorted(n: usize, mut elements: Vec<(usize, usize)>, structure: Structure) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Self {
            n,
            elements,
            structure,
        }
    }

    /// Validate an explicit element list: it must contain the origin, lie in
    /// `0..N` and be closed under addition.
    pub fn from_elements(n: usize, elements: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyLength);
        }
        if let Some(&(k, l)) = elements.iter().find(|&&(k, l)| k >= n || l >= n) {
            return Err(Error::NotSubgroup {
                n,
                reason: format!("element ({k}, {l}) out of range"),
            });
        }
        let group = Self::from_sorted(n, elements, Structure::Explicit);
        if !group.contains(0, 0) {
            return Err(Error::NotSubgroup {
                n,
                reason: "missing (0, 0)".into(),
            });
        }
        if let Some((x, y)) = group.closure_violation() {
            return Err(Error::NotSubgroup {
                n,
                reason: format!("{x:?} + {y:?} is not an element"),
            });
        }
        Ok(group)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[(usize, usize)] {
        &self.elements
    }

    pub fn structure(&self) -> Structure {
        self.structure
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, k: usize, l: usize) -> bool {
        self.elements.binary_search(&(k, l)).is_ok()
    }

    /// Position of `(k, l)` in canonical order.
    pub fn index_of(&self, k: usize, l: usize) -> Option<usize> {
        self.elements.binary_search(&(k, l)).ok()
    }

    /// Exhaustive closure check; returns an offending pair if any.
    pub fn closure_violation(&self) -> Option<((usize, usize), (usize, usize))> {
        let n = self.n;
        for &x in &self.elements {
            for &y in &self.elements {
                if !self.contains((x.0 + y.0) % n, (x.1 + y.1) % n) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_subgroup(&self) -> bool {
        self.contains(0, 0) && self.closure_violation().is_none()
    }

    /// Elements of the first factor when the group is a product `K x L`.
    pub fn product_factors(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        match self.structure {
            Structure::Product { a, b, n_prime } => Some((
                (0..b * n_prime).map(|j| j * a).collect(),
                (0..a * n_prime).map(|j| j * b).collect(),
            )),
            _ => None,
        }
    }
}

/// Closure of `gens ∪ {(0,0)}` under addition modulo `N`.
pub fn subgroup_from_generators(n: usize, gens: &[(usize, usize)]) -> TFSubgroup {
    generate(n, gens, Structure::Explicit)
}

fn generate(n: usize, gens: &[(usize, usize)], structure: Structure) -> TFSubgroup {
    assert!(n > 0, "lattice size must be positive");
    let gens: Vec<(usize, usize)> = gens.iter().map(|&(k, l)| (k % n, l % n)).collect();
    let mut seen = vec![false; n * n];
    let mut elements = vec![(0, 0)];
    seen[0] = true;
    let mut queue = VecDeque::from([(0usize, 0usize)]);
    while let Some((k, l)) = queue.pop_front() {
        for &(gk, gl) in &gens {
            let next = ((k + gk) % n, (l + gl) % n);
            let slot = &mut seen[next.0 * n + next.1];
            if !*slot {
                *slot = true;
                elements.push(next);
                queue.push_back(next);
            }
        }
    }
    TFSubgroup::from_sorted(n, elements, structure)
}

/// `<(k, l)>`.
pub fn cyclic_subgroup(n: usize, generator: (usize, usize)) -> TFSubgroup {
    let generator = (generator.0 % n, generator.1 % n);
    generate(n, &[generator], Structure::Cyclic { generator })
}

pub fn trivial_subgroup(n: usize) -> TFSubgroup {
    subgroup_from_generators(n, &[])
}

pub fn full_lattice(n: usize) -> TFSubgroup {
    product_subgroup(n, 1, 1, n).expect("1 * 1 * N = N is always valid")
}

fn check_factorization(n: usize, a: usize, b: usize, n_prime: usize) -> Result<()> {
    let err = |reason| {
        Err(Error::InvalidFactorization {
            n,
            a,
            b,
            n_prime,
            reason,
        })
    };
    if a == 0 || b == 0 || n_prime == 0 {
        return err("factors must be positive");
    }
    if a.checked_mul(b).and_then(|ab| ab.checked_mul(n_prime)) != Some(n) {
        return err("a * b * N' != N");
    }
    if gcd(a as u64, b as u64) != 1 {
        return err("gcd(a, b) != 1");
    }
    Ok(())
}

/// `K x L` with `K = {0, a, ..., (bN' - 1) a}`, `L = {0, b, ..., (aN' - 1) b}`.
pub fn product_subgroup(n: usize, a: usize, b: usize, n_prime: usize) -> Result<TFSubgroup> {
    check_factorization(n, a, b, n_prime)?;
    let mut elements = Vec::with_capacity(n * n_prime);
    for i in 0..b * n_prime {
        for j in 0..a * n_prime {
            elements.push((i * a, j * b));
        }
    }
    Ok(TFSubgroup::from_sorted(
        n,
        elements,
        Structure::Product { a, b, n_prime },
    ))
}

/// Adjoint by exhaustive scan of all `N^2` candidates.
pub fn adjoint_bruteforce(lambda: &TFSubgroup) -> TFSubgroup {
    let n = lambda.n;
    let mut elements = Vec::new();
    for m in 0..n {
        for freq in 0..n {
            let commutes = lambda
                .elements
                .iter()
                .all(|&(k, l)| (l * m) % n == (k * freq) % n);
            if commutes {
                elements.push((m, freq));
            }
        }
    }
    TFSubgroup::from_sorted(n, elements, Structure::Explicit)
}

/// Closed-form adjoint of a product subgroup:
/// `N'K x N'L = {0, N'a, ..., (b-1)N'a} x {0, N'b, ..., (a-1)N'b}`.
pub fn adjoint_product_closed(n: usize, a: usize, b: usize, n_prime: usize) -> Result<TFSubgroup> {
    check_factorization(n, a, b, n_prime)?;
    let mut elements = Vec::with_capacity(a * b);
    for i in 0..b {
        for j in 0..a {
            elements.push((i * n_prime * a, j * n_prime * b));
        }
    }
    Ok(TFSubgroup::from_sorted(n, elements, Structure::Explicit))
}

/// Adjoint via the closed form for product subgroups, brute force otherwise.
pub fn adjoint(lambda: &TFSubgroup) -> TFSubgroup {
    match lambda.structure {
        Structure::Product { a, b, n_prime } => adjoint_product_closed(lambda.n, a, b, n_prime)
            .expect("product structure was validated at construction"),
        _ => adjoint_bruteforce(lambda),
    }
}

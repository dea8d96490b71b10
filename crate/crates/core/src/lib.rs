//! Finite Gabor frame analysis over `C^N`.
//!
//! The crate generates CAZAC sequences (Chu, P4, Wiener, Björck, square-length
//! Björck-Saffari, Milewski and Kronecker products), evaluates their discrete
//! periodic ambiguity functions, and decides whether a Gabor system
//! `{e_l T_k phi : (k, l) in Lambda}` over a subgroup `Lambda` of the
//! time-frequency lattice `Z_N x Z_N` is a tight frame.
//!
//! Tightness is certified three ways, which are expected to agree:
//!
//! * [`frame::certify_sparsity`]: the ambiguity function vanishes on the
//!   adjoint lattice away from the origin (Janssen representation).
//! * [`frame::certify_gram`]: the Gram matrix has rank `N` and a single
//!   nonzero eigenvalue.
//! * [`frame::certify_bruteforce`]: extreme eigenvalues of the explicitly
//!   assembled frame operator.
//!
//! ```
//! use gabor_forge_core::{frame, lattice, sequences, Tolerances};
//!
//! let tol = Tolerances::default();
//! let phi = sequences::gen_chu(15).unwrap();
//! let lambda = lattice::product_subgroup(15, 3, 5, 1).unwrap();
//! let report = frame::certify_sparsity(&phi, &lambda, &tol).unwrap();
//! assert!(report.is_tight);
//! assert!((report.frame_bound - 15.0).abs() < 1e-9);
//! ```

pub mod arith;
pub mod equivalence;
mod error;
pub mod frame;
pub mod io;
pub mod lattice;
pub mod sequences;
pub mod tf;
mod tolerance;

pub use error::{Error, Result};
pub use tolerance::Tolerances;

pub use equivalence::{CirculantMatrix, CyclicRoot};
pub use frame::{GaborSystem, GramMatrix, Method, TightnessReport};
pub use lattice::{Structure, TFSubgroup};
pub use sequences::{CazacReport, Family, Params, Sequence};
pub use tf::{DpafMatrix, StftMatrix};

/// Complex sample type used throughout the crate.
pub type C64 = num_complex::Complex64;

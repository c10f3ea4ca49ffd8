//! Numerical invariants of hermitian forms over truncated operator systems.
//!
//! A hermitian form is an invertible self-adjoint matrix over a concrete
//! operator system; its two basic invariants are the *gap* (smallest
//! absolute eigenvalue) and the *signature*. This crate computes those
//! invariants together with the structures built on top of them:
//!
//! - [`hermitian`]: forms, gaps, signatures, perturbation bounds and the
//!   Witt projection `p = (1 - x|x|^-1)/2`;
//! - [`homotopy`]: sampled homotopies of forms with certified gap lower
//!   bounds (linear interpolation, perturbation paths, Whitehead
//!   rotations);
//! - [`ktheory`]: homotopy-class labels for forms over direct sums of
//!   matrix algebras, the stabilization shuffle, and the Grothendieck
//!   group of the label semigroup;
//! - [`torus`]: the Fourier-side model of `C(T^2)` — bump-function
//!   projection, Dirac operator, spectral truncation lattice, and
//!   compressions `P Y P` with the exact commutator norm `||[P, Y]||`;
//! - [`localizer`]: the even spectral localizer `L = [[x, kD0],[kD0*, -x]]`,
//!   whose half-signature computes the index pairing, plus parameter
//!   sweeps;
//! - [`matjson`]: the JSON interchange format for dense complex matrices.
//!
//! All types are immutable after construction and all operations are pure
//! functions, so everything can be shared freely across threads.

pub mod hermitian;
pub mod homotopy;
pub mod ktheory;
pub mod localizer;
pub mod matjson;
pub mod torus;

use nalgebra::{Complex, DMatrix};
use thiserror::Error;

/// Dense complex matrix, the working representation everywhere.
pub type CMatrix = DMatrix<Complex<f64>>;

/// Complex scalar.
pub type C64 = Complex<f64>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("not Hermitian: asymmetry {asymmetry:.3e} exceeds {threshold:.3e}")]
    NotHermitian { asymmetry: f64, threshold: f64 },

    #[error("degenerate form: eigenvalue {eigenvalue:.6e} within tolerance {tol:.3e} of zero")]
    Degenerate { eigenvalue: f64, tol: f64 },

    #[error("perturbation bound violated: eps = {eps:.6e} >= gap^2/(2|x|) = {limit:.6e}")]
    BoundViolated { eps: f64, limit: f64 },

    #[error("gap collapses along the path: sample at t = {t} has gap {gap:.6e}")]
    GapCollapse { t: f64, gap: f64 },

    #[error("matrix is not unitary: |u u* - 1| = {defect:.3e}")]
    NotUnitary { defect: f64 },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("pad {pad} too small: need at least bandwidth + |m| = {required}")]
    PadTooSmall { pad: i64, required: i64 },

    #[error("singular localizer: min |eigenvalue| = {min_abs:.6e} <= tolerance {tol:.3e}; try a smaller kappa")]
    SingularLocalizer { min_abs: f64, tol: f64 },

    #[error("odd localizer signature {signature}: input dimensions are inconsistent")]
    OddSignature { signature: i64 },

    #[error("signature obstruction: {left} vs {right}, no homotopy exists")]
    SignatureObstruction { left: i64, right: i64 },

    #[error("signature plateau violated below kappa0: {0}")]
    PlateauViolation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

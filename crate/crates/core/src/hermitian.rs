//! Hermitian forms over concrete matrix representations.
//!
//! A [`HermitianForm`] is a self-adjoint matrix that is non-degenerate:
//! every eigenvalue stays away from zero by more than the degeneracy
//! threshold. The cached invariants are the *gap* (smallest absolute
//! eigenvalue, i.e. the largest `g` with `|x| >= g`) and the *signature*
//! (number of positive minus number of negative eigenvalues). Possibly
//! degenerate self-adjoint matrices are represented as [`RawHermitian`].
//!
//! Gaps are computed in the given concrete representation. For
//! compressions `P x P` this is a valid lower-bound certificate for the
//! abstract gap; exactness is not claimed.

use nalgebra::DVector;

use crate::{C64, CMatrix, Error, Result};

/// Relative tolerance for accepting a matrix as Hermitian.
pub const HERMITICITY_REL_TOL: f64 = 1e-12;

/// Default degeneracy threshold, relative to the operator norm.
pub const DEFAULT_GAP_REL_TOL: f64 = 1e-8;

/// Largest singular value, computed via the Hermitian eigendecomposition
/// of `a* a`.
pub fn operator_norm(a: &CMatrix) -> f64 {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0.0;
    }
    let gram = a.adjoint() * a;
    hermitian_eigenvalues(&gram)
        .iter()
        .fold(0.0f64, |acc, &v| acc.max(v.max(0.0)))
        .sqrt()
}

/// Eigenvalues of a Hermitian matrix (unsorted). The input is symmetrized
/// first so that tiny rounding asymmetries cannot leak into the solver.
pub fn hermitian_eigenvalues(m: &CMatrix) -> DVector<f64> {
    debug_assert_eq!(m.nrows(), m.ncols());
    let sym = symmetrize(m);
    sym.symmetric_eigen().eigenvalues
}

pub(crate) fn symmetrize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * C64::new(0.5, 0.0)
}

fn check_square(data: &CMatrix) -> Result<usize> {
    if data.nrows() != data.ncols() {
        return Err(Error::NotSquare {
            rows: data.nrows(),
            cols: data.ncols(),
        });
    }
    Ok(data.nrows())
}

/// Symmetrize after verifying the asymmetry is within
/// `HERMITICITY_REL_TOL * |data|`.
fn checked_symmetrize(data: CMatrix) -> Result<CMatrix> {
    check_square(&data)?;
    let scale = operator_norm(&data);
    let asymmetry = operator_norm(&(&data - data.adjoint()));
    let threshold = HERMITICITY_REL_TOL * scale;
    if asymmetry > threshold {
        return Err(Error::NotHermitian {
            asymmetry,
            threshold,
        });
    }
    Ok(symmetrize(&data))
}

/// A self-adjoint matrix with no invertibility guarantee.
#[derive(Debug, Clone)]
pub struct RawHermitian {
    data: CMatrix,
}

impl RawHermitian {
    pub fn new(data: CMatrix) -> Result<Self> {
        Ok(Self {
            data: checked_symmetrize(data)?,
        })
    }

    pub fn data(&self) -> &CMatrix {
        &self.data
    }

    pub fn size(&self) -> usize {
        self.data.nrows()
    }

    /// Smallest absolute eigenvalue (may be zero).
    pub fn gap(&self) -> f64 {
        hermitian_eigenvalues(&self.data)
            .iter()
            .fold(f64::INFINITY, |acc, &v| acc.min(v.abs()))
    }
}

impl From<HermitianForm> for RawHermitian {
    fn from(form: HermitianForm) -> Self {
        RawHermitian { data: form.data }
    }
}

/// A non-degenerate self-adjoint matrix with cached gap and signature.
#[derive(Debug, Clone)]
pub struct HermitianForm {
    data: CMatrix,
    gap: f64,
    signature: i64,
    tol_zero: f64,
}

impl HermitianForm {
    /// Build a form from a square matrix. The matrix is symmetrized, then
    /// fully eigendecomposed; `tol_zero` (default `1e-8 * |data|`) is the
    /// degeneracy threshold the gap must clear.
    pub fn new(data: CMatrix, tol_zero: Option<f64>) -> Result<Self> {
        let data = checked_symmetrize(data)?;
        let tol_zero = tol_zero.unwrap_or_else(|| DEFAULT_GAP_REL_TOL * operator_norm(&data));
        if tol_zero < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "tol_zero must be nonnegative, got {tol_zero}"
            )));
        }
        let eigs = hermitian_eigenvalues(&data);
        let mut gap = f64::INFINITY;
        let mut offender = 0.0;
        let mut positive = 0i64;
        let mut negative = 0i64;
        for &lambda in eigs.iter() {
            if lambda.abs() < gap {
                gap = lambda.abs();
                offender = lambda;
            }
            if lambda > 0.0 {
                positive += 1;
            } else {
                negative += 1;
            }
        }
        if !(gap > tol_zero) {
            return Err(Error::Degenerate {
                eigenvalue: offender,
                tol: tol_zero,
            });
        }
        Ok(Self {
            data,
            gap,
            signature: positive - negative,
            tol_zero,
        })
    }

    pub fn from_raw(raw: RawHermitian, tol_zero: Option<f64>) -> Result<Self> {
        Self::new(raw.data, tol_zero)
    }

    /// The order unit at matrix size `n`: gap 1, signature `n`.
    pub fn identity(n: usize) -> Self {
        Self {
            data: CMatrix::identity(n, n),
            gap: 1.0,
            signature: n as i64,
            tol_zero: DEFAULT_GAP_REL_TOL,
        }
    }

    pub fn data(&self) -> &CMatrix {
        &self.data
    }

    pub fn size(&self) -> usize {
        self.data.nrows()
    }

    pub fn gap(&self) -> f64 {
        self.gap
    }

    pub fn signature(&self) -> i64 {
        self.signature
    }

    pub fn tol_zero(&self) -> f64 {
        self.tol_zero
    }

    /// Number of negative eigenvalues, `(n - signature)/2`.
    pub fn negative_inertia(&self) -> usize {
        ((self.size() as i64 - self.signature) / 2) as usize
    }

    /// Block-diagonal sum. The gap is the minimum of the two gaps and the
    /// signature is additive; both follow from the spectrum being the
    /// union of the two spectra, so no fresh eigendecomposition is run.
    pub fn direct_sum(&self, other: &HermitianForm) -> HermitianForm {
        let n = self.size();
        let m = other.size();
        let mut data = CMatrix::zeros(n + m, n + m);
        data.view_mut((0, 0), (n, n)).copy_from(&self.data);
        data.view_mut((n, n), (m, m)).copy_from(&other.data);
        HermitianForm {
            data,
            gap: self.gap.min(other.gap),
            signature: self.signature + other.signature,
            tol_zero: self.tol_zero.min(other.tol_zero),
        }
    }

    /// Witt projection `p = (1 - x|x|^-1)/2`, the spectral projection onto
    /// the negative eigenspace. Satisfies `p = p* = p^2` up to rounding and
    /// `rank p = (n - signature)/2`.
    pub fn witt_projection(&self) -> CMatrix {
        let eigen = self.data.clone().symmetric_eigen();
        let signs = CMatrix::from_diagonal(&eigen.eigenvalues.map(|v| {
            if v > 0.0 {
                C64::new(1.0, 0.0)
            } else {
                C64::new(-1.0, 0.0)
            }
        }));
        let sign_matrix = &eigen.eigenvectors * signs * eigen.eigenvectors.adjoint();
        (CMatrix::identity(self.size(), self.size()) - sign_matrix) * C64::new(0.5, 0.0)
    }
}

/// Certified gap for a perturbation `y` of the form `x`.
///
/// With `eps = |x - y|`, if `eps < gap(x)^2 / (2 |x|)` then `y` is itself
/// non-degenerate with gap at least `sqrt(gap(x)^2 - 2 eps |x|)`. Returns
/// `(eps, certified_gap)`.
pub fn rigidity_bound(x: &HermitianForm, y: &RawHermitian) -> Result<(f64, f64)> {
    if x.size() != y.size() {
        return Err(Error::ShapeMismatch(format!(
            "form is {0}x{0} but perturbation is {1}x{1}",
            x.size(),
            y.size()
        )));
    }
    let eps = operator_norm(&(x.data() - y.data()));
    let norm_x = operator_norm(x.data());
    let limit = if norm_x > 0.0 {
        x.gap() * x.gap() / (2.0 * norm_x)
    } else {
        f64::INFINITY
    };
    if eps >= limit {
        return Err(Error::BoundViolated { eps, limit });
    }
    let certified = (x.gap() * x.gap() - 2.0 * eps * norm_x).sqrt();
    Ok((eps, certified))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cm(n: usize, entries: &[f64]) -> CMatrix {
        CMatrix::from_row_slice(
            n,
            n,
            &entries.iter().map(|&v| C64::new(v, 0.0)).collect::<Vec<_>>(),
        )
    }

    fn diag(entries: &[f64]) -> CMatrix {
        CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            entries.len(),
            entries.iter().map(|&v| C64::new(v, 0.0)),
        ))
    }

    #[test]
    fn identity_form() {
        let x = HermitianForm::new(CMatrix::identity(3, 3), Some(1e-8)).unwrap();
        assert_eq!(x.gap(), 1.0);
        assert_eq!(x.signature(), 3);
    }

    #[test]
    fn diagonal_form() {
        let x = HermitianForm::new(diag(&[2.0, -0.5]), None).unwrap();
        assert_eq!(x.gap(), 0.5);
        assert_eq!(x.signature(), 0);
    }

    #[test]
    fn zero_eigenvalue_rejected() {
        let err = HermitianForm::new(diag(&[1.0, 0.0]), None).unwrap_err();
        assert!(matches!(err, Error::Degenerate { .. }));
    }

    #[test]
    fn non_hermitian_rejected() {
        let err = HermitianForm::new(cm(2, &[1.0, 0.5, 0.0, 1.0]), None).unwrap_err();
        assert!(matches!(err, Error::NotHermitian { .. }));
    }

    #[test]
    fn non_square_rejected() {
        let data = CMatrix::zeros(2, 3);
        assert!(matches!(
            HermitianForm::new(data, None),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn direct_sum_identity_blocks() {
        let x = HermitianForm::identity(2).direct_sum(&HermitianForm::identity(3));
        assert_eq!(x.gap(), 1.0);
        assert_eq!(x.signature(), 5);
        assert_eq!(x.size(), 5);
    }

    #[test]
    fn direct_sum_min_gap() {
        let a = HermitianForm::new(diag(&[2.0]), None).unwrap();
        let b = HermitianForm::new(diag(&[-0.5]), None).unwrap();
        let s = a.direct_sum(&b);
        assert_eq!(s.gap(), 0.5);
        assert_eq!(s.signature(), 0);
    }

    #[test]
    fn rigidity_certifies_perturbed_gap() {
        let x = HermitianForm::identity(2);
        let y = RawHermitian::new(diag(&[1.1, 0.9])).unwrap();
        let (eps, certified) = rigidity_bound(&x, &y).unwrap();
        assert!((eps - 0.1).abs() < 1e-12);
        assert!((certified - (1.0f64 - 0.2).sqrt()).abs() < 1e-12);
        assert!(y.gap() >= certified);
    }

    #[test]
    fn rigidity_zero_perturbation() {
        let x = HermitianForm::new(diag(&[2.0, -0.5]), None).unwrap();
        let y = RawHermitian::new(diag(&[2.0, -0.5])).unwrap();
        let (eps, certified) = rigidity_bound(&x, &y).unwrap();
        assert_eq!(eps, 0.0);
        assert!((certified - x.gap()).abs() < 1e-15);
    }

    #[test]
    fn rigidity_bound_violated() {
        let x = HermitianForm::new(diag(&[1.0, -1.0]), None).unwrap();
        let y = RawHermitian::new(cm(2, &[1.0, 0.6, 0.6, -1.0])).unwrap();
        // eps = 0.6 >= gap^2/(2 |x|) = 0.5
        let err = rigidity_bound(&x, &y).unwrap_err();
        match err {
            Error::BoundViolated { eps, limit } => {
                assert!((eps - 0.6).abs() < 1e-12);
                assert!((limit - 0.5).abs() < 1e-12);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn witt_projection_diagonal() {
        let x = HermitianForm::new(diag(&[1.0, -1.0]), None).unwrap();
        let p = x.witt_projection();
        let expected = diag(&[0.0, 1.0]);
        assert!(operator_norm(&(&p - &expected)) < 1e-12);
    }

    #[test]
    fn witt_projection_negative_identity() {
        let x = HermitianForm::new(diag(&[-1.0, -1.0, -1.0]), None).unwrap();
        let p = x.witt_projection();
        assert!(operator_norm(&(&p - &CMatrix::identity(3, 3))) < 1e-12);
    }

    #[test]
    fn operator_norm_examples() {
        assert_eq!(operator_norm(&CMatrix::identity(4, 4)), 1.0);
        assert!((operator_norm(&diag(&[3.0, -4.0])) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn negative_inertia_matches_signature() {
        let x = HermitianForm::new(diag(&[3.0, -1.0, -2.0, 0.5]), None).unwrap();
        assert_eq!(x.signature(), 0);
        assert_eq!(x.negative_inertia(), 2);
    }
}

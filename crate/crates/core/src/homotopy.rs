//! Certified homotopies between hermitian forms.
//!
//! A homotopy certificate samples a continuous path of self-adjoint
//! matrices and records the gap at every sample. Finite sampling is turned
//! into a rigorous statement through the rigidity bound: between
//! consecutive samples the gap can drop at most to
//! `sqrt(gap(t)^2 - 2 eps |x(t)|)` where `eps` is the norm of the step, so
//! a certificate is `certified` only when that floor stays positive at
//! every step (and every sampled gap is positive).
//!
//! Certified homotopies preserve the signature: no eigenvalue can cross
//! zero along a path whose gap stays positive.

use crate::hermitian::{operator_norm, HermitianForm, RawHermitian};
use crate::{C64, CMatrix, Error, Result};

/// Default number of path samples.
pub const DEFAULT_STEPS: usize = 101;

/// One sampled point of a homotopy.
#[derive(Debug, Clone)]
pub struct CertificateSample {
    pub t: f64,
    pub form: RawHermitian,
    /// Smallest absolute eigenvalue at this sample.
    pub gap: f64,
}

/// A sampled path of self-adjoint matrices between two hermitian forms,
/// with a certified lower bound for the gap along the whole path.
#[derive(Debug, Clone)]
pub struct HomotopyCertificate {
    pub samples: Vec<CertificateSample>,
    /// Analytic lower bound for the gap along the entire path (not just at
    /// the samples).
    pub certified_gap: f64,
    /// True when every sampled gap is positive and the inter-sample
    /// rigidity floor is positive at every step.
    pub certified: bool,
    pub endpoints: (HermitianForm, HermitianForm),
}

impl HomotopyCertificate {
    fn assemble(
        samples: Vec<CertificateSample>,
        certified_gap: f64,
        endpoints: (HermitianForm, HermitianForm),
    ) -> Self {
        let certified = certify(&samples);
        Self {
            samples,
            certified_gap,
            certified,
            endpoints,
        }
    }

    pub fn min_sampled_gap(&self) -> f64 {
        self.samples
            .iter()
            .fold(f64::INFINITY, |acc, s| acc.min(s.gap))
    }
}

/// Inter-sample certification: every sampled gap positive, and for each
/// consecutive pair the rigidity floor `gap_i^2 - 2 |step| |x_i|` positive.
fn certify(samples: &[CertificateSample]) -> bool {
    if samples.iter().any(|s| !(s.gap > 0.0)) {
        return false;
    }
    for pair in samples.windows(2) {
        let step = operator_norm(&(pair[1].form.data() - pair[0].form.data()));
        let norm = operator_norm(pair[0].form.data());
        let floor = pair[0].gap * pair[0].gap - 2.0 * step * norm;
        if !(floor > 0.0) {
            return false;
        }
    }
    true
}

fn sample_at(t: f64, matrix: CMatrix) -> CertificateSample {
    let form = RawHermitian::new(matrix).expect("path samples of Hermitian inputs stay Hermitian");
    let gap = form.gap();
    CertificateSample { t, form, gap }
}

fn check_steps(steps: usize) -> Result<()> {
    if steps < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 samples, got {steps}"
        )));
    }
    Ok(())
}

/// Straight-line homotopy `t -> (1-t) x + t y`.
///
/// With `g = min(gap(x), gap(y))` and `eps = |x - y|`, the whole segment
/// consists of forms with gap at least `sqrt(g^2 - eps^2/4)` provided
/// `eps^2/4 < g^2`; that value is the certificate's `certified_gap`.
/// Otherwise the path may degenerate and `GapCollapse` reports the first
/// sample where it does.
pub fn linear_homotopy(
    x: &HermitianForm,
    y: &HermitianForm,
    steps: usize,
) -> Result<HomotopyCertificate> {
    if x.size() != y.size() {
        return Err(Error::ShapeMismatch(format!(
            "endpoints have sizes {} and {}",
            x.size(),
            y.size()
        )));
    }
    check_steps(steps)?;
    let g = x.gap().min(y.gap());
    let eps = operator_norm(&(x.data() - y.data()));

    let samples: Vec<CertificateSample> = (0..steps)
        .map(|i| {
            let t = i as f64 / (steps - 1) as f64;
            let matrix = if i == 0 {
                x.data().clone()
            } else if i == steps - 1 {
                y.data().clone()
            } else {
                x.data() * C64::new(1.0 - t, 0.0) + y.data() * C64::new(t, 0.0)
            };
            sample_at(t, matrix)
        })
        .collect();

    if eps * eps / 4.0 >= g * g {
        let deg_tol = x.tol_zero().max(y.tol_zero());
        let worst = samples
            .iter()
            .find(|s| s.gap <= deg_tol)
            .or_else(|| {
                samples
                    .iter()
                    .min_by(|a, b| a.gap.partial_cmp(&b.gap).unwrap())
            })
            .expect("at least two samples");
        return Err(Error::GapCollapse {
            t: worst.t,
            gap: worst.gap,
        });
    }

    let certified_gap = (g * g - eps * eps / 4.0).sqrt();
    Ok(HomotopyCertificate::assemble(
        samples,
        certified_gap,
        (x.clone(), y.clone()),
    ))
}

/// Homotopy from `x` to a perturbation `y` with `|x - y| = eps`.
///
/// Requires `gap(x)^2 > 2 eps |x| + eps^2/4`. The rigidity bound first
/// certifies `y` as a form, then the straight line connects them; the
/// certified gap is `sqrt(gap(x)^2 - 2 eps |x| - eps^2/4)`.
pub fn perturbation_homotopy(x: &HermitianForm, y: &RawHermitian) -> Result<HomotopyCertificate> {
    if x.size() != y.size() {
        return Err(Error::ShapeMismatch(format!(
            "endpoints have sizes {} and {}",
            x.size(),
            y.size()
        )));
    }
    let eps = operator_norm(&(x.data() - y.data()));
    let norm_x = operator_norm(x.data());
    let budget = 2.0 * eps * norm_x + eps * eps / 4.0;
    if x.gap() * x.gap() <= budget {
        return Err(Error::BoundViolated {
            eps,
            limit: x.gap() * x.gap(),
        });
    }
    // Certifies y; cannot fail given the check above.
    let _ = crate::hermitian::rigidity_bound(x, y)?;
    let y_form = HermitianForm::new(y.data().clone(), Some(x.tol_zero()))?;
    let mut cert = linear_homotopy(x, &y_form, DEFAULT_STEPS)?;
    cert.certified_gap = (x.gap() * x.gap() - budget).sqrt();
    Ok(cert)
}

/// Whitehead rotation path conjugating `x + e_n` into `u x u* + e_n`.
///
/// The path is `w_t (x + e_n) w_t*` with
/// `w_t = diag(u, 1) R(t) diag(u*, 1) R(t)*`, where `R(t)` is the block
/// rotation by the angle `pi t / 2`; `w_0 = 1` and `w_1 = diag(u, u*)`.
/// Every `w_t` is unitary, so the gap is constant `min(gap(x), 1)` along
/// the path.
pub fn whitehead_path(
    u: &CMatrix,
    x: &HermitianForm,
    steps: usize,
) -> Result<HomotopyCertificate> {
    let n = x.size();
    if u.nrows() != n || u.ncols() != n {
        return Err(Error::ShapeMismatch(format!(
            "unitary is {}x{} but form is {n}x{n}",
            u.nrows(),
            u.ncols()
        )));
    }
    check_steps(steps)?;
    let defect = operator_norm(&(u * u.adjoint() - CMatrix::identity(n, n)));
    if defect > 1e-12 {
        return Err(Error::NotUnitary { defect });
    }

    let identity_form = HermitianForm::identity(n);
    let start = x.direct_sum(&identity_form);
    let rotated = HermitianForm::new(u * x.data() * u.adjoint(), Some(x.tol_zero()))?;
    let end = rotated.direct_sum(&identity_form);

    let mut block_u = CMatrix::identity(2 * n, 2 * n);
    block_u.view_mut((0, 0), (n, n)).copy_from(u);
    let block_u_adj = block_u.adjoint();

    let samples: Vec<CertificateSample> = (0..steps)
        .map(|i| {
            let t = i as f64 / (steps - 1) as f64;
            let matrix = if i == 0 {
                start.data().clone()
            } else if i == steps - 1 {
                end.data().clone()
            } else {
                let (c, s) = ((std::f64::consts::FRAC_PI_2 * t).cos(), (std::f64::consts::FRAC_PI_2 * t).sin());
                let mut rot = CMatrix::zeros(2 * n, 2 * n);
                for k in 0..n {
                    rot[(k, k)] = C64::new(c, 0.0);
                    rot[(k, k + n)] = C64::new(-s, 0.0);
                    rot[(k + n, k)] = C64::new(s, 0.0);
                    rot[(k + n, k + n)] = C64::new(c, 0.0);
                }
                let w = &block_u * &rot * &block_u_adj * rot.transpose();
                &w * start.data() * w.adjoint()
            };
            sample_at(t, matrix)
        })
        .collect();

    let certified_gap = x.gap().min(1.0);
    Ok(HomotopyCertificate::assemble(
        samples,
        certified_gap,
        (start, end),
    ))
}

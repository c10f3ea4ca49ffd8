//! The even spectral localizer and its index map.
//!
//! For a hermitian form `x` and the (amplified) Dirac block `D0`, the
//! localizer is the Hermitian matrix
//!
//! ```text
//! L_kappa = [ x         kappa D0 ]
//!           [ kappa D0*      -x  ]
//! ```
//!
//! Its square satisfies `L^2 >= gap(x)^2 - kappa ||[D, x]||`, so the
//! localizer is invertible and its half-signature is a homotopy invariant
//! for every `kappa` below `kappa0 = gap(x)^2 / ||[D, x]||`. The
//! commutator is taken with the truncated Dirac block, so `kappa0` here
//! is the finite-dimensional surrogate of the untruncated threshold; both
//! `delta = ||[P, Y]||` and `||[D, x]||` are reported separately.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::hermitian::{hermitian_eigenvalues, operator_norm, HermitianForm};
use crate::torus::{amplified_dirac, compressed_y, default_pad, Profile};
use crate::{CMatrix, C64, Error, Result};

/// Relative singularity tolerance: the smallest |eigenvalue| of `L` must
/// exceed this multiple of `||L||` for the signature to be meaningful.
pub const SINGULARITY_REL_TOL: f64 = 1e-6;

/// An assembled localizer.
#[derive(Debug, Clone)]
pub struct LocalizerInstance {
    x: HermitianForm,
    kappa: f64,
    matrix: CMatrix,
    comm_norm: f64,
    kappa0: f64,
}

impl LocalizerInstance {
    pub fn x(&self) -> &HermitianForm {
        &self.x
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// The Hermitian matrix `L`, twice the size of `x`.
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn gap(&self) -> f64 {
        self.x.gap()
    }

    /// `||[D, x]||`, computed with the truncated Dirac block.
    pub fn comm_norm(&self) -> f64 {
        self.comm_norm
    }

    /// `gap^2 / ||[D, x]||`; infinite when the commutator vanishes.
    pub fn kappa0(&self) -> f64 {
        self.kappa0
    }

    /// True when `kappa >= kappa0`, i.e. outside the regime where the
    /// invertibility bound and the signature plateau are guaranteed.
    pub fn exceeds_plateau(&self) -> bool {
        self.kappa >= self.kappa0
    }
}

/// Eigenvalue data of a localizer.
#[derive(Debug, Clone)]
pub struct LocalizerSpectrum {
    /// Ascending eigenvalues.
    pub eigenvalues: Vec<f64>,
    pub signature: i64,
    pub min_abs: f64,
    pub norm: f64,
}

/// Assemble `L` and compute the commutator norm and `kappa0`.
pub fn build_localizer(
    x: &HermitianForm,
    dirac: &CMatrix,
    kappa: f64,
) -> Result<LocalizerInstance> {
    let n = x.size();
    if dirac.nrows() != n || dirac.ncols() != n {
        return Err(Error::ShapeMismatch(format!(
            "Dirac block is {}x{}, form is {n}x{n}",
            dirac.nrows(),
            dirac.ncols()
        )));
    }
    if !(kappa > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "kappa must be positive, got {kappa}"
        )));
    }
    let comm_norm = operator_norm(&(dirac * x.data() - x.data() * dirac));
    let kappa0 = if comm_norm > 0.0 {
        x.gap() * x.gap() / comm_norm
    } else {
        f64::INFINITY
    };
    let mut matrix = CMatrix::zeros(2 * n, 2 * n);
    matrix.view_mut((0, 0), (n, n)).copy_from(x.data());
    matrix
        .view_mut((0, n), (n, n))
        .copy_from(&(dirac * C64::new(kappa, 0.0)));
    matrix
        .view_mut((n, 0), (n, n))
        .copy_from(&(dirac.adjoint() * C64::new(kappa, 0.0)));
    matrix
        .view_mut((n, n), (n, n))
        .copy_from(&(-x.data()));
    Ok(LocalizerInstance {
        x: x.clone(),
        kappa,
        matrix,
        comm_norm,
        kappa0,
    })
}

/// Full eigenvalue data of the localizer.
pub fn localizer_spectrum(inst: &LocalizerInstance) -> LocalizerSpectrum {
    let eigs = hermitian_eigenvalues(&inst.matrix);
    let mut eigenvalues: Vec<f64> = eigs.iter().copied().collect();
    eigenvalues.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let signature = eigenvalues.iter().filter(|&&v| v > 0.0).count() as i64
        - eigenvalues.iter().filter(|&&v| v < 0.0).count() as i64;
    let min_abs = eigenvalues
        .iter()
        .fold(f64::INFINITY, |acc, &v| acc.min(v.abs()));
    let norm = eigenvalues.iter().fold(0.0f64, |acc, &v| acc.max(v.abs()));
    LocalizerSpectrum {
        eigenvalues,
        signature,
        min_abs,
        norm,
    }
}

/// Half-signature of the localizer. `tol` is the smallest acceptable
/// |eigenvalue| (default `1e-6 ||L||`).
pub fn localizer_index(inst: &LocalizerInstance, tol: Option<f64>) -> Result<i64> {
    let spectrum = localizer_spectrum(inst);
    index_from_spectrum(&spectrum, tol)
}

fn index_from_spectrum(spectrum: &LocalizerSpectrum, tol: Option<f64>) -> Result<i64> {
    let tol = tol.unwrap_or(SINGULARITY_REL_TOL * spectrum.norm);
    if spectrum.min_abs <= tol {
        return Err(Error::SingularLocalizer {
            min_abs: spectrum.min_abs,
            tol,
        });
    }
    if spectrum.signature % 2 != 0 {
        return Err(Error::OddSignature {
            signature: spectrum.signature,
        });
    }
    Ok(spectrum.signature / 2)
}

/// Signatures across a sorted list of couplings. The signature is
/// guaranteed constant below `kappa0`; the result is checked for that and
/// a violation is an error.
pub fn kappa_plateau(
    x: &HermitianForm,
    dirac: &CMatrix,
    kappas: &[f64],
) -> Result<Vec<(f64, i64)>> {
    if kappas.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidArgument(
            "kappa list must be sorted ascending".into(),
        ));
    }
    let mut out = Vec::with_capacity(kappas.len());
    let mut kappa0 = f64::INFINITY;
    for &kappa in kappas {
        let inst = build_localizer(x, dirac, kappa)?;
        kappa0 = inst.kappa0();
        let spectrum = localizer_spectrum(&inst);
        index_from_spectrum(&spectrum, None)?;
        out.push((kappa, spectrum.signature));
    }
    let below: Vec<i64> = out
        .iter()
        .filter(|(k, _)| *k < kappa0)
        .map(|&(_, s)| s)
        .collect();
    if below.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::PlateauViolation(format!(
            "signatures {below:?} differ below kappa0 = {kappa0}"
        )));
    }
    Ok(out)
}

/// Signature additivity under direct sums: checks
/// `Sig L(D, x + x') = Sig L(D, x) + Sig L(D, x')` with the base Dirac
/// block amplified to each size.
pub fn additivity_check(
    x: &HermitianForm,
    x2: &HermitianForm,
    dirac_base: &CMatrix,
    kappa: f64,
) -> Result<bool> {
    let d = dirac_base.nrows();
    if dirac_base.ncols() != d || d == 0 || x.size() % d != 0 || x2.size() % d != 0 {
        return Err(Error::ShapeMismatch(format!(
            "base Dirac block {}x{} does not divide form sizes {} and {}",
            dirac_base.nrows(),
            dirac_base.ncols(),
            x.size(),
            x2.size()
        )));
    }
    let amplify = |copies: usize| CMatrix::identity(copies, copies).kronecker(dirac_base);
    let sig = |form: &HermitianForm, dirac: &CMatrix| -> Result<i64> {
        let inst = build_localizer(form, dirac, kappa)?;
        Ok(localizer_spectrum(&inst).signature)
    };
    let s1 = sig(x, &amplify(x.size() / d))?;
    let s2 = sig(x2, &amplify(x2.size() / d))?;
    let s12 = sig(&x.direct_sum(x2), &amplify((x.size() + x2.size()) / d))?;
    Ok(s12 == s1 + s2)
}

/// One requested sweep point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepParams {
    pub m: i64,
    pub rho: f64,
    pub kappa: f64,
}

/// One computed sweep row. Numeric fields are absent when the row failed;
/// the error column explains why.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub m: i64,
    pub rho: f64,
    pub kappa: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comm_norm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signature: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_abs_eig: Option<f64>,
    pub wall_time_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub spectrum: Option<Vec<f64>>,
}

/// CSV header of a sweep report; the trailing `error` column is empty on
/// successful rows.
pub const SWEEP_CSV_HEADER: &str =
    "m,rho,kappa,lattice_size,gap,delta,comm_norm,kappa0,signature,index,min_abs_eig,wall_time_ms,error";

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(SWEEP_CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let opt = |v: &Option<String>| v.clone().unwrap_or_default();
            let num = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
            let int = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                r.m,
                r.rho,
                r.kappa,
                r.lattice_size.map(|x| x.to_string()).unwrap_or_default(),
                num(r.gap),
                num(r.delta),
                num(r.comm_norm),
                num(r.kappa0),
                int(r.signature),
                int(r.index),
                num(r.min_abs_eig),
                r.wall_time_ms,
                opt(&r.error),
            ));
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.rows)?)
    }

    pub fn any_succeeded(&self) -> bool {
        self.rows.iter().any(|r| r.error.is_none())
    }
}

/// Compute one sweep row. `tol_factor` overrides the relative singularity
/// tolerance (default [`SINGULARITY_REL_TOL`]).
pub fn compute_row(
    p: SweepParams,
    profile: &Profile,
    pad: Option<i64>,
    keep_spectrum: bool,
    tol_factor: Option<f64>,
) -> SweepRow {
    let start = Instant::now();
    let mut row = SweepRow {
        m: p.m,
        rho: p.rho,
        kappa: p.kappa,
        lattice_size: None,
        gap: None,
        delta: None,
        comm_norm: None,
        kappa0: None,
        signature: None,
        index: None,
        min_abs_eig: None,
        wall_time_ms: 0.0,
        error: None,
        spectrum: None,
    };
    let outcome = (|| -> Result<()> {
        let pad = pad.unwrap_or_else(|| default_pad(profile, p.m));
        let compressed = compressed_y(p.m, p.rho, profile, pad)?;
        row.lattice_size = Some(compressed.lattice.len());
        row.gap = Some(compressed.form.gap());
        row.delta = Some(compressed.delta);
        let dirac = amplified_dirac(&compressed.lattice, 2);
        let inst = build_localizer(&compressed.form, &dirac, p.kappa)?;
        row.comm_norm = Some(inst.comm_norm());
        row.kappa0 = Some(inst.kappa0());
        let spectrum = localizer_spectrum(&inst);
        row.signature = Some(spectrum.signature);
        row.min_abs_eig = Some(spectrum.min_abs);
        let tol = tol_factor.map(|f| f * spectrum.norm);
        row.index = Some(index_from_spectrum(&spectrum, tol)?);
        if keep_spectrum {
            row.spectrum = Some(spectrum.eigenvalues);
        }
        Ok(())
    })();
    if let Err(err) = outcome {
        row.error = Some(err.to_string());
    }
    row.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    row
}

/// Run sweep rows in parallel (`threads = 0` uses the rayon default).
/// Rows are computed independently from immutable inputs and reported in
/// input order, so results do not depend on the thread count.
pub fn sweep(
    params: &[SweepParams],
    profile: &Profile,
    pad: Option<i64>,
    threads: usize,
    keep_spectra: bool,
) -> Result<SweepReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let rows = pool.install(|| {
        params
            .par_iter()
            .map(|&p| compute_row(p, profile, pad, keep_spectra, None))
            .collect()
    });
    Ok(SweepReport { rows })
}

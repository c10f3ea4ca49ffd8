//! Fourier-basis model of `C(T^2)` with spinors.
//!
//! The bump-function projection
//!
//! ```text
//! p = [ f        g + h U ]        U(t2) = e^{i m t2},
//!     [ g + h U*   1 - f ]
//! ```
//!
//! is built from a profile `f, g, h` of the first circle variable with
//! `g h = 0` and `g^2 + h^2 = f - f^2`. The default profile is
//! `f = (1 + cos t)/2` (exact bandwidth 1), which makes `sqrt(f - f^2) =
//! |sin t| / 2`; `g` and `h` take that value on `[0, pi]` and `[pi, 2pi]`
//! respectively and are Fourier-truncated at a configurable bandwidth.
//! Their coefficients are measured by a discrete Fourier transform on a
//! 4096-point grid, and the truncation residuals are measured, not
//! assumed.
//!
//! The Dirac operator `D0 = i d/dt1 + d/dt2` is diagonal in the Fourier
//! basis with entry `-n1 + i n2` at mode `(n1, n2)`; the spectral
//! truncation keeps the modes with `n1^2 + n2^2 <= rho^2`. Everything
//! downstream (multiplication operators, compressions `P Y P`, the
//! commutator norm `||[P, Y]||`) is exact linear algebra over those
//! finitely many modes: the truncated `Y` has finite bandwidth, so the
//! commutator is fully supported on a finite window of outside modes and
//! its norm is computed exactly as `||P Y (1 - P)||`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::hermitian::HermitianForm;
use crate::{C64, CMatrix, Error, Result};

/// Grid size for the discrete Fourier analysis of the profile.
pub const PROFILE_GRID: usize = 4096;

/// Default Fourier truncation bandwidth for `g` and `h`.
pub const DEFAULT_BANDWIDTH: usize = 256;

/// Which circle coordinate a function depends on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircleVariable {
    T1,
    T2,
}

/// Finite Fourier series in one circle variable.
#[derive(Debug, Clone)]
pub struct TorusFunction {
    variable: CircleVariable,
    coeffs: BTreeMap<i64, C64>,
    /// Measured l1 mass of the discarded coefficients.
    tail_l1: f64,
}

impl TorusFunction {
    pub fn new(variable: CircleVariable, coeffs: BTreeMap<i64, C64>, tail_l1: f64) -> Self {
        Self {
            variable,
            coeffs,
            tail_l1,
        }
    }

    pub fn constant(variable: CircleVariable, value: f64) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(0, C64::new(value, 0.0));
        Self::new(variable, coeffs, 0.0)
    }

    /// The exponential `e^{i m t}`.
    pub fn exponential(variable: CircleVariable, m: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(m, C64::new(1.0, 0.0));
        Self::new(variable, coeffs, 0.0)
    }

    pub fn variable(&self) -> CircleVariable {
        self.variable
    }

    pub fn coefficient(&self, k: i64) -> C64 {
        self.coeffs.get(&k).copied().unwrap_or_else(|| C64::new(0.0, 0.0))
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i64, C64)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    /// Largest retained |frequency|.
    pub fn bandwidth(&self) -> i64 {
        self.coeffs.keys().map(|k| k.abs()).max().unwrap_or(0)
    }

    pub fn tail_l1(&self) -> f64 {
        self.tail_l1
    }

    pub fn evaluate(&self, t: f64) -> C64 {
        self.coeffs
            .iter()
            .map(|(&k, &c)| c * C64::new(0.0, k as f64 * t).exp())
            .sum()
    }

    /// Whether `c_{-k} = conj(c_k)` holds within `tol`.
    pub fn is_real_valued(&self, tol: f64) -> bool {
        self.coeffs
            .iter()
            .all(|(&k, &c)| (c - self.coefficient(-k).conj()).norm() <= tol)
    }
}

/// The profile functions of the projection symbol.
#[derive(Debug, Clone)]
pub struct Profile {
    pub f: TorusFunction,
    pub g: TorusFunction,
    pub h: TorusFunction,
    pub bandwidth: usize,
    /// DFT grid the coefficients and residuals are measured on.
    pub grid: usize,
}

/// Profile at the default bandwidth.
pub fn default_profile() -> Profile {
    profile_with_bandwidth(DEFAULT_BANDWIDTH)
}

/// Build the profile: `f = (1 + cos t)/2` with its three exact
/// coefficients, `g` and `h` sampled on the grid and truncated at
/// `bandwidth`. The grid grows past its default when the bandwidth
/// approaches the Nyquist limit.
pub fn profile_with_bandwidth(bandwidth: usize) -> Profile {
    assert!(bandwidth >= 1, "bandwidth must be positive");
    let n = PROFILE_GRID.max((4 * bandwidth).next_power_of_two());
    let mut f_coeffs = BTreeMap::new();
    f_coeffs.insert(0, C64::new(0.5, 0.0));
    f_coeffs.insert(1, C64::new(0.25, 0.0));
    f_coeffs.insert(-1, C64::new(0.25, 0.0));
    let f = TorusFunction::new(CircleVariable::T1, f_coeffs, 0.0);

    let mut g_samples = vec![0.0f64; n];
    let mut h_samples = vec![0.0f64; n];
    for j in 0..n {
        let t = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
        let fx = (1.0 + t.cos()) / 2.0;
        let root = (fx * (1.0 - fx)).max(0.0).sqrt();
        if t <= std::f64::consts::PI {
            g_samples[j] = root;
        }
        if t >= std::f64::consts::PI {
            h_samples[j] = root;
        }
    }
    let g = truncated_dft(CircleVariable::T1, &g_samples, bandwidth as i64);
    let h = truncated_dft(CircleVariable::T1, &h_samples, bandwidth as i64);
    Profile {
        f,
        g,
        h,
        bandwidth,
        grid: n,
    }
}

/// All DFT bins of the samples, split into the retained band and the
/// measured l1 tail. Twiddles come from one table of the `n`-th roots of
/// unity, indexed by `bin * j mod n`.
fn truncated_dft(variable: CircleVariable, samples: &[f64], bandwidth: i64) -> TorusFunction {
    let n = samples.len();
    let twiddle: Vec<C64> = (0..n)
        .map(|r| {
            let angle = -2.0 * std::f64::consts::PI * r as f64 / n as f64;
            C64::new(angle.cos(), angle.sin())
        })
        .collect();
    let mut coeffs = BTreeMap::new();
    let mut tail = 0.0;
    for bin in 0..n {
        let mut acc = C64::new(0.0, 0.0);
        for (j, &v) in samples.iter().enumerate() {
            acc += twiddle[bin * j % n] * v;
        }
        acc /= n as f64;
        let k = if bin <= n / 2 {
            bin as i64
        } else {
            bin as i64 - n as i64
        };
        if k.abs() <= bandwidth {
            coeffs.insert(k, acc);
        } else {
            tail += acc.norm();
        }
    }
    TorusFunction::new(variable, coeffs, tail)
}

/// Finite Fourier series on the 2-torus; the common coefficient language
/// for products like `h(t1) e^{i m t2}`.
#[derive(Debug, Clone, Default)]
pub struct TorusSeries {
    coeffs: BTreeMap<(i64, i64), C64>,
}

impl TorusSeries {
    pub fn from_function(f: &TorusFunction) -> Self {
        let coeffs = f
            .coeffs()
            .map(|(k, c)| match f.variable() {
                CircleVariable::T1 => ((k, 0), c),
                CircleVariable::T2 => ((0, k), c),
            })
            .collect();
        Self { coeffs }
    }

    pub fn one() -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert((0, 0), C64::new(1.0, 0.0));
        Self { coeffs }
    }

    /// Multiply by `e^{i s t}` in the given variable (a frequency shift).
    pub fn mul_exponential(mut self, variable: CircleVariable, s: i64) -> Self {
        self.coeffs = self
            .coeffs
            .into_iter()
            .map(|((k1, k2), c)| match variable {
                CircleVariable::T1 => ((k1 + s, k2), c),
                CircleVariable::T2 => ((k1, k2 + s), c),
            })
            .collect();
        self
    }

    pub fn scale(mut self, factor: f64) -> Self {
        for c in self.coeffs.values_mut() {
            *c *= factor;
        }
        self
    }

    pub fn add(mut self, other: &TorusSeries) -> Self {
        for (&key, &c) in &other.coeffs {
            *self.coeffs.entry(key).or_insert_with(|| C64::new(0.0, 0.0)) += c;
        }
        self
    }

    pub fn coefficient(&self, key: (i64, i64)) -> C64 {
        self.coeffs.get(&key).copied().unwrap_or_else(|| C64::new(0.0, 0.0))
    }

    pub fn keys(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn evaluate(&self, t1: f64, t2: f64) -> C64 {
        self.coeffs
            .iter()
            .map(|(&(k1, k2), &c)| c * C64::new(0.0, k1 as f64 * t1 + k2 as f64 * t2).exp())
            .sum()
    }
}

/// The 2x2 projection symbol over the torus.
#[derive(Debug, Clone)]
pub struct ProjectionSymbol {
    entries: [[TorusSeries; 2]; 2],
    pub m: i64,
}

/// Assemble `p = [[f, g + h U], [g + h U*, 1 - f]]` with `U = e^{i m t2}`.
pub fn projection_symbol(m: i64, profile: &Profile) -> ProjectionSymbol {
    let f = TorusSeries::from_function(&profile.f);
    let g = TorusSeries::from_function(&profile.g);
    let h = TorusSeries::from_function(&profile.h);
    let top_right = g.clone().add(&h.clone().mul_exponential(CircleVariable::T2, m));
    let bottom_left = g.add(&h.mul_exponential(CircleVariable::T2, -m));
    let one_minus_f = TorusSeries::one().add(&f.clone().scale(-1.0));
    ProjectionSymbol {
        entries: [[f, top_right], [bottom_left, one_minus_f]],
        m,
    }
}

impl ProjectionSymbol {
    pub fn entry(&self, i: usize, j: usize) -> &TorusSeries {
        &self.entries[i][j]
    }

    pub fn evaluate(&self, t1: f64, t2: f64) -> [[C64; 2]; 2] {
        [
            [
                self.entries[0][0].evaluate(t1, t2),
                self.entries[0][1].evaluate(t1, t2),
            ],
            [
                self.entries[1][0].evaluate(t1, t2),
                self.entries[1][1].evaluate(t1, t2),
            ],
        ]
    }

    /// The symbol of `Y = 1 - 2p`.
    pub fn y_symbol(&self) -> [[TorusSeries; 2]; 2] {
        let one = TorusSeries::one();
        [
            [
                one.clone().add(&self.entries[0][0].clone().scale(-2.0)),
                self.entries[0][1].clone().scale(-2.0),
            ],
            [
                self.entries[1][0].clone().scale(-2.0),
                one.add(&self.entries[1][1].clone().scale(-2.0)),
            ],
        ]
    }
}

/// Grid suprema of the profile identities that make `p` a projection.
#[derive(Debug, Clone, Copy)]
pub struct ProfileResiduals {
    /// `sup |p^2 - p|` over the grid (max entry magnitude).
    pub projection_sup: f64,
    /// `sup |g h|`.
    pub cross_sup: f64,
    /// `sup |g^2 + h^2 - (f - f^2)|`.
    pub sum_rule_sup: f64,
}

/// Measure the residuals on the full `t1` grid and a 64-point `t2` grid.
/// The symbol entries factor into profile values times powers of
/// `U(t2)`, so the grid scan works on scalar samples.
pub fn profile_residuals(profile: &Profile, m: i64) -> ProfileResiduals {
    let n = profile.grid;
    let mut cross: f64 = 0.0;
    let mut sum_rule: f64 = 0.0;
    let mut projection: f64 = 0.0;
    let t2_grid = 64;
    let phases: Vec<C64> = (0..t2_grid)
        .map(|l| {
            let t2 = 2.0 * std::f64::consts::PI * l as f64 / t2_grid as f64;
            C64::new(0.0, m as f64 * t2).exp()
        })
        .collect();
    for j in 0..n {
        let t1 = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
        let fv = profile.f.evaluate(t1).re;
        let gv = profile.g.evaluate(t1).re;
        let hv = profile.h.evaluate(t1).re;
        cross = cross.max((gv * hv).abs());
        sum_rule = sum_rule.max((gv * gv + hv * hv - (fv - fv * fv)).abs());
        for u in &phases {
            let p = [
                [C64::new(fv, 0.0), C64::new(gv, 0.0) + u * hv],
                [C64::new(gv, 0.0) + u.conj() * hv, C64::new(1.0 - fv, 0.0)],
            ];
            for r in 0..2 {
                for c in 0..2 {
                    let p2 = p[r][0] * p[0][c] + p[r][1] * p[1][c];
                    projection = projection.max((p2 - p[r][c]).norm());
                }
            }
        }
    }
    ProfileResiduals {
        projection_sup: projection,
        cross_sup: cross,
        sum_rule_sup: sum_rule,
    }
}

/// The spectral truncation lattice: integer modes inside the closed disk
/// of radius `rho`, sorted lexicographically.
#[derive(Debug, Clone)]
pub struct TruncationLattice {
    rho: f64,
    modes: Vec<(i64, i64)>,
    index: HashMap<(i64, i64), usize>,
}

pub fn lattice(rho: f64) -> Result<TruncationLattice> {
    if !(rho >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "truncation radius must be nonnegative, got {rho}"
        )));
    }
    let r = rho.floor() as i64;
    let mut modes = Vec::new();
    for n1 in -r..=r {
        for n2 in -r..=r {
            if (n1 * n1 + n2 * n2) as f64 <= rho * rho {
                modes.push((n1, n2));
            }
        }
    }
    let index = modes
        .iter()
        .enumerate()
        .map(|(i, &m)| (m, i))
        .collect();
    Ok(TruncationLattice { rho, modes, index })
}

impl TruncationLattice {
    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn modes(&self) -> &[(i64, i64)] {
        &self.modes
    }

    pub fn position(&self, mode: (i64, i64)) -> Option<usize> {
        self.index.get(&mode).copied()
    }

    pub fn contains(&self, mode: (i64, i64)) -> bool {
        self.index.contains_key(&mode)
    }
}

/// A matrix over lattice modes (optionally tensored with extra factors).
#[derive(Debug, Clone)]
pub struct TruncatedOperator {
    pub matrix: CMatrix,
    pub domain: TruncationLattice,
    pub codomain: TruncationLattice,
}

/// Matrix of a bivariate Fourier multiplier between mode sets:
/// entry `(k, l) = c_{k - l}` (componentwise frequency difference).
pub fn multiplier_matrix(
    series: &TorusSeries,
    dom: &[(i64, i64)],
    codom: &[(i64, i64)],
) -> CMatrix {
    CMatrix::from_fn(codom.len(), dom.len(), |i, j| {
        let (k1, k2) = codom[i];
        let (l1, l2) = dom[j];
        series.coefficient((k1 - l1, k2 - l2))
    })
}

/// Multiplication operator of a single-variable function in the Fourier
/// basis: Toeplitz in the function's variable, identity in the other one.
pub fn mult_operator(
    func: &TorusFunction,
    dom: &TruncationLattice,
    codom: &TruncationLattice,
) -> TruncatedOperator {
    let series = TorusSeries::from_function(func);
    TruncatedOperator {
        matrix: multiplier_matrix(&series, dom.modes(), codom.modes()),
        domain: dom.clone(),
        codomain: codom.clone(),
    }
}

/// Diagonal block of the Dirac operator `D0 = i d/dt1 + d/dt2`:
/// entry `-n1 + i n2` at mode `(n1, n2)`.
pub fn dirac_block(lat: &TruncationLattice) -> TruncatedOperator {
    let diag = nalgebra::DVector::from_iterator(
        lat.len(),
        lat.modes().iter().map(|&(n1, n2)| C64::new(-(n1 as f64), n2 as f64)),
    );
    TruncatedOperator {
        matrix: CMatrix::from_diagonal(&diag),
        domain: lat.clone(),
        codomain: lat.clone(),
    }
}

/// `I_copies (x) D0` on the lattice, the amplified Dirac block acting on
/// each symbol component.
pub fn amplified_dirac(lat: &TruncationLattice, copies: usize) -> CMatrix {
    CMatrix::identity(copies, copies).kronecker(&dirac_block(lat).matrix)
}

/// Compression of `Y = 1 - 2p` to the truncation lattice together with
/// the exact commutator norm `delta = ||[P, Y]||`.
#[derive(Debug, Clone)]
pub struct CompressedY {
    /// `P Y P` as a hermitian form of size `2 N` (symbol (x) lattice).
    pub form: HermitianForm,
    /// `||[P, Y]|| = ||P Y (1 - P)||`, exact up to the eigensolver.
    pub delta: f64,
    pub lattice: TruncationLattice,
}

/// Smallest valid pad for the commutator window.
pub fn default_pad(profile: &Profile, m: i64) -> i64 {
    profile.bandwidth as i64 + m.abs()
}

/// Build `P_rho Y P_rho` and measure `delta = ||[P_rho, Y]||`.
///
/// The truncated `Y` has finite bandwidth, so every nonzero entry of the
/// commutator connects an inside mode to an outside mode within the
/// padded lattice of radius `rho + pad`; `pad >= bandwidth + |m|` makes
/// that window sufficient and the computed `delta` exact. Since the
/// commutator is `P Y (1-P) - (1-P) Y P` with the two terms supported on
/// orthogonal blocks, `delta` equals the largest singular value of
/// `A = P Y (1-P)`, obtained from the top eigenvalue of `A A*`.
pub fn compressed_y(
    m: i64,
    rho: f64,
    profile: &Profile,
    pad: i64,
) -> Result<CompressedY> {
    let required = default_pad(profile, m);
    if pad < required {
        return Err(Error::PadTooSmall { pad, required });
    }
    let inside = lattice(rho)?;
    let symbol = projection_symbol(m, profile);
    let y = symbol.y_symbol();

    let n = inside.len();
    let mut x = CMatrix::zeros(2 * n, 2 * n);
    for r in 0..2 {
        for c in 0..2 {
            let block = multiplier_matrix(&y[r][c], inside.modes(), inside.modes());
            x.view_mut((r * n, c * n), (n, n)).copy_from(&block);
        }
    }
    let form = HermitianForm::new(x, None)?;

    let delta = commutator_norm(&y, &inside);
    Ok(CompressedY {
        form,
        delta,
        lattice: inside,
    })
}

/// `||P Y (1 - P)||` with the outside window enumerated from the actual
/// coefficient support of the symbol entries.
fn commutator_norm(y: &[[TorusSeries; 2]; 2], inside: &TruncationLattice) -> f64 {
    let mut shifts = BTreeSet::new();
    for row in y {
        for entry in row {
            shifts.extend(entry.keys());
        }
    }
    let mut window = BTreeSet::new();
    for &(n1, n2) in inside.modes() {
        for &(d1, d2) in &shifts {
            let target = (n1 + d1, n2 + d2);
            if !inside.contains(target) {
                window.insert(target);
            }
        }
    }
    let window: Vec<(i64, i64)> = window.into_iter().collect();
    let col_index: HashMap<(i64, i64), usize> = window
        .iter()
        .enumerate()
        .map(|(i, &m)| (m, i))
        .collect();

    // sparse rows of A = P Y (1-P), indexed (symbol, inside mode)
    let n = inside.len();
    let w = window.len();
    let mut rows: Vec<Vec<(usize, C64)>> = vec![Vec::new(); 2 * n];
    for s in 0..2 {
        for (i, &(k1, k2)) in inside.modes().iter().enumerate() {
            let row = &mut rows[s * n + i];
            for (sp, y_row) in y[s].iter().enumerate() {
                for (d, c) in y_row.coeffs.iter() {
                    // column mode l with k - l = d
                    let l = (k1 - d.0, k2 - d.1);
                    if let Some(&j) = col_index.get(&l) {
                        row.push((sp * w + j, *c));
                    }
                }
            }
            row.sort_by_key(|&(col, _)| col);
        }
    }

    // gram matrix G = A A*
    let mut gram = CMatrix::zeros(2 * n, 2 * n);
    for i in 0..2 * n {
        for j in i..2 * n {
            let mut acc = C64::new(0.0, 0.0);
            let (mut a, mut b) = (0, 0);
            let (ra, rb) = (&rows[i], &rows[j]);
            while a < ra.len() && b < rb.len() {
                match ra[a].0.cmp(&rb[b].0) {
                    std::cmp::Ordering::Less => a += 1,
                    std::cmp::Ordering::Greater => b += 1,
                    std::cmp::Ordering::Equal => {
                        acc += ra[a].1 * rb[b].1.conj();
                        a += 1;
                        b += 1;
                    }
                }
            }
            gram[(i, j)] = acc;
            gram[(j, i)] = acc.conj();
        }
    }
    crate::hermitian::hermitian_eigenvalues(&gram)
        .iter()
        .fold(0.0f64, |acc, &v| acc.max(v.max(0.0)))
        .sqrt()
}

//! Homotopy-class labels for hermitian forms over finite-dimensional
//! operator systems `E = M_{k_1} + ... + M_{k_r}` (direct sums of full
//! matrix algebras, presented block-major), the stabilization maps, and
//! the Grothendieck group of the resulting semigroup.
//!
//! At matrix amplification `n` a form over `E` is a block-diagonal matrix
//! with blocks of sizes `n k_i`; its class is labeled by the per-block
//! negative index of inertia (number of negative eigenvalues). The
//! inertia tuple is stable under adding order-unit blocks, which makes it
//! a label for the direct-limit class directly.

use serde::{Deserialize, Serialize, Serializer};
use serde::ser::SerializeStruct;

use crate::hermitian::{hermitian_eigenvalues, operator_norm, HermitianForm};
use crate::homotopy::{linear_homotopy, whitehead_path, HomotopyCertificate};
use crate::{C64, CMatrix, Error, Result};

/// Shape of the operator system: `E = M_{k_1} + ... + M_{k_r}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SystemDescriptor {
    blocks: Vec<usize>,
}

impl SystemDescriptor {
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        if blocks.is_empty() || blocks.iter().any(|&k| k == 0) {
            return Err(Error::InvalidArgument(
                "descriptor needs at least one block, all of positive size".into(),
            ));
        }
        Ok(Self { blocks })
    }

    /// The scalars, `E = C`.
    pub fn scalar() -> Self {
        Self { blocks: vec![1] }
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Total dimension of one copy of `E` as a matrix, `sum k_i`.
    pub fn total_size(&self) -> usize {
        self.blocks.iter().sum()
    }

    /// Descriptor of `M_m(E)`: every block size multiplied by `m`.
    pub fn amplified(&self, m: usize) -> Self {
        Self {
            blocks: self.blocks.iter().map(|k| k * m).collect(),
        }
    }
}

/// Label of a homotopy class in `V(E, n)`: the per-block negative index
/// of inertia at matrix size `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VClassLabel {
    #[serde(rename = "blocks")]
    pub desc: SystemDescriptor,
    pub n: usize,
    pub inertia: Vec<usize>,
}

/// Formal difference of two labels; equality is tested on the canonical
/// componentwise difference `plus - minus` in Z^r.
#[derive(Debug, Clone)]
pub struct K0Element {
    pub desc: SystemDescriptor,
    pub plus: Vec<i64>,
    pub minus: Vec<i64>,
}

impl K0Element {
    pub fn canonical(&self) -> Vec<i64> {
        self.plus
            .iter()
            .zip(&self.minus)
            .map(|(p, m)| p - m)
            .collect()
    }

    /// The unique representative with componentwise `min(plus, minus) = 0`.
    pub fn canonical_form(&self) -> K0Element {
        let c = self.canonical();
        K0Element {
            desc: self.desc.clone(),
            plus: c.iter().map(|&v| v.max(0)).collect(),
            minus: c.iter().map(|&v| (-v).max(0)).collect(),
        }
    }

    pub fn zero(desc: SystemDescriptor) -> K0Element {
        let r = desc.block_count();
        K0Element {
            desc,
            plus: vec![0; r],
            minus: vec![0; r],
        }
    }

    pub fn add(&self, other: &K0Element) -> Result<K0Element> {
        if self.desc != other.desc {
            return Err(Error::ShapeMismatch("descriptors differ".into()));
        }
        Ok(K0Element {
            desc: self.desc.clone(),
            plus: self.plus.iter().zip(&other.plus).map(|(a, b)| a + b).collect(),
            minus: self.minus.iter().zip(&other.minus).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn neg(&self) -> K0Element {
        K0Element {
            desc: self.desc.clone(),
            plus: self.minus.clone(),
            minus: self.plus.clone(),
        }
    }
}

impl PartialEq for K0Element {
    fn eq(&self, other: &Self) -> bool {
        self.desc == other.desc && self.canonical() == other.canonical()
    }
}

impl Eq for K0Element {}

impl Serialize for K0Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("K0Element", 1)?;
        s.serialize_field("canonical", &self.canonical())?;
        s.end()
    }
}

/// Classify a block-diagonal form over `E` at amplification `n`
/// (inferred from the matrix size). `inertia[i]` is the number of
/// negative eigenvalues of block `i`, equivalently `(n k_i - sig_i)/2`.
pub fn classify(desc: &SystemDescriptor, x: &HermitianForm) -> Result<VClassLabel> {
    let total = desc.total_size();
    let size = x.size();
    if size == 0 || size % total != 0 {
        return Err(Error::ShapeMismatch(format!(
            "form size {size} is not a multiple of the descriptor size {total}"
        )));
    }
    let n = size / total;

    // off-block entries must vanish (up to the hermiticity scale)
    let tol = 1e-12 * operator_norm(x.data());
    let spans: Vec<(usize, usize)> = {
        let mut offset = 0;
        desc.blocks()
            .iter()
            .map(|&k| {
                let span = (offset, n * k);
                offset += n * k;
                span
            })
            .collect()
    };
    let in_block = |idx: usize| spans.iter().position(|&(o, l)| idx >= o && idx < o + l);
    for i in 0..size {
        for j in 0..size {
            if in_block(i) != in_block(j) && x.data()[(i, j)].norm() > tol {
                return Err(Error::ShapeMismatch(format!(
                    "entry ({i},{j}) = {} crosses blocks",
                    x.data()[(i, j)]
                )));
            }
        }
    }

    let inertia = spans
        .iter()
        .map(|&(offset, len)| {
            let block = x.data().view((offset, offset), (len, len)).into_owned();
            hermitian_eigenvalues(&block)
                .iter()
                .filter(|&&v| v < 0.0)
                .count()
        })
        .collect();
    Ok(VClassLabel {
        desc: desc.clone(),
        n,
        inertia,
    })
}

/// The class of the order unit at size `n` (inertia zero).
pub fn zero_label(desc: &SystemDescriptor, n: usize) -> VClassLabel {
    VClassLabel {
        desc: desc.clone(),
        n,
        inertia: vec![0; desc.block_count()],
    }
}

/// Stabilization `V(E, n) -> V(E, m)`, padding with order-unit blocks.
/// Only positive eigenvalues are added, so the inertia tuple is
/// unchanged; the per-block signature shifts by `(m - n) k_i`.
pub fn iota(label: &VClassLabel, m: usize) -> Result<VClassLabel> {
    if m < label.n {
        return Err(Error::InvalidArgument(format!(
            "iota target size {m} is below the label size {}",
            label.n
        )));
    }
    Ok(VClassLabel {
        desc: label.desc.clone(),
        n: m,
        inertia: label.inertia.clone(),
    })
}

/// Semigroup addition, the label of the direct sum.
pub fn add(a: &VClassLabel, b: &VClassLabel) -> Result<VClassLabel> {
    if a.desc != b.desc {
        return Err(Error::ShapeMismatch("descriptors differ".into()));
    }
    Ok(VClassLabel {
        desc: a.desc.clone(),
        n: a.n + b.n,
        inertia: a
            .inertia
            .iter()
            .zip(&b.inertia)
            .map(|(x, y)| x + y)
            .collect(),
    })
}

/// Formal difference `[a] - [b]` in the Grothendieck group.
pub fn grothendieck(a: &VClassLabel, b: &VClassLabel) -> Result<K0Element> {
    if a.desc != b.desc {
        return Err(Error::ShapeMismatch("descriptors differ".into()));
    }
    Ok(K0Element {
        desc: a.desc.clone(),
        plus: a.inertia.iter().map(|&v| v as i64).collect(),
        minus: b.inertia.iter().map(|&v| v as i64).collect(),
    })
}

/// Result of the stabilization shuffle `M_n(M_N(E)) -> M_n(M_M(E))`.
///
/// `image[r][c] == padded[permutation[r]][permutation[c]]` holds exactly:
/// conjugating the image by the permutation matrix recovers `padded`,
/// which is the direct sum of the input with order-unit blocks.
#[derive(Debug, Clone)]
pub struct JmathShuffle {
    /// Index map realizing the permutation `v_sigma`.
    pub permutation: Vec<usize>,
    /// `x + e_{M-N}` in the `M_M(M_n(E))` layout (block-major over `E`).
    pub padded: CMatrix,
    /// The assembled image in the `M_n(M_M(E))` layout.
    pub image: CMatrix,
}

impl JmathShuffle {
    /// Dense permutation matrix `u` with `u * image * u^T = padded`.
    pub fn shuffle_matrix(&self) -> CMatrix {
        let size = self.permutation.len();
        let mut u = CMatrix::zeros(size, size);
        for (row, &col) in self.permutation.iter().enumerate() {
            u[(col, row)] = C64::new(1.0, 0.0);
        }
        u
    }
}

/// Apply an index permutation by entry relocation (no arithmetic):
/// `out[r][c] = m[perm[r]][perm[c]]`.
pub fn apply_permutation(m: &CMatrix, perm: &[usize]) -> CMatrix {
    let size = perm.len();
    CMatrix::from_fn(size, size, |r, c| m[(perm[r], perm[c])])
}

pub fn invert_permutation(perm: &[usize]) -> Vec<usize> {
    let mut inverse = vec![0usize; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inverse[p] = i;
    }
    inverse
}

/// Stabilization map sending a form `x` over `M_N(E)` at amplification
/// `n` to `v_sigma^* (x + e_{M-N}) v_sigma` over `M_M(E)`, where the
/// permutation `v_sigma` identifies `M_n(M_M(E))` with `M_M(M_n(E))` per
/// block of `E`. The order unit padding is the identity matrix of the
/// concrete representation.
pub fn jmath_shuffle(
    desc: &SystemDescriptor,
    x: &CMatrix,
    n: usize,
    inner_n: usize,
    inner_m: usize,
) -> Result<JmathShuffle> {
    if inner_m <= inner_n || inner_n == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "need M > N >= 1 and n >= 1, got n={n}, N={inner_n}, M={inner_m}"
        )));
    }
    let in_size = n * inner_n * desc.total_size();
    if x.nrows() != in_size || x.ncols() != in_size {
        return Err(Error::ShapeMismatch(format!(
            "input is {}x{}, expected {in_size}x{in_size}",
            x.nrows(),
            x.ncols()
        )));
    }
    let out_size = n * inner_m * desc.total_size();

    // Per E-block flat index in the a-major layout of M_n(M_j(M_k)):
    // (a, c, p) -> a*j*k + c*k + p. The c-major layout of M_j(M_n(M_k))
    // puts c outermost instead.
    let mut padded = CMatrix::zeros(out_size, out_size);
    let mut permutation = vec![0usize; out_size];
    let mut in_offset = 0;
    let mut out_offset = 0;
    for &k in desc.blocks() {
        // shuffle the input block from a-major (over N) to c-major
        let block_in = n * inner_n * k;
        let mut to_cmajor = vec![0usize; block_in];
        for a in 0..n {
            for c in 0..inner_n {
                for p in 0..k {
                    to_cmajor[c * n * k + a * k + p] = a * inner_n * k + c * k + p;
                }
            }
        }
        for (r, &pr) in to_cmajor.iter().enumerate() {
            for (s, &ps) in to_cmajor.iter().enumerate() {
                padded[(out_offset + r, out_offset + s)] =
                    x[(in_offset + pr, in_offset + ps)];
            }
        }
        // pad with the order unit e_{M-N}
        for q in block_in..n * inner_m * k {
            padded[(out_offset + q, out_offset + q)] = C64::new(1.0, 0.0);
        }
        // v_sigma for this block: a-major over M <- c-major over M
        for a in 0..n {
            for c in 0..inner_m {
                for p in 0..k {
                    permutation[out_offset + a * inner_m * k + c * k + p] =
                        out_offset + c * n * k + a * k + p;
                }
            }
        }
        in_offset += block_in;
        out_offset += n * inner_m * k;
    }

    let image = apply_permutation(&padded, &permutation);
    Ok(JmathShuffle {
        permutation,
        padded,
        image,
    })
}

/// Constructive completeness of the signature over the scalars: two
/// invertible Hermitian `n x n` matrices with equal signature are joined,
/// after one order-unit stabilization, by a chain of certified homotopies
/// (Whitehead rotations into diagonal form, then straight-line
/// interpolation of the diagonal onto the common signature matrix).
/// Unequal signatures are obstructed.
pub fn certified_connection(
    x: &HermitianForm,
    y: &HermitianForm,
    steps: usize,
) -> Result<Vec<HomotopyCertificate>> {
    if x.size() != y.size() {
        return Err(Error::ShapeMismatch(format!(
            "forms have sizes {} and {}",
            x.size(),
            y.size()
        )));
    }
    if x.signature() != y.signature() {
        return Err(Error::SignatureObstruction {
            left: x.signature(),
            right: y.signature(),
        });
    }
    let n = x.size();
    let mut chain = Vec::new();

    // Whitehead rotations sweep at speed O(|x|), so the number of samples
    // must scale like (|x| / gap)^2 for the inter-sample rigidity floor to
    // stay positive.
    let rotation_steps = |form: &HermitianForm| -> usize {
        let norm = operator_norm(form.data()).max(1.0);
        let g = form.gap().min(1.0);
        steps.max((30.0 * (norm / g) * (norm / g)).ceil() as usize + 2)
    };

    // x + e ~ d_x + e ~ s_x + e, and the same for y in reverse.
    let half_forward = |form: &HermitianForm| -> Result<(Vec<HomotopyCertificate>, CMatrix)> {
        let mut certs = Vec::new();
        let eigen = form.data().clone().symmetric_eigen();
        let diag = CMatrix::from_diagonal(&eigen.eigenvalues.map(|v| C64::new(v, 0.0)));
        // u* x u = d, so rotate with u*
        certs.push(whitehead_path(
            &eigen.eigenvectors.adjoint(),
            form,
            rotation_steps(form),
        )?);
        let diag_form = HermitianForm::new(diag.clone(), Some(form.tol_zero()))?
            .direct_sum(&HermitianForm::identity(n));
        let sign = CMatrix::from_diagonal(&eigen.eigenvalues.map(|v| {
            C64::new(if v > 0.0 { 1.0 } else { -1.0 }, 0.0)
        }));
        let sign_form = HermitianForm::new(sign.clone(), Some(form.tol_zero()))?
            .direct_sum(&HermitianForm::identity(n));
        certs.extend(segmented_linear(&diag_form, &sign_form, steps)?);
        Ok((certs, sign))
    };

    let (certs_x, sign_x) = half_forward(x)?;
    let (certs_y, sign_y) = half_forward(y)?;
    chain.extend(certs_x);

    // connect the two diagonal sign matrices by a permutation rotation
    if sign_x != sign_y {
        let perm = matching_permutation(&sign_x, &sign_y);
        let sign_x_form = HermitianForm::new(sign_x, None)?;
        let steps = rotation_steps(&sign_x_form);
        chain.push(whitehead_path(&perm, &sign_x_form, steps)?);
    }

    // reverse the y half
    for cert in certs_y.into_iter().rev() {
        chain.push(reverse_certificate(cert));
    }
    Ok(chain)
}

/// Permutation matrix sending the diagonal pattern of `from` onto `to`
/// (both diagonal +-1 matrices with the same number of -1 entries).
fn matching_permutation(from: &CMatrix, to: &CMatrix) -> CMatrix {
    let n = from.nrows();
    let positions = |m: &CMatrix, sign: f64| -> Vec<usize> {
        (0..n).filter(|&i| m[(i, i)].re * sign > 0.0).collect()
    };
    let mut perm = vec![0usize; n];
    for sign in [1.0, -1.0] {
        for (src, dst) in positions(from, sign).into_iter().zip(positions(to, sign)) {
            perm[dst] = src;
        }
    }
    let mut u = CMatrix::zeros(n, n);
    for (dst, &src) in perm.iter().enumerate() {
        u[(dst, src)] = C64::new(1.0, 0.0);
    }
    u
}

/// Straight-line connection split into segments short enough that every
/// segment satisfies the linear-path gap bound.
fn segmented_linear(
    a: &HermitianForm,
    b: &HermitianForm,
    steps: usize,
) -> Result<Vec<HomotopyCertificate>> {
    let eps = operator_norm(&(a.data() - b.data()));
    let floor = a.gap().min(b.gap());
    let segments = (eps / (0.9 * floor)).ceil().max(1.0) as usize;
    let norm = operator_norm(a.data()).max(operator_norm(b.data())).max(1.0);
    let steps = steps.max((8.0 * norm / floor).ceil() as usize + 2);
    let mut certs = Vec::with_capacity(segments);
    let mut prev = a.clone();
    for seg in 1..=segments {
        let t = seg as f64 / segments as f64;
        let next = if seg == segments {
            b.clone()
        } else {
            let matrix = a.data() * C64::new(1.0 - t, 0.0) + b.data() * C64::new(t, 0.0);
            HermitianForm::new(matrix, Some(a.tol_zero()))?
        };
        certs.push(linear_homotopy(&prev, &next, steps)?);
        prev = next;
    }
    Ok(certs)
}

fn reverse_certificate(cert: HomotopyCertificate) -> HomotopyCertificate {
    let mut samples = cert.samples;
    samples.reverse();
    for s in &mut samples {
        s.t = 1.0 - s.t;
    }
    HomotopyCertificate {
        samples,
        certified_gap: cert.certified_gap,
        certified: cert.certified,
        endpoints: (cert.endpoints.1, cert.endpoints.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(entries: &[f64]) -> CMatrix {
        CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            entries.len(),
            entries.iter().map(|&v| C64::new(v, 0.0)),
        ))
    }

    fn form(entries: &[f64]) -> HermitianForm {
        HermitianForm::new(diag(entries), None).unwrap()
    }

    #[test]
    fn classify_order_unit() {
        let desc = SystemDescriptor::scalar();
        let label = classify(&desc, &HermitianForm::identity(4)).unwrap();
        assert_eq!(label.n, 4);
        assert_eq!(label.inertia, vec![0]);
    }

    #[test]
    fn classify_scalar_signature_zero() {
        let desc = SystemDescriptor::scalar();
        let label = classify(&desc, &form(&[1.0, -1.0])).unwrap();
        assert_eq!(label.n, 2);
        assert_eq!(label.inertia, vec![1]);
    }

    #[test]
    fn classify_two_blocks() {
        let desc = SystemDescriptor::new(vec![2, 1]).unwrap();
        let label = classify(&desc, &form(&[3.0, -1.0, -2.0])).unwrap();
        assert_eq!(label.n, 1);
        assert_eq!(label.inertia, vec![1, 1]);
    }

    #[test]
    fn classify_rejects_cross_block_entries() {
        let desc = SystemDescriptor::new(vec![1, 1]).unwrap();
        let mut data = diag(&[1.0, -1.0]);
        data[(0, 1)] = C64::new(0.5, 0.0);
        data[(1, 0)] = C64::new(0.5, 0.0);
        let x = HermitianForm::new(data, None).unwrap();
        assert!(matches!(classify(&desc, &x), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn classify_rejects_indivisible_sizes() {
        let desc = SystemDescriptor::new(vec![2]).unwrap();
        let x = form(&[1.0, -1.0, 2.0]);
        assert!(matches!(classify(&desc, &x), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn iota_preserves_inertia() {
        let desc = SystemDescriptor::scalar();
        let label = VClassLabel {
            desc: desc.clone(),
            n: 1,
            inertia: vec![1],
        };
        // signature -1 at n=1 maps to signature 1 at n=3, same inertia
        let up = iota(&label, 3).unwrap();
        assert_eq!(up.n, 3);
        assert_eq!(up.inertia, vec![1]);
        let zero = zero_label(&desc, 1);
        assert_eq!(iota(&zero, 5).unwrap(), zero_label(&desc, 5));
    }

    #[test]
    fn add_with_zero_is_iota() {
        let desc = SystemDescriptor::new(vec![1, 2]).unwrap();
        let a = VClassLabel {
            desc: desc.clone(),
            n: 2,
            inertia: vec![1, 0],
        };
        let z = zero_label(&desc, 3);
        assert_eq!(add(&a, &z).unwrap(), iota(&a, 5).unwrap());
    }

    #[test]
    fn add_componentwise() {
        let desc = SystemDescriptor::new(vec![1, 1]).unwrap();
        let a = VClassLabel {
            desc: desc.clone(),
            n: 2,
            inertia: vec![1, 0],
        };
        let b = VClassLabel {
            desc: desc.clone(),
            n: 2,
            inertia: vec![0, 2],
        };
        assert_eq!(add(&a, &b).unwrap().inertia, vec![1, 2]);
    }

    #[test]
    fn grothendieck_zero_and_integers() {
        let desc = SystemDescriptor::scalar();
        let a = VClassLabel {
            desc: desc.clone(),
            n: 4,
            inertia: vec![3],
        };
        let b = VClassLabel {
            desc: desc.clone(),
            n: 2,
            inertia: vec![1],
        };
        assert_eq!(
            grothendieck(&a, &a).unwrap(),
            K0Element::zero(desc.clone())
        );
        let d = grothendieck(&a, &b).unwrap();
        assert_eq!(d.canonical(), vec![2]);
    }

    #[test]
    fn k0_serializes_canonical() {
        let desc = SystemDescriptor::new(vec![1, 1]).unwrap();
        let e = K0Element {
            desc,
            plus: vec![3, 0],
            minus: vec![1, 2],
        };
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(json, r#"{"canonical":[2,-2]}"#);
    }

    #[test]
    fn jmath_trivial_amplification() {
        // N=1, M=2, n=1 over the scalars: image is diag(x, 1), shuffle is
        // the identity map
        let desc = SystemDescriptor::scalar();
        let x = diag(&[-2.0]);
        let j = jmath_shuffle(&desc, &x, 1, 1, 2).unwrap();
        assert_eq!(j.image, diag(&[-2.0, 1.0]));
        assert_eq!(j.permutation, vec![0, 1]);
    }

    #[test]
    fn jmath_shuffle_order_n2() {
        // N=1, M=2, n=2 over the scalars: sigma maps (1,2,3,4) to (1,3,2,4)
        let desc = SystemDescriptor::scalar();
        let x = CMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(2.0, 0.0),
                C64::new(0.5, 0.25),
                C64::new(0.5, -0.25),
                C64::new(-1.0, 0.0),
            ],
        );
        let j = jmath_shuffle(&desc, &x, 2, 1, 2).unwrap();
        assert_eq!(j.permutation, vec![0, 2, 1, 3]);
        // u_sigma * image * u_sigma^T recovers x + e exactly
        let recovered = apply_permutation(&j.image, &invert_permutation(&j.permutation));
        assert_eq!(recovered, j.padded);
        let mut expected = CMatrix::identity(4, 4);
        expected.view_mut((0, 0), (2, 2)).copy_from(&x);
        assert_eq!(j.padded, expected);
        // the interleaved image: x entries at even positions
        assert_eq!(j.image[(0, 0)], x[(0, 0)]);
        assert_eq!(j.image[(0, 2)], x[(0, 1)]);
        assert_eq!(j.image[(2, 0)], x[(1, 0)]);
        assert_eq!(j.image[(2, 2)], x[(1, 1)]);
        assert_eq!(j.image[(1, 1)], C64::new(1.0, 0.0));
        assert_eq!(j.image[(3, 3)], C64::new(1.0, 0.0));
    }

    #[test]
    fn jmath_dense_conjugation_matches() {
        let desc = SystemDescriptor::new(vec![1, 2]).unwrap();
        let x = diag(&[2.0, -1.0, 3.0, -0.5, 1.0, 2.0]);
        let j = jmath_shuffle(&desc, &x, 2, 1, 3).unwrap();
        let u = j.shuffle_matrix();
        let conjugated = &u * &j.image * u.transpose();
        assert_eq!(conjugated, j.padded);
    }

    #[test]
    fn certified_connection_same_signature() {
        let x = form(&[2.0, -1.0]);
        let y = form(&[0.5, -3.0]);
        let chain = certified_connection(&x, &y, 41).unwrap();
        assert!(!chain.is_empty());
        for cert in &chain {
            assert!(cert.certified);
            assert_eq!(
                cert.endpoints.0.signature(),
                cert.endpoints.1.signature()
            );
        }
        // chain endpoints are x + e and y + e
        let first = chain.first().unwrap();
        let last = chain.last().unwrap();
        let start = x.direct_sum(&HermitianForm::identity(2));
        let end = y.direct_sum(&HermitianForm::identity(2));
        assert!(operator_norm(&(first.endpoints.0.data() - start.data())) < 1e-10);
        assert!(operator_norm(&(last.endpoints.1.data() - end.data())) < 1e-10);
        // consecutive certificates agree where they meet
        for pair in chain.windows(2) {
            let gap = operator_norm(
                &(pair[0].endpoints.1.data() - pair[1].endpoints.0.data()),
            );
            assert!(gap < 1e-10, "chain is discontinuous: {gap:e}");
        }
    }

    #[test]
    fn certified_connection_obstructed() {
        let x = form(&[1.0, 1.0]);
        let y = form(&[1.0, -1.0]);
        assert!(matches!(
            certified_connection(&x, &y, 11),
            Err(Error::SignatureObstruction { left: 2, right: 0 })
        ));
    }
}

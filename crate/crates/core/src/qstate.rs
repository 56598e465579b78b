//! Density-matrix and pure-state algebra: construction, partial trace, Bloch
//! decomposition into coherence vectors and correlation tensors for arbitrary
//! partitions, entropies and Schmidt decomposition.
//!
//! A state lives over ordered elementary *sites* (qubits for fermionic modes,
//! qudits otherwise); basis ordering is row-major with site 0 slowest. A
//! [`PartitionSpec`] groups sites into disjoint subsets; each subset acts as a
//! single qudit of dimension `prod(site dims in subset)`.

use crate::error::{Error, Result};
use crate::linalg::{eigh, eigvalsh, hermiticity_defect};
use crate::su_basis::GeneratorBasis;
use crate::{CMat, CVec, C64};

const HERM_TOL: f64 = 1e-10;
const TRACE_TOL: f64 = 1e-10;
const POS_TOL: f64 = 1e-10;
const NORM_TOL: f64 = 1e-8;

/// Ordered grouping of sites into disjoint subsets covering all sites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionSpec {
    site_dims: Vec<usize>,
    subsets: Vec<Vec<usize>>,
    local_dims: Vec<usize>,
}

impl PartitionSpec {
    pub fn new(site_dims: &[usize], subsets: Vec<Vec<usize>>) -> Result<Self> {
        if site_dims.iter().any(|&d| d < 2) {
            return Err(Error::InvalidPartition("site dims must be >= 2".into()));
        }
        let mut seen = vec![false; site_dims.len()];
        for s in &subsets {
            if s.is_empty() {
                return Err(Error::InvalidPartition("empty subset".into()));
            }
            for &i in s {
                if i >= site_dims.len() {
                    return Err(Error::InvalidPartition(format!(
                        "site index {i} out of range"
                    )));
                }
                if seen[i] {
                    return Err(Error::InvalidPartition(format!("site {i} listed twice")));
                }
                seen[i] = true;
            }
        }
        if !seen.iter().all(|&b| b) {
            return Err(Error::InvalidPartition(
                "subsets do not cover all sites".into(),
            ));
        }
        let local_dims = subsets
            .iter()
            .map(|s| s.iter().map(|&i| site_dims[i]).product())
            .collect();
        Ok(PartitionSpec {
            site_dims: site_dims.to_vec(),
            subsets,
            local_dims,
        })
    }

    /// One subset per site.
    pub fn singletons(site_dims: &[usize]) -> Self {
        let subsets = (0..site_dims.len()).map(|i| vec![i]).collect();
        PartitionSpec::new(site_dims, subsets).expect("singleton partition is always valid")
    }

    /// Two subsets: the listed sites and the rest, in site order.
    pub fn bipartition(site_dims: &[usize], first: &[usize]) -> Result<Self> {
        let rest: Vec<usize> = (0..site_dims.len())
            .filter(|i| !first.contains(i))
            .collect();
        PartitionSpec::new(site_dims, vec![first.to_vec(), rest])
    }

    /// Parse the CLI partition syntax: semicolon-separated comma lists of
    /// zero-indexed sites, e.g. `0,1;2,3`.
    pub fn parse(spec: &str, site_dims: &[usize]) -> Result<Self> {
        let mut subsets = Vec::new();
        for group in spec.split(';') {
            let subset: Vec<usize> = group
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad site index `{t}` in partition")))
                })
                .collect::<Result<_>>()?;
            subsets.push(subset);
        }
        PartitionSpec::new(site_dims, subsets)
    }

    pub fn site_dims(&self) -> &[usize] {
        &self.site_dims
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    /// Dimension of each subset as a single qudit.
    pub fn local_dims(&self) -> &[usize] {
        &self.local_dims
    }

    pub fn num_subsets(&self) -> usize {
        self.subsets.len()
    }

    pub fn total_dim(&self) -> usize {
        self.site_dims.iter().product()
    }

    /// Site order with all subsets concatenated.
    fn flattened_sites(&self) -> Vec<usize> {
        self.subsets.iter().flatten().copied().collect()
    }

    /// True when the subsets are already contiguous ascending site runs.
    fn is_identity_order(&self) -> bool {
        self.flattened_sites()
            .iter()
            .enumerate()
            .all(|(k, &s)| k == s)
    }
}

/// Unit-norm pure state over sites.
#[derive(Debug, Clone)]
pub struct PureStateVector {
    pub dims: Vec<usize>,
    pub amplitudes: CVec,
}

impl PureStateVector {
    pub fn new(dims: Vec<usize>, amplitudes: CVec) -> Result<Self> {
        let total: usize = dims.iter().product();
        if amplitudes.len() != total {
            return Err(Error::DimensionMismatch(format!(
                "state length {} != product of dims {}",
                amplitudes.len(),
                total
            )));
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized((norm - 1.0).abs()));
        }
        Ok(PureStateVector { dims, amplitudes })
    }

    /// Normalize and wrap; fails only on the zero vector.
    pub fn normalized(dims: Vec<usize>, amplitudes: CVec) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-300 {
            return Err(Error::NotNormalized(1.0));
        }
        PureStateVector::new(dims, amplitudes / C64::new(norm, 0.0))
    }

    /// Computational basis state |levels>.
    pub fn basis_state(dims: &[usize], levels: &[usize]) -> Result<Self> {
        if levels.len() != dims.len() || levels.iter().zip(dims).any(|(&l, &d)| l >= d) {
            return Err(Error::DimensionMismatch("levels out of range".into()));
        }
        let total: usize = dims.iter().product();
        let mut idx = 0;
        for (i, &l) in levels.iter().enumerate() {
            let stride: usize = dims[i + 1..].iter().product();
            idx += l * stride;
        }
        let mut amp = CVec::zeros(total);
        amp[idx] = C64::new(1.0, 0.0);
        Ok(PureStateVector {
            dims: dims.to_vec(),
            amplitudes: amp,
        })
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.len() == 0
    }

    /// Reorder tensor factors; `perm[k]` is the old site placed at new slot k.
    pub fn permute_sites(&self, perm: &[usize]) -> PureStateVector {
        let new_dims: Vec<usize> = perm.iter().map(|&p| self.dims[p]).collect();
        let data = permute_vec(&self.amplitudes, &self.dims, perm);
        PureStateVector {
            dims: new_dims,
            amplitudes: data,
        }
    }
}

/// Hermitian, unit-trace, positive-semidefinite matrix over sites.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    pub dims: Vec<usize>,
    pub data: CMat,
}

impl DensityMatrix {
    pub fn new(dims: Vec<usize>, data: CMat) -> Result<Self> {
        let total: usize = dims.iter().product();
        if data.nrows() != total || data.ncols() != total {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{}, dims give {}",
                data.nrows(),
                data.ncols(),
                total
            )));
        }
        let herm = hermiticity_defect(&data);
        if herm > HERM_TOL {
            return Err(Error::NotHermitian(herm));
        }
        let tr: C64 = data.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidTrace((tr.re - 1.0).abs().max(tr.im.abs())));
        }
        let min_ev = eigvalsh(&data)[0];
        if min_ev < -POS_TOL {
            return Err(Error::NotPositive(min_ev));
        }
        Ok(DensityMatrix { dims, data })
    }

    /// Skip the validity checks; for internal use where the invariants hold by
    /// construction.
    pub(crate) fn new_unchecked(dims: Vec<usize>, data: CMat) -> Self {
        DensityMatrix { dims, data }
    }

    pub fn total_dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn permute_sites(&self, perm: &[usize]) -> DensityMatrix {
        let new_dims: Vec<usize> = perm.iter().map(|&p| self.dims[p]).collect();
        let data = permute_mat(&self.data, &self.dims, perm);
        DensityMatrix {
            dims: new_dims,
            data,
        }
    }
}

/// rho = |psi><psi|.
pub fn from_pure(psi: &PureStateVector) -> DensityMatrix {
    let n = psi.len();
    let mut m = CMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = psi.amplitudes[i] * psi.amplitudes[j].conj();
        }
    }
    DensityMatrix::new_unchecked(psi.dims.clone(), m)
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let n = dims.len();
    let mut s = vec![1usize; n];
    for i in (0..n.saturating_sub(1)).rev() {
        s[i] = s[i + 1] * dims[i + 1];
    }
    s
}

fn permute_vec(v: &CVec, dims: &[usize], perm: &[usize]) -> CVec {
    let n = dims.len();
    let old_strides = strides(dims);
    let new_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let new_strides = strides(&new_dims);
    let total = v.len();
    let mut out = CVec::zeros(total);
    let mut digits = vec![0usize; n];
    for idx in 0..total {
        // decode old multi-index
        let mut rem = idx;
        for k in 0..n {
            digits[k] = rem / old_strides[k];
            rem %= old_strides[k];
        }
        let mut nidx = 0;
        for k in 0..n {
            nidx += digits[perm[k]] * new_strides[k];
        }
        out[nidx] = v[idx];
    }
    out
}

fn permute_mat(m: &CMat, dims: &[usize], perm: &[usize]) -> CMat {
    let n = dims.len();
    let old_strides = strides(dims);
    let new_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let new_strides = strides(&new_dims);
    let total = m.nrows();
    let map: Vec<usize> = (0..total)
        .map(|idx| {
            let mut rem = idx;
            let mut nidx = 0;
            let mut digits = vec![0usize; n];
            for k in 0..n {
                digits[k] = rem / old_strides[k];
                rem %= old_strides[k];
            }
            for k in 0..n {
                nidx += digits[perm[k]] * new_strides[k];
            }
            nidx
        })
        .collect();
    let mut out = CMat::zeros(total, total);
    for i in 0..total {
        for j in 0..total {
            out[(map[i], map[j])] = m[(i, j)];
        }
    }
    out
}

/// Partial trace over sites: keep the listed sites, in the listed order.
pub(crate) fn ptrace_sites(data: &CMat, dims: &[usize], keep: &[usize]) -> (CMat, Vec<usize>) {
    let n = dims.len();
    let traced: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
    let keep_dims: Vec<usize> = keep.iter().map(|&i| dims[i]).collect();
    let tr_dims: Vec<usize> = traced.iter().map(|&i| dims[i]).collect();
    let dk: usize = keep_dims.iter().product();
    let dt: usize = tr_dims.iter().product();
    let st = strides(dims);
    let keep_strides = strides(&keep_dims);
    let tr_strides = strides(&tr_dims);

    // full-index offset of a (keep multi-index, traced multi-index) pair
    let offset = |grp: &[usize], grp_strides: &[usize], sites: &[usize], x: usize| -> usize {
        let mut off = 0;
        for (k, &site) in sites.iter().enumerate() {
            let digit = (x / grp_strides[k]) % grp[k];
            off += digit * st[site];
        }
        off
    };

    let mut out = CMat::zeros(dk, dk);
    for a in 0..dk {
        let oa = offset(&keep_dims, &keep_strides, keep, a);
        for b in 0..dk {
            let ob = offset(&keep_dims, &keep_strides, keep, b);
            let mut acc = C64::new(0.0, 0.0);
            for e in 0..dt {
                let oe = offset(&tr_dims, &tr_strides, &traced, e);
                acc += data[(oa + oe, ob + oe)];
            }
            out[(a, b)] = acc;
        }
    }
    (out, keep_dims)
}

/// Reduced density matrix over the kept subsets of the partition, in the
/// order listed in `keep`.
pub fn partial_trace(
    rho: &DensityMatrix,
    partition: &PartitionSpec,
    keep: &[usize],
) -> Result<DensityMatrix> {
    if rho.dims != partition.site_dims {
        return Err(Error::DimensionMismatch(
            "partition site dims do not match state dims".into(),
        ));
    }
    if keep.is_empty() {
        return Err(Error::InvalidPartition("keep list is empty".into()));
    }
    let mut sites = Vec::new();
    for &k in keep {
        let subset = partition
            .subsets
            .get(k)
            .ok_or_else(|| Error::InvalidPartition(format!("subset index {k} out of range")))?;
        sites.extend_from_slice(subset);
    }
    let (m, kept_dims) = ptrace_sites(&rho.data, &rho.dims, &sites);
    Ok(DensityMatrix::new_unchecked(kept_dims, m))
}

/// Real tensor with row-major layout.
#[derive(Debug, Clone)]
pub struct Tensor {
    pub shape: Vec<usize>,
    pub data: Vec<f64>,
}

impl Tensor {
    pub fn norm_sq(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Element access by multi-index.
    pub fn at(&self, idx: &[usize]) -> f64 {
        let mut flat = 0;
        for (k, &i) in idx.iter().enumerate() {
            flat = flat * self.shape[k] + i;
        }
        self.data[flat]
    }
}

/// Coherence vectors and correlation tensors of a state for a partition.
///
/// Conventions: `s_a = (d/2) Tr(rho lambda_a)` per subset and
/// `t_{a1..aM} = prod_k (d_k/2) Tr(rho lambda_{a1} x ... x lambda_{aM})`.
/// Subset combinations are enumerated by size, lexicographic within a size.
#[derive(Debug, Clone)]
pub struct BlochDecomposition {
    pub partition: PartitionSpec,
    pub coherence_vectors: Vec<Vec<f64>>,
    /// `(subset indices, tensor)` for every combination of >= 2 subsets.
    pub correlation_tensors: Vec<(Vec<usize>, Tensor)>,
}

impl BlochDecomposition {
    /// Correlation tensor for an exact subset combination.
    pub fn tensor(&self, subsets: &[usize]) -> Option<&Tensor> {
        self.correlation_tensors
            .iter()
            .find(|(s, _)| s == subsets)
            .map(|(_, t)| t)
    }

    /// The order-m tensor over all subsets.
    pub fn top_tensor(&self) -> &Tensor {
        &self.correlation_tensors.last().expect("m >= 2").1
    }
}

/// Sparse triplet view of a generator: (row, col, value).
fn sparse_entries(g: &CMat) -> Vec<(usize, usize, C64)> {
    let mut out = Vec::new();
    for r in 0..g.nrows() {
        for c in 0..g.ncols() {
            let z = g[(r, c)];
            if z.norm_sqr() > 0.0 {
                out.push((r, c, z));
            }
        }
    }
    out
}

/// All size>=1 combinations of 0..m, by size then lexicographic.
fn subset_combinations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in 1..=m {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            out.push(combo.clone());
            // advance to the next lexicographic combination of `size` out of m
            let mut i = size;
            while i > 0 && combo[i - 1] == i - 1 + m - size {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            combo[i - 1] += 1;
            for j in i..size {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    out
}

/// Correlation tensor over the given subset dims for a (already reduced)
/// density matrix, in the `prod(d_k/2) Tr(...)` convention.
pub(crate) fn correlation_tensor(
    rho_s: &CMat,
    dims: &[usize],
    bases: &[&GeneratorBasis],
) -> Tensor {
    let m = dims.len();
    let shape: Vec<usize> = dims.iter().map(|&d| d * d - 1).collect();
    let total: usize = shape.iter().product();
    let prefactor: f64 = dims.iter().map(|&d| d as f64 / 2.0).product();
    let sparse: Vec<Vec<Vec<(usize, usize, C64)>>> = bases
        .iter()
        .map(|b| b.generators.iter().map(sparse_entries).collect())
        .collect();
    let st = strides(dims);
    let mut data = vec![0.0; total];
    let mut alpha = vec![0usize; m];
    for flat in 0..total {
        // decode generator multi-index
        let mut rem = flat;
        for k in (0..m).rev() {
            alpha[k] = rem % shape[k];
            rem /= shape[k];
        }
        // Tr(rho_s (lambda_{a1} x ... x lambda_{am})) over sparse entries
        let mut acc = C64::new(0.0, 0.0);
        let mut stack_idx = vec![0usize; m];
        'outer: loop {
            let mut row = 0usize;
            let mut col = 0usize;
            let mut val = C64::new(1.0, 0.0);
            for k in 0..m {
                let (r, c, v) = sparse[k][alpha[k]][stack_idx[k]];
                row += r * st[k];
                col += c * st[k];
                val *= v;
            }
            // Tr(rho M) = sum_{row,col} M[row,col] rho[col,row]
            acc += val * rho_s[(col, row)];
            // advance the odometer over sparse-entry choices
            let mut k = m;
            loop {
                if k == 0 {
                    break 'outer;
                }
                k -= 1;
                stack_idx[k] += 1;
                if stack_idx[k] < sparse[k][alpha[k]].len() {
                    break;
                }
                stack_idx[k] = 0;
                if k == 0 {
                    break 'outer;
                }
            }
        }
        data[flat] = prefactor * acc.re;
    }
    Tensor { shape, data }
}

/// Full Bloch decomposition of `rho` for the partition.
pub fn bloch_decompose(
    rho: &DensityMatrix,
    partition: &PartitionSpec,
) -> Result<BlochDecomposition> {
    if rho.dims != partition.site_dims {
        return Err(Error::DimensionMismatch(
            "partition site dims do not match state dims".into(),
        ));
    }
    let m = partition.num_subsets();
    let local_dims = partition.local_dims().to_vec();
    // bring sites into subset order once, then treat subsets as single qudits
    let flat = partition.flattened_sites();
    let grouped: CMat = if partition.is_identity_order() {
        rho.data.clone()
    } else {
        permute_mat(&rho.data, &rho.dims, &flat)
    };

    let bases: Vec<GeneratorBasis> = local_dims
        .iter()
        .map(|&d| GeneratorBasis::new(d))
        .collect::<Result<_>>()?;

    let mut coherence = Vec::with_capacity(m);
    let mut tensors = Vec::new();
    for combo in subset_combinations(m) {
        let (red, red_dims) = ptrace_sites(&grouped, &local_dims, &combo);
        let combo_bases: Vec<&GeneratorBasis> = combo.iter().map(|&k| &bases[k]).collect();
        let t = correlation_tensor(&red, &red_dims, &combo_bases);
        if combo.len() == 1 {
            coherence.push(t.data);
        } else {
            tensors.push((combo, t));
        }
    }
    Ok(BlochDecomposition {
        partition: partition.clone(),
        coherence_vectors: coherence,
        correlation_tensors: tensors,
    })
}

/// Rebuild the density matrix from a Bloch decomposition,
/// `rho = (1/D) sum_S t_S lambda_S` with `t_empty = 1`.
pub fn bloch_reconstruct(bd: &BlochDecomposition) -> Result<DensityMatrix> {
    let local_dims = bd.partition.local_dims().to_vec();
    let m = local_dims.len();
    let total: usize = local_dims.iter().product();
    let bases: Vec<GeneratorBasis> = local_dims
        .iter()
        .map(|&d| GeneratorBasis::new(d))
        .collect::<Result<_>>()?;
    let mut acc = CMat::identity(total, total);

    let embed = |combo: &[usize], alpha: &[usize]| -> CMat {
        let mut m_out = CMat::identity(1, 1);
        for k in 0..m {
            let factor = match combo.iter().position(|&c| c == k) {
                Some(pos) => bases[k].generators[alpha[pos]].clone(),
                None => CMat::identity(local_dims[k], local_dims[k]),
            };
            m_out = m_out.kronecker(&factor);
        }
        m_out
    };

    for (k, s) in bd.coherence_vectors.iter().enumerate() {
        for (a, &v) in s.iter().enumerate() {
            if v != 0.0 {
                acc += embed(&[k], &[a]) * C64::new(v, 0.0);
            }
        }
    }
    for (combo, t) in &bd.correlation_tensors {
        let shape = &t.shape;
        let mut alpha = vec![0usize; combo.len()];
        for (flat, &v) in t.data.iter().enumerate() {
            if v == 0.0 {
                continue;
            }
            let mut rem = flat;
            for k in (0..combo.len()).rev() {
                alpha[k] = rem % shape[k];
                rem /= shape[k];
            }
            acc += embed(combo, &alpha) * C64::new(v, 0.0);
        }
    }
    acc /= C64::new(total as f64, 0.0);

    // undo the site permutation implied by subset flattening
    let flat = bd.partition.flattened_sites();
    if bd.partition.is_identity_order() {
        return Ok(DensityMatrix::new_unchecked(
            bd.partition.site_dims.clone(),
            acc,
        ));
    }
    // acc lives over grouped site order `flat`; invert it
    let grouped_dims: Vec<usize> = flat.iter().map(|&s| bd.partition.site_dims[s]).collect();
    let mut inv = vec![0usize; flat.len()];
    for (new_pos, &old_site) in flat.iter().enumerate() {
        inv[old_site] = new_pos;
    }
    let back = permute_mat(&acc, &grouped_dims, &inv);
    Ok(DensityMatrix::new_unchecked(
        bd.partition.site_dims.clone(),
        back,
    ))
}

/// Whether a coherence vector (convention `s_i = (d/2) Tr(rho lambda_i)`)
/// can belong to a pure state: norm sqrt(d(d-1)/2) and
/// `sum_ij s_i s_j g_ijk = (d-2) s_k`, both within 1e-8.
pub fn coherence_is_pure(s: &[f64], d: usize, sc: &crate::su_basis::StructureConstants) -> bool {
    let n = d * d - 1;
    if s.len() != n || sc.len() != n {
        return false;
    }
    let norm = s.iter().map(|x| x * x).sum::<f64>().sqrt();
    let want = (d as f64 * (d as f64 - 1.0) / 2.0).sqrt();
    if (norm - want).abs() > 1e-8 {
        return false;
    }
    for k in 0..n {
        let mut acc = 0.0;
        for i in 0..n {
            if s[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                acc += s[i] * s[j] * sc.g(i, j, k);
            }
        }
        if (acc - (d as f64 - 2.0) * s[k]).abs() > 1e-8 {
            return false;
        }
    }
    true
}

/// Von Neumann entropy in bits; eigenvalues in [-1e-10, 0) are clipped.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    entropy_of_matrix(&rho.data)
}

pub(crate) fn entropy_of_matrix(m: &CMat) -> f64 {
    eigvalsh(m)
        .into_iter()
        .filter(|&e| e > 0.0)
        .map(|e| -e * e.log2())
        .sum()
}

/// Mutual information `S(A) + S(B) - S(AB)` in bits for a bipartition.
pub fn mutual_information(rho: &DensityMatrix, partition: &PartitionSpec) -> Result<f64> {
    if partition.num_subsets() != 2 {
        return Err(Error::InvalidPartition(
            "mutual information needs exactly 2 subsets".into(),
        ));
    }
    let ra = partial_trace(rho, partition, &[0])?;
    let rb = partial_trace(rho, partition, &[1])?;
    Ok(von_neumann_entropy(&ra) + von_neumann_entropy(&rb) - von_neumann_entropy(rho))
}

/// Schmidt decomposition of a pure state across a bipartition.
///
/// Coefficients are non-negative and descending; each left vector's first
/// component above 1e-12 is made real positive.
pub struct SchmidtDecomposition {
    /// sqrt of the reduced-state eigenvalues, descending.
    pub coefficients: Vec<f64>,
    pub left: Vec<CVec>,
    pub right: Vec<CVec>,
}

pub fn schmidt_decompose(
    psi: &PureStateVector,
    partition: &PartitionSpec,
) -> Result<SchmidtDecomposition> {
    if partition.num_subsets() != 2 {
        return Err(Error::InvalidPartition(
            "Schmidt decomposition needs exactly 2 subsets".into(),
        ));
    }
    if psi.dims != partition.site_dims {
        return Err(Error::DimensionMismatch(
            "state dims do not match partition".into(),
        ));
    }
    let flat = partition.flattened_sites();
    let grouped = if partition.is_identity_order() {
        psi.amplitudes.clone()
    } else {
        permute_vec(&psi.amplitudes, &psi.dims, &flat)
    };
    let d1 = partition.local_dims()[0];
    let d2 = partition.local_dims()[1];
    // coefficient matrix, subset 1 slowest -> rows
    let mut c = CMat::zeros(d1, d2);
    for i in 0..d1 {
        for j in 0..d2 {
            c[(i, j)] = grouped[i * d2 + j];
        }
    }
    // Schmidt through the Hermitian eigenproblem of C C^dagger
    let gram = &c * c.adjoint();
    let (vals, vecs) = eigh(&gram); // ascending
    let mut coefficients = Vec::new();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for i in (0..d1).rev() {
        let lam = vals[i].max(0.0);
        let sigma = lam.sqrt();
        if sigma < 1e-12 {
            continue;
        }
        let mut u: CVec = vecs.column(i).into_owned();
        // Schmidt partner so that psi = sum sigma_k (left_k x right_k):
        // the conjugate of the right singular vector C^dagger u / sigma
        let mut w: CVec = ((c.adjoint() * &u) / C64::new(sigma, 0.0)).map(|z| z.conj());
        // phase: first non-negligible component of u real positive
        if let Some(z) = u.iter().find(|z| z.norm() > 1e-12) {
            let phase = z / C64::new(z.norm(), 0.0);
            u *= phase.conj();
            w *= phase;
        }
        coefficients.push(sigma);
        left.push(u);
        right.push(w);
    }
    Ok(SchmidtDecomposition {
        coefficients,
        left,
        right,
    })
}

// ---------------------------------------------------------------------------
// density-matrix text format
// ---------------------------------------------------------------------------

/// Render in the shared text format: `dims d1 ... dm`, then one row per line,
/// entries `re+imj`.
pub fn to_text(rho: &DensityMatrix) -> String {
    let mut out = String::from("dims");
    for d in &rho.dims {
        out.push_str(&format!(" {d}"));
    }
    out.push('\n');
    let n = rho.total_dim();
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let z = rho.data[(i, j)];
            let sign = if z.im.is_sign_negative() { '-' } else { '+' };
            row.push(format!("{:.17e}{}{:.17e}j", z.re, sign, z.im.abs()));
        }
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn parse_complex(tok: &str) -> Result<C64> {
    let t = tok.trim();
    if !t.ends_with('j') {
        return Err(Error::Parse(format!(
            "complex entry `{t}` missing j suffix"
        )));
    }
    let body = &t[..t.len() - 1];
    // split at the sign of the imaginary part (not an exponent sign)
    let bytes = body.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        let ch = bytes[i] as char;
        if (ch == '+' || ch == '-') && !matches!(bytes[i - 1] as char, 'e' | 'E') {
            split = Some(i);
            break;
        }
    }
    let i =
        split.ok_or_else(|| Error::Parse(format!("complex entry `{t}` has no imaginary part")))?;
    let re: f64 = body[..i]
        .parse()
        .map_err(|_| Error::Parse(format!("bad real part in `{t}`")))?;
    let im: f64 = body[i..]
        .parse()
        .map_err(|_| Error::Parse(format!("bad imaginary part in `{t}`")))?;
    Ok(C64::new(re, im))
}

/// Parse the density-matrix text format. Rejects non-Hermitian or
/// non-unit-trace input beyond 1e-8; positivity is checked to the standard
/// density-matrix tolerance.
pub fn from_text(text: &str) -> Result<DensityMatrix> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty input".into()))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("dims") {
        return Err(Error::Parse("first line must start with `dims`".into()));
    }
    let dims: Vec<usize> = toks
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad dim `{t}`")))
        })
        .collect::<Result<_>>()?;
    if dims.is_empty() || dims.iter().any(|&d| d < 2) {
        return Err(Error::Parse("dims must list entries >= 2".into()));
    }
    let n: usize = dims.iter().product();
    let mut data = CMat::zeros(n, n);
    for i in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("expected {n} matrix rows, got {i}")))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != n {
            return Err(Error::Parse(format!(
                "row {i} has {} entries, expected {n}",
                toks.len()
            )));
        }
        for (j, t) in toks.iter().enumerate() {
            data[(i, j)] = parse_complex(t)?;
        }
    }
    let herm = hermiticity_defect(&data);
    if herm > 1e-8 {
        return Err(Error::NotHermitian(herm));
    }
    let tr: C64 = data.trace();
    if (tr.re - 1.0).abs() > 1e-8 || tr.im.abs() > 1e-8 {
        return Err(Error::InvalidTrace((tr.re - 1.0).abs().max(tr.im.abs())));
    }
    let min_ev = eigvalsh(&data)[0];
    if min_ev < -POS_TOL {
        return Err(Error::NotPositive(min_ev));
    }
    Ok(DensityMatrix { dims, data })
}

//! Entanglement quantifiers: the geometric measure `E = ||T|| - ||T||_sep`
//! for arbitrary partitions, two-qubit concurrence and entanglement of
//! formation.

use crate::error::{Error, Result};
use crate::linalg::{eigvalsh, sqrtm_psd};
use crate::qstate::{DensityMatrix, PartitionSpec, PureStateVector};
use crate::{CMat, CVec, C64};

/// Norm of the top-order correlation tensor attained by fully product
/// states: `prod_k sqrt(d_k (d_k - 1) / 2)`.
pub fn sep_norm(partition: &PartitionSpec) -> f64 {
    partition
        .local_dims()
        .iter()
        .map(|&d| (d as f64 * (d as f64 - 1.0) / 2.0).sqrt())
        .product()
}

/// Precomputed machinery for evaluating the geometric measure of one fixed
/// partition on many pure states.
///
/// The squared norm of the top-order correlation tensor follows from the
/// purities of all subset marginals by inclusion-exclusion:
/// `prod_k (2/d_k) ||T||^2 = sum_S (-1)^(m-|S|) prod_{k in S} d_k Tr(rho_S^2)`
/// with the empty set contributing `(-1)^m`. For a pure global state
/// `Tr(rho_S^2) = Tr(rho_{S^c}^2)`, so only marginals over at most half the
/// subsets are ever formed.
pub struct EntanglementEvaluator {
    num_subsets: usize,
    /// marginals evaluated directly: reshape maps of the state vector
    combos: Vec<ComboMap>,
    /// for every nonempty subset mask: (index into combos, signed weight)
    terms: Vec<(usize, f64)>,
    sep: f64,
    /// prod_k (d_k / 2), converting the Mobius sum to ||T||^2
    conv: f64,
    total_dim: usize,
}

struct ComboMap {
    rows: usize,
    cols: usize,
    /// flat state index -> (row, col) of the reshaped coefficient matrix
    index: Vec<(usize, usize)>,
}

impl EntanglementEvaluator {
    pub fn new(partition: &PartitionSpec) -> Self {
        let m = partition.num_subsets();
        let local = partition.local_dims().to_vec();
        let site_dims = partition.site_dims().to_vec();
        let total_dim: usize = site_dims.iter().product();

        let dim_of_mask = |mask: usize| -> usize {
            (0..m)
                .filter(|k| mask >> k & 1 == 1)
                .map(|k| local[k])
                .product()
        };

        let full = (1usize << m) - 1;
        let mut combos: Vec<ComboMap> = Vec::new();
        let mut direct: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
        let mut terms = Vec::with_capacity(full);
        for mask in 1..=full {
            let popcount = (mask as u32).count_ones() as usize;
            let comp = full & !mask;
            // purity source: the smaller side of the pure-state bipartition
            let use_mask = if 2 * popcount < m || (2 * popcount == m && mask <= comp) {
                mask
            } else {
                comp
            };
            let combo_idx = *direct.entry(use_mask).or_insert_with(|| {
                let rows = if use_mask == 0 {
                    1
                } else {
                    dim_of_mask(use_mask)
                };
                let cols = total_dim / rows;
                let mut index = Vec::with_capacity(total_dim);
                let mut digits = vec![0usize; site_dims.len()];
                for idx in 0..total_dim {
                    let mut rem = idx;
                    for s in (0..site_dims.len()).rev() {
                        digits[s] = rem % site_dims[s];
                        rem /= site_dims[s];
                    }
                    let mut row = 0usize;
                    let mut col = 0usize;
                    for (k, subset) in partition.subsets().iter().enumerate() {
                        for &s in subset {
                            if use_mask >> k & 1 == 1 {
                                row = row * site_dims[s] + digits[s];
                            } else {
                                col = col * site_dims[s] + digits[s];
                            }
                        }
                    }
                    index.push((row, col));
                }
                combos.push(ComboMap { rows, cols, index });
                combos.len() - 1
            });
            let sign = if (m - popcount) % 2 == 0 { 1.0 } else { -1.0 };
            let weight: f64 = (0..m)
                .filter(|k| mask >> k & 1 == 1)
                .map(|k| local[k] as f64)
                .product();
            terms.push((combo_idx, sign * weight));
        }
        let conv: f64 = local.iter().map(|&d| d as f64 / 2.0).product();
        EntanglementEvaluator {
            num_subsets: m,
            combos,
            terms,
            sep: sep_norm(partition),
            conv,
            total_dim,
        }
    }

    /// Squared norm of the top-order correlation tensor of `|psi><psi|`.
    pub fn top_norm_sq(&self, psi: &CVec) -> f64 {
        let purities: Vec<f64> = self
            .combos
            .iter()
            .map(|c| {
                let mut mat = CMat::zeros(c.rows, c.cols);
                for (idx, &(r, cc)) in c.index.iter().enumerate() {
                    mat[(r, cc)] = psi[idx];
                }
                let gram = &mat * mat.adjoint();
                gram.iter().map(|z| z.norm_sqr()).sum::<f64>()
            })
            .collect();
        // empty-set term of the inclusion-exclusion sum
        let mut acc = if self.num_subsets % 2 == 0 { 1.0 } else { -1.0 };
        for &(src, signed_weight) in &self.terms {
            acc += signed_weight * purities[src];
        }
        acc * self.conv
    }

    /// `E = ||T_top|| - ||T||_sep` for a pure state.
    pub fn entanglement(&self, psi: &CVec) -> f64 {
        self.top_norm_sq(psi).max(0.0).sqrt() - self.sep
    }

    pub fn sep_norm(&self) -> f64 {
        self.sep
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }
}

/// Geometric entanglement `E = ||T|| - ||T||_sep` of a pure state for the
/// given partition. May be negative for some partitions of non-generic
/// states; the raw value is returned.
pub fn geometric_entanglement(psi: &PureStateVector, partition: &PartitionSpec) -> Result<f64> {
    if psi.dims != partition.site_dims() {
        return Err(Error::DimensionMismatch(
            "state dims do not match partition sites".into(),
        ));
    }
    if partition.num_subsets() < 2 {
        return Err(Error::InvalidPartition("need at least 2 subsets".into()));
    }
    Ok(EntanglementEvaluator::new(partition).entanglement(&psi.amplitudes))
}

/// Wootters concurrence of a two-qubit density matrix.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dims != [2, 2] {
        return Err(Error::DimensionMismatch(format!(
            "concurrence needs dims (2,2), got {:?}",
            rho.dims
        )));
    }
    // rho_tilde = (sy x sy) rho* (sy x sy)
    let mut yy = CMat::zeros(4, 4);
    yy[(0, 3)] = C64::new(-1.0, 0.0);
    yy[(1, 2)] = C64::new(1.0, 0.0);
    yy[(2, 1)] = C64::new(1.0, 0.0);
    yy[(3, 0)] = C64::new(-1.0, 0.0);
    let conj = rho.data.map(|z| z.conj());
    let tilde = &yy * conj * &yy;
    // spectrum of rho rho_tilde through the Hermitian form sqrt(rho) rho_tilde sqrt(rho)
    let s = sqrtm_psd(&rho.data);
    let m = &s * tilde * &s;
    let mut lam: Vec<f64> = eigvalsh(&m)
        .into_iter()
        .map(|e| e.max(0.0).sqrt())
        .collect();
    lam.reverse();
    Ok((lam[0] - lam[1] - lam[2] - lam[3]).max(0.0))
}

/// Entanglement of formation in bits from a concurrence value,
/// `h((1 + sqrt(1 - C^2)) / 2)`.
pub fn eof_from_concurrence(c: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::OutOfRange(format!("concurrence {c} outside [0, 1]")));
    }
    let x = (1.0 + (1.0 - c * c).max(0.0).sqrt()) / 2.0;
    Ok(binary_entropy(x))
}

/// h(x) = -x log2 x - (1-x) log2(1-x).
pub fn binary_entropy(x: f64) -> f64 {
    let mut h = 0.0;
    if x > 0.0 && x < 1.0 {
        h -= x * x.log2();
        h -= (1.0 - x) * (1.0 - x).log2();
    }
    h
}

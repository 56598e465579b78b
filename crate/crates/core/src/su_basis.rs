//! Orthogonal Hermitian generator bases of SU(d), their structure constants
//! and the star product used to test coherence vectors for purity.

use crate::error::{Error, Result};
use crate::{CMat, C64};

/// Ordering used for the generators.
///
/// Generators come in blocks, one per basis level `k = 2..=d`:
/// `u_{1k}, v_{1k}, u_{2k}, v_{2k}, ..., u_{k-1,k}, v_{k-1,k}, w_{k-1}`.
/// This interleaved order places the l-th diagonal generator `w_l` at
/// 1-based index `(l+1)^2 - 1`, the indexing the discord formula relies on
/// (any fixed permutation works, but it must be consistent everywhere).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderingTag {
    /// u/v pairs interleaved with the diagonal generator closing each block.
    InterleavedDiagonal,
}

/// The d^2 - 1 traceless Hermitian generators of SU(d) with
/// `Tr(lambda_i lambda_j) = 2 delta_ij`.
#[derive(Debug, Clone)]
pub struct GeneratorBasis {
    pub dim: usize,
    pub generators: Vec<CMat>,
    pub ordering_tag: OrderingTag,
}

impl GeneratorBasis {
    /// Build the generator family `{u_jk, v_jk, w_l}` for SU(d).
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
        let mut gens = Vec::with_capacity(d * d - 1);
        for k in 1..d {
            // off-diagonal pairs u_{jk}, v_{jk} for j < k (0-based indices here)
            for j in 0..k {
                let mut u = CMat::zeros(d, d);
                u[(j, k)] = C64::new(1.0, 0.0);
                u[(k, j)] = C64::new(1.0, 0.0);
                let mut v = CMat::zeros(d, d);
                v[(j, k)] = C64::new(0.0, -1.0);
                v[(k, j)] = C64::new(0.0, 1.0);
                gens.push(u);
                gens.push(v);
            }
            // diagonal generator w_k (paper's w_l with l = k)
            let l = k;
            let scale = (2.0 / (l as f64 * (l + 1) as f64)).sqrt();
            let mut w = CMat::zeros(d, d);
            for j in 0..l {
                w[(j, j)] = C64::new(scale, 0.0);
            }
            w[(l, l)] = C64::new(-(l as f64) * scale, 0.0);
            gens.push(w);
        }
        debug_assert_eq!(gens.len(), d * d - 1);
        Ok(GeneratorBasis {
            dim: d,
            generators: gens,
            ordering_tag: OrderingTag::InterleavedDiagonal,
        })
    }

    /// Number of generators, d^2 - 1.
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// 0-based index of the diagonal generator `w_l`, `1 <= l <= d-1`.
    /// Equals `(l+1)^2 - 2`.
    pub fn diagonal_index(&self, l: usize) -> usize {
        (l + 1) * (l + 1) - 2
    }
}

/// Completely antisymmetric `f` and completely symmetric `g` tensors of
/// su(d), stored dense: `f_{ikl} = Tr([l_i, l_k] l_l) / 4i`,
/// `g_{ikl} = Tr({l_i, l_k} l_l) / 4`.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    pub dim: usize,
    n: usize,
    f: Vec<f64>,
    g: Vec<f64>,
}

impl StructureConstants {
    pub fn from_basis(basis: &GeneratorBasis) -> Self {
        let n = basis.len();
        let d = basis.dim;
        let mut f = vec![0.0; n * n * n];
        let mut g = vec![0.0; n * n * n];
        for i in 0..n {
            for k in 0..n {
                let prod_ik = &basis.generators[i] * &basis.generators[k];
                let prod_ki = &basis.generators[k] * &basis.generators[i];
                let comm = &prod_ik - &prod_ki;
                let anti = &prod_ik + &prod_ki;
                for l in 0..n {
                    let tf: C64 = (&comm * &basis.generators[l]).trace();
                    let tg: C64 = (&anti * &basis.generators[l]).trace();
                    // Tr([,]l) is purely imaginary, Tr({,}l) purely real
                    f[(i * n + k) * n + l] = tf.im / 4.0;
                    g[(i * n + k) * n + l] = tg.re / 4.0;
                }
            }
        }
        StructureConstants { dim: d, n, f, g }
    }

    #[inline]
    pub fn f(&self, i: usize, k: usize, l: usize) -> f64 {
        self.f[(i * self.n + k) * self.n + l]
    }

    #[inline]
    pub fn g(&self, i: usize, k: usize, l: usize) -> f64 {
        self.g[(i * self.n + k) * self.n + l]
    }

    /// Number of generator indices, d^2 - 1.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

/// Star product of coherence-space vectors,
/// `(a * b)_k = sqrt(d(d-1)/2) / (d-2) * sum_ij g_ijk a_i b_j`.
///
/// Unit-norm coherence vectors of pure states are fixed points of `a * a`.
/// Undefined at d = 2 where the prefactor diverges.
pub fn star_product(a: &[f64], b: &[f64], sc: &StructureConstants) -> Result<Vec<f64>> {
    let d = sc.dim;
    if d < 3 {
        return Err(Error::UnsupportedDimension(
            d,
            "star product needs d >= 3 (prefactor has 1/(d-2))",
        ));
    }
    let n = sc.len();
    if a.len() != n || b.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "star product expects vectors of length {n}, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    let pref = (d as f64 * (d as f64 - 1.0) / 2.0).sqrt() / (d as f64 - 2.0);
    let mut out = vec![0.0; n];
    for k in 0..n {
        let mut acc = 0.0;
        for i in 0..n {
            if a[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                let g = sc.g(i, j, k);
                if g != 0.0 {
                    acc += g * a[i] * b[j];
                }
            }
        }
        out[k] = pref * acc;
    }
    Ok(out)
}

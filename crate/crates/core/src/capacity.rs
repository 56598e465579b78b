//! Entanglement-generation rates under canonical nonlocal Hamiltonians:
//! the analytic two-qubit optimum, numerical two-qutrit and three-qubit
//! maximizations, and a matrix-exponential finite-difference oracle.
//!
//! hbar = 1 throughout.

use crate::error::{Error, Result};
use crate::linalg::expm_i_hermitian;
use crate::measures::EntanglementEvaluator;
use crate::optim::{multi_start_maximize, param_dim, params_to_state, NelderMead};
use crate::qstate::{
    bloch_decompose, correlation_tensor, from_pure, ptrace_sites, schmidt_decompose,
    BlochDecomposition, PartitionSpec, PureStateVector, Tensor,
};
use crate::su_basis::{GeneratorBasis, StructureConstants};
use crate::{CMat, CVec, C64};

/// Which canonical system a coupling acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemKind {
    TwoQubit,
    TwoQutrit,
    ThreeQubit,
}

/// Canonical-form interaction strengths.
#[derive(Debug, Clone)]
pub enum CouplingSpec {
    /// `sum_i mu_i sigma_i x sigma_i` with `mu1 >= mu2 >= |mu3|`.
    TwoQubit { mu: [f64; 3] },
    /// `sum_p mu_p lambda_p x lambda_p` with descending strengths.
    TwoQutrit { mu: [f64; 8] },
    /// Pairwise couplings, each `mu1 >= mu2 >= mu3`.
    ThreeQubit {
        mu_ab: [f64; 3],
        mu_bc: [f64; 3],
        mu_ac: [f64; 3],
    },
}

impl CouplingSpec {
    pub fn validate(&self) -> Result<()> {
        let check_desc = |mu: &[f64], what: &str| -> Result<()> {
            for w in mu.windows(2) {
                if w[0] < w[1] - 1e-12 {
                    return Err(Error::OutOfRange(format!(
                        "{what} strengths must be non-increasing, got {mu:?}"
                    )));
                }
            }
            Ok(())
        };
        match self {
            CouplingSpec::TwoQubit { mu } => {
                if mu[0] < mu[1] - 1e-12 || mu[1] < mu[2].abs() - 1e-12 {
                    return Err(Error::OutOfRange(format!(
                        "two-qubit coupling needs mu1 >= mu2 >= |mu3|, got {mu:?}"
                    )));
                }
                Ok(())
            }
            CouplingSpec::TwoQutrit { mu } => check_desc(mu, "two-qutrit"),
            CouplingSpec::ThreeQubit {
                mu_ab,
                mu_bc,
                mu_ac,
            } => {
                check_desc(mu_ab, "AB")?;
                check_desc(mu_bc, "BC")?;
                check_desc(mu_ac, "AC")
            }
        }
    }

    pub fn kind(&self) -> SystemKind {
        match self {
            CouplingSpec::TwoQubit { .. } => SystemKind::TwoQubit,
            CouplingSpec::TwoQutrit { .. } => SystemKind::TwoQutrit,
            CouplingSpec::ThreeQubit { .. } => SystemKind::ThreeQubit,
        }
    }

    /// Uniform strengths for a system kind.
    pub fn isotropic(kind: SystemKind, mu: f64) -> CouplingSpec {
        match kind {
            SystemKind::TwoQubit => CouplingSpec::TwoQubit { mu: [mu; 3] },
            SystemKind::TwoQutrit => CouplingSpec::TwoQutrit { mu: [mu; 8] },
            SystemKind::ThreeQubit => CouplingSpec::ThreeQubit {
                mu_ab: [mu; 3],
                mu_bc: [mu; 3],
                mu_ac: [mu; 3],
            },
        }
    }

    pub fn site_dims(&self) -> Vec<usize> {
        match self.kind() {
            SystemKind::TwoQubit => vec![2, 2],
            SystemKind::TwoQutrit => vec![3, 3],
            SystemKind::ThreeQubit => vec![2, 2, 2],
        }
    }

    /// The interaction Hamiltonian as a dense matrix.
    pub fn hamiltonian(&self) -> CMat {
        match self {
            CouplingSpec::TwoQubit { mu } => {
                let b = GeneratorBasis::new(2).expect("d=2");
                let mut h = CMat::zeros(4, 4);
                for i in 0..3 {
                    h += b.generators[i].kronecker(&b.generators[i]) * C64::new(mu[i], 0.0);
                }
                h
            }
            CouplingSpec::TwoQutrit { mu } => {
                let b = GeneratorBasis::new(3).expect("d=3");
                let mut h = CMat::zeros(9, 9);
                for p in 0..8 {
                    h += b.generators[p].kronecker(&b.generators[p]) * C64::new(mu[p], 0.0);
                }
                h
            }
            CouplingSpec::ThreeQubit {
                mu_ab,
                mu_bc,
                mu_ac,
            } => {
                let b = GeneratorBasis::new(2).expect("d=2");
                let id = CMat::identity(2, 2);
                let mut h = CMat::zeros(8, 8);
                for s in 0..3 {
                    let sig = &b.generators[s];
                    h += sig.kronecker(sig).kronecker(&id) * C64::new(mu_ab[s], 0.0);
                    h += id.kronecker(sig).kronecker(sig) * C64::new(mu_bc[s], 0.0);
                    h += sig.kronecker(&id).kronecker(sig) * C64::new(mu_ac[s], 0.0);
                }
                h
            }
        }
    }
}

/// Multi-start maximization outcome.
#[derive(Debug, Clone)]
pub struct OptimizationReport {
    pub best_value: f64,
    pub best_state: PureStateVector,
    pub restarts: usize,
    pub per_restart_values: Vec<f64>,
    pub seed: u64,
    pub iterations: usize,
    pub converged: bool,
    /// geometric entanglement of the best state for the natural partition
    pub best_entanglement: f64,
    /// Schmidt coefficients of the best state (bipartite kinds only)
    pub schmidt_coefficients: Option<Vec<f64>>,
    /// three-tangle of the best state (three-qubit kind only)
    pub three_tangle: Option<f64>,
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn tensor_as_mat3(t: &Tensor) -> [[f64; 3]; 3] {
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = t.at(&[i, j]);
        }
    }
    m
}

/// Two-qubit rate,
/// `Gamma = (2/||T||) sum_n [(r x T_col_n)_n + (s x T_row_n)_n] mu_n`.
pub fn rate_two_qubit(bd: &BlochDecomposition, mu: &[f64; 3]) -> Result<f64> {
    if bd.partition.local_dims() != [2, 2] {
        return Err(Error::DimensionMismatch(
            "rate_two_qubit needs local dims (2,2)".into(),
        ));
    }
    let r: [f64; 3] = bd.coherence_vectors[0][..].try_into().unwrap();
    let s: [f64; 3] = bd.coherence_vectors[1][..].try_into().unwrap();
    let t = tensor_as_mat3(bd.tensor(&[0, 1]).ok_or(Error::SingularTensor)?);
    gamma_two_qubit(&r, &s, &t, mu)
}

fn gamma_two_qubit(r: &[f64; 3], s: &[f64; 3], t: &[[f64; 3]; 3], mu: &[f64; 3]) -> Result<f64> {
    let norm_sq: f64 = t.iter().flatten().map(|x| x * x).sum();
    let norm = norm_sq.sqrt();
    if norm < 1e-14 {
        return Err(Error::SingularTensor);
    }
    let mut acc = 0.0;
    for n in 0..3 {
        let col = [t[0][n], t[1][n], t[2][n]];
        let row = [t[n][0], t[n][1], t[n][2]];
        acc += (cross(r, &col)[n] + cross(s, &row)[n]) * mu[n];
    }
    Ok(2.0 / norm * acc)
}

/// The one-parameter optimal-rate family `sqrt(p)|01> + i sqrt(1-p)|10>`.
pub fn psi_e(p: f64) -> Result<PureStateVector> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange(format!("p = {p} outside [0, 1]")));
    }
    let mut amp = CVec::zeros(4);
    amp[1] = C64::new(p.sqrt(), 0.0);
    amp[2] = C64::new(0.0, (1.0 - p).sqrt());
    PureStateVector::new(vec![2, 2], amp)
}

/// State-dependent rate factor for the psi_E family,
/// `f(p) = 8 (1-2p) sqrt(p(1-p)) / sqrt(1 + 8p(1-p))`.
pub fn rate_factor(p: f64) -> f64 {
    8.0 * (1.0 - 2.0 * p) * (p * (1.0 - p)).sqrt() / (1.0 + 8.0 * p * (1.0 - p)).sqrt()
}

/// Von Neumann-units rate factor `f(p) (dE_VN/dp) / (dE/dp)`.
pub fn rate_factor_vn(p: f64) -> f64 {
    // dE_VN/dp = log2((1-p)/p) for the binary-entropy measure,
    // dE/dp = 4(1-2p)/sqrt(1+8p(1-p)) for E = ||T|| - 1 on psi_E
    let de_vn = ((1.0 - p) / p).log2();
    let de = 4.0 * (1.0 - 2.0 * p) / (1.0 + 8.0 * p * (1.0 - p)).sqrt();
    rate_factor(p) * de_vn / de
}

/// Golden-section maximization of a unimodal scalar function.
fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Maximize the von Neumann-units rate factor over p in (0, 1/2).
/// Returns `(p0, Gamma_max per unit mu1 + mu2)`.
pub fn find_p0() -> (f64, f64) {
    golden_max(rate_factor_vn, 1e-9, 0.5 - 1e-9, 1e-13)
}

/// Two-qutrit rate, full structure-constant sum:
/// `Gamma = -3 (1/||T||) sum_{k,p,l} mu_p f_klp (tau_kp L^A_l + tau_pk L^B_l)`
/// with bare generator averages `L`.
pub fn rate_qutrit(bd: &BlochDecomposition, mu: &[f64; 8], sc: &StructureConstants) -> Result<f64> {
    if bd.partition.local_dims() != [3, 3] || sc.dim != 3 {
        return Err(Error::DimensionMismatch(
            "rate_qutrit needs local dims (3,3)".into(),
        ));
    }
    // stored coherence vectors carry the (d/2) prefactor; the formula uses bare averages
    let lam_a: Vec<f64> = bd.coherence_vectors[0]
        .iter()
        .map(|x| x * 2.0 / 3.0)
        .collect();
    let lam_b: Vec<f64> = bd.coherence_vectors[1]
        .iter()
        .map(|x| x * 2.0 / 3.0)
        .collect();
    let tau = bd.tensor(&[0, 1]).ok_or(Error::SingularTensor)?;
    gamma_qutrit(&lam_a, &lam_b, tau, mu, sc)
}

fn gamma_qutrit(
    lam_a: &[f64],
    lam_b: &[f64],
    tau: &Tensor,
    mu: &[f64; 8],
    sc: &StructureConstants,
) -> Result<f64> {
    let norm = tau.norm();
    if norm < 1e-14 {
        return Err(Error::SingularTensor);
    }
    let mut acc = 0.0;
    for k in 0..8 {
        for p in 0..8 {
            let tkp = tau.at(&[k, p]);
            let tpk = tau.at(&[p, k]);
            if tkp == 0.0 && tpk == 0.0 {
                continue;
            }
            for l in 0..8 {
                let f = sc.f(k, l, p);
                if f != 0.0 {
                    acc += mu[p] * f * (tkp * lam_a[l] + tpk * lam_b[l]);
                }
            }
        }
    }
    Ok(-3.0 / norm * acc)
}

/// Historical triplet-expansion variant of the two-qutrit rate, kept as a
/// redundant cross-check path; disagreements with [`rate_qutrit`] are
/// surfaced by [`qutrit_rate_discrepancy`], and the structure-constant sum
/// is authoritative.
pub fn rate_qutrit_triplets(bd: &BlochDecomposition, mu: &[f64; 8]) -> Result<f64> {
    const TRIPLETS: [[usize; 3]; 9] = [
        [1, 4, 7],
        [2, 1, 6],
        [3, 1, 5],
        [3, 2, 4],
        [2, 5, 7],
        [3, 7, 6],
        [5, 4, 6],
        [3, 6, 8],
        [2, 5, 8],
    ];
    let weights: [f64; 9] = {
        let h = 3f64.sqrt() / 2.0;
        [1.0, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, h, h]
    };
    if bd.partition.local_dims() != [3, 3] {
        return Err(Error::DimensionMismatch("needs local dims (3,3)".into()));
    }
    let lam_a: Vec<f64> = bd.coherence_vectors[0]
        .iter()
        .map(|x| x * 2.0 / 3.0)
        .collect();
    let lam_b: Vec<f64> = bd.coherence_vectors[1]
        .iter()
        .map(|x| x * 2.0 / 3.0)
        .collect();
    let tau = bd.tensor(&[0, 1]).ok_or(Error::SingularTensor)?;
    let norm = tau.norm();
    if norm < 1e-14 {
        return Err(Error::SingularTensor);
    }
    let mut acc = 0.0;
    for (t, w) in TRIPLETS.iter().zip(weights) {
        let idx = [t[0] - 1, t[1] - 1, t[2] - 1];
        for (pos, &p) in idx.iter().enumerate() {
            let tcol = [
                tau.at(&[idx[0], p]),
                tau.at(&[idx[1], p]),
                tau.at(&[idx[2], p]),
            ];
            let trow = [
                tau.at(&[p, idx[0]]),
                tau.at(&[p, idx[1]]),
                tau.at(&[p, idx[2]]),
            ];
            let la = [lam_a[idx[0]], lam_a[idx[1]], lam_a[idx[2]]];
            let lb = [lam_b[idx[0]], lam_b[idx[1]], lam_b[idx[2]]];
            acc += w * mu[p] * (cross(&tcol, &la)[pos] + cross(&trow, &lb)[pos]);
        }
    }
    Ok(-3.0 / norm * acc)
}

/// |structure-constant sum - triplet expansion| on a state.
pub fn qutrit_rate_discrepancy(
    bd: &BlochDecomposition,
    mu: &[f64; 8],
    sc: &StructureConstants,
) -> Result<f64> {
    Ok((rate_qutrit(bd, mu, sc)? - rate_qutrit_triplets(bd, mu)?).abs())
}

/// Three-qubit rate: the six-block cross-product sum over the pairwise
/// couplings.
pub fn rate_three_qubit(bd: &BlochDecomposition, coupling: &CouplingSpec) -> Result<f64> {
    let CouplingSpec::ThreeQubit {
        mu_ab,
        mu_bc,
        mu_ac,
    } = coupling
    else {
        return Err(Error::DimensionMismatch(
            "coupling is not three-qubit".into(),
        ));
    };
    if bd.partition.local_dims() != [2, 2, 2] {
        return Err(Error::DimensionMismatch(
            "rate_three_qubit needs local dims (2,2,2)".into(),
        ));
    }
    let t_ab = tensor_as_mat3(bd.tensor(&[0, 1]).ok_or(Error::SingularTensor)?);
    let t_ac = tensor_as_mat3(bd.tensor(&[0, 2]).ok_or(Error::SingularTensor)?);
    let t_bc = tensor_as_mat3(bd.tensor(&[1, 2]).ok_or(Error::SingularTensor)?);
    let tau = bd.tensor(&[0, 1, 2]).ok_or(Error::SingularTensor)?;
    gamma_three_qubit(&t_ab, &t_ac, &t_bc, tau, mu_ab, mu_bc, mu_ac)
}

#[allow(clippy::too_many_arguments)]
fn gamma_three_qubit(
    t_ab: &[[f64; 3]; 3],
    t_ac: &[[f64; 3]; 3],
    t_bc: &[[f64; 3]; 3],
    tau: &Tensor,
    mu_ab: &[f64; 3],
    mu_bc: &[f64; 3],
    mu_ac: &[f64; 3],
) -> Result<f64> {
    let norm = tau.norm();
    if norm < 1e-14 {
        return Err(Error::SingularTensor);
    }
    let col = |m: &[[f64; 3]; 3], k: usize| [m[0][k], m[1][k], m[2][k]];
    let row = |m: &[[f64; 3]; 3], k: usize| m[k];
    let mut acc = 0.0;
    for s in 0..3 {
        for k in 0..3 {
            // mu^AB block: (tau_{:sk} x tAC_{:k})_s + (tau_{s:k} x tBC_{:k})_s
            let v1 = [tau.at(&[0, s, k]), tau.at(&[1, s, k]), tau.at(&[2, s, k])];
            let v2 = [tau.at(&[s, 0, k]), tau.at(&[s, 1, k]), tau.at(&[s, 2, k])];
            acc += (cross(&v1, &col(t_ac, k))[s] + cross(&v2, &col(t_bc, k))[s]) * mu_ab[s];
            // mu^BC block: (tau_{i:s} x tAB_{i:})_s + (tau_{is:} x tAC_{i:})_s, i = k
            let w1 = [tau.at(&[k, 0, s]), tau.at(&[k, 1, s]), tau.at(&[k, 2, s])];
            let w2 = [tau.at(&[k, s, 0]), tau.at(&[k, s, 1]), tau.at(&[k, s, 2])];
            acc += (cross(&w1, &row(t_ab, k))[s] + cross(&w2, &row(t_ac, k))[s]) * mu_bc[s];
            // mu^AC block: (tau_{:js} x tAB_{:j})_s + (tau_{sj:} x tBC_{j:})_s, j = k
            let u1 = [tau.at(&[0, k, s]), tau.at(&[1, k, s]), tau.at(&[2, k, s])];
            let u2 = [tau.at(&[s, k, 0]), tau.at(&[s, k, 1]), tau.at(&[s, k, 2])];
            acc += (cross(&u1, &col(t_ab, k))[s] + cross(&u2, &row(t_bc, k))[s]) * mu_ac[s];
        }
    }
    Ok(-2.0 / norm * acc)
}

/// Central-difference rate oracle,
/// `[E(e^{-iH dt} psi) - E(e^{+iH dt} psi)] / (2 dt)`.
pub fn rate_finite_difference(
    psi: &PureStateVector,
    h: &CMat,
    partition: &PartitionSpec,
    dt: f64,
) -> Result<f64> {
    if dt <= 0.0 {
        return Err(Error::OutOfRange("dt must be positive".into()));
    }
    let ev = EntanglementEvaluator::new(partition);
    let fwd = expm_i_hermitian(h, dt) * &psi.amplitudes;
    let bwd = expm_i_hermitian(h, -dt) * &psi.amplitudes;
    Ok((ev.entanglement(&fwd) - ev.entanglement(&bwd)) / (2.0 * dt))
}

/// Polynomial three-tangle of a three-qubit pure state (Cayley
/// hyperdeterminant form); 1 on GHZ, 0 on W and product states.
pub fn three_tangle(psi: &PureStateVector) -> Result<f64> {
    if psi.dims != [2, 2, 2] {
        return Err(Error::DimensionMismatch(
            "three_tangle needs dims (2,2,2)".into(),
        ));
    }
    let c = |i: usize, j: usize, k: usize| psi.amplitudes[(i << 2) | (j << 1) | k];
    let d1 = c(0, 0, 0).powi(2) * c(1, 1, 1).powi(2)
        + c(0, 0, 1).powi(2) * c(1, 1, 0).powi(2)
        + c(0, 1, 0).powi(2) * c(1, 0, 1).powi(2)
        + c(1, 0, 0).powi(2) * c(0, 1, 1).powi(2);
    let d2 = c(0, 0, 0) * c(1, 1, 1) * c(0, 1, 1) * c(1, 0, 0)
        + c(0, 0, 0) * c(1, 1, 1) * c(1, 0, 1) * c(0, 1, 0)
        + c(0, 0, 0) * c(1, 1, 1) * c(1, 1, 0) * c(0, 0, 1)
        + c(0, 1, 1) * c(1, 0, 0) * c(1, 0, 1) * c(0, 1, 0)
        + c(0, 1, 1) * c(1, 0, 0) * c(1, 1, 0) * c(0, 0, 1)
        + c(1, 0, 1) * c(0, 1, 0) * c(1, 1, 0) * c(0, 0, 1);
    let d3 = c(0, 0, 0) * c(1, 1, 0) * c(1, 0, 1) * c(0, 1, 1)
        + c(1, 1, 1) * c(0, 0, 1) * c(0, 1, 0) * c(1, 0, 0);
    Ok(4.0 * (d1 - d2 * 2.0 + d3 * 4.0).norm())
}

/// Objective machinery shared by the optimizer: everything expensive is
/// precomputed once per run.
struct RateObjective {
    coupling: CouplingSpec,
    bases: Vec<GeneratorBasis>,
    sc3: Option<StructureConstants>,
    site_dims: Vec<usize>,
}

impl RateObjective {
    fn new(coupling: CouplingSpec) -> Result<Self> {
        let site_dims = coupling.site_dims();
        let bases = site_dims
            .iter()
            .map(|&d| GeneratorBasis::new(d))
            .collect::<Result<Vec<_>>>()?;
        let sc3 = match coupling.kind() {
            SystemKind::TwoQutrit => Some(StructureConstants::from_basis(&bases[0])),
            _ => None,
        };
        Ok(RateObjective {
            coupling,
            bases,
            sc3,
            site_dims,
        })
    }

    fn rate_of_amplitudes(&self, amp: &CVec) -> Result<f64> {
        let total = amp.len();
        let mut rho = CMat::zeros(total, total);
        for i in 0..total {
            for j in 0..total {
                rho[(i, j)] = amp[i] * amp[j].conj();
            }
        }
        match &self.coupling {
            CouplingSpec::TwoQubit { mu } => {
                let (ra, _) = ptrace_sites(&rho, &self.site_dims, &[0]);
                let (rb, _) = ptrace_sites(&rho, &self.site_dims, &[1]);
                let r = coh3(&ra, &self.bases[0]);
                let s = coh3(&rb, &self.bases[1]);
                let t =
                    correlation_tensor(&rho, &self.site_dims, &[&self.bases[0], &self.bases[1]]);
                gamma_two_qubit(&r, &s, &tensor_as_mat3(&t), mu)
            }
            CouplingSpec::TwoQutrit { mu } => {
                let (ra, _) = ptrace_sites(&rho, &self.site_dims, &[0]);
                let (rb, _) = ptrace_sites(&rho, &self.site_dims, &[1]);
                // bare averages
                let lam_a: Vec<f64> = self.bases[0]
                    .generators
                    .iter()
                    .map(|g| (g * &ra).trace().re)
                    .collect();
                let lam_b: Vec<f64> = self.bases[1]
                    .generators
                    .iter()
                    .map(|g| (g * &rb).trace().re)
                    .collect();
                let tau =
                    correlation_tensor(&rho, &self.site_dims, &[&self.bases[0], &self.bases[1]]);
                gamma_qutrit(
                    &lam_a,
                    &lam_b,
                    &tau,
                    mu,
                    self.sc3.as_ref().expect("qutrit sc"),
                )
            }
            CouplingSpec::ThreeQubit {
                mu_ab,
                mu_bc,
                mu_ac,
            } => {
                let b: Vec<&GeneratorBasis> = self.bases.iter().collect();
                let (r_ab, d_ab) = ptrace_sites(&rho, &self.site_dims, &[0, 1]);
                let (r_ac, d_ac) = ptrace_sites(&rho, &self.site_dims, &[0, 2]);
                let (r_bc, d_bc) = ptrace_sites(&rho, &self.site_dims, &[1, 2]);
                let t_ab = correlation_tensor(&r_ab, &d_ab, &[b[0], b[1]]);
                let t_ac = correlation_tensor(&r_ac, &d_ac, &[b[0], b[2]]);
                let t_bc = correlation_tensor(&r_bc, &d_bc, &[b[1], b[2]]);
                let tau = correlation_tensor(&rho, &self.site_dims, &[b[0], b[1], b[2]]);
                gamma_three_qubit(
                    &tensor_as_mat3(&t_ab),
                    &tensor_as_mat3(&t_ac),
                    &tensor_as_mat3(&t_bc),
                    &tau,
                    mu_ab,
                    mu_bc,
                    mu_ac,
                )
            }
        }
    }
}

fn coh3(red: &CMat, basis: &GeneratorBasis) -> [f64; 3] {
    // (d/2) Tr(rho lambda) at d = 2 is the bare average
    let mut out = [0.0; 3];
    for (i, g) in basis.generators.iter().enumerate() {
        out[i] = (g * red).trace().re;
    }
    out
}

/// Maximize the analytic rate over normalized state vectors by multi-start
/// derivative-free search. Deterministic for a fixed `(restarts, seed)`.
pub fn maximize_rate(
    coupling: &CouplingSpec,
    restarts: usize,
    seed: u64,
) -> Result<OptimizationReport> {
    if restarts == 0 {
        return Err(Error::OutOfRange("restarts must be >= 1".into()));
    }
    coupling.validate()?;
    let obj = RateObjective::new(coupling.clone())?;
    let site_dims = obj.site_dims.clone();
    let state_dim: usize = site_dims.iter().product();
    let f = |x: &[f64]| -> f64 {
        match params_to_state(x) {
            Some(amp) => obj.rate_of_amplitudes(&amp).unwrap_or(f64::NEG_INFINITY),
            None => f64::NEG_INFINITY,
        }
    };
    let nm = NelderMead::default();
    let ms = multi_start_maximize(&f, param_dim(state_dim), restarts, seed, &nm);
    let amp = params_to_state(&ms.best.x)
        .ok_or_else(|| Error::OutOfRange("optimizer returned the zero state".into()))?;
    let best_state = PureStateVector::new(site_dims.clone(), amp)?;

    let partition = PartitionSpec::singletons(&site_dims);
    let best_entanglement =
        EntanglementEvaluator::new(&partition).entanglement(&best_state.amplitudes);
    let (schmidt_coefficients, tangle) = match coupling.kind() {
        SystemKind::ThreeQubit => (None, Some(three_tangle(&best_state)?)),
        _ => {
            let bip = PartitionSpec::new(&site_dims, vec![vec![0], vec![1]])?;
            let sd = schmidt_decompose(&best_state, &bip)?;
            (Some(sd.coefficients), None)
        }
    };
    Ok(OptimizationReport {
        best_value: ms.best.value,
        best_state,
        restarts,
        per_restart_values: ms.per_restart_values,
        seed,
        iterations: ms.total_iterations,
        converged: ms.all_converged,
        best_entanglement,
        schmidt_coefficients,
        three_tangle: tangle,
    })
}

/// Convenience: the rate of a pure state under a coupling via the analytic
/// formula appropriate for its kind.
pub fn rate_of_state(coupling: &CouplingSpec, psi: &PureStateVector) -> Result<f64> {
    let site_dims = coupling.site_dims();
    if psi.dims != site_dims {
        return Err(Error::DimensionMismatch(
            "state dims do not match coupling".into(),
        ));
    }
    let partition = PartitionSpec::singletons(&site_dims);
    let bd = bloch_decompose(&from_pure(psi), &partition)?;
    match coupling {
        CouplingSpec::TwoQubit { mu } => rate_two_qubit(&bd, mu),
        CouplingSpec::TwoQutrit { mu } => {
            let sc = StructureConstants::from_basis(&GeneratorBasis::new(3)?);
            rate_qutrit(&bd, mu, &sc)
        }
        CouplingSpec::ThreeQubit { .. } => rate_three_qubit(&bd, coupling),
    }
}

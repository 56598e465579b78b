//! Quantum-correlation toolkit: Bloch-representation entanglement measures,
//! entanglement-generation capacities, fermionic mode entanglement through the
//! Jordan-Wigner mapping, thermal discord for the two-qubit XX chain and the
//! geometric measure of quantum discord for arbitrary bipartite dimensions.
//!
//! Everything is built on one convention set:
//!
//! * SU(d) generators in the interleaved order `{u_12, v_12, w_1, u_13, v_13,
//!   u_23, v_23, w_2, ...}` so that the l-th diagonal generator sits at
//!   (1-based) index `(l+1)^2 - 1`;
//! * coherence vectors `s_i = (d/2) Tr(rho lambda_i)` and correlation tensors
//!   `t = prod_k (d_k/2) Tr(rho lambda x ... x lambda)`.
//!
//! States live over a list of elementary sites (qubits for fermionic modes,
//! qudits otherwise) with site 0 the slowest tensor index; a [`PartitionSpec`]
//! groups sites into the subsystems between which correlations are measured.

pub mod capacity;
pub mod discord;
pub mod error;
pub mod fermion;
pub mod linalg;
pub mod measures;
pub mod optim;
pub mod qstate;
pub mod su_basis;
pub mod thermal_xx;

pub use error::{Error, Result};
pub use qstate::{BlochDecomposition, DensityMatrix, PartitionSpec, PureStateVector};
pub use su_basis::{GeneratorBasis, StructureConstants};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex<f64>;
/// Dense complex matrix.
pub type CMat = nalgebra::DMatrix<C64>;
/// Dense complex vector.
pub type CVec = nalgebra::DVector<C64>;

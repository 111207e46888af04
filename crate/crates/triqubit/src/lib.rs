//! Three-qubit entanglement algebra.
//!
//! This crate implements the state representations and entanglement measures
//! needed to work with the Shifts unextendible product basis (UPB), the
//! exact-entanglement basis (EEB) that completes it, and the bound-entangled
//! uniform mixture over the EEB:
//!
//! - [`qstate`]: amplitudes, pure states, density matrices, partial trace,
//!   partial transpose, and a small Hermitian eigensolver.
//! - [`tangles`]: one-tangles by two routes, the Cayley hyperdeterminant and
//!   three-tangle, pairwise tangles, and a Wootters-concurrence oracle.
//! - [`bases`]: the Shifts UPB, the EEB, the dual basis family, and
//!   local-unitary orbit generation.
//! - [`productsearch`]: see-saw and grid searches for the maximum product
//!   overlap with a subspace, certifying unextendibility and product-freeness.
//! - [`boundstate`]: the bound-entangled mixture, its PPT spectra, and the
//!   full bound-entanglement certificate.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so everything here is safe to use from multiple threads.

pub mod bases;
pub mod boundstate;
mod cmat;
pub mod productsearch;
pub mod qstate;
pub mod tangles;

pub use bases::{
    cbupb, combine, dual_cbupb, eeb, is_orthonormal, lu_transform, min_upb_cardinality,
    phase_equal, random_local_unitary, shifts_upb, shifts_upb_factors, BasisKind, BasisSet, Cbupb,
    LocalUnitary,
};
pub use boundstate::{
    certify_bound_entanglement, paper_matrix, ppt_report, rho_from_eeb, rho_from_upb_complement,
    BoundEntanglementCertificate, PptReport,
};
pub use productsearch::{
    ees_product_free, grid_oracle_max_overlap, seesaw_max_overlap, upb_extendibility, Method,
    Projector, SearchResult, SeesawConfig, Verdict,
};
pub use qstate::{
    amp_index, Amplitude, DensityMatrix3Q, HermitianMatrix, Party, PartyPair, ProductState3Q,
    PureState3Q, Qubit2Vec,
};
pub use tangles::{
    hyperdeterminant, is_fully_product, one_tangle_entropy, one_tangle_minors, pairwise_tangle,
    tangle_profile, three_tangle, wootters_concurrence, TangleProfile,
};

/// Norm tolerance for user-supplied amplitude vectors.
pub const NORM_TOL: f64 = 1e-9;
/// Entrywise tolerance for internal Hermiticity and positivity checks.
pub const HERM_TOL: f64 = 1e-10;
/// Tolerance for algebraic identities on exact constructions.
pub const EXACT_TOL: f64 = 1e-12;

/// Errors raised by constructors and operations in this crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Amplitudes do not satisfy the unit-norm contract.
    #[error("amplitudes are not normalized: |norm^2 - 1| = {residual:.3e} exceeds {tol:.1e}")]
    NotNormalized { residual: f64, tol: f64 },
    /// A vector with (numerically) zero norm cannot be normalized.
    #[error("cannot normalize a vector of norm {norm:.3e}")]
    ZeroVector { norm: f64 },
    /// Mixture weights are negative, mismatched in length, or do not sum to 1.
    #[error("invalid mixture weights: {reason}")]
    BadWeights { reason: String },
    /// A matrix expected to be Hermitian is not, within tolerance.
    #[error("matrix is not Hermitian: residual {residual:.3e} exceeds {tol:.1e}")]
    NotHermitian { residual: f64, tol: f64 },
    /// A matrix expected to be a density matrix fails trace or positivity.
    #[error("not a valid density matrix: {reason}")]
    NotDensityMatrix { reason: String },
    /// A Hilbert-space dimension below 2 was supplied.
    #[error("invalid local dimension {dim}; every factor must have dimension >= 2")]
    BadDimension { dim: usize },
    /// A state list expected to be orthogonal is not, within tolerance.
    #[error("states are not orthonormal: residual {residual:.3e} exceeds {tol:.1e}")]
    NotOrthogonal { residual: f64, tol: f64 },
    /// A basis expected to resolve the identity does not.
    #[error("basis is not complete: identity residual {residual:.3e} exceeds {tol:.1e}")]
    NotComplete { residual: f64, tol: f64 },
    /// A basis member does not match the declared product/entangled kind.
    #[error("basis kind mismatch: {reason}")]
    WrongKind { reason: String },
    /// A matrix expected to be unitary is not, within tolerance.
    #[error("matrix is not unitary: residual {residual:.3e} exceeds {tol:.1e}")]
    NotUnitary { residual: f64, tol: f64 },
    /// Spanning states are linearly dependent or too ill-conditioned.
    #[error("spanning set is degenerate: {reason}")]
    DegenerateSpan { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

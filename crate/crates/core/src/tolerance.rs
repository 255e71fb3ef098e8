//! Default numerical tolerances. Every check in the crate takes its threshold
//! from a [`Tolerances`] value so that callers can override them.

use serde::{Deserialize, Serialize};

/// Relative tolerance for algebraic identities (group laws, brackets).
pub const IDENTITY: f64 = 1e-9;
/// Tolerance for spectral predicates (skew-similarity, nilpotency).
pub const SPECTRAL: f64 = 1e-8;
/// Rank threshold factor: singular values below `RANK * ‖A‖` count as zero.
pub const RANK: f64 = 1e-8;
/// Eigenvalues closer than `CLUSTER * (1 + ‖A‖)` are merged into one
/// eigenvalue with multiplicity. Defective eigenvalues of a Jordan block of
/// size k split by roughly `eps^(1/k)`, so this has to be loose.
pub const CLUSTER: f64 = 1e-5;
/// Commutativity of `B1`, `B2`: `‖B1B2 − B2B1‖ ≤ COMMUTE (1 + ‖B1‖‖B2‖)`.
pub const COMMUTE: f64 = 1e-12;
/// Symplectic membership: `‖AᵀJA − J‖ ≤ SYMPLECTIC (1 + ‖A‖²)`.
pub const SYMPLECTIC: f64 = 1e-9;
/// Certificate conjugacy defect, relative to the pencil scale.
pub const CERTIFICATE: f64 = 1e-8;
/// Pencil profile matching distance.
pub const PROFILE_MATCH: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub identity: f64,
    pub spectral: f64,
    pub rank: f64,
    pub cluster: f64,
    pub commute: f64,
    pub symplectic: f64,
    pub certificate: f64,
    pub profile_match: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            identity: IDENTITY,
            spectral: SPECTRAL,
            rank: RANK,
            cluster: CLUSTER,
            commute: COMMUTE,
            symplectic: SYMPLECTIC,
            certificate: CERTIFICATE,
            profile_match: PROFILE_MATCH,
        }
    }
}

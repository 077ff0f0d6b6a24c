//! Numerical tolerances, collected in one place.
//!
//! Every comparison threshold used by the numeric pipeline lives here so
//! that a run can be tightened or relaxed through a single configuration
//! surface instead of scattered literals.

/// Tolerance bundle used across the spectrum / regularized determinant
/// pipeline. All values are relative unless noted otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Identity checks between independently computed quantities
    /// (regularized vs. finite determinants, zeta comparisons).
    pub identity: f64,
    /// Structural invariants expected to hold to near machine precision
    /// (anomalous dimension, exact-sequence additivity).
    pub invariant: f64,
    /// Special function accuracy (log-Gamma, Hurwitz zeta).
    pub special: f64,
    /// Absolute threshold on |s - alpha_k| below which a progression is
    /// treated as vanishing and the zero mode is split off.
    pub vanishing: f64,
    /// Absolute distance from the branch cut Arg = pi at which inputs are
    /// refused rather than silently perturbed.
    pub branch_guard: f64,
    /// Weil bound check |lambda| = q^{i/2} on reconstructed eigenvalues.
    pub weil: f64,
    /// Residual bound for polynomial root refinement, relative to the
    /// coefficient norm.
    pub root_residual: f64,
    /// Round-trip bound for the base-q matrix logarithm, q^Theta vs M.
    pub matrix_roundtrip: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            identity: 1e-8,
            invariant: 1e-10,
            special: 1e-12,
            vanishing: 1e-10,
            branch_guard: 1e-14,
            weil: 1e-9,
            root_residual: 1e-12,
            matrix_roundtrip: 1e-9,
        }
    }
}

impl Tolerances {
    /// Default bundle with the identity tolerance replaced.
    pub fn with_identity(tol: f64) -> Self {
        Tolerances { identity: tol, ..Tolerances::default() }
    }
}

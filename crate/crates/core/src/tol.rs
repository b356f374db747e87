//! Numerical tolerances shared across the crate.

/// Norms, orthogonality, Hermiticity and unitarity checks.
pub const NORM: f64 = 1e-9;

/// Exact algebraic identities (amplitude-by-amplitude comparisons).
pub const EXACT: f64 = 1e-12;

/// Relative tolerance used when grouping eigenvalues into degenerate clusters.
pub const CLUSTER_REL: f64 = 1e-7;

/// Eigenvalues below this are treated as zero and dropped from spectra.
pub const ZERO_EIGENVALUE: f64 = 1e-12;

//! Finite search layers of the classification: candidate `(r, s)` values,
//! dual-pair filters, spherical code bounds, the minimal-type `(s, t)` list
//! and integrality-driven rescaling checks.

mod bounds;
mod minimal;
mod poly;
mod rs;
mod scaling;

pub use bounds::{dgs_code_bound, n2_size, n2_upper_bound, projected_code_angle, BoundError};
pub use minimal::{
    check_minimal_type, minimal_type_pairs, minimal_type_scan, MinimalTypeFilter, MinimalTypeScan,
};
pub use poly::{polynomial_method, CountDefect, CountViolation, Exclusion, PolyReport, Quadratic};
pub use rs::{
    check_rs, dual_pair_filter, dual_pair_value, format_a_set, minimal_type_r, rs_candidates, rs_candidates_with,
    surviving_r, CandidateRow, DualPairRow, DualPairTable, FilterSet, PairCond, RemovedRow, RsFilter, RsTable, N,
    S_MAX, S_MIN,
};
pub use scaling::{even_scaling_check, Claim, ResidueClass, ScalingError, ScalingVerdict};

//! Brute-force oracles: exhaustive enumeration of maps, direct minimisation
//! of the optimisation problems, verification of the divisibility theorem on
//! concrete instances, the counting-argument trace, and polynomial systems.

mod enumerate;
mod optimization;
mod poly;
mod primary;
mod trace;
mod verify;

pub use enumerate::{
    brute_delta, degree_histogram, functions_by_degree, map_at, table_count, DEFAULT_TABLE_CAP,
};
pub use optimization::{
    brute_min_n, brute_vp, brute_vp_profile, smin_brute, BRUTE_MIN_N_LIMIT, BRUTE_VP_MAX_ALPHA,
    BRUTE_VP_WORK_LIMIT,
};
pub use poly::{
    poly_bound_check, poly_zero_count, PolyReport, PolySystem, Polynomial, Term,
    DEFAULT_POINT_CAP,
};
pub use primary::{assemble_primary, primary_product_count, split_primary};
pub use trace::{proof_trace, proof_trace_escalated, CoefficientCheck, IndicatorLift, ProofTrace};
pub use verify::{
    verify_main_theorem, CodomainCap, VerifyMode, VerifyReport, Witness, DEFAULT_SAMPLES,
};

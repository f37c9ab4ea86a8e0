//! Closed-form valuation bounds: `ν_p`, its constrained minimum `V_p` with a
//! witness, the auxiliary minimisations, and the main lower bound on
//! `ord_p #Z` together with its extensions to non-cyclic targets, several
//! primes and polynomial systems over `Z/m`.

mod scope;
mod smin;
mod theorem;
mod vp;

pub use scope::{expand_targets, multi_prime_bounds, rng_system_bound, PrimeBound};
pub use smin::{smin, smin_objective, v_at, SminResult};
pub use theorem::{
    equal_alpha_bound, eval_n, main_bound, min_n, n_hat, BoundCase, BoundReport, Target,
    TargetSpec,
};
pub use vp::{nu_p, nu_p_scalar, vp, vp_equal_alpha, Budget, VpWitness};

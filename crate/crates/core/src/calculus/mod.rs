//! Difference operators, functional degree, binomial series, proper lifts,
//! integrals and zero counting for maps between finite abelian groups.

mod degree;
mod map;
mod series;
mod zeros;

pub use degree::{functional_degree, ExtendedDegree};
pub use map::{tensor_product, FiniteMap};
pub use series::{
    integral, lift_delta0, proper_lift, reconstruct, series_coefficients, IntSeries,
    SeriesCoefficients,
};
pub use zeros::{zero_count, zero_set, ZeroCount};

#[allow(unused_imports)]
pub(crate) use series::pascal_rows;

/// Calls `visit` on every point of `∏_i [0, b_i)` in row-major order, last
/// coordinate fastest. An empty `bounds` yields the single empty point.
pub(crate) fn for_each_point(bounds: &[u64], mut visit: impl FnMut(&[u64])) {
    if bounds.contains(&0) {
        return;
    }
    let mut x = vec![0u64; bounds.len()];
    loop {
        visit(&x);
        let mut i = bounds.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            x[i] += 1;
            if x[i] < bounds[i] {
                break;
            }
            x[i] = 0;
        }
    }
}

//! Exact integer linear algebra, Laurent polynomials and truncated power series.

mod laurent;
mod matrix;
mod series;

pub use laurent::LaurentPoly;
pub use matrix::{
    cokernel_summary, invariant_factors, kernel_basis, smith_normal_form, subquotient_summary, AbelianGroupSummary,
    IntegerMatrix, SmithForm,
};
pub use series::{binomial, catalan_number, catalan_series_coefficient, series_sqrt_inverse_identity, IntSeries};

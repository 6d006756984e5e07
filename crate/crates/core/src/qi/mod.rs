//! Quasi-invariant polynomials of type-(m,1^n) arrangements and their
//! Hilbert series.

pub mod dimension;
pub mod hilbert;
pub mod segments;

pub use dimension::{free_indices, is_quasi_invariant, qi_dimension_exact, qi_dimension_numeric};
pub use hilbert::{
    closed_form_numerator, expand_numerator, hilbert_coefficients, hilbert_coefficients_numeric,
    hilbert_rational_form, is_gorenstein, r_parameter, HilbertSeries,
};
pub use segments::{check_segments, predict, segment_oracles, OracleContext, SegmentFormula};

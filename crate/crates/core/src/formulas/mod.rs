//! Closed forms, recurrences and identities for patterns of length three.
//!
//! Every pattern in S3 has the same counts, so everything here is stated for
//! 321 and applies to all six.

pub mod appendix;
pub mod closed;
pub mod diagonal;
pub mod recurrence;
pub mod words;

pub use appendix::{appendix_final_identity_check, gosper_certificate_check};
pub use closed::{op321_double_sum, pk_polynomial};
pub use diagonal::{diagonal_count, qr_polynomial, yr_recurrence_residual};
pub use recurrence::{
    fill_table_by_double_recurrence, linear_recurrence_column, op321_double_recurrences, op321_linear_recurrence,
};
pub use words::{sum_identity_check, words_321_double_sum, words_321_single_sum};

pub mod dvr;
pub mod field;
pub mod snf;

pub use dvr::{dvr_elementary_divisors, DVRMatrix, Laurent};
pub use field::FieldSpec;
pub use snf::{smith_normal_form, IntMatrix, Snf};

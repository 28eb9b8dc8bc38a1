//! Imaginary quadratic fields and their class groups, represented by reduced binary
//! quadratic forms.

mod field;
mod form;
mod group;
mod subgroup;

pub use field::{is_fundamental_negative, QuadField, Splitting, MAX_ABS_DISC};
pub use form::QuadForm;
pub use group::{prime_form, reduced_forms, ClassGroup, IdealClass};
pub use subgroup::ClassSubgroup;

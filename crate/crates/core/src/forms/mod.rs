//! Binary forms: representation, evaluation, GL2 action, roots,
//! discriminants, named families and text syntax.

mod discriminant;
mod families;
mod form;
mod map;
mod parse;
mod roots;
pub mod sample;

pub use discriminant::{discriminant_exact, discriminant_float};
pub use families::make_fstar;
pub use families::make_pk;
pub(crate) use families::product_of_directions;
pub(crate) use discriminant::count_real_roots;
pub use form::{ln_abs_rational, rational_to_f64, BinaryForm, Coeffs};
pub use map::{transform, LinearMap};
pub use parse::parse_form;
pub use roots::{roots, RootPair, RootSet, DEFAULT_ROOT_TOL, REAL_TOL};

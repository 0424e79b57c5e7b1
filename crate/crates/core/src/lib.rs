//! Binary forms, the area of `|F(x, y)| <= 1`, its GL2-invariant
//! normalisation, lattice-point counts for Thue inequalities and a search
//! for the extremal forms of the invariant.

pub mod area;
pub mod error;
pub mod extremal;
pub mod forms;
pub mod quadrature;
pub mod special_fn;
pub mod thue;

pub use area::{area, invariant, invariant_from_angles, singular_angles, AreaResult, InvariantValue};
pub use error::{Error, Result};
pub use forms::{
    discriminant_exact, discriminant_float, make_fstar, make_pk, parse_form, roots, transform, BinaryForm,
    LinearMap, RootPair, RootSet,
};

//! Binary forms: factorization, definiteness, gcds, multiplicities and real zero directions.

pub mod binary;
pub mod definite;
pub mod direction;
pub mod surd;

pub use binary::{factor_form, form_gcd, multiplicity, BinaryForm, FormFactorization};
pub use definite::{definiteness, split_p0, DefTag, Definiteness, SplitP0};
pub use direction::{real_zero_directions, sign_at_direction, DirKind, Direction};
pub use surd::QuadIrr;

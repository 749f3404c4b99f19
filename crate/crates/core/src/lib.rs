//! Exact arithmetic for integral forms and the arithmetic obstructions to
//! smoothness of 4-manifolds.
//!
//! * [`exactla`]: Smith normal form, determinants, congruence diagonalization.
//! * [`cyclotomic`]: `Φₙ`, arithmetic in `Z[ζₙ]`, exact traces and trace forms.
//! * [`quadform`]: bilinear forms, Witt expressions, E8, short vectors.
//! * [`groupring`]: finite groups, `Z[Γ]`, the Frobenius trace form, Wedderburn census.
//! * [`fpgroup`]: abelianization of presentations, automorphisms of finite abelian groups.
//! * [`smooth4`]: Rokhlin and Donaldson checks on candidate intersection forms.
//!
//! The guide under `book/` walks through each of these; its code samples are
//! compiled and run as doc-tests of this crate.

pub mod arith;
pub mod cyclotomic;
pub mod error;
pub mod exactla;
pub mod formats;
pub mod fpgroup;
pub mod groupring;
pub mod quadform;
pub mod smooth4;

pub use error::{Error, Result};
pub use exactla::{IntMatrix, RatMatrix, Signature};
pub use quadform::BilinearForm;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/exact-linear-algebra.md")]
    struct ExactLinearAlgebra;
    #[doc = include_str!("../../../book/src/cyclotomic.md")]
    struct Cyclotomic;
    #[doc = include_str!("../../../book/src/forms.md")]
    struct Forms;
    #[doc = include_str!("../../../book/src/group-rings.md")]
    struct GroupRings;
    #[doc = include_str!("../../../book/src/abelianization.md")]
    struct Abelianization;
    #[doc = include_str!("../../../book/src/obstructions.md")]
    struct Obstructions;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}

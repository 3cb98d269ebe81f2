//! Finite-precision arithmetic in the Iwasawa algebra `Λ = Z_p[[X]]`.
//!
//! The crate is layered bottom-up:
//!
//! * [`padic`]: p-adic integers modulo `p^N` with tracked precision.
//! * [`poly`]: exact integer polynomials, resultants, Bezout cofactors.
//! * [`lambda`]: truncated elements of `Λ`, the families `Φ_n`, `ω_n`,
//!   `ω_n^±`, Weierstrass preparation, the involution `ι`, division by
//!   `Φ_n` and the cyclotomic part of a gcd.
//! * [`cyclo`]: exact ideals `(∏ Φ_n^{a_n})`.
//! * [`module`]: `Λ`-module descriptors in normal form, level truncation,
//!   coinvariant orders and characteristic ideals.
//! * [`rank`]: rank-jump profiles and the characteristic-ideal formulas
//!   they determine.
//! * [`io`]: validated JSON records and canonical reports.
//!
//! ```
//! use itk_core::rank::{fine_char_ideal, pm_gcd_char, RankProfile};
//!
//! let profile = RankProfile::direct(3, &[2, 0, 3, 1]).unwrap();
//! assert_eq!(fine_char_ideal(&profile).to_string(), "X^1 * Phi_2^2");
//! assert_eq!(pm_gcd_char(&profile).to_string(), "X^2 * Phi_2^2");
//! ```

pub mod cyclo;
pub mod error;
pub mod io;
pub mod lambda;
pub mod module;
pub mod padic;
pub mod poly;
pub mod rank;

pub use cyclo::CyclotomicProduct;
pub use error::{Error, Result, ValidationError};
pub use lambda::LambdaElement;
pub use module::ElementaryModule;
pub use padic::{PadicContext, PadicInt, Valuation};
pub use poly::IntPoly;
pub use rank::RankProfile;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/padic.md")]
    mod padic {}
    #[doc = include_str!("../../../book/src/lambda.md")]
    mod lambda {}
    #[doc = include_str!("../../../book/src/weierstrass.md")]
    mod weierstrass {}
    #[doc = include_str!("../../../book/src/bezout.md")]
    mod bezout {}
    #[doc = include_str!("../../../book/src/modules.md")]
    mod modules {}
    #[doc = include_str!("../../../book/src/ranks.md")]
    mod ranks {}
    #[doc = include_str!("../../../book/src/kp.md")]
    mod kp {}
    #[doc = include_str!("../../../book/src/formats.md")]
    mod formats {}
}

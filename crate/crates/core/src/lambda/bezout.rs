//! Bezout identity for the coprime pair `(ω̃_n^-, ω_n^+)`.

use num_bigint::BigInt;
use num_traits::Signed;

use super::{omega_pm_poly, LambdaElement, Sign};
use crate::error::{Error, Result};
use crate::padic::PadicContext;
use crate::poly::{resultant, ClearedBezout, IntPoly};

/// `a·ω̃_n^- + b·ω_n^+ = p^m` as integer polynomials.
///
/// `m` is the valuation of the resultant `Res(ω̃_n^-, ω_n^+)` (which is a
/// power of `p` up to sign), and `(a, b)` are the classical resultant
/// cofactors. `minimal_m` is the least exponent any integral representation
/// can reach; it can be strictly smaller than `m` once `n >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BezoutPm {
    pub n: u32,
    pub p: u64,
    pub a: IntPoly,
    pub b: IntPoly,
    pub m: u32,
    pub minimal_m: u32,
    minimal: (IntPoly, IntPoly),
}

impl BezoutPm {
    /// The representation with exponent `minimal_m`.
    pub fn minimal(&self) -> (&IntPoly, &IntPoly) {
        (&self.minimal.0, &self.minimal.1)
    }

    /// Evaluates `a·ω̃_n^- + b·ω_n^+` exactly.
    pub fn combination(&self) -> IntPoly {
        let minus = omega_pm_poly(self.p, self.n, Sign::Minus);
        let plus = omega_pm_poly(self.p, self.n, Sign::Plus);
        &(&self.a * &minus) + &(&self.b * &plus)
    }

    /// Whether the identity holds exactly over `Z`.
    pub fn verify(&self) -> bool {
        self.combination() == IntPoly::constant(BigInt::from(self.p).pow(self.m))
    }

    /// The cofactors as elements of `Λ`.
    pub fn to_lambda(&self, ctx: &PadicContext) -> Result<(LambdaElement, LambdaElement)> {
        Ok((
            LambdaElement::from_poly(ctx, &self.a)?,
            LambdaElement::from_poly(ctx, &self.b)?,
        ))
    }
}

/// Cofactors with `a·ω̃_n^- + b·ω_n^+ = p^m`, `deg a < deg ω_n^+`,
/// `deg b < deg ω̃_n^-`.
pub fn bezout_pm(n: u32, ctx: &PadicContext) -> Result<BezoutPm> {
    if n == 0 {
        return Err(Error::InvalidContext("bezout_pm needs n >= 1".into()));
    }
    let p = ctx.p();
    let minus = omega_pm_poly(p, n, Sign::Minus);
    let plus = omega_pm_poly(p, n, Sign::Plus);
    for poly in [&minus, &plus] {
        let d = poly.degree().unwrap_or(0);
        if d >= ctx.truncation() {
            return Err(Error::TruncationOverflow {
                degree: d,
                truncation: ctx.truncation(),
            });
        }
    }
    let res = resultant(&minus, &plus).abs();
    let m = ctx
        .valuation_of(&res)
        .ok_or_else(|| Error::NotDivisible("ω̃⁻ and ω⁺ share a factor".into()))?;
    let pm = BigInt::from(p).pow(m);
    if pm != res {
        return Err(Error::NotDivisible(format!(
            "resultant {res} is not a power of {p}"
        )));
    }
    if m >= ctx.precision() {
        return Err(Error::PrecisionExhausted(format!(
            "p^{m} vanishes at precision N = {}",
            ctx.precision()
        )));
    }
    let cleared = ClearedBezout::new(&minus, &plus).expect("coprime");
    let minimal_m = ctx
        .valuation_of(&cleared.denominator)
        .expect("nonzero denominator");
    let (a, b) = cleared.scaled(&res);
    let minimal = cleared.scaled(&cleared.denominator);
    Ok(BezoutPm {
        n,
        p,
        a,
        b,
        m,
        minimal_m,
        minimal,
    })
}

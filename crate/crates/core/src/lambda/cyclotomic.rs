//! The polynomial families `Φ_n`, `ω_n` and the plus/minus halves of `ω_n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::LambdaElement;
use crate::cyclo::CyclotomicProduct;
use crate::error::{Error, Result};
use crate::padic::PadicContext;
use crate::poly::IntPoly;

/// `Φ_n = ((X+1)^{p^n} - 1) / ((X+1)^{p^{n-1}} - 1)` for `n >= 1`, and
/// `Φ_0 = X`.
pub fn phi_poly(p: u64, n: u32) -> IntPoly {
    if n == 0 {
        return IntPoly::monomial(1);
    }
    let top = &IntPoly::one_plus_x_pow(prime_power(p, n)) - &IntPoly::one();
    let bottom = &IntPoly::one_plus_x_pow(prime_power(p, n - 1)) - &IntPoly::one();
    // bottom = ω_{n-1} is monic
    top.exact_div_monic(&bottom)
        .expect("cyclotomic quotient is exact")
}

/// `ω_n = (1+X)^{p^n} - 1`.
pub fn omega_poly(p: u64, n: u32) -> IntPoly {
    &IntPoly::one_plus_x_pow(prime_power(p, n)) - &IntPoly::one()
}

/// Which half of `ω_n`: `Plus` takes even indices (including `Φ_0 = X`),
/// `Minus` takes odd indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn includes(self, m: u32) -> bool {
        match self {
            Sign::Plus => m % 2 == 0,
            Sign::Minus => m % 2 == 1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            _ => Err(Error::Schema(format!("unknown sign {s:?}"))),
        }
    }
}

/// `ω_n^+ = ∏_{even m <= n} Φ_m` or `ω̃_n^- = ∏_{odd m <= n} Φ_m`.
pub fn omega_pm_poly(p: u64, n: u32, sign: Sign) -> IntPoly {
    (0..=n)
        .filter(|&m| sign.includes(m))
        .fold(IntPoly::one(), |acc, m| &acc * &phi_poly(p, m))
}

/// `∏ Φ_n^{a_n}` as an exact polynomial.
pub fn cyclo_expand_poly(c: &CyclotomicProduct, p: u64) -> IntPoly {
    c.exponents()
        .iter()
        .fold(IntPoly::one(), |acc, (&n, &a)| &acc * &phi_poly(p, n).pow(a))
}

pub fn phi(n: u32, ctx: &PadicContext) -> Result<LambdaElement> {
    fits(ctx, crate::padic::totient_prime_power(ctx.p(), n))?;
    LambdaElement::from_poly(ctx, &phi_poly(ctx.p(), n))
}

pub fn omega(n: u32, ctx: &PadicContext) -> Result<LambdaElement> {
    fits(ctx, checked_prime_power(ctx.p(), n))?;
    LambdaElement::from_poly(ctx, &omega_poly(ctx.p(), n))
}

pub fn omega_pm(n: u32, sign: Sign, ctx: &PadicContext) -> Result<LambdaElement> {
    let degree = (0..=n)
        .filter(|&m| sign.includes(m))
        .map(|m| crate::padic::totient_prime_power(ctx.p(), m))
        .sum();
    fits(ctx, degree)?;
    LambdaElement::from_poly(ctx, &omega_pm_poly(ctx.p(), n, sign))
}

pub fn cyclo_expand(c: &CyclotomicProduct, ctx: &PadicContext) -> Result<LambdaElement> {
    fits(ctx, c.degree(ctx.p()))?;
    LambdaElement::from_poly(ctx, &cyclo_expand_poly(c, ctx.p()))
}

/// Checked before building anything, so oversized requests fail fast.
fn fits(ctx: &PadicContext, degree: u64) -> Result<()> {
    if degree >= ctx.truncation() as u64 {
        return Err(Error::TruncationOverflow {
            degree: usize::try_from(degree).unwrap_or(usize::MAX),
            truncation: ctx.truncation(),
        });
    }
    Ok(())
}

fn checked_prime_power(p: u64, n: u32) -> u64 {
    p.checked_pow(n).unwrap_or(u64::MAX)
}

fn prime_power(p: u64, n: u32) -> usize {
    usize::try_from(checked_prime_power(p, n)).expect("p^n fits in memory")
}

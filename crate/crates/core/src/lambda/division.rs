//! Division in `Λ` by a monic polynomial, with honest precision.
//!
//! For a monic `P` of degree `d` write `X^j = Q_j·P + R_j` with
//! `deg R_j < d`. An error of `p^π` in the coefficient of `X^j` moves the
//! remainder by `p^π·R_j` and the quotient by `p^π·Q_j`, and the unknown
//! coefficients past `X^M` move the remainder by something of valuation at
//! least `v(R_M)`. Tracking those valuations gives the precision of every
//! quotient coefficient and of the remainder.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{phi_poly, LambdaElement};
use crate::error::{Error, Result};
use crate::padic::{PadicContext, PadicInt};
use crate::poly::IntPoly;

/// A remainder counts as zero when it vanishes modulo
/// `p^{precision - DIVISIBILITY_GUARD}`.
pub const DIVISIBILITY_GUARD: u32 = 2;

/// `f = quotient·P + remainder` at the recorded precisions.
#[derive(Debug, Clone)]
pub struct Division {
    pub quotient: LambdaElement,
    /// Coefficients of the remainder, `deg < deg P`.
    pub remainder: Vec<PadicInt>,
    /// Precision to which the remainder is determined by the known data.
    pub remainder_precision: u32,
}

impl Division {
    /// Whether the remainder vanishes at precision (guard digits applied).
    pub fn remainder_vanishes(&self, ctx: &PadicContext) -> Result<bool> {
        if self.remainder_precision <= DIVISIBILITY_GUARD {
            return Err(Error::PrecisionExhausted(format!(
                "remainder known only modulo p^{}",
                self.remainder_precision
            )));
        }
        let threshold = self.remainder_precision - DIVISIBILITY_GUARD;
        Ok(self
            .remainder
            .iter()
            .all(|r| ctx.reduce(r.residue(), threshold).is_zero()))
    }
}

/// Valuations of `X^k mod P` for `k = 0..=M`: `(v(R_k), v(R_k[d-1]))`, both
/// capped at `N`.
pub(crate) fn power_residue_valuations(divisor: &IntPoly, ctx: &PadicContext) -> Vec<(u32, u32)> {
    let d = divisor.degree().expect("nonzero divisor");
    let n = ctx.precision();
    let m = ctx.truncation();
    let low: Vec<BigInt> = divisor.coeffs()[..d].iter().map(|c| ctx.reduce(c, n)).collect();
    let cap = |x: &BigInt| ctx.valuation_of(x).map_or(n, |v| v.min(n));
    if d == 0 {
        // P = 1: every remainder is zero
        return vec![(n, n); m + 1];
    }
    let mut out = Vec::with_capacity(m + 1);
    let mut r = vec![BigInt::zero(); d];
    r[0] = BigInt::from(1);
    for _ in 0..=m {
        let v_all = r.iter().map(cap).min().unwrap_or(n);
        out.push((v_all, cap(&r[d - 1])));
        let top = r.pop().unwrap();
        r.insert(0, BigInt::zero());
        if !top.is_zero() {
            for (ri, pi) in r.iter_mut().zip(&low) {
                *ri = ctx.reduce(&(&*ri - &top * pi), n);
            }
        }
    }
    out
}

/// Divides `f` by a monic polynomial, reporting the precision of the result.
pub fn divide_by_distinguished(f: &LambdaElement, divisor: &IntPoly) -> Result<Division> {
    let ctx = f.ctx();
    let n = ctx.precision();
    let m = ctx.truncation();
    if !divisor.is_monic() {
        return Err(Error::UnsupportedShape(format!("divisor {divisor} is not monic")));
    }
    let d = divisor.degree().unwrap();
    if d >= m {
        return Err(Error::TruncationOverflow { degree: d, truncation: m });
    }
    let vals = power_residue_valuations(divisor, ctx);
    let tail = vals[m].0;
    let w: Vec<u32> = vals.iter().map(|&(_, c)| c).collect();
    let prec: Vec<u32> = f.coeffs().iter().map(PadicInt::known_precision).collect();

    let mut rem_prec = n.min(tail);
    for j in 0..m {
        rem_prec = rem_prec.min(prec[j].saturating_add(vals[j].0));
    }

    let mut q_prec = vec![n.min(tail); m];
    for (i, qp) in q_prec.iter_mut().enumerate() {
        for j in i + 1..m {
            *qp = (*qp).min(prec[j].saturating_add(w[j - i - 1]));
        }
        for &wk in &w[m - i - 1..m] {
            *qp = (*qp).min(wk);
        }
    }

    let low: Vec<BigInt> = divisor.coeffs()[..d].iter().map(|c| ctx.reduce(c, n)).collect();
    let mut rem: Vec<BigInt> = f.coeffs().iter().map(|c| c.residue().clone()).collect();
    let mut quot = vec![BigInt::zero(); m];
    for i in (d..m).rev() {
        let c = ctx.reduce(&std::mem::take(&mut rem[i]), n);
        if c.is_zero() {
            continue;
        }
        for (j, pj) in low.iter().enumerate() {
            rem[i - d + j] -= &c * pj;
        }
        quot[i - d] = c;
    }
    let remainder = rem[..d]
        .iter()
        .map(|r| PadicInt::new(r.clone(), rem_prec, ctx))
        .collect();
    let quotient = LambdaElement::from_padics(
        ctx,
        quot.into_iter()
            .zip(q_prec)
            .map(|(q, qp)| PadicInt::new(q, qp, ctx))
            .collect(),
    )?;
    Ok(Division {
        quotient,
        remainder,
        remainder_precision: rem_prec,
    })
}

/// `(f / Φ_n, true)` when `Φ_n` divides `f` at precision, else `(f, false)`.
///
/// Fails with `TruncationOverflow` when `Φ_n` does not fit below `X^M` and
/// with `PrecisionExhausted` when the remainder is not known to more than
/// the guard digits.
pub fn divide_by_phi(f: &LambdaElement, n: u32) -> Result<(LambdaElement, bool)> {
    let ctx = f.ctx();
    let degree = crate::padic::totient_prime_power(ctx.p(), n);
    if degree >= ctx.truncation() as u64 {
        return Err(Error::TruncationOverflow {
            degree: degree as usize,
            truncation: ctx.truncation(),
        });
    }
    let div = divide_by_distinguished(f, &phi_poly(ctx.p(), n))?;
    if div.remainder_vanishes(ctx)? {
        Ok((div.quotient, true))
    } else {
        Ok((f.clone(), false))
    }
}

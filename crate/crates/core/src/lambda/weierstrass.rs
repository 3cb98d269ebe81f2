//! Weierstrass preparation `f = p^μ · u · P` and the Iwasawa invariants.
//!
//! After stripping `p^μ`, the truncated element `g` satisfies
//! `g ≡ X^λ · H_0 (mod p)` with `H_0(0) ≠ 0`. Since `X^λ` and `H_0` are
//! coprime over `F_p`, the factorization lifts digit by digit (Hensel) to
//! `g = P·H` modulo `p^W` with `P` monic of degree `λ` and `P ≡ X^λ (mod p)`.
//! Then `P` is distinguished and `u = H` is a unit.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::division::power_residue_valuations;
use super::LambdaElement;
use crate::error::{Error, Result};
use crate::padic::{PadicContext, PadicInt, Valuation};
use crate::poly::IntPoly;

/// Monic polynomial whose lower coefficients are all divisible by `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistinguishedPoly {
    /// Residues modulo `p^{N-μ}` (the working precision), lowest degree first.
    #[serde(with = "poly_strings")]
    pub coeffs: IntPoly,
    /// Digits to which the coefficients are determined by the input.
    pub precision: u32,
}

impl DistinguishedPoly {
    /// The degree `λ`.
    pub fn degree(&self) -> usize {
        self.coeffs.degree().unwrap_or(0)
    }

    /// Checks monicity and `p | c_i` for every non-leading coefficient.
    pub fn is_distinguished(&self, ctx: &PadicContext) -> bool {
        let lam = self.degree();
        self.coeffs.is_monic()
            && self.coeffs.coeffs()[..lam]
                .iter()
                .all(|c| ctx.reduce(c, 1).is_zero())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassFactorization {
    pub mu: u32,
    pub unit: LambdaElement,
    pub distinguished: DistinguishedPoly,
}

impl WeierstrassFactorization {
    pub fn lambda(&self) -> usize {
        self.distinguished.degree()
    }

    /// `p^μ · u · P` modulo `(p^N, X^M)`.
    pub fn reconstruct(&self) -> LambdaElement {
        let ctx = self.unit.ctx();
        let poly = LambdaElement::from_poly_truncated(ctx, &self.distinguished.coeffs)
            .truncate_precision(self.unit.min_precision());
        (&self.unit * &poly).scale_by_p_power(self.mu)
    }
}

/// Factors `f = p^μ · u · P` at working precision.
pub fn weierstrass_prepare(f: &LambdaElement) -> Result<WeierstrassFactorization> {
    let ctx = f.ctx();
    let n = ctx.precision();
    let m = ctx.truncation();
    let (mu, lambda) = invariants_checked(f)?;
    let p = BigInt::from(ctx.p());

    let working = f.min_precision() - mu;
    let g: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| ctx.reduce(&(c.residue() / ctx.pow(mu)), working))
        .collect();

    let (dist, unit) = if lambda == 0 {
        (IntPoly::one(), g)
    } else {
        hensel_split(&g, lambda, &p, working, ctx)
    };

    let mut unit_coeffs: Vec<PadicInt> = unit
        .into_iter()
        .map(|c| PadicInt::new(c, working, ctx))
        .collect();
    unit_coeffs.resize(m, PadicInt::new(0, working, ctx));
    let unit = LambdaElement::from_padics(ctx, unit_coeffs)?;

    // X^M mod P bounds how far the unknown tail can move P
    let tail = if lambda == 0 {
        n
    } else {
        power_residue_valuations(&dist, ctx)[m].0
    };
    // coefficients stay at working precision so that p^μ·u·P reproduces the
    // truncated input; `precision` is what is certified for the true factor
    let precision = working.min(tail);
    let coeffs = IntPoly::new(dist.coeffs().iter().map(|c| ctx.reduce(c, working)).collect());
    let coeffs = if coeffs.degree() == Some(lambda) {
        coeffs
    } else {
        let mut c = coeffs.coeffs().to_vec();
        c.resize(lambda + 1, BigInt::zero());
        c[lambda] = BigInt::from(1);
        IntPoly::new(c)
    };
    Ok(WeierstrassFactorization {
        mu,
        unit,
        distinguished: DistinguishedPoly { coeffs, precision },
    })
}

/// `(μ, λ)` of `f`.
pub fn iwasawa_invariants(f: &LambdaElement) -> Result<(u32, usize)> {
    invariants_checked(f)
}

fn invariants_checked(f: &LambdaElement) -> Result<(u32, usize)> {
    let ctx = f.ctx();
    let n = ctx.precision();
    let mu = match f.min_valuation() {
        Valuation::Infinity => {
            return Err(Error::IndistinguishableFromZero {
                precision: f.min_precision(),
            })
        }
        Valuation::Finite(v) => v,
    };
    if mu >= n {
        return Err(Error::PrecisionExhausted(format!("mu = {mu} >= N = {n}")));
    }
    let lambda = f
        .coeffs()
        .iter()
        .position(|c| c.valuation(ctx) == Valuation::Finite(mu))
        .expect("some coefficient attains the minimum");
    // coefficients before λ must be known to exceed μ, all others to reach it
    for (j, c) in f.coeffs().iter().enumerate() {
        let needed = if j < lambda { mu + 1 } else { mu };
        if c.known_precision() < needed {
            return Err(Error::PrecisionExhausted(format!(
                "coefficient of X^{j} known only modulo p^{}",
                c.known_precision()
            )));
        }
    }
    if f.min_precision() <= mu {
        return Err(Error::PrecisionExhausted(format!(
            "no digits left after removing p^{mu}"
        )));
    }
    Ok((mu, lambda))
}

/// Lifts `g ≡ X^λ·H_0 (mod p)` to `g ≡ P·H (mod p^W)`. Returns `(P, H)`.
fn hensel_split(
    g: &[BigInt],
    lambda: usize,
    p: &BigInt,
    working: u32,
    ctx: &PadicContext,
) -> (IntPoly, Vec<BigInt>) {
    let m = g.len();
    let modp = |x: &BigInt| ctx.reduce(x, 1);
    let h0: Vec<BigInt> = g[lambda..].iter().map(modp).collect();
    let h0_inv = inverse_mod_p_series(&h0, lambda, p, ctx);

    let mut dist: Vec<BigInt> = vec![BigInt::zero(); lambda + 1];
    dist[lambda] = BigInt::from(1);
    let mut h = h0.clone();
    for k in 1..working {
        let modulus = ctx.pow(k + 1);
        // e = (g - P·H) / p^k mod p
        let mut e: Vec<BigInt> = g.iter().map(|c| c % modulus).collect();
        for (i, a) in dist.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in h.iter().enumerate() {
                if i + j < m {
                    e[i + j] -= a * b;
                }
            }
        }
        let pk = ctx.pow(k);
        let e: Vec<BigInt> = e
            .iter()
            .map(|c| {
                let c = ctx.reduce(c, k + 1);
                debug_assert!(ctx.reduce(&c, k).is_zero());
                modp(&(c / pk))
            })
            .collect();
        // δP = e·H_0^{-1} mod (p, X^λ)
        let mut delta_p = vec![BigInt::zero(); lambda];
        for (i, ei) in e[..lambda].iter().enumerate() {
            if ei.is_zero() {
                continue;
            }
            for (j, inv) in h0_inv[..lambda - i].iter().enumerate() {
                delta_p[i + j] += ei * inv;
            }
        }
        let delta_p: Vec<BigInt> = delta_p.iter().map(modp).collect();
        // δH = (e - H_0·δP) / X^λ mod p
        let mut rest = e;
        for (i, a) in delta_p.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in h0.iter().enumerate() {
                if i + j < m {
                    rest[i + j] -= a * b;
                }
            }
        }
        debug_assert!(rest[..lambda].iter().all(|c| modp(c).is_zero()));
        for (i, dp) in delta_p.iter().enumerate() {
            dist[i] += dp * pk;
        }
        for (hi, r) in h.iter_mut().zip(&rest[lambda..]) {
            *hi += modp(r) * pk;
        }
    }
    let dist = IntPoly::new(dist.iter().map(|c| ctx.reduce(c, working)).collect());
    let h = h.iter().map(|c| ctx.reduce(c, working)).collect();
    (dist, h)
}

/// First `len` coefficients of `1/s` over `F_p`; `s(0)` must be nonzero mod `p`.
fn inverse_mod_p_series(s: &[BigInt], len: usize, p: &BigInt, ctx: &PadicContext) -> Vec<BigInt> {
    let inv0 = s[0].modinv(p).expect("unit constant term");
    let mut out: Vec<BigInt> = Vec::with_capacity(len);
    for k in 0..len {
        if k == 0 {
            out.push(inv0.clone());
            continue;
        }
        let mut acc = BigInt::zero();
        for j in 1..=k.min(s.len() - 1) {
            acc += &s[j] * &out[k - j];
        }
        out.push(ctx.reduce(&(-acc * &inv0), 1));
    }
    out
}

mod poly_strings {
    use num_bigint::BigInt;
    use serde::{de, Deserialize, Deserializer, Serializer};

    use crate::poly::IntPoly;

    pub fn serialize<S: Serializer>(p: &IntPoly, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(p.coeffs().iter().map(ToString::to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<IntPoly, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| s.trim().parse::<BigInt>().map_err(de::Error::custom))
            .collect::<Result<Vec<_>, _>>()
            .map(IntPoly::new)
    }
}

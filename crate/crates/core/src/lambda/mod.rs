//! Elements of `Λ = Z_p[[X]]` truncated modulo `(p^N, X^M)`.
//!
//! A [`LambdaElement`] stores exactly `M` coefficients, each a
//! [`PadicInt`] with its own known precision. Coefficients of `X^j` for
//! `j >= M` are unknown; routines whose output depends on them (division by
//! a distinguished polynomial, Weierstrass preparation) account for that in
//! the precision they report.

mod bezout;
mod cyclotomic;
mod division;
mod gcd;
mod iota;
mod weierstrass;

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::{padic_invert, PadicContext, PadicInt, Valuation};
use crate::poly::IntPoly;

pub use bezout::{bezout_pm, BezoutPm};
pub use cyclotomic::{
    cyclo_expand, cyclo_expand_poly, omega, omega_pm, omega_pm_poly, omega_poly, phi, phi_poly,
    Sign,
};
pub use division::{divide_by_distinguished, divide_by_phi, Division, DIVISIBILITY_GUARD};
pub use gcd::{cyclotomic_gcd, CyclotomicGcd};
pub use iota::iota;
pub use weierstrass::{
    iwasawa_invariants, weierstrass_prepare, DistinguishedPoly, WeierstrassFactorization,
};

/// An element of `Λ` modulo `(p^N, X^M)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaElement {
    ctx: PadicContext,
    coeffs: Vec<PadicInt>,
}

impl LambdaElement {
    /// Builds an element from at most `M` coefficients; missing high
    /// coefficients are exact zeros.
    pub fn from_padics(ctx: &PadicContext, mut coeffs: Vec<PadicInt>) -> Result<Self> {
        let m = ctx.truncation();
        if coeffs.len() > m {
            return Err(Error::TruncationOverflow {
                degree: coeffs.len() - 1,
                truncation: m,
            });
        }
        for c in &mut coeffs {
            *c = PadicInt::new(c.residue().clone(), c.known_precision(), ctx);
        }
        coeffs.resize(m, ctx.zero());
        Ok(LambdaElement {
            ctx: ctx.clone(),
            coeffs,
        })
    }

    /// Integer coefficients at full precision, truncated modulo `X^M`.
    pub fn from_ints<I>(ctx: &PadicContext, coeffs: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<BigInt>,
    {
        let mut v: Vec<PadicInt> = coeffs
            .into_iter()
            .take(ctx.truncation())
            .map(|c| ctx.int(c))
            .collect();
        v.resize(ctx.truncation(), ctx.zero());
        LambdaElement {
            ctx: ctx.clone(),
            coeffs: v,
        }
    }

    /// A polynomial that must fit entirely below `X^M`.
    pub fn from_poly(ctx: &PadicContext, poly: &IntPoly) -> Result<Self> {
        if let Some(d) = poly.degree() {
            if d >= ctx.truncation() {
                return Err(Error::TruncationOverflow {
                    degree: d,
                    truncation: ctx.truncation(),
                });
            }
        }
        Ok(Self::from_ints(ctx, poly.coeffs().iter().cloned()))
    }

    /// A polynomial reduced modulo `X^M`.
    pub fn from_poly_truncated(ctx: &PadicContext, poly: &IntPoly) -> Self {
        Self::from_ints(ctx, poly.coeffs().iter().cloned())
    }

    pub fn zero(ctx: &PadicContext) -> Self {
        Self::from_ints(ctx, std::iter::empty::<i64>())
    }

    pub fn one(ctx: &PadicContext) -> Self {
        Self::from_ints(ctx, [1])
    }

    /// The variable `X` (or `0` when `M = 1`).
    pub fn x(ctx: &PadicContext) -> Self {
        Self::from_ints(ctx, [0, 1])
    }

    pub fn ctx(&self) -> &PadicContext {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[PadicInt] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &PadicInt {
        &self.coeffs[j]
    }

    /// Smallest known precision over all coefficients.
    pub fn min_precision(&self) -> u32 {
        self.coeffs
            .iter()
            .map(PadicInt::known_precision)
            .min()
            .unwrap_or(0)
    }

    /// Residues as an integer polynomial (canonical representatives).
    pub fn to_poly(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c.residue().clone()).collect())
    }

    /// Minimum coefficient valuation; `Infinity` when every coefficient is
    /// indistinguishable from zero.
    pub fn min_valuation(&self) -> Valuation {
        self.coeffs
            .iter()
            .map(|c| c.valuation(&self.ctx))
            .min()
            .unwrap_or(Valuation::Infinity)
    }

    pub fn is_zero_at_precision(&self) -> bool {
        self.coeffs.iter().all(PadicInt::is_zero)
    }

    pub fn is_unit(&self) -> bool {
        self.coeffs[0].valuation(&self.ctx) == Valuation::Finite(0)
    }

    /// Coefficientwise congruence, each coefficient compared modulo the
    /// smaller of the two known precisions.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.ctx == other.ctx
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| a.agrees_with(b, &self.ctx))
    }

    /// Coefficientwise congruence modulo `p^prec`; fails if either side is
    /// known to less than `prec` digits anywhere.
    pub fn agrees_at(&self, other: &Self, prec: u32) -> bool {
        self.ctx == other.ctx
            && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| {
                a.known_precision() >= prec
                    && b.known_precision() >= prec
                    && self
                        .ctx
                        .reduce(&(a.residue() - b.residue()), prec)
                        .is_zero()
            })
    }

    /// Same element with every coefficient's precision lowered to at most `prec`.
    pub fn truncate_precision(&self, prec: u32) -> Self {
        self.map(|c, ctx| c.truncate(prec, ctx))
    }

    /// `p^k · self`.
    pub fn scale_by_p_power(&self, k: u32) -> Self {
        self.map(|c, ctx| c.shift_up(k, ctx))
    }

    /// Exact division by `p^k`; every residue must be divisible.
    pub fn divide_by_p_power(&self, k: u32) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.shift_down(k, &self.ctx))
            .collect::<Result<Vec<_>>>()?;
        Ok(LambdaElement {
            ctx: self.ctx.clone(),
            coeffs,
        })
    }

    pub fn scale(&self, k: &PadicInt) -> Self {
        self.map(|c, ctx| c.mul(k, ctx))
    }

    /// Multiplicative inverse of a unit, modulo `X^M`.
    pub fn invert(&self) -> Result<Self> {
        let ctx = &self.ctx;
        let inv0 = padic_invert(&self.coeffs[0], ctx)?;
        let m = ctx.truncation();
        let mut out: Vec<PadicInt> = Vec::with_capacity(m);
        out.push(inv0.clone());
        for k in 1..m {
            let mut acc = ctx.zero();
            for j in 1..=k {
                acc = acc.add(&self.coeffs[j].mul(&out[k - j], ctx), ctx);
            }
            out.push(acc.mul(&inv0, ctx).neg(ctx));
        }
        Ok(LambdaElement {
            ctx: ctx.clone(),
            coeffs: out,
        })
    }

    fn map(&self, f: impl Fn(&PadicInt, &PadicContext) -> PadicInt) -> Self {
        LambdaElement {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| f(c, &self.ctx)).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&PadicInt, &PadicInt, &PadicContext) -> PadicInt) -> Self {
        assert_eq!(self.ctx, other.ctx, "LambdaElement contexts differ");
        LambdaElement {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b, &self.ctx))
                .collect(),
        }
    }

    fn mul_truncated(&self, other: &Self) -> Self {
        assert_eq!(self.ctx, other.ctx, "LambdaElement contexts differ");
        let ctx = &self.ctx;
        let n = ctx.precision();
        let m = ctx.truncation();
        let va: Vec<u32> = self.coeffs.iter().map(|c| c.capped_valuation(ctx)).collect();
        let vb: Vec<u32> = other.coeffs.iter().map(|c| c.capped_valuation(ctx)).collect();
        let mut sums = vec![BigInt::zero(); m];
        let mut precs = vec![n; m];
        for (i, a) in self.coeffs.iter().enumerate() {
            let pa = a.known_precision();
            // exact zeros contribute nothing, not even precision loss
            if pa == n && a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..m - i].iter().enumerate() {
                let pb = b.known_precision();
                if pb == n && b.is_zero() {
                    continue;
                }
                let k = i + j;
                let pk = (pa + vb[j]).min(pb + va[i]);
                if pk < precs[k] {
                    precs[k] = pk;
                }
                if !a.is_zero() && !b.is_zero() {
                    sums[k] += a.residue() * b.residue();
                }
            }
        }
        let coeffs = sums
            .into_iter()
            .zip(precs)
            .map(|(s, pk)| PadicInt::new(s, pk, ctx))
            .collect();
        LambdaElement {
            ctx: ctx.clone(),
            coeffs,
        }
    }
}

impl Add for &LambdaElement {
    type Output = LambdaElement;

    fn add(self, rhs: &LambdaElement) -> LambdaElement {
        self.zip_with(rhs, |a, b, ctx| a.add(b, ctx))
    }
}

impl Sub for &LambdaElement {
    type Output = LambdaElement;

    fn sub(self, rhs: &LambdaElement) -> LambdaElement {
        self.zip_with(rhs, |a, b, ctx| a.sub(b, ctx))
    }
}

impl Neg for &LambdaElement {
    type Output = LambdaElement;

    fn neg(self) -> LambdaElement {
        self.map(|c, ctx| c.neg(ctx))
    }
}

impl Mul for &LambdaElement {
    type Output = LambdaElement;

    /// Truncated product. Panics if the contexts differ.
    fn mul(self, rhs: &LambdaElement) -> LambdaElement {
        self.mul_truncated(rhs)
    }
}

/// On-disk form: `{"p", "N", "M", "coeffs": [decimal strings]}` with an
/// optional per-coefficient `prec` list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaFile {
    #[serde(default = "crate::io::schema_version")]
    pub schema_version: u32,
    pub p: u64,
    #[serde(rename = "N")]
    pub precision: u32,
    #[serde(rename = "M")]
    pub truncation: usize,
    pub coeffs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prec: Option<Vec<u32>>,
}

impl LambdaFile {
    pub fn from_element(f: &LambdaElement) -> Self {
        let ctx = f.ctx();
        let full = f.coeffs.iter().all(|c| c.known_precision() == ctx.precision());
        LambdaFile {
            schema_version: crate::io::SCHEMA_VERSION,
            p: ctx.p(),
            precision: ctx.precision(),
            truncation: ctx.truncation(),
            coeffs: f.coeffs.iter().map(|c| c.residue().to_string()).collect(),
            prec: (!full).then(|| f.coeffs.iter().map(PadicInt::known_precision).collect()),
        }
    }

    /// Coefficient lists shorter than `M` are padded with exact zeros;
    /// longer ones are truncated.
    pub fn to_element(&self) -> Result<LambdaElement> {
        if self.schema_version != crate::io::SCHEMA_VERSION {
            return Err(crate::error::ValidationError::SchemaVersion(self.schema_version).into());
        }
        let ctx = PadicContext::new(self.p, self.precision, self.truncation)?;
        if let Some(prec) = &self.prec {
            if prec.len() != self.coeffs.len() {
                return Err(Error::Schema(format!(
                    "prec has {} entries but coeffs has {}",
                    prec.len(),
                    self.coeffs.len()
                )));
            }
        }
        let mut coeffs = Vec::with_capacity(ctx.truncation());
        for (j, s) in self.coeffs.iter().take(ctx.truncation()).enumerate() {
            let value: BigInt = s
                .trim()
                .parse()
                .map_err(|e| Error::Schema(format!("coefficient {j} ({s:?}): {e}")))?;
            let prec = self
                .prec
                .as_ref()
                .map_or(ctx.precision(), |p| p[j]);
            coeffs.push(PadicInt::new(value, prec, &ctx));
        }
        LambdaElement::from_padics(&ctx, coeffs)
    }
}

impl Serialize for LambdaElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LambdaFile::from_element(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LambdaElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        LambdaFile::deserialize(d)?
            .to_element()
            .map_err(serde::de::Error::custom)
    }
}

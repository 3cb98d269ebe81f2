//! Fixed-precision p-adic integers.
//!
//! A [`PadicInt`] is a residue modulo `p^k` for some `k <= N`, where `N` is
//! the working precision of its [`PadicContext`]. The precision travels with
//! the value: sums keep the smaller precision, products gain from the
//! valuation of the other factor, and exact division by `p^j` gives up `j`
//! digits.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default coefficient precision (work modulo `p^20`).
pub const DEFAULT_PRECISION: u32 = 20;
/// Default series truncation (work modulo `X^200`).
pub const DEFAULT_TRUNCATION: usize = 200;

/// An odd prime together with the truncation pair `(p^N, X^M)`.
#[derive(Clone)]
pub struct PadicContext {
    p: u64,
    precision: u32,
    truncation: usize,
    powers: Arc<[BigInt]>,
}

impl PadicContext {
    pub fn new(p: u64, precision: u32, truncation: usize) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidContext(format!("{p} is not an odd prime")));
        }
        if precision == 0 {
            return Err(Error::InvalidContext("precision N must be at least 1".into()));
        }
        if truncation == 0 {
            return Err(Error::InvalidContext("truncation M must be at least 1".into()));
        }
        let base = BigInt::from(p);
        let mut powers = Vec::with_capacity(precision as usize + 1);
        let mut acc = BigInt::one();
        for _ in 0..=precision {
            powers.push(acc.clone());
            acc *= &base;
        }
        Ok(PadicContext {
            p,
            precision,
            truncation,
            powers: powers.into(),
        })
    }

    /// Context with the default truncation pair `(p^20, X^200)`.
    pub fn with_defaults(p: u64) -> Result<Self> {
        Self::new(p, DEFAULT_PRECISION, DEFAULT_TRUNCATION)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Coefficient precision `N`.
    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Series truncation degree `M`.
    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Same prime and precision, different truncation.
    pub fn with_truncation(&self, truncation: usize) -> Result<Self> {
        Self::new(self.p, self.precision, truncation)
    }

    /// `p^k` for `k <= N`.
    pub fn pow(&self, k: u32) -> &BigInt {
        &self.powers[k.min(self.precision) as usize]
    }

    /// `p^N`.
    pub fn modulus(&self) -> &BigInt {
        self.pow(self.precision)
    }

    /// Canonical representative of `x` modulo `p^k`.
    pub fn reduce(&self, x: &BigInt, k: u32) -> BigInt {
        x.mod_floor(self.pow(k))
    }

    /// Exact p-adic valuation of a nonzero integer; `None` for zero.
    pub fn valuation_of(&self, x: &BigInt) -> Option<u32> {
        if x.is_zero() {
            return None;
        }
        let p = BigInt::from(self.p);
        let mut v = 0;
        let mut y = x.clone();
        loop {
            let (q, r) = y.div_rem(&p);
            if !r.is_zero() {
                return Some(v);
            }
            v += 1;
            y = q;
        }
    }

    pub fn int(&self, value: impl Into<BigInt>) -> PadicInt {
        PadicInt::new(value, self.precision, self)
    }

    pub fn zero(&self) -> PadicInt {
        PadicInt {
            residue: BigInt::zero(),
            prec: self.precision,
        }
    }

    pub fn one(&self) -> PadicInt {
        self.int(1)
    }
}

impl PartialEq for PadicContext {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.precision == other.precision
            && self.truncation == other.truncation
    }
}

impl Eq for PadicContext {}

impl fmt::Debug for PadicContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PadicContext")
            .field("p", &self.p)
            .field("N", &self.precision)
            .field("M", &self.truncation)
            .finish()
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Euler's totient of `p^n`.
pub fn totient_prime_power(p: u64, n: u32) -> u64 {
    if n == 0 {
        1
    } else {
        (p - 1) * p.pow(n - 1)
    }
}

/// p-adic valuation of a truncated value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    /// Indistinguishable from zero at the known precision.
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinity)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => f.write_str("Infinity"),
        }
    }
}

/// A p-adic integer known modulo `p^prec`.
///
/// The residue is always stored reduced into `[0, p^prec)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PadicInt {
    #[serde(with = "decimal")]
    residue: BigInt,
    prec: u32,
}

impl PadicInt {
    /// `value` known modulo `p^prec` (clamped to the context precision).
    pub fn new(value: impl Into<BigInt>, prec: u32, ctx: &PadicContext) -> Self {
        let prec = prec.min(ctx.precision());
        PadicInt {
            residue: ctx.reduce(&value.into(), prec),
            prec,
        }
    }

    /// A value about which nothing is known.
    pub fn unknown() -> Self {
        PadicInt {
            residue: BigInt::zero(),
            prec: 0,
        }
    }

    pub fn residue(&self) -> &BigInt {
        &self.residue
    }

    pub fn known_precision(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    /// Largest `v <= prec` with `p^v | residue`; `Infinity` if the residue is zero.
    pub fn valuation(&self, ctx: &PadicContext) -> Valuation {
        match ctx.valuation_of(&self.residue) {
            Some(v) => Valuation::Finite(v),
            None => Valuation::Infinity,
        }
    }

    /// Valuation capped at the known precision; what products may rely on.
    pub(crate) fn capped_valuation(&self, ctx: &PadicContext) -> u32 {
        ctx.valuation_of(&self.residue)
            .map_or(self.prec, |v| v.min(self.prec))
    }

    pub fn add(&self, other: &PadicInt, ctx: &PadicContext) -> PadicInt {
        let prec = self.prec.min(other.prec);
        PadicInt {
            residue: ctx.reduce(&(&self.residue + &other.residue), prec),
            prec,
        }
    }

    pub fn sub(&self, other: &PadicInt, ctx: &PadicContext) -> PadicInt {
        let prec = self.prec.min(other.prec);
        PadicInt {
            residue: ctx.reduce(&(&self.residue - &other.residue), prec),
            prec,
        }
    }

    pub fn neg(&self, ctx: &PadicContext) -> PadicInt {
        PadicInt {
            residue: ctx.reduce(&(-&self.residue), self.prec),
            prec: self.prec,
        }
    }

    pub fn mul(&self, other: &PadicInt, ctx: &PadicContext) -> PadicInt {
        let prec = (self.prec + other.capped_valuation(ctx))
            .min(other.prec + self.capped_valuation(ctx))
            .min(ctx.precision());
        PadicInt {
            residue: ctx.reduce(&(&self.residue * &other.residue), prec),
            prec,
        }
    }

    /// `p^k · self`, gaining `k` digits of precision.
    pub fn shift_up(&self, k: u32, ctx: &PadicContext) -> PadicInt {
        let prec = (self.prec + k).min(ctx.precision());
        PadicInt {
            residue: ctx.reduce(&(&self.residue * ctx.pow(k)), prec),
            prec,
        }
    }

    /// Exact division by `p^k`, losing `k` digits. Fails if `p^k` does not
    /// divide the residue.
    pub fn shift_down(&self, k: u32, ctx: &PadicContext) -> Result<PadicInt> {
        if k > self.prec {
            return Ok(PadicInt::unknown());
        }
        let (q, r) = self.residue.div_rem(ctx.pow(k));
        if !r.is_zero() {
            return Err(Error::NotDivisible(format!(
                "residue {} is not divisible by {}^{k}",
                self.residue,
                ctx.p()
            )));
        }
        Ok(PadicInt {
            residue: q,
            prec: self.prec - k,
        })
    }

    /// Same value with precision lowered to `prec`.
    pub fn truncate(&self, prec: u32, ctx: &PadicContext) -> PadicInt {
        let prec = prec.min(self.prec);
        PadicInt {
            residue: ctx.reduce(&self.residue, prec),
            prec,
        }
    }

    /// Congruence modulo the smaller of the two precisions.
    pub fn agrees_with(&self, other: &PadicInt, ctx: &PadicContext) -> bool {
        let prec = self.prec.min(other.prec);
        ctx.reduce(&(&self.residue - &other.residue), prec).is_zero()
    }
}

/// Valuation of `a`. Zero at the known precision reports `Infinity`.
pub fn padic_valuation(a: &PadicInt, ctx: &PadicContext) -> Valuation {
    a.valuation(ctx)
}

/// Inverse of a unit modulo `p^{known_precision}`.
pub fn padic_invert(a: &PadicInt, ctx: &PadicContext) -> Result<PadicInt> {
    match a.valuation(ctx) {
        Valuation::Finite(0) => {}
        Valuation::Finite(v) => return Err(Error::NotAUnit { valuation: v }),
        Valuation::Infinity => {
            return Err(Error::NotAUnit {
                valuation: a.prec,
            })
        }
    }
    let modulus = ctx.pow(a.prec);
    let egcd = a.residue.extended_gcd(modulus);
    debug_assert!(egcd.gcd.is_one());
    Ok(PadicInt {
        residue: egcd.x.mod_floor(modulus),
        prec: a.prec,
    })
}

/// Serde adapter writing big integers as decimal strings.
pub(crate) mod decimal {
    use num_bigint::BigInt;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.trim().parse().map_err(de::Error::custom)
    }
}

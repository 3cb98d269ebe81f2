//! Exact descriptors for ideals of the form `(∏ Φ_n^{a_n})`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::padic::totient_prime_power;

/// The ideal `(∏_n Φ_n^{a_n})`, with `Φ_0 = X`. The empty map is the unit
/// ideal. Zero exponents are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CyclotomicProduct {
    #[serde(deserialize_with = "deserialize_exponents")]
    exponents: BTreeMap<u32, u32>,
}

fn deserialize_exponents<'de, D>(d: D) -> std::result::Result<BTreeMap<u32, u32>, D::Error>
where
    D: serde::Deserializer<'de>,
{
    let raw = BTreeMap::<u32, u32>::deserialize(d)?;
    Ok(raw.into_iter().filter(|&(_, a)| a > 0).collect())
}

impl CyclotomicProduct {
    pub fn unit() -> Self {
        Self::default()
    }

    /// `Φ_n^a`.
    pub fn phi_power(n: u32, a: u32) -> Self {
        Self::from_exponents([(n, a)])
    }

    pub fn from_exponents(pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut exponents = BTreeMap::new();
        for (n, a) in pairs {
            if a > 0 {
                *exponents.entry(n).or_insert(0) += a;
            }
        }
        CyclotomicProduct { exponents }
    }

    pub fn exponents(&self) -> &BTreeMap<u32, u32> {
        &self.exponents
    }

    pub fn exponent(&self, n: u32) -> u32 {
        self.exponents.get(&n).copied().unwrap_or(0)
    }

    pub fn is_unit(&self) -> bool {
        self.exponents.is_empty()
    }

    /// `Some((n, a))` when the ideal is a single `Φ_n^a`.
    pub fn as_single(&self) -> Option<(u32, u32)> {
        match self.exponents.len() {
            1 => self.exponents.iter().next().map(|(&n, &a)| (n, a)),
            _ => None,
        }
    }

    /// Degree of the generator `∏ Φ_n^{a_n}`, i.e. `Σ a_n·φ(p^n)`.
    pub fn degree(&self, p: u64) -> u64 {
        self.exponents
            .iter()
            .map(|(&n, &a)| u64::from(a) * totient_prime_power(p, n))
            .sum()
    }

    /// Entrywise minimum.
    pub fn gcd(&self, other: &Self) -> Self {
        Self::from_exponents(
            self.exponents
                .iter()
                .map(|(&n, &a)| (n, a.min(other.exponent(n)))),
        )
    }

    /// Entrywise sum.
    pub fn mul(&self, other: &Self) -> Self {
        Self::from_exponents(
            self.exponents
                .iter()
                .chain(other.exponents.iter())
                .map(|(&n, &a)| (n, a)),
        )
    }

    /// Whether `self` divides `other` (entrywise `<=`).
    pub fn divides(&self, other: &Self) -> bool {
        self.exponents.iter().all(|(&n, &a)| a <= other.exponent(n))
    }

    /// `self / divisor`, defined when `divisor` divides `self`.
    pub fn quotient(&self, divisor: &Self) -> Result<Self> {
        if !divisor.divides(self) {
            return Err(Error::NotDivisible(format!("{divisor} does not divide {self}")));
        }
        Ok(Self::from_exponents(
            self.exponents
                .iter()
                .map(|(&n, &a)| (n, a - divisor.exponent(n))),
        ))
    }
}

/// Free-function forms of the lattice operations.
pub fn cyclo_gcd(a: &CyclotomicProduct, b: &CyclotomicProduct) -> CyclotomicProduct {
    a.gcd(b)
}

pub fn cyclo_mul(a: &CyclotomicProduct, b: &CyclotomicProduct) -> CyclotomicProduct {
    a.mul(b)
}

pub fn cyclo_divides(a: &CyclotomicProduct, b: &CyclotomicProduct) -> bool {
    a.divides(b)
}

impl fmt::Display for CyclotomicProduct {
    /// `X^a * Phi_n^b * ...` in increasing `n`; the unit ideal prints as `(1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return f.write_str("(1)");
        }
        for (i, (&n, &a)) in self.exponents.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            if n == 0 {
                write!(f, "X^{a}")?;
            } else {
                write!(f, "Phi_{n}^{a}")?;
            }
        }
        Ok(())
    }
}

//! Finitely generated `Λ`-modules in normal form `Λ^r ⊕ ⊕_i Λ/(f_i)`.
//!
//! Modules are handled purely through their invariant data. Each cyclic
//! summand is described by a [`CyclotomicProduct`]; the shape-restricted
//! operations below additionally require a summand to be a single `Φ_c`
//! (or `Φ_c^a`) and reject anything else with `UnsupportedShape`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cyclo::CyclotomicProduct;
use crate::error::{Error, Result};
use crate::lambda::{cyclo_expand, divide_by_phi, iota, omega_poly, phi_poly};
use crate::padic::{totient_prime_power, PadicContext};
use crate::poly::resultant;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementaryModule {
    pub free_rank: u64,
    pub factors: Vec<CyclotomicProduct>,
}

/// `n ↦ number of Λ/Φ_n summands`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiplicityMap(pub BTreeMap<u32, u64>);

impl MultiplicityMap {
    pub fn get(&self, n: u32) -> u64 {
        self.0.get(&n).copied().unwrap_or(0)
    }

    /// Drops zero entries so equal maps compare equal.
    pub fn normalized(&self) -> Self {
        MultiplicityMap(self.0.iter().filter(|(_, &v)| v > 0).map(|(&k, &v)| (k, v)).collect())
    }
}

impl ElementaryModule {
    /// Rejects empty-product (trivial) factors.
    pub fn new(free_rank: u64, factors: Vec<CyclotomicProduct>) -> Result<Self> {
        if factors.iter().any(CyclotomicProduct::is_unit) {
            return Err(Error::UnsupportedShape("trivial factor Λ/(1)".into()));
        }
        Ok(ElementaryModule { free_rank, factors })
    }

    /// Torsion module `⊕_n (Λ/Φ_n)^{s_n}`.
    pub fn from_multiplicities(s: &MultiplicityMap) -> Self {
        let factors = s
            .0
            .iter()
            .flat_map(|(&n, &k)| std::iter::repeat_n(CyclotomicProduct::phi_power(n, 1), k as usize))
            .collect();
        ElementaryModule { free_rank: 0, factors }
    }

    /// Counts of `Λ/Φ_n` summands (factors of other shapes are ignored).
    pub fn multiplicities(&self) -> MultiplicityMap {
        let mut map = BTreeMap::new();
        for f in &self.factors {
            if let Some((n, 1)) = f.as_single() {
                *map.entry(n).or_insert(0) += 1;
            }
        }
        MultiplicityMap(map)
    }

    fn sorted(mut self) -> Self {
        self.factors.sort();
        self
    }
}

/// Keeps exactly the summands `Λ/Φ_c` with `c <= n`.
pub fn truncate_at_level(m: &ElementaryModule, n: u32) -> Result<ElementaryModule> {
    if m.free_rank != 0 {
        return Err(Error::UnsupportedShape(format!(
            "free rank {} in level truncation",
            m.free_rank
        )));
    }
    let mut kept = Vec::new();
    for f in &m.factors {
        match f.as_single() {
            Some((c, 1)) => {
                if c <= n {
                    kept.push(f.clone());
                }
            }
            _ => {
                return Err(Error::UnsupportedShape(format!(
                    "factor Λ/({f}) is not a single Φ_c"
                )))
            }
        }
    }
    Ok(ElementaryModule {
        free_rank: 0,
        factors: kept,
    })
}

/// Replaces every factor ideal `(f)` by `(f^ι)`. Each `(Φ_n)` is ι-stable,
/// so on descriptors this is the identity (factors come back sorted).
pub fn tate_dual_form(m: &ElementaryModule) -> ElementaryModule {
    m.clone().sorted()
}

/// Checks numerically that every factor ideal is ι-stable: `ι(Φ_n)` is
/// divisible by `Φ_n` for each `n` in each factor, with a unit quotient.
pub fn verify_iota_stable(m: &ElementaryModule, ctx: &PadicContext) -> Result<bool> {
    let mut seen = std::collections::BTreeSet::new();
    for f in &m.factors {
        seen.extend(f.exponents().keys().copied());
    }
    for n in seen {
        let phi = cyclo_expand(&CyclotomicProduct::phi_power(n, 1), ctx)?;
        let (q, divisible) = divide_by_phi(&iota(&phi), n)?;
        if !divisible || !q.is_unit() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Order of the coinvariants `(Λ/Φ_c)_{Γ_n} = Λ/(Φ_c, ω_n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoinvariantOrder {
    /// `p^exponent`.
    Finite { p: u64, exponent: u64 },
    Infinite,
}

impl CoinvariantOrder {
    pub fn value(&self) -> Option<BigInt> {
        match *self {
            CoinvariantOrder::Finite { p, exponent } => {
                Some(BigInt::from(p).pow(u32::try_from(exponent).expect("exponent fits in u32")))
            }
            CoinvariantOrder::Infinite => None,
        }
    }
}

impl std::fmt::Display for CoinvariantOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("Infinite"),
        }
    }
}

/// `|Λ/(Φ_c, ω_n)|`: infinite when `c <= n`, else `p^{v_p(Res(Φ_c, ω_n))}`.
pub fn coinvariant_order(c: u32, n: u32, ctx: &PadicContext) -> CoinvariantOrder {
    if c <= n {
        return CoinvariantOrder::Infinite;
    }
    let p = ctx.p();
    let res = resultant(&phi_poly(p, c), &omega_poly(p, n));
    let exponent = ctx.valuation_of(&res).expect("coprime for c > n");
    CoinvariantOrder::Finite {
        p,
        exponent: u64::from(exponent),
    }
}

/// `Σ a_c·φ(p^c)` over the summands `Λ/Φ_c^a` with `c <= n`.
pub fn corank_growth(m: &ElementaryModule, n: u32, p: u64) -> Result<u64> {
    let mut total = 0;
    for f in &m.factors {
        match f.as_single() {
            Some((c, a)) => {
                if c <= n {
                    total += u64::from(a) * totient_prime_power(p, c);
                }
            }
            None => {
                return Err(Error::UnsupportedShape(format!(
                    "factor Λ/({f}) is not a power of a single Φ_c"
                )))
            }
        }
    }
    Ok(total)
}

/// Product of all factor ideals of a torsion module.
pub fn char_ideal(m: &ElementaryModule) -> Result<CyclotomicProduct> {
    if m.free_rank > 0 {
        return Err(Error::NotTorsion(m.free_rank));
    }
    Ok(m.factors
        .iter()
        .fold(CyclotomicProduct::unit(), |acc, f| acc.mul(f)))
}

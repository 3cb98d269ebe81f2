//! Rank-jump combinatorics over the cyclotomic `Z_p`-extension of `Q`.
//!
//! A [`RankProfile`] records the normalized jumps
//! `e_n = (rank E(Q_n) - rank E(Q_{n-1})) / φ(p^n)`. From it come the
//! fine Mordell–Weil multiplicities `s_n = max(0, e_n - 1)`, the plus/minus
//! multiplicities `r_n^±`, and the two characteristic-ideal formulas:
//!
//! * fine: `∏_{e_n > 0} Φ_n^{e_n - 1}`
//! * plus/minus gcd: `X^{e_0} · ∏_{n > 0, e_n > 0} Φ_n^{e_n - 1}`

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cyclo::CyclotomicProduct;
use crate::error::{Error, Result, ValidationError};
use crate::lambda::{cyclotomic_gcd, LambdaElement, DIVISIBILITY_GUARD};
use crate::module::MultiplicityMap;
use crate::padic::{is_prime, totient_prime_power};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    RawRanks,
    Direct,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankProfile {
    pub p: u64,
    pub e: Vec<u64>,
    pub provenance: Provenance,
}

fn check_prime(p: u64) -> Result<(), ValidationError> {
    if p < 3 || !is_prime(p) {
        return Err(ValidationError::InvalidPrime(p as i64));
    }
    Ok(())
}

impl RankProfile {
    /// A profile given directly by its jumps.
    pub fn direct(p: u64, e: &[i64]) -> Result<Self, ValidationError> {
        check_prime(p)?;
        let e = e
            .iter()
            .enumerate()
            .map(|(level, &value)| {
                u64::try_from(value).map_err(|_| ValidationError::NegativeJump { level, value })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RankProfile {
            p,
            e,
            provenance: Provenance::Direct,
        })
    }

    /// Highest level `N` of the profile.
    pub fn top_level(&self) -> usize {
        self.e.len().saturating_sub(1)
    }

    pub fn validate(&self) -> Result<(), ValidationError> {
        check_prime(self.p)
    }
}

/// `e_0 = rank_0`, `e_n = (rank_n - rank_{n-1}) / φ(p^n)`.
pub fn profile_from_ranks(p: u64, ranks: &[i64]) -> Result<RankProfile, ValidationError> {
    check_prime(p)?;
    if ranks.is_empty() {
        return Err(ValidationError::EmptyRanks);
    }
    let mut e = Vec::with_capacity(ranks.len());
    let mut previous = 0i64;
    for (level, &rank) in ranks.iter().enumerate() {
        if rank < 0 {
            return Err(ValidationError::NegativeRank { level, rank });
        }
        if rank < previous {
            return Err(ValidationError::DecreasingRank {
                level,
                previous,
                current: rank,
            });
        }
        let jump = rank - previous;
        let totient = totient_prime_power(p, level as u32);
        if jump as u64 % totient != 0 {
            return Err(ValidationError::NonIntegralJump { level, jump, totient });
        }
        e.push(jump as u64 / totient);
        previous = rank;
    }
    Ok(RankProfile {
        p,
        e,
        provenance: Provenance::RawRanks,
    })
}

/// `rank E(Q_n) = Σ_{m <= n} e_m·φ(p^m)`.
pub fn mordell_weil_rank(profile: &RankProfile, n: usize) -> Result<u64, ValidationError> {
    if n >= profile.e.len() {
        return Err(ValidationError::LevelOutOfRange {
            level: n,
            len: profile.e.len(),
        });
    }
    Ok(profile.e[..=n]
        .iter()
        .enumerate()
        .map(|(m, &e)| e * totient_prime_power(profile.p, m as u32))
        .sum())
}

/// `s_n = max(0, e_n - 1)` at every level (zeros included).
pub fn s_from_e(profile: &RankProfile) -> MultiplicityMap {
    MultiplicityMap(
        profile
            .e
            .iter()
            .enumerate()
            .map(|(n, &e)| (n as u32, e.saturating_sub(1)))
            .collect(),
    )
}

/// `∏_{e_n > 0} Φ_n^{e_n - 1}`.
pub fn fine_char_ideal(profile: &RankProfile) -> CyclotomicProduct {
    CyclotomicProduct::from_exponents(
        profile
            .e
            .iter()
            .enumerate()
            .map(|(n, &e)| (n as u32, exponent(e.saturating_sub(1)))),
    )
}

/// `X^{e_0} · ∏_{n > 0, e_n > 0} Φ_n^{e_n - 1}`.
pub fn pm_gcd_char(profile: &RankProfile) -> CyclotomicProduct {
    CyclotomicProduct::from_exponents(profile.e.iter().enumerate().map(|(n, &e)| {
        let a = if n == 0 { e } else { e.saturating_sub(1) };
        (n as u32, exponent(a))
    }))
}

fn exponent(a: u64) -> u32 {
    u32::try_from(a).expect("exponent fits in u32")
}

/// Plus/minus multiplicities. For `n > 0` with `e_n > 0` only the unordered
/// pair `{e_n - 1, e_n}` is determined; the stored assignment puts the
/// larger value on the plus side and sets `ambiguous[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PMMultiplicities {
    pub r_plus: Vec<u64>,
    pub r_minus: Vec<u64>,
    pub ambiguous: Vec<bool>,
}

impl PMMultiplicities {
    /// Indices whose sign attribution is undetermined.
    pub fn ambiguous_levels(&self) -> Vec<usize> {
        self.ambiguous
            .iter()
            .enumerate()
            .filter_map(|(n, &a)| a.then_some(n))
            .collect()
    }

    /// Every assignment compatible with the unordered pairs: `2^k` of them
    /// for `k` ambiguous levels, in a fixed order.
    pub fn resolutions(&self) -> Vec<(Vec<u64>, Vec<u64>)> {
        let levels = self.ambiguous_levels();
        assert!(levels.len() < 32, "too many ambiguous levels to enumerate");
        (0u64..1 << levels.len())
            .map(|mask| {
                let mut plus = self.r_plus.clone();
                let mut minus = self.r_minus.clone();
                for (bit, &n) in levels.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        std::mem::swap(&mut plus[n], &mut minus[n]);
                    }
                }
                (plus, minus)
            })
            .collect()
    }

    /// `∏ Φ_n^{r_n}` for one side.
    pub fn char_of(r: &[u64]) -> CyclotomicProduct {
        CyclotomicProduct::from_exponents(r.iter().enumerate().map(|(n, &a)| (n as u32, exponent(a))))
    }
}

/// Fills `r_0^± = e_0` and, for `n > 0`, the pair `(e_n, e_n - 1)` (or
/// `(0, 0)` when `e_n = 0`).
pub fn pm_multiplicities(profile: &RankProfile) -> PMMultiplicities {
    let len = profile.e.len();
    let mut out = PMMultiplicities {
        r_plus: vec![0; len],
        r_minus: vec![0; len],
        ambiguous: vec![false; len],
    };
    for (n, &e) in profile.e.iter().enumerate() {
        if n == 0 {
            out.r_plus[0] = e;
            out.r_minus[0] = e;
        } else if e > 0 {
            out.r_plus[n] = e;
            out.r_minus[n] = e - 1;
            out.ambiguous[n] = true;
        }
    }
    out
}

/// `sel0_char / fine_char_ideal(profile)`: the part of the fine Selmer
/// characteristic ideal not explained by Mordell–Weil growth.
pub fn greenberg_residual(
    sel0_char: &CyclotomicProduct,
    profile: &RankProfile,
) -> Result<CyclotomicProduct> {
    sel0_char.quotient(&fine_char_ideal(profile))
}

/// One row of a prediction-vs-observation table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub n: u32,
    pub expected: u32,
    pub observed: u32,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Outcome of comparing `gcd(L_p^+, L_p^-)` with the plus/minus prediction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KpReport {
    pub n_max: u32,
    pub expected: CyclotomicProduct,
    pub observed: CyclotomicProduct,
    pub comparisons: Vec<Comparison>,
    pub mu_plus: u32,
    pub mu_minus: u32,
}

impl KpReport {
    pub fn all_match(&self) -> bool {
        self.comparisons.iter().all(|c| c.matches)
    }

    pub fn mismatched_levels(&self) -> Vec<u32> {
        self.comparisons
            .iter()
            .filter(|c| !c.matches)
            .map(|c| c.n)
            .collect()
    }
}

/// Largest `n` with `φ(p^n) <= M/(g+1)`, `g` the divisibility guard.
///
/// `X^M mod Φ_n` has valuation about `M/φ(p^n)`, which caps the precision
/// of any remainder; below `g+1` digits divisibility cannot be decided.
pub fn default_n_max(p: u64, truncation: usize) -> u32 {
    let room = truncation as u64 / (u64::from(DIVISIBILITY_GUARD) + 1);
    let mut n = 0;
    while totient_prime_power(p, n + 1) <= room {
        n += 1;
    }
    n
}

/// Compares the Φ-exponents of `gcd(L_p^+, L_p^-)` with
/// [`pm_gcd_char`] at every level `n <= n_max`.
pub fn kurihara_pollack_check(
    lp_plus: &LambdaElement,
    lp_minus: &LambdaElement,
    profile: &RankProfile,
    n_max: Option<u32>,
) -> Result<KpReport> {
    let ctx = lp_plus.ctx();
    if ctx != lp_minus.ctx() {
        return Err(Error::ContextMismatch("L_p^+ and L_p^- contexts differ".into()));
    }
    if ctx.p() != profile.p {
        return Err(Error::ContextMismatch(format!(
            "L-function prime {} but profile prime {}",
            ctx.p(),
            profile.p
        )));
    }
    let n_max = n_max.unwrap_or_else(|| default_n_max(ctx.p(), ctx.truncation()));
    let gcd = cyclotomic_gcd(lp_plus, lp_minus, n_max)?;
    let prediction = pm_gcd_char(profile);
    let comparisons: Vec<Comparison> = (0..=n_max)
        .map(|n| {
            let expected = prediction.exponent(n);
            let observed = gcd.common.exponent(n);
            Comparison {
                n,
                expected,
                observed,
                matches: expected == observed,
            }
        })
        .collect();
    let expected = CyclotomicProduct::from_exponents(
        prediction.exponents().iter().filter(|(&n, _)| n <= n_max).map(|(&n, &a)| (n, a)),
    );
    Ok(KpReport {
        n_max,
        expected,
        observed: gcd.common,
        comparisons,
        mu_plus: gcd.mu_f,
        mu_minus: gcd.mu_g,
    })
}

/// Multiplicities keyed by level, for display.
pub fn as_level_map(v: &[u64]) -> BTreeMap<u32, u64> {
    v.iter().enumerate().map(|(n, &x)| (n as u32, x)).collect()
}

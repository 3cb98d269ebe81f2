use serde::{Deserialize, Serialize};

use super::{divide_by_phi, LambdaElement};
use crate::cyclo::CyclotomicProduct;
use crate::error::{Error, Result};
use crate::padic::{totient_prime_power, Valuation};

/// The `(p-power, Φ-product)` part of `gcd(f, g)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicGcd {
    pub common: CyclotomicProduct,
    pub mu_common: u32,
    pub f_part: CyclotomicProduct,
    pub g_part: CyclotomicProduct,
    pub mu_f: u32,
    pub mu_g: u32,
}

/// Multiplicities of `Φ_0, …, Φ_{n_max}` in `f` and `g`, and their minimum.
///
/// Exact whenever both inputs are a p-power times a unit times Φ-powers of
/// index at most `n_max`; for other inputs only the Φ-part is reported.
pub fn cyclotomic_gcd(f: &LambdaElement, g: &LambdaElement, n_max: u32) -> Result<CyclotomicGcd> {
    let (mu_f, f_part) = phi_part(f, n_max)?;
    let (mu_g, g_part) = phi_part(g, n_max)?;
    Ok(CyclotomicGcd {
        common: f_part.gcd(&g_part),
        mu_common: mu_f.min(mu_g),
        f_part,
        g_part,
        mu_f,
        mu_g,
    })
}

fn phi_part(f: &LambdaElement, n_max: u32) -> Result<(u32, CyclotomicProduct)> {
    let ctx = f.ctx();
    let mu = match f.min_valuation() {
        Valuation::Finite(v) => v,
        Valuation::Infinity => {
            return Err(Error::IndistinguishableFromZero {
                precision: f.min_precision(),
            })
        }
    };
    let stripped = f.divide_by_p_power(mu)?;
    let mut exponents = Vec::new();
    for n in 0..=n_max {
        let degree = totient_prime_power(ctx.p(), n) as usize;
        let bound = ctx.truncation() / degree;
        let mut count = 0u32;
        let mut current = stripped.clone();
        loop {
            let (q, divisible) = divide_by_phi(&current, n)?;
            if !divisible {
                break;
            }
            count += 1;
            if count as usize > bound {
                return Err(Error::PrecisionExhausted(format!(
                    "Φ_{n} divides more than {bound} times; input vanishes at precision"
                )));
            }
            current = q;
        }
        exponents.push((n, count));
    }
    Ok((mu, CyclotomicProduct::from_exponents(exponents)))
}

#![allow(dead_code)]

use itk_core::{LambdaElement, PadicContext};
use num_bigint::BigInt;
use proptest::prelude::*;

pub fn ctx(p: u64, n: u32, m: usize) -> PadicContext {
    PadicContext::new(p, n, m).unwrap()
}

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

/// Coefficient vectors of length `len` with entries in `0..p^n`.
pub fn coeff_vec(p: u64, n: u32, len: usize) -> impl Strategy<Value = Vec<BigInt>> {
    let modulus = (p as u128).pow(n);
    prop::collection::vec(0..modulus, len).prop_map(|v| v.into_iter().map(BigInt::from).collect())
}

pub fn element(ctx: &PadicContext, coeffs: &[BigInt]) -> LambdaElement {
    LambdaElement::from_ints(ctx, coeffs.iter().cloned())
}

/// An element whose reduction mod p is nonzero somewhere in the first
/// `len` coefficients, forced at index `unit_at`.
pub fn unit_somewhere(p: u64, n: u32, len: usize) -> impl Strategy<Value = Vec<BigInt>> {
    (coeff_vec(p, n, len), 0..len.min(6), 1..p).prop_map(move |(mut v, at, r)| {
        let pb = BigInt::from(p);
        for c in v.iter_mut().take(at) {
            *c = &*c * &pb % BigInt::from(p).pow(n);
        }
        v[at] = &v[at] - (&v[at] % &pb) + BigInt::from(r);
        v
    })
}

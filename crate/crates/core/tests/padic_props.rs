mod common;

use common::{big, ctx};
use itk_core::padic::{padic_invert, padic_valuation, totient_prime_power};
use itk_core::{Error, PadicInt, Valuation};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

#[test]
fn invalid_contexts() {
    assert!(itk_core::PadicContext::new(2, 20, 10).is_err());
    assert!(itk_core::PadicContext::new(9, 20, 10).is_err());
    assert!(itk_core::PadicContext::new(3, 0, 10).is_err());
    assert!(itk_core::PadicContext::new(3, 5, 0).is_err());
}

#[test]
fn precision_loss_on_shift_down() {
    let c = ctx(3, 10, 4);
    let x = PadicInt::new(27 * 5, 10, &c);
    let y = x.shift_down(3, &c).unwrap();
    assert_eq!(y.residue(), &big(5));
    assert_eq!(y.known_precision(), 7);
    assert!(matches!(x.shift_down(4, &c), Err(Error::NotDivisible(_))));
}

#[test]
fn totient_values() {
    assert_eq!(totient_prime_power(3, 0), 1);
    assert_eq!(totient_prime_power(3, 3), 18);
    assert_eq!(totient_prime_power(5, 2), 20);
}

proptest! {
    #[test]
    fn arithmetic_matches_integers(a in any::<i64>(), b in any::<i64>(), p in prop::sample::select(vec![3u64, 5, 7])) {
        let c = ctx(p, 12, 4);
        let m = BigInt::from(p).pow(12);
        let (x, y) = (c.int(a), c.int(b));
        prop_assert_eq!(x.add(&y, &c).residue().clone(), (big(a) + big(b)).mod_floor(&m));
        prop_assert_eq!(x.sub(&y, &c).residue().clone(), (big(a) - big(b)).mod_floor(&m));
        prop_assert_eq!(x.mul(&y, &c).residue().clone(), (big(a) * big(b)).mod_floor(&m));
    }

    #[test]
    fn inverse_is_involution(a in 1i64..1_000_000, p in prop::sample::select(vec![3u64, 5, 11])) {
        prop_assume!(a % p as i64 != 0);
        let c = ctx(p, 15, 4);
        let x = c.int(a);
        let inv = padic_invert(&x, &c).unwrap();
        prop_assert_eq!(x.mul(&inv, &c), c.one());
        prop_assert_eq!(padic_invert(&inv, &c).unwrap(), x);
    }

    #[test]
    fn valuation_is_additive(a in 1i64..100_000, b in 1i64..100_000) {
        let c = ctx(3, 20, 4);
        let (x, y) = (c.int(a), c.int(b));
        let (va, vb) = (padic_valuation(&x, &c), padic_valuation(&y, &c));
        let prod = padic_valuation(&x.mul(&y, &c), &c);
        match (va, vb) {
            (Valuation::Finite(u), Valuation::Finite(v)) if u + v < 20 => {
                prop_assert_eq!(prod, Valuation::Finite(u + v))
            }
            _ => {}
        }
    }

    #[test]
    fn non_units_rejected(a in 1i64..10_000) {
        let c = ctx(5, 8, 4);
        let x = c.int(a * 5);
        let rejected = matches!(padic_invert(&x, &c), Err(Error::NotAUnit { .. }));
        prop_assert!(rejected);
    }

    #[test]
    fn json_round_trip(a in any::<i64>(), prec in 1u32..=20) {
        let c = ctx(3, 20, 4);
        let x = PadicInt::new(a, prec, &c);
        let s = serde_json::to_string(&x).unwrap();
        let back: PadicInt = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, x);
    }
}

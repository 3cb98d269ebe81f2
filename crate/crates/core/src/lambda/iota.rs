use num_bigint::BigInt;
use num_traits::Zero;

use super::LambdaElement;
use crate::padic::PadicInt;

/// The involution `γ ↦ γ^{-1}`: substitutes `X ↦ (1+X)^{-1} - 1 = -X/(1+X)`.
///
/// Evaluated by Horner's rule; multiplying by `-X/(1+X)` costs one running
/// alternating sum and a shift. Coefficient `k` of the result depends only
/// on coefficients `0..=k` of `f`, so it inherits their smallest precision.
pub fn iota(f: &LambdaElement) -> LambdaElement {
    let ctx = f.ctx();
    let n = ctx.precision();
    let m = ctx.truncation();
    let mut acc = vec![BigInt::zero(); m];
    for c in f.coeffs().iter().rev() {
        // acc ← -X · acc / (1 + X) + c
        let mut running = BigInt::zero();
        for a in acc.iter_mut() {
            running = ctx.reduce(&(&*a - &running), n);
            *a = running.clone();
        }
        acc.rotate_right(1);
        acc[0] = c.residue().clone();
        for a in acc[1..].iter_mut() {
            *a = ctx.reduce(&-&*a, n);
        }
    }
    let mut prefix = n;
    let coeffs = acc
        .into_iter()
        .zip(f.coeffs())
        .map(|(a, c)| {
            prefix = prefix.min(c.known_precision());
            PadicInt::new(a, prefix, ctx)
        })
        .collect();
    LambdaElement::from_padics(ctx, coeffs).expect("length M")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda::{divide_by_phi, phi};
    use crate::padic::PadicContext;

    #[test]
    fn iota_of_x_is_alternating() {
        let c = PadicContext::new(5, 6, 8).unwrap();
        let got = iota(&LambdaElement::x(&c));
        let want = LambdaElement::from_ints(&c, [0, -1, 1, -1, 1, -1, 1, -1]);
        assert_eq!(got, want);
    }

    #[test]
    fn constants_fixed() {
        let c = PadicContext::new(3, 6, 8).unwrap();
        let one = LambdaElement::one(&c);
        assert_eq!(iota(&one), one);
    }

    #[test]
    fn involution() {
        let c = PadicContext::new(3, 8, 16).unwrap();
        let f = LambdaElement::from_ints(&c, [4, 1, 7, 0, 2, 9, 11]);
        assert_eq!(iota(&iota(&f)), f);
    }

    #[test]
    fn phi_ideal_is_stable() {
        let c = PadicContext::with_defaults(3).unwrap();
        let (q, ok) = divide_by_phi(&iota(&phi(1, &c).unwrap()), 1).unwrap();
        assert!(ok);
        assert!(q.is_unit());
    }
}

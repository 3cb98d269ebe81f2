//! Exact polynomials over `Z` (and, internally, over `Q`).
//!
//! Everything the toolkit can do exactly (cyclotomic families, resultants,
//! Bezout cofactors) happens here before anything is reduced modulo `p^N`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense polynomial with integer coefficients, lowest degree first.
///
/// Trailing zero coefficients are never stored, so the zero polynomial has
/// an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `X^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPoly { coeffs }
    }

    /// `(1 + X)^k` by binomial coefficients.
    pub fn one_plus_x_pow(k: usize) -> Self {
        let mut coeffs = Vec::with_capacity(k + 1);
        let mut c = BigInt::one();
        coeffs.push(c.clone());
        for j in 1..=k {
            c = c * BigInt::from(k + 1 - j) / BigInt::from(j);
            coeffs.push(c.clone());
        }
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `X^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, k: u32) -> IntPoly {
        (0..k).fold(IntPoly::one(), |acc, _| &acc * self)
    }

    /// Division with remainder by a monic polynomial. Returns `None` when the
    /// divisor is not monic.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> Option<(IntPoly, IntPoly)> {
        if !divisor.is_monic() {
            return None;
        }
        let d = divisor.degree().unwrap();
        if self.coeffs.len() <= d {
            return Some((IntPoly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = std::mem::take(&mut rem[i]);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs[..d].iter().enumerate() {
                rem[i - d + j] -= &c * dc;
            }
            quot[i - d] = c;
        }
        rem.truncate(d);
        Some((IntPoly::new(quot), IntPoly::new(rem)))
    }

    /// Exact quotient by a monic divisor, or `None` if the remainder is nonzero.
    pub fn exact_div_monic(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.div_rem_monic(divisor)?;
        r.is_zero().then_some(q)
    }

    pub(crate) fn to_rational(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl fmt::Display for IntPoly {
    /// Highest degree first, e.g. `X^2 + 3X + 3` or `-X - 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("X")?,
                _ => write!(f, "X^{i}")?,
            }
        }
        Ok(())
    }
}

/// Dense polynomial over `Q`. Internal to the exact routines.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    fn one() -> Self {
        RatPoly::new(vec![BigRational::one()])
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn leading(&self) -> &BigRational {
        self.coeffs.last().expect("nonzero polynomial")
    }

    fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    fn sub(&self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }

    fn mul(&self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    fn scale(&self, k: &BigRational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        let d = divisor.degree().expect("division by zero polynomial");
        if self.coeffs.len() <= d {
            return (RatPoly::zero(), self.clone());
        }
        let lead_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = std::mem::replace(&mut rem[i], BigRational::zero()) * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for j in 0..d {
                rem[i - d + j] -= &c * &divisor.coeffs[j];
            }
            quot[i - d] = c;
        }
        rem.truncate(d);
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    /// Common denominator of all coefficients (1 for the zero polynomial).
    fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// `k · self` as an integer polynomial; `k` must clear every denominator.
    fn clear(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| {
                    let v = c * BigRational::from_integer(k.clone());
                    debug_assert!(v.is_integer());
                    v.to_integer()
                })
                .collect(),
        )
    }
}

/// Resultant of two integer polynomials, by the Euclidean remainder sequence
/// over `Q`.
///
/// Uses `Res(a, b) = (-1)^{deg a·deg b} lc(b)^{deg a - deg r} Res(b, r)` with
/// `r = a mod b`, and `Res(a, c) = c^{deg a}` for a constant `c`.
pub fn resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    let r = rat_resultant(a.to_rational(), b.to_rational());
    debug_assert!(r.is_integer());
    r.to_integer()
}

fn rat_resultant(a: RatPoly, b: RatPoly) -> BigRational {
    let mut a = a;
    let mut b = b;
    let mut acc = BigRational::one();
    loop {
        let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
        if db == 0 {
            return acc * pow_rat(b.leading(), da);
        }
        if da == 0 {
            return acc * pow_rat(a.leading(), db);
        }
        let (_, r) = a.div_rem(&b);
        if r.is_zero() {
            return BigRational::zero();
        }
        let dr = r.degree().unwrap();
        if (da * db) % 2 == 1 {
            acc = -acc;
        }
        acc *= pow_rat(b.leading(), da - dr);
        a = b;
        b = r;
    }
}

fn pow_rat(x: &BigRational, k: usize) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, _| acc * x)
}

/// Bezout cofactors over `Q`: returns `(s, t)` with `s·a + t·b = 1`,
/// `deg s < deg b` and `deg t < deg a`, or `None` if `a` and `b` share a
/// factor.
pub(crate) fn rational_bezout(a: &IntPoly, b: &IntPoly) -> Option<(RatPoly, RatPoly)> {
    let (mut r0, mut r1) = (a.to_rational(), b.to_rational());
    let (mut s0, mut s1) = (RatPoly::one(), RatPoly::zero());
    let (mut t0, mut t1) = (RatPoly::zero(), RatPoly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s = s0.sub(&q.mul(&s1));
        let t = t0.sub(&q.mul(&t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    // r0 is the gcd; coprime means it is a nonzero constant
    if r0.degree() != Some(0) {
        return None;
    }
    let inv = r0.leading().recip();
    Some((s0.scale(&inv), t0.scale(&inv)))
}

/// Integer Bezout data: `s·a + t·b = 1` over `Q` with the least common
/// denominator `D` of `s` and `t`, and the cleared integer cofactors
/// `D·s`, `D·t`.
pub(crate) struct ClearedBezout {
    pub rational: (RatPoly, RatPoly),
    pub denominator: BigInt,
}

impl ClearedBezout {
    pub fn new(a: &IntPoly, b: &IntPoly) -> Option<Self> {
        let (s, t) = rational_bezout(a, b)?;
        let denominator = s.denominator_lcm().lcm(&t.denominator_lcm());
        Some(ClearedBezout {
            rational: (s, t),
            denominator,
        })
    }

    /// Cofactors scaled by `k`, which must be a multiple of the denominator.
    pub fn scaled(&self, k: &BigInt) -> (IntPoly, IntPoly) {
        debug_assert!(k.is_multiple_of(&self.denominator));
        (self.rational.0.clear(k), self.rational.1.clear(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn normalizes_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
    }

    #[test]
    fn binomial_expansion() {
        assert_eq!(IntPoly::one_plus_x_pow(3), p(&[1, 3, 3, 1]));
        assert_eq!(IntPoly::one_plus_x_pow(0), p(&[1]));
    }

    #[test]
    fn monic_division() {
        // X^3 + 3X^2 + 3X = X (X^2 + 3X + 3)
        let (q, r) = p(&[0, 3, 3, 1]).div_rem_monic(&p(&[3, 3, 1])).unwrap();
        assert_eq!(q, p(&[0, 1]));
        assert!(r.is_zero());
        let (q, r) = p(&[1, 0, 1]).div_rem_monic(&p(&[1, 1])).unwrap();
        assert_eq!(q, p(&[-1, 1]));
        assert_eq!(r, p(&[2]));
        assert!(p(&[1, 2]).div_rem_monic(&p(&[1, 2])).is_none());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[3, 3, 1]).to_string(), "X^2 + 3X + 3");
        assert_eq!(p(&[-3, -1]).to_string(), "-X - 3");
        assert_eq!(p(&[1]).to_string(), "1");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn small_resultants() {
        // Res(X^2 + 3X + 3, X) = 3
        assert_eq!(resultant(&p(&[3, 3, 1]), &p(&[0, 1])), BigInt::from(3));
        // Res(X - 2, X - 5) = (2 - 5) = -3
        assert_eq!(resultant(&p(&[-2, 1]), &p(&[-5, 1])), BigInt::from(-3));
        // shared root
        assert_eq!(resultant(&p(&[-2, 1]), &p(&[4, -4, 1])), BigInt::zero());
        // Res(X^2 + 1, 3) = 9
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[3])), BigInt::from(9));
    }

    #[test]
    fn bezout_over_q() {
        let a = p(&[3, 3, 1]);
        let b = p(&[0, 1]);
        let cb = ClearedBezout::new(&a, &b).unwrap();
        assert_eq!(cb.denominator, BigInt::from(3));
        let (s, t) = cb.scaled(&BigInt::from(3));
        assert_eq!(s, p(&[1]));
        assert_eq!(t, p(&[-3, -1]));
        assert!(ClearedBezout::new(&p(&[0, 1]), &p(&[0, 2, 1])).is_none());
    }
}

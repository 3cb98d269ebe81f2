//! Slow, obviously-correct reference computations for the test suites.
//!
//! Nothing here shares code with `itk-core`. Polynomials are plain
//! coefficient vectors, lowest degree first, with trailing zeros trimmed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Poly = Vec<BigInt>;

pub fn trim(mut f: Poly) -> Poly {
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    f
}

pub fn from_i64s(c: &[i64]) -> Poly {
    trim(c.iter().map(|&x| BigInt::from(x)).collect())
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> Poly {
    let n = a.len().max(b.len());
    let get = |f: &[BigInt], i: usize| f.get(i).cloned().unwrap_or_default();
    trim((0..n).map(|i| get(a, i) + get(b, i)).collect())
}

pub fn product<'a>(fs: impl IntoIterator<Item = &'a Poly>) -> Poly {
    fs.into_iter().fold(vec![BigInt::one()], |acc, f| mul(&acc, f))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c
}

/// `(1+X)^k`, straight from the binomial theorem.
pub fn one_plus_x_pow(k: u64) -> Poly {
    (0..=k).map(|i| binomial(k, i)).collect()
}

/// `ω_n = (1+X)^{p^n} - 1`.
pub fn omega(p: u64, n: u32) -> Poly {
    let mut f = one_plus_x_pow(p.pow(n));
    f[0] -= 1;
    trim(f)
}

/// `Φ_n = Σ_{k<p} (1+X)^{k p^{n-1}}`, with `Φ_0 = X`.
pub fn phi(p: u64, n: u32) -> Poly {
    if n == 0 {
        return from_i64s(&[0, 1]);
    }
    let step = p.pow(n - 1);
    (0..p).fold(Vec::new(), |acc, k| add(&acc, &one_plus_x_pow(k * step)))
}

/// Product of `Φ_m` over `m <= n` with `m` of the given parity
/// (`even = true` includes `Φ_0`).
pub fn omega_parity(p: u64, n: u32, even: bool) -> Poly {
    let fs: Vec<Poly> = (0..=n).filter(|m| (m % 2 == 0) == even).map(|m| phi(p, m)).collect();
    product(&fs)
}

/// Fraction-free Gaussian elimination.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// `Res(a, b)` as the determinant of the Sylvester matrix.
pub fn sylvester_resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let (a, b) = (trim(a.to_vec()), trim(b.to_vec()));
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let (da, db) = (a.len() - 1, b.len() - 1);
    let size = da + db;
    if size == 0 {
        return BigInt::one();
    }
    let mut rows = Vec::with_capacity(size);
    for (f, shifts, d) in [(&a, db, da), (&b, da, db)] {
        for s in 0..shifts {
            let mut row = vec![BigInt::zero(); size];
            for (i, c) in f.iter().rev().enumerate() {
                row[s + i] = c.clone();
            }
            debug_assert!(s + d < size);
            rows.push(row);
        }
    }
    bareiss_det(rows)
}

/// Remainder of `f` modulo the monic `g`.
pub fn rem_monic(f: &[BigInt], g: &[BigInt]) -> Poly {
    let d = g.len() - 1;
    assert!(g[d].is_one(), "divisor must be monic");
    let mut r = f.to_vec();
    while r.len() > d {
        let lead = r.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let shift = r.len() - d;
        for (i, c) in g[..d].iter().enumerate() {
            r[shift + i] -= &lead * c;
        }
    }
    trim(r)
}

/// Matrix of `x ↦ f·x` on `Z[X]/(g)` in the basis `1, X, …, X^{d-1}`;
/// column `i` is `X^i·f mod g`.
pub fn multiplication_matrix(f: &[BigInt], g: &[BigInt]) -> Vec<Vec<BigInt>> {
    let d = g.len() - 1;
    let mut m = vec![vec![BigInt::zero(); d]; d];
    let mut col = rem_monic(f, g);
    for i in 0..d {
        for (r, c) in col.iter().enumerate() {
            m[r][i] = c.clone();
        }
        let mut shifted = vec![BigInt::zero()];
        shifted.extend(col);
        col = rem_monic(&shifted, g);
    }
    m
}

/// Exponent of `p` in `x`; `None` for zero.
pub fn vp(x: &BigInt, p: u64) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    while (&x % &p).is_zero() {
        x /= &p;
        v += 1;
    }
    Some(v)
}

/// Smith normal form over `Z/p^k`: the `p`-adic valuations of the invariant
/// factors, with `k` standing for "zero modulo p^k". Pivoting on an entry
/// of least valuation keeps all operations unimodular over `Z_p`.
pub fn smith_valuations_mod(m: &[Vec<BigInt>], p: u64, k: u32) -> Vec<u32> {
    let modulus = BigInt::from(p).pow(k);
    let val = |x: &BigInt| vp(x, p).map_or(k, |v| v.min(k));
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|x| x.mod_floor(&modulus)).collect())
        .collect();
    let n = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for t in 0..n.min(cols) {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                let v = val(x);
                if best.is_none_or(|(b, _, _)| v < b) {
                    best = Some((v, i, j));
                }
            }
        }
        let (v, i, j) = best.expect("non-empty block");
        if v >= k {
            out.extend(std::iter::repeat_n(k, n.min(cols) - t));
            break;
        }
        a.swap(t, i);
        for row in a.iter_mut() {
            row.swap(t, j);
        }
        // pivot = p^v * unit
        let pv = BigInt::from(p).pow(v);
        let unit = (&a[t][t] / &pv).mod_floor(&modulus);
        let inv = mod_inverse(&unit, &modulus);
        for r in t + 1..n {
            if a[r][t].is_zero() {
                continue;
            }
            let factor = (&a[r][t] / &pv * &inv).mod_floor(&modulus);
            for c in t..cols {
                let v = (&a[r][c] - &factor * &a[t][c]).mod_floor(&modulus);
                a[r][c] = v;
            }
        }
        for c in t + 1..cols {
            if a[t][c].is_zero() {
                continue;
            }
            let factor = (&a[t][c] / &pv * &inv).mod_floor(&modulus);
            for r in t..n {
                let v = (&a[r][c] - &factor * &a[r][t]).mod_floor(&modulus);
                a[r][c] = v;
            }
        }
        out.push(v);
    }
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let g = a.extended_gcd(m);
    assert!(g.gcd.is_one(), "not invertible");
    g.x.mod_floor(m)
}

/// Truncated product in `(Z/p^N)[X]/(X^M)`.
pub fn series_mul_mod(a: &[BigInt], b: &[BigInt], modulus: &BigInt, m: usize) -> Poly {
    let mut out = vec![BigInt::zero(); m];
    for (i, x) in a.iter().enumerate().take(m) {
        for (j, y) in b.iter().enumerate().take(m - i) {
            out[i + j] += x * y;
        }
    }
    out.into_iter().map(|x| x.mod_floor(modulus)).collect()
}

//! Integer and multiplicative-function kernels, plus principal-branch
//! complex helpers.
//!
//! Everything here is exact: factorization is deterministic (trial division,
//! then Miller-Rabin with a proven base set and Brent's rho for 64-bit
//! composites), and the Kronecker symbol uses the standard reciprocity
//! recursion. All operations are pure and reentrant.

use num_complex::Complex;

use crate::scalar::{Cx, Scalar};
use crate::{Error, Result};

/// Prime factorization of a positive 64-bit integer.
///
/// Invariants: the primes are strictly increasing, exponents are >= 1, and
/// the product of `p^e` reassembles `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub n: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn tau0(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| (e as u64) + 1).product()
    }

    pub fn mobius(&self) -> i64 {
        if self.factors.iter().any(|&(_, e)| e >= 2) {
            0
        } else if self.factors.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn euler_phi(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| p.pow(e - 1) * (p - 1))
            .product()
    }

    /// All divisors, in no particular order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for &(p, e) in &self.factors {
            let prev = out.clone();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                out.extend(prev.iter().map(|d| d * pk));
            }
        }
        out
    }

    /// Largest `a` with `a^2 | n`, and the squarefree part `b = n / a^2`.
    pub fn square_split(&self) -> (u64, u64) {
        let mut a = 1u64;
        let mut b = 1u64;
        for &(p, e) in &self.factors {
            a *= p.pow(e / 2);
            if e % 2 == 1 {
                b *= p;
            }
        }
        (a, b)
    }
}

/// m = D * l^2 with D a fundamental discriminant (or 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiscriminantSplit {
    pub m: i64,
    pub d: i64,
    pub l: u64,
}

// ---------------------------------------------------------------------------
// gcd / modular arithmetic
// ---------------------------------------------------------------------------

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended gcd: returns (g, x, y) with a*x + b*y = g.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i64, 0i64);
    let (mut y0, mut y1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    (r0, x0, y0)
}

/// Inverse of a mod m, when gcd(a, m) = 1.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, x, _) = ext_gcd((a % m) as i64, m as i64);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i64) as u64)
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

// ---------------------------------------------------------------------------
// primality / factorization
// ---------------------------------------------------------------------------

/// Deterministic Miller-Rabin for u64 (base set proven for n < 3.3e24).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho; n must be odd composite, not a prime power
/// trap is fine since callers retry with a different increment.
fn pollard_brent(n: u64, c: u64) -> u64 {
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
    let mut q = 1u64;
    let mut count = 0u32;
    while d == 1 {
        x = f(x);
        y = f(f(y));
        let diff = x.abs_diff(y);
        if diff == 0 {
            return 0; // cycle without factor; caller retries
        }
        q = mul_mod(q, diff, n);
        count += 1;
        if count % 64 == 0 {
            d = gcd(q, n);
        }
    }
    if d == n {
        0
    } else {
        d
    }
}

fn factor_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let mut c = 1u64;
    loop {
        let d = pollard_brent(n, c);
        if d != 0 && d != n {
            factor_into(d, out);
            factor_into(n / d, out);
            return;
        }
        c += 1;
    }
}

/// Factor a positive integer. `n = 0` is rejected.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let mut rest = n;
    let mut primes: Vec<u64> = Vec::new();
    for p in [2u64, 3, 5] {
        while rest % p == 0 {
            rest /= p;
            primes.push(p);
        }
    }
    // wheel over 6k±1 up to 1e6
    let mut p = 7u64;
    let mut step = 4u64;
    while p <= 1_000_000 && p * p <= rest {
        while rest % p == 0 {
            rest /= p;
            primes.push(p);
        }
        p += step;
        step = 6 - step;
    }
    if rest > 1 {
        if rest < 1_000_000_000_000 && !is_prime(rest) && rest.isqrt() * rest.isqrt() == rest {
            // perfect squares of mid-size primes show up in discriminant work
            let r = rest.isqrt();
            primes.push(r);
            primes.push(r);
        } else {
            factor_into(rest, &mut primes);
        }
    }
    primes.sort_unstable();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for q in primes {
        match factors.last_mut() {
            Some((fp, e)) if *fp == q => *e += 1,
            _ => factors.push((q, 1)),
        }
    }
    Ok(Factorization { n, factors })
}

pub fn mobius(n: u64) -> Result<i64> {
    Ok(factorize(n)?.mobius())
}

pub fn tau0(n: u64) -> Result<u64> {
    Ok(factorize(n)?.tau0())
}

pub fn euler_phi(n: u64) -> Result<u64> {
    Ok(factorize(n)?.euler_phi())
}

// ---------------------------------------------------------------------------
// smallest-prime-factor sieve for batch work
// ---------------------------------------------------------------------------

/// Linear sieve of smallest prime factors up to a limit.
pub struct Sieve {
    spf: Vec<u32>,
}

impl Sieve {
    pub fn new(limit: usize) -> Self {
        let mut spf = vec![0u32; limit + 1];
        let mut primes: Vec<u32> = Vec::new();
        for i in 2..=limit {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            for &p in &primes {
                let ip = i * p as usize;
                if p > spf[i] || ip > limit {
                    break;
                }
                spf[ip] = p;
            }
        }
        Self { spf }
    }

    pub fn limit(&self) -> usize {
        self.spf.len() - 1
    }

    pub fn factorize(&self, n: u64) -> Factorization {
        debug_assert!(n >= 1 && (n as usize) <= self.limit());
        let mut rest = n as usize;
        let mut factors: Vec<(u64, u32)> = Vec::new();
        while rest > 1 {
            let p = self.spf[rest] as usize;
            let mut e = 0u32;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            factors.push((p as u64, e));
        }
        factors.sort_unstable();
        Factorization { n, factors }
    }

    pub fn tau0(&self, n: u64) -> u64 {
        self.factorize(n).tau0()
    }

    pub fn mobius(&self, n: u64) -> i64 {
        self.factorize(n).mobius()
    }
}

// ---------------------------------------------------------------------------
// Kronecker symbol and discriminants
// ---------------------------------------------------------------------------

/// Kronecker symbol (a|n) for arbitrary integers.
pub fn kronecker_symbol(a: i64, n: i64) -> i64 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut a = a;
    let mut n = n;
    let mut sign = 1i64;
    if n < 0 {
        n = -n;
        if a < 0 {
            sign = -sign;
        }
    }
    let mut v = 0u32;
    while n % 2 == 0 {
        n /= 2;
        v += 1;
    }
    if v > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if v % 2 == 1 {
            let r = a.rem_euclid(8);
            if r == 3 || r == 5 {
                sign = -sign;
            }
        }
    }
    // Jacobi symbol (a|n), n odd positive.
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Is `d` a fundamental discriminant? (1 qualifies, housing the trivial
/// character.)
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 {
        return false;
    }
    let squarefree = |m: i64| {
        factorize(m.unsigned_abs())
            .map(|f| f.factors.iter().all(|&(_, e)| e == 1))
            .unwrap_or(false)
    };
    match d.rem_euclid(4) {
        1 => d == 1 || squarefree(d),
        0 => {
            let k = d / 4;
            let r = k.rem_euclid(4);
            (r == 2 || r == 3) && squarefree(k)
        }
        _ => false,
    }
}

/// The primitive real character chi_D(n) = (D|n); D must be fundamental or 1.
pub fn kronecker(d: i64, n: i64) -> Result<i64> {
    if !is_fundamental_discriminant(d) {
        return Err(Error::NonFundamental(d));
    }
    Ok(kronecker_symbol(d, n))
}

/// Split m = D * l^2, D fundamental. Requires m != 0 and m = 0,1 mod 4;
/// for m = 2,3 mod 4 the attached L-series vanishes identically and the
/// split is rejected.
pub fn split_discriminant(m: i64) -> Result<DiscriminantSplit> {
    if m == 0 {
        return Err(Error::ZeroArgument);
    }
    let r = m.rem_euclid(4);
    if r == 2 || r == 3 {
        return Err(Error::NotADiscriminant(m));
    }
    let f = factorize(m.unsigned_abs())?;
    let (a, b) = f.square_split();
    let kernel = if m < 0 { -(b as i64) } else { b as i64 };
    if kernel.rem_euclid(4) == 1 {
        Ok(DiscriminantSplit { m, d: kernel, l: a })
    } else {
        debug_assert!(a % 2 == 0, "m = 0,1 mod 4 forces an even square part here");
        Ok(DiscriminantSplit { m, d: 4 * kernel, l: a / 2 })
    }
}

// ---------------------------------------------------------------------------
// square roots modulo prime powers (used by the fast Kloosterman path and
// the fast rho path)
// ---------------------------------------------------------------------------

/// Legendre symbol via Euler's criterion; p an odd prime, result in {-1,0,1}.
pub fn legendre(a: u64, p: u64) -> i64 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    let e = pow_mod(a, (p - 1) / 2, p);
    if e == 1 {
        1
    } else {
        -1
    }
}

/// Tonelli-Shanks: square root of a modulo an odd prime p, if one exists.
pub fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if legendre(a, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    // write p-1 = q * 2^s
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2u64;
    while legendre(z, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Square root of a modulo p^e for odd prime p with p not dividing a
/// (Hensel lift).
pub fn sqrt_mod_odd_prime_power(a: u64, p: u64, e: u32) -> Option<u64> {
    let pe = p.pow(e);
    let a = a % pe;
    debug_assert!(a % p != 0);
    let mut r = sqrt_mod_prime(a % p, p)?;
    let mut pk = p;
    for _ in 1..e {
        let pk_next = pk * p;
        // r' = r - (r^2 - a) / (2r) mod pk_next
        let r2 = mul_mod(r, r, pk_next);
        let diff = (r2 + pk_next - a % pk_next) % pk_next;
        let inv2r = mod_inverse(2 * r % pk_next, pk_next)?;
        r = (r + pk_next - mul_mod(diff, inv2r, pk_next)) % pk_next;
        pk = pk_next;
    }
    debug_assert_eq!(mul_mod(r, r, pe), a % pe);
    Some(r)
}

// ---------------------------------------------------------------------------
// principal-branch complex helpers
// ---------------------------------------------------------------------------

/// Principal logarithm, arg in (-pi, pi]. z = 0 rejected.
pub fn principal_log<S: Scalar>(z: Cx<S>) -> Result<Cx<S>> {
    if z.re.is_zero() && z.im.is_zero() {
        return Err(Error::ZeroArgument);
    }
    Ok(Complex::new(z.norm().ln(), z.im.atan2(z.re)))
}

/// exp(w * Log z) with the principal branch. z = 0 rejected.
pub fn principal_pow<S: Scalar>(z: Cx<S>, w: Cx<S>) -> Result<Cx<S>> {
    Ok((w * principal_log(z)?).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(1).unwrap().factors, vec![]);
        assert_eq!(factorize(12).unwrap().factors, vec![(2, 2), (3, 1)]);
        // trial-division oracle confirms 999983 prime
        let n = 999_983u64;
        let mut d = 2;
        let mut prime = true;
        while d * d <= n {
            if n % d == 0 {
                prime = false;
                break;
            }
            d += 1;
        }
        assert!(prime);
        assert_eq!(factorize(n).unwrap().factors, vec![(n, 1)]);
        assert!(factorize(0).is_err());
    }

    #[test]
    fn factorize_large_semiprime() {
        let p = 1_000_003u64;
        let q = 998_244_353u64;
        let f = factorize(p * q).unwrap();
        assert_eq!(f.factors, vec![(p, 1), (q, 1)]);
    }

    #[test]
    fn multiplicative_function_values() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(tau0(1).unwrap(), 1);
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(mobius(12).unwrap(), 0);
        assert_eq!(tau0(12).unwrap(), 6);
        assert_eq!(euler_phi(3).unwrap(), 2);
        assert_eq!(mobius(30).unwrap(), -1);
    }

    #[test]
    fn sieve_matches_direct() {
        let sieve = Sieve::new(5000);
        for n in 1..=5000u64 {
            let a = sieve.factorize(n);
            let b = factorize(n).unwrap();
            assert_eq!(a, b, "n = {n}");
        }
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(5, 2).unwrap(), -1); // 2 is a non-residue mod 5
        assert_eq!(kronecker(-4, 2).unwrap(), 0);
        for d in [-8, -4, -3, 1, 5, 8, 12, 13] {
            assert_eq!(kronecker(d, 1).unwrap(), 1, "d = {d}");
        }
        assert!(kronecker(6, 3).is_err()); // 6 = 2 mod 4
        assert!(kronecker(9, 2).is_err()); // 9 not squarefree
    }

    #[test]
    fn kronecker_matches_euler_criterion() {
        // For odd prime moduli p and fundamental D, (D|p) is the Legendre symbol.
        for p in [3u64, 7, 11, 13, 17, 19, 23] {
            for d in [-8i64, -4, -3, 5, 8, 12, 13, 17] {
                let expect = if (d.rem_euclid(p as i64) as u64) % p == 0 {
                    0
                } else {
                    legendre(d.rem_euclid(p as i64) as u64, p)
                };
                assert_eq!(kronecker(d, p as i64).unwrap(), expect, "D={d} p={p}");
            }
        }
    }

    #[test]
    fn split_examples() {
        assert_eq!(split_discriminant(5).unwrap(), DiscriminantSplit { m: 5, d: 5, l: 1 });
        assert_eq!(split_discriminant(12).unwrap(), DiscriminantSplit { m: 12, d: 12, l: 1 });
        assert_eq!(split_discriminant(45).unwrap(), DiscriminantSplit { m: 45, d: 5, l: 3 });
        assert_eq!(split_discriminant(-4).unwrap(), DiscriminantSplit { m: -4, d: -4, l: 1 });
        assert_eq!(split_discriminant(-3).unwrap(), DiscriminantSplit { m: -3, d: -3, l: 1 });
        assert_eq!(split_discriminant(16).unwrap(), DiscriminantSplit { m: 16, d: 1, l: 4 });
        assert!(split_discriminant(7).is_err());
        assert!(split_discriminant(0).is_err());
    }

    #[test]
    fn split_reassembles_and_is_fundamental() {
        for m in (-100_000i64..=100_000).filter(|&m| m != 0) {
            let r = m.rem_euclid(4);
            if r == 2 || r == 3 {
                assert!(split_discriminant(m).is_err());
                continue;
            }
            let s = split_discriminant(m).unwrap();
            assert_eq!(s.d * (s.l as i64) * (s.l as i64), m, "m = {m}");
            assert!(is_fundamental_discriminant(s.d), "m = {m} gave D = {}", s.d);
        }
    }

    #[test]
    fn sqrt_mod_prime_power_roundtrip() {
        for p in [3u64, 5, 7, 11, 13] {
            for e in 1..=4u32 {
                let pe = p.pow(e);
                for a in 1..pe.min(200) {
                    if a % p == 0 {
                        continue;
                    }
                    if let Some(r) = sqrt_mod_odd_prime_power(a, p, e) {
                        assert_eq!(mul_mod(r, r, pe), a % pe);
                    } else {
                        // verify there is indeed no root
                        assert!((0..pe).all(|x| mul_mod(x, x, pe) != a % pe));
                    }
                }
            }
        }
    }

    #[test]
    fn principal_branch_values() {
        let log_m1 = principal_log(Complex64::new(-1.0, 0.0)).unwrap();
        assert!((log_m1 - Complex64::new(0.0, std::f64::consts::PI)).norm() < 1e-15);
        let sqrt4 = principal_pow(Complex64::new(4.0, 0.0), Complex64::new(0.5, 0.0)).unwrap();
        assert!((sqrt4 - Complex64::new(2.0, 0.0)).norm() < 1e-15);
        let i_to_i = principal_pow(Complex64::new(0.0, 1.0), Complex64::new(0.0, 1.0)).unwrap();
        assert!((i_to_i.re - 0.20787957635076193).abs() < 1e-15 && i_to_i.im.abs() < 1e-15);
        assert!(principal_log(Complex64::new(0.0, 0.0)).is_err());
    }
}

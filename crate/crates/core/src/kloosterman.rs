//! Classical Kloosterman sums: exact evaluation, batch rows, Weil bound.
//!
//! `kloosterman_direct` is the oracle: a plain sum over reduced residues with
//! compensated accumulation. `kloosterman_fast` exploits twisted
//! multiplicativity across coprime factors and the Salie closed form at odd
//! prime powers p^e, e >= 2 with p not dividing mn; every other case falls
//! back to the direct path. The fast path is an optimization hypothesis only:
//! the test suite pins it to the direct oracle over an exhaustive grid.

use rayon::prelude::*;
use rustfft::{num_complex::Complex as FftComplex, FftPlanner};

use crate::arith::{
    ext_gcd, factorize, gcd, legendre, mod_inverse, mul_mod, sqrt_mod_odd_prime_power,
    Factorization,
};
use crate::scalar::CompensatedSum;

/// Weil's bound tau0(c) sqrt((m,n,c)) sqrt(c).
pub fn weil_bound(m: i64, n: i64, c: u64) -> f64 {
    let g = gcd(gcd(m.unsigned_abs(), n.unsigned_abs()), c);
    let tau = factorize(c).map(|f| f.tau0()).unwrap_or(1);
    (tau as f64) * (g as f64).sqrt() * (c as f64).sqrt()
}

/// Direct sum over reduced residues; returns (value, imaginary residual).
///
/// The sum is real because a and its inverse pair off; the imaginary
/// residual of the accumulated exponentials is returned so callers can
/// assert it stays below 1e-9 * c.
pub fn kloosterman_direct_with_residual(m: i64, n: i64, c: u64) -> (f64, f64) {
    assert!(c >= 1);
    if c == 1 {
        return (1.0, 0.0);
    }
    let mm = m.rem_euclid(c as i64) as u64;
    let nn = n.rem_euclid(c as i64) as u64;
    let step = 2.0 * std::f64::consts::PI / c as f64;
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    if inverse_table_applicable(c) {
        let inv = prime_inverse_table(c);
        for a in 1..c {
            let r = (a * mm + inv[a as usize] * nn) % c;
            let (s, co) = (step * r as f64).sin_cos();
            re.add(co);
            im.add(s);
        }
    } else {
        for a in 1..c {
            if gcd(a, c) != 1 {
                continue;
            }
            let a_inv = mod_inverse(a, c).expect("coprime residue has an inverse");
            let r = (a * mm + a_inv * nn) % c;
            let (s, co) = (step * r as f64).sin_cos();
            re.add(co);
            im.add(s);
        }
    }
    (re.value(), im.value())
}

/// S(m, n; c) by direct summation.
pub fn kloosterman_direct(m: i64, n: i64, c: u64) -> f64 {
    kloosterman_direct_with_residual(m, n, c).0
}

fn inverse_table_applicable(c: u64) -> bool {
    // the O(c) inverse recurrence needs a prime modulus; probe cheaply
    c > 16 && c < (1 << 22) && crate::arith::is_prime(c)
}

fn prime_inverse_table(p: u64) -> Vec<u64> {
    let mut inv = vec![0u64; p as usize];
    if p > 1 {
        inv[1] = 1;
        for a in 2..p {
            inv[a as usize] = p - mul_mod(p / a, inv[(p % a) as usize], p);
        }
    }
    inv
}

/// Salie evaluation at an odd prime power p^e, e >= 2, p not dividing mn.
/// Returns None when no closed form applies (caller goes direct).
fn salie_prime_power(m: u64, n: u64, p: u64, e: u32) -> Option<f64> {
    if p == 2 || e < 2 {
        return None;
    }
    let c = p.checked_pow(e)?;
    let w = mul_mod(m % c, n % c, c);
    if w % p == 0 {
        return None;
    }
    if legendre(w % p, p) == -1 {
        return Some(0.0);
    }
    let root = sqrt_mod_odd_prime_power(w, p, e)?;
    let chi = legendre(root % p, p);
    let sign = if e % 2 == 0 { 1.0 } else { chi as f64 };
    let sqrt_c = (c as f64).sqrt();
    let theta = 4.0 * std::f64::consts::PI * root as f64 / c as f64;
    Some(if c % 4 == 1 {
        2.0 * sign * sqrt_c * theta.cos()
    } else {
        -2.0 * sign * sqrt_c * theta.sin()
    })
}

fn prime_power_kloosterman(m: i64, n: i64, p: u64, e: u32) -> f64 {
    let c = p.pow(e);
    let mm = m.rem_euclid(c as i64) as u64;
    let nn = n.rem_euclid(c as i64) as u64;
    salie_prime_power(mm, nn, p, e).unwrap_or_else(|| kloosterman_direct(m, n, c))
}

/// S(m, n; c) with factorization supplied (sieve-backed batch callers).
pub fn kloosterman_fast_with_factors(m: i64, n: i64, f: &Factorization) -> f64 {
    let c = f.n;
    if c == 1 {
        return 1.0;
    }
    if f.factors.len() == 1 {
        let (p, e) = f.factors[0];
        return prime_power_kloosterman(m, n, p, e);
    }
    // twisted multiplicativity: S(m,n; prod c_i) = prod S(u_i m, u_i n; c_i),
    // u_i the inverse of c / c_i modulo c_i
    let mut acc = 1.0f64;
    for &(p, e) in &f.factors {
        let ci = p.pow(e);
        let rest = (c / ci) % ci;
        let (g, x, _) = ext_gcd(rest as i64, ci as i64);
        debug_assert_eq!(g, 1);
        let u = x.rem_euclid(ci as i64) as u64;
        let mu = mul_mod(m.rem_euclid(ci as i64) as u64, u, ci) as i64;
        let nu = mul_mod(n.rem_euclid(ci as i64) as u64, u, ci) as i64;
        acc *= prime_power_kloosterman(mu, nu, p, e);
    }
    acc
}

/// S(m, n; c), fast path (falls back to the direct sum where no rule applies).
pub fn kloosterman_fast(m: i64, n: i64, c: u64) -> f64 {
    assert!(c >= 1);
    let f = factorize(c).expect("c >= 1");
    kloosterman_fast_with_factors(m, n, &f)
}

/// The row (q, S(n,n;q)) for q = 1..Q, deterministic order.
pub fn kloosterman_row(n: i64, q_max: u64) -> Vec<(u64, f64)> {
    let sieve = crate::arith::Sieve::new(q_max as usize);
    (1..=q_max)
        .into_par_iter()
        .map(|q| (q, kloosterman_fast_with_factors(n, n, &sieve.factorize(q))))
        .collect()
}

/// Diagonal row S(v, v; q) for v = 0..q, with the imaginary residual of the
/// reconstruction.
///
/// Built from the distribution of a + a^{-1} over reduced residues: with
/// counts[w] = #{a : a + a* = w (mod q)}, the row is the length-q inverse DFT
/// of counts, which is real because counts[w] = counts[-w].
pub struct DiagonalRow {
    pub q: u64,
    pub values: Vec<f64>,
    pub max_imag: f64,
}

/// counts[w] = #{a mod q, (a,q)=1 : a + a^{-1} = w (mod q)}.
pub fn diagonal_counts(q: u64) -> Vec<u32> {
    let mut counts = vec![0u32; q as usize];
    if q == 1 {
        counts[0] = 1;
        return counts;
    }
    if inverse_table_applicable(q) {
        let inv = prime_inverse_table(q);
        for a in 1..q {
            counts[((a + inv[a as usize]) % q) as usize] += 1;
        }
    } else {
        for a in 1..q {
            if gcd(a, q) != 1 {
                continue;
            }
            let a_inv = mod_inverse(a, q).expect("coprime residue has an inverse");
            counts[((a + a_inv) % q) as usize] += 1;
        }
    }
    counts
}

/// Full diagonal row via FFT of the counts (O(q log q)).
pub fn diagonal_row(q: u64) -> DiagonalRow {
    diagonal_row_with_planner(q, &mut FftPlanner::new())
}

/// Same, reusing a planner across moduli.
pub fn diagonal_row_with_planner(q: u64, planner: &mut FftPlanner<f64>) -> DiagonalRow {
    let counts = diagonal_counts(q);
    if q <= 2 {
        // tiny moduli: evaluate directly
        let values = (0..q).map(|v| kloosterman_direct(v as i64, v as i64, q)).collect();
        return DiagonalRow { q, values, max_imag: 0.0 };
    }
    let fft = planner.plan_fft_inverse(q as usize);
    let mut buf: Vec<FftComplex<f64>> =
        counts.iter().map(|&c| FftComplex::new(c as f64, 0.0)).collect();
    fft.process(&mut buf);
    let mut max_imag = 0.0f64;
    let values = buf
        .iter()
        .map(|z| {
            max_imag = max_imag.max(z.im.abs());
            z.re
        })
        .collect();
    DiagonalRow { q, values, max_imag }
}

//! Integer number theory at desk scale: trial-division primality and
//! factoring, modular arithmetic, CRT.

use crate::error::{Error, Result};

/// Largest trial divisor tried before giving up on factoring.
pub const TRIAL_DIVISION_LIMIT: u64 = 1 << 26;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Returns `(p, s)` with `q = p^s` if `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let f = factorize(q).ok()?;
    (f.len() == 1).then(|| f[0])
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Result<Vec<(u64, u32)>> {
    let orig = n;
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if d > TRIAL_DIVISION_LIMIT {
            return Err(Error::CannotFactor(orig));
        }
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    Ok(out)
}

pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    r
}

/// Extended gcd on signed integers: `(g, x, y)` with `a x + b y = g`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn invmod(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd((a % m) as i128, m as i128);
    (g == 1).then(|| x.rem_euclid(m as i128) as u64)
}

/// Combines residues `x ≡ r_i (mod m_i)` for pairwise coprime moduli.
pub fn crt(parts: &[(u64, u64)]) -> u64 {
    let mut x: u128 = 0;
    let mut m: u128 = 1;
    for &(r, mi) in parts {
        let mi128 = mi as u128;
        // x + m * t ≡ r (mod mi)
        let inv = invmod((m % mi128) as u64, mi).expect("moduli must be coprime") as u128;
        let diff = ((r as u128 + mi128) - (x % mi128)) % mi128;
        let t = diff * inv % mi128;
        x += m * t;
        m *= mi128;
        x %= m;
    }
    x as u64
}

/// `floor(sqrt(n))` exactly.
pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

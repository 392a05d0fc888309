//! Guruswami–Sudan list decoding: interpolation with multiplicities, then
//! Roth–Ruckenstein root finding.

use super::message_key;
use crate::error::{Error, Result};
use crate::ffield::{ExtField, Fe};
use crate::linalg::{self, Matrix};
use crate::nt::isqrt;
use crate::poly::{Poly, PolyRing};
use crate::rscode::{distance, RSCode};

/// Largest multiplicity tried.
pub const MAX_MULTIPLICITY: usize = 8;
/// Largest number of interpolation constraints allowed.
pub const MAX_CONSTRAINTS: usize = 640;

/// Monomials `x^a y^b` with `a + w·b ≤ d`.
fn monomial_count(d: usize, w: usize) -> usize {
    (0..=d / w).map(|b| d - w * b + 1).sum()
}

/// Smallest multiplicity `m` whose interpolation system at radius `t` has
/// more unknowns than constraints, within the size caps.
pub fn gs_multiplicity(n: usize, k: usize, t: usize) -> Option<usize> {
    if t >= n {
        return None;
    }
    if k == 1 {
        return Some(1);
    }
    let s = n - t;
    (1..=MAX_MULTIPLICITY).find(|&m| {
        let constraints = n * m * (m + 1) / 2;
        constraints <= MAX_CONSTRAINTS && constraints < monomial_count(m * s - 1, k - 1)
    })
}

fn within_agreement_bound(n: usize, k: usize, t: usize) -> bool {
    t + (isqrt(((k - 1) * n) as u64) as usize) < n
}

/// Guaranteed radius: the largest `t` with agreement `n − t` above
/// `√((k−1)n)`, a feasible multiplicity, and `(n − t)² ≥ kn`.
///
/// Asymptotically this is `n(1 − √R)`; the last condition keeps the reported
/// radius under `n(1 − √(k/n))`.
pub fn gs_radius(n: usize, k: usize) -> usize {
    (0..n)
        .rev()
        .find(|&t| {
            let s = n - t;
            within_agreement_bound(n, k, t) && s * s >= k * n && gs_multiplicity(n, k, t).is_some()
        })
        .unwrap_or(0)
}

/// Every codeword within distance `t` of `y`, sorted by message.
pub fn guruswami_sudan(code: &RSCode, y: &[Fe], t: usize) -> Result<Vec<Vec<Fe>>> {
    let (n, k) = (code.n(), code.k());
    if y.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: y.len() });
    }
    let max = gs_radius(n, k);
    if !within_agreement_bound(n, k, t) {
        return Err(Error::RadiusTooLarge { t, max });
    }
    let m = gs_multiplicity(n, k, t).ok_or(Error::RadiusTooLarge { t, max })?;
    let f = &**code.field();
    let candidates: Vec<Poly> = if k == 1 {
        f.elements().map(Poly::constant).collect()
    } else {
        let q = interpolate(code, y, m, m * (n - t) - 1);
        let mut out = Vec::new();
        roth_ruckenstein(f, q, k, &mut Vec::new(), &mut out);
        out
    };
    let mut words = Vec::new();
    for p in candidates {
        let c = code.encode(&p)?;
        if distance(&c, y)? <= t && !words.contains(&c) {
            words.push(c);
        }
    }
    words.sort_by_cached_key(|c| message_key(code, c));
    Ok(words)
}

/// Binomial coefficients mod p via Lucas, backed by a Pascal table.
struct Binomials {
    p: usize,
    table: Vec<Vec<u32>>,
}

impl Binomials {
    fn new(p: u32, max: usize) -> Self {
        let size = (max + 1).min(p as usize);
        let mut table = vec![vec![0u32; size]; size];
        for a in 0..size {
            table[a][0] = 1;
            for b in 1..=a {
                table[a][b] = ((table[a - 1][b - 1] as u64 + table[a - 1][b] as u64) % p as u64) as u32;
            }
        }
        Binomials { p: p as usize, table }
    }

    fn get(&self, mut a: usize, mut b: usize) -> u32 {
        if b > a {
            return 0;
        }
        let mut r = 1u64;
        while b > 0 || a > 0 {
            let (ad, bd) = (a % self.p, b % self.p);
            if bd > ad {
                return 0;
            }
            r = r * self.table[ad][bd] as u64 % self.p as u64;
            a /= self.p;
            b /= self.p;
        }
        r as u32
    }
}

/// Bivariate polynomial as coefficients in `y`: `Q = Σ_b Q_b(x) y^b`.
type Bivariate = Vec<Poly>;

fn interpolate(code: &RSCode, y: &[Fe], m: usize, d: usize) -> Bivariate {
    let f = &**code.field();
    let w = code.k() - 1;
    let monos: Vec<(usize, usize)> = (0..=d / w).flat_map(|b| (0..=d - w * b).map(move |a| (a, b))).collect();
    let binom = Binomials::new(f.p(), d + 1);
    let mut rows = Vec::new();
    for (&alpha, &beta) in code.eval_points().iter().zip(y) {
        for u in 0..m {
            for v in 0..m - u {
                // Hasse derivative D_{u,v} Q at (alpha, beta)
                let row = monos
                    .iter()
                    .map(|&(a, b)| {
                        if a < u || b < v {
                            return Fe::ZERO;
                        }
                        let c = f.from_int(binom.get(a, u) as i64 * binom.get(b, v) as i64 % f.p() as i64);
                        f.mul(c, f.mul(f.pow(alpha, (a - u) as u64), f.pow(beta, (b - v) as u64)))
                    })
                    .collect();
                rows.push(row);
            }
        }
    }
    let a = Matrix::from_rows(rows, monos.len()).expect("uniform rows");
    let ker = linalg::kernel(f, &a);
    debug_assert!(ker.rows() > 0, "more unknowns than constraints");
    let sol = ker.row(0);
    let ymax = monos.iter().map(|m| m.1).max().unwrap_or(0);
    let mut coeffs = vec![vec![Fe::ZERO; d + 1]; ymax + 1];
    for (&(a, b), &c) in monos.iter().zip(sol) {
        coeffs[b][a] = c;
    }
    coeffs.into_iter().map(Poly::new).collect()
}

/// Collects every `f` of degree `< k` with `(y − f) | Q`, in coefficient
/// order (plus spurious candidates that the caller filters).
fn roth_ruckenstein(f: &ExtField, mut q: Bivariate, k: usize, prefix: &mut Vec<Fe>, out: &mut Vec<Poly>) {
    while q.last().is_some_and(|p| p.is_zero()) {
        q.pop();
    }
    if q.is_empty() {
        return;
    }
    // divide out the largest power of x
    let shift = q.iter().filter_map(|p| p.coeffs().iter().position(|c| !c.is_zero())).min().unwrap_or(0);
    if shift > 0 {
        for p in q.iter_mut() {
            *p = Poly::new(p.coeffs().get(shift..).map(|s| s.to_vec()).unwrap_or_default());
        }
    }
    let ring = PolyRing::new(f);
    let g = Poly::new(q.iter().map(|p| p.coeff(0)).collect());
    let roots = if g.degree().unwrap_or(0) == 0 { Vec::new() } else { ring.roots_bounded(&g, u64::MAX).unwrap() };
    let binom = Binomials::new(f.p(), q.len());
    for gamma in roots {
        prefix.push(gamma);
        if prefix.len() == k {
            out.push(Poly::new(prefix.clone()));
        } else {
            // Q'(x, y) = Q(x, x·y + γ)
            let next: Bivariate = (0..q.len())
                .map(|j| {
                    let mut acc = Poly::zero();
                    for (b, qb) in q.iter().enumerate().skip(j) {
                        let c = f.mul(f.from_int(binom.get(b, j) as i64), f.pow(gamma, (b - j) as u64));
                        acc = ring.add(&acc, &ring.scale(c, qb));
                    }
                    ring.mul(&acc, &Poly::monomial(Fe::ONE, j))
                })
                .collect();
            roth_ruckenstein(f, next, k, prefix, out);
        }
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoder::{brute_force_bdd, bw_radius};
    use crate::ffield::field_of_order;
    use crate::rscode::ENUMERATION_LIMIT;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn radius_bounds() {
        for (n, k) in [(16, 4), (8, 3), (7, 3), (16, 2), (32, 4), (13, 5)] {
            let t = gs_radius(n, k);
            assert!(t >= bw_radius(n, k), "n={n} k={k}");
            assert!((t as f64) / (n as f64) <= 1.0 - (k as f64 / n as f64).sqrt() + 1e-12);
        }
        assert_eq!(gs_multiplicity(16, 4, 7), Some(1));
        assert_eq!(gs_multiplicity(16, 4, 8), Some(2));
    }

    #[test]
    fn rs16_seven_errors() {
        let code = RSCode::full_support(field_of_order(16).unwrap(), 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let msg: Vec<Fe> = (0..4).map(|_| Fe(rng.gen_range(0..16))).collect();
        let c = code.encode_message(&msg).unwrap();
        let mut y = c.clone();
        for i in 0..7 {
            y[2 * i] = code.field().add(y[2 * i], Fe(1 + rng.gen_range(0..15)));
        }
        let list = guruswami_sudan(&code, &y, 7).unwrap();
        assert!(list.contains(&c));
        assert_eq!(list, brute_force_bdd(&code, &y, 7, ENUMERATION_LIMIT).unwrap());
        assert!(matches!(guruswami_sudan(&code, &y, 10), Err(Error::RadiusTooLarge { .. })));
    }
}

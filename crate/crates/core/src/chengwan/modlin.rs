//! Linear algebra over `Z/N` for composite `N`: one elimination per prime
//! power, glued by CRT.

use crate::error::{Error, Result};
use crate::nt::{self, mulmod};

fn valuation(mut x: u64, l: u64) -> u32 {
    if x == 0 {
        return u32::MAX;
    }
    let mut v = 0;
    while x.is_multiple_of(l) {
        x /= l;
        v += 1;
    }
    v
}

/// Solves `B·x ≡ J (mod l^e)`; `b` holds rows already reduced mod `l^e`.
fn solve_prime_power(mut b: Vec<Vec<u64>>, mut j: Vec<u64>, cols: usize, l: u64, e: u32) -> Option<Vec<u64>> {
    let m = l.pow(e);
    let rows = b.len();
    let mut perm: Vec<usize> = (0..cols).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    while r < rows && r < cols {
        // entry of least valuation in the remaining block
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in b.iter().enumerate().skip(r) {
            for (c, &x) in row.iter().enumerate().skip(r) {
                let v = valuation(x, l);
                if v < e && best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, i, c));
                }
            }
        }
        let Some((v, pi, pc)) = best else { break };
        b.swap(r, pi);
        j.swap(r, pi);
        for row in b.iter_mut() {
            row.swap(r, pc);
        }
        perm.swap(r, pc);
        let lv = l.pow(v);
        let unit_inv = nt::invmod(b[r][r] / lv, m).expect("unit part");
        for i in r + 1..rows {
            if b[i][r] == 0 {
                continue;
            }
            let factor = mulmod(b[i][r] / lv, unit_inv, m);
            let (top, rest) = b.split_at_mut(i);
            for (x, &p) in rest[0][r..cols].iter_mut().zip(&top[r][r..cols]) {
                *x = (*x + m - mulmod(factor, p, m)) % m;
            }
            j[i] = (j[i] + m - mulmod(factor, j[r], m)) % m;
        }
        pivots.push(v);
        r += 1;
    }
    if j[r..].iter().any(|&x| x != 0) {
        return None;
    }
    let mut x = vec![0u64; cols];
    for i in (0..r).rev() {
        let mut rhs = j[i];
        for c in i + 1..cols {
            rhs = (rhs + m - mulmod(b[i][c], x[c], m)) % m;
        }
        let lv = l.pow(pivots[i]);
        if !rhs.is_multiple_of(lv) {
            return None;
        }
        let reduced_m = m / lv;
        let unit_inv = nt::invmod((b[i][i] / lv) % reduced_m, reduced_m).unwrap_or(0);
        x[i] = mulmod((rhs / lv) % reduced_m, unit_inv, reduced_m);
    }
    let mut out = vec![0u64; cols];
    for (pos, &orig) in perm.iter().enumerate() {
        out[orig] = x[pos];
    }
    Some(out)
}

/// `B·v mod N`.
pub fn mat_vec_mod(b: &[Vec<u64>], v: &[u64], n: u64) -> Vec<u64> {
    b.iter().map(|row| row.iter().zip(v).fold(0u64, |acc, (&x, &y)| (acc + mulmod(x % n, y % n, n)) % n)).collect()
}

/// A solution of `B·l ≡ J (mod N)`, or `None` when the system is
/// inconsistent. Free variables are set to zero.
pub fn solve_mod_n(b: &[Vec<u64>], j: &[u64], n: u64) -> Result<Option<Vec<u64>>> {
    if n < 2 {
        return Err(Error::BadParams(format!("modulus {n} below 2")));
    }
    if b.len() != j.len() {
        return Err(Error::LengthMismatch { expected: b.len(), got: j.len() });
    }
    let cols = b.first().map_or(0, |r| r.len());
    if let Some(bad) = b.iter().find(|r| r.len() != cols) {
        return Err(Error::LengthMismatch { expected: cols, got: bad.len() });
    }
    let factors = nt::factorize(n)?;
    let mut parts: Vec<Vec<(u64, u64)>> = vec![Vec::new(); cols];
    for &(l, e) in &factors {
        let m = l.pow(e);
        let bm = b.iter().map(|row| row.iter().map(|&x| x % m).collect()).collect();
        let jm = j.iter().map(|&x| x % m).collect();
        let Some(x) = solve_prime_power(bm, jm, cols, l, e) else { return Ok(None) };
        for (slot, xi) in parts.iter_mut().zip(x) {
            slot.push((xi, m));
        }
    }
    let sol: Vec<u64> = parts.iter().map(|p| nt::crt(p)).collect();
    let jn: Vec<u64> = j.iter().map(|&x| x % n).collect();
    assert_eq!(mat_vec_mod(b, &sol, n), jn, "modular solve produced a non-solution");
    Ok(Some(sol))
}

/// Incremental rank of a growing row set modulo each prime divisor of `N`.
#[derive(Clone, Debug)]
pub struct RankTracker {
    cols: usize,
    primes: Vec<u64>,
    // per prime: echelon rows keyed by pivot column, pivot normalized to 1
    echelon: Vec<Vec<Option<Vec<u64>>>>,
    ranks: Vec<usize>,
}

impl RankTracker {
    pub fn new(n: u64, cols: usize) -> Result<RankTracker> {
        let primes: Vec<u64> = nt::factorize(n)?.into_iter().map(|(l, _)| l).collect();
        let k = primes.len();
        Ok(RankTracker { cols, primes, echelon: vec![vec![None; cols]; k], ranks: vec![0; k] })
    }

    /// Adds a row; returns whether any rank grew.
    pub fn insert(&mut self, row: &[u64]) -> bool {
        let mut grew = false;
        for (pi, &l) in self.primes.iter().enumerate() {
            let mut v: Vec<u64> = row.iter().map(|&x| x % l).collect();
            for c in 0..self.cols {
                if v[c] == 0 {
                    continue;
                }
                match &self.echelon[pi][c] {
                    Some(basis) => {
                        let f = v[c];
                        for (x, &y) in v.iter_mut().zip(basis).skip(c) {
                            *x = (*x + l - mulmod(f, y, l)) % l;
                        }
                    }
                    None => {
                        let inv = nt::invmod(v[c], l).expect("prime modulus");
                        for x in v.iter_mut().skip(c) {
                            *x = mulmod(*x, inv, l);
                        }
                        self.echelon[pi][c] = Some(v);
                        self.ranks[pi] += 1;
                        grew = true;
                        break;
                    }
                }
            }
        }
        grew
    }

    /// The smallest rank over all primes.
    pub fn rank(&self) -> usize {
        self.ranks.iter().copied().min().unwrap_or(self.cols)
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.cols
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let id = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(solve_mod_n(&id, &[7, 11], 15).unwrap(), Some(vec![7, 11]));
        let b = vec![vec![1, 1], vec![1, 2]];
        assert_eq!(solve_mod_n(&b, &[3, 5], 15).unwrap(), Some(vec![1, 2]));
        let dup = vec![vec![1, 2], vec![1, 2]];
        assert_eq!(solve_mod_n(&dup, &[3, 4], 15).unwrap(), None);
    }

    #[test]
    fn non_unit_pivots() {
        // 2x ≡ 4 (mod 8) has solutions; 2x ≡ 3 does not
        assert!(solve_mod_n(&[vec![2]], &[4], 8).unwrap().is_some());
        assert_eq!(solve_mod_n(&[vec![2]], &[3], 8).unwrap(), None);
        let b = vec![vec![4, 6], vec![2, 9]];
        let x = [5u64, 3];
        let j = mat_vec_mod(&b, &x, 72);
        let s = solve_mod_n(&b, &j, 72).unwrap().unwrap();
        assert_eq!(mat_vec_mod(&b, &s, 72), j);
    }

    #[test]
    fn rank_tracking() {
        let mut t = RankTracker::new(15, 2).unwrap();
        assert!(t.insert(&[3, 0]));
        // 3 vanishes mod 3, so rank mod 3 is still 0
        assert_eq!(t.rank(), 0);
        t.insert(&[1, 1]);
        t.insert(&[2, 2]);
        assert_eq!(t.rank(), 1);
        t.insert(&[0, 1]);
        assert!(t.is_full());
    }
}

use crate::error::{Error, Result};
use crate::ffield::Fe;
use crate::linalg::{self, Matrix};
use crate::poly::{Poly, PolyRing};
use crate::rscode::{distance, RSCode};

/// Unique-decoding radius `⌊(n−k)/2⌋`.
pub fn bw_radius(n: usize, k: usize) -> usize {
    (n - k) / 2
}

/// Berlekamp–Welch: the unique codeword within `⌊(n−k)/2⌋`, if any.
///
/// Solves `Q(α_i) = y_i E(α_i)` with `E` monic of degree `t` and
/// `deg Q < k + t`, then returns the encoding of `Q/E` when the division is
/// exact.
pub fn berlekamp_welch(code: &RSCode, y: &[Fe]) -> Result<Option<Vec<Fe>>> {
    let (n, k) = (code.n(), code.k());
    if y.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: y.len() });
    }
    let f = &**code.field();
    let t = bw_radius(n, k);
    // unknowns: q_0..q_{k+t−1}, then e_0..e_{t−1}
    let mut a = Matrix::zeros(n, k + 2 * t);
    let mut rhs = Vec::with_capacity(n);
    for (i, (&alpha, &yi)) in code.eval_points().iter().zip(y).enumerate() {
        let mut x = Fe::ONE;
        for j in 0..k + t {
            a.set(i, j, x);
            if j < t {
                a.set(i, k + t + j, f.neg(f.mul(yi, x)));
            }
            if j + 1 == k + t {
                break;
            }
            x = f.mul(x, alpha);
        }
        rhs.push(f.mul(yi, f.pow(alpha, t as u64)));
    }
    let Some(sol) = linalg::solve(f, &a, &rhs)? else { return Ok(None) };
    let q = Poly::new(sol[..k + t].to_vec());
    let mut e = sol[k + t..].to_vec();
    e.push(Fe::ONE);
    let e = Poly::new(e);
    let ring = PolyRing::new(f);
    let (msg, r) = ring.divmod(&q, &e)?;
    if !r.is_zero() || msg.degree().is_some_and(|d| d >= k) {
        return Ok(None);
    }
    let c = code.encode(&msg)?;
    Ok((distance(&c, y)? <= t).then_some(c))
}

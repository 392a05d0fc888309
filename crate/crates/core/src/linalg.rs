//! Dense matrices over `F_q` and Gaussian elimination with first-nonzero
//! pivoting.

use crate::error::{Error, Result};
use crate::ffield::{ExtField, Fe};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    /// Builds from row vectors, which must share a length.
    pub fn from_rows(rows: Vec<Vec<Fe>>, cols: usize) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in &rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch { expected: cols, got: r.len() });
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix { rows: rows.len(), cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn row_vecs(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }
}

pub fn mat_mul(f: &ExtField, a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.cols != b.rows {
        return Err(Error::LengthMismatch { expected: a.cols, got: b.rows });
    }
    let mut out = Matrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if x.is_zero() {
                continue;
            }
            for j in 0..b.cols {
                let v = f.add(out.get(i, j), f.mul(x, b.get(k, j)));
                out.set(i, j, v);
            }
        }
    }
    Ok(out)
}

/// `A·v` for a column vector `v`.
pub fn mul_vec(f: &ExtField, a: &Matrix, v: &[Fe]) -> Result<Vec<Fe>> {
    if v.len() != a.cols {
        return Err(Error::LengthMismatch { expected: a.cols, got: v.len() });
    }
    Ok((0..a.rows).map(|i| dot(f, a.row(i), v)).collect())
}

/// `v·A` for a row vector `v`.
pub fn vec_mul(f: &ExtField, v: &[Fe], a: &Matrix) -> Result<Vec<Fe>> {
    if v.len() != a.rows {
        return Err(Error::LengthMismatch { expected: a.rows, got: v.len() });
    }
    let mut out = vec![Fe::ZERO; a.cols];
    for (i, &c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (j, o) in out.iter_mut().enumerate() {
            *o = f.add(*o, f.mul(c, a.get(i, j)));
        }
    }
    Ok(out)
}

pub fn dot(f: &ExtField, a: &[Fe], b: &[Fe]) -> Fe {
    a.iter().zip(b).fold(Fe::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(f: &ExtField, m: &mut Matrix) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
        m.swap_rows(r, p);
        let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
        for j in c..m.cols {
            let v = f.mul(inv, m.get(r, j));
            m.set(r, j, v);
        }
        for i in 0..m.rows {
            let factor = m.get(i, c);
            if i == r || factor.is_zero() {
                continue;
            }
            for j in c..m.cols {
                let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(f: &ExtField, m: &Matrix) -> usize {
    rref(f, &mut m.clone()).len()
}

/// Basis (as rows) of the right kernel `{x : A x = 0}`.
pub fn kernel(f: &ExtField, a: &Matrix) -> Matrix {
    let mut m = a.clone();
    let pivots = rref(f, &mut m);
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Matrix::zeros(free.len(), a.cols);
    for (bi, &fc) in free.iter().enumerate() {
        basis.set(bi, fc, Fe::ONE);
        for (ri, &pc) in pivots.iter().enumerate() {
            basis.set(bi, pc, f.neg(m.get(ri, fc)));
        }
    }
    basis
}

/// One solution of `A x = b` (free variables set to zero), or `None`.
pub fn solve(f: &ExtField, a: &Matrix, b: &[Fe]) -> Result<Option<Vec<Fe>>> {
    if b.len() != a.rows {
        return Err(Error::LengthMismatch { expected: a.rows, got: b.len() });
    }
    let mut aug = Matrix::zeros(a.rows, a.cols + 1);
    for (i, &bi) in b.iter().enumerate() {
        for j in 0..a.cols {
            aug.set(i, j, a.get(i, j));
        }
        aug.set(i, a.cols, bi);
    }
    let pivots = rref(f, &mut aug);
    if pivots.last() == Some(&a.cols) {
        return Ok(None);
    }
    let mut x = vec![Fe::ZERO; a.cols];
    for (ri, &pc) in pivots.iter().enumerate() {
        x[pc] = aug.get(ri, a.cols);
    }
    Ok(Some(x))
}

/// Whether two matrices with equal column counts span the same row space.
pub fn same_row_space(f: &ExtField, a: &Matrix, b: &Matrix) -> bool {
    if a.cols != b.cols {
        return false;
    }
    let ra = rank(f, a);
    if ra != rank(f, b) {
        return false;
    }
    let mut both = a.row_vecs();
    both.extend(b.row_vecs());
    rank(f, &Matrix::from_rows(both, a.cols).expect("equal widths")) == ra
}

/// Vector of length `len` whose mixed-radix index is `idx` (coordinate 0 is
/// the most significant digit).
pub fn index_to_vec(q: u32, len: usize, mut idx: u64) -> Vec<Fe> {
    let mut v = vec![Fe::ZERO; len];
    for slot in v.iter_mut().rev() {
        *slot = Fe((idx % q as u64) as u32);
        idx /= q as u64;
    }
    v
}

/// Inverse of [`index_to_vec`].
pub fn vec_to_index(q: u32, v: &[Fe]) -> u64 {
    v.iter().fold(0u64, |acc, c| acc * q as u64 + c.0 as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[u32]]) -> Matrix {
        let cols = rows[0].len();
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Fe(x)).collect()).collect(), cols).unwrap()
    }

    #[test]
    fn kernel_and_solve() {
        let f = ExtField::prime(5).unwrap();
        let a = m(&[&[1, 2, 3], &[2, 4, 2]]);
        let k = kernel(&f, &a);
        assert_eq!(k.rows(), 1);
        assert!(mul_vec(&f, &a, k.row(0)).unwrap().iter().all(|c| c.is_zero()));
        let x = solve(&f, &a, &[Fe(1), Fe(0)]).unwrap().unwrap();
        assert_eq!(mul_vec(&f, &a, &x).unwrap(), vec![Fe(1), Fe(0)]);
        let singular = m(&[&[1, 1], &[1, 1]]);
        assert_eq!(solve(&f, &singular, &[Fe(1), Fe(2)]).unwrap(), None);
        assert_eq!(rank(&f, &singular), 1);
    }
}

//! Reed–Solomon codes, general linear codes, syndromes and the Hamming metric.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{field_of_order, ExtField, Fe, FieldDescriptor};
use crate::linalg::{self, index_to_vec, Matrix};
use crate::poly::{Poly, PolyRing};

/// Default cap on codeword enumeration.
pub const ENUMERATION_LIMIT: u128 = 1 << 24;

/// `RS[n, k]_q`: evaluations of polynomials of degree `< k` at `eval_points`.
#[derive(Clone, Debug)]
pub struct RSCode {
    field: Arc<ExtField>,
    k: usize,
    eval_points: Vec<Fe>,
}

impl RSCode {
    pub fn new(field: Arc<ExtField>, k: usize, eval_points: Vec<Fe>) -> Result<RSCode> {
        let n = eval_points.len();
        if k == 0 || k > n || n > field.q() as usize {
            return Err(Error::BadParams(format!("need 1 ≤ k ≤ n ≤ q, got k={k}, n={n}, q={}", field.q())));
        }
        let mut sorted = eval_points.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint);
        }
        for &a in &eval_points {
            field.check(a)?;
        }
        Ok(RSCode { field, k, eval_points })
    }

    /// Full-support code `RS[q, k]_q`, points in index order.
    pub fn full_support(field: Arc<ExtField>, k: usize) -> Result<RSCode> {
        let pts = field.elements().collect();
        RSCode::new(field, k, pts)
    }

    pub fn field(&self) -> &Arc<ExtField> {
        &self.field
    }
    pub fn n(&self) -> usize {
        self.eval_points.len()
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn eval_points(&self) -> &[Fe] {
        &self.eval_points
    }
    pub fn is_full_support(&self) -> bool {
        self.n() == self.field.q() as usize
    }
    /// Minimum distance `n − k + 1`.
    pub fn designed_distance(&self) -> usize {
        self.n() - self.k + 1
    }

    fn vandermonde(&self, rows: usize) -> Matrix {
        let f = &*self.field;
        let mut m = Matrix::zeros(rows, self.n());
        for (j, &a) in self.eval_points.iter().enumerate() {
            let mut x = Fe::ONE;
            for i in 0..rows {
                m.set(i, j, x);
                x = f.mul(x, a);
            }
        }
        m
    }

    /// `k × n`, row `i` is `(α_1^i, …, α_n^i)`.
    pub fn generator_matrix(&self) -> Matrix {
        self.vandermonde(self.k)
    }

    /// `(n−k) × n` parity-check matrix. For full support this is the plain
    /// Vandermonde matrix with powers `0..n−k−1`; otherwise column `j` is
    /// scaled by `1/∏_{i≠j}(α_j − α_i)` so that `G·Hᵀ = 0`.
    pub fn parity_matrix(&self) -> Matrix {
        let mut h = self.vandermonde(self.n() - self.k);
        if !self.is_full_support() {
            let f = &*self.field;
            for (j, &aj) in self.eval_points.iter().enumerate() {
                let prod =
                    self.eval_points.iter().filter(|&&ai| ai != aj).fold(Fe::ONE, |acc, &ai| f.mul(acc, f.sub(aj, ai)));
                let v = f.inv(prod).expect("distinct points");
                for i in 0..h.rows() {
                    let x = f.mul(h.get(i, j), v);
                    h.set(i, j, x);
                }
            }
        }
        h
    }

    pub fn encode(&self, message: &Poly) -> Result<Vec<Fe>> {
        if let Some(d) = message.degree() {
            if d >= self.k {
                return Err(Error::DegreeTooHigh { degree: d, k: self.k });
            }
        }
        let r = PolyRing::new(&self.field);
        Ok(self.eval_points.iter().map(|&a| r.eval(message, a)).collect())
    }

    /// Encodes a coefficient vector of length `k`.
    pub fn encode_message(&self, m: &[Fe]) -> Result<Vec<Fe>> {
        if m.len() != self.k {
            return Err(Error::LengthMismatch { expected: self.k, got: m.len() });
        }
        self.encode(&Poly::new(m.to_vec()))
    }

    /// `H·yᵀ`.
    pub fn syndrome(&self, y: &[Fe]) -> Result<Vec<Fe>> {
        linalg::mul_vec(&self.field, &self.parity_matrix(), y)
    }

    pub fn is_codeword(&self, y: &[Fe]) -> bool {
        self.message_of(y).is_some()
    }

    /// The message polynomial of a codeword, or `None` if `c ∉ C`.
    pub fn message_of(&self, c: &[Fe]) -> Option<Poly> {
        if c.len() != self.n() {
            return None;
        }
        let r = PolyRing::new(&self.field);
        let pts: Vec<(Fe, Fe)> = self.eval_points.iter().copied().zip(c.iter().copied()).take(self.k).collect();
        let f = r.interpolate(&pts).ok()?;
        (self.encode(&f).ok()? == c).then_some(f)
    }

    pub fn to_linear(&self) -> LinearCode {
        LinearCode::new(self.field.clone(), self.generator_matrix()).expect("Vandermonde rows are independent")
    }

    pub fn descriptor(&self) -> CodeDescriptor {
        CodeDescriptor {
            q: FieldSpec::Descriptor(self.field.descriptor()),
            n: self.n(),
            k: self.k,
            eval_points: self.eval_points.iter().map(|&a| self.field.coeffs(a)).collect(),
        }
    }
}

/// A field named either by its order (default modulus) or by a descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Order(u64),
    Descriptor(FieldDescriptor),
}

impl FieldSpec {
    pub fn build(&self) -> Result<Arc<ExtField>> {
        match self {
            FieldSpec::Order(q) => field_of_order(*q),
            FieldSpec::Descriptor(d) => d.build_field(),
        }
    }
}

/// JSON form of an RS code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub q: FieldSpec,
    pub n: usize,
    pub k: usize,
    pub eval_points: Vec<Vec<u32>>,
}

impl CodeDescriptor {
    pub fn build(&self) -> Result<RSCode> {
        let field = self.q.build()?;
        let pts = self.eval_points.iter().map(|c| field.from_coeffs(c)).collect::<Result<Vec<_>>>()?;
        if pts.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: pts.len() });
        }
        RSCode::new(field, self.k, pts)
    }
}

/// A linear code given by a full-rank generator matrix.
#[derive(Clone, Debug)]
pub struct LinearCode {
    field: Arc<ExtField>,
    generator: Matrix,
    parity: Matrix,
}

impl LinearCode {
    pub fn new(field: Arc<ExtField>, generator: Matrix) -> Result<LinearCode> {
        if linalg::rank(&field, &generator) != generator.rows() {
            return Err(Error::BadParams("generator rows are dependent".into()));
        }
        let parity = linalg::kernel(&field, &generator);
        Ok(LinearCode { field, generator, parity })
    }

    /// Code with the given parity-check matrix (the kernel of `h`).
    pub fn from_parity(field: Arc<ExtField>, h: &Matrix) -> Result<LinearCode> {
        let g = linalg::kernel(&field, h);
        LinearCode::new(field, g)
    }

    pub fn field(&self) -> &Arc<ExtField> {
        &self.field
    }
    pub fn n(&self) -> usize {
        self.generator.cols()
    }
    pub fn k(&self) -> usize {
        self.generator.rows()
    }
    pub fn generator(&self) -> &Matrix {
        &self.generator
    }
    /// A parity-check matrix whose rows span the dual.
    pub fn parity(&self) -> &Matrix {
        &self.parity
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode::new(self.field.clone(), self.parity.clone()).expect("kernel basis is independent")
    }

    pub fn encode(&self, m: &[Fe]) -> Result<Vec<Fe>> {
        linalg::vec_mul(&self.field, m, &self.generator)
    }

    pub fn syndrome(&self, y: &[Fe]) -> Result<Vec<Fe>> {
        linalg::mul_vec(&self.field, &self.parity, y)
    }

    pub fn size(&self) -> u128 {
        (self.field.q() as u128).pow(self.k() as u32)
    }

    /// All codewords, ordered by message index.
    pub fn codewords(&self, limit: u128) -> Result<Vec<Vec<Fe>>> {
        let size = self.size();
        if size > limit {
            return Err(Error::CodeTooLarge { size, limit });
        }
        let q = self.field.q();
        Ok((0..size as u64).map(|i| self.encode(&index_to_vec(q, self.k(), i)).expect("length k")).collect())
    }

    pub fn min_distance(&self, limit: u128) -> Result<usize> {
        Ok(self.codewords(limit)?.iter().skip(1).map(|c| weight(c)).min().unwrap_or(self.n()))
    }
}

pub fn weight(y: &[Fe]) -> usize {
    y.iter().filter(|c| !c.is_zero()).count()
}

pub fn distance(y: &[Fe], z: &[Fe]) -> Result<usize> {
    if y.len() != z.len() {
        return Err(Error::LengthMismatch { expected: y.len(), got: z.len() });
    }
    Ok(y.iter().zip(z).filter(|(a, b)| a != b).count())
}

/// `min_{c∈C} d(y, c)` by enumeration.
pub fn distance_to_code(code: &LinearCode, y: &[Fe], limit: u128) -> Result<usize> {
    let words = code.codewords(limit)?;
    let mut best = usize::MAX;
    for c in &words {
        best = best.min(distance(y, c)?);
    }
    Ok(best)
}

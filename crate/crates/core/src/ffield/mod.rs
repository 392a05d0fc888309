//! Prime and extension fields `F_q = F_p[x]/(μ)` with table-driven
//! multiplication, traces and additive characters, plus two-level towers
//! `F_{q^h}` (see [`tower`]).
//!
//! Elements are [`Fe`] indices: the little-endian coefficient list
//! `(c_0, …, c_{s−1})` over `F_p` is encoded as `Σ c_i p^i`. Index 0 is zero
//! and index 1 is one in every field.

pub mod tower;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nt;
use crate::poly::{Poly, PolyRing};
use crate::scalar::Real;

pub use tower::{FieldTower, TowerElem};

/// Largest field size for which log/antilog tables are built.
pub const MAX_TABLE_Q: u64 = 1 << 22;

/// Element of some [`ExtField`], stored as its integer index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone)]
struct Tables {
    /// `exp[i] = γ^i` for `0 ≤ i < 2(q−1)`.
    exp: Vec<u32>,
    log: Vec<u32>,
    trace: Vec<u32>,
}

/// The field `F_{p^s}` with a fixed monic irreducible modulus.
#[derive(Clone)]
pub struct ExtField {
    p: u32,
    s: usize,
    q: u32,
    modulus: Vec<u32>,
    pow_p: Vec<u32>,
    generator: Fe,
    tables: Option<Tables>,
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.s == other.s && self.modulus == other.modulus
    }
}
impl Eq for ExtField {}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.p, self.s, self.modulus)
    }
}

impl ExtField {
    /// The prime field `F_p`, with modulus `x`.
    pub fn prime(p: u64) -> Result<ExtField> {
        if !nt::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > (1 << 31) {
            return Err(Error::FieldTooLarge { q: p, limit: 1 << 31 });
        }
        Self::build(p as u32, 1, vec![0, 1])
    }

    /// `F_{p^s}`; `modulus` (little-endian, monic, degree `s`) is checked for
    /// irreducibility, or chosen by [`find_irreducible`] with seed 0 if absent.
    pub fn new(p: u64, s: usize, modulus: Option<&[u32]>) -> Result<ExtField> {
        if s == 0 {
            return Err(Error::DegreeMismatch { expected: 1, got: 0 });
        }
        let fp = Self::prime(p)?;
        if s == 1 && modulus.is_none() {
            return Ok(fp);
        }
        let q = (p as u128).pow(s as u32);
        if q > MAX_TABLE_Q as u128 {
            return Err(Error::FieldTooLarge { q: q.min(u64::MAX as u128) as u64, limit: MAX_TABLE_Q });
        }
        let m = match modulus {
            Some(m) => {
                let poly = fp.poly_from_ints(m)?;
                let deg = poly.degree().map(|d| d as isize).unwrap_or(-1);
                if deg != s as isize {
                    return Err(Error::DegreeMismatch { expected: s, got: deg.max(0) as usize });
                }
                if poly.lead() != Fe::ONE {
                    return Err(Error::NotMonic);
                }
                if !PolyRing::new(&fp).is_irreducible(&poly) {
                    return Err(Error::Reducible(m.to_vec()));
                }
                poly.coeffs().iter().map(|c| c.0).collect()
            }
            None => find_irreducible(&fp, s, 0).coeffs().iter().map(|c| c.0).collect(),
        };
        Self::build(p as u32, s, m)
    }

    fn build(p: u32, s: usize, modulus: Vec<u32>) -> Result<ExtField> {
        let q64 = (p as u64).pow(s as u32);
        let q = q64 as u32;
        let mut pow_p = Vec::with_capacity(s);
        let mut acc = 1u32;
        for _ in 0..s {
            pow_p.push(acc);
            acc = acc.wrapping_mul(p);
        }
        let mut f = ExtField { p, s, q, modulus, pow_p, generator: Fe::ONE, tables: None };
        let factors = nt::factorize(q64 - 1)?;
        let is_gen = |f: &ExtField, a: Fe| factors.iter().all(|&(l, _)| f.slow_pow(a, (q64 - 1) / l) != Fe::ONE);
        let start = if q == 2 { 1 } else { 2 };
        f.generator = (start..q).map(Fe).find(|&a| is_gen(&f, a)).expect("multiplicative group is cyclic");
        if q64 <= MAX_TABLE_Q {
            let n = (q - 1) as usize;
            let mut exp = vec![0u32; 2 * n.max(1)];
            let mut log = vec![0u32; q as usize];
            let mut x = Fe::ONE;
            for i in 0..n {
                exp[i] = x.0;
                exp[i + n] = x.0;
                log[x.0 as usize] = i as u32;
                x = f.slow_mul(x, f.generator);
            }
            f.tables = Some(Tables { exp, log, trace: Vec::new() });
            let trace = (0..q).map(|a| f.trace_slow(Fe(a)).0).collect();
            f.tables.as_mut().unwrap().trace = trace;
        }
        Ok(f)
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn s(&self) -> usize {
        self.s
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    /// Little-endian coefficients of the monic modulus over `F_p`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    /// The designated generator γ of `F_q^×` (smallest index of full order).
    pub fn generator(&self) -> Fe {
        self.generator
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q).map(Fe)
    }

    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        let mut v = a.0;
        (0..self.s)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    /// Element from a little-endian coefficient list of length at most `s`.
    pub fn from_coeffs(&self, c: &[u32]) -> Result<Fe> {
        if c.len() > self.s {
            return Err(Error::LengthMismatch { expected: self.s, got: c.len() });
        }
        let mut v = 0u32;
        for (i, &ci) in c.iter().enumerate() {
            if ci >= self.p {
                return Err(Error::BadElement(ci as u64));
            }
            v += ci * self.pow_p[i];
        }
        Ok(Fe(v))
    }

    /// Checks that an index names an element of this field.
    pub fn check(&self, a: Fe) -> Result<Fe> {
        if a.0 < self.q {
            Ok(a)
        } else {
            Err(Error::BadElement(a.0 as u64))
        }
    }

    /// Image of the integer `n` under `Z → F_p ⊆ F_q`.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        if self.s == 1 {
            let r = a.0 as u64 + b.0 as u64;
            return Fe((r % self.p as u64) as u32);
        }
        let (mut x, mut y, mut out) = (a.0, b.0, 0u32);
        for i in 0..self.s {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * self.pow_p[i];
            x /= self.p;
            y /= self.p;
        }
        Fe(out)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        if self.p == 2 {
            return a;
        }
        if self.s == 1 {
            return Fe((self.p - a.0) % self.p);
        }
        let (mut x, mut out) = (a.0, 0u32);
        for i in 0..self.s {
            let d = (self.p - x % self.p) % self.p;
            out += d * self.pow_p[i];
            x /= self.p;
        }
        Fe(out)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        match &self.tables {
            Some(t) => Fe(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => Fe(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32),
        }
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.tables {
            Some(t) => {
                let n = self.q - 1;
                Fe(t.exp[((n - t.log[a.0 as usize]) % n) as usize])
            }
            None => Fe(nt::powmod(a.0 as u64, self.p as u64 - 2, self.p as u64) as u32),
        })
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for `e ≥ 0`, with `0^0 = 1`.
    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.0 == 0 {
            return Fe::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let n = (self.q - 1) as u64;
                let l = t.log[a.0 as usize] as u64;
                Fe(t.exp[(nt::mulmod(l, e % n, n)) as usize])
            }
            None => Fe(nt::powmod(a.0 as u64, e, self.p as u64) as u32),
        }
    }

    /// `a^e` for signed `e`; negative exponents invert first.
    pub fn pow_signed(&self, a: Fe, e: i64) -> Result<Fe> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(self.inv(a)?, e.unsigned_abs()))
        }
    }

    /// Discrete log to the base [`ExtField::generator`], for `a ≠ 0`.
    pub fn log_generator(&self, a: Fe) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        self.tables.as_ref().map(|t| t.log[a.0 as usize] as u64)
    }

    /// Absolute trace `a + a^p + … + a^{p^{s−1}}`, an element of `F_p`.
    pub fn trace(&self, a: Fe) -> Fe {
        match &self.tables {
            Some(t) => Fe(t.trace[a.0 as usize]),
            None => a,
        }
    }

    /// Trace of the inner product `Σ x_i y_i`, as an integer in `[0, p)`.
    pub fn trace_dot(&self, y: &[Fe], x: &[Fe]) -> Result<u32> {
        if x.len() != y.len() {
            return Err(Error::LengthMismatch { expected: y.len(), got: x.len() });
        }
        let dot = x.iter().zip(y).fold(Fe::ZERO, |acc, (&a, &b)| self.add(acc, self.mul(a, b)));
        Ok(self.trace(dot).0)
    }

    /// Additive character `χ_y(x) = exp(2πi·tr(x·y)/p)`.
    pub fn chi<T: Real>(&self, y: &[Fe], x: &[Fe]) -> Result<Complex<T>> {
        let k = self.trace_dot(y, x)?;
        Ok(root_of_unity(k, self.p))
    }

    fn trace_slow(&self, a: Fe) -> Fe {
        let mut acc = Fe::ZERO;
        let mut x = a;
        for _ in 0..self.s {
            acc = self.add(acc, x);
            x = self.slow_pow(x, self.p as u64);
        }
        acc
    }

    fn slow_mul(&self, a: Fe, b: Fe) -> Fe {
        if self.s == 1 {
            return Fe(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        let p = self.p as u64;
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u64; 2 * self.s - 1];
        for (i, &x) in ca.iter().enumerate() {
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for d in (self.s..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            for (i, &m) in self.modulus[..self.s].iter().enumerate() {
                let idx = d - self.s + i;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
            prod[d] = 0;
        }
        let c: Vec<u32> = prod[..self.s].iter().map(|&v| v as u32).collect();
        self.from_coeffs(&c).expect("reduced coefficients")
    }

    fn slow_pow(&self, mut a: Fe, mut e: u64) -> Fe {
        let mut r = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                r = self.slow_mul(r, a);
            }
            a = self.slow_mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Polynomial over this field from integer indices.
    pub fn poly_from_ints(&self, c: &[u32]) -> Result<Poly> {
        let v = c.iter().map(|&x| self.check(Fe(x))).collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(v))
    }

    /// Checked element wrapper for operator-style use.
    pub fn elem(&self, coeffs: &[u32]) -> Result<FieldElem<'_>> {
        Ok(FieldElem { field: self, value: self.from_coeffs(coeffs)? })
    }

    pub fn wrap(&self, a: Fe) -> FieldElem<'_> {
        FieldElem { field: self, value: a }
    }

    /// JSON descriptor of this field (without a tower).
    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.p as u64, s: self.s, modulus: self.modulus.clone(), tower: None }
    }
}

/// `exp(2πi k/p)`.
pub fn root_of_unity<T: Real>(k: u32, p: u32) -> Complex<T> {
    let theta = T::TAU() * T::from_u32(k % p).unwrap() / T::from_u32(p).unwrap();
    Complex::from_polar(T::one(), theta)
}

/// `construct_field` with a checked modulus; returns a shareable descriptor.
pub fn construct_field(p: u64, s: usize, modulus: Option<&[u32]>) -> Result<Arc<ExtField>> {
    ExtField::new(p, s, modulus).map(Arc::new)
}

/// Field of order `q` with the default modulus.
pub fn field_of_order(q: u64) -> Result<Arc<ExtField>> {
    let (p, s) = nt::prime_power(q).ok_or_else(|| Error::BadParams(format!("{q} is not a prime power")))?;
    construct_field(p, s as usize, None)
}

/// A random monic irreducible polynomial of degree `d`, deterministic in `seed`.
pub fn find_irreducible(field: &ExtField, d: usize, seed: u64) -> Poly {
    assert!(d >= 1, "degree must be positive");
    let ring = PolyRing::new(field);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut c: Vec<Fe> = (0..d).map(|_| Fe(rng.gen_range(0..field.q()))).collect();
        c.push(Fe::ONE);
        let f = Poly::new(c);
        if ring.is_irreducible(&f) {
            return f;
        }
    }
}

/// Arithmetic operations accepted by [`elem_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Inv,
    Pow(i64),
}

/// An element tied to its field, with mismatch-checked arithmetic.
#[derive(Clone, Copy, Debug)]
pub struct FieldElem<'f> {
    pub field: &'f ExtField,
    pub value: Fe,
}

impl PartialEq for FieldElem<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.value == other.value
    }
}

impl<'f> FieldElem<'f> {
    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.value)
    }
}

/// Binary or unary field arithmetic; `b` is ignored for `Inv` and `Pow`.
pub fn elem_arith<'f>(a: FieldElem<'f>, b: FieldElem<'f>, op: ArithOp) -> Result<FieldElem<'f>> {
    let f = a.field;
    if !std::ptr::eq(f, b.field) && f != b.field {
        return Err(Error::FieldMismatch);
    }
    let value = match op {
        ArithOp::Add => f.add(a.value, b.value),
        ArithOp::Sub => f.sub(a.value, b.value),
        ArithOp::Mul => f.mul(a.value, b.value),
        ArithOp::Inv => f.inv(a.value)?,
        ArithOp::Pow(e) => f.pow_signed(a.value, e)?,
    };
    Ok(FieldElem { field: f, value })
}

/// Serialized form of a field, optionally with a tower on top.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub s: usize,
    pub modulus: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tower: Option<TowerDescriptor>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerDescriptor {
    pub h: usize,
    pub h_poly: Vec<Vec<u32>>,
}

impl FieldDescriptor {
    pub fn build_field(&self) -> Result<Arc<ExtField>> {
        construct_field(self.p, self.s, Some(&self.modulus))
    }

    pub fn build_tower(&self) -> Result<FieldTower> {
        let ground = self.build_field()?;
        let t = self.tower.as_ref().ok_or_else(|| Error::BadParams("descriptor has no tower".into()))?;
        let coeffs = t.h_poly.iter().map(|c| ground.from_coeffs(c)).collect::<Result<Vec<_>>>()?;
        FieldTower::new(ground, t.h, Some(Poly::new(coeffs)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> ExtField {
        ExtField::new(2, 2, Some(&[1, 1, 1])).unwrap()
    }

    #[test]
    fn construct_examples() {
        let f2 = ExtField::new(2, 1, None).unwrap();
        assert_eq!((f2.q(), f2.modulus()), (2, &[0u32, 1][..]));
        assert_eq!(f4().q(), 4);
        assert_eq!(ExtField::new(2, 2, Some(&[1, 0, 1])), Err(Error::Reducible(vec![1, 0, 1])));
        assert_eq!(ExtField::new(4, 1, None), Err(Error::NotPrime(4)));
        assert!(matches!(ExtField::new(3, 2, Some(&[1, 1])), Err(Error::DegreeMismatch { .. })));
        assert_eq!(ExtField::new(3, 2, Some(&[1, 0, 2])), Err(Error::NotMonic));
    }

    #[test]
    fn f4_arithmetic_and_trace() {
        let f = f4();
        let alpha = f.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f.coeffs(f.mul(alpha, alpha)), vec![1, 1]);
        assert_eq!(f.trace(alpha), Fe::ONE);
        assert_eq!(f.trace(Fe::ONE), Fe::ZERO);
        assert_eq!(f.trace(Fe::ZERO), Fe::ZERO);
    }

    #[test]
    fn fermat_and_inverse() {
        let f7 = ExtField::prime(7).unwrap();
        assert_eq!(f7.pow(Fe(3), 6), Fe::ONE);
        for a in 1..7 {
            assert_eq!(f7.mul(Fe(a), f7.inv(Fe(a)).unwrap()), Fe::ONE);
        }
        assert_eq!(f7.inv(Fe::ZERO), Err(Error::DivisionByZero));
        assert_eq!(f7.pow_signed(Fe(3), -1).unwrap(), Fe(5));
    }

    #[test]
    fn find_irreducible_small() {
        let f2 = ExtField::prime(2).unwrap();
        for seed in 0..5 {
            assert_eq!(find_irreducible(&f2, 2, seed).coeffs(), &[Fe(1), Fe(1), Fe(1)]);
            assert_eq!(find_irreducible(&f2, 1, seed).degree(), Some(1));
        }
        let f3 = ExtField::prime(3).unwrap();
        let allowed: [[u32; 3]; 3] = [[1, 0, 1], [2, 1, 1], [2, 2, 1]];
        for seed in 0..10 {
            let c: Vec<u32> = find_irreducible(&f3, 2, seed).coeffs().iter().map(|x| x.0).collect();
            assert!(allowed.iter().any(|a| a[..] == c[..]), "{c:?}");
        }
    }

    #[test]
    fn characters() {
        let f2 = ExtField::prime(2).unwrap();
        let z: Complex<f64> = f2.chi(&[Fe(1)], &[Fe(1)]).unwrap();
        assert!((z - Complex::new(-1.0, 0.0)).norm() < 1e-12);
        let f3 = ExtField::prime(3).unwrap();
        let s: Complex<f64> = (0..3).map(|y| f3.chi::<f64>(&[Fe(y)], &[Fe(1)]).unwrap()).sum();
        assert!(s.norm() < 1e-12);
        assert_eq!(f3.chi::<f64>(&[Fe(1)], &[]), Err(Error::LengthMismatch { expected: 1, got: 0 }));
    }

    #[test]
    fn field_mismatch() {
        let (a, b) = (f4(), ExtField::prime(2).unwrap());
        let r = elem_arith(a.wrap(Fe(1)), b.wrap(Fe(1)), ArithOp::Add);
        assert_eq!(r, Err(Error::FieldMismatch));
        let x = a.elem(&[0, 1]).unwrap();
        assert_eq!(elem_arith(x, x, ArithOp::Mul).unwrap().coeffs(), vec![1, 1]);
        assert_eq!(elem_arith(x, x, ArithOp::Pow(-1)).unwrap().coeffs(), vec![1, 1]);
    }

    #[test]
    fn descriptor_roundtrip() {
        let f = ExtField::new(3, 4, None).unwrap();
        let json = serde_json::to_string(&f.descriptor()).unwrap();
        let d: FieldDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(*d.build_field().unwrap(), f);
    }
}

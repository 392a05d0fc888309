//! Univariate polynomials over an [`ExtField`].

use crate::error::{Error, Result};
use crate::ffield::{ExtField, Fe, FieldTower, TowerElem};

/// Default bound on `q` for exhaustive root search.
pub const ROOT_SEARCH_LIMIT: u64 = 1 << 16;

/// Little-endian coefficients with no trailing zeros. The zero polynomial
/// has no coefficients and degree `None`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Fe>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Fe>) -> Poly {
        while coeffs.last() == Some(&Fe::ZERO) {
            coeffs.pop();
        }
        Poly { coeffs }
    }
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }
    pub fn one() -> Poly {
        Poly::constant(Fe::ONE)
    }
    pub fn constant(c: Fe) -> Poly {
        Poly::new(vec![c])
    }
    pub fn x() -> Poly {
        Poly::monomial(Fe::ONE, 1)
    }
    pub fn monomial(c: Fe, d: usize) -> Poly {
        let mut v = vec![Fe::ZERO; d + 1];
        v[d] = c;
        Poly::new(v)
    }
    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }
    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    /// Leading coefficient (zero for the zero polynomial).
    pub fn lead(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }
    /// Integer indices of the coefficients.
    pub fn to_ints(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.0).collect()
    }
}

/// Polynomial operations over a fixed field.
#[derive(Clone, Copy)]
pub struct PolyRing<'a> {
    f: &'a ExtField,
}

impl<'a> PolyRing<'a> {
    pub fn new(f: &'a ExtField) -> Self {
        PolyRing { f }
    }

    pub fn field(&self) -> &'a ExtField {
        self.f
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.coeffs.len().max(b.coeffs.len());
        Poly::new((0..n).map(|i| self.f.add(a.coeff(i), b.coeff(i))).collect())
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.coeffs.len().max(b.coeffs.len());
        Poly::new((0..n).map(|i| self.f.sub(a.coeff(i), b.coeff(i))).collect())
    }

    pub fn scale(&self, c: Fe, a: &Poly) -> Poly {
        Poly::new(a.coeffs.iter().map(|&x| self.f.mul(c, x)).collect())
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Fe::ZERO; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.f.add(out[i + j], self.f.mul(x, y));
            }
        }
        Poly::new(out)
    }

    /// `(quotient, remainder)` with `deg r < deg b`.
    pub fn divmod(&self, a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let inv_lead = self.f.inv(b.lead())?;
        let mut r = a.coeffs.clone();
        if r.len() <= db {
            return Ok((Poly::zero(), a.clone()));
        }
        let mut quot = vec![Fe::ZERO; r.len() - db];
        for d in (db..r.len()).rev() {
            let c = self.f.mul(r[d], inv_lead);
            if c.is_zero() {
                continue;
            }
            quot[d - db] = c;
            for (i, &bc) in b.coeffs.iter().enumerate() {
                let idx = d - db + i;
                r[idx] = self.f.sub(r[idx], self.f.mul(c, bc));
            }
        }
        r.truncate(db);
        Ok((Poly::new(quot), Poly::new(r)))
    }

    pub fn rem(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        self.divmod(a, b).map(|(_, r)| r)
    }

    pub fn monic(&self, a: &Poly) -> Poly {
        if a.is_zero() {
            return Poly::zero();
        }
        let inv = self.f.inv(a.lead()).expect("nonzero lead");
        self.scale(inv, a)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.rem(&x, &y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    pub fn derivative(&self, a: &Poly) -> Poly {
        Poly::new(a.coeffs.iter().enumerate().skip(1).map(|(i, &c)| self.f.mul(self.f.from_int(i as i64), c)).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, a: &Poly, x: Fe) -> Fe {
        a.coeffs.iter().rev().fold(Fe::ZERO, |acc, &c| self.f.add(self.f.mul(acc, x), c))
    }

    /// Horner evaluation at an element of a tower over this field.
    pub fn eval_tower(&self, a: &Poly, x: &TowerElem, t: &FieldTower) -> TowerElem {
        a.coeffs.iter().rev().fold(t.zero(), |acc, &c| t.add(&t.mul(&acc, x), &t.from_ground(c)))
    }

    /// `∏ (x − r)`.
    pub fn from_roots(&self, roots: &[Fe]) -> Poly {
        roots.iter().fold(Poly::one(), |acc, &r| self.mul(&acc, &Poly::new(vec![self.f.neg(r), Fe::ONE])))
    }

    /// The unique polynomial of degree `< points.len()` through the points.
    pub fn interpolate(&self, points: &[(Fe, Fe)]) -> Result<Poly> {
        if points.is_empty() {
            return Err(Error::BadParams("no interpolation points".into()));
        }
        let xs: Vec<Fe> = points.iter().map(|p| p.0).collect();
        let mut sorted = xs.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint);
        }
        let m = self.from_roots(&xs);
        let dm = self.derivative(&m);
        let mut acc = vec![Fe::ZERO; points.len()];
        for &(xi, yi) in points {
            if yi.is_zero() {
                continue;
            }
            // m / (x − xi) by synthetic division
            let mc = m.coeffs();
            let mut quot = vec![Fe::ZERO; mc.len() - 1];
            let mut carry = Fe::ZERO;
            for d in (1..mc.len()).rev() {
                carry = self.f.add(mc[d], self.f.mul(carry, xi));
                quot[d - 1] = carry;
            }
            let w = self.f.div(yi, self.eval(&dm, xi))?;
            for (slot, c) in acc.iter_mut().zip(quot) {
                *slot = self.f.add(*slot, self.f.mul(w, c));
            }
        }
        Ok(Poly::new(acc))
    }

    /// All roots in `F_q`, ascending, by exhaustive evaluation.
    pub fn roots(&self, a: &Poly) -> Result<Vec<Fe>> {
        self.roots_bounded(a, ROOT_SEARCH_LIMIT)
    }

    pub fn roots_bounded(&self, a: &Poly, limit: u64) -> Result<Vec<Fe>> {
        if a.is_zero() {
            return Err(Error::BadParams("roots of the zero polynomial".into()));
        }
        if self.f.q() as u64 > limit {
            return Err(Error::FieldTooLarge { q: self.f.q() as u64, limit });
        }
        Ok(self.f.elements().filter(|&x| self.eval(a, x).is_zero()).collect())
    }

    /// `(c, A)` with `a = c ∏_{r∈A}(x − r)` and distinct roots, or `None`.
    pub fn split_distinct_linear(&self, a: &Poly) -> Option<(Fe, Vec<Fe>)> {
        let deg = a.degree()?;
        if deg == 0 {
            return Some((a.lead(), Vec::new()));
        }
        if self.gcd(a, &self.derivative(a)).degree() != Some(0) {
            return None;
        }
        let roots = self.roots_bounded(a, u64::MAX).ok()?;
        (roots.len() == deg).then(|| (a.lead(), roots))
    }

    /// `base^e mod m`.
    pub fn powmod(&self, base: &Poly, mut e: u64, m: &Poly) -> Poly {
        let mut r = self.rem(&Poly::one(), m).expect("nonzero modulus");
        let mut b = self.rem(base, m).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                r = self.rem(&self.mul(&r, &b), m).unwrap();
            }
            b = self.rem(&self.mul(&b, &b), m).unwrap();
            e >>= 1;
        }
        r
    }

    /// Ben-Or test: `gcd(f, x^{q^i} − x) = 1` for `1 ≤ i ≤ d/2`. For `d ≤ 3`
    /// this is exactly the absence of roots.
    pub fn is_irreducible(&self, a: &Poly) -> bool {
        let d = match a.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(d) => d,
        };
        let x = Poly::x();
        let mut xp = x.clone();
        for _ in 1..=d / 2 {
            xp = self.powmod(&xp, self.f.q() as u64, a);
            if self.gcd(a, &self.sub(&xp, &x)).degree() != Some(0) {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::ExtField;

    fn p(v: &[u32]) -> Poly {
        Poly::new(v.iter().map(|&c| Fe(c)).collect())
    }

    #[test]
    fn divmod_gcd_examples() {
        let f2 = ExtField::prime(2).unwrap();
        let r2 = PolyRing::new(&f2);
        assert_eq!(r2.divmod(&p(&[1, 1, 1]), &p(&[1, 1])).unwrap(), (p(&[0, 1]), p(&[1])));
        assert_eq!(r2.divmod(&p(&[1]), &Poly::zero()), Err(Error::DivisionByZero));
        let f5 = ExtField::prime(5).unwrap();
        let r5 = PolyRing::new(&f5);
        assert_eq!(r5.gcd(&p(&[4, 0, 1]), &p(&[4, 1])), p(&[4, 1]));
        assert!(r5.mul(&p(&[1, 2]), &Poly::zero()).is_zero());
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(p(&[3]).degree(), Some(0));
    }

    #[test]
    fn eval_interpolate_examples() {
        let f7 = ExtField::prime(7).unwrap();
        let r = PolyRing::new(&f7);
        assert_eq!(r.eval(&p(&[0, 0, 1]), Fe(3)), Fe(2));
        assert_eq!(r.eval(&p(&[5, 1, 1]), Fe(0)), Fe(5));
        assert_eq!(r.eval(&Poly::zero(), Fe(4)), Fe(0));
        let pts = [(Fe(1), Fe(1)), (Fe(2), Fe(4)), (Fe(3), Fe(2))];
        assert_eq!(r.interpolate(&pts).unwrap(), p(&[0, 0, 1]));
        assert_eq!(r.interpolate(&[(Fe(4), Fe(6))]).unwrap(), p(&[6]));
        assert_eq!(r.interpolate(&[(Fe(1), Fe(1)), (Fe(1), Fe(2))]), Err(Error::DuplicatePoint));
        let f2 = ExtField::prime(2).unwrap();
        let r2 = PolyRing::new(&f2);
        assert_eq!(r2.interpolate(&[(Fe(0), Fe(1)), (Fe(1), Fe(1))]).unwrap(), p(&[1]));
    }

    #[test]
    fn roots_and_split_examples() {
        let f5 = ExtField::prime(5).unwrap();
        let r = PolyRing::new(&f5);
        assert_eq!(r.roots(&p(&[4, 0, 1])).unwrap(), vec![Fe(1), Fe(4)]);
        assert_eq!(r.split_distinct_linear(&p(&[4, 0, 1])), Some((Fe(1), vec![Fe(1), Fe(4)])));
        assert_eq!(r.split_distinct_linear(&p(&[0, 0, 1])), None);
        let f2 = ExtField::prime(2).unwrap();
        assert!(PolyRing::new(&f2).roots(&p(&[1, 1, 1])).unwrap().is_empty());
        let f7 = ExtField::prime(7).unwrap();
        let r7 = PolyRing::new(&f7);
        // 3(x − 2) = 3x + 1
        assert_eq!(r7.split_distinct_linear(&p(&[1, 3])), Some((Fe(3), vec![Fe(2)])));
        assert_eq!(r7.roots(&p(&[0, 6, 1])).unwrap(), vec![Fe(0), Fe(1)]);
    }

    #[test]
    fn irreducibility_matches_enumeration() {
        // Count monic irreducibles of degree 4 over F_3: (3^4 − 3^2)/4 = 18.
        let f3 = ExtField::prime(3).unwrap();
        let r = PolyRing::new(&f3);
        let mut count = 0;
        for idx in 0..81u32 {
            let mut c: Vec<Fe> = (0..4).map(|i| Fe(idx / 3u32.pow(i) % 3)).collect();
            c.push(Fe::ONE);
            if r.is_irreducible(&Poly::new(c)) {
                count += 1;
            }
        }
        assert_eq!(count, 18);
    }
}

//! `F_{q^h} = F_q[x]/(h(x))` with elements kept as degree-`<h` polynomials
//! over `F_q`, and a designated generator `b` of `F_{q^h}^×`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{find_irreducible, ExtField, Fe, FieldDescriptor, TowerDescriptor};
use crate::error::{Error, Result};
use crate::nt;
use crate::poly::{Poly, PolyRing};

/// Element of `F_{q^h}`: little-endian coefficients over `F_q`, length `h`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TowerElem(pub Vec<Fe>);

#[derive(Clone, Debug)]
pub struct FieldTower {
    ground: Arc<ExtField>,
    h: usize,
    h_poly: Poly,
    order: u64,
    order_factors: Vec<(u64, u32)>,
    base: TowerElem,
}

impl FieldTower {
    /// Builds the tower; `h_poly` defaults to [`find_irreducible`] with seed 0.
    /// The base `b` is the generator of smallest index.
    pub fn new(ground: Arc<ExtField>, h: usize, h_poly: Option<Poly>) -> Result<FieldTower> {
        if h == 0 {
            return Err(Error::DegreeMismatch { expected: 1, got: 0 });
        }
        let size = (ground.q() as u128).checked_pow(h as u32).filter(|&n| n < (1u128 << 62));
        let size = size.ok_or_else(|| Error::BadParams(format!("q^h too large for q={}, h={h}", ground.q())))?;
        let h_poly = match h_poly {
            Some(f) => {
                let deg = f.degree().unwrap_or(0);
                if deg != h || f.is_zero() {
                    return Err(Error::DegreeMismatch { expected: h, got: deg });
                }
                if f.lead() != Fe::ONE {
                    return Err(Error::NotMonic);
                }
                if !PolyRing::new(&ground).is_irreducible(&f) {
                    return Err(Error::Reducible(f.coeffs().iter().map(|c| c.0).collect()));
                }
                f
            }
            None => find_irreducible(&ground, h, 0),
        };
        let order = size as u64 - 1;
        let order_factors = nt::factorize(order)?;
        let mut t = FieldTower { ground, h, h_poly, order, order_factors, base: TowerElem(Vec::new()) };
        t.base = (1..=order).map(|i| t.from_index(i)).find(|b| t.is_generator(b)).expect("cyclic group");
        Ok(t)
    }

    pub fn ground(&self) -> &Arc<ExtField> {
        &self.ground
    }
    pub fn h(&self) -> usize {
        self.h
    }
    pub fn h_poly(&self) -> &Poly {
        &self.h_poly
    }
    /// `N = q^h − 1`.
    pub fn order(&self) -> u64 {
        self.order
    }
    pub fn order_factors(&self) -> &[(u64, u32)] {
        &self.order_factors
    }
    /// The DLOG base `b`.
    pub fn base(&self) -> &TowerElem {
        &self.base
    }

    pub fn zero(&self) -> TowerElem {
        TowerElem(vec![Fe::ZERO; self.h])
    }
    pub fn one(&self) -> TowerElem {
        self.from_ground(Fe::ONE)
    }
    pub fn from_ground(&self, c: Fe) -> TowerElem {
        let mut v = vec![Fe::ZERO; self.h];
        v[0] = c;
        TowerElem(v)
    }
    /// The canonical root α (class of `x`); equals `−h_0` when `h = 1`.
    pub fn alpha(&self) -> TowerElem {
        self.from_poly(&Poly::x())
    }
    /// The factor-base element `α − a`.
    pub fn alpha_minus(&self, a: Fe) -> TowerElem {
        self.from_poly(&Poly::new(vec![self.ground.neg(a), Fe::ONE]))
    }

    /// Reduces a ground polynomial modulo `h(x)`.
    pub fn from_poly(&self, f: &Poly) -> TowerElem {
        let r = PolyRing::new(&self.ground).rem(f, &self.h_poly).expect("h_poly nonzero");
        let mut v = r.coeffs().to_vec();
        v.resize(self.h, Fe::ZERO);
        TowerElem(v)
    }

    /// The representative polynomial of degree `< h`.
    pub fn rep(&self, a: &TowerElem) -> Poly {
        Poly::new(a.0.clone())
    }

    pub fn index(&self, a: &TowerElem) -> u64 {
        let q = self.ground.q() as u64;
        a.0.iter().rev().fold(0u64, |acc, c| acc * q + c.0 as u64)
    }

    pub fn from_index(&self, mut i: u64) -> TowerElem {
        let q = self.ground.q() as u64;
        TowerElem(
            (0..self.h)
                .map(|_| {
                    let c = Fe((i % q) as u32);
                    i /= q;
                    c
                })
                .collect(),
        )
    }

    pub fn is_zero(&self, a: &TowerElem) -> bool {
        a.0.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        TowerElem(a.0.iter().zip(&b.0).map(|(&x, &y)| self.ground.add(x, y)).collect())
    }

    pub fn sub(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        TowerElem(a.0.iter().zip(&b.0).map(|(&x, &y)| self.ground.sub(x, y)).collect())
    }

    pub fn mul(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        let f = &*self.ground;
        let h = self.h;
        let mut prod = vec![Fe::ZERO; 2 * h - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = f.add(prod[i + j], f.mul(x, y));
            }
        }
        let hc = self.h_poly.coeffs();
        for d in (h..prod.len()).rev() {
            let c = prod[d];
            if c.is_zero() {
                continue;
            }
            for (i, &hi) in hc.iter().take(h).enumerate() {
                let idx = d - h + i;
                prod[idx] = f.sub(prod[idx], f.mul(c, hi));
            }
            prod[d] = Fe::ZERO;
        }
        prod.truncate(h);
        TowerElem(prod)
    }

    pub fn pow(&self, a: &TowerElem, mut e: u64) -> TowerElem {
        let mut r = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: &TowerElem) -> Result<TowerElem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.order - 1))
    }

    pub fn div(&self, a: &TowerElem, b: &TowerElem) -> Result<TowerElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `b^i` for the designated base.
    pub fn base_pow(&self, i: u64) -> TowerElem {
        self.pow(&self.base, i % self.order)
    }

    pub fn is_generator(&self, a: &TowerElem) -> bool {
        if self.is_zero(a) {
            return false;
        }
        let one = self.one();
        self.order_factors.iter().all(|&(l, _)| self.pow(a, self.order / l) != one)
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        let mut d = self.ground.descriptor();
        d.tower = Some(TowerDescriptor {
            h: self.h,
            h_poly: self.h_poly.coeffs().iter().map(|&c| self.ground.coeffs(c)).collect(),
        });
        d
    }
}

//! Generic discrete-log baselines: baby-step giant-step, Pohlig–Hellman and
//! random self-reduction.

use std::collections::HashMap;
use std::hash::Hash;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{ExtField, Fe, FieldTower, TowerElem};
use crate::nt;

/// A multiplicative group in which discrete logs are taken.
pub trait CyclicGroup {
    type Elem: Clone + Eq + Hash;
    fn identity(&self) -> Self::Elem;
    fn op(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut r = self.identity();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.op(&r, &b);
            }
            b = self.op(&b, &b);
            e >>= 1;
        }
        r
    }
}

impl CyclicGroup for ExtField {
    type Elem = Fe;
    fn identity(&self) -> Fe {
        Fe::ONE
    }
    fn op(&self, a: &Fe, b: &Fe) -> Fe {
        self.mul(*a, *b)
    }
    fn pow(&self, a: &Fe, e: u64) -> Fe {
        ExtField::pow(self, *a, e)
    }
}

impl CyclicGroup for FieldTower {
    type Elem = TowerElem;
    fn identity(&self) -> TowerElem {
        self.one()
    }
    fn op(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        self.mul(a, b)
    }
    fn pow(&self, a: &TowerElem, e: u64) -> TowerElem {
        FieldTower::pow(self, a, e)
    }
}

/// Largest baby-step table built.
pub const MAX_BSGS_TABLE: u64 = 1 << 24;

/// Baby-step table for a fixed `g` of order `order`, reusable across targets.
#[derive(Clone, Debug)]
pub struct Bsgs<E> {
    order: u64,
    m: u64,
    baby: HashMap<E, u64>,
    giant: E,
}

impl<E: Clone + Eq + Hash> Bsgs<E> {
    pub fn new<G: CyclicGroup<Elem = E>>(group: &G, g: &E, order: u64) -> Result<Self> {
        if order == 0 {
            return Err(Error::BadParams("group order 0".into()));
        }
        let m = nt::isqrt(order - 1) + 1;
        if m > MAX_BSGS_TABLE {
            return Err(Error::BudgetExceeded(m));
        }
        let mut baby = HashMap::with_capacity(m as usize);
        let mut x = group.identity();
        for j in 0..m {
            baby.entry(x.clone()).or_insert(j);
            x = group.op(&x, g);
        }
        let giant = group.pow(g, (order - m % order) % order);
        Ok(Bsgs { order, m, baby, giant })
    }

    /// The exponent in `[0, order)` with `g^k = y`.
    pub fn log<G: CyclicGroup<Elem = E>>(&self, group: &G, y: &E) -> Option<u64> {
        let mut gamma = y.clone();
        for i in 0..self.m {
            if let Some(&j) = self.baby.get(&gamma) {
                return Some((i * self.m + j) % self.order);
            }
            gamma = group.op(&gamma, &self.giant);
        }
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DlogMethod {
    Bsgs,
    PohligHellman,
}

/// Pohlig–Hellman over the given factorization of `order`, with BSGS per
/// prime and digit-by-digit lifting.
pub fn pohlig_hellman<G: CyclicGroup>(group: &G, g: &G::Elem, y: &G::Elem, order: u64) -> Result<u64> {
    let mut parts = Vec::new();
    for (l, e) in nt::factorize(order)? {
        let gl = group.pow(g, order / l);
        let table = Bsgs::new(group, &gl, l)?;
        let g_inv = group.pow(g, order - 1);
        let mut x = 0u64;
        let mut lk = 1u64;
        for k in 0..e {
            // (y·g^{−x})^{order / l^{k+1}}
            let shifted = group.op(y, &group.pow(&g_inv, x));
            let h = group.pow(&shifted, order / (lk * l));
            let d = table.log(group, &h).ok_or(Error::NotInSubgroup)?;
            x += d * lk;
            if k + 1 < e {
                lk *= l;
            }
        }
        parts.push((x, l.pow(e)));
    }
    Ok(nt::crt(&parts) % order)
}

/// The unique `k ∈ [0, order)` with `g^k = y`.
pub fn baseline_dlog<G: CyclicGroup>(
    group: &G,
    g: &G::Elem,
    y: &G::Elem,
    order: u64,
    method: DlogMethod,
) -> Result<u64> {
    let k = match method {
        DlogMethod::Bsgs => Bsgs::new(group, g, order)?.log(group, y).ok_or(Error::NotInSubgroup)?,
        DlogMethod::PohligHellman => pohlig_hellman(group, g, y, order)?,
    };
    if group.pow(g, k) != *y {
        return Err(Error::NotInSubgroup);
    }
    Ok(k)
}

/// One cyclic factor `⟨generator⟩` of order `order` inside `group`.
pub struct Component<'g, G: CyclicGroup> {
    pub group: &'g G,
    pub generator: G::Elem,
    pub order: u64,
}

/// Worst-case to average-case wrapper: each `y_i` is rerandomized as
/// `y_i·b_i^r`, handed to `solver(i, ·)`, and the shift is undone.
///
/// A solver answer that does not check out is reported as
/// [`Error::SolverFailed`] for that component.
pub fn self_reduce_and_split<G, S, R>(
    components: &[Component<'_, G>],
    ys: &[G::Elem],
    mut solver: S,
    rng: &mut R,
) -> Result<Vec<u64>>
where
    G: CyclicGroup,
    S: FnMut(usize, &G::Elem) -> Option<u64>,
    R: Rng + ?Sized,
{
    if components.len() != ys.len() {
        return Err(Error::LengthMismatch { expected: components.len(), got: ys.len() });
    }
    components
        .iter()
        .zip(ys)
        .enumerate()
        .map(|(i, (c, y))| {
            let r = rng.gen_range(0..c.order);
            let shifted = c.group.op(y, &c.group.pow(&c.generator, r));
            let z = solver(i, &shifted).ok_or(Error::SolverFailed(i))?;
            if c.group.pow(&c.generator, z) != shifted {
                return Err(Error::SolverFailed(i));
            }
            Ok((z % c.order + c.order - r) % c.order)
        })
        .collect()
}

//! Moment subset-sum: size padding with dummy elements and an exhaustive
//! oracle for checking that padding preserves the answer.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{CheckedAdd, CheckedMul, FromPrimitive, Signed, ToPrimitive};
use rand::seq::index::sample;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default cap on the number of `k`-subsets enumerated.
pub const MSS_ENUMERATION_LIMIT: u128 = 10_000_000;

/// Integer type for instances. Arithmetic is checked so fixed-width types
/// report [`Error::Overflow`] instead of wrapping.
pub trait MssInt:
    Clone + Ord + Signed + CheckedAdd + CheckedMul + FromPrimitive + ToPrimitive + Debug + Send + Sync
{
}

impl<T> MssInt for T where
    T: Clone + Ord + Signed + CheckedAdd + CheckedMul + FromPrimitive + ToPrimitive + Debug + Send + Sync
{
}

/// Find `k` elements of `A` whose `r`-th power sums equal `m_r` for
/// `r = 1..=d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MssInstance<I: MssInt = BigInt> {
    a: Vec<I>,
    k: usize,
    moments: Vec<I>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MssAnswer<I: MssInt = BigInt> {
    Yes(Vec<I>),
    No,
}

impl<I: MssInt> MssAnswer<I> {
    pub fn is_yes(&self) -> bool {
        matches!(self, MssAnswer::Yes(_))
    }
}

fn checked_pow<I: MssInt>(a: &I, r: usize) -> Result<I> {
    (0..r).try_fold(I::one(), |acc, _| acc.checked_mul(a).ok_or(Error::Overflow))
}

fn checked_from<I: MssInt>(x: u64) -> Result<I> {
    I::from_u64(x).ok_or(Error::Overflow)
}

/// `C(n, k)` saturating at `u128::MAX`.
fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).try_fold(1u128, |acc, i| acc.checked_mul((n - i) as u128).map(|x| x / (i as u128 + 1))).unwrap_or(u128::MAX)
}

impl<I: MssInt> MssInstance<I> {
    /// Requires distinct elements, `1 ≤ k ≤ |A|` and at least one moment.
    pub fn new(a: Vec<I>, k: usize, moments: Vec<I>) -> Result<Self> {
        let mut sorted = a.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::BadParams("elements of A must be distinct".into()));
        }
        if k == 0 || k > a.len() {
            return Err(Error::BadParams(format!("subset size k = {k} outside 1..={}", a.len())));
        }
        if moments.is_empty() {
            return Err(Error::BadParams("at least one moment is required".into()));
        }
        Ok(MssInstance { a, k, moments })
    }

    pub fn a(&self) -> &[I] {
        &self.a
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn moments(&self) -> &[I] {
        &self.moments
    }
    pub fn d(&self) -> usize {
        self.moments.len()
    }
    /// `max |a|` over `A`.
    pub fn magnitude(&self) -> I {
        self.a.iter().map(|x| x.abs()).max().unwrap_or_else(I::zero)
    }

    /// Whether `subset` (as values) is a valid witness.
    pub fn check_witness(&self, subset: &[I]) -> Result<bool> {
        if subset.len() != self.k || !subset.iter().all(|x| self.a.contains(x)) {
            return Ok(false);
        }
        let mut distinct = subset.to_vec();
        distinct.sort();
        distinct.dedup();
        if distinct.len() != self.k {
            return Ok(false);
        }
        for (r, m) in self.moments.iter().enumerate() {
            let s = subset
                .iter()
                .try_fold(I::zero(), |acc, x| acc.checked_add(&checked_pow(x, r + 1)?).ok_or(Error::Overflow))?;
            if &s != m {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Appends `D = {R, …, R + M − 1}` with `R = |m_1| + kU + 1`, `U = max|a|`.
pub fn pad_instance<I: MssInt>(inst: &MssInstance<I>, m: u64) -> Result<MssInstance<I>> {
    if m == 0 {
        return Err(Error::BadParams("pad count M must be at least 1".into()));
    }
    let u = inst.magnitude();
    let ku = checked_from::<I>(inst.k as u64)?.checked_mul(&u).ok_or(Error::Overflow)?;
    let r = inst.moments[0].abs().checked_add(&ku).and_then(|x| x.checked_add(&I::one())).ok_or(Error::Overflow)?;
    let mut a = inst.a.clone();
    for j in 0..m {
        a.push(r.checked_add(&checked_from(j)?).ok_or(Error::Overflow)?);
    }
    Ok(MssInstance { a, k: inst.k, moments: inst.moments.clone() })
}

/// The first dummy `R` used by [`pad_instance`].
pub fn pad_start<I: MssInt>(inst: &MssInstance<I>) -> Result<I> {
    let ku = checked_from::<I>(inst.k as u64)?.checked_mul(&inst.magnitude()).ok_or(Error::Overflow)?;
    inst.moments[0].abs().checked_add(&ku).and_then(|x| x.checked_add(&I::one())).ok_or(Error::Overflow)
}

/// Exhaustive search over `k`-subsets in lexicographic index order; the
/// returned witness is the first one found in that order.
pub fn brute_force_mss<I: MssInt>(inst: &MssInstance<I>, limit: u128) -> Result<MssAnswer<I>> {
    let (n, k, d) = (inst.a.len(), inst.k, inst.d());
    let size = binomial(n, k);
    if size > limit {
        return Err(Error::InstanceTooLarge { size, limit });
    }
    let powers: Vec<Vec<I>> =
        inst.a.iter().map(|x| (1..=d).map(|r| checked_pow(x, r)).collect()).collect::<Result<_>>()?;
    let found = (0..=n - k)
        .into_par_iter()
        .map(|first| {
            let mut chosen = vec![first];
            let sums = powers[first].clone();
            search(&powers, &inst.moments, k, first + 1, &mut chosen, &sums)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next();
    Ok(match found {
        Some(idx) => MssAnswer::Yes(idx.into_iter().map(|i| inst.a[i].clone()).collect()),
        None => MssAnswer::No,
    })
}

fn search<I: MssInt>(
    powers: &[Vec<I>],
    target: &[I],
    k: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    sums: &[I],
) -> Result<Option<Vec<usize>>> {
    if chosen.len() == k {
        return Ok((sums == target).then(|| chosen.clone()));
    }
    let remaining = k - chosen.len();
    for i in start..=powers.len() - remaining {
        let next: Vec<I> =
            sums.iter().zip(&powers[i]).map(|(s, p)| s.checked_add(p).ok_or(Error::Overflow)).collect::<Result<_>>()?;
        chosen.push(i);
        if let Some(w) = search(powers, target, k, i + 1, chosen, &next)? {
            return Ok(Some(w));
        }
        chosen.pop();
    }
    Ok(None)
}

/// Random instance with distinct elements in `[−bound, bound]`. Planted
/// instances take their moments from a random `k`-subset; otherwise that
/// subset's first moment is shifted by a random nonzero amount.
pub fn random_instance<R: Rng + ?Sized>(
    rng: &mut R,
    size: usize,
    k: usize,
    d: usize,
    bound: i64,
    planted: bool,
) -> Result<MssInstance<BigInt>> {
    if bound < 0 || (2 * bound + 1) < size as i64 {
        return Err(Error::BadParams(format!("cannot draw {size} distinct values from [-{bound}, {bound}]")));
    }
    let a: Vec<BigInt> =
        sample(rng, (2 * bound + 1) as usize, size).into_iter().map(|i| BigInt::from(i as i64 - bound)).collect();
    let pick = sample(rng, size, k.min(size));
    let mut moments: Vec<BigInt> = (1..=d).map(|r| pick.iter().map(|i| a[i].pow(r as u32)).sum()).collect();
    if !planted {
        let delta = rng.gen_range(1..=3 * bound.max(1));
        moments[0] += if rng.gen::<bool>() { delta } else { -delta };
    }
    MssInstance::new(a, k, moments)
}

/// Outcome of solving an instance and its padding.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PaddingCheck {
    pub original_yes: bool,
    pub padded_yes: bool,
    pub padded_size: usize,
    pub pad_start: String,
    /// Every padded witness avoids the dummies.
    pub witness_avoids_dummies: bool,
}

pub fn check_padding(inst: &MssInstance<BigInt>, m: u64, limit: u128) -> Result<PaddingCheck> {
    let padded = pad_instance(inst, m)?;
    let r = pad_start(inst)?;
    let orig = brute_force_mss(inst, limit)?;
    let pad = brute_force_mss(&padded, limit)?;
    let avoids = match &pad {
        MssAnswer::Yes(w) => w.iter().all(|x| x < &r),
        MssAnswer::No => true,
    };
    Ok(PaddingCheck {
        original_yes: orig.is_yes(),
        padded_yes: pad.is_yes(),
        padded_size: padded.a().len(),
        pad_start: r.to_string(),
        witness_avoids_dummies: avoids,
    })
}

/// Serialized instance `{"A": [...], "k": ..., "m": [...]}`. Integers that
/// do not fit in 64 bits are written as decimal strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MssJson {
    #[serde(rename = "A", serialize_with = "ser_big", deserialize_with = "de_big")]
    pub a: Vec<BigInt>,
    pub k: usize,
    #[serde(serialize_with = "ser_big", deserialize_with = "de_big")]
    pub m: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    I(i64),
    U(u64),
    S(String),
}

fn ser_big<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    let out: Vec<JsonInt> =
        v.iter().map(|x| x.to_i64().map(JsonInt::I).unwrap_or_else(|| JsonInt::S(x.to_string()))).collect();
    out.serialize(s)
}

fn de_big<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigInt>, D::Error> {
    let raw: Vec<JsonInt> = Vec::deserialize(d)?;
    raw.into_iter()
        .map(|x| match x {
            JsonInt::I(i) => Ok(BigInt::from(i)),
            JsonInt::U(u) => Ok(BigInt::from(u)),
            JsonInt::S(s) => s.parse().map_err(|_| serde::de::Error::custom(format!("not an integer: {s:?}"))),
        })
        .collect()
}

impl MssJson {
    pub fn build(&self) -> Result<MssInstance<BigInt>> {
        MssInstance::new(self.a.clone(), self.k, self.m.clone())
    }
}

impl From<&MssInstance<BigInt>> for MssJson {
    fn from(i: &MssInstance<BigInt>) -> Self {
        MssJson { a: i.a.clone(), k: i.k, m: i.moments.clone() }
    }
}

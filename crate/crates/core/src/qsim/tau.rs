//! Bernoulli noise rates: the duality `τ ↦ τ⊥`, the derived IBDD rate `τ′`,
//! and the decoder rate table at the Cheng–Wan parameters `k = 3h + 4`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nt;
use crate::scalar::Real;

fn float<T: Real>(x: u64) -> T {
    T::from_u64(x).unwrap()
}

/// `τ⊥ = (1/q)(√((q−1)(1−τ)) − √τ)²` for `0 ≤ τ ≤ 1 − 1/q`.
pub fn tau_perp<T: Real>(tau: T, q: u64) -> Result<T> {
    let qf: T = float(q);
    let slack = T::epsilon() * float(16);
    if q < 2 || !(tau >= T::zero() && tau <= T::one() - T::one() / qf + slack) {
        return Err(Error::OutOfRange(tau.to_f64().unwrap_or(f64::NAN)));
    }
    let tau = tau.min(T::one() - T::one() / qf);
    let d = ((qf - T::one()) * (T::one() - tau)).sqrt() - tau.sqrt();
    Ok(d * d / qf)
}

/// `τ′ = τ⊥(1 + (τ⊥q)^{−1/3})`, for `τ⊥ > 0`.
pub fn tau_prime<T: Real>(tau_perp: T, q: u64) -> Result<T> {
    if tau_perp.partial_cmp(&T::zero()) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::OutOfRange(tau_perp.to_f64().unwrap_or(f64::NAN)));
    }
    let mu = tau_perp * float::<T>(q);
    Ok(tau_perp * (T::one() + mu.powf(-T::one() / float(3))))
}

/// `τ⊥ − (1 − τ − 2√t/q − 1/q)` with `t = qτ`.
pub fn expansion_remainder<T: Real>(tau: T, q: u64) -> Result<T> {
    let qf: T = float(q);
    let t = qf * tau;
    let two: T = float(2);
    Ok(tau_perp(tau, q)? - (T::one() - tau - two * t.sqrt() / qf - T::one() / qf))
}

/// Berlekamp–Welch on the dual: `k/(2q)`.
pub fn tau_bw<T: Real>(q: u64, k: u64) -> T {
    float::<T>(k) / float::<T>(2 * q)
}

/// Guruswami–Sudan on the dual: `1 − √((q−k)/q)`.
pub fn tau_gs<T: Real>(q: u64, k: u64) -> T {
    T::one() - (float::<T>(q - k) / float::<T>(q)).sqrt()
}

/// `(q−1)(q−k)/q²`.
pub fn tau_usd_perp<T: Real>(q: u64, k: u64) -> T {
    float::<T>((q - 1) * (q - k)) / (float::<T>(q) * float::<T>(q))
}

/// The rate whose dual is [`tau_usd_perp`].
pub fn tau_usd<T: Real>(q: u64, k: u64) -> Result<T> {
    tau_perp(tau_usd_perp::<T>(q, k), q)
}

/// `4h/q`.
pub fn tau_required<T: Real>(q: u64, h: u64) -> T {
    float::<T>(4 * h) / float::<T>(q)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TauRow {
    pub decoder: String,
    pub tau: f64,
    pub tau_perp: f64,
    pub tau_prime: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TauTable {
    pub q: u64,
    pub h: u64,
    pub k: u64,
    /// `h ≤ q^{1/4} − 2`.
    pub in_regime: bool,
    pub rows: Vec<TauRow>,
}

/// Rates of each decoder (applied to the dual code) at `k = 3h + 4`.
pub fn decoder_table(q: u64, h: u64) -> Result<TauTable> {
    if nt::prime_power(q).is_none() {
        return Err(Error::BadParams(format!("q = {q} is not a prime power")));
    }
    if h == 0 {
        return Err(Error::BadParams("h must be at least 1".into()));
    }
    let k = 3 * h + 4;
    if k >= q || 4 * h >= q {
        return Err(Error::BadParams(format!("k = 3h + 4 = {k} must be below q = {q}")));
    }
    let row = |name: &str, tau: f64| -> Result<TauRow> {
        let perp = tau_perp(tau, q)?;
        Ok(TauRow { decoder: name.into(), tau, tau_perp: perp, tau_prime: tau_prime(perp, q)? })
    };
    let rows = vec![
        row("bw", tau_bw(q, k))?,
        row("gs", tau_gs(q, k))?,
        row("usd", tau_usd(q, k)?)?,
        row("required", tau_required(q, h))?,
    ];
    Ok(TauTable { q, h, k, in_regime: (h as f64) <= (q as f64).powf(0.25) - 2.0, rows })
}

//! Product Bernoulli amplitude states and their Fourier weight law.

use num_complex::Complex;
use rand::Rng;

use super::tau::tau_perp;
use super::{checked_dim, AmplitudeState};
use crate::error::{Error, Result};
use crate::linalg::index_to_vec;
use crate::scalar::Real;

/// Single-coordinate amplitude `u(0) = √(1−τ)`, `u(x≠0) = √(τ/(q−1))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BernoulliAmplitude<T: Real = f64> {
    q: u32,
    tau: T,
}

impl<T: Real> BernoulliAmplitude<T> {
    /// Requires `0 ≤ τ ≤ 1 − 1/q`.
    pub fn new(q: u32, tau: T) -> Result<Self> {
        tau_perp(tau, q as u64)?;
        Ok(BernoulliAmplitude { q, tau })
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn tau(&self) -> T {
        self.tau
    }
    pub fn amp(&self, nonzero: bool) -> T {
        if nonzero {
            (self.tau / T::from_u32(self.q - 1).unwrap()).sqrt()
        } else {
            (T::one() - self.tau).sqrt()
        }
    }
    /// The dual rate; its Fourier transform is `BernoulliAmplitude(q, τ⊥)`.
    pub fn dual(&self) -> Result<Self> {
        BernoulliAmplitude::new(self.q, tau_perp(self.tau, self.q as u64)?)
    }
}

/// `⊗_i Σ_α u(α)|α⟩` on `F_q^n`.
pub fn build_bernoulli_state<T: Real>(u: &BernoulliAmplitude<T>, n: usize, limit: u128) -> Result<AmplitudeState<T>> {
    let dim = checked_dim(u.q, n, limit)?;
    let (a0, a1) = (u.amp(false), u.amp(true));
    let amps = (0..dim as u64)
        .map(|i| {
            let w = index_to_vec(u.q, n, i).iter().filter(|c| !c.is_zero()).count() as i32;
            Complex::new(a0.powi(n as i32 - w) * a1.powi(w), T::zero())
        })
        .collect();
    AmplitudeState::new(u.q, n, amps)
}

/// Measures the QFT of a product Bernoulli state coordinate by coordinate:
/// each position is nonzero with probability `τ⊥`, uniformly among the
/// `q − 1` nonzero values.
#[derive(Clone, Copy, Debug)]
pub struct FourierWeightSampler {
    q: u32,
    n: usize,
    tau_perp: f64,
}

impl FourierWeightSampler {
    pub fn new(q: u32, n: usize, tau: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadParams("n must be positive".into()));
        }
        Ok(FourierWeightSampler { q, n, tau_perp: tau_perp(tau, q as u64)? })
    }
    pub fn tau_perp(&self) -> f64 {
        self.tau_perp
    }
    /// One measured vector, as element indices.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u32> {
        (0..self.n).map(|_| if rng.gen::<f64>() < self.tau_perp { rng.gen_range(1..self.q) } else { 0 }).collect()
    }
    pub fn sample_weight<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        self.sample(rng).iter().filter(|&&x| x != 0).count()
    }
}

/// `exp(−(τ⊥q)^{1/3}/3)`: the upper-tail bound for weight above `τ′n` when `n = q`.
pub fn chernoff_tail_bound(tau_perp: f64, q: u64) -> f64 {
    (-(tau_perp * q as f64).cbrt() / 3.0).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::field_of_order;
    use crate::qsim::{qft, DEFAULT_MAX_DIM};
    use approx::assert_relative_eq;

    #[test]
    fn point_mass_and_origin() {
        let u = BernoulliAmplitude::new(3, 0.0).unwrap();
        let s = build_bernoulli_state(&u, 2, DEFAULT_MAX_DIM).unwrap();
        assert_relative_eq!(s.amps()[0].re, 1.0);
        let u = BernoulliAmplitude::new(3, 0.4).unwrap();
        let s = build_bernoulli_state(&u, 2, DEFAULT_MAX_DIM).unwrap();
        assert_relative_eq!(s.amps()[0].norm_sqr(), 0.36, epsilon = 1e-12);
        assert_relative_eq!(s.norm_sqr(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn fourier_marginal_is_dual_rate() {
        let f = field_of_order(3).unwrap();
        let u = BernoulliAmplitude::new(3, 0.4).unwrap();
        let s = qft(&f, &build_bernoulli_state(&u, 3, DEFAULT_MAX_DIM).unwrap()).unwrap();
        let perp = tau_perp(0.4, 3).unwrap();
        for pos in 0..3 {
            let mass: f64 = s
                .probabilities()
                .iter()
                .enumerate()
                .filter(|(i, _)| index_to_vec(3, 3, *i as u64)[pos].0 != 0)
                .map(|(_, p)| p)
                .sum();
            assert_relative_eq!(mass, perp, epsilon = 1e-12);
        }
        // the transform is again a product Bernoulli state
        let d = build_bernoulli_state(&u.dual().unwrap(), 3, DEFAULT_MAX_DIM).unwrap();
        for (a, b) in s.amps().iter().zip(d.amps()) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}

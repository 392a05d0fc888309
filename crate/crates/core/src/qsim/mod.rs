//! Dense amplitude-vector simulation over `F_q^n`.
//!
//! Basis vectors are indexed mixed-radix with coordinate 0 as the most
//! significant digit, matching [`crate::linalg::index_to_vec`].

mod bernoulli;
mod pgm;
mod regev;
mod tau;

use num_complex::Complex;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ffield::{root_of_unity, ExtField, Fe};
use crate::linalg::index_to_vec;
use crate::scalar::Real;

pub use bernoulli::{build_bernoulli_state, chernoff_tail_bound, BernoulliAmplitude, FourierWeightSampler};
pub use pgm::{pgm_basis, pgm_bdd, pgm_overlaps, PgmConfig, PgmOutcome, PgmOverlaps, StepTrace};
pub use regev::{
    ibdd_bernoulli, ibdd_experiment, regev_pipeline, uniform_on_span, CosetDecoder, IbddConfig, LeaderTable,
    NearestCodeword, RegevOutput, RegevPipeline, RsDualDecoder, StatsRecord,
};
pub use tau::{
    decoder_table, expansion_remainder, tau_bw, tau_gs, tau_perp, tau_prime, tau_required, tau_usd, tau_usd_perp,
    TauRow, TauTable,
};

/// Default cap on amplitude-vector length.
pub const DEFAULT_MAX_DIM: u128 = 1 << 24;

/// `q^n` as a length, or `StateTooLarge` above `limit`.
pub fn checked_dim(q: u32, n: usize, limit: u128) -> Result<usize> {
    let dim = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if dim > limit {
        return Err(Error::StateTooLarge { dim, limit });
    }
    Ok(dim as usize)
}

/// Pure state on `(C^q)^{⊗n}`.
#[derive(Clone, Debug, PartialEq)]
pub struct AmplitudeState<T: Real = f64> {
    q: u32,
    n: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Real> AmplitudeState<T> {
    pub fn new(q: u32, n: usize, amps: Vec<Complex<T>>) -> Result<Self> {
        let dim = checked_dim(q, n, DEFAULT_MAX_DIM.max(amps.len() as u128))?;
        if amps.len() != dim {
            return Err(Error::LengthMismatch { expected: dim, got: amps.len() });
        }
        Ok(AmplitudeState { q, n, amps })
    }

    pub fn basis(q: u32, n: usize, idx: usize) -> Result<Self> {
        let dim = checked_dim(q, n, DEFAULT_MAX_DIM)?;
        let mut amps = vec![Complex::new(T::zero(), T::zero()); dim];
        *amps.get_mut(idx).ok_or(Error::BadParams(format!("basis index {idx} out of range")))? =
            Complex::new(T::one(), T::zero());
        Ok(AmplitudeState { q, n, amps })
    }

    pub fn uniform(q: u32, n: usize) -> Result<Self> {
        let dim = checked_dim(q, n, DEFAULT_MAX_DIM)?;
        let a = T::one() / T::from_usize(dim).unwrap().sqrt();
        Ok(AmplitudeState { q, n, amps: vec![Complex::new(a, T::zero()); dim] })
    }

    /// Unnormalized state with amplitude `f(x)` at each `x ∈ F_q^n`.
    pub fn from_fn(q: u32, n: usize, limit: u128, f: impl Fn(&[Fe]) -> Complex<T>) -> Result<Self> {
        let dim = checked_dim(q, n, limit)?;
        let amps = (0..dim as u64).map(|i| f(&index_to_vec(q, n, i))).collect();
        Ok(AmplitudeState { q, n, amps })
    }

    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn dim(&self) -> usize {
        self.amps.len()
    }
    pub fn amps(&self) -> &[Complex<T>] {
        &self.amps
    }
    pub fn amps_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.amps
    }
    pub fn into_amps(self) -> Vec<Complex<T>> {
        self.amps
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Scales to unit norm; the zero vector is rejected.
    pub fn normalize(&mut self) -> Result<()> {
        let n = self.norm_sqr().sqrt();
        if n == T::zero() {
            return Err(Error::BadParams("cannot normalize the zero vector".into()));
        }
        for a in &mut self.amps {
            *a = *a / n;
        }
        Ok(())
    }

    pub fn probabilities(&self) -> Vec<T> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        if self.amps.len() != other.amps.len() {
            return Err(Error::LengthMismatch { expected: self.amps.len(), got: other.amps.len() });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .fold(Complex::new(T::zero(), T::zero()), |x, y| x + y))
    }
}

/// Single-coordinate Fourier matrix `χ(xy)/√q`, applied axis by axis.
#[derive(Clone, Debug)]
pub struct Qft<T: Real = f64> {
    q: usize,
    chars: Vec<Complex<T>>,
}

impl<T: Real> Qft<T> {
    pub fn new(field: &ExtField) -> Self {
        let q = field.q() as usize;
        let scale = T::one() / T::from_usize(q).unwrap().sqrt();
        let mut chars = Vec::with_capacity(q * q);
        for y in field.elements() {
            for x in field.elements() {
                let k = field.trace(field.mul(x, y)).0;
                chars.push(root_of_unity::<T>(k, field.p()) * scale);
            }
        }
        Qft { q, chars }
    }

    /// Transforms axes `axes` of a register of `total` q-ary coordinates.
    pub fn apply(&self, amps: &mut [Complex<T>], axes: std::ops::Range<usize>, total: usize, inverse: bool) {
        for axis in axes {
            self.apply_axis(amps, axis, total, inverse);
        }
    }

    fn apply_axis(&self, amps: &mut [Complex<T>], axis: usize, total: usize, inverse: bool) {
        let q = self.q;
        let stride = q.pow((total - axis - 1) as u32);
        let block = stride * q;
        let transform = |chunk: &mut [Complex<T>]| {
            let mut buf = vec![Complex::new(T::zero(), T::zero()); q];
            for off in 0..stride {
                for (y, slot) in buf.iter_mut().enumerate() {
                    let row = &self.chars[y * q..(y + 1) * q];
                    *slot = (0..q)
                        .map(|x| {
                            let c = if inverse { row[x].conj() } else { row[x] };
                            c * chunk[off + x * stride]
                        })
                        .fold(Complex::new(T::zero(), T::zero()), |a, b| a + b);
                }
                for (x, v) in buf.iter().enumerate() {
                    chunk[off + x * stride] = *v;
                }
            }
        };
        if amps.len() >= 1 << 14 && amps.len() / block > 1 {
            amps.par_chunks_mut(block).for_each(transform);
        } else {
            amps.chunks_mut(block).for_each(transform);
        }
    }
}

/// `f̃(x) = q^{−n/2} Σ_y χ_x(y) f(y)`.
pub fn qft<T: Real>(field: &ExtField, state: &AmplitudeState<T>) -> Result<AmplitudeState<T>> {
    transform(field, state, false)
}

/// Inverse of [`qft`] (conjugate characters).
pub fn inverse_qft<T: Real>(field: &ExtField, state: &AmplitudeState<T>) -> Result<AmplitudeState<T>> {
    transform(field, state, true)
}

fn transform<T: Real>(field: &ExtField, state: &AmplitudeState<T>, inverse: bool) -> Result<AmplitudeState<T>> {
    if field.q() != state.q {
        return Err(Error::FieldMismatch);
    }
    let mut out = state.clone();
    Qft::new(field).apply(&mut out.amps, 0..state.n, state.n, inverse);
    Ok(out)
}

/// Inverse-CDF draw from unnormalized nonnegative weights.
pub fn sample_index<T: Real, R: Rng + ?Sized>(weights: &[T], rng: &mut R) -> usize {
    let total: f64 = weights.iter().map(|w| w.to_f64().unwrap()).sum();
    let r = rng.gen::<f64>() * total;
    let mut acc = 0.0;
    for (i, w) in weights.iter().enumerate() {
        acc += w.to_f64().unwrap();
        if r < acc {
            return i;
        }
    }
    weights.iter().rposition(|w| *w > T::zero()).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::field_of_order;
    use crate::rscode::RSCode;
    use approx::assert_relative_eq;

    #[test]
    fn basis_zero_to_uniform() {
        for q in [2u64, 3, 4, 5, 8, 9] {
            let f = field_of_order(q).unwrap();
            let s = AmplitudeState::<f64>::basis(q as u32, 1, 0).unwrap();
            let t = qft(&f, &s).unwrap();
            let u = 1.0 / (q as f64).sqrt();
            for a in t.amps() {
                assert_relative_eq!(a.re, u, epsilon = 1e-12);
                assert_relative_eq!(a.im, 0.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn code_to_dual() {
        let f = field_of_order(3).unwrap();
        let code = RSCode::full_support(f.clone(), 1).unwrap();
        let words = code.to_linear().codewords(1 << 10).unwrap();
        let dual = code.to_linear().dual().codewords(1 << 10).unwrap();
        let c = 1.0 / (words.len() as f64).sqrt();
        let s = AmplitudeState::<f64>::from_fn(3, 3, DEFAULT_MAX_DIM, |x| {
            if words.iter().any(|w| w == x) {
                Complex::new(c, 0.0)
            } else {
                Complex::new(0.0, 0.0)
            }
        })
        .unwrap();
        let t = qft(&f, &s).unwrap();
        let d = 1.0 / (dual.len() as f64).sqrt();
        for (i, a) in t.amps().iter().enumerate() {
            let x = index_to_vec(3, 3, i as u64);
            let want = if dual.contains(&x) { d } else { 0.0 };
            assert!((a - Complex::new(want, 0.0)).norm() < 1e-12);
        }
        let back = inverse_qft(&f, &t).unwrap();
        for (a, b) in back.amps().iter().zip(s.amps()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn generic_over_f32() {
        let f = field_of_order(5).unwrap();
        let s = AmplitudeState::<f32>::uniform(5, 2).unwrap();
        let t = qft(&f, &s).unwrap();
        assert!((t.amps()[0].re - 1.0).abs() < 1e-5);
        assert!((t.norm_sqr() - 1.0).abs() < 1e-5);
    }
}

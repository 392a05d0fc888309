//! Exact simulation of the Regev reduction for a code `C` with parity
//! matrix `H`: from a coherent decoder of the dual `C⊥ = rowspace(H)` to a
//! sample `y` with `H·yᵀ = u`.

use std::collections::HashMap;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bernoulli::{build_bernoulli_state, BernoulliAmplitude};
use super::tau::{tau_perp, tau_prime};
use super::{checked_dim, qft, sample_index, AmplitudeState, Qft, DEFAULT_MAX_DIM};
use crate::decoder::Decoder;
use crate::error::{Error, Result};
use crate::ffield::{ExtField, Fe};
use crate::linalg::{index_to_vec, vec_mul, vec_to_index, Matrix};
use crate::rscode::{weight, RSCode};
use crate::scalar::Real;

/// Coherent decoder for `C⊥`: maps `y` to the coefficient vector `s` of a
/// dual codeword `s·H`.
///
/// The pipeline needs coset equivariance, `Dec(y + s'H) = Dec(y) + s'`;
/// every decoder here is built from one leader per coset.
pub trait CosetDecoder: Send + Sync {
    fn decode(&self, y: &[Fe]) -> Option<Vec<Fe>>;
}

/// `Dec(y) = s` with `s·H = y − leader(y)`, one fixed leader per coset of `C⊥`.
pub struct LeaderTable {
    field: std::sync::Arc<ExtField>,
    gen: Matrix,
    parity: Matrix,
    // leader per coset, keyed by the index of G·yᵀ
    leaders: Vec<Vec<Fe>>,
}

impl LeaderTable {
    /// Uses the given leaders, which must hit every coset exactly once.
    pub fn new(code: &RSCode, leaders: Vec<Vec<Fe>>) -> Result<LeaderTable> {
        let (field, gen, parity) = (code.field().clone(), code.generator_matrix(), code.parity_matrix());
        let q = field.q();
        let cosets = checked_dim(q, code.k(), DEFAULT_MAX_DIM)?;
        if leaders.len() != cosets {
            return Err(Error::LengthMismatch { expected: cosets, got: leaders.len() });
        }
        let mut table: Vec<Option<Vec<Fe>>> = vec![None; cosets];
        for l in leaders {
            let key = vec_to_index(q, &crate::linalg::mul_vec(&field, &gen, &l)?) as usize;
            if table[key].replace(l).is_some() {
                return Err(Error::BadParams("two leaders share a coset".into()));
            }
        }
        let leaders = table.into_iter().map(|l| l.expect("one leader per coset")).collect();
        Ok(LeaderTable { field, gen, parity, leaders })
    }

    /// Minimum-weight leaders, ties broken by the smallest vector index:
    /// the nearest-codeword decoder.
    pub fn nearest(code: &RSCode, limit: u128) -> Result<LeaderTable> {
        let q = code.field().q();
        let n = code.n();
        let dim = checked_dim(q, n, limit)?;
        let gen = code.generator_matrix();
        let cosets = checked_dim(q, code.k(), limit)?;
        let mut best: Vec<Option<(usize, u64)>> = vec![None; cosets];
        for i in 0..dim as u64 {
            let e = index_to_vec(q, n, i);
            let key = vec_to_index(q, &crate::linalg::mul_vec(code.field(), &gen, &e)?) as usize;
            let w = weight(&e);
            if best[key].is_none_or(|(bw, _)| w < bw) {
                best[key] = Some((w, i));
            }
        }
        let leaders = best.into_iter().map(|b| index_to_vec(q, n, b.expect("cosets are nonempty").1)).collect();
        LeaderTable::new(code, leaders)
    }

    pub fn leader(&self, y: &[Fe]) -> &[Fe] {
        let key = vec_to_index(self.field.q(), &crate::linalg::mul_vec(&self.field, &self.gen, y).expect("length n"));
        &self.leaders[key as usize]
    }
}

/// `s` with `s·H = c` for `c` in the row space of `H`.
fn dual_coords(field: &ExtField, parity: &Matrix, c: &[Fe]) -> Option<Vec<Fe>> {
    crate::linalg::solve(field, &parity.transpose(), c).ok().flatten()
}

impl CosetDecoder for LeaderTable {
    fn decode(&self, y: &[Fe]) -> Option<Vec<Fe>> {
        let c: Vec<Fe> = y.iter().zip(self.leader(y)).map(|(&a, &b)| self.field.sub(a, b)).collect();
        dual_coords(&self.field, &self.parity, &c)
    }
}

/// Nearest-codeword decoder with lexicographic ties; the canonical total
/// decoder for `C⊥`.
pub type NearestCodeword = LeaderTable;

/// An RS decoder run on the dual code `RS[q, q − k]_q` (full support only),
/// falling back to the nearest codeword when its list is empty.
pub struct RsDualDecoder {
    inner: Box<dyn Decoder>,
    dual: RSCode,
    fallback: LeaderTable,
}

impl RsDualDecoder {
    pub fn new(code: &RSCode, inner: Box<dyn Decoder>, limit: u128) -> Result<RsDualDecoder> {
        if !code.is_full_support() {
            return Err(Error::BadParams("the dual is an RS code only for full support".into()));
        }
        let dual = RSCode::full_support(code.field().clone(), code.n() - code.k())?;
        debug_assert_eq!(dual.generator_matrix(), code.parity_matrix());
        Ok(RsDualDecoder { inner, dual, fallback: LeaderTable::nearest(code, limit)? })
    }
}

impl CosetDecoder for RsDualDecoder {
    fn decode(&self, y: &[Fe]) -> Option<Vec<Fe>> {
        let q = self.dual.field().q();
        let f = self.dual.field();
        let list = self.inner.decode(&self.dual, y).ok()?;
        let err = |c: &Vec<Fe>| -> Vec<Fe> { y.iter().zip(c).map(|(&a, &b)| f.sub(a, b)).collect() };
        let Some(c) = list.iter().min_by_key(|c| {
            let e = err(c);
            (weight(&e), vec_to_index(q, &e))
        }) else {
            return self.fallback.decode(y);
        };
        let m = self.dual.message_of(c)?;
        Some((0..self.dual.k()).map(|i| m.coeff(i)).collect())
    }
}

/// Precomputed pipeline for one code, amplitude `f` and decoder.
pub struct RegevPipeline<'a, T: Real = f64> {
    field: &'a ExtField,
    n: usize,
    r: usize,
    parity: Matrix,
    f: &'a AmplitudeState<T>,
    // Dec(y) as an index in F_q^{n−k}, per y
    dec: Vec<u64>,
    // s·H as an index in F_q^n, per s
    shifts: Vec<Vec<Fe>>,
}

/// Final joint distribution over `(y, ancilla)` for one syndrome `u`.
#[derive(Clone, Debug)]
pub struct RegevOutput<T: Real = f64> {
    pub u: Vec<Fe>,
    /// Probability of `y·q^{n−k} + a`.
    pub probs: Vec<T>,
    /// Norm after each of the four unitary stages.
    pub norms: [T; 4],
}

impl<'a, T: Real> RegevPipeline<'a, T> {
    pub fn new(code: &'a RSCode, f: &'a AmplitudeState<T>, dec: &dyn CosetDecoder, limit: u128) -> Result<Self> {
        let field = &**code.field();
        let (q, n, r) = (field.q(), code.n(), code.n() - code.k());
        if f.q() != q || f.n() != n {
            return Err(Error::LengthMismatch { expected: n, got: f.n() });
        }
        checked_dim(q, 2 * n - code.k(), limit)?;
        let ydim = checked_dim(q, n, limit)?;
        let dec: Vec<u64> = (0..ydim as u64)
            .into_par_iter()
            .map(|i| dec.decode(&index_to_vec(q, n, i)).map(|s| vec_to_index(q, &s)).ok_or(Error::DecoderNotTotal))
            .collect::<Result<_>>()?;
        let parity = code.parity_matrix();
        let sdim = checked_dim(q, r, limit)?;
        let shifts =
            (0..sdim as u64).map(|s| vec_mul(field, &index_to_vec(q, r, s), &parity)).collect::<Result<_>>()?;
        Ok(RegevPipeline { field, n, r, parity, f, dec, shifts })
    }

    /// `Σ |f(e)|²` over `e` with `Dec(e) = 0`.
    pub fn p_dec(&self) -> T {
        self.f.amps().iter().zip(&self.dec).filter(|(_, &d)| d == 0).map(|(a, _)| a.norm_sqr()).sum()
    }

    pub fn syndrome(&self, y: &[Fe]) -> Vec<Fe> {
        crate::linalg::mul_vec(self.field, &self.parity, y).expect("length n")
    }

    /// Runs the four unitary stages for syndrome `u`.
    pub fn run(&self, u: &[Fe]) -> Result<RegevOutput<T>> {
        let (field, q, n, r) = (self.field, self.field.q(), self.n, self.r);
        if u.len() != r {
            return Err(Error::LengthMismatch { expected: r, got: u.len() });
        }
        let sdim = self.shifts.len();
        let zero = Complex::new(T::zero(), T::zero());
        let norm = |v: &[Complex<T>]| v.iter().map(|a| a.norm_sqr()).sum::<T>().sqrt();
        let phase: Vec<Complex<T>> = (0..sdim as u64)
            .map(|s| field.chi::<T>(&index_to_vec(q, r, s), u).map(|c| c.conj() / T::from_usize(sdim).unwrap().sqrt()))
            .collect::<Result<_>>()?;
        // 1. Σ_e f(e)|e⟩ ⊗ Σ_s conj χ_s(u)|s⟩
        let mut state: Vec<Complex<T>> =
            self.f.amps().iter().flat_map(|&fe| phase.iter().map(move |&p| fe * p)).collect();
        let n1 = norm(&state);
        // 2. |e⟩|s⟩ ↦ |e + sH⟩|s⟩
        let mut next = vec![zero; state.len()];
        for (e, chunk) in state.chunks(sdim).enumerate() {
            let ev = index_to_vec(q, n, e as u64);
            for (s, &amp) in chunk.iter().enumerate() {
                if amp == zero {
                    continue;
                }
                let y: Vec<Fe> = ev.iter().zip(&self.shifts[s]).map(|(&a, &b)| field.add(a, b)).collect();
                next[vec_to_index(q, &y) as usize * sdim + s] = amp;
            }
        }
        state = next;
        let n2 = norm(&state);
        // 3. |y⟩|a⟩ ↦ |y⟩|a − Dec(y)⟩
        let mut next = vec![zero; state.len()];
        for (y, chunk) in state.chunks(sdim).enumerate() {
            let d = index_to_vec(q, r, self.dec[y]);
            for (a, &amp) in chunk.iter().enumerate() {
                if amp == zero {
                    continue;
                }
                let av = index_to_vec(q, r, a as u64);
                let diff: Vec<Fe> = av.iter().zip(&d).map(|(&x, &z)| field.sub(x, z)).collect();
                next[y * sdim + vec_to_index(q, &diff) as usize] = amp;
            }
        }
        state = next;
        let n3 = norm(&state);
        // 4. QFT on the first register
        Qft::new(field).apply(&mut state, 0..n, n + r, false);
        let n4 = norm(&state);
        Ok(RegevOutput { u: u.to_vec(), probs: state.iter().map(|a| a.norm_sqr()).collect(), norms: [n1, n2, n3, n4] })
    }

    /// 5. Measures `(y, ancilla)`.
    pub fn sample<R: Rng + ?Sized>(&self, out: &RegevOutput<T>, rng: &mut R) -> (Vec<Fe>, Vec<Fe>) {
        let q = self.field.q();
        let sdim = self.shifts.len();
        let idx = sample_index(&out.probs, rng);
        (index_to_vec(q, self.n, (idx / sdim) as u64), index_to_vec(q, self.r, (idx % sdim) as u64))
    }

    /// Marginal distribution of `y`.
    pub fn y_marginal(&self, out: &RegevOutput<T>) -> Vec<T> {
        out.probs.chunks(self.shifts.len()).map(|c| c.iter().copied().sum()).collect()
    }
}

/// One pipeline run for syndrome `u`; the returned `y` satisfies `H·yᵀ = u`.
pub fn regev_pipeline<T: Real, R: Rng + ?Sized>(
    code: &RSCode,
    u: &[Fe],
    f: &AmplitudeState<T>,
    dec: &dyn CosetDecoder,
    rng: &mut R,
) -> Result<Vec<Fe>> {
    let p = RegevPipeline::new(code, f, dec, DEFAULT_MAX_DIM)?;
    let out = p.run(u)?;
    let (y, _) = p.sample(&out, rng);
    if p.syndrome(&y) != u {
        return Err(Error::BadParams("decoder is not coset-equivariant".into()));
    }
    Ok(y)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IbddConfig {
    pub trials: u64,
    pub seed: u64,
    pub max_dim: u128,
}

impl Default for IbddConfig {
    fn default() -> Self {
        IbddConfig { trials: 1000, seed: 0, max_dim: DEFAULT_MAX_DIM }
    }
}

/// Experiment summary, also used for PGM runs (`gamma`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatsRecord {
    pub trials: u64,
    pub successes: u64,
    pub p_dec: Option<f64>,
    pub eta: Option<f64>,
    pub bound_rhs: Option<f64>,
    pub mean_weight: f64,
    pub gamma: Option<f64>,
}

/// Runs the pipeline on uniformly random syndromes and counts outputs of
/// weight at most `radius`. `f` is the QDP amplitude; `η` is the mass of
/// `|f̃|²` above `radius`.
pub fn ibdd_experiment(
    code: &RSCode,
    f: &AmplitudeState<f64>,
    radius: usize,
    dec: &dyn CosetDecoder,
    cfg: IbddConfig,
) -> Result<StatsRecord> {
    let field = &**code.field();
    let (q, r) = (field.q(), code.n() - code.k());
    let pipe = RegevPipeline::new(code, f, dec, cfg.max_dim)?;
    let p_dec = pipe.p_dec();
    let ft = qft(field, f)?;
    let eta: f64 = ft
        .probabilities()
        .iter()
        .enumerate()
        .filter(|(i, _)| weight(&index_to_vec(q, code.n(), *i as u64)) > radius)
        .map(|(_, p)| p)
        .sum();
    let bound_rhs = p_dec * (1.0 - eta) - 2.0 * (eta * p_dec * (1.0 - p_dec)).max(0.0).sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut cache: HashMap<u64, RegevOutput<f64>> = HashMap::new();
    let (mut successes, mut weight_sum) = (0u64, 0usize);
    let sdim = checked_dim(q, r, cfg.max_dim)? as u64;
    for _ in 0..cfg.trials {
        let ui = rng.gen_range(0..sdim);
        if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(ui) {
            e.insert(pipe.run(&index_to_vec(q, r, ui))?);
        }
        let (y, _) = pipe.sample(&cache[&ui], &mut rng);
        let w = weight(&y);
        weight_sum += w;
        if pipe.syndrome(&y) == index_to_vec(q, r, ui) && w <= radius {
            successes += 1;
        }
    }
    Ok(StatsRecord {
        trials: cfg.trials,
        successes,
        p_dec: Some(p_dec),
        eta: Some(eta),
        bound_rhs: Some(bound_rhs),
        mean_weight: weight_sum as f64 / cfg.trials.max(1) as f64,
        gamma: None,
    })
}

/// [`ibdd_experiment`] with `f = u_τ^{⊗n}` and radius `⌊τ′n⌋`.
pub fn ibdd_bernoulli(code: &RSCode, tau: f64, dec: &dyn CosetDecoder, cfg: IbddConfig) -> Result<StatsRecord> {
    let q = code.field().q();
    let f = build_bernoulli_state(&BernoulliAmplitude::new(q, tau)?, code.n(), cfg.max_dim)?;
    let radius = (tau_prime(tau_perp(tau, q as u64)?, q as u64)? * code.n() as f64).floor() as usize;
    ibdd_experiment(code, &f, radius, dec, cfg)
}

/// Uniform superposition over the span of `basis` in `F_q^n`.
pub fn uniform_on_span(field: &ExtField, n: usize, basis: &[Vec<Fe>], limit: u128) -> Result<AmplitudeState<f64>> {
    let q = field.q();
    let dim = checked_dim(q, n, limit)?;
    let k = basis.len();
    let mut amps = vec![Complex::new(0.0, 0.0); dim];
    let m = Matrix::from_rows(basis.to_vec(), n)?;
    let count = checked_dim(q, k, limit)?;
    for i in 0..count as u64 {
        let v = vec_mul(field, &index_to_vec(q, k, i), &m)?;
        amps[vec_to_index(q, &v) as usize] = Complex::new(1.0, 0.0);
    }
    let mut s = AmplitudeState::new(q, n, amps)?;
    s.normalize()?;
    Ok(s)
}

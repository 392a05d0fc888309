//! Pretty Good Measurement for bounded-distance decoding, simulated exactly.
//!
//! Cosets are `C⊥_u = {y : G·yᵀ = u}` for a `k × n` generator `G`. The PGM
//! basis is `Y_s = QFT⁻¹ Ŷ_s` with `Ŷ_s = q^{−k/2} Σ_u χ_u(s) W̃_u`.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{checked_dim, sample_index, AmplitudeState, Qft, DEFAULT_MAX_DIM};
use crate::error::{Error, Result};
use crate::ffield::{ExtField, Fe};
use crate::linalg::{self, index_to_vec, mul_vec, vec_mul, vec_to_index, Matrix};
use crate::rscode::weight;

type C64 = Complex<f64>;
const ZERO: C64 = Complex { re: 0.0, im: 0.0 };

/// Dual-coset norms `w_u`, `Γ = q^{−k/2} Σ_u w_u`, and optionally the
/// overlap matrix `γ_{s,s'} = ⟨Y_s|ψ_{s'}⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct PgmOverlaps {
    pub w: Vec<f64>,
    pub gamma: f64,
    pub matrix: Option<Vec<Vec<C64>>>,
}

/// Shared coset bookkeeping for one generator matrix.
struct Cosets<'f> {
    field: &'f ExtField,
    gen: Matrix,
    q: u32,
    n: usize,
    k: usize,
    // coset index G·yᵀ for every y
    key: Vec<usize>,
}

impl<'f> Cosets<'f> {
    fn new(field: &'f ExtField, gen: &Matrix, limit: u128) -> Result<Self> {
        let (q, k, n) = (field.q(), gen.rows(), gen.cols());
        if linalg::rank(field, gen) != k {
            return Err(Error::BadParams("generator rows are dependent".into()));
        }
        checked_dim(q, n + k, limit)?;
        let dim = checked_dim(q, n, limit)?;
        let key = (0..dim as u64)
            .map(|i| Ok(vec_to_index(q, &mul_vec(field, gen, &index_to_vec(q, n, i))?) as usize))
            .collect::<Result<_>>()?;
        Ok(Cosets { field, gen: gen.clone(), q, n, k, key })
    }

    fn count(&self) -> usize {
        (self.q as usize).pow(self.k as u32)
    }

    fn norms(&self, ft: &[C64]) -> Result<Vec<f64>> {
        let mut w2 = vec![0.0; self.count()];
        for (a, &u) in ft.iter().zip(&self.key) {
            w2[u] += a.norm_sqr();
        }
        if let Some(u) = w2.iter().position(|&x| x <= 1e-300) {
            return Err(Error::VanishingCoset(index_to_vec(self.q, self.k, u as u64).iter().map(|c| c.0).collect()));
        }
        Ok(w2.into_iter().map(f64::sqrt).collect())
    }

    /// `χ_u(s)` for all coset labels `u` and `s`.
    fn char_table(&self) -> Result<Vec<Vec<C64>>> {
        let c = self.count();
        (0..c as u64)
            .map(|s| {
                let sv = index_to_vec(self.q, self.k, s);
                (0..c as u64).map(|u| self.field.chi::<f64>(&index_to_vec(self.q, self.k, u), &sv)).collect()
            })
            .collect()
    }

    /// The PGM basis `Y_s` in the computational basis.
    fn basis(&self, ft: &[C64], w: &[f64]) -> Result<Vec<Vec<C64>>> {
        let chars = self.char_table()?;
        let scale = 1.0 / (self.count() as f64).sqrt();
        let qft = Qft::<f64>::new(self.field);
        Ok(chars
            .iter()
            .map(|row| {
                let mut v: Vec<C64> = ft.iter().zip(&self.key).map(|(&a, &u)| row[u] * a * (scale / w[u])).collect();
                qft.apply(&mut v, 0..self.n, self.n, true);
                v
            })
            .collect())
    }

    /// `ψ_s = Σ_e f(e)|sG + e⟩`.
    fn coset_state(&self, f: &[C64], s: u64) -> Result<Vec<C64>> {
        let shift = vec_mul(self.field, &index_to_vec(self.q, self.k, s), &self.gen)?;
        let mut out = vec![ZERO; f.len()];
        for (e, &a) in f.iter().enumerate() {
            let y: Vec<Fe> = index_to_vec(self.q, self.n, e as u64)
                .iter()
                .zip(&shift)
                .map(|(&x, &c)| self.field.add(x, c))
                .collect();
            out[vec_to_index(self.q, &y) as usize] = a;
        }
        Ok(out)
    }
}

fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Coset norms and `Γ` for the Fourier-side amplitude `ft`; with
/// `with_matrix` the overlaps are computed from explicit `Y_s` and `ψ_{s'}`.
pub fn pgm_overlaps(
    field: &ExtField,
    gen: &Matrix,
    ft: &AmplitudeState<f64>,
    with_matrix: bool,
) -> Result<PgmOverlaps> {
    let cos = Cosets::new(field, gen, DEFAULT_MAX_DIM)?;
    if ft.q() != cos.q || ft.n() != cos.n {
        return Err(Error::LengthMismatch { expected: cos.n, got: ft.n() });
    }
    let w = cos.norms(ft.amps())?;
    let gamma = w.iter().sum::<f64>() / (cos.count() as f64).sqrt();
    let matrix = if with_matrix {
        let ys = cos.basis(ft.amps(), &w)?;
        let mut f = ft.amps().to_vec();
        Qft::<f64>::new(field).apply(&mut f, 0..cos.n, cos.n, true);
        let psis = (0..cos.count() as u64).map(|s| cos.coset_state(&f, s)).collect::<Result<Vec<_>>>()?;
        Some(ys.iter().map(|y| psis.iter().map(|p| inner(y, p)).collect()).collect())
    } else {
        None
    };
    Ok(PgmOverlaps { w, gamma, matrix })
}

/// The PGM basis vectors `Y_s`, indexed by `s ∈ F_q^k`.
pub fn pgm_basis(field: &ExtField, gen: &Matrix, ft: &AmplitudeState<f64>) -> Result<Vec<Vec<C64>>> {
    let cos = Cosets::new(field, gen, DEFAULT_MAX_DIM)?;
    let w = cos.norms(ft.amps())?;
    cos.basis(ft.amps(), &w)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PgmConfig {
    pub seed: u64,
    pub max_dim: u128,
    pub max_retries: u32,
}

impl Default for PgmConfig {
    fn default() -> Self {
        PgmConfig { seed: 0, max_dim: DEFAULT_MAX_DIM, max_retries: 64 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepTrace {
    pub step: String,
    pub norm: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PgmOutcome {
    /// Measured vector with `G·xᵀ = u0` and weight `t_used`.
    pub x: Vec<u32>,
    pub t_used: usize,
    pub gamma: f64,
    /// `|T|/q^n` for the indicator set `T`.
    pub acceptance: f64,
    pub preparation_attempts: u64,
    /// Exact probability of the all-zero label.
    pub postselect_prob: f64,
    pub postselect_attempts: u32,
    /// Indices with nonzero final probability.
    pub support: Vec<u64>,
    pub steps: Vec<StepTrace>,
}

/// Finds `x` in the coset of `y0` with `‖x‖ = t'` for the first
/// `t' ∈ 0..=t` where such `x` exists; the codeword is `y0 − x`.
pub fn pgm_bdd(field: &ExtField, gen: &Matrix, t: usize, y0: &[Fe], cfg: PgmConfig) -> Result<PgmOutcome> {
    let cos = Cosets::new(field, gen, cfg.max_dim)?;
    let (q, n, k) = (cos.q, cos.n, cos.k);
    if y0.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: y0.len() });
    }
    let u0 = vec_to_index(q, &mul_vec(field, gen, y0)?) as usize;
    let weights: Vec<usize> = (0..cos.key.len() as u64).map(|i| weight(&index_to_vec(q, n, i))).collect();
    let t_used = (0..=t)
        .find(|&tp| cos.key.iter().zip(&weights).any(|(&u, &w)| u == u0 && w == tp))
        .ok_or(Error::NoExactWeightSolution(t))?;
    let indicator: Vec<bool> = cos.key.iter().zip(&weights).map(|(&u, &w)| u != u0 || w == t_used).collect();
    let size_t = indicator.iter().filter(|&&b| b).count();
    let amp = 1.0 / (size_t as f64).sqrt();
    let ft: Vec<C64> = indicator.iter().map(|&b| if b { Complex::new(amp, 0.0) } else { ZERO }).collect();
    let w = cos.norms(&ft)?;
    let labels = cos.count();
    let gamma = w.iter().sum::<f64>() / (labels as f64).sqrt();
    let ys = cos.basis(&ft, &w)?;
    let qft = Qft::<f64>::new(field);
    let mut f = ft.clone();
    qft.apply(&mut f, 0..n, n, true);
    let chars = cos.char_table()?;
    let acceptance = size_t as f64 / ft.len() as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut preparation_attempts = 0u64;
    let norm = |v: &[C64]| v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();

    // 2–3 are deterministic given f; compute them once
    let scale = 1.0 / (labels as f64).sqrt();
    let mut joint = vec![ZERO; ft.len() * labels];
    for s in 0..labels {
        let psi = cos.coset_state(&f, s as u64)?;
        let phase = chars[s][u0].conj() * scale;
        for (y, &a) in psi.iter().enumerate() {
            joint[y * labels + s] = a * phase;
        }
    }
    let norm_step2 = norm(&joint);
    // U_PGM: |Y_s'⟩|l⟩ ↦ |Y_s'⟩|l − s'⟩, identity off span{Y_s'}
    let sub = |l: usize, s: usize| -> usize {
        let (lv, sv) = (index_to_vec(q, k, l as u64), index_to_vec(q, k, s as u64));
        vec_to_index(q, &lv.iter().zip(&sv).map(|(&a, &b)| field.sub(a, b)).collect::<Vec<_>>()) as usize
    };
    let mut after = joint.clone();
    for l in 0..labels {
        let col: Vec<C64> = (0..ft.len()).map(|y| joint[y * labels + l]).collect();
        for (sp, yv) in ys.iter().enumerate() {
            let c = inner(yv, &col);
            if c.norm_sqr() == 0.0 {
                continue;
            }
            let dest = sub(l, sp);
            for (y, &b) in yv.iter().enumerate() {
                after[y * labels + l] -= c * b;
                after[y * labels + dest] += c * b;
            }
        }
    }
    let norm_step3 = norm(&after);
    let label0: Vec<C64> = (0..ft.len()).map(|y| after[y * labels]).collect();
    let postselect_prob = label0.iter().map(|a| a.norm_sqr()).sum::<f64>();

    let mut postselect_attempts = 0u32;
    loop {
        if postselect_attempts >= cfg.max_retries {
            return Err(Error::PostSelectionFailed(postselect_attempts));
        }
        postselect_attempts += 1;
        // 1. rejection sampling of the indicator state
        loop {
            preparation_attempts += 1;
            if rng.gen::<f64>() < acceptance {
                break;
            }
        }
        // 4. post-select the label register on 0
        if rng.gen::<f64>() < postselect_prob {
            break;
        }
    }
    let mut data: Vec<C64> = label0.iter().map(|a| a / postselect_prob.sqrt()).collect();
    let norm_step4 = norm(&data);
    // 5. QFT on the data register
    qft.apply(&mut data, 0..n, n, false);
    let norm_step5 = norm(&data);
    // 6. measure
    let probs: Vec<f64> = data.iter().map(|a| a.norm_sqr()).collect();
    let support: Vec<u64> = probs.iter().enumerate().filter(|(_, &p)| p > 1e-12).map(|(i, _)| i as u64).collect();
    let x = index_to_vec(q, n, sample_index(&probs, &mut rng) as u64);
    if vec_to_index(q, &mul_vec(field, gen, &x)?) as usize != u0 || weight(&x) != t_used {
        return Err(Error::BadParams("PGM output left the target set".into()));
    }
    let steps = [
        ("prepare", norm(&ft)),
        ("phase", norm_step2),
        ("pgm", norm_step3),
        ("postselect", norm_step4),
        ("qft", norm_step5),
        ("measure", probs.iter().sum::<f64>().sqrt()),
    ];
    Ok(PgmOutcome {
        x: x.iter().map(|c| c.0).collect(),
        t_used,
        gamma,
        acceptance,
        preparation_attempts,
        postselect_prob,
        postselect_attempts,
        support,
        steps: steps.iter().map(|&(s, v)| StepTrace { step: s.into(), norm: v }).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::field_of_order;

    #[test]
    fn uniform_fourier_side() {
        let f = field_of_order(3).unwrap();
        let g = Matrix::from_rows(vec![vec![Fe(1), Fe(1), Fe(1)]], 3).unwrap();
        let ft = AmplitudeState::<f64>::uniform(3, 3).unwrap();
        let o = pgm_overlaps(&f, &g, &ft, true).unwrap();
        for w in &o.w {
            assert!((w - (9.0f64 / 27.0).sqrt()).abs() < 1e-12);
        }
        assert!((o.gamma - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_bit_example() {
        let f = field_of_order(2).unwrap();
        let g = Matrix::from_rows(vec![vec![Fe(1), Fe(1)]], 2).unwrap();
        let mut counts = [0usize; 4];
        for seed in 0..400 {
            let out = pgm_bdd(&f, &g, 1, &[Fe(1), Fe(0)], PgmConfig { seed, ..Default::default() }).unwrap();
            assert!((out.gamma - 1.0).abs() < 1e-12);
            assert_eq!(out.support, vec![1, 2]);
            counts[vec_to_index(2, &out.x.iter().map(|&c| Fe(c)).collect::<Vec<_>>()) as usize] += 1;
        }
        assert_eq!(counts[0] + counts[3], 0);
        assert!(counts[1] > 150 && counts[2] > 150);
    }

    #[test]
    fn basis_is_orthonormal() {
        let f = field_of_order(3).unwrap();
        let g = Matrix::from_rows(vec![vec![Fe(1), Fe(2), Fe(0), Fe(1)]], 4).unwrap();
        let ft =
            AmplitudeState::<f64>::from_fn(3, 4, DEFAULT_MAX_DIM, |x| Complex::new(1.0 + x[0].0 as f64, x[1].0 as f64))
                .unwrap();
        let mut ft = ft;
        ft.normalize().unwrap();
        let ys = pgm_basis(&f, &g, &ft).unwrap();
        for (i, a) in ys.iter().enumerate() {
            for (j, b) in ys.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((inner(a, b) - Complex::new(want, 0.0)).norm() < 1e-9);
            }
        }
        let o = pgm_overlaps(&f, &g, &ft, true).unwrap();
        let m = o.matrix.unwrap();
        for (s, row) in m.iter().enumerate() {
            assert!((row[s] - Complex::new(o.gamma, 0.0)).norm() < 1e-9);
        }
    }
}

//! Smooth-relation sampling over the factor base `{α − a} ∪ {γ}` and the
//! index-calculus pipeline built on it.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::dlog::Bsgs;
use super::modlin::{solve_mod_n, RankTracker};
use super::Relation;
use crate::error::{Error, Result};
use crate::ffield::{ExtField, Fe, FieldTower, TowerElem};
use crate::nt::mulmod;
use crate::poly::PolyRing;

/// `Λ = ⌊2 log₂ d⌋ + 3`.
pub fn schedule_lambda(d: usize) -> usize {
    (2.0 * (d as f64).log2()).floor() as usize + 3
}

/// Draws `b^i` for uniform `i` and keeps those whose representative splits
/// into distinct linear factors over `F_q`.
///
/// Columns `0..q` hold the exponents of `α − a` (by element index); column
/// `q` holds the exponent of `γ`, the generator of `F_q^×`.
pub struct RelationSampler {
    tower: Arc<FieldTower>,
    gamma: Fe,
    gamma_logs: Bsgs<Fe>,
    rng: ChaCha8Rng,
    draws: u64,
}

impl RelationSampler {
    pub fn new(tower: Arc<FieldTower>, seed: u64) -> Result<RelationSampler> {
        let f: &ExtField = tower.ground();
        let gamma = f.generator();
        let gamma_logs = Bsgs::new(f, &gamma, f.q() as u64 - 1)?;
        Ok(RelationSampler { tower, gamma, gamma_logs, rng: ChaCha8Rng::seed_from_u64(seed), draws: 0 })
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }
    pub fn gamma(&self) -> Fe {
        self.gamma
    }
    /// Factor-base size plus the `γ` column.
    pub fn columns(&self) -> usize {
        self.tower.ground().q() as usize + 1
    }
    pub fn draws(&self) -> u64 {
        self.draws
    }

    /// Factors `element·(α − inv)^{−1}` over the factor base, if it splits.
    pub fn split(&self, element: TowerElem, exponent: Option<u64>, inv: Option<Fe>) -> Option<Relation> {
        let t = &*self.tower;
        let value = match inv {
            Some(a) => t.div(&element, &t.alpha_minus(a)).ok()?,
            None => element.clone(),
        };
        let (lead, roots) = PolyRing::new(t.ground()).split_distinct_linear(&t.rep(&value))?;
        Relation::new(t, element, exponent, inv, lead, roots.into_iter().map(|a| (a, 1)).collect()).ok()
    }

    /// One ordinary draw.
    pub fn draw_ordinary(&mut self) -> Option<Relation> {
        self.draws += 1;
        let i = self.rng.gen_range(0..self.tower.order());
        self.split(self.tower.base_pow(i), Some(i), None)
    }

    /// One augmented draw `b^j/(α − a)`.
    pub fn draw_augmented(&mut self, a: Fe) -> Option<Relation> {
        self.draws += 1;
        let j = self.rng.gen_range(0..self.tower.order());
        self.split(self.tower.base_pow(j), Some(j), Some(a))
    }

    /// Row of the linear system `J ≡ B·l (mod N)`.
    pub fn row(&self, r: &Relation) -> Vec<u64> {
        let f = self.tower.ground();
        let q = f.q() as usize;
        let mut row = vec![0u64; q + 1];
        for &(a, e) in r.exps() {
            row[a.0 as usize] += e as u64;
        }
        if let Some(a) = r.inv_factor() {
            row[a.0 as usize] += 1;
        }
        row[q] = self.gamma_logs.log(&**f, &r.lead()).expect("γ generates F_q^×");
        row
    }

    fn uniform_point(&mut self) -> Fe {
        Fe(self.rng.gen_range(0..self.tower.ground().q()))
    }
}

impl Iterator for RelationSampler {
    /// One ordinary draw; `None` inside marks a non-smooth draw.
    type Item = Option<Relation>;
    fn next(&mut self) -> Option<Option<Relation>> {
        Some(self.draw_ordinary())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollectConfig {
    /// Hard cap on draws; `None` means ten times the `2dΛ` schedule.
    pub budget: Option<u64>,
}

/// Accumulated relations with `B`, `J` and bookkeeping.
#[derive(Clone, Debug)]
pub struct RelationSystem {
    pub modulus: u64,
    pub columns: usize,
    pub rows: Vec<Vec<u64>>,
    pub rhs: Vec<u64>,
    pub relations: Vec<Relation>,
    /// Draws consumed, smooth or not.
    pub draws: u64,
    /// Planned draws `2dΛ`.
    pub schedule: u64,
    pub rank: usize,
}

/// Alternates ordinary draws with augmented draws at uniform `a ∈ F_q`
/// until `B` has full column rank modulo every prime factor of `N`.
pub fn collect_relations(sampler: &mut RelationSampler, cfg: CollectConfig) -> Result<RelationSystem> {
    let d = sampler.columns();
    let lambda = schedule_lambda(d);
    let schedule = (2 * d * lambda) as u64;
    let budget = cfg.budget.unwrap_or(10 * schedule);
    let modulus = sampler.tower().order();
    let mut tracker = RankTracker::new(modulus, d)?;
    let mut sys = RelationSystem {
        modulus,
        columns: d,
        rows: Vec::new(),
        rhs: Vec::new(),
        relations: Vec::new(),
        draws: 0,
        schedule,
        rank: 0,
    };
    let start = sampler.draws();
    while !tracker.is_full() {
        if sampler.draws() - start >= budget {
            return Err(Error::BudgetExceeded(budget));
        }
        let rel = if (sampler.draws() - start).is_multiple_of(2) {
            sampler.draw_ordinary()
        } else {
            let a = sampler.uniform_point();
            sampler.draw_augmented(a)
        };
        if let Some(rel) = rel {
            let row = sampler.row(&rel);
            tracker.insert(&row);
            sys.rows.push(row);
            sys.rhs.push(rel.exponent().expect("sampled relations carry exponents"));
            sys.relations.push(rel);
        }
    }
    sys.draws = sampler.draws() - start;
    sys.rank = tracker.rank();
    Ok(sys)
}

/// Outcome of [`index_calculus_dlog`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DlogReport {
    pub exponent: u64,
    /// Draws until `B` reached full rank.
    pub draws: u64,
    pub relations: usize,
    /// Random shifts `target·b^r` tried before one split.
    pub shift_attempts: u64,
}

/// Factor-base logs from a full-rank system.
pub fn factor_base_logs(sys: &RelationSystem) -> Result<Vec<u64>> {
    solve_mod_n(&sys.rows, &sys.rhs, sys.modulus)?
        .ok_or_else(|| Error::BadParams("relation system is inconsistent".into()))
}

/// `log_b(target)` by relation collection, a modular solve, and a smooth
/// random shift of the target. The result is checked as `b^e = target`.
pub fn index_calculus_dlog(
    tower: Arc<FieldTower>,
    target: &TowerElem,
    seed: u64,
    cfg: CollectConfig,
) -> Result<DlogReport> {
    if tower.is_zero(target) {
        return Err(Error::DivisionByZero);
    }
    let mut sampler = RelationSampler::new(tower.clone(), seed)?;
    let sys = collect_relations(&mut sampler, cfg)?;
    let logs = factor_base_logs(&sys)?;
    let n = tower.order();
    let budget = cfg.budget.unwrap_or(10 * sys.schedule);
    for attempt in 1..=budget {
        let r = sampler.rng.gen_range(0..n);
        let shifted = tower.mul(target, &tower.base_pow(r));
        let Some(rel) = sampler.split(shifted, None, None) else { continue };
        let row = sampler.row(&rel);
        let log_shifted = row.iter().zip(&logs).fold(0u64, |acc, (&e, &l)| (acc + mulmod(e % n, l, n)) % n);
        let exponent = (log_shifted + n - r) % n;
        if tower.base_pow(exponent) == *target {
            return Ok(DlogReport {
                exponent,
                draws: sys.draws,
                relations: sys.relations.len(),
                shift_attempts: attempt,
            });
        }
    }
    Err(Error::BudgetExceeded(budget))
}

//! Cheng–Wan received words over `F_{q^h}`, relation extraction from
//! decoded codewords, relation collection and index-calculus DLOG.

mod dlog;
mod modlin;
mod relations;

use std::sync::Arc;

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{ExtField, Fe, FieldDescriptor, FieldTower, TowerElem};
use crate::poly::{Poly, PolyRing};
use crate::rscode::RSCode;

pub use dlog::{
    baseline_dlog, pohlig_hellman, self_reduce_and_split, Bsgs, Component, CyclicGroup, DlogMethod, MAX_BSGS_TABLE,
};
pub use modlin::{mat_vec_mod, solve_mod_n, RankTracker};
pub use relations::{
    collect_relations, factor_base_logs, index_calculus_dlog, schedule_lambda, CollectConfig, DlogReport,
    RelationSampler, RelationSystem,
};

/// Parameters of the distribution of received words: tower `F_{q^h}`,
/// agreement `g`, and the full-support code `RS[q, g − h]_q`.
#[derive(Clone, Debug)]
pub struct CWParams {
    tower: Arc<FieldTower>,
    g: usize,
    code: RSCode,
}

impl CWParams {
    pub fn new(tower: Arc<FieldTower>, g: usize) -> Result<CWParams> {
        let (q, h) = (tower.ground().q() as usize, tower.h());
        if g <= h {
            return Err(Error::BadParams(format!("agreement g = {g} must exceed h = {h}")));
        }
        if g > q {
            return Err(Error::BadParams(format!("agreement g = {g} exceeds n = q = {q}")));
        }
        let code = RSCode::full_support(tower.ground().clone(), g - h)?;
        Ok(CWParams { tower, g, code })
    }

    /// `g = 4h + 4`.
    pub fn low_rate(tower: Arc<FieldTower>) -> Result<CWParams> {
        let g = 4 * tower.h() + 4;
        CWParams::new(tower, g)
    }

    /// `g = ⌊c·q⌋`.
    pub fn positive_rate(tower: Arc<FieldTower>, c: f64) -> Result<CWParams> {
        if !(c > 0.0 && c <= 1.0) {
            return Err(Error::OutOfRange(c));
        }
        let g = (c * tower.ground().q() as f64).floor() as usize;
        CWParams::new(tower, g)
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }
    pub fn field(&self) -> &Arc<ExtField> {
        self.tower.ground()
    }
    pub fn code(&self) -> &RSCode {
        &self.code
    }
    pub fn g(&self) -> usize {
        self.g
    }
    pub fn h(&self) -> usize {
        self.tower.h()
    }
    pub fn n(&self) -> usize {
        self.code.n()
    }
    pub fn k(&self) -> usize {
        self.g - self.h()
    }
    /// Decoding radius `n − g`.
    pub fn radius(&self) -> usize {
        self.n() - self.g
    }
    /// Whether these are the exact low-rate parameters with `h ≤ q^{1/4} − 2`.
    pub fn strict_cw(&self) -> bool {
        let q = self.field().q() as f64;
        self.g == 4 * self.h() + 4 && self.h() as f64 <= q.powf(0.25) - 2.0
    }

    /// `h(a)^{-1}` at every evaluation point, or `DegenerateTower` if `h` has a root.
    fn h_inverses(&self) -> Result<Vec<Fe>> {
        let f = &**self.field();
        let ring = PolyRing::new(f);
        self.code
            .eval_points()
            .iter()
            .map(|&a| f.inv(ring.eval(self.tower.h_poly(), a)).map_err(|_| Error::DegenerateTower))
            .collect()
    }

    /// `y_a = −f(a)/h(a) − a^{g−h}` over all evaluation points.
    fn received_word(&self, f_rep: &Poly) -> Result<Vec<Fe>> {
        let f = &**self.field();
        let ring = PolyRing::new(f);
        let hinv = self.h_inverses()?;
        Ok(self
            .code
            .eval_points()
            .iter()
            .zip(hinv)
            .map(|(&a, hi)| f.sub(f.neg(f.mul(ring.eval(f_rep, a), hi)), f.pow(a, self.k() as u64)))
            .collect())
    }
}

/// A received word for the group element `f(α)`.
#[derive(Clone, Debug)]
pub struct CWInstance {
    params: CWParams,
    #[cfg(feature = "harness")]
    exponent: Option<u64>,
    f: Poly,
    received: Vec<Fe>,
    witness: Option<Vec<Fe>>,
}

/// The instance for `b^i`.
pub fn gen_instance(params: &CWParams, i: u64) -> Result<CWInstance> {
    let t = params.tower();
    if i >= t.order() {
        return Err(Error::BadParams(format!("exponent {i} not below N = {}", t.order())));
    }
    let f = t.rep(&t.base_pow(i));
    let received = params.received_word(&f)?;
    Ok(CWInstance {
        params: params.clone(),
        #[cfg(feature = "harness")]
        exponent: Some(i),
        f,
        received,
        witness: None,
    })
}

/// Plants `P = ∏_{a∈A}(x − a) = f + t·h`; the witness codeword encodes
/// `u* = t − x^{g−h}` and agrees with the received word on `A`.
pub fn planted_instance(params: &CWParams, a_set: &[Fe]) -> Result<(CWInstance, Vec<Fe>)> {
    let f = &**params.field();
    let mut sorted = a_set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != params.g() || a_set.len() != params.g() {
        return Err(Error::WrongWitnessSize { expected: params.g(), got: sorted.len() });
    }
    for &a in a_set {
        f.check(a)?;
    }
    let ring = PolyRing::new(f);
    let p = ring.from_roots(a_set);
    let (t, f_rep) = ring.divmod(&p, params.tower().h_poly())?;
    let u_star = ring.sub(&t, &Poly::monomial(Fe::ONE, params.k()));
    let witness = params.code().encode(&u_star)?;
    let received = params.received_word(&f_rep)?;
    let inst = CWInstance {
        params: params.clone(),
        #[cfg(feature = "harness")]
        exponent: None,
        f: f_rep,
        received,
        witness: Some(witness.clone()),
    };
    Ok((inst, witness))
}

/// [`planted_instance`] with `A` drawn uniformly among `g`-subsets.
pub fn random_planted<R: Rng + ?Sized>(params: &CWParams, rng: &mut R) -> Result<(CWInstance, Vec<Fe>, Vec<Fe>)> {
    let mut a: Vec<Fe> =
        sample(rng, params.n(), params.g()).into_iter().map(|i| params.code().eval_points()[i]).collect();
    a.sort_unstable();
    let (inst, w) = planted_instance(params, &a)?;
    Ok((inst, w, a))
}

impl CWInstance {
    pub fn params(&self) -> &CWParams {
        &self.params
    }
    /// Representative of the group element, degree `< h`.
    pub fn f(&self) -> &Poly {
        &self.f
    }
    pub fn element(&self) -> TowerElem {
        self.params.tower().from_poly(&self.f)
    }
    pub fn received(&self) -> &[Fe] {
        &self.received
    }
    pub fn witness(&self) -> Option<&[Fe]> {
        self.witness.as_deref()
    }
    pub fn syndrome(&self) -> Vec<Fe> {
        self.params.code().syndrome(&self.received).expect("length n")
    }
    /// The hidden exponent, visible to test harnesses only.
    #[cfg(feature = "harness")]
    pub fn hidden_exponent(&self) -> Option<u64> {
        self.exponent
    }

    pub fn to_json(&self) -> CWInstanceJson {
        let f = self.params.field();
        let enc = |v: &[Fe]| v.iter().map(|&c| f.coeffs(c)).collect::<Vec<_>>();
        CWInstanceJson {
            params: CWParamsJson {
                field: self.params.tower().descriptor(),
                g: self.params.g(),
                n: Some(self.params.n()),
                k: Some(self.params.k()),
                t: Some(self.params.radius()),
                strict_cw: Some(self.params.strict_cw()),
            },
            received: enc(&self.received),
            syndrome: enc(&self.syndrome()),
            witness: self.witness.as_deref().map(enc),
            #[cfg(feature = "harness")]
            i: self.exponent,
        }
    }

    /// Rebuilds an instance, recovering `f` from the received word.
    pub fn from_json(j: &CWInstanceJson) -> Result<CWInstance> {
        let tower = Arc::new(j.params.field.build_tower()?);
        let params = CWParams::new(tower, j.params.g)?;
        let checks = [(j.params.n, params.n()), (j.params.k, params.k()), (j.params.t, params.radius())];
        if let Some((given, actual)) = checks.iter().find_map(|&(g, a)| g.filter(|&g| g != a).map(|g| (g, a))) {
            return Err(Error::BadParams(format!("declared parameter {given} inconsistent with derived {actual}")));
        }
        let f = &**params.field();
        let dec = |v: &[Vec<u32>]| v.iter().map(|c| f.from_coeffs(c)).collect::<Result<Vec<_>>>();
        let received = dec(&j.received)?;
        if received.len() != params.n() {
            return Err(Error::LengthMismatch { expected: params.n(), got: received.len() });
        }
        let ring = PolyRing::new(f);
        let hinv = params.h_inverses()?;
        // f(a) = −(y_a + a^{g−h})·h(a)
        let points: Vec<(Fe, Fe)> = params
            .code()
            .eval_points()
            .iter()
            .zip(&received)
            .zip(&hinv)
            .map(|((&a, &y), &hi)| (a, f.neg(f.div(f.add(y, f.pow(a, params.k() as u64)), hi).expect("h(a) ≠ 0"))))
            .collect();
        let f_rep = ring.interpolate(&points)?;
        if f_rep.degree().is_some_and(|d| d >= params.h()) || f_rep.is_zero() {
            return Err(Error::BadParams("received word is not of Cheng–Wan form".into()));
        }
        let witness = j.witness.as_deref().map(dec).transpose()?;
        if let Some(w) = &witness {
            if !params.code().is_codeword(w) {
                return Err(Error::BadParams("witness is not a codeword".into()));
            }
        }
        let syndrome = dec(&j.syndrome)?;
        let inst = CWInstance {
            params,
            #[cfg(feature = "harness")]
            exponent: j.i,
            f: f_rep,
            received,
            witness,
        };
        if syndrome != inst.syndrome() {
            return Err(Error::BadParams("syndrome does not match the received word".into()));
        }
        Ok(inst)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CWParamsJson {
    pub field: FieldDescriptor,
    pub g: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strict_cw: Option<bool>,
}

/// Serialized instance; field elements are little-endian coefficient lists.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CWInstanceJson {
    pub params: CWParamsJson,
    pub received: Vec<Vec<u32>>,
    pub syndrome: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vec<u32>>>,
    #[cfg(feature = "harness")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<u64>,
}

/// Multiplicative identity
/// `element · (α − inv_factor)^{−1} = lead · ∏_a (α − a)^{e_a}` in `F_{q^h}`,
/// with `element = b^exponent` when the exponent is known.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Relation {
    element: TowerElem,
    exponent: Option<u64>,
    inv_factor: Option<Fe>,
    lead: Fe,
    exps: Vec<(Fe, u32)>,
}

impl Relation {
    /// Builds and verifies a relation.
    pub fn new(
        tower: &FieldTower,
        element: TowerElem,
        exponent: Option<u64>,
        inv_factor: Option<Fe>,
        lead: Fe,
        exps: Vec<(Fe, u32)>,
    ) -> Result<Relation> {
        let r = Relation { element, exponent, inv_factor, lead, exps };
        if !r.verify(tower) {
            return Err(Error::RelationCheck);
        }
        Ok(r)
    }

    pub fn verify(&self, tower: &FieldTower) -> bool {
        if self.lead.is_zero() {
            return false;
        }
        if self.exponent.is_some_and(|i| tower.base_pow(i) != self.element) {
            return false;
        }
        let mut lhs = self.element.clone();
        if let Some(a) = self.inv_factor {
            match tower.div(&lhs, &tower.alpha_minus(a)) {
                Ok(v) => lhs = v,
                Err(_) => return false,
            }
        }
        let rhs = self.exps.iter().fold(tower.from_ground(self.lead), |acc, &(a, e)| {
            tower.mul(&acc, &tower.pow(&tower.alpha_minus(a), e as u64))
        });
        lhs == rhs
    }

    pub fn element(&self) -> &TowerElem {
        &self.element
    }
    pub fn exponent(&self) -> Option<u64> {
        self.exponent
    }
    pub fn inv_factor(&self) -> Option<Fe> {
        self.inv_factor
    }
    pub fn lead(&self) -> Fe {
        self.lead
    }
    pub fn exps(&self) -> &[(Fe, u32)] {
        &self.exps
    }
    /// The factor-base points with nonzero exponent.
    pub fn support(&self) -> Vec<Fe> {
        self.exps.iter().filter(|e| e.1 > 0).map(|e| e.0).collect()
    }
}

/// Reads a relation off a codeword: `u* = message(c)`, `t = u* + x^{g−h}`,
/// `P = f + t·h`; usable when `P` splits into `g` distinct linear factors.
pub fn extract_relation(inst: &CWInstance, c: &[Fe]) -> Option<Relation> {
    let params = inst.params();
    let f = &**params.field();
    let ring = PolyRing::new(f);
    let u_star = params.code().message_of(c)?;
    let t = ring.add(&u_star, &Poly::monomial(Fe::ONE, params.k()));
    let p = ring.add(inst.f(), &ring.mul(&t, params.tower().h_poly()));
    let (lead, roots) = ring.split_distinct_linear(&p)?;
    if roots.len() != params.g() {
        return None;
    }
    let exps = roots.into_iter().map(|a| (a, 1)).collect();
    Relation::new(params.tower(), inst.element(), None, None, lead, exps).ok()
}

/// Per-coordinate marginal statistics of received words for uniform `i`,
/// measured against the uniform distribution on `F_q`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarginalStats {
    pub samples: u64,
    pub q: u32,
    pub n: usize,
    /// Mean over coordinates of the empirical total-variation distance.
    pub mean_tv: f64,
    pub max_tv: f64,
    /// Expected total variation of a truly uniform sample of this size, for scale.
    pub uniform_tv_reference: f64,
    /// Pearson statistic summed over coordinates.
    pub chi_square: f64,
    pub degrees_of_freedom: u64,
}

pub fn marginal_stats<R: Rng + ?Sized>(params: &CWParams, samples: u64, rng: &mut R) -> Result<MarginalStats> {
    if samples == 0 {
        return Err(Error::BadParams("samples must be positive".into()));
    }
    let (q, n) = (params.field().q() as usize, params.n());
    let mut counts = vec![vec![0u64; q]; n];
    for _ in 0..samples {
        let i = rng.gen_range(0..params.tower().order());
        let inst = gen_instance(params, i)?;
        for (row, y) in counts.iter_mut().zip(inst.received()) {
            row[y.0 as usize] += 1;
        }
    }
    let s = samples as f64;
    let expect = s / q as f64;
    let tvs: Vec<f64> = counts
        .iter()
        .map(|row| 0.5 * row.iter().map(|&c| (c as f64 / s - 1.0 / q as f64).abs()).sum::<f64>())
        .collect();
    let chi_square =
        counts.iter().flat_map(|row| row.iter().map(move |&c| (c as f64 - expect).powi(2) / expect)).sum::<f64>();
    Ok(MarginalStats {
        samples,
        q: q as u32,
        n,
        mean_tv: tvs.iter().sum::<f64>() / n as f64,
        max_tv: tvs.iter().cloned().fold(0.0, f64::max),
        // E|Bin/s − 1/q| summed over q cells, normal approximation
        uniform_tv_reference: 0.5
            * q as f64
            * ((2.0 / std::f64::consts::PI) * (1.0 / q as f64) * (1.0 - 1.0 / q as f64) / s).sqrt(),
        chi_square,
        degrees_of_freedom: (n * (q - 1)) as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::field_of_order;
    use crate::rscode::distance;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn params(q: u64, h: usize, g: usize) -> CWParams {
        let t = FieldTower::new(field_of_order(q).unwrap(), h, None).unwrap();
        CWParams::new(Arc::new(t), g).unwrap()
    }

    #[test]
    fn exponent_zero() {
        let p = params(16, 2, 12);
        let inst = gen_instance(&p, 0).unwrap();
        let f = p.field();
        let ring = PolyRing::new(f);
        for (&a, &y) in p.code().eval_points().iter().zip(inst.received()) {
            let ha = ring.eval(p.tower().h_poly(), a);
            let want = f.sub(f.neg(f.inv(ha).unwrap()), f.pow(a, 10));
            assert_eq!(y, want);
        }
    }

    #[test]
    fn planted_round_trip() {
        let p = params(16, 2, 12);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let (inst, w, a) = random_planted(&p, &mut rng).unwrap();
            for &x in &a {
                assert_eq!(w[x.0 as usize], inst.received()[x.0 as usize]);
            }
            assert!(distance(&w, inst.received()).unwrap() <= p.radius());
            let rel = extract_relation(&inst, &w).unwrap();
            assert_eq!(rel.support(), a);
            let prod = a.iter().fold(p.tower().one(), |acc, &x| p.tower().mul(&acc, &p.tower().alpha_minus(x)));
            assert_eq!(inst.element(), prod);
        }
    }

    #[test]
    fn degenerate_and_sizes() {
        let p = params(16, 1, 8);
        assert_eq!(gen_instance(&p, 3).unwrap_err(), Error::DegenerateTower);
        let p = params(16, 2, 12);
        assert!(matches!(planted_instance(&p, &[Fe(1), Fe(2)]), Err(Error::WrongWitnessSize { .. })));
        assert!(!p.strict_cw());
        assert_eq!((p.n(), p.k(), p.radius()), (16, 10, 4));
    }

    #[test]
    fn json_round_trip() {
        let p = params(9, 2, 6);
        let inst = gen_instance(&p, 17).unwrap();
        let j = inst.to_json();
        let text = serde_json::to_string(&j).unwrap();
        let back = CWInstance::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.f(), inst.f());
        assert_eq!(back.received(), inst.received());
    }
}

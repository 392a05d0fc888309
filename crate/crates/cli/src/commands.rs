//! Subcommand implementations. Each returns a JSON value or a classified error.

use std::collections::BTreeMap;
use std::fs;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use rsdlog::chengwan::{
    baseline_dlog, extract_relation, gen_instance, index_calculus_dlog, marginal_stats, random_planted, CWInstance,
    CWInstanceJson, CWParams, CollectConfig, DlogMethod,
};
use rsdlog::decoder::{decoder_by_kind, BerlekampWelch, BruteForce, Decoder, DecoderKind, GuruswamiSudan};
use rsdlog::ffield::field_of_order;
use rsdlog::hardness::{brute_force_mss, check_padding, random_instance, MssAnswer, MssJson};
use rsdlog::linalg::Matrix;
use rsdlog::qsim::{
    decoder_table, ibdd_bernoulli, pgm_bdd, tau_perp, tau_prime, CosetDecoder, IbddConfig, LeaderTable, PgmConfig,
    RsDualDecoder, StatsRecord,
};
use rsdlog::rscode::{weight, CodeDescriptor, RSCode};
use rsdlog::{Error, ExtField, Fe, FieldTower, TowerElem};

use crate::{DualDecoder, RunConfig};

/// Stream ids splitting the run's generator between modules.
mod stream {
    pub const INSTANCE: u64 = 1;
    pub const DLOG: u64 = 2;
    pub const REGEV: u64 = 3;
    pub const PGM: u64 = 4;
    pub const HARDNESS: u64 = 5;
    pub const STATS: u64 = 6;
}

#[derive(Debug)]
pub enum CliError {
    Input { message: String, path: Option<String> },
    Compute(String),
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError::Input { message: message.into(), path: None }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input { .. } => 2,
            CliError::Compute(_) => 1,
        }
    }

    pub fn to_json(&self) -> String {
        let body = match self {
            CliError::Input { message, path } => json!({"kind": "input", "message": message, "path": path}),
            CliError::Compute(message) => json!({"kind": "computation", "message": message}),
        };
        json!({ "error": body }).to_string()
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        use Error::*;
        match e {
            BudgetExceeded(_)
            | NotInSubgroup
            | SolverFailed(_)
            | StateTooLarge { .. }
            | DecoderNotTotal
            | NoExactWeightSolution(_)
            | PostSelectionFailed(_)
            | InstanceTooLarge { .. }
            | CodeTooLarge { .. }
            | CannotFactor(_)
            | Overflow
            | VanishingCoset(_)
            | RelationCheck
            | FieldTooLarge { .. } => CliError::Compute(e.to_string()),
            other => CliError::input(other.to_string()),
        }
    }
}

type CmdResult = Result<Value, CliError>;

fn rng(cfg: &RunConfig, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(cfg.seed);
    r.set_stream(stream);
    r
}

/// Reads a JSON instance, accepting either the bare object or a
/// `{"instance": ...}` wrapper as emitted by `cw-gen`.
fn load<T: DeserializeOwned>(path: &str) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read {path}: {e}")))?;
    let mut value: Value =
        serde_json::from_str(&text).map_err(|e| CliError::input(format!("invalid JSON in {path}: {e}")))?;
    let mut prefix = "";
    if let Some(inner) = value.as_object_mut().and_then(|m| m.remove("instance")) {
        value = inner;
        prefix = "instance.";
    }
    serde_path_to_error::deserialize(value).map_err(|e| CliError::Input {
        path: Some(format!("{prefix}{}", e.path())),
        message: e.into_inner().to_string(),
    })
}

fn coeffs(f: &ExtField, v: &[Fe]) -> Vec<Vec<u32>> {
    v.iter().map(|&c| f.coeffs(c)).collect()
}

fn tower_coeffs(t: &FieldTower, a: &TowerElem) -> Vec<Vec<u32>> {
    coeffs(t.ground(), &a.0)
}

fn tower(q: u64, h: usize) -> Result<Arc<FieldTower>, CliError> {
    Ok(Arc::new(FieldTower::new(field_of_order(q)?, h, None)?))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

pub fn params(_cfg: &RunConfig, q: u64, h: u64) -> CmdResult {
    Ok(to_value(&decoder_table(q, h)?))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DecodeInstance {
    code: CodeDescriptor,
    received: Vec<Vec<u32>>,
}

pub fn decode(cfg: &RunConfig, path: &str, decoder: &str, t: Option<usize>) -> CmdResult {
    let inst: DecodeInstance = load(path)?;
    let kind: DecoderKind = decoder.parse()?;
    let code = inst.code.build()?;
    let f = code.field().clone();
    let y = inst.received.iter().map(|c| f.from_coeffs(c)).collect::<Result<Vec<_>, _>>()?;
    let dec: Box<dyn Decoder> = match kind {
        DecoderKind::Bw if t.is_some() => return Err(CliError::input("bw decodes at its fixed radius; drop --t")),
        DecoderKind::Brute => Box::new(BruteForce { radius: t, limit: cfg.max_enum as u128 }),
        _ => decoder_by_kind(kind, t),
    };
    let words = dec.decode(&code, &y)?;
    let messages: Vec<Vec<Vec<u32>>> =
        words.iter().map(|c| code.message_of(c).map(|m| coeffs(&f, m.coeffs())).unwrap_or_default()).collect();
    Ok(json!({
        "decoder": kind,
        "radius": dec.radius(&code),
        "count": words.len(),
        "codewords": words.iter().map(|c| coeffs(&f, c)).collect::<Vec<_>>(),
        "messages": messages,
    }))
}

pub fn cw_gen(cfg: &RunConfig, q: u64, h: usize, g: usize, planted: bool) -> CmdResult {
    let params = CWParams::new(tower(q, h)?, g)?;
    let mut rng = rng(cfg, stream::INSTANCE);
    let inst = if planted {
        random_planted(&params, &mut rng)?.0
    } else {
        let i = rng.gen_range(0..params.tower().order());
        gen_instance(&params, i)?
    };
    Ok(json!({ "instance": to_value(&inst.to_json()) }))
}

fn relation_json(inst: &CWInstance, c: &[Fe]) -> Option<Value> {
    let f = inst.params().field();
    let rel = extract_relation(inst, c)?;
    Some(json!({
        "support": coeffs(f, &rel.support()),
        "lead": f.coeffs(rel.lead()),
        "verified": rel.verify(inst.params().tower()),
    }))
}

pub fn cw_demo(cfg: &RunConfig, q: u64, h: usize, g: usize, trials: u64, instance: Option<&str>) -> CmdResult {
    if let Some(path) = instance {
        let j: CWInstanceJson = load(path)?;
        let inst = CWInstance::from_json(&j)?;
        let code = inst.params().code();
        let candidates = match inst.witness() {
            Some(w) => vec![w.to_vec()],
            None => BruteForce { radius: Some(inst.params().radius()), limit: cfg.max_enum as u128 }
                .decode(code, inst.received())?,
        };
        let relations: Vec<Value> = candidates.iter().filter_map(|c| relation_json(&inst, c)).collect();
        if relations.is_empty() {
            return Err(CliError::Compute("no relation recovered from the instance".into()));
        }
        return Ok(
            json!({ "source": if inst.witness().is_some() { "witness" } else { "brute_force" }, "relations": relations }),
        );
    }
    let params = CWParams::new(tower(q, h)?, g)?;
    let mut rng = rng(cfg, stream::INSTANCE);
    let mut recovered = 0;
    let mut example = Value::Null;
    for trial in 0..trials {
        let (inst, witness, a) = random_planted(&params, &mut rng)?;
        let text = serde_json::to_string(&inst.to_json()).expect("serializable");
        let back = CWInstance::from_json(&serde_json::from_str(&text).expect("own output parses"))?;
        let Some(rel) = extract_relation(&back, &witness) else { continue };
        let mut support = rel.support();
        support.sort();
        if support == a && rel.verify(params.tower()) {
            recovered += 1;
        }
        if trial == 0 {
            example = json!({ "planted": coeffs(params.field(), &a), "recovered": coeffs(params.field(), &support) });
        }
    }
    if recovered != trials {
        return Err(CliError::Compute(format!("recovered {recovered} of {trials} planted sets")));
    }
    Ok(json!({
        "q": q, "h": h, "g": g, "n": params.n(), "k": params.k(), "radius": params.radius(), "strict_cw": params.strict_cw(),
        "trials": trials, "recovered": recovered, "example": example,
    }))
}

pub fn dlog(cfg: &RunConfig, q: u64, h: usize, exponent: Option<u64>, budget: Option<u64>) -> CmdResult {
    let t = tower(q, h)?;
    let mut rng = rng(cfg, stream::DLOG);
    let e = exponent.unwrap_or_else(|| rng.gen_range(0..t.order())) % t.order();
    let y = t.base_pow(e);
    let rep = index_calculus_dlog(t.clone(), &y, rng.gen(), CollectConfig { budget })?;
    let baseline = baseline_dlog(&*t, t.base(), &y, t.order(), DlogMethod::Bsgs)?;
    if rep.exponent != baseline {
        return Err(CliError::Compute(format!("index calculus gave {}, baseline {baseline}", rep.exponent)));
    }
    Ok(json!({
        "q": q, "h": h, "group_order": t.order(),
        "base": tower_coeffs(&t, t.base()), "target": tower_coeffs(&t, &y),
        "exponent": rep.exponent, "baseline": baseline, "verified": true,
        "draws": rep.draws, "relations": rep.relations, "shift_attempts": rep.shift_attempts,
    }))
}

pub fn regev_sim(cfg: &RunConfig, q: u64, k: usize, tau: f64, trials: u64, decoder: DualDecoder) -> CmdResult {
    let code = RSCode::full_support(field_of_order(q)?, k)?;
    let limit = cfg.max_dim as u128;
    let dec: Box<dyn CosetDecoder> = match decoder {
        DualDecoder::Nearest => Box::new(LeaderTable::nearest(&code, limit)?),
        DualDecoder::Bw => Box::new(RsDualDecoder::new(&code, Box::new(BerlekampWelch), limit)?),
        DualDecoder::Gs => Box::new(RsDualDecoder::new(&code, Box::new(GuruswamiSudan::default()), limit)?),
    };
    let seed = rng(cfg, stream::REGEV).gen();
    let stats = ibdd_bernoulli(&code, tau, dec.as_ref(), IbddConfig { trials, seed, max_dim: limit })?;
    let perp = tau_perp(tau, q)?;
    let prime = tau_prime(perp, q)?;
    let mut out = to_value(&stats);
    let extra = json!({
        "q": q, "n": code.n(), "k": k, "tau": tau, "tau_perp": perp, "tau_prime": prime,
        "radius": (prime * code.n() as f64).floor() as usize,
        "decoder": format!("{decoder:?}").to_lowercase(),
    });
    out.as_object_mut().expect("object").extend(extra.as_object().expect("object").clone());
    Ok(out)
}

fn parse_row(f: &ExtField, s: &str, what: &str) -> Result<Vec<Fe>, CliError> {
    s.split(',')
        .map(|x| {
            let v: u32 = x.trim().parse().map_err(|_| CliError::input(format!("{what}: {x:?} is not an integer")))?;
            Ok(f.check(Fe(v))?)
        })
        .collect()
}

pub fn pgm_sim(cfg: &RunConfig, q: u64, gen: &str, y0: &str, t: usize, trials: u64) -> CmdResult {
    let f = field_of_order(q)?;
    let rows = gen.split(';').map(|r| parse_row(&f, r, "G")).collect::<Result<Vec<_>, _>>()?;
    let n = rows.first().map_or(0, Vec::len);
    let g = Matrix::from_rows(rows, n)?;
    let y0 = parse_row(&f, y0, "y0")?;
    let mut rng = rng(cfg, stream::PGM);
    let mut hist: BTreeMap<String, u64> = BTreeMap::new();
    let (mut successes, mut weight_sum, mut attempts) = (0u64, 0usize, 0u64);
    let mut last = None;
    for _ in 0..trials {
        let out =
            pgm_bdd(&f, &g, t, &y0, PgmConfig { seed: rng.gen(), max_dim: cfg.max_dim as u128, ..Default::default() })?;
        let x: Vec<Fe> = out.x.iter().map(|&c| Fe(c)).collect();
        let w = weight(&x);
        weight_sum += w;
        successes += (w == out.t_used) as u64;
        attempts += out.postselect_attempts as u64;
        *hist.entry(out.x.iter().map(u32::to_string).collect::<Vec<_>>().join(",")).or_default() += 1;
        last = Some(out);
    }
    let stats = StatsRecord {
        trials,
        successes,
        p_dec: None,
        eta: None,
        bound_rhs: None,
        mean_weight: weight_sum as f64 / trials.max(1) as f64,
        gamma: last.as_ref().map(|o| o.gamma),
    };
    let mut out = to_value(&stats);
    if let Some(o) = last {
        let extra = json!({
            "t_used": o.t_used,
            "acceptance": o.acceptance,
            "postselect_prob": o.postselect_prob,
            "postselect_attempts": attempts,
            "support_size": o.support.len(),
            "solutions": hist,
        });
        out.as_object_mut().expect("object").extend(extra.as_object().expect("object").clone());
    }
    Ok(out)
}

pub fn pad_mss(cfg: &RunConfig, instance: Option<&str>, m: u64, size: usize, k: usize, d: usize) -> CmdResult {
    let mut rng = rng(cfg, stream::HARDNESS);
    let inst = match instance {
        Some(path) => load::<MssJson>(path)?.build()?,
        None => {
            let planted = rng.gen();
            random_instance(&mut rng, size, k, d, 20, planted)?
        }
    };
    let limit = cfg.max_enum as u128;
    let check = check_padding(&inst, m, limit)?;
    if check.original_yes != check.padded_yes || !check.witness_avoids_dummies {
        return Err(CliError::Compute("padding changed the answer".into()));
    }
    let witness = match brute_force_mss(&inst, limit)? {
        MssAnswer::Yes(w) => Some(w.iter().map(ToString::to_string).collect::<Vec<_>>()),
        MssAnswer::No => None,
    };
    let mut out = to_value(&check);
    out.as_object_mut().expect("object").extend([
        ("instance".to_string(), to_value(&MssJson::from(&inst))),
        ("m".to_string(), json!(m)),
        ("witness".to_string(), json!(witness)),
    ]);
    Ok(out)
}

pub fn cw_stats(cfg: &RunConfig, q: u64, h: usize, g: usize, samples: u64) -> CmdResult {
    let params = CWParams::new(tower(q, h)?, g)?;
    Ok(to_value(&marginal_stats(&params, samples, &mut rng(cfg, stream::STATS))?))
}

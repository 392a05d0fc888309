//! Bounded-distance and list decoders for RS codes behind one contract.
//!
//! A decoding failure is an empty list, never an error. Errors are reserved
//! for malformed input and for requests outside a decoder's guarantees.

mod brute;
mod bw;
mod gs;

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::Fe;
use crate::rscode::{distance, RSCode, ENUMERATION_LIMIT};

pub use brute::brute_force_bdd;
pub use bw::{berlekamp_welch, bw_radius};
pub use gs::{gs_multiplicity, gs_radius, guruswami_sudan};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecoderKind {
    Bw,
    Gs,
    Brute,
}

impl FromStr for DecoderKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bw" => Ok(DecoderKind::Bw),
            "gs" => Ok(DecoderKind::Gs),
            "brute" => Ok(DecoderKind::Brute),
            other => Err(Error::BadParams(format!("unknown decoder {other:?}"))),
        }
    }
}

/// Common decoder contract: every returned codeword lies within
/// `radius(code)` of the received word.
pub trait Decoder: Send + Sync {
    fn kind(&self) -> DecoderKind;
    fn radius(&self, code: &RSCode) -> usize;
    fn decode(&self, code: &RSCode, y: &[Fe]) -> Result<Vec<Vec<Fe>>>;
}

pub struct BerlekampWelch;

impl Decoder for BerlekampWelch {
    fn kind(&self) -> DecoderKind {
        DecoderKind::Bw
    }
    fn radius(&self, code: &RSCode) -> usize {
        bw_radius(code.n(), code.k())
    }
    fn decode(&self, code: &RSCode, y: &[Fe]) -> Result<Vec<Vec<Fe>>> {
        let out: Vec<_> = berlekamp_welch(code, y)?.into_iter().collect();
        debug_check(code, y, self.radius(code), &out);
        Ok(out)
    }
}

/// Guruswami–Sudan at a fixed radius, or at [`gs_radius`] when unset.
#[derive(Default)]
pub struct GuruswamiSudan {
    pub radius: Option<usize>,
}

impl Decoder for GuruswamiSudan {
    fn kind(&self) -> DecoderKind {
        DecoderKind::Gs
    }
    fn radius(&self, code: &RSCode) -> usize {
        self.radius.unwrap_or_else(|| gs_radius(code.n(), code.k()))
    }
    fn decode(&self, code: &RSCode, y: &[Fe]) -> Result<Vec<Vec<Fe>>> {
        let t = self.radius(code);
        let out = guruswami_sudan(code, y, t)?;
        debug_check(code, y, t, &out);
        Ok(out)
    }
}

/// Exhaustive oracle; radius defaults to the unique-decoding radius.
pub struct BruteForce {
    pub radius: Option<usize>,
    pub limit: u128,
}

impl Default for BruteForce {
    fn default() -> Self {
        BruteForce { radius: None, limit: ENUMERATION_LIMIT }
    }
}

impl Decoder for BruteForce {
    fn kind(&self) -> DecoderKind {
        DecoderKind::Brute
    }
    fn radius(&self, code: &RSCode) -> usize {
        self.radius.unwrap_or_else(|| bw_radius(code.n(), code.k()))
    }
    fn decode(&self, code: &RSCode, y: &[Fe]) -> Result<Vec<Vec<Fe>>> {
        brute_force_bdd(code, y, self.radius(code), self.limit)
    }
}

/// Decoder by CLI name with an optional radius override.
pub fn decoder_by_kind(kind: DecoderKind, radius: Option<usize>) -> Box<dyn Decoder> {
    match kind {
        DecoderKind::Bw => Box::new(BerlekampWelch),
        DecoderKind::Gs => Box::new(GuruswamiSudan { radius }),
        DecoderKind::Brute => Box::new(BruteForce { radius, limit: ENUMERATION_LIMIT }),
    }
}

fn debug_check(code: &RSCode, y: &[Fe], t: usize, out: &[Vec<Fe>]) {
    if cfg!(debug_assertions) {
        for c in out {
            debug_assert!(code.is_codeword(c), "decoder returned a non-codeword");
            debug_assert!(distance(c, y).expect("lengths") <= t, "decoder exceeded its radius");
        }
    }
}

/// Sort key placing codewords in lexicographic order of their messages.
pub(crate) fn message_key(code: &RSCode, c: &[Fe]) -> Vec<Fe> {
    let m = code.message_of(c).expect("codeword");
    (0..code.k()).map(|i| m.coeff(i)).collect()
}

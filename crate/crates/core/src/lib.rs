pub mod chengwan;
pub mod decoder;
pub mod error;
pub mod ffield;
pub mod hardness;
pub mod linalg;
pub mod nt;
pub mod poly;
pub mod qsim;
pub mod rscode;
pub mod scalar;

pub use error::{Error, Result};
pub use ffield::{ExtField, Fe, FieldTower, TowerElem};
pub use hardness::{MssAnswer, MssInstance};
pub use poly::{Poly, PolyRing};

/// Double-precision simulator state.
pub type AmplitudeState64 = qsim::AmplitudeState<f64>;
/// Single-precision simulator state.
pub type AmplitudeState32 = qsim::AmplitudeState<f32>;
/// Moment subset-sum over arbitrary-precision integers.
pub type BigMssInstance = hardness::MssInstance<num_bigint::BigInt>;
/// Moment subset-sum over `i128` with checked overflow.
pub type MssInstance128 = hardness::MssInstance<i128>;

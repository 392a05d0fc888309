use std::fmt::Debug;
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar for amplitudes and noise-rate formulas.
///
/// The finite-field layers are exact; only the simulators and rate
/// formulas are generic over this trait. Tolerances quoted in tests
/// (1e−9 and tighter) assume `f64`.
pub trait Real: Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Send + Sync + 'static {}

impl<T> Real for T where T: Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Send + Sync + 'static {}

//! Scalar abstraction shared by the planar, transform and rendering code.

use std::fmt::Debug;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Real-valued sample type: `f32` or `f64`.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + Default + Debug + Send + Sync + 'static
{
    /// Lossy conversion from `f64`, used for precomputed constants.
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("f64 constant representable in every Real")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Rounds half away from zero and clamps into the 8-bit range.
///
/// Returns `None` for NaN or infinite input.
pub fn to_u8<T: Real>(v: T) -> Option<u8> {
    if !v.is_finite() {
        return None;
    }
    let r = v.round().as_f64();
    Some(r.clamp(0.0, 255.0) as u8)
}

//! Sample scalar abstraction.
//!
//! Waveform-touching code is generic over the floating-point sample type so
//! the campaign can run single precision for speed while numeric tests
//! instantiate the same code at double precision.

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use rustfft::FftNum;

/// Floating-point sample type usable throughout the signal chain.
pub trait Scalar: FftNum + Float + FloatConst + NumAssign + Default {
    /// Lossy conversion from `f64`, panicking only on values no float holds.
    fn of(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("f64 convertible to scalar")
    }

    /// Widening conversion back to `f64`.
    fn as_f64(self) -> f64;

    /// Converts a double-precision complex value to this precision.
    fn c_of(v: Complex<f64>) -> Complex<Self> {
        Complex::new(Self::of(v.re), Self::of(v.im))
    }

    /// Widens a complex value of this precision to double precision.
    fn c_as_f64(v: Complex<Self>) -> Complex<f64> {
        Complex::new(v.re.as_f64(), v.im.as_f64())
    }
}

impl Scalar for f32 {
    fn as_f64(self) -> f64 {
        self as f64
    }
}

impl Scalar for f64 {
    fn as_f64(self) -> f64 {
        self
    }
}

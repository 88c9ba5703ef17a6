//! Scalar abstraction shared by every numerical module.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating point scalar the library is generic over (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
}

/// Lossless-enough conversion of a literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in target float")
}

/// Converts an integer quantum number into `T`.
#[inline]
pub fn int<T: Real>(k: usize) -> T {
    T::from_usize(k).expect("integer representable in target float")
}

/// `1 / tan(x)`.
#[inline]
pub fn cot<T: Real>(x: T) -> T {
    x.cos() / x.sin()
}

/// `1 / sin(x)`.
#[inline]
pub fn csc<T: Real>(x: T) -> T {
    x.sin().recip()
}

/// Inverse cotangent on the branch `(0, pi)`, continuous in `z`.
#[inline]
pub fn arccot<T: Real>(z: T) -> T {
    T::FRAC_PI_2() - z.atan()
}

/// `n` uniformly spaced points from `a` to `b` inclusive.
pub fn linspace<T: Real>(a: T, b: T, n: usize) -> Vec<T> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => {
            let step = (b - a) / int::<T>(n - 1);
            (0..n).map(|i| a + step * int::<T>(i)).collect()
        }
    }
}

/// Composite Simpson rule on `[a, b]` with `panels` (rounded up to even) subintervals.
pub fn simpson<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, panels: usize) -> T {
    let n = if panels % 2 == 1 { panels + 1 } else { panels.max(2) };
    let h = (b - a) / int::<T>(n);
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { lit::<T>(4.0) } else { lit::<T>(2.0) };
        acc += w * f(a + h * int::<T>(i));
    }
    acc * h / lit::<T>(3.0)
}

//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, NumAssign, NumCast};

/// Real floating-point scalar: `f32` or `f64`.
///
/// Algorithms are written once against this trait. Accuracy targets quoted in
/// the docs refer to `f64`; `f32` instantiations run the same code with
/// tolerances scaled through [`Real::epsilon`].
pub trait Real:
    Float + FloatConst + NumAssign + Sum + Default + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Convert an `f64` literal into this type.
    #[inline]
    fn lit(x: f64) -> Self {
        <Self as NumCast>::from(x).expect("f64 literal representable")
    }

    #[inline]
    fn from_usize(n: usize) -> Self {
        <Self as NumCast>::from(n).expect("usize representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }

    /// Significant decimal digits needed for a lossless round-trip.
    const ROUND_TRIP_DIGITS: usize;
}

impl Real for f32 {
    const ROUND_TRIP_DIGITS: usize = 9;
}

impl Real for f64 {
    const ROUND_TRIP_DIGITS: usize = 17;
}

/// Complex number over a [`Real`] scalar.
pub type C<T> = Complex<T>;

#[inline]
pub(crate) fn creal<T: Real>(re: T) -> C<T> {
    Complex::new(re, T::zero())
}

/// Principal argument in (−π, π]. `atan2` returns −π for (−x, −0.0); that
/// case is folded onto +π so the branch cut convention is unambiguous.
#[inline]
pub fn principal_arg<T: Real>(z: C<T>) -> T {
    let a = z.im.atan2(z.re);
    if a == -T::PI() {
        T::PI()
    } else {
        a
    }
}

/// Principal power z^p = exp(p (ln|z| + i arg z)); 0^p = 0 for p > 0.
pub fn cpow_real<T: Real>(z: C<T>, p: T) -> C<T> {
    if z.re == T::zero() && z.im == T::zero() {
        return if p == T::zero() { C::new(T::one(), T::zero()) } else { C::new(T::zero(), T::zero()) };
    }
    let r = z.norm();
    let th = principal_arg(z);
    C::from_polar(r.powf(p), th * p)
}

/// Neumaier-compensated accumulator for complex sums.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct CompensatedSum<T> {
    re: T,
    re_c: T,
    im: T,
    im_c: T,
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self { re: T::zero(), re_c: T::zero(), im: T::zero(), im_c: T::zero() }
    }

    #[inline]
    fn step(sum: &mut T, comp: &mut T, x: T) {
        let t = *sum + x;
        if sum.abs() >= x.abs() {
            *comp += (*sum - t) + x;
        } else {
            *comp += (x - t) + *sum;
        }
        *sum = t;
    }

    #[inline]
    pub fn add(&mut self, z: C<T>) {
        Self::step(&mut self.re, &mut self.re_c, z.re);
        Self::step(&mut self.im, &mut self.im_c, z.im);
    }

    #[inline]
    pub fn value(&self) -> C<T> {
        C::new(self.re + self.re_c, self.im + self.im_c)
    }
}

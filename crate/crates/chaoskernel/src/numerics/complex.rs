use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::ComplexValue;

/// Principal square root: cut along the negative real axis, nonnegative real part.
pub fn principal_sqrt<T: Real>(v: ComplexValue<T>) -> Result<ComplexValue<T>> {
    ensure_finite("principal_sqrt", v)?;
    if v.im == T::zero() && v.re < T::zero() {
        return Err(Error::BranchCut { op: "principal_sqrt" });
    }
    if v.im == T::zero() {
        return Ok(ComplexValue::new(v.re.sqrt(), T::zero()));
    }
    // Hull-style evaluation: the larger component is computed without cancellation.
    let m = v.norm();
    let t = ((m + v.re.abs()) / (T::one() + T::one())).sqrt();
    let half = T::lit(0.5);
    let (re, im) = if v.re >= T::zero() {
        (t, v.im / t * half)
    } else {
        (v.im.abs() / t * half, t.copysign(v.im))
    };
    Ok(ComplexValue::new(re, im))
}

/// Rejects NaN and infinite components.
pub fn ensure_finite<T: Real>(op: &'static str, v: ComplexValue<T>) -> Result<ComplexValue<T>> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { op })
    }
}

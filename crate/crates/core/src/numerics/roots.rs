use crate::error::Error;
use crate::{Result, Scalar};

/// An interval together with function values at its ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket<T> {
    pub lo: T,
    pub hi: T,
    pub f_lo: T,
    pub f_hi: T,
}

impl<T: Scalar> Bracket<T> {
    pub fn new<F: FnMut(T) -> T>(lo: T, hi: T, mut f: F) -> Self {
        Bracket { lo, hi, f_lo: f(lo), f_hi: f(hi) }
    }

    pub fn changes_sign(&self) -> bool {
        (self.f_lo <= T::zero() && self.f_hi >= T::zero()) || (self.f_lo >= T::zero() && self.f_hi <= T::zero())
    }

    fn invalid(&self) -> Error {
        Error::InvalidBracket {
            lo: self.lo.as_f64(),
            hi: self.hi.as_f64(),
            f_lo: self.f_lo.as_f64(),
            f_hi: self.f_hi.as_f64(),
        }
    }
}

/// Bisection to a bracket width of at most `tol`; returns the midpoint.
pub fn bisect<T, F>(mut f: F, bracket: Bracket<T>, tol: T) -> Result<T>
where
    T: Scalar,
    F: FnMut(T) -> T,
{
    if !(bracket.lo < bracket.hi) || !bracket.changes_sign() || !(tol > T::zero()) {
        return Err(bracket.invalid());
    }
    if bracket.f_lo == T::zero() {
        return Ok(bracket.lo);
    }
    if bracket.f_hi == T::zero() {
        return Ok(bracket.hi);
    }
    let (mut lo, mut hi) = (bracket.lo, bracket.hi);
    let lo_negative = bracket.f_lo < T::zero();
    while hi - lo > tol {
        let mid = lo + (hi - lo) * T::lit(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == T::zero() {
            return Ok(mid);
        }
        if (fm < T::zero()) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo + (hi - lo) * T::lit(0.5))
}

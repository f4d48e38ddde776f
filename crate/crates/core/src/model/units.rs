//! dB / linear conversions. Everything inside the crate is linear (W, Hz, m).

use crate::Scalar;

#[inline]
pub fn db_to_linear<T: Scalar>(db: T) -> T {
    T::lit(10.0).powf(db / T::lit(10.0))
}

#[inline]
pub fn linear_to_db<T: Scalar>(lin: T) -> T {
    T::lit(10.0) * lin.log10()
}

/// dBm (or dBm/Hz) to W (or W/Hz).
#[inline]
pub fn dbm_to_watts<T: Scalar>(dbm: T) -> T {
    db_to_linear(dbm - T::lit(30.0))
}

#[inline]
pub fn watts_to_dbm<T: Scalar>(watts: T) -> T {
    linear_to_db(watts) + T::lit(30.0)
}

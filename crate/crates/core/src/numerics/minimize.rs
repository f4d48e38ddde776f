use rayon::prelude::*;

use crate::error::Error;
use crate::{Result, Scalar};

/// Grid-then-golden-section settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimizeSpec<T> {
    /// Uniform grid points used to bracket the global minimum (at least 3).
    pub grid_points: usize,
    /// Golden-section stopping width as a fraction of `hi - lo`.
    pub rel_tol: T,
    /// Values within this relative distance of the best count as ties; the
    /// smallest abscissa wins.
    pub tie_tol: T,
}

impl<T: Scalar> Default for MinimizeSpec<T> {
    fn default() -> Self {
        MinimizeSpec { grid_points: 512, rel_tol: T::lit(1e-6), tie_tol: T::lit(1e-9) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum<T> {
    pub x: T,
    pub value: T,
}

fn sanitize<T: Scalar>(v: T) -> T {
    if v.is_nan() {
        T::infinity()
    } else {
        v
    }
}

fn better<T: Scalar>(cand: Minimum<T>, best: Minimum<T>, tie: T) -> bool {
    let scale = best.value.abs().max(cand.value.abs()).max(T::one());
    let gap = best.value - cand.value;
    if gap > tie * scale {
        return true;
    }
    gap.abs() <= tie * scale && cand.x < best.x
}

/// Golden-section search on `[lo, hi]` down to a bracket of width `tol`.
pub fn golden_section<T, F>(mut f: F, lo: T, hi: T, tol: T) -> Result<Minimum<T>>
where
    T: Scalar,
    F: FnMut(T) -> Result<T>,
{
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) * T::lit(0.5);
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = sanitize(f(c)?);
    let mut fd = sanitize(f(d)?);
    while (b - a).abs() > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = sanitize(f(c)?);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = sanitize(f(d)?);
        }
        if c >= d {
            break;
        }
    }
    Ok(if fc <= fd { Minimum { x: c, value: fc } } else { Minimum { x: d, value: fd } })
}

/// Bounded minimization of a fallible objective.
///
/// The grid is evaluated in parallel; golden section then refines the cell
/// pair around the best grid point. The refined point only replaces the grid
/// optimum when it is strictly better, so monotone objectives return the
/// exact endpoint.
pub fn try_minimize_1d<T, F>(f: F, lo: T, hi: T, spec: &MinimizeSpec<T>) -> Result<Minimum<T>>
where
    T: Scalar,
    F: Fn(T) -> Result<T> + Sync,
{
    if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::domain("minimize_1d", format!("invalid interval [{lo}, {hi}]")));
    }
    if lo == hi {
        return Ok(Minimum { x: lo, value: sanitize(f(lo)?) });
    }
    let n = spec.grid_points.max(3);
    let step = (hi - lo) / T::from_usize_lossy(n - 1);
    let xs: Vec<T> = (0..n).map(|i| if i + 1 == n { hi } else { lo + step * T::from_usize_lossy(i) }).collect();
    let values: Vec<T> = xs.par_iter().map(|&x| f(x).map(sanitize)).collect::<Result<Vec<T>>>()?;
    let mut best_i = 0;
    for i in 1..n {
        let cand = Minimum { x: xs[i], value: values[i] };
        let cur = Minimum { x: xs[best_i], value: values[best_i] };
        if better(cand, cur, spec.tie_tol) {
            best_i = i;
        }
    }
    let mut best = Minimum { x: xs[best_i], value: values[best_i] };
    if !best.value.is_finite() {
        return Ok(best);
    }
    let a = xs[best_i.saturating_sub(1)];
    let b = xs[(best_i + 1).min(n - 1)];
    let tol = spec.rel_tol * (hi - lo);
    let refined = golden_section(&f, a, b, tol)?;
    let scale = best.value.abs().max(T::one());
    if best.value - refined.value > spec.tie_tol * scale {
        best = refined;
    }
    Ok(best)
}

/// Infallible convenience wrapper around [`try_minimize_1d`] with default settings.
pub fn minimize_1d<T, F>(f: F, lo: T, hi: T) -> Result<Minimum<T>>
where
    T: Scalar,
    F: Fn(T) -> T + Sync,
{
    try_minimize_1d(|x| Ok(f(x)), lo, hi, &MinimizeSpec::default())
}

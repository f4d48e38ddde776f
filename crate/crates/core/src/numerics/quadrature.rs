use crate::error::Error;
use crate::{Result, Scalar};

/// Tolerances for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    pub max_depth: usize,
    /// Uniform panels evaluated before adaptive refinement starts.
    pub initial_panels: usize,
}

impl<T: Scalar> Default for QuadratureSpec<T> {
    fn default() -> Self {
        QuadratureSpec { abs_tol: T::lit(1e-10), rel_tol: T::lit(1e-9), max_depth: 40, initial_panels: 8 }
    }
}

impl<T: Scalar> QuadratureSpec<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > T::zero() && self.rel_tol > T::zero()) {
            return Err(Error::domain("integrate", "tolerances must be positive"));
        }
        if self.max_depth == 0 || self.initial_panels == 0 {
            return Err(Error::domain("integrate", "max_depth and initial_panels must be at least 1"));
        }
        Ok(())
    }
}

struct Panel<T> {
    a: T,
    m: T,
    b: T,
    fa: T,
    fm: T,
    fb: T,
    whole: T,
}

fn panel<T: Scalar, F: Fn(T) -> T>(f: &F, a: T, b: T, fa: T, fb: T) -> Panel<T> {
    let m = (a + b) * T::lit(0.5);
    let fm = f(m);
    let whole = (b - a) / T::lit(6.0) * (fa + T::lit(4.0) * fm + fb);
    Panel { a, m, b, fa, fm, fb, whole }
}

/// Adaptive Simpson quadrature of `f` over `[lo, hi]`.
///
/// A panel is accepted when `|S_left + S_right - S| <= 15 eps`, where `eps`
/// starts at `max(abs_tol, rel_tol |I|)` and halves at each level.
pub fn integrate<T, F>(f: F, lo: T, hi: T, spec: &QuadratureSpec<T>) -> Result<T>
where
    T: Scalar,
    F: Fn(T) -> T,
{
    spec.validate()?;
    if !(lo <= hi) {
        return Err(Error::domain("integrate", format!("lo = {lo} > hi = {hi}")));
    }
    if lo == hi {
        return Ok(T::zero());
    }
    let n = spec.initial_panels;
    let h = (hi - lo) / T::from_usize_lossy(n);
    let mut panels = Vec::with_capacity(n);
    let mut a = lo;
    let mut fa = f(lo);
    for i in 0..n {
        let b = if i + 1 == n { hi } else { lo + h * T::from_usize_lossy(i + 1) };
        let fb = f(b);
        panels.push(panel(&f, a, b, fa, fb));
        a = b;
        fa = fb;
    }
    let coarse: T = panels.iter().fold(T::zero(), |s, p| s + p.whole);
    if !coarse.is_finite() {
        return Err(Error::domain("integrate", "integrand is not finite on the interval"));
    }
    let eps = spec.abs_tol.max(spec.rel_tol * coarse.abs());
    let per_panel = eps / T::from_usize_lossy(n);
    let mut total = T::zero();
    for p in &panels {
        total = total + refine(&f, p, per_panel, spec.max_depth)?;
    }
    Ok(total)
}

fn refine<T: Scalar, F: Fn(T) -> T>(f: &F, p: &Panel<T>, eps: T, depth: usize) -> Result<T> {
    let left = panel(f, p.a, p.m, p.fa, p.fm);
    let right = panel(f, p.m, p.b, p.fm, p.fb);
    let delta = left.whole + right.whole - p.whole;
    // Below this width the estimate cannot improve in the working precision.
    let floor = T::lit(16.0) * T::epsilon() * (p.whole.abs() + left.whole.abs() + right.whole.abs());
    if !delta.is_finite() {
        return Err(Error::domain("integrate", "integrand is not finite on the interval"));
    }
    if delta.abs() <= T::lit(15.0) * eps || delta.abs() <= floor {
        return Ok(left.whole + right.whole + delta / T::lit(15.0));
    }
    if depth == 0 {
        return Err(Error::ToleranceNotMet { lo: p.a.as_f64(), hi: p.b.as_f64(), depth: 0 });
    }
    let half = eps * T::lit(0.5);
    Ok(refine(f, &left, half, depth - 1)? + refine(f, &right, half, depth - 1)?)
}

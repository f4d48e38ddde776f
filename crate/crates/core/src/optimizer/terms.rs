use crate::analytic::{oms_share_factor, sharing_factor, Evaluator, Population};
use crate::Result;
use crate::Scalar;

/// Bandwidth-normalized throughputs at service area `x`:
/// `A` mMS per unit macro band, `B` dedicated owner rate over `M`,
/// `C` shared owner rate over `M`, `D` offloaded user rate over `K`.
///
/// `B`, `C` and `D` include the thinning factor. `D` is infinite when `K = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbcdTerms<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Scalar> AbcdTerms<T> {
    /// Open access `(t_m, t_fo)`.
    pub fn open(&self) -> (T, T) {
        (self.a, self.c.min(self.d))
    }

    /// Hybrid access `(t_m, t_fo)` at the optimal dedication.
    pub fn hybrid(&self) -> (T, T) {
        (self.a, self.hybrid_fo())
    }

    fn hybrid_fo(&self) -> T {
        if self.d.is_infinite() {
            self.b
        } else if self.d >= self.c {
            self.b * self.d / (self.b - self.c + self.d)
        } else {
            self.d
        }
    }

    /// Optimal owner dedication `beta*`.
    pub fn beta(&self) -> T {
        if self.d.is_infinite() {
            T::one()
        } else if self.d >= self.c {
            ((self.d - self.c) / (self.b - self.c + self.d)).max(T::zero()).min(T::one())
        } else {
            T::zero()
        }
    }

    /// Mean mMS throughput per Hz of total band after the optimal split.
    pub fn objective(t_m: T, t_fo: T) -> T {
        if t_m + t_fo == T::zero() {
            return T::zero();
        }
        t_m * t_fo / (t_m + t_fo)
    }
}

/// `rho* = t_m / (t_fo + t_m)`.
pub fn rho_from_terms<T: Scalar>(t_m: T, t_fo: T) -> T {
    t_m / (t_fo + t_m)
}

/// Evaluates the normalized terms on top of an [`Evaluator`].
pub struct TermModel<'a, T> {
    pub eval: &'a Evaluator<T>,
}

impl<'a, T: Scalar> TermModel<'a, T> {
    pub fn new(eval: &'a Evaluator<T>) -> Self {
        TermModel { eval }
    }

    fn parts(&self, x: T) -> Result<(Population<T>, T, T, T)> {
        let cfg = self.eval.cfg();
        let pop = self.eval.population(x)?;
        let theta = self.eval.theta();
        let a = self.eval.se_mms() * sharing_factor(pop.mms);
        let b = theta * self.eval.se_fms() / cfg.benefit_ratio;
        let c = b * sharing_factor(pop.oms);
        Ok((pop, a, b, c))
    }

    /// `A`, `B`, `C` only; cheap because no offloaded-user integral is needed.
    pub fn abc(&self, x: T) -> Result<(T, T, T)> {
        let (_, a, b, c) = self.parts(x)?;
        Ok((a, b, c))
    }

    pub fn terms(&self, x: T) -> Result<AbcdTerms<T>> {
        let (pop, a, b, c) = self.parts(x)?;
        let k = self.eval.cfg().oms_ratio;
        let d = if k == T::zero() {
            T::infinity()
        } else {
            self.eval.theta() * self.eval.se_oms(x)? * oms_share_factor(pop.oms) / k
        };
        Ok(AbcdTerms { a, b, c, d })
    }

    /// Reduced objective in the subscriber-limited regime, `1/A + 1/C`.
    pub fn reduced_objective(&self, x: T) -> Result<T> {
        let (a, _, c) = self.abc(x)?;
        Ok(a.recip() + c.recip())
    }
}

/// Normalized `(t_m, t_fo)` at `x`; hybrid mode uses the optimal dedication.
pub fn normalized_terms<T: Scalar>(x: T, eval: &Evaluator<T>, hybrid: bool) -> Result<(T, T)> {
    let t = TermModel::new(eval).terms(x)?;
    Ok(if hybrid { t.hybrid() } else { t.open() })
}

/// Optimal bandwidth split at `x`.
pub fn optimal_rho<T: Scalar>(x: T, eval: &Evaluator<T>, hybrid: bool) -> Result<T> {
    let (t_m, t_fo) = normalized_terms(x, eval, hybrid)?;
    Ok(rho_from_terms(t_m, t_fo))
}

/// Optimal owner dedication at `x` (hybrid access).
pub fn optimal_beta<T: Scalar>(x: T, eval: &Evaluator<T>) -> Result<T> {
    Ok(TermModel::new(eval).terms(x)?.beta())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::service_area;
    use crate::model::NetworkConfig;

    fn setup() -> (Evaluator<f64>, f64) {
        let cfg = NetworkConfig::defaults();
        let x = service_area(40.0, cfg.fbs_density());
        (Evaluator::new(&cfg, 1.0).unwrap(), x)
    }

    #[test]
    fn terms_match_throughput_ratios() {
        let (e, x) = setup();
        let t = TermModel::new(&e).terms(x).unwrap();
        let w = e.cfg().bandwidth;
        let rho = 0.37;
        let tm = e.tput_mms(rho, x).unwrap() / (w * (1.0 - rho));
        let tf = e.tput_fms(rho, x, 0.0).unwrap() / (10.0 * w * rho);
        let to = e.tput_oms(rho, x, 0.0).unwrap() / (1.0 * w * rho);
        assert!((t.a - tm).abs() / tm < 1e-12);
        assert!((t.c - tf).abs() / tf < 1e-12);
        assert!((t.d - to).abs() / to < 1e-12);
        let full = e.tput_fms(rho, x, 1.0).unwrap() / (10.0 * w * rho);
        assert!((t.b - full).abs() / full < 1e-12);
        assert!(t.a > 0.0 && t.b > 0.0 && t.c > 0.0 && t.d > 0.0);
        let (_, fo) = t.open();
        assert!((fo - t.c.min(t.d)).abs() <= 1e-12 * fo);
    }

    #[test]
    fn symmetric_terms_split_evenly() {
        assert_eq!(rho_from_terms(2.0, 2.0), 0.5);
    }

    #[test]
    fn hybrid_balance_identity() {
        let t = AbcdTerms { a: 1.0_f64, b: 0.9, c: 0.5, d: 0.8 };
        let beta = t.beta();
        let f = beta * t.b + (1.0 - beta) * t.c;
        let o = (1.0 - beta) * t.d;
        assert!((f - o).abs() / f < 1e-12);
        assert!((t.hybrid().1 - f).abs() / f < 1e-12);
        let low = AbcdTerms { d: 0.3, ..t };
        assert_eq!(low.beta(), 0.0);
        assert_eq!(low.hybrid().1, 0.3);
        let free = AbcdTerms { d: f64::INFINITY, ..t };
        assert_eq!(free.beta(), 1.0);
        assert_eq!(free.hybrid().1, 0.9);
    }

    #[test]
    fn rho_against_dense_grid() {
        let (e, x) = setup();
        let (tm, tfo) = normalized_terms(x, &e, false).unwrap();
        let rho = optimal_rho(x, &e, false).unwrap();
        let n = 100_000;
        let mut best = (0.0, f64::NEG_INFINITY);
        for i in 0..=n {
            let r = i as f64 / n as f64;
            if r * tfo >= (1.0 - r) * tm && (1.0 - r) * tm > best.1 {
                best = (r, (1.0 - r) * tm);
            }
        }
        assert!((rho - best.0).abs() <= 1.0 / n as f64);
    }

    #[test]
    fn beta_against_dense_grid() {
        let (e, x) = setup();
        let t = TermModel::new(&e).terms(x).unwrap();
        let beta = optimal_beta(x, &e).unwrap();
        let n = 100_000;
        let mut best = (0.0, f64::NEG_INFINITY);
        for i in 0..=n {
            let b = i as f64 / n as f64;
            let v = (b * t.b + (1.0 - b) * t.c).min((1.0 - b) * t.d);
            if v > best.1 {
                best = (b, v);
            }
        }
        assert!((beta - best.0).abs() <= 1.0 / n as f64, "{beta} vs {}", best.0);
    }
}

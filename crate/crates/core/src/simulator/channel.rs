use rand::Rng;
use rand_distr::{Distribution, Exp1};

use crate::model::{LinkClass, NetworkConfig, RateTable};

/// Path loss, powers and rate set of a configuration in a form cheap to
/// evaluate per link.
#[derive(Debug, Clone)]
pub struct Channel {
    pub macro_power: f64,
    pub femto_power: f64,
    pub noise: f64,
    rates: RateTable<f64>,
    /// `(1 / Z^alpha, alpha / 2)` per class.
    loss: [(f64, f64); 5],
}

fn slot(class: LinkClass) -> usize {
    LinkClass::ALL.iter().position(|&c| c == class).unwrap_or(0)
}

/// Class of a femtocell link towards a receiver whose home is `home`.
pub fn femto_class(home: Option<usize>, fbs: usize) -> LinkClass {
    match home {
        Some(h) if h == fbs => LinkClass::Indoor,
        Some(_) => LinkClass::IndoorToIndoor,
        None => LinkClass::IndoorToOutdoor,
    }
}

/// Class of the macro link towards a receiver whose home is `home`.
pub fn macro_class(home: Option<usize>) -> LinkClass {
    if home.is_some() {
        LinkClass::OutdoorToIndoor
    } else {
        LinkClass::Outdoor
    }
}

/// Distances below this (m^2) are clamped to keep gains finite.
const MIN_DIST_SQ: f64 = 1e-6;

impl Channel {
    pub fn new(cfg: &NetworkConfig<f64>) -> Self {
        let loss = LinkClass::ALL.map(|c| {
            let e = cfg.pathloss.get(c);
            (e.fixed_loss_linear().recip(), 0.5 * e.exponent)
        });
        Channel {
            macro_power: cfg.macro_power_density,
            femto_power: cfg.femto_power_density,
            noise: cfg.noise_density,
            rates: cfg.rates.clone(),
            loss,
        }
    }

    pub fn rates(&self) -> &RateTable<f64> {
        &self.rates
    }

    /// Mean channel gain at squared distance `d_sq`.
    pub fn gain(&self, class: LinkClass, d_sq: f64) -> f64 {
        let (inv_fixed, half_exp) = self.loss[slot(class)];
        let d_sq = d_sq.max(MIN_DIST_SQ);
        let spread = if half_exp == 2.0 {
            d_sq * d_sq
        } else if half_exp == 1.5 {
            d_sq * d_sq.sqrt()
        } else {
            d_sq.powf(half_exp)
        };
        inv_fixed / spread
    }

    /// Mean received power density from a femtocell.
    pub fn femto_rx(&self, home: Option<usize>, fbs: usize, d_sq: f64) -> f64 {
        self.femto_power * self.gain(femto_class(home, fbs), d_sq)
    }

    /// Mean received power density from the macro base station.
    pub fn macro_rx(&self, home: Option<usize>, d_sq: f64) -> f64 {
        self.macro_power * self.gain(macro_class(home), d_sq)
    }
}

/// Interference seen by one receiver, as mean powers relative to the desired
/// mean power.
#[derive(Debug, Clone, Default)]
pub struct Interference {
    /// Femtocell interferers, each active with probability `activity`.
    pub femto: Vec<f64>,
    pub activity: f64,
    /// Always-on interferers (the macro base station in co-channel schemes).
    pub steady: Vec<f64>,
    /// Noise over desired mean power.
    pub noise: f64,
}

impl Interference {
    pub fn clear(&mut self) {
        self.femto.clear();
        self.steady.clear();
    }
}

/// Fading-averaged outcome of one user.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkOutcome {
    /// Expected spectral efficiency (bit/s/Hz).
    pub se: f64,
    /// Probability that the SINR falls below the lowest threshold.
    pub outage: f64,
}

/// Exact Rayleigh average: with unit-mean exponential fading on every link,
/// `P[SINR >= g] = e^{-g n} prod_j (1 - a_j + a_j / (1 + g q_j))`.
pub fn exact_outcome(rates: &RateTable<f64>, inter: &Interference) -> LinkOutcome {
    let thresholds = rates.thresholds();
    let a = inter.activity;
    let mut ccdf = [0.0_f64; 16];
    let mut heap;
    let out: &mut [f64] = if thresholds.len() <= ccdf.len() {
        &mut ccdf[..thresholds.len()]
    } else {
        heap = vec![0.0; thresholds.len()];
        &mut heap
    };
    for (l, &g) in thresholds.iter().enumerate() {
        let mut denom = 1.0;
        for &q in &inter.steady {
            denom *= 1.0 + g * q;
        }
        let mut p = (-g * inter.noise).exp();
        if a == 1.0 {
            for &q in &inter.femto {
                denom *= 1.0 + g * q;
            }
        } else if a > 0.0 {
            for &q in &inter.femto {
                p *= 1.0 - a + a / (1.0 + g * q);
            }
        }
        out[l] = p / denom;
    }
    LinkOutcome { se: rates.expected_efficiency(out), outage: 1.0 - out[0] }
}

/// One SINR draw with exponential fading and Bernoulli activity.
pub fn sample_sinr<R: Rng>(rng: &mut R, inter: &Interference) -> f64 {
    let h: f64 = Exp1.sample(rng);
    let mut i = inter.noise;
    for &q in &inter.steady {
        let g: f64 = Exp1.sample(rng);
        i += q * g;
    }
    for &q in &inter.femto {
        if inter.activity >= 1.0 || rng.random::<f64>() < inter.activity {
            let g: f64 = Exp1.sample(rng);
            i += q * g;
        }
    }
    h / i
}

/// Sample average over `samples` fading realizations.
pub fn sampled_outcome<R: Rng>(
    rng: &mut R,
    rates: &RateTable<f64>,
    inter: &Interference,
    samples: usize,
) -> LinkOutcome {
    let g1 = rates.outage_threshold();
    let (mut se, mut out) = (0.0, 0.0);
    for _ in 0..samples {
        let s = sample_sinr(rng, inter);
        se += rates.efficiency_at(s);
        out += (s < g1) as u8 as f64;
    }
    let n = samples.max(1) as f64;
    LinkOutcome { se: se / n, outage: out / n }
}

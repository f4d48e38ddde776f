use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use super::scheme::SimSettings;
use crate::error::Error;
use crate::model::NetworkConfig;
use crate::Result;

/// Independent random streams of one drop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Stream {
    Layout = 0,
    Association = 1,
    Fading = 2,
}

/// Generator for `stream` of drop `index`; a pure function of its inputs.
pub(crate) fn drop_rng(base_seed: u64, index: u64, stream: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(base_seed ^ (stream as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    rng.set_stream(index);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dist_sq(self, o: Point) -> f64 {
        let (dx, dy) = (self.x - o.x, self.y - o.y);
        dx * dx + dy * dy
    }

    pub fn dist(self, o: Point) -> f64 {
        self.dist_sq(o).sqrt()
    }
}

fn uniform_in_disk<R: Rng>(rng: &mut R, center: Point, radius: f64) -> Point {
    let r = radius * rng.random::<f64>().sqrt();
    let phi = std::f64::consts::TAU * rng.random::<f64>();
    Point::new(center.x + r * phi.cos(), center.y + r * phi.sin())
}

fn poisson<R: Rng>(rng: &mut R, mean: f64) -> usize {
    if mean <= 0.0 {
        return 0;
    }
    Poisson::new(mean).map(|p| p.sample(rng) as usize).unwrap_or(0)
}

/// A macrocell user other than a femtocell owner.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct User {
    pub pos: Point,
    /// Femtocell whose home disk contains the user.
    pub home: Option<usize>,
}

/// One random deployment. The macro base station sits at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct Drop {
    /// Femtocells in the interference disk, pairwise at least
    /// `min_spacing D_h` apart.
    pub fbs: Vec<Point>,
    /// Owner of `fbs[i]`, uniform in its home disk.
    pub fms: Vec<Point>,
    /// Macrocell users in the disk of radius `D_m + user_margin`.
    pub users: Vec<User>,
    pub macro_radius: f64,
    pub home_radius: f64,
    pub base_seed: u64,
    pub index: u64,
}

impl Drop {
    /// The femtocell lies inside the macrocell and is counted in statistics.
    pub fn is_tagged(&self, fbs: usize) -> bool {
        self.fbs[fbs].norm_sq() <= self.macro_radius * self.macro_radius
    }

    pub fn inside_macro(&self, p: Point) -> bool {
        p.norm_sq() <= self.macro_radius * self.macro_radius
    }

    pub fn tagged_count(&self) -> usize {
        (0..self.fbs.len()).filter(|&i| self.is_tagged(i)).count()
    }

    /// Nearest femtocell and its squared distance.
    pub fn nearest_fbs(&self, p: Point) -> Option<(usize, f64)> {
        self.fbs.iter().enumerate().map(|(i, f)| (i, f.dist_sq(p))).min_by(|a, b| a.1.total_cmp(&b.1))
    }
}

/// Draws drop `index` of the campaign seeded by `base_seed`.
///
/// Femtocells form a Poisson number of points in `interference_radius_factor
/// D_m`; a point closer than `min_spacing D_h` to an accepted one is
/// redrawn. Users follow a Poisson process whose density inside homes is `indoor_factor`
/// times the outdoor density.
pub fn generate_drop(cfg: &NetworkConfig<f64>, settings: &SimSettings, base_seed: u64, index: u64) -> Result<Drop> {
    let mut rng = drop_rng(base_seed, index, Stream::Layout);
    let dm = cfg.macro_radius;
    let dh = cfg.home_radius;
    let origin = Point::default();

    let r_int = settings.interference_radius_factor.max(1.0) * dm;
    let n_fbs = poisson(&mut rng, cfg.fbs_density() * std::f64::consts::PI * r_int * r_int);
    let spacing_sq = (settings.min_spacing.max(0.0) * dh).powi(2);
    let mut fbs: Vec<Point> = Vec::with_capacity(n_fbs);
    for _ in 0..n_fbs {
        let mut placed = false;
        for _ in 0..settings.max_attempts {
            let p = uniform_in_disk(&mut rng, origin, r_int);
            if fbs.iter().all(|q| q.dist_sq(p) >= spacing_sq) {
                fbs.push(p);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::Placement { attempts: settings.max_attempts });
        }
    }
    let fms = fbs.iter().map(|&c| uniform_in_disk(&mut rng, c, dh)).collect();

    let r_u = dm + settings.user_margin.max(0.0);
    let outdoor = cfg.outdoor_user_density();
    let mut positions: Vec<Point> = (0..poisson(&mut rng, outdoor * std::f64::consts::PI * r_u * r_u))
        .map(|_| uniform_in_disk(&mut rng, origin, r_u))
        .collect();
    let extra = (cfg.indoor_factor - 1.0) * outdoor * std::f64::consts::PI * dh * dh;
    if extra > 0.0 {
        for c in &fbs {
            if c.norm() > r_u + dh {
                continue;
            }
            for _ in 0..poisson(&mut rng, extra) {
                let p = uniform_in_disk(&mut rng, *c, dh);
                if p.norm_sq() <= r_u * r_u {
                    positions.push(p);
                }
            }
        }
    }

    let mut drop = Drop {
        fbs,
        fms,
        users: Vec::with_capacity(positions.len()),
        macro_radius: dm,
        home_radius: dh,
        base_seed,
        index,
    };
    let dh_sq = dh * dh;
    drop.users = positions
        .into_iter()
        .map(|pos| User { pos, home: drop.nearest_fbs(pos).filter(|&(_, d2)| d2 < dh_sq).map(|(i, _)| i) })
        .collect();
    Ok(drop)
}

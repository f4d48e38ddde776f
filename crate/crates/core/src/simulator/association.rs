use rand::seq::SliceRandom;

use super::channel::Channel;
use super::drop::{drop_rng, Drop, Stream, User};
use super::scheme::{Scheme, SchemeSpec};
use crate::model::units::db_to_linear;
use crate::model::NetworkConfig;

/// Serving cell of a user.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Server {
    Macro,
    Femto(usize),
    /// Outside the macrocell and not on a femtocell; ignored in statistics.
    Outside,
}

/// Serving cell of every user in a drop. Owners always use their femtocell.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    pub users: Vec<Server>,
    /// Non-owner users per femtocell.
    pub load: Vec<usize>,
}

impl Assignment {
    /// Users inside the macrocell on the macro base station.
    pub fn macro_users(&self, drop: &Drop) -> usize {
        self.users.iter().zip(&drop.users).filter(|(s, u)| **s == Server::Macro && drop.inside_macro(u.pos)).count()
    }
}

/// Candidate femtocells in order of preference; the macro base station
/// follows them.
fn femto_preferences(drop: &Drop, user: &User, spec: &SchemeSpec, ch: &Channel, out: &mut Vec<(usize, f64)>) {
    out.clear();
    let p = user.pos;
    match spec.scheme {
        Scheme::Oa | Scheme::OaThin | Scheme::Ha | Scheme::HaThin => {
            let r_sq = spec.control.service_radius * spec.control.service_radius;
            for (i, f) in drop.fbs.iter().enumerate() {
                let d = f.dist_sq(p);
                if d <= r_sq {
                    // Nearest first.
                    out.push((i, -d));
                }
            }
        }
        Scheme::CoRssi | Scheme::DivRssi | Scheme::CoLb => {
            let bias = if spec.scheme == Scheme::CoLb { db_to_linear(spec.colb_delta_db) } else { 1.0 };
            let rss_m = ch.macro_rx(user.home, p.norm_sq());
            for (i, f) in drop.fbs.iter().enumerate() {
                let rss = ch.femto_rx(user.home, i, f.dist_sq(p));
                if bias * rss > rss_m {
                    out.push((i, rss));
                }
            }
        }
        Scheme::CoCa | Scheme::DivCa => {}
    }
    out.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
}

/// Assigns every user to a cell.
///
/// Open schemes try their femtocell candidates in order (nearest within the
/// service radius, or strongest mean RSS) and fall back to the macro base
/// station. With an admission cap, users are admitted in a random order and
/// skip full femtocells; the owner occupies one slot.
pub fn associate(drop: &Drop, spec: &SchemeSpec, cfg: &NetworkConfig<f64>) -> Assignment {
    let ch = Channel::new(cfg);
    let mut users = vec![Server::Outside; drop.users.len()];
    let mut load = vec![0usize; drop.fbs.len()];
    let mut order: Vec<usize> = (0..drop.users.len()).collect();
    if spec.n_max.is_some() {
        order.shuffle(&mut drop_rng(drop.base_seed, drop.index, Stream::Association));
    }
    let cap = spec.n_max.map(|n| n.saturating_sub(1));
    let mut prefs = Vec::new();
    for &u in &order {
        let user = &drop.users[u];
        femto_preferences(drop, user, spec, &ch, &mut prefs);
        let chosen = prefs.iter().map(|&(i, _)| i).find(|&i| cap.is_none_or(|c| load[i] < c));
        users[u] = match chosen {
            Some(i) => {
                load[i] += 1;
                Server::Femto(i)
            }
            None if drop.inside_macro(user.pos) => Server::Macro,
            None => Server::Outside,
        };
    }
    Assignment { users, load }
}

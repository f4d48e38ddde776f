use super::association::{Assignment, Server};
use super::channel::{exact_outcome, sampled_outcome, Channel, Interference, LinkOutcome};
use super::drop::{drop_rng, Drop, Point, Stream};
use super::scheme::SchemeSpec;
use crate::model::NetworkConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UserClass {
    Mms,
    Fms,
    Oms,
}

/// Fading-averaged result of one user counted in the statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UserResult {
    pub class: UserClass,
    pub se: f64,
    pub outage: f64,
    /// Round-robin share of the cell's resources: `1/n_m` on the macrocell,
    /// `1/(n + 1)` on a femtocell with `n` foreign users.
    pub share: f64,
}

impl UserResult {
    /// Throughput in bit/s under the band split and dedication of `spec`.
    pub fn throughput(&self, spec: &SchemeSpec, bandwidth: f64) -> f64 {
        let beta = spec.beta();
        match self.class {
            UserClass::Mms => spec.macro_band() * bandwidth * self.se * self.share,
            UserClass::Fms => {
                spec.theta() * spec.femto_band() * bandwidth * self.se * (beta + (1.0 - beta) * self.share)
            }
            UserClass::Oms => spec.theta() * spec.femto_band() * bandwidth * self.se * (1.0 - beta) * self.share,
        }
    }
}

/// Builds the interference seen by a receiver at `pos` served by `server`.
fn interference(
    drop: &Drop,
    spec: &SchemeSpec,
    ch: &Channel,
    pos: Point,
    home: Option<usize>,
    server: Server,
    inter: &mut Interference,
) {
    inter.clear();
    let cochannel = spec.scheme.is_cochannel();
    let desired = match server {
        Server::Femto(i) => ch.femto_rx(home, i, drop.fbs[i].dist_sq(pos)),
        _ => ch.macro_rx(home, pos.norm_sq()),
    };
    inter.noise = ch.noise / desired;
    let femto_tier = matches!(server, Server::Femto(_));
    if femto_tier || cochannel {
        inter.activity = if femto_tier { spec.theta() } else { 1.0 };
        for (j, f) in drop.fbs.iter().enumerate() {
            if server != Server::Femto(j) {
                inter.femto.push(ch.femto_rx(home, j, f.dist_sq(pos)) / desired);
            }
        }
    }
    if femto_tier && cochannel {
        inter.steady.push(ch.macro_rx(home, pos.norm_sq()) / desired);
    }
}

/// Per-user results of one drop: owners of tagged femtocells, foreign users
/// on tagged femtocells and macro users inside the macrocell.
///
/// `fading_samples = 0` averages the Rayleigh fading exactly; otherwise that
/// many fading (and activity) draws are averaged per user.
pub fn evaluate_drop(
    drop: &Drop,
    assignment: &Assignment,
    spec: &SchemeSpec,
    cfg: &NetworkConfig<f64>,
    fading_samples: usize,
) -> Vec<UserResult> {
    let ch = Channel::new(cfg);
    let mut rng = drop_rng(drop.base_seed, drop.index, Stream::Fading);
    let mut inter = Interference::default();
    let mut outcome = |pos: Point, home: Option<usize>, server: Server, inter: &mut Interference| -> LinkOutcome {
        interference(drop, spec, &ch, pos, home, server, inter);
        if fading_samples == 0 {
            exact_outcome(ch.rates(), inter)
        } else {
            sampled_outcome(&mut rng, ch.rates(), inter, fading_samples)
        }
    };

    let n_m = assignment.macro_users(drop);
    let mut out = Vec::new();
    for i in (0..drop.fbs.len()).filter(|&i| drop.is_tagged(i)) {
        let o = outcome(drop.fms[i], Some(i), Server::Femto(i), &mut inter);
        let share = 1.0 / (assignment.load[i] as f64 + 1.0);
        out.push(UserResult { class: UserClass::Fms, se: o.se, outage: o.outage, share });
    }
    for (user, &server) in drop.users.iter().zip(&assignment.users) {
        let class = match server {
            Server::Femto(i) if drop.is_tagged(i) => UserClass::Oms,
            Server::Macro => UserClass::Mms,
            _ => continue,
        };
        let o = outcome(user.pos, user.home, server, &mut inter);
        let share = match server {
            Server::Femto(i) => 1.0 / (assignment.load[i] as f64 + 1.0),
            _ => 1.0 / n_m as f64,
        };
        out.push(UserResult { class, se: o.se, outage: o.outage, share });
    }
    out
}

//! Flat TOML configuration shared by the library front ends.
//!
//! One file holds network, operating point and run keys side by side:
//!
//! ```toml
//! fbs_mean = 50.0
//! benefit_ratio = 5.0
//! service_radius = 60.0
//! drops = 10000
//! ```
//!
//! Unknown keys are rejected. Missing keys take their defaults.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use toml::{Table, Value};

use crate::model::{ControlParams, NetworkConfig, NetworkSpec};
use crate::numerics::MinimizeSpec;
use crate::optimizer::{Mode, SolverSpec};
use crate::simulator::{Scheme, SchemeSpec, SimSettings};
use crate::{Error, Result, Scalar};

/// Operating point used by `analyze`, `simulate` and `validate`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ControlSpec {
    pub rho: f64,
    pub service_radius: f64,
    pub beta: f64,
    pub theta: f64,
}

impl Default for ControlSpec {
    fn default() -> Self {
        ControlSpec { rho: 0.5, service_radius: 40.0, beta: 0.0, theta: 1.0 }
    }
}

/// Solver, simulator and reporting settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunSpec {
    /// Optimizer mode: `OA`, `OA-Thin`, `HA` or `HA-Thin`.
    pub mode: String,
    /// Simulated scheme; see [`Scheme`].
    pub scheme: String,
    pub drops: usize,
    pub seed: u64,
    /// Rayleigh samples per link; 0 uses the exact fading average.
    pub fading_samples: usize,
    /// Width of the user ring simulated outside the macrocell (m).
    pub user_margin: f64,
    /// Minimum femtocell spacing in home radii.
    pub min_spacing: f64,
    /// Association bias of `CoLB` (dB).
    pub colb_delta_db: f64,
    /// Femtocell admission cap including the owner; 0 is uncapped.
    pub n_max: usize,
    pub grid_points: usize,
    pub ha_grid_points: usize,
    pub theta_grid: Vec<f64>,
    /// Relative error above which `validate` fails.
    pub validate_threshold: f64,
}

impl Default for RunSpec {
    fn default() -> Self {
        RunSpec {
            mode: "OA".into(),
            scheme: "OA".into(),
            drops: 2000,
            seed: 1,
            fading_samples: 0,
            user_margin: 200.0,
            min_spacing: 2.0,
            colb_delta_db: 0.0,
            n_max: 0,
            grid_points: 512,
            ha_grid_points: 2000,
            theta_grid: crate::optimizer::default_theta_grid(),
            validate_threshold: 0.03,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConfigFile {
    pub network: NetworkSpec,
    pub control: ControlSpec,
    pub run: RunSpec,
}

#[derive(Clone, Copy)]
enum Section {
    Network,
    Control,
    Run,
}

fn keys_of<S: Serialize + Default>() -> Vec<String> {
    Table::try_from(S::default()).map(|t| t.keys().cloned().collect()).unwrap_or_default()
}

fn section_of(key: &str) -> Option<Section> {
    if keys_of::<NetworkSpec>().iter().any(|k| k == key) {
        Some(Section::Network)
    } else if keys_of::<ControlSpec>().iter().any(|k| k == key) {
        Some(Section::Control)
    } else if keys_of::<RunSpec>().iter().any(|k| k == key) {
        Some(Section::Run)
    } else {
        None
    }
}

fn decode<S: DeserializeOwned>(table: Table) -> Result<S> {
    Value::Table(table).try_into().map_err(|e: toml::de::Error| Error::Config(e.to_string()))
}

impl ConfigFile {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let table: Table = text.parse().map_err(|e: toml::de::Error| Error::Config(e.to_string()))?;
        Self::from_table(table)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    fn from_table(table: Table) -> Result<Self> {
        let mut parts = [Table::new(), Table::new(), Table::new()];
        for (key, value) in table {
            let section = section_of(&key).ok_or_else(|| Error::Config(format!("unknown key `{key}`")))?;
            parts[section as usize].insert(key, value);
        }
        let [network, control, run] = parts;
        let cfg = ConfigFile { network: decode(network)?, control: decode(control)?, run: decode(run)? };
        cfg.validate()?;
        Ok(cfg)
    }

    fn to_table(&self) -> Result<Table> {
        let mut out = Table::new();
        for t in [Table::try_from(&self.network), Table::try_from(&self.control), Table::try_from(&self.run)] {
            out.extend(t.map_err(|e| Error::Config(e.to_string()))?);
        }
        Ok(out)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(&self.to_table()?).map_err(|e| Error::Config(e.to_string()))
    }

    /// Applies `key=value` overrides. Values are parsed as TOML and fall back
    /// to bare strings, so `mode=HA` and `mode="HA"` are equivalent.
    pub fn with_overrides<S: AsRef<str>>(&self, overrides: &[S]) -> Result<Self> {
        let mut table = self.to_table()?;
        for item in overrides {
            let (key, raw) = item
                .as_ref()
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("override `{}` is not key=value", item.as_ref())))?;
            let key = key.trim();
            if section_of(key).is_none() {
                return Err(Error::Config(format!("unknown key `{key}`")));
            }
            let value = parse_value(raw.trim());
            let slot = table.get(key);
            let value = match (slot, value) {
                (Some(Value::Float(_)), Value::Integer(i)) => Value::Float(i as f64),
                (_, v) => v,
            };
            table.insert(key.to_string(), value);
        }
        Self::from_table(table)
    }

    pub fn validate(&self) -> Result<()> {
        self.network.validate()?;
        self.mode()?;
        self.scheme()?;
        let r = &self.run;
        if r.drops == 0 {
            return Err(Error::Config("drops must be at least 1".into()));
        }
        if !(r.user_margin >= 0.0 && r.user_margin.is_finite()) {
            return Err(Error::Config("user_margin must be finite and non-negative".into()));
        }
        if !(r.min_spacing >= 0.0 && r.min_spacing.is_finite()) {
            return Err(Error::Config("min_spacing must be finite and non-negative".into()));
        }
        if !(r.colb_delta_db >= 0.0 && r.colb_delta_db.is_finite()) {
            return Err(Error::Config("colb_delta_db must be finite and non-negative".into()));
        }
        if !(r.validate_threshold > 0.0) {
            return Err(Error::Config("validate_threshold must be positive".into()));
        }
        self.solver_spec::<f64>().validate()
    }

    pub fn network_config<T: Scalar>(&self) -> Result<NetworkConfig<T>> {
        NetworkConfig::from_spec(&self.network)
    }

    pub fn control<T: Scalar>(&self) -> ControlParams<T> {
        let c = &self.control;
        ControlParams {
            rho: T::lit(c.rho),
            service_radius: T::lit(c.service_radius),
            beta: T::lit(c.beta),
            theta: T::lit(c.theta),
        }
    }

    pub fn mode(&self) -> Result<Mode> {
        Mode::parse(&self.run.mode).ok_or_else(|| Error::Config(format!("unknown mode `{}`", self.run.mode)))
    }

    pub fn scheme(&self) -> Result<Scheme> {
        Scheme::parse(&self.run.scheme).ok_or_else(|| Error::Config(format!("unknown scheme `{}`", self.run.scheme)))
    }

    pub fn solver_spec<T: Scalar>(&self) -> SolverSpec<T> {
        SolverSpec {
            minimize: MinimizeSpec { grid_points: self.run.grid_points, ..MinimizeSpec::default() },
            ha_grid_points: self.run.ha_grid_points,
            theta: T::lit(self.control.theta),
            theta_grid: self.run.theta_grid.iter().map(|&t| T::lit(t)).collect(),
            ..SolverSpec::default()
        }
    }

    pub fn scheme_spec(&self) -> Result<SchemeSpec> {
        Ok(SchemeSpec {
            scheme: self.scheme()?,
            control: self.control(),
            colb_delta_db: self.run.colb_delta_db,
            n_max: (self.run.n_max > 0).then_some(self.run.n_max),
        })
    }

    pub fn sim_settings(&self) -> SimSettings {
        SimSettings {
            fading_samples: self.run.fading_samples,
            user_margin: self.run.user_margin,
            min_spacing: self.run.min_spacing,
            ..SimSettings::default()
        }
    }
}

fn parse_value(raw: &str) -> Value {
    let wrapped = format!("v = {raw}");
    match wrapped.parse::<Table>() {
        Ok(mut t) => t.remove("v").unwrap_or_else(|| Value::String(raw.to_string())),
        Err(_) => Value::String(raw.to_string()),
    }
}

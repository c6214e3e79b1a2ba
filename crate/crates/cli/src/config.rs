//! Run configuration: JSON file shape, defaults and conversion to engine inputs.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use lifshitz::figures_data::{
    lin_grid, log_grid, A_RANGE_UM, DEFAULT_A_COUNT, DEFAULT_A_MAX_UM, DEFAULT_A_MIN_UM, DEFAULT_OMEGA_COUNT,
    DEFAULT_OMEGA_MAX, DEFAULT_OMEGA_MIN,
};
use lifshitz::units::MICROMETER;
use lifshitz::{MaterialSpec, Model, NumericsConfig, PlateSystem};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    AuNi,
    NiNi,
    AuAu,
    Custom,
}

impl Scenario {
    pub const PRESETS: [Scenario; 3] = [Scenario::AuNi, Scenario::NiNi, Scenario::AuAu];

    pub fn label(self) -> &'static str {
        match self {
            Scenario::AuNi => "au-ni",
            Scenario::NiNi => "ni-ni",
            Scenario::AuAu => "au-au",
            Scenario::Custom => "custom",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModelChoice {
    Drude,
    Plasma,
    Both,
}

impl ModelChoice {
    pub fn models(self) -> Vec<Model> {
        match self {
            ModelChoice::Drude => vec![Model::Drude],
            ModelChoice::Plasma => vec![Model::Plasma],
            ModelChoice::Both => Model::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum, Default)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Lin,
    #[default]
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Separations in µm: an explicit list, or a grid.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Separations {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub list: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spacing: Option<Spacing>,
}

impl Separations {
    pub fn is_unset(&self) -> bool {
        *self == Separations::default()
    }

    pub fn resolve(&self) -> Result<Vec<f64>, CliError> {
        let grid = match &self.list {
            Some(list) => {
                if self.min.is_some() || self.max.is_some() || self.count.is_some() {
                    return Err(CliError::config(
                        "separations",
                        "give either `list` or `min`/`max`/`count`, not both",
                    ));
                }
                list.clone()
            }
            None => {
                let lo = self.min.unwrap_or(DEFAULT_A_MIN_UM);
                let hi = self.max.unwrap_or(DEFAULT_A_MAX_UM);
                let n = self.count.unwrap_or(DEFAULT_A_COUNT);
                let grid = match self.spacing.unwrap_or_default() {
                    Spacing::Lin => lin_grid(lo, hi, n),
                    Spacing::Log => log_grid(lo, hi, n),
                };
                grid.map_err(|e| CliError::config("separations", e))?
            }
        };
        if grid.is_empty() {
            return Err(CliError::config("separations", "grid is empty"));
        }
        for &a in &grid {
            if !(A_RANGE_UM.0..=A_RANGE_UM.1).contains(&a) {
                return Err(CliError::config(
                    "separations",
                    format!("{a} um outside [{}, {}] um", A_RANGE_UM.0, A_RANGE_UM.1),
                ));
            }
        }
        if grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(CliError::config("separations", "separations must be strictly increasing"));
        }
        Ok(grid)
    }
}

/// Log-spaced frequency grid (rad/s) for response tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Frequencies {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Default for Frequencies {
    fn default() -> Self {
        Frequencies {
            min: DEFAULT_OMEGA_MIN,
            max: DEFAULT_OMEGA_MAX,
            count: DEFAULT_OMEGA_COUNT,
        }
    }
}

impl Frequencies {
    pub fn resolve(&self) -> Result<Vec<f64>, CliError> {
        log_grid(self.min, self.max, self.count).map_err(|e| CliError::config("frequencies", e))
    }
}

/// One plate of a custom scenario. Energies in eV, permeability band edges in rad/s.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialConfig {
    pub name: String,
    pub omega_p_ev: f64,
    pub gamma_ev: f64,
    #[serde(default = "one")]
    pub mu_static: f64,
    #[serde(default)]
    pub mu_omega1: Option<f64>,
    #[serde(default)]
    pub mu_omega2: Option<f64>,
    #[serde(default)]
    pub mu_omega_ch: Option<f64>,
}

fn one() -> f64 {
    1.0
}

impl MaterialConfig {
    pub fn to_spec(&self, key: &str) -> Result<MaterialSpec, CliError> {
        let mut spec = MaterialSpec::from_ev(&self.name, self.omega_p_ev, self.gamma_ev, Model::Drude)
            .map_err(|e| CliError::config(key, e))?;
        spec.mu_static = self.mu_static;
        if let Some(w) = self.mu_omega1 {
            spec.mu_omega1 = w;
        }
        if let Some(w) = self.mu_omega2 {
            spec.mu_omega2 = w;
        }
        if let Some(w) = self.mu_omega_ch {
            spec.mu_omega_ch = w;
        }
        spec.validate().map_err(|e| CliError::config(key, e))?;
        Ok(spec)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomMaterials {
    pub plate1: MaterialConfig,
    pub plate2: MaterialConfig,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<Scenario>,
    pub model: ModelChoice,
    /// Kelvin.
    pub temperature: f64,
    pub separations: Separations,
    pub frequencies: Frequencies,
    pub breakdown: bool,
    pub numerics: NumericsConfig,
    pub output: OutputConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub materials: Option<CustomMaterials>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            scenario: None,
            model: ModelChoice::Both,
            temperature: 300.0,
            separations: Separations::default(),
            frequencies: Frequencies::default(),
            breakdown: false,
            numerics: NumericsConfig::default(),
            output: OutputConfig::default(),
            materials: None,
        }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let key = if path == "." { "config".to_string() } else { path };
            CliError::config(key, e.into_inner())
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config("--config", format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn validate_common(&self) -> Result<(), CliError> {
        if !(self.temperature > 0.0 && self.temperature.is_finite()) {
            return Err(CliError::config(
                "temperature",
                format!("must be positive, got {}", self.temperature),
            ));
        }
        self.numerics.validate().map_err(|e| CliError::config("numerics", e))
    }

    /// Plate system for a scenario at 1 µm; sweeps override the separation.
    pub fn system(&self, scenario: Scenario) -> Result<PlateSystem, CliError> {
        let (p1, p2) = match scenario {
            Scenario::AuNi => (MaterialSpec::gold(Model::Drude), MaterialSpec::nickel(Model::Drude)),
            Scenario::NiNi => (MaterialSpec::nickel(Model::Drude), MaterialSpec::nickel(Model::Drude)),
            Scenario::AuAu => (MaterialSpec::gold(Model::Drude), MaterialSpec::gold(Model::Drude)),
            Scenario::Custom => {
                let m = self
                    .materials
                    .as_ref()
                    .ok_or_else(|| CliError::config("materials", "scenario `custom` needs `materials`"))?;
                (m.plate1.to_spec("materials.plate1")?, m.plate2.to_spec("materials.plate2")?)
            }
        };
        PlateSystem::new(p1, p2, MICROMETER, self.temperature).map_err(|e| CliError::config("temperature", e))
    }

    pub fn scenario_or_default(&self) -> Scenario {
        self.scenario.unwrap_or(Scenario::AuNi)
    }
}

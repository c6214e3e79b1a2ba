//! Plate configurations, numerical settings and the force record shared by
//! the Matsubara and real-frequency engines.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::materials::{MaterialSpec, Model};

/// Two semi-infinite plates separated by a vacuum gap.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlateSystem {
    pub plate1: MaterialSpec,
    pub plate2: MaterialSpec,
    /// Separation in meters.
    pub a: f64,
    /// Temperature in K.
    pub temperature: f64,
}

impl PlateSystem {
    pub fn new(plate1: MaterialSpec, plate2: MaterialSpec, a: f64, temperature: f64) -> Result<Self> {
        let sys = PlateSystem {
            plate1,
            plate2,
            a,
            temperature,
        };
        sys.validate()?;
        Ok(sys)
    }

    /// Au-Ni at separation `a` (m) and 300 K.
    pub fn au_ni(a: f64) -> Self {
        Self::preset(MaterialSpec::gold(Model::Drude), MaterialSpec::nickel(Model::Drude), a)
    }

    /// Ni-Ni at separation `a` (m) and 300 K.
    pub fn ni_ni(a: f64) -> Self {
        Self::preset(MaterialSpec::nickel(Model::Drude), MaterialSpec::nickel(Model::Drude), a)
    }

    /// Au-Au at separation `a` (m) and 300 K.
    pub fn au_au(a: f64) -> Self {
        Self::preset(MaterialSpec::gold(Model::Drude), MaterialSpec::gold(Model::Drude), a)
    }

    fn preset(plate1: MaterialSpec, plate2: MaterialSpec, a: f64) -> Self {
        PlateSystem {
            plate1,
            plate2,
            a,
            temperature: 300.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0) || !self.a.is_finite() {
            return Err(Error::domain("separation a (m)", self.a));
        }
        if !(self.temperature > 0.0) || !self.temperature.is_finite() {
            return Err(Error::domain("temperature (K)", self.temperature));
        }
        self.plate1.validate()?;
        self.plate2.validate()
    }

    /// Both plates switched to the given permittivity model.
    pub fn with_model(&self, model: Model) -> Self {
        PlateSystem {
            plate1: self.plate1.with_model(model),
            plate2: self.plate2.with_model(model),
            ..self.clone()
        }
    }

    pub fn with_separation(&self, a: f64) -> Self {
        PlateSystem { a, ..self.clone() }
    }

    /// Same system with every plate's static permeability replaced.
    pub fn with_mu_static(&self, mu_static: f64) -> Self {
        PlateSystem {
            plate1: self.plate1.with_mu_static(mu_static),
            plate2: self.plate2.with_mu_static(mu_static),
            ..self.clone()
        }
    }

    pub fn swapped(&self) -> Self {
        PlateSystem {
            plate1: self.plate2.clone(),
            plate2: self.plate1.clone(),
            ..self.clone()
        }
    }
}

/// Integration rule for the k⊥ integral of each Matsubara term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum InnerQuadrature {
    /// Globally adaptive G7/K15 with the configured tolerance.
    Adaptive,
    /// Composite K15 on a fixed number of equal panels.
    Fixed { panels: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NumericsConfig {
    /// Target relative error of every reported force.
    pub rel_tol: f64,
    /// A Matsubara term is negligible below this fraction of the running sum.
    pub matsubara_tail_tol: f64,
    pub l_max_cap: usize,
    pub inner_quadrature: InnerQuadrature,
    /// Lower cutoff of the dimensionless frequency t in the evanescent integrals.
    pub t_min_cutoff: f64,
    /// Upper limit of the dimensionless frequency t.
    pub t_max: f64,
    /// The t range extends at least to this multiple of the larger plasma
    /// frequency.
    pub plasma_cutoff: f64,
    /// Upper limit of the scaled normal wave vector in the inner integral.
    pub w_max: f64,
    /// Panel budget per adaptive integration.
    pub max_panels: usize,
}

impl Default for NumericsConfig {
    fn default() -> Self {
        NumericsConfig {
            rel_tol: 1e-9,
            matsubara_tail_tol: 1e-10,
            l_max_cap: 20_000,
            inner_quadrature: InnerQuadrature::Adaptive,
            t_min_cutoff: 1e-16,
            t_max: 60.0,
            plasma_cutoff: 10.0,
            w_max: 80.0,
            max_panels: 10_000,
        }
    }
}

impl NumericsConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidNumerics(msg));
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return bad(format!("rel_tol must be in (0, 1), got {:e}", self.rel_tol));
        }
        if !(self.matsubara_tail_tol > 0.0 && self.matsubara_tail_tol <= self.rel_tol) {
            return bad(format!(
                "matsubara_tail_tol must be in (0, rel_tol], got {:e}",
                self.matsubara_tail_tol
            ));
        }
        if self.l_max_cap == 0 {
            return bad("l_max_cap must be positive".into());
        }
        if let InnerQuadrature::Fixed { panels: 0 } = self.inner_quadrature {
            return bad("fixed inner quadrature needs at least one panel".into());
        }
        if !(self.t_min_cutoff > 0.0 && self.t_min_cutoff < self.t_max && self.t_max.is_finite()) {
            return bad(format!(
                "need 0 < t_min_cutoff < t_max, got {:e}, {:e}",
                self.t_min_cutoff, self.t_max
            ));
        }
        if !(self.plasma_cutoff >= 0.0 && self.plasma_cutoff.is_finite()) {
            return bad(format!("plasma_cutoff must be non-negative, got {:e}", self.plasma_cutoff));
        }
        if !(self.w_max > 0.0 && self.w_max.is_finite()) {
            return bad(format!("w_max must be positive, got {:e}", self.w_max));
        }
        if self.max_panels < 2 {
            return bad("max_panels must be at least 2".into());
        }
        Ok(())
    }
}

/// Signed pressures (Pa, negative = attraction) and their ratios to the
/// high-temperature Drude reference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForceBreakdown {
    /// Separation in meters.
    pub a: f64,
    pub temperature: f64,
    pub model: Model,
    pub f_total: f64,
    pub f_tm: f64,
    pub f_te: f64,
    pub f_tm_evan: Option<f64>,
    pub f_tm_prop: Option<f64>,
    pub f_te_evan: Option<f64>,
    pub f_te_prop: Option<f64>,
    pub f_ref: f64,
    /// Error estimates (Pa) of the Matsubara sums: quadrature plus truncation.
    pub f_tm_error: f64,
    pub f_te_error: f64,
    /// Error estimates of the evanescent fractions, when computed.
    pub f_tm_evan_error: Option<f64>,
    pub f_te_evan_error: Option<f64>,
}

/// Every force of a breakdown divided by its reference pressure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ratios {
    pub total: f64,
    pub tm: f64,
    pub te: f64,
    pub tm_evan: Option<f64>,
    pub tm_prop: Option<f64>,
    pub te_evan: Option<f64>,
    pub te_prop: Option<f64>,
}

impl ForceBreakdown {
    pub fn ratios(&self) -> Ratios {
        let r = |f: f64| f / self.f_ref;
        Ratios {
            total: r(self.f_total),
            tm: r(self.f_tm),
            te: r(self.f_te),
            tm_evan: self.f_tm_evan.map(r),
            tm_prop: self.f_tm_prop.map(r),
            te_evan: self.f_te_evan.map(r),
            te_prop: self.f_te_prop.map(r),
        }
    }

    pub fn has_breakdown(&self) -> bool {
        self.f_tm_evan.is_some() && self.f_te_evan.is_some()
    }
}

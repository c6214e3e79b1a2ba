//! Sweep tables behind the force-ratio and material-response figures.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::materials::{eps_real, mu_real, MaterialSpec, Model};
use crate::matsubara::force_total;
use crate::realfreq::force_breakdown;
use crate::system::{ForceBreakdown, NumericsConfig, PlateSystem};
use crate::units::{PhysicalConstants, MICROMETER};

pub const DEFAULT_A_MIN_UM: f64 = 0.5;
pub const DEFAULT_A_MAX_UM: f64 = 6.0;
pub const DEFAULT_A_COUNT: usize = 23;

pub const DEFAULT_OMEGA_MIN: f64 = 1e3;
pub const DEFAULT_OMEGA_MAX: f64 = 1e16;
pub const DEFAULT_OMEGA_COUNT: usize = 400;

/// Accepted separation range for sweeps, µm.
pub const A_RANGE_UM: (f64, f64) = (0.1, 100.0);

pub const FORCE_COLUMNS: [&str; 17] = [
    "a_um",
    "model",
    "F_total_Pa",
    "F_TM_Pa",
    "F_TE_Pa",
    "F_TM_evan_Pa",
    "F_TM_prop_Pa",
    "F_TE_evan_Pa",
    "F_TE_prop_Pa",
    "F_ref_Pa",
    "ratio_total",
    "ratio_TM",
    "ratio_TE",
    "ratio_TM_evan",
    "ratio_TM_prop",
    "ratio_TE_evan",
    "ratio_TE_prop",
];

pub const RESPONSE_COLUMNS: [&str; 6] = [
    "omega_rad_s",
    "abs_re_eps_drude",
    "im_eps_drude",
    "abs_eps_plasma",
    "re_mu",
    "im_mu",
];

/// `n` log-spaced points from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    check_grid_bounds(lo, hi, n)?;
    if lo <= 0.0 {
        return Err(Error::domain("log grid lower bound", lo));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    let (l0, l1) = (lo.ln(), hi.ln());
    Ok((0..n)
        .map(|i| match i {
            0 => lo,
            i if i == n - 1 => hi,
            i => (l0 + (l1 - l0) * i as f64 / (n - 1) as f64).exp(),
        })
        .collect())
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn lin_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    check_grid_bounds(lo, hi, n)?;
    if n == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..n)
        .map(|i| match i {
            0 => lo,
            i if i == n - 1 => hi,
            i => lo + (hi - lo) * i as f64 / (n - 1) as f64,
        })
        .collect())
}

fn check_grid_bounds(lo: f64, hi: f64, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("grid point count", 0.0));
    }
    if !lo.is_finite() || !hi.is_finite() || hi < lo || (n > 1 && hi == lo) {
        return Err(Error::domain("grid upper bound", hi));
    }
    Ok(())
}

pub fn default_separation_grid_um() -> Vec<f64> {
    log_grid(DEFAULT_A_MIN_UM, DEFAULT_A_MAX_UM, DEFAULT_A_COUNT).expect("default grid is valid")
}

pub fn default_frequency_grid() -> Vec<f64> {
    log_grid(DEFAULT_OMEGA_MIN, DEFAULT_OMEGA_MAX, DEFAULT_OMEGA_COUNT).expect("default grid is valid")
}

/// What produced a table; enough to recompute it bit for bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepMetadata {
    pub scenario: String,
    pub temperature: f64,
    pub numerics: NumericsConfig,
    pub constants_version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForceRow {
    pub a_um: f64,
    pub force: ForceBreakdown,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub metadata: SweepMetadata,
    pub breakdown: bool,
    pub rows: Vec<ForceRow>,
}

impl SweepTable {
    /// Appends another sweep over the same system, e.g. the second model.
    pub fn extend(&mut self, other: SweepTable) {
        self.breakdown |= other.breakdown;
        self.rows.extend(other.rows);
    }

    pub fn to_csv(&self) -> String {
        let mut out = FORCE_COLUMNS.join(",");
        out.push('\n');
        for row in &self.rows {
            let f = &row.force;
            let r = f.ratios();
            let cells = [
                num(row.a_um),
                f.model.as_str().to_string(),
                num(f.f_total),
                num(f.f_tm),
                num(f.f_te),
                opt(f.f_tm_evan),
                opt(f.f_tm_prop),
                opt(f.f_te_evan),
                opt(f.f_te_prop),
                num(f.f_ref),
                num(r.total),
                num(r.tm),
                num(r.te),
                opt(r.tm_evan),
                opt(r.tm_prop),
                opt(r.te_evan),
                opt(r.te_prop),
            ];
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResponseRow {
    pub omega: f64,
    pub abs_re_eps_drude: f64,
    pub im_eps_drude: f64,
    pub abs_eps_plasma: f64,
    pub re_mu: f64,
    pub im_mu: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResponseTable {
    pub material: String,
    pub constants_version: String,
    pub rows: Vec<ResponseRow>,
}

impl ResponseTable {
    pub fn to_csv(&self) -> String {
        let mut out = RESPONSE_COLUMNS.join(",");
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                num(r.omega),
                num(r.abs_re_eps_drude),
                num(r.im_eps_drude),
                num(r.abs_eps_plasma),
                num(r.re_mu),
                num(r.im_mu)
            );
        }
        out
    }
}

/// Shortest round-trip decimal; exponent form outside [1e-5, 1e16).
pub fn num(x: f64) -> String {
    let m = x.abs();
    if x == 0.0 || (1e-5..1e16).contains(&m) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn check_separation_grid(a_grid_um: &[f64]) -> Result<()> {
    if a_grid_um.is_empty() {
        return Err(Error::domain("separation grid length", 0.0));
    }
    for &a in a_grid_um {
        if !(A_RANGE_UM.0..=A_RANGE_UM.1).contains(&a) {
            return Err(Error::domain("separation (um)", a));
        }
    }
    if let Some(w) = a_grid_um.windows(2).find(|w| w[1] <= w[0]) {
        return Err(Error::domain("separation grid (not increasing)", w[1]));
    }
    Ok(())
}

/// Forces at each separation (µm) for `template` with its plates switched to `model`.
///
/// With `breakdown` the evanescent and propagating fractions are filled in.
/// Rows are computed in parallel and returned in grid order.
pub fn sweep_forces(
    template: &PlateSystem,
    model: Model,
    a_grid_um: &[f64],
    cfg: &NumericsConfig,
    breakdown: bool,
) -> Result<SweepTable> {
    check_separation_grid(a_grid_um)?;
    template.validate()?;
    cfg.validate()?;
    let rows = a_grid_um
        .par_iter()
        .map(|&a_um| {
            let sys = template.with_separation(a_um * MICROMETER);
            let force = if breakdown {
                force_breakdown(&sys, model, cfg)?
            } else {
                force_total(&sys, model, cfg)?
            };
            Ok(ForceRow { a_um, force })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable {
        metadata: SweepMetadata {
            scenario: format!(
                "{}{}-{}{}",
                template.plate1.name,
                template.plate2.name,
                model.as_str(),
                if breakdown { "-breakdown" } else { "" }
            ),
            temperature: template.temperature,
            numerics: cfg.clone(),
            constants_version: PhysicalConstants::VERSION.to_string(),
        },
        breakdown,
        rows,
    })
}

/// Permittivity (both models) and permeability of `spec` over a positive, increasing grid.
pub fn sweep_material_response(spec: &MaterialSpec, omega_grid: &[f64]) -> Result<ResponseTable> {
    spec.validate()?;
    if omega_grid.is_empty() {
        return Err(Error::domain("frequency grid length", 0.0));
    }
    if let Some(w) = omega_grid.windows(2).find(|w| w[1] <= w[0]) {
        return Err(Error::domain("frequency grid (not increasing)", w[1]));
    }
    let drude = spec.with_model(Model::Drude);
    let plasma = spec.with_model(Model::Plasma);
    let rows = omega_grid
        .iter()
        .map(|&omega| {
            let ed = eps_real(&drude, omega)?;
            let ep = eps_real(&plasma, omega)?;
            let mu = mu_real(spec, omega);
            Ok(ResponseRow {
                omega,
                abs_re_eps_drude: ed.re.abs(),
                im_eps_drude: ed.im,
                abs_eps_plasma: ep.re.abs(),
                re_mu: mu.re,
                im_mu: mu.im,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ResponseTable {
        material: spec.name.clone(),
        constants_version: PhysicalConstants::VERSION.to_string(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_hit_endpoints() {
        let g = default_separation_grid_um();
        assert_eq!(g.len(), 23);
        assert_eq!(g[0], 0.5);
        assert_eq!(g[22], 6.0);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        let f = default_frequency_grid();
        assert_eq!(f.len(), 400);
        assert_eq!((f[0], f[399]), (1e3, 1e16));
        assert_eq!(lin_grid(1.0, 2.0, 3).unwrap(), vec![1.0, 1.5, 2.0]);
        assert_eq!(log_grid(1.0, 1.0, 1).unwrap(), vec![1.0]);
        assert!(log_grid(1.0, 2.0, 0).is_err());
        assert!(log_grid(0.0, 2.0, 3).is_err());
        assert!(lin_grid(2.0, 1.0, 3).is_err());
    }

    #[test]
    fn number_format_round_trips() {
        for x in [0.0, 1.5, -3.25e-4, 1.2345678901234567e-9, 6.02e23, 0.1 + 0.2] {
            let s = num(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
            assert!(!s.contains(' '));
        }
        assert_eq!(num(0.5), "0.5");
        assert_eq!(num(1e-7), "1e-7");
    }

    #[test]
    fn separation_grid_checks() {
        let cfg = NumericsConfig::default();
        let sys = PlateSystem::au_ni(1e-6);
        assert!(sweep_forces(&sys, Model::Drude, &[], &cfg, false).is_err());
        assert!(sweep_forces(&sys, Model::Drude, &[2.0, 1.0], &cfg, false).is_err());
        assert!(sweep_forces(&sys, Model::Drude, &[0.05], &cfg, false).is_err());
    }

    #[test]
    fn single_point_sweep_has_one_row() {
        let cfg = NumericsConfig::default();
        let t = sweep_forces(&PlateSystem::au_ni(1e-6), Model::Plasma, &[1.0], &cfg, false).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.metadata.scenario, "AuNi-plasma");
        let csv = t.to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], FORCE_COLUMNS.join(","));
        let cells: Vec<_> = lines[1].split(',').collect();
        assert_eq!(cells.len(), 17);
        assert_eq!(cells[0], "1");
        assert_eq!(cells[1], "plasma");
        assert!(cells[5..9].iter().all(|c| c.is_empty()));
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn response_columns_follow_models() {
        let ni = MaterialSpec::nickel(Model::Drude);
        let au = MaterialSpec::gold(Model::Drude);
        let grid = [1e4, 1e11, 1e14];
        let tn = sweep_material_response(&ni, &grid).unwrap();
        let ta = sweep_material_response(&au, &grid).unwrap();
        assert_eq!((tn.rows[0].re_mu, tn.rows[0].im_mu), (110.0, 0.0));
        assert_eq!((tn.rows[1].re_mu, tn.rows[1].im_mu), (1.0, 0.0));
        for (a, n) in ta.rows.iter().zip(&tn.rows) {
            assert!(a.abs_re_eps_drude > n.abs_re_eps_drude);
            assert!(a.abs_eps_plasma > n.abs_eps_plasma);
            assert!(n.im_eps_drude > 0.0);
        }
        assert_eq!(tn.to_csv().lines().count(), 4);
        assert!(sweep_material_response(&ni, &[2.0, 1.0]).is_err());
    }
}

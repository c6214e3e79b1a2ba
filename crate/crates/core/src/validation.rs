//! Oracle suite: closed-form limits and internal-consistency checks run
//! against the engines.
//!
//! Oracle values are computed from the constants passed in, so a perturbed
//! constant set must make the limit checks fail.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::materials::{MaterialSpec, Model};
use crate::matsubara::force_total;
use crate::realfreq::{force_breakdown, force_evanescent, NULL_GRID_UM, PLASMA_NULL_BOUND};
use crate::reference_limits::{classical_limit, polylog3, ZETA3};
use crate::reflection::Polarization;
use crate::system::{ForceBreakdown, NumericsConfig, PlateSystem};
use crate::units::{PhysicalConstants, MICROMETER};

/// Separation at which only the l = 0 term matters.
pub const CLASSICAL_A_UM: f64 = 30.0;
pub const MU_TM_BOUND: f64 = 1e-3;
pub const MU_TE_EVAN_BOUND: f64 = 1e-3;
pub const MU_TE_PROP_MIN_CHANGE: f64 = 0.05;
pub const IDEAL_METAL_BOUND: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    PlasmaNull,
    ClassicalLimit,
    IdealMetal,
    MuIndependence,
    Convergence,
}

impl CheckKind {
    pub const ALL: [CheckKind; 5] = [
        CheckKind::PlasmaNull,
        CheckKind::ClassicalLimit,
        CheckKind::IdealMetal,
        CheckKind::MuIndependence,
        CheckKind::Convergence,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::PlasmaNull => "plasma-null",
            CheckKind::ClassicalLimit => "classical-limit",
            CheckKind::IdealMetal => "ideal-metal",
            CheckKind::MuIndependence => "mu-independence",
            CheckKind::Convergence => "convergence",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        CheckKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown check `{s}`"))
    }
}

/// Direction in which `measured` must sit relative to `bound`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Below,
    #[serde(rename = ">")]
    Above,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub kind: CheckKind,
    pub scenario: String,
    pub measured: f64,
    pub relation: Relation,
    pub bound: f64,
    pub pass: bool,
}

impl Check {
    fn new(kind: CheckKind, name: &str, scenario: &str, measured: f64, relation: Relation, bound: f64) -> Self {
        let pass = match relation {
            Relation::Below => measured < bound,
            Relation::Above => measured > bound,
        };
        Check {
            name: format!("{}/{}", kind.as_str(), name),
            kind,
            scenario: scenario.to_string(),
            measured,
            relation,
            bound,
            pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    pub pass: bool,
}

/// What to run. `scenarios` pairs a label with the system whose separation
/// is overridden by the grid.
#[derive(Debug, Clone)]
pub struct ValidationPlan {
    pub kinds: Vec<CheckKind>,
    pub scenarios: Vec<(String, PlateSystem)>,
    pub grid_um: Vec<f64>,
    pub numerics: NumericsConfig,
    pub constants: PhysicalConstants,
}

impl Default for ValidationPlan {
    fn default() -> Self {
        ValidationPlan {
            kinds: CheckKind::ALL.to_vec(),
            scenarios: vec![
                ("au-ni".into(), PlateSystem::au_ni(MICROMETER)),
                ("ni-ni".into(), PlateSystem::ni_ni(MICROMETER)),
                ("au-au".into(), PlateSystem::au_au(MICROMETER)),
            ],
            grid_um: NULL_GRID_UM.to_vec(),
            numerics: NumericsConfig::default(),
            constants: PhysicalConstants::CODATA_2018,
        }
    }
}

pub fn run(plan: &ValidationPlan) -> Result<ValidationReport> {
    plan.numerics.validate()?;
    let mut checks = Vec::new();
    for &kind in &plan.kinds {
        if kind == CheckKind::IdealMetal {
            checks.push(check_ideal_metal(&plan.numerics, &plan.constants)?);
            continue;
        }
        for (label, sys) in &plan.scenarios {
            match kind {
                CheckKind::PlasmaNull => {
                    checks.extend(check_plasma_null(label, sys, &plan.grid_um, &plan.numerics, &plan.constants)?)
                }
                CheckKind::ClassicalLimit => {
                    checks.push(check_classical_limit(label, sys, &plan.numerics, &plan.constants)?)
                }
                CheckKind::MuIndependence => {
                    checks.extend(check_mu_independence(label, sys, &plan.grid_um, &plan.numerics)?)
                }
                CheckKind::Convergence => {
                    checks.extend(check_convergence(label, sys, &plan.grid_um, &plan.numerics)?)
                }
                CheckKind::IdealMetal => unreachable!(),
            }
        }
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(ValidationReport { checks, pass })
}

/// −k_BTζ(3)/(8πa³) from the given constants.
pub fn reference_pressure(a: f64, temperature: f64, k: &PhysicalConstants) -> f64 {
    -k.k_b * temperature * ZETA3 / (8.0 * PI * a.powi(3))
}

fn at(sys: &PlateSystem, a_um: f64) -> PlateSystem {
    sys.with_separation(a_um * MICROMETER)
}

/// Largest |F_evan(plasma)|/|F_ref| per polarization over the grid.
pub fn check_plasma_null(
    label: &str,
    sys: &PlateSystem,
    grid_um: &[f64],
    cfg: &NumericsConfig,
    k: &PhysicalConstants,
) -> Result<Vec<Check>> {
    Polarization::BOTH
        .into_iter()
        .map(|pol| {
            let ratios = grid_um
                .par_iter()
                .map(|&a_um| {
                    let s = at(sys, a_um);
                    let f = force_evanescent(pol, &s, Model::Plasma, cfg)?;
                    Ok((f / reference_pressure(s.a, s.temperature, k)).abs())
                })
                .collect::<Result<Vec<f64>>>()?;
            let worst = ratios.into_iter().fold(0.0, f64::max);
            Ok(Check::new(
                CheckKind::PlasmaNull,
                pol.as_str(),
                label,
                worst,
                Relation::Below,
                PLASMA_NULL_BOUND,
            ))
        })
        .collect()
}

/// Drude total at 30 µm against −(k_BT/8πa³)[ζ(3) + Li₃(r₁r₂)].
pub fn check_classical_limit(
    label: &str,
    sys: &PlateSystem,
    cfg: &NumericsConfig,
    k: &PhysicalConstants,
) -> Result<Check> {
    let s = at(sys, CLASSICAL_A_UM);
    let f = force_total(&s, Model::Drude, cfg)?;
    let r_te = classical_limit(Polarization::Te, &s, Model::Drude)?.r1r2;
    let oracle = reference_pressure(s.a, s.temperature, k) * (1.0 + polylog3(r_te)? / ZETA3);
    let bound = if s.plate1.is_magnetic() && s.plate2.is_magnetic() {
        0.01
    } else {
        0.005
    };
    Ok(Check::new(
        CheckKind::ClassicalLimit,
        "drude-total",
        label,
        (f.f_total / oracle - 1.0).abs(),
        Relation::Below,
        bound,
    ))
}

/// Plasma gold with ω_p × 100 at 1 K and 0.5 µm against −π²ħc/(240a⁴).
pub fn check_ideal_metal(cfg: &NumericsConfig, k: &PhysicalConstants) -> Result<Check> {
    let mut au = MaterialSpec::gold(Model::Plasma);
    au.omega_p *= 100.0;
    let sys = PlateSystem::new(au.clone(), au, 0.5 * MICROMETER, 1.0)?;
    let f = force_total(&sys, Model::Plasma, cfg)?;
    let oracle = -PI * PI * k.hbar * k.c / (240.0 * sys.a.powi(4));
    Ok(Check::new(
        CheckKind::IdealMetal,
        "plasma-total",
        "au-au",
        (f.f_total / oracle - 1.0).abs(),
        Relation::Below,
        IDEAL_METAL_BOUND,
    ))
}

fn rel_change(x: f64, y: f64) -> f64 {
    if x == y {
        0.0
    } else {
        ((x - y) / y).abs()
    }
}

/// Relative changes when every μ(0) is set to 1.
pub fn check_mu_independence(
    label: &str,
    sys: &PlateSystem,
    grid_um: &[f64],
    cfg: &NumericsConfig,
) -> Result<Vec<Check>> {
    let rows = grid_um
        .par_iter()
        .map(|&a_um| {
            let s = at(sys, a_um);
            let s1 = s.with_mu_static(1.0);
            let d = force_breakdown(&s, Model::Drude, cfg)?;
            let d1 = force_breakdown(&s1, Model::Drude, cfg)?;
            let p = force_breakdown(&s, Model::Plasma, cfg)?;
            let p1 = force_breakdown(&s1, Model::Plasma, cfg)?;
            Ok((
                rel_change(d.f_tm, d1.f_tm).max(rel_change(p.f_tm, p1.f_tm)),
                rel_change(d.f_te_evan.unwrap(), d1.f_te_evan.unwrap()),
                rel_change(p.f_te_prop.unwrap(), p1.f_te_prop.unwrap()),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let max = |f: fn(&(f64, f64, f64)) -> f64| rows.iter().map(f).fold(0.0, f64::max);
    let mut checks = vec![
        Check::new(CheckKind::MuIndependence, "TM", label, max(|r| r.0), Relation::Below, MU_TM_BOUND),
        Check::new(
            CheckKind::MuIndependence,
            "TE-evan-drude",
            label,
            max(|r| r.1),
            Relation::Below,
            MU_TE_EVAN_BOUND,
        ),
    ];
    if sys.plate1.is_magnetic() && sys.plate2.is_magnetic() {
        let min = rows.iter().map(|r| r.2).fold(f64::INFINITY, f64::min);
        checks.push(Check::new(
            CheckKind::MuIndependence,
            "TE-prop-plasma",
            label,
            min,
            Relation::Above,
            MU_TE_PROP_MIN_CHANGE,
        ));
    }
    Ok(checks)
}

/// Each tightened configuration paired with a label.
pub fn refinements(cfg: &NumericsConfig) -> Vec<(&'static str, NumericsConfig)> {
    let mut rel = cfg.clone();
    rel.rel_tol /= 2.0;
    rel.matsubara_tail_tol = rel.matsubara_tail_tol.min(rel.rel_tol);
    let mut tmin = cfg.clone();
    tmin.t_min_cutoff /= 2.0;
    let mut tmax = cfg.clone();
    tmax.t_max *= 2.0;
    tmax.plasma_cutoff *= 2.0;
    let mut wmax = cfg.clone();
    wmax.w_max *= 2.0;
    vec![
        ("rel_tol/2", rel),
        ("t_min_cutoff/2", tmin),
        ("t_max*2", tmax),
        ("w_max*2", wmax),
    ]
}

/// Every reported force paired with its error estimate.
pub fn forces_with_errors(b: &ForceBreakdown) -> Vec<(f64, f64)> {
    let mut out = vec![
        (b.f_total, b.f_tm_error + b.f_te_error),
        (b.f_tm, b.f_tm_error),
        (b.f_te, b.f_te_error),
    ];
    if let (Some(tm), Some(te), Some(etm), Some(ete)) =
        (b.f_tm_evan, b.f_te_evan, b.f_tm_evan_error, b.f_te_evan_error)
    {
        out.push((tm, etm));
        out.push((te, ete));
        out.push((b.f_tm_prop.unwrap(), b.f_tm_error + etm));
        out.push((b.f_te_prop.unwrap(), b.f_te_error + ete));
    }
    out
}

/// Largest |change| / prior error estimate over forces, grid and models.
pub fn check_convergence(
    label: &str,
    sys: &PlateSystem,
    grid_um: &[f64],
    cfg: &NumericsConfig,
) -> Result<Vec<Check>> {
    let points: Vec<(f64, Model)> = grid_um
        .iter()
        .flat_map(|&a_um| Model::ALL.map(|m| (a_um, m)))
        .collect();
    let base = points
        .par_iter()
        .map(|&(a_um, m)| force_breakdown(&at(sys, a_um), m, cfg))
        .collect::<Result<Vec<_>>>()?;
    refinements(cfg)
        .iter()
        .map(|(name, rc)| {
            let worst = points
                .par_iter()
                .zip(base.par_iter())
                .map(|(&(a_um, m), b0)| {
                    let b1 = force_breakdown(&at(sys, a_um), m, rc)?;
                    Ok(forces_with_errors(b0)
                        .into_iter()
                        .zip(forces_with_errors(&b1))
                        .map(|((f0, e0), (f1, _))| convergence_ratio(f0, f1, e0))
                        .fold(0.0, f64::max))
                })
                .collect::<Result<Vec<f64>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            Ok(Check::new(CheckKind::Convergence, name, label, worst, Relation::Below, 1.0))
        })
        .collect()
}

fn convergence_ratio(f0: f64, f1: f64, e0: f64) -> f64 {
    let d = (f1 - f0).abs();
    if d == 0.0 {
        0.0
    } else if e0 > 0.0 {
        d / e0
    } else {
        f64::INFINITY
    }
}

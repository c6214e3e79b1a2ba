//! Evanescent and propagating fractions of the TM and TE pressures on the
//! real frequency axis.
//!
//! The evanescent fraction is the double integral
//!
//! ```text
//! F_evan = −ħc/(32π²a⁴) ∫dt coth(ħct/(4ak_BT)) ∫dw (w+t)·s·Im[R e^{−s}/(1 − R e^{−s})]
//! ```
//!
//! with s = sqrt(w² + 2wt) and R = r₁r₂. The inner integral is carried out in
//! s itself ((w+t)·s·dw = s²·ds), which removes the square-root endpoint
//! behavior at w = 0. The outer integral runs over ln t, seeded with the
//! permeability band edges and the material frequencies. The propagating
//! fraction is obtained as the Matsubara total minus the evanescent part.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::materials::{eps_real_unchecked, mu_real, MaterialSpec, Model};
use crate::matsubara::{force_polarization_matsubara, force_total};
use crate::quadrature::{integrate, Tolerance};
use crate::reference_limits::ZETA3;
use crate::reflection::{one_minus_product_complex, real_axis_scaled, Polarization};
use crate::system::{ForceBreakdown, NumericsConfig, PlateSystem};
use crate::units::{C, HBAR, K_B};

/// Standard separation grid (µm) for the plasma-null certification.
pub const NULL_GRID_UM: [f64; 5] = [0.5, 1.0, 2.0, 4.0, 6.0];

/// Bound on |F_evan|/|F_ref| under the plasma model.
pub const PLASMA_NULL_BOUND: f64 = 1e-6;

/// Evanescent integrand of one polarization for one plate system.
#[derive(Debug, Clone)]
pub struct EvanescentIntegrand {
    pub pol: Polarization,
    pub sys: PlateSystem,
    pub model: Model,
    /// −ħc/(32π²a⁴), Pa.
    pub prefactor: f64,
    /// ħc/(4ak_BT): the thermal weight is coth(beta·t).
    pub beta: f64,
    /// ω_c = c/(2a).
    pub omega_c: f64,
}

/// Evanescent pressure with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvanescentResult {
    pub pol: Polarization,
    /// Pa.
    pub force: f64,
    /// Estimated absolute error, Pa.
    pub error: f64,
    /// Outer panels used.
    pub panels: usize,
}

#[derive(Clone, Copy)]
struct Response {
    eps: Complex64,
    mu: Complex64,
}

impl EvanescentIntegrand {
    pub fn new(pol: Polarization, sys: &PlateSystem, model: Model) -> Self {
        let a = sys.a;
        EvanescentIntegrand {
            pol,
            sys: sys.with_model(model),
            model,
            prefactor: -HBAR * C / (32.0 * PI * PI * a.powi(4)),
            beta: HBAR * C / (4.0 * a * K_B * sys.temperature),
            omega_c: C / (2.0 * a),
        }
    }

    pub fn thermal_weight(&self, t: f64) -> f64 {
        1.0 / (self.beta * t).tanh()
    }

    fn responses(&self, t: f64) -> (Response, Response) {
        let omega = self.omega_c * t;
        let at = |m: &MaterialSpec| Response {
            eps: eps_real_unchecked(m, omega),
            mu: mu_real(m, omega),
        };
        (at(&self.sys.plate1), at(&self.sys.plate2))
    }

    /// Im[R e^{−s}/(1 − R e^{−s})]·s², the integrand in the scaled normal
    /// wave vector s at dimensionless frequency t.
    pub fn value_s(&self, t: f64, s: f64) -> f64 {
        let (r1, r2) = self.responses(t);
        kernel(self.pol, r1, r2, t, s)
    }

    /// The same integrand in the original (t, w) variables,
    /// (w + t)·s·Im[R e^{−s}/(1 − R e^{−s})].
    pub fn value(&self, t: f64, w: f64) -> f64 {
        let s = (w * (w + 2.0 * t)).sqrt();
        if s == 0.0 {
            return 0.0;
        }
        self.value_s(t, s) * (w + t) / s
    }

    /// Inner integral over s ∈ (0, w_max] at fixed t.
    fn inner(&self, t: f64, cfg: &NumericsConfig, abs_tol: f64) -> Result<(f64, f64)> {
        let (r1, r2) = self.responses(t);
        if r1.eps.im == 0.0 && r1.mu.im == 0.0 && r2.eps.im == 0.0 && r2.mu.im == 0.0 {
            // All inputs real: the imaginary part vanishes identically.
            return Ok((0.0, 0.0));
        }
        let seeds = inner_seeds(t, &[r1, r2], cfg.w_max);
        let est = integrate(
            |s| kernel(self.pol, r1, r2, t, s),
            0.0,
            cfg.w_max,
            &seeds,
            Tolerance::new(abs_tol, 0.1 * cfg.rel_tol, cfg.max_panels),
        )?;
        Ok((est.value, est.error))
    }

    /// Band edges and material frequencies in ln t, plus every decade.
    fn outer_seeds(&self, lo: f64, hi: f64) -> Vec<f64> {
        let mut seeds = Vec::new();
        for m in [&self.sys.plate1, &self.sys.plate2] {
            let spp = m.omega_p / std::f64::consts::SQRT_2;
            for w in [m.mu_omega1, m.mu_omega2, m.mu_omega_ch, m.gamma, spp, m.omega_p] {
                if w > 0.0 {
                    seeds.push((w / self.omega_c).ln());
                }
            }
        }
        let mut k = (lo / std::f64::consts::LN_10).ceil() as i32;
        while (k as f64) * std::f64::consts::LN_10 < hi {
            seeds.push(k as f64 * std::f64::consts::LN_10);
            k += 1;
        }
        seeds.retain(|&u| u > lo && u < hi);
        seeds.sort_by(f64::total_cmp);
        seeds.dedup();
        seeds
    }

    /// Upper end of the t range: `t_max`, raised to `plasma_cutoff` times
    /// the larger plasma frequency.
    pub fn t_upper(&self, cfg: &NumericsConfig) -> f64 {
        let wp = self.sys.plate1.omega_p.max(self.sys.plate2.omega_p);
        cfg.t_max.max(cfg.plasma_cutoff * wp / self.omega_c)
    }

    /// Full double integral.
    pub fn integrate(&self, cfg: &NumericsConfig) -> Result<EvanescentResult> {
        cfg.validate()?;
        let lo = cfg.t_min_cutoff.ln();
        let hi = self.t_upper(cfg).ln();
        // Absolute target: rel_tol times |F_ref| in the units of the double integral.
        let scale = PI * ZETA3 / (2.0 * self.beta);
        let abs_tol = 0.5 * cfg.rel_tol * scale;
        let span = hi - lo;

        let mut failure: Option<Error> = None;
        let outer = integrate(
            |u| {
                if failure.is_some() {
                    return 0.0;
                }
                let t = u.exp();
                let jac = t * self.thermal_weight(t);
                match self.inner(t, cfg, 0.1 * abs_tol / (span * jac)) {
                    Ok((v, _)) => jac * v,
                    Err(err) => {
                        failure = Some(err);
                        0.0
                    }
                }
            },
            lo,
            hi,
            &self.outer_seeds(lo, hi),
            Tolerance::new(abs_tol, 0.5 * cfg.rel_tol, cfg.max_panels),
        );
        if let Some(err) = failure {
            return Err(err);
        }
        let outer = outer?;
        // Every inner integral met max(abs, rel·|I|); integrated over ln t
        // that is bounded by the following.
        let inner_err = 0.1 * abs_tol + 0.1 * cfg.rel_tol * outer.abs_value;
        let p = self.prefactor.abs();
        Ok(EvanescentResult {
            pol: self.pol,
            force: self.prefactor * outer.value,
            error: p * (outer.error + inner_err),
            panels: outer.panels,
        })
    }
}

fn inner_seeds(t: f64, responses: &[Response; 2], w_max: f64) -> Vec<f64> {
    let mut seeds = vec![1.0, t];
    for r in responses {
        let em = (r.eps * r.mu).norm();
        seeds.push(t * em.sqrt());
        seeds.push(t / r.eps.norm().sqrt());
        seeds.push(t / r.mu.norm());
    }
    let smallest = seeds
        .iter()
        .copied()
        .filter(|&s| s > 0.0)
        .fold(f64::INFINITY, f64::min)
        .max(1e-200);
    let mut d = smallest * 10.0;
    while d < 1.0 {
        seeds.push(d);
        d *= 10.0;
    }
    seeds.retain(|&s| s > 0.0 && s < w_max && s.is_finite());
    seeds
}

#[inline]
fn kernel(pol: Polarization, r1: Response, r2: Response, t: f64, s: f64) -> f64 {
    let c1 = real_axis_scaled(pol, r1.eps, r1.mu, s, t);
    let c2 = real_axis_scaled(pol, r2.eps, r2.mu, s, t);
    let r = c1.r * c2.r;
    let e = (-s).exp();
    let denom = one_minus_product_complex(&c1, &c2) - r * (-s).exp_m1();
    let ratio = r * e / denom;
    s * s * ratio.im
}

/// Evanescent-wave fraction of one polarization's pressure.
pub fn force_evanescent(
    pol: Polarization,
    sys: &PlateSystem,
    model: Model,
    cfg: &NumericsConfig,
) -> Result<f64> {
    Ok(evanescent(pol, sys, model, cfg)?.force)
}

/// [`force_evanescent`] with its error estimate.
pub fn evanescent(
    pol: Polarization,
    sys: &PlateSystem,
    model: Model,
    cfg: &NumericsConfig,
) -> Result<EvanescentResult> {
    sys.validate()?;
    EvanescentIntegrand::new(pol, sys, model).integrate(cfg)
}

/// Propagating-wave fraction: Matsubara total of the polarization minus its
/// evanescent part.
pub fn force_propagating(
    pol: Polarization,
    sys: &PlateSystem,
    model: Model,
    cfg: &NumericsConfig,
) -> Result<f64> {
    let total = force_polarization_matsubara(pol, sys, model, cfg)?;
    Ok(total - force_evanescent(pol, sys, model, cfg)?)
}

/// Full record: Matsubara totals plus the evanescent/propagating split of
/// both polarizations.
pub fn force_breakdown(sys: &PlateSystem, model: Model, cfg: &NumericsConfig) -> Result<ForceBreakdown> {
    let mut b = force_total(sys, model, cfg)?;
    let tm = evanescent(Polarization::Tm, sys, model, cfg)?;
    let te = evanescent(Polarization::Te, sys, model, cfg)?;
    b.f_tm_evan = Some(tm.force);
    b.f_tm_prop = Some(b.f_tm - tm.force);
    b.f_te_evan = Some(te.force);
    b.f_te_prop = Some(b.f_te - te.force);
    b.f_tm_evan_error = Some(tm.error);
    b.f_te_evan_error = Some(te.error);
    Ok(b)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlasmaNullEntry {
    /// Separation in µm.
    pub a_um: f64,
    pub pol: Polarization,
    /// |F_evan| / |F_ref|.
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlasmaNullReport {
    pub entries: Vec<PlasmaNullEntry>,
    pub max_ratio: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Evaluates the plasma-model evanescent fractions of both polarizations on
/// the given separations and checks they vanish relative to F_ref.
pub fn certify_plasma_null(sys: &PlateSystem, grid_um: &[f64], cfg: &NumericsConfig) -> Result<PlasmaNullReport> {
    let mut entries = Vec::new();
    for &a_um in grid_um {
        let s = sys.with_separation(a_um * 1e-6);
        let f_ref = crate::matsubara::reference_high_temperature(s.a, s.temperature)?;
        for pol in Polarization::BOTH {
            let f = force_evanescent(pol, &s, Model::Plasma, cfg)?;
            entries.push(PlasmaNullEntry {
                a_um,
                pol,
                ratio: (f / f_ref).abs(),
            });
        }
    }
    let max_ratio = entries.iter().map(|e| e.ratio).fold(0.0, f64::max);
    Ok(PlasmaNullReport {
        entries,
        max_ratio,
        bound: PLASMA_NULL_BOUND,
        pass: max_ratio < PLASMA_NULL_BOUND,
    })
}

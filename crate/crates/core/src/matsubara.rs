//! TM and TE contributions to the Casimir pressure as a sum over Matsubara
//! frequencies of k⊥ integrals.
//!
//! Each term is integrated in y = 2a·q_l ∈ [2aξ_l/c, ∞), where the integrand
//! is y²·r₁r₂e^{−y}/(1 − r₁r₂e^{−y}). The range is cut 40 e-foldings above
//! its lower end.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::materials::{eps_imaginary_unchecked, mu_matsubara, MaterialSpec, Model};
use crate::quadrature::{integrate, Tolerance};
use crate::reference_limits::ZETA3;
use crate::reflection::{
    imag_axis_scaled, one_minus_product_real, zero_frequency_scaled, Coefficient, Polarization,
};
use crate::system::{ForceBreakdown, InnerQuadrature, NumericsConfig, PlateSystem};
use crate::units::{first_matsubara, C, K_B};

/// Width of the y-window integrated for every term.
pub const Y_WINDOW: f64 = 40.0;

/// Consecutive negligible terms required before the sum is truncated.
const NEGLIGIBLE_RUN: usize = 3;

/// High-temperature Drude reference pressure −k_BTζ(3)/(8πa³): the l = 0
/// TM term alone, half the ideal-metal classical limit.
pub fn reference_high_temperature(a: f64, temperature: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain("separation a (m)", a));
    }
    if !(temperature > 0.0) || !temperature.is_finite() {
        return Err(Error::domain("temperature (K)", temperature));
    }
    Ok(-K_B * temperature * ZETA3 / (8.0 * PI * a.powi(3)))
}

/// One Matsubara term in scaled form: the y-integral, before the
/// −(k_BT/π)/(2a)³ prefactor and the l = 0 halving.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatsubaraTerm {
    pub l: usize,
    pub value: f64,
    pub error: f64,
}

struct TermIntegrand<'a> {
    pol: Polarization,
    plate1: &'a MaterialSpec,
    plate2: &'a MaterialSpec,
    l: usize,
    /// 2aξ_l/c.
    y0: f64,
    eps1: f64,
    eps2: f64,
    /// 2aω_p/c per plate, for the zero-frequency TE plasma branch.
    plasma1: f64,
    plasma2: f64,
}

impl<'a> TermIntegrand<'a> {
    fn new(pol: Polarization, sys: &'a PlateSystem, l: usize) -> Self {
        let xi = l as f64 * first_matsubara(sys.temperature);
        let two_a = 2.0 * sys.a;
        let (eps1, eps2) = if l == 0 {
            (f64::INFINITY, f64::INFINITY)
        } else {
            (
                eps_imaginary_unchecked(&sys.plate1, xi),
                eps_imaginary_unchecked(&sys.plate2, xi),
            )
        };
        TermIntegrand {
            pol,
            plate1: &sys.plate1,
            plate2: &sys.plate2,
            l,
            y0: two_a * xi / C,
            eps1,
            eps2,
            plasma1: two_a * sys.plate1.omega_p / C,
            plasma2: two_a * sys.plate2.omega_p / C,
        }
    }

    fn coefficients(&self, y: f64) -> (Coefficient<f64>, Coefficient<f64>) {
        if self.l == 0 {
            (
                zero_frequency_scaled(self.pol, self.plate1, y, self.plasma1),
                zero_frequency_scaled(self.pol, self.plate2, y, self.plasma2),
            )
        } else {
            (
                imag_axis_scaled(self.pol, self.eps1, mu_matsubara(self.plate1, self.l), y, self.y0),
                imag_axis_scaled(self.pol, self.eps2, mu_matsubara(self.plate2, self.l), y, self.y0),
            )
        }
    }

    /// y²·R e^{−y}/(1 − R e^{−y}), with the denominator formed as
    /// (1 − R) − R·expm1(−y) to avoid cancellation when R → 1, y → 0.
    fn eval(&self, y: f64) -> f64 {
        let (c1, c2) = self.coefficients(y);
        let r = c1.r * c2.r;
        if r == 0.0 {
            return 0.0;
        }
        let e = (-y).exp();
        let denom = one_minus_product_real(&c1, &c2) - r * (-y).exp_m1();
        y * y * r * e / denom
    }
}

/// The scaled y-integral of Matsubara term `l`.
pub fn matsubara_term(
    pol: Polarization,
    sys: &PlateSystem,
    l: usize,
    cfg: &NumericsConfig,
) -> Result<MatsubaraTerm> {
    let f = TermIntegrand::new(pol, sys, l);
    let lo = f.y0;
    let hi = f.y0 + Y_WINDOW;
    let (value, error) = match cfg.inner_quadrature {
        InnerQuadrature::Adaptive => {
            // The plasma TE zero-frequency term changes scale near y ~ 2aω_p/c.
            let seeds = [1.0, 5.0, f.plasma1, f.plasma2].map(|b| lo + b);
            let est = integrate(
                |y| f.eval(y),
                lo,
                hi,
                &seeds,
                Tolerance::new(0.0, cfg.rel_tol * 0.1, cfg.max_panels),
            )?;
            (est.value, est.error)
        }
        InnerQuadrature::Fixed { panels } => {
            let h = (hi - lo) / panels as f64;
            let mut total = 0.0;
            let mut err = 0.0;
            for i in 0..panels {
                let a = lo + i as f64 * h;
                let est = integrate(|y| f.eval(y), a, a + h, &[], Tolerance::new(f64::INFINITY, 0.0, 1))?;
                total += est.value;
                err += est.error;
            }
            (total, err)
        }
    };
    Ok(MatsubaraTerm { l, value, error })
}

/// Matsubara sum of one polarization, with per-term diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct MatsubaraSum {
    pub pol: Polarization,
    /// Pressure in Pa.
    pub force: f64,
    /// Number of terms summed (l = 0 .. terms − 1).
    pub terms: usize,
    /// Quadrature error summed over terms, in Pa.
    pub error: f64,
}

/// Pressure contribution of one polarization for the given permittivity model.
pub fn force_polarization_matsubara(
    pol: Polarization,
    sys: &PlateSystem,
    model: Model,
    cfg: &NumericsConfig,
) -> Result<f64> {
    Ok(matsubara_sum(pol, sys, model, cfg)?.force)
}

pub fn matsubara_sum(
    pol: Polarization,
    sys: &PlateSystem,
    model: Model,
    cfg: &NumericsConfig,
) -> Result<MatsubaraSum> {
    sys.validate()?;
    cfg.validate()?;
    let sys = sys.with_model(model);
    let prefactor = -K_B * sys.temperature / PI / (2.0 * sys.a).powi(3);

    let mut sum = 0.0;
    let mut err = 0.0;
    let mut quiet = 0usize;
    let mut last_rel = f64::INFINITY;
    let mut prev = 0.0f64;
    for l in 0..cfg.l_max_cap {
        let term = matsubara_term(pol, &sys, l, cfg)?;
        let weight = if l == 0 { 0.5 } else { 1.0 };
        let v = weight * term.value;
        sum += v;
        err += weight * term.error;
        // A vanishing sum (e.g. TE Drude l = 0 with μ = 1) says nothing yet.
        last_rel = if sum == 0.0 {
            if v == 0.0 { 0.0 } else { f64::INFINITY }
        } else {
            (v / sum).abs()
        };
        if l > 0 && last_rel < cfg.matsubara_tail_tol {
            quiet += 1;
            if quiet >= NEGLIGIBLE_RUN {
                // Geometric estimate of the discarded tail.
                let q = if prev != 0.0 { (v / prev).abs() } else { 0.0 };
                let tail = if q < 1.0 { v.abs() * q / (1.0 - q) } else { v.abs() * l as f64 };
                return Ok(MatsubaraSum {
                    pol,
                    force: prefactor * sum,
                    terms: l + 1,
                    error: (prefactor * (err + tail)).abs(),
                });
            }
        } else {
            quiet = 0;
        }
        prev = v;
    }
    Err(Error::MatsubaraNotConverged {
        terms: cfg.l_max_cap,
        partial_sum: prefactor * sum,
        achieved: last_rel,
    })
}

/// TM + TE pressure for one model; the evanescent/propagating fields are
/// left empty (see [`crate::realfreq::force_breakdown`]).
pub fn force_total(sys: &PlateSystem, model: Model, cfg: &NumericsConfig) -> Result<ForceBreakdown> {
    let tm = matsubara_sum(Polarization::Tm, sys, model, cfg)?;
    let te = matsubara_sum(Polarization::Te, sys, model, cfg)?;
    let (f_tm, f_te) = (tm.force, te.force);
    Ok(ForceBreakdown {
        a: sys.a,
        temperature: sys.temperature,
        model,
        f_total: f_tm + f_te,
        f_tm,
        f_te,
        f_tm_evan: None,
        f_tm_prop: None,
        f_te_evan: None,
        f_te_prop: None,
        f_ref: reference_high_temperature(sys.a, sys.temperature)?,
        f_tm_error: tm.error,
        f_te_error: te.error,
        f_tm_evan_error: None,
        f_te_evan_error: None,
    })
}

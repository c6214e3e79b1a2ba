//! Reflection coefficients of a vacuum/metal interface.
//!
//! Three flavors are provided: on the imaginary frequency axis at the
//! Matsubara frequencies (l ≥ 1), their exact zero-frequency limits, and on
//! the real frequency axis in the dimensionless evanescent variables
//! t = 2aω/c, w = 2a·k⊥ − t.
//!
//! The kernels take the normal wave-vector component of the vacuum gap as the
//! integration variable (`y = 2a·q` on the imaginary axis, `s = 2a·q` on the
//! real axis), which is the form the force integrals use.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::materials::{
    eps_imaginary_unchecked, eps_real_unchecked, mu_matsubara, mu_real, MaterialSpec, Model,
};
use crate::units::{matsubara_frequency, C};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarization {
    #[serde(rename = "TM")]
    Tm,
    #[serde(rename = "TE")]
    Te,
}

impl Polarization {
    pub const BOTH: [Polarization; 2] = [Polarization::Tm, Polarization::Te];

    pub fn as_str(self) -> &'static str {
        match self {
            Polarization::Tm => "TM",
            Polarization::Te => "TE",
        }
    }
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A point (ξ_l, k⊥) on the imaginary frequency axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImagAxisPoint {
    pub l: usize,
    /// ξ_l in rad/s.
    pub xi: f64,
    /// k⊥ in rad/m.
    pub k_perp: f64,
    /// q_l = sqrt(k⊥² + ξ_l²/c²) in rad/m.
    pub q: f64,
}

impl ImagAxisPoint {
    pub fn new(l: usize, temperature: f64, k_perp: f64) -> Result<Self> {
        if !(k_perp >= 0.0) || !k_perp.is_finite() {
            return Err(Error::domain("k_perp", k_perp));
        }
        let xi = matsubara_frequency(l, temperature)?;
        let q = k_perp.hypot(xi / C);
        Ok(ImagAxisPoint { l, xi, k_perp, q })
    }
}

/// A point in the dimensionless real-frequency variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessPoint {
    /// t = 2aω/c.
    pub t: f64,
    /// w = 2a·k⊥ − t; the evanescent region is w > 0.
    pub w: f64,
    /// Plate separation in meters, needed to map t back to ω.
    pub a: f64,
}

impl DimensionlessPoint {
    /// Characteristic frequency ω_c = c/(2a).
    pub fn omega_c(&self) -> f64 {
        C / (2.0 * self.a)
    }

    /// s = sqrt(w² + 2wt) = 2a·q, the scaled decay constant in the gap.
    pub fn s(&self) -> f64 {
        (self.w * (self.w + 2.0 * self.t)).sqrt()
    }
}

/// Reflection coefficient written as r = (κs − p)/(κs + p), kept together with
/// the accurately computed 1 − r and 1 + r.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Coefficient<T> {
    pub r: T,
    pub one_minus: T,
    pub one_plus: T,
}

#[inline]
pub(crate) fn kernel_real(kappa: f64, s: f64, p: f64) -> Coefficient<f64> {
    let ks = kappa * s;
    let d = ks + p;
    Coefficient {
        r: (ks - p) / d,
        one_minus: 2.0 * p / d,
        one_plus: 2.0 * ks / d,
    }
}

#[inline]
pub(crate) fn kernel_complex(kappa: Complex64, s: f64, p: Complex64) -> Coefficient<Complex64> {
    let ks = kappa * s;
    let d = ks + p;
    Coefficient {
        r: (ks - p) / d,
        one_minus: 2.0 * p / d,
        one_plus: 2.0 * ks / d,
    }
}

/// 1 − r₁r₂ without cancellation when both coefficients sit near ±1.
#[inline]
pub(crate) fn one_minus_product_real(c1: &Coefficient<f64>, c2: &Coefficient<f64>) -> f64 {
    if c1.r >= 0.0 && c2.r >= 0.0 {
        c1.one_minus + c2.one_minus - c1.one_minus * c2.one_minus
    } else if c1.r < 0.0 && c2.r < 0.0 {
        c1.one_plus + c2.one_plus - c1.one_plus * c2.one_plus
    } else {
        1.0 - c1.r * c2.r
    }
}

#[inline]
pub(crate) fn one_minus_product_complex(
    c1: &Coefficient<Complex64>,
    c2: &Coefficient<Complex64>,
) -> Complex64 {
    if c1.r.re >= 0.0 && c2.r.re >= 0.0 {
        c1.one_minus + c2.one_minus - c1.one_minus * c2.one_minus
    } else if c1.r.re < 0.0 && c2.r.re < 0.0 {
        c1.one_plus + c2.one_plus - c1.one_plus * c2.one_plus
    } else {
        1.0 - c1.r * c2.r
    }
}

/// Imaginary-axis coefficient in scaled variables: `y` is 2a·q_l and `y0`
/// is 2aξ_l/c, so that p = sqrt(y² + (εμ − 1)·y0²).
#[inline]
pub(crate) fn imag_axis_scaled(
    pol: Polarization,
    eps: f64,
    mu: f64,
    y: f64,
    y0: f64,
) -> Coefficient<f64> {
    let p = (y * y + (eps * mu - 1.0) * y0 * y0).sqrt();
    let kappa = match pol {
        Polarization::Tm => eps,
        Polarization::Te => mu,
    };
    kernel_real(kappa, y, p)
}

/// Zero-frequency coefficient in scaled variables (`y` = 2a·k⊥).
///
/// `plasma_scale` is 2aω_p/c, only used by the TE plasma branch.
#[inline]
pub(crate) fn zero_frequency_scaled(
    pol: Polarization,
    spec: &MaterialSpec,
    y: f64,
    plasma_scale: f64,
) -> Coefficient<f64> {
    match pol {
        Polarization::Tm => Coefficient {
            r: 1.0,
            one_minus: 0.0,
            one_plus: 2.0,
        },
        Polarization::Te => {
            let mu0 = spec.mu_static;
            let p0 = match spec.eps_model {
                Model::Drude => y,
                Model::Plasma => (y * y + mu0 * plasma_scale * plasma_scale).sqrt(),
            };
            kernel_real(mu0, y, p0)
        }
    }
}

/// Real-axis evanescent coefficient in scaled variables: `s` = 2a·q,
/// p = sqrt(s² + (1 − εμ)t²) on the principal branch.
#[inline]
pub(crate) fn real_axis_scaled(
    pol: Polarization,
    eps: Complex64,
    mu: Complex64,
    s: f64,
    t: f64,
) -> Coefficient<Complex64> {
    let p = (s * s + (1.0 - eps * mu) * (t * t)).sqrt();
    let kappa = match pol {
        Polarization::Tm => eps,
        Polarization::Te => mu,
    };
    kernel_complex(kappa, s, p)
}

/// TM/TE reflection coefficient at a nonzero Matsubara frequency.
pub fn r_imag(pol: Polarization, point: &ImagAxisPoint, spec: &MaterialSpec) -> Result<f64> {
    if point.l == 0 || point.xi == 0.0 {
        return Err(Error::ZeroFrequency);
    }
    let eps = eps_imaginary_unchecked(spec, point.xi);
    let mu = mu_matsubara(spec, point.l);
    Ok(imag_axis_scaled(pol, eps, mu, point.q, point.xi / C).r)
}

/// Exact ξ → 0 limits of the imaginary-axis coefficients.
///
/// TM is 1 for both models. TE is (μ(0) − 1)/(μ(0) + 1) for the Drude model
/// (εξ² → 0) and (μ(0)k⊥ − p₀)/(μ(0)k⊥ + p₀), p₀ = sqrt(k⊥² + μ(0)ω_p²/c²),
/// for the plasma model (εξ² → ω_p²).
pub fn r_zero_frequency(pol: Polarization, spec: &MaterialSpec, k_perp: f64) -> Result<f64> {
    if !(k_perp > 0.0) || !k_perp.is_finite() {
        return Err(Error::domain("k_perp", k_perp));
    }
    Ok(zero_frequency_scaled(pol, spec, k_perp, spec.omega_p / C).r)
}

/// Real-frequency reflection coefficient in the evanescent region.
pub fn r_real_dimensionless(
    pol: Polarization,
    point: &DimensionlessPoint,
    spec: &MaterialSpec,
) -> Result<Complex64> {
    if !(point.t > 0.0) || !point.t.is_finite() {
        return Err(Error::domain("dimensionless frequency t", point.t));
    }
    if !(point.a > 0.0) {
        return Err(Error::domain("separation a", point.a));
    }
    if !(point.w > 0.0) {
        return Err(Error::PropagatingRegion { w: point.w });
    }
    let omega = point.omega_c() * point.t;
    let eps = eps_real_unchecked(spec, omega);
    let mu = mu_real(spec, omega);
    Ok(real_axis_scaled(pol, eps, mu, point.s(), point.t).r)
}

//! Dielectric permittivity and magnetic permeability of the plate metals.
//!
//! Conduction electrons are described either by the Drude model (with
//! relaxation) or by the dissipationless plasma model. The permeability of a
//! soft ferromagnet is a step on the Matsubara axis (only the static value
//! survives, at l = 0) and a piecewise static/Debye/unity function on the
//! real axis.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::ev_to_angular_frequency;

/// Permittivity model for the conduction electrons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Drude,
    Plasma,
}

impl Model {
    pub const ALL: [Model; 2] = [Model::Drude, Model::Plasma];

    pub fn as_str(self) -> &'static str {
        match self {
            Model::Drude => "drude",
            Model::Plasma => "plasma",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Response parameters of one plate. All frequencies in rad/s.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaterialSpec {
    pub name: String,
    /// Plasma frequency ω_p.
    pub omega_p: f64,
    /// Relaxation parameter γ at the working temperature.
    pub gamma: f64,
    pub eps_model: Model,
    /// Initial (static) permeability μ(0).
    pub mu_static: f64,
    /// Upper edge of the static-permeability plateau.
    pub mu_omega1: f64,
    /// Above this frequency the permeability is exactly 1.
    pub mu_omega2: f64,
    /// Debye relaxation frequency.
    pub mu_omega_ch: f64,
}

/// Permeability band edges shared by the presets (Ni values; irrelevant when μ(0) = 1).
const OMEGA_1: f64 = 2.0 * PI * 1e5;
const OMEGA_2: f64 = 6.0 * PI * 1e9;
const OMEGA_CH: f64 = 2.0 * PI * 1e7;

impl MaterialSpec {
    /// Builds a nonmagnetic metal from ħω_p and ħγ in eV.
    pub fn from_ev(name: &str, omega_p_ev: f64, gamma_ev: f64, model: Model) -> Result<Self> {
        let spec = MaterialSpec {
            name: name.to_string(),
            omega_p: ev_to_angular_frequency(omega_p_ev)?,
            gamma: ev_to_angular_frequency(gamma_ev)?,
            eps_model: model,
            mu_static: 1.0,
            mu_omega1: OMEGA_1,
            mu_omega2: OMEGA_2,
            mu_omega_ch: OMEGA_CH,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Gold: ħω_p = 9.0 eV, ħγ(300 K) = 0.035 eV, nonmagnetic.
    pub fn gold(model: Model) -> Self {
        Self::from_ev("Au", 9.0, 0.035, model).expect("valid preset")
    }

    /// Nickel: ħω_p = 4.89 eV, ħγ(300 K) = 0.0436 eV, μ(0) = 110.
    pub fn nickel(model: Model) -> Self {
        let mut spec = Self::from_ev("Ni", 4.89, 0.0436, model).expect("valid preset");
        spec.mu_static = 110.0;
        spec
    }

    pub fn with_model(&self, model: Model) -> Self {
        MaterialSpec {
            eps_model: model,
            ..self.clone()
        }
    }

    pub fn with_mu_static(&self, mu_static: f64) -> Self {
        MaterialSpec {
            mu_static,
            ..self.clone()
        }
    }

    pub fn is_magnetic(&self) -> bool {
        self.mu_static != 1.0
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |reason: String| {
            Err(Error::InvalidMaterial {
                name: self.name.clone(),
                reason,
            })
        };
        if !(self.omega_p > 0.0 && self.omega_p.is_finite()) {
            return bad(format!("omega_p must be positive, got {:e}", self.omega_p));
        }
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return bad(format!("gamma must be non-negative, got {:e}", self.gamma));
        }
        if !(self.mu_static >= 1.0 && self.mu_static.is_finite()) {
            return bad(format!("mu_static must be >= 1, got {}", self.mu_static));
        }
        if !(0.0 < self.mu_omega1
            && self.mu_omega1 < self.mu_omega_ch
            && self.mu_omega_ch < self.mu_omega2
            && self.mu_omega2.is_finite())
        {
            return bad(format!(
                "need 0 < omega1 < omega_ch < omega2, got {:e}, {:e}, {:e}",
                self.mu_omega1, self.mu_omega_ch, self.mu_omega2
            ));
        }
        Ok(())
    }
}

/// ε(iξ) at a positive imaginary frequency.
///
/// ξ = 0 is rejected: both models diverge there and the zero-frequency
/// physics is handled analytically by the reflection coefficients.
pub fn eps_imaginary(spec: &MaterialSpec, xi: f64) -> Result<f64> {
    if !(xi > 0.0) || !xi.is_finite() {
        return Err(Error::domain("imaginary frequency xi", xi));
    }
    Ok(eps_imaginary_unchecked(spec, xi))
}

#[inline]
pub(crate) fn eps_imaginary_unchecked(spec: &MaterialSpec, xi: f64) -> f64 {
    let wp2 = spec.omega_p * spec.omega_p;
    match spec.eps_model {
        Model::Drude => 1.0 + wp2 / (xi * (xi + spec.gamma)),
        Model::Plasma => 1.0 + wp2 / (xi * xi),
    }
}

/// ε(ω) at a positive real frequency; Im ε ≥ 0 (passive).
pub fn eps_real(spec: &MaterialSpec, omega: f64) -> Result<Complex64> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::domain("real frequency omega", omega));
    }
    Ok(eps_real_unchecked(spec, omega))
}

#[inline]
pub(crate) fn eps_real_unchecked(spec: &MaterialSpec, omega: f64) -> Complex64 {
    let wp2 = spec.omega_p * spec.omega_p;
    match spec.eps_model {
        Model::Drude => {
            // 1 - wp²/(ω(ω+iγ)) split into real and imaginary parts.
            let g = spec.gamma;
            let d = omega * omega + g * g;
            Complex64::new(1.0 - wp2 / d, wp2 * g / (omega * d))
        }
        Model::Plasma => Complex64::new(1.0 - wp2 / (omega * omega), 0.0),
    }
}

/// μ(iξ_l): the static value at l = 0, unity otherwise.
pub fn mu_matsubara(spec: &MaterialSpec, l: usize) -> f64 {
    if l == 0 {
        spec.mu_static
    } else {
        1.0
    }
}

/// μ(ω) on the real axis: static plateau up to ω₁, Debye relaxation on
/// (ω₁, ω₂], unity above ω₂. Discontinuous at both band edges.
pub fn mu_real(spec: &MaterialSpec, omega: f64) -> Complex64 {
    if spec.mu_static == 1.0 {
        return Complex64::new(1.0, 0.0);
    }
    if omega <= spec.mu_omega1 {
        Complex64::new(spec.mu_static, 0.0)
    } else if omega <= spec.mu_omega2 {
        let denom = Complex64::new(1.0, -omega / spec.mu_omega_ch);
        1.0 + (spec.mu_static - 1.0) / denom
    } else {
        Complex64::new(1.0, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::matsubara_frequency;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn presets_are_valid() {
        for m in Model::ALL {
            MaterialSpec::gold(m).validate().unwrap();
            MaterialSpec::nickel(m).validate().unwrap();
        }
        let ni = MaterialSpec::nickel(Model::Drude);
        assert_eq!(ni.mu_static, 110.0);
        assert!(rel(ni.omega_p, 4.89 * 1.602176634e-19 / 1.054571817e-34) < 1e-14);
    }

    #[test]
    fn invalid_specs_rejected() {
        let au = MaterialSpec::gold(Model::Drude);
        let mut s = au.clone();
        s.omega_p = 0.0;
        assert!(s.validate().is_err());
        let mut s = au.clone();
        s.gamma = -1.0;
        assert!(s.validate().is_err());
        let mut s = au.clone();
        s.mu_static = 0.5;
        assert!(s.validate().is_err());
        let mut s = au;
        s.mu_omega_ch = s.mu_omega2 * 2.0;
        assert!(s.validate().is_err());
    }

    #[test]
    fn eps_imaginary_examples() {
        let xi1 = matsubara_frequency(1, 300.0).unwrap();
        let mut vac = MaterialSpec::gold(Model::Drude);
        vac.omega_p = 0.0;
        assert_eq!(eps_imaginary(&vac, 1e14).unwrap(), 1.0);
        assert_eq!(eps_imaginary(&vac.with_model(Model::Plasma), 1e14).unwrap(), 1.0);

        let d = eps_imaginary(&MaterialSpec::gold(Model::Drude), xi1).unwrap();
        assert!(rel(d, 2525.7) < 1e-3, "{d}");
        let p = eps_imaginary(&MaterialSpec::gold(Model::Plasma), xi1).unwrap();
        assert!(rel(p, 3070.0) < 1e-3, "{p}");

        assert_eq!(
            eps_imaginary(&MaterialSpec::gold(Model::Drude), 0.0),
            Err(Error::domain("imaginary frequency xi", 0.0))
        );
        assert!(eps_imaginary(&MaterialSpec::gold(Model::Plasma), -1.0).is_err());
    }

    #[test]
    fn eps_imaginary_model_ratio() {
        // (ε_p − 1)/(ε_D − 1) = (ξ + γ)/ξ exactly.
        let au = MaterialSpec::gold(Model::Drude);
        for xi in [1e10, 1e12, 2.468e14, 1e16] {
            let d = eps_imaginary(&au, xi).unwrap() - 1.0;
            let p = eps_imaginary(&au.with_model(Model::Plasma), xi).unwrap() - 1.0;
            assert!(rel(p / d, (xi + au.gamma) / xi) < 1e-13);
        }
    }

    #[test]
    fn eps_real_examples() {
        let au = MaterialSpec::gold(Model::Plasma);
        let at_wp = eps_real(&au, au.omega_p).unwrap();
        assert!(at_wp.norm() < 1e-15);

        // Direct evaluation of 1 − ω_p²/(ω(ω+iγ)) with complex arithmetic.
        let au = MaterialSpec::gold(Model::Drude);
        let omega = 1e13;
        let e = eps_real(&au, omega).unwrap();
        let direct =
            1.0 - au.omega_p * au.omega_p / (omega * Complex64::new(omega, au.gamma));
        assert!((e - direct).norm() / direct.norm() < 1e-14);
        assert!(rel(e.re, -6.387e4) < 1e-3, "{}", e.re);
        assert!(rel(e.im, 3.396e5) < 1e-3, "{}", e.im);

        assert!(eps_real(&au, 0.0).is_err());
        assert!(eps_real(&au, -5.0).is_err());
    }

    #[test]
    fn drude_real_axis_identity() {
        for spec in [MaterialSpec::gold(Model::Drude), MaterialSpec::nickel(Model::Drude)] {
            for omega in [1e3, 1e8, 1e13, 1e15, 1e17] {
                let e = eps_real(&spec, omega).unwrap();
                let g = spec.gamma;
                let wp2 = spec.omega_p * spec.omega_p;
                assert!(rel(e.im * omega * (omega * omega + g * g), wp2 * g) < 1e-14);
                assert!(rel(1.0 - e.re, wp2 / (omega * omega + g * g)) < 1e-12);
            }
        }
    }

    #[test]
    fn mu_matsubara_examples() {
        let ni = MaterialSpec::nickel(Model::Drude);
        assert_eq!(mu_matsubara(&ni, 0), 110.0);
        assert_eq!(mu_matsubara(&ni, 1), 1.0);
        assert_eq!(mu_matsubara(&ni, 1000), 1.0);
        assert_eq!(mu_matsubara(&MaterialSpec::gold(Model::Drude), 0), 1.0);
    }

    #[test]
    fn mu_real_examples() {
        let ni = MaterialSpec::nickel(Model::Drude);
        assert_eq!(mu_real(&ni, 1e4), Complex64::new(110.0, 0.0));
        assert_eq!(mu_real(&ni, 0.0), Complex64::new(110.0, 0.0));
        assert_eq!(mu_real(&ni, 1e11), Complex64::new(1.0, 0.0));
        let at_ch = mu_real(&ni, ni.mu_omega_ch);
        assert!((at_ch - Complex64::new(55.5, 54.5)).norm() < 1e-12);
    }

    #[test]
    fn mu_real_band_edges() {
        let ni = MaterialSpec::nickel(Model::Drude);
        let mu0 = ni.mu_static;
        let debye = |w: f64| 1.0 + (mu0 - 1.0) / Complex64::new(1.0, -w / ni.mu_omega_ch);

        // Just above ω₁ the Debye branch takes over: jump is debye(ω₁) − μ(0).
        let w1 = ni.mu_omega1;
        let above = mu_real(&ni, w1 * (1.0 + 1e-15));
        let ix = Complex64::new(0.0, w1 / ni.mu_omega_ch);
        let expected_jump = (mu0 - 1.0) * ix / (1.0 - ix);
        assert!(((debye(w1) - mu0) - expected_jump).norm() < 1e-12);
        assert!((above - debye(w1)).norm() < 1e-9);
        assert_eq!(mu_real(&ni, w1), Complex64::new(mu0, 0.0));

        // At ω₂ the last Debye value drops to exactly 1.
        let w2 = ni.mu_omega2;
        assert!((mu_real(&ni, w2) - debye(w2)).norm() < 1e-15);
        let jump = mu_real(&ni, w2) - mu_real(&ni, w2 * (1.0 + 1e-12));
        let expected = (mu0 - 1.0) / Complex64::new(1.0, -w2 / ni.mu_omega_ch);
        assert!((jump - expected).norm() < 1e-12);
    }

    #[test]
    fn mu_real_passive_and_monotone_in_band() {
        let ni = MaterialSpec::nickel(Model::Drude);
        let mut prev = f64::INFINITY;
        let n = 400;
        for i in 0..=n {
            let w = 1e3 * (1e12f64 / 1e3).powf(i as f64 / n as f64);
            let mu = mu_real(&ni, w);
            assert!(mu.im >= 0.0);
            assert!(mu.norm() <= prev + 1e-12);
            prev = mu.norm();
        }
    }

    #[test]
    fn unit_static_permeability_is_trivial() {
        let ni = MaterialSpec::nickel(Model::Drude).with_mu_static(1.0);
        for w in [0.0, 1e5, 1e7, 1e9, 1e12] {
            assert_eq!(mu_real(&ni, w), Complex64::new(1.0, 0.0));
        }
        assert_eq!(mu_matsubara(&ni, 0), 1.0);
    }
}

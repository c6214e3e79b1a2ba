//! Physical constants and the few unit conversions used at the input boundary.
//!
//! Everything inside the engines is SI: frequencies in rad/s, separations in
//! meters, pressures in Pa. Electronvolts only appear in material presets and
//! configuration files.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fundamental constants (CODATA 2018, exact SI values where defined).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Boltzmann constant, J/K.
    pub k_b: f64,
    /// Speed of light in vacuum, m/s.
    pub c: f64,
    /// Joules per electronvolt.
    pub ev: f64,
}

impl PhysicalConstants {
    pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
        hbar: 1.054_571_817e-34,
        k_b: 1.380_649e-23,
        c: 299_792_458.0,
        ev: 1.602_176_634e-19,
    };

    /// Label stored in output metadata.
    pub const VERSION: &'static str = "CODATA-2018";
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA_2018
    }
}

/// The constants every engine uses.
pub const CONSTANTS: PhysicalConstants = PhysicalConstants::CODATA_2018;

pub const HBAR: f64 = CONSTANTS.hbar;
pub const K_B: f64 = CONSTANTS.k_b;
pub const C: f64 = CONSTANTS.c;
pub const EV: f64 = CONSTANTS.ev;

pub const MICROMETER: f64 = 1e-6;

/// Converts an energy ħω in eV to the angular frequency ω in rad/s.
pub fn ev_to_angular_frequency(energy_ev: f64) -> Result<f64> {
    if !(energy_ev >= 0.0) || !energy_ev.is_finite() {
        return Err(Error::domain("energy (eV)", energy_ev));
    }
    Ok(energy_ev * EV / HBAR)
}

/// Inverse of [`ev_to_angular_frequency`].
pub fn angular_frequency_to_ev(omega: f64) -> Result<f64> {
    if !(omega >= 0.0) || !omega.is_finite() {
        return Err(Error::domain("angular frequency (rad/s)", omega));
    }
    Ok(omega * HBAR / EV)
}

/// Matsubara frequency ξ_l = 2π k_B T l / ħ.
pub fn matsubara_frequency(l: usize, temperature: f64) -> Result<f64> {
    if !(temperature > 0.0) || !temperature.is_finite() {
        return Err(Error::domain("temperature (K)", temperature));
    }
    Ok(l as f64 * first_matsubara(temperature))
}

#[inline]
pub(crate) fn first_matsubara(temperature: f64) -> f64 {
    2.0 * PI * K_B * temperature / HBAR
}

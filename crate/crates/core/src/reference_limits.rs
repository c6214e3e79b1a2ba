//! Closed-form limits used as oracles: the classical (l = 0) limit of the
//! Matsubara sum, the ideal-metal pressure at zero temperature, and the
//! trilogarithm they need.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::materials::Model;
use crate::reflection::{r_zero_frequency, Polarization};
use crate::system::PlateSystem;
use crate::units::{C, HBAR, K_B};

/// ζ(3), Apéry's constant.
pub const ZETA3: f64 = 1.202_056_903_159_594_285_399_738_161_511_449_99;

const ZETA2: f64 = PI * PI / 6.0;

/// ζ(3 − k) for k = 3, 4, ..., 22 (odd negative arguments only; the even
/// ones vanish). Values −B_{n+1}/(n+1) from the Bernoulli numbers.
const ZETA_NEG: [(i32, f64); 11] = [
    (3, -0.5),                              // ζ(0)
    (4, -1.0 / 12.0),                       // ζ(−1)
    (6, 1.0 / 120.0),                       // ζ(−3)
    (8, -1.0 / 252.0),                      // ζ(−5)
    (10, 1.0 / 240.0),                      // ζ(−7)
    (12, -1.0 / 132.0),                     // ζ(−9)
    (14, 691.0 / 32760.0),                  // ζ(−11)
    (16, -1.0 / 12.0),                      // ζ(−13)
    (18, 3617.0 / 8160.0),                  // ζ(−15)
    (20, -43867.0 / 14364.0),               // ζ(−17)
    (22, 174611.0 / 6600.0),                // ζ(−19)
];

/// Li₃(x) = Σ xⁿ/n³ for −1 ≤ x ≤ 1.
///
/// Direct series for |x| ≤ 1/2, the logarithmic expansion about x = 1 above,
/// and the duplication identity Li₃(x) + Li₃(−x) = Li₃(x²)/4 below −1/2.
pub fn polylog3(x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::domain("polylog argument", x));
    }
    Ok(li3(x))
}

fn li3(x: f64) -> f64 {
    if x.abs() <= 0.5 {
        li3_series(x)
    } else if x > 0.0 {
        li3_near_one(x)
    } else {
        0.25 * li3(x * x) - li3_near_one(-x)
    }
}

fn li3_series(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut pow = x;
    for n in 1..200 {
        let nf = n as f64;
        let term = pow / (nf * nf * nf);
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
        pow *= x;
    }
    sum
}

fn li3_near_one(x: f64) -> f64 {
    // Li₃(e^μ) = ζ(3) + ζ(2)μ + (3/2 − ln(−μ))μ²/2 + Σ_{k≥3} ζ(3−k)μᵏ/k!
    let mu = x.ln();
    if mu == 0.0 {
        return ZETA3;
    }
    let mut sum = ZETA3 + ZETA2 * mu + (1.5 - (-mu).ln()) * mu * mu / 2.0;
    for &(k, z) in ZETA_NEG.iter() {
        sum += z * mu.powi(k) / factorial(k);
    }
    sum
}

fn factorial(k: i32) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

/// Classical-limit pressure of one polarization: only the l = 0 term
/// survives, −(k_BT/8πa³)·Li₃(r₁(0)·r₂(0)).
///
/// Only the constant zero-frequency coefficients (TM, and TE for the Drude
/// model) admit this closed form; TE with the plasma model is rejected.
pub fn classical_limit(pol: Polarization, sys: &PlateSystem, model: Model) -> Result<ClassicalLimitResult> {
    if pol == Polarization::Te && model == Model::Plasma {
        return Err(Error::InvalidNumerics(
            "classical limit with constant reflection needs TM or the Drude model".into(),
        ));
    }
    let s = sys.with_model(model);
    let r1 = r_zero_frequency(pol, &s.plate1, 1.0)?;
    let r2 = r_zero_frequency(pol, &s.plate2, 1.0)?;
    let r1r2 = r1 * r2;
    let value = -K_B * sys.temperature / (8.0 * PI * sys.a.powi(3)) * polylog3(r1r2)?;
    Ok(ClassicalLimitResult { pol, r1r2, value })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalLimitResult {
    pub pol: Polarization,
    /// Product of the two zero-frequency reflection coefficients.
    pub r1r2: f64,
    /// Pressure in Pa.
    pub value: f64,
}

/// Zero-temperature pressure between ideal metals, −π²ħc/(240a⁴).
pub fn ideal_metal_zero_t(a: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain("separation a (m)", a));
    }
    Ok(-PI * PI * HBAR * C / (240.0 * a.powi(4)))
}

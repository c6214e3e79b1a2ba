//! Brute-force oracles written directly from the Lifshitz formulas, sharing
//! no code with the engines.

#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use lifshitz::matsubara::Y_WINDOW;
use lifshitz::{Model, NumericsConfig, PlateSystem, Polarization};

pub const HBAR: f64 = 1.054_571_817e-34;
pub const KB: f64 = 1.380_649e-23;
pub const C: f64 = 299_792_458.0;
pub const EV: f64 = 1.602_176_634e-19;

#[derive(Clone, Copy)]
pub struct Metal {
    pub wp: f64,
    pub gamma: f64,
    pub mu0: f64,
}

pub const AU: Metal = Metal {
    wp: 9.0 * EV / HBAR,
    gamma: 0.035 * EV / HBAR,
    mu0: 1.0,
};
pub const NI: Metal = Metal {
    wp: 4.89 * EV / HBAR,
    gamma: 0.0436 * EV / HBAR,
    mu0: 110.0,
};
pub const W1: f64 = 2.0 * PI * 1e5;
pub const W2: f64 = 6.0 * PI * 1e9;
pub const WCH: f64 = 2.0 * PI * 1e7;

pub fn systems(a: f64) -> [(&'static str, PlateSystem, Metal, Metal); 3] {
    [
        ("Au-Ni", PlateSystem::au_ni(a), AU, NI),
        ("Ni-Ni", PlateSystem::ni_ni(a), NI, NI),
        ("Au-Au", PlateSystem::au_au(a), AU, AU),
    ]
}

// ---- Matsubara terms -------------------------------------------------------

/// Reflection at imaginary frequency; q, xi in physical units (1/m, rad/s).
pub fn r_imag(pol: Polarization, m: Metal, model: Model, l: usize, xi: f64, q: f64, a: f64) -> f64 {
    if l == 0 {
        return match (pol, model) {
            (Polarization::Tm, _) => 1.0,
            (Polarization::Te, Model::Drude) => (m.mu0 - 1.0) / (m.mu0 + 1.0),
            (Polarization::Te, Model::Plasma) => {
                let p = (q * q + m.mu0 * m.wp * m.wp / (C * C)).sqrt();
                let _ = a;
                (m.mu0 * q - p) / (m.mu0 * q + p)
            }
        };
    }
    let eps = match model {
        Model::Drude => 1.0 + m.wp * m.wp / (xi * (xi + m.gamma)),
        Model::Plasma => 1.0 + m.wp * m.wp / (xi * xi),
    };
    let p = (q * q + (eps - 1.0) * xi * xi / (C * C)).sqrt();
    match pol {
        Polarization::Tm => (eps * q - p) / (eps * q + p),
        Polarization::Te => (q - p) / (q + p),
    }
}

/// ∫ y² R e^{−y}/(1 − R e^{−y}) dy over [y0, y0 + 40] by the trapezoid rule.
pub fn term_trapezoid(pol: Polarization, m1: Metal, m2: Metal, model: Model, l: usize, a: f64, nodes: usize) -> f64 {
    let xi = 2.0 * PI * KB * 300.0 * l as f64 / HBAR;
    let y0 = 2.0 * a * xi / C;
    let h = Y_WINDOW / (nodes - 1) as f64;
    let f = |y: f64| {
        let q = y / (2.0 * a);
        let r = r_imag(pol, m1, model, l, xi, q, a) * r_imag(pol, m2, model, l, xi, q, a);
        if y == 0.0 {
            // y²·r/(e^y − r) → 0 for r < 1 and → y for r = 1.
            return 0.0;
        }
        y * y * r / (y.exp() - r)
    };
    let inner: f64 = (1..nodes - 1).map(|i| f(y0 + i as f64 * h)).sum();
    h * (inner + 0.5 * (f(y0) + f(y0 + Y_WINDOW)))
}

// ---- Evanescent double integral --------------------------------------------

pub fn eps_real(m: Metal, model: Model, omega: f64) -> Complex64 {
    let wp2 = Complex64::new(m.wp * m.wp, 0.0);
    match model {
        Model::Drude => 1.0 - wp2 / (omega * Complex64::new(omega, m.gamma)),
        Model::Plasma => 1.0 - wp2 / (omega * omega),
    }
}

pub fn mu_real(m: Metal, omega: f64) -> Complex64 {
    if omega <= W1 {
        Complex64::new(m.mu0, 0.0)
    } else if omega <= W2 {
        1.0 + (m.mu0 - 1.0) / Complex64::new(1.0, -omega / WCH)
    } else {
        Complex64::new(1.0, 0.0)
    }
}

pub struct Evanescent {
    pub pol: Polarization,
    pub m1: Metal,
    pub m2: Metal,
    pub model: Model,
    pub a: f64,
}

impl Evanescent {
    pub fn omega_c(&self) -> f64 {
        C / (2.0 * self.a)
    }

    /// (w + t)·√(w² + 2wt)·Im[r₁r₂e^{−s}/(1 − r₁r₂e^{−s})].
    pub fn integrand(&self, t: f64, w: f64) -> f64 {
        let omega = self.omega_c() * t;
        let s = (w * w + 2.0 * w * t).sqrt();
        let r = |m: Metal| {
            let eps = eps_real(m, self.model, omega);
            let mu = mu_real(m, omega);
            let p = ((w + t) * (w + t) - eps * mu * t * t).sqrt();
            let k = match self.pol {
                Polarization::Tm => eps,
                Polarization::Te => mu,
            };
            (k * s - p) / (k * s + p)
        };
        let rr = r(self.m1) * r(self.m2) * (-s).exp();
        (w + t) * s * (rr / (1.0 - rr)).im
    }

    /// Composite Simpson in ln w over [1e-9·min(t, 1/t), w_max] at `per_efold`
    /// intervals per unit of ln w, eight times denser within 1.5 e-folds of
    /// each single-interface surface-plasmon pole.
    pub fn inner(&self, t: f64, w_max: f64, per_efold: f64) -> f64 {
        let lo = (1e-9 * t.min(1.0 / t)).ln();
        let hi = w_max.ln();
        let mut cuts = vec![lo, hi];
        if self.pol == Polarization::Tm {
            for m in [self.m1, self.m2] {
                let eps = eps_real(m, self.model, self.omega_c() * t);
                if eps.re < -1.0 {
                    let s = t / (-1.0 - eps.re).sqrt();
                    let v = ((t * t + s * s).sqrt() - t).ln();
                    cuts.extend([v - 1.5, v + 1.5]);
                }
            }
        }
        let mut cuts: Vec<f64> = cuts.into_iter().map(|c| c.clamp(lo, hi)).collect();
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let dense = |x: f64| cuts.len() > 2 && self.near_pole(t, x);
        cuts.windows(2)
            .filter(|c| c[1] > c[0])
            .map(|c| {
                let density = if dense(0.5 * (c[0] + c[1])) { 8.0 * per_efold } else { per_efold };
                simpson(|v| {
                    let w = v.exp();
                    w * self.integrand(t, w)
                }, c[0], c[1], density)
            })
            .sum()
    }

    pub fn near_pole(&self, t: f64, v: f64) -> bool {
        [self.m1, self.m2].iter().any(|&m| {
            let eps = eps_real(m, self.model, self.omega_c() * t);
            eps.re < -1.0 && {
                let s = t / (-1.0 - eps.re).sqrt();
                (v - ((t * t + s * s).sqrt() - t).ln()).abs() < 1.5
            }
        })
    }

    /// Force in Pa over t ∈ [t_min, t_hi], split at the permeability band
    /// edges; densities are Simpson intervals per unit of ln t and ln w. The
    /// plasmonic band 1 ≤ t ≤ 2ω_p/ω_c gets ten times the outer density.
    pub fn force(&self, t_min: f64, t_hi: f64, w_max: f64, outer_density: f64, inner_density: f64) -> f64 {
        let beta = HBAR * C / (4.0 * self.a * KB * 300.0);
        let band = (0.0, (2.0 * self.m1.wp.max(self.m2.wp) / self.omega_c()).ln());
        let (lo, hi) = (t_min.ln(), t_hi.ln());
        let mut edges = vec![lo, hi, band.0, band.1];
        for w in [W1, W2] {
            edges.push((w / self.omega_c()).ln());
        }
        edges.retain(|&u| u >= lo && u <= hi);
        edges.sort_by(f64::total_cmp);
        edges.dedup();
        let total: f64 = edges
            .windows(2)
            .map(|e| {
                let mid = 0.5 * (e[0] + e[1]);
                let density = if mid > band.0 && mid < band.1 { 10.0 * outer_density } else { outer_density };
                simpson(
                    |u| {
                        let t = u.exp();
                        t / (beta * t).tanh() * self.inner(t, w_max, inner_density)
                    },
                    e[0] + EDGE_GAP,
                    e[1] - EDGE_GAP,
                    density,
                )
            })
            .sum();
        -HBAR * C / (32.0 * PI * PI * self.a.powi(4)) * total
    }
}

// Keeps samples off the permeability steps, where rounding in exp(ln t)
// would pick either branch.
const EDGE_GAP: f64 = 1e-10;

pub fn simpson(f: impl Fn(f64) -> f64 + Sync, lo: f64, hi: f64, per_unit: f64) -> f64 {
    let mut n = ((hi - lo) * per_unit).ceil() as usize;
    n = (n + n % 2).max(2);
    let h = (hi - lo) / n as f64;
    let sum: f64 = (0..=n)
        .into_par_iter()
        .map(|i| {
            let w = if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            w * f(lo + i as f64 * h)
        })
        .sum();
    sum * h / 3.0
}

pub fn f_ref(a: f64) -> f64 {
    KB * 300.0 * 1.202_056_903_159_594 / (8.0 * PI * a.powi(3))
}

/// Richardson-extrapolated Simpson value of the Drude evanescent force over
/// the engine's t range, with the size of the extrapolation step relative to
/// max(|oracle|, 1e-3·F_ref).
pub fn evanescent_oracle(pol: Polarization, m1: Metal, m2: Metal, a: f64, cfg: &NumericsConfig) -> (f64, f64) {
    let o = Evanescent {
        pol,
        m1,
        m2,
        model: Model::Drude,
        a,
    };
    let t_hi = cfg.t_max.max(cfg.plasma_cutoff * m1.wp.max(m2.wp) / o.omega_c());
    let coarse = o.force(cfg.t_min_cutoff, t_hi, cfg.w_max, 20.0, 40.0);
    let fine = o.force(cfg.t_min_cutoff, t_hi, cfg.w_max, 40.0, 80.0);
    let correction = (fine - coarse) / 15.0;
    let oracle = fine + correction;
    (oracle, correction.abs() / oracle.abs().max(1e-3 * f_ref(a)))
}

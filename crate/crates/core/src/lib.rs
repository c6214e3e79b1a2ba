//! Casimir pressure between parallel metal plates from the Lifshitz theory.
//!
//! Two equivalent formulations are implemented. The Matsubara engine
//! ([`matsubara`]) sums TM and TE contributions over imaginary frequencies.
//! The real-frequency engine ([`realfreq`]) integrates the evanescent-wave
//! fraction of each polarization directly; the propagating fraction follows
//! as the difference. Permittivities follow the Drude or plasma model, and
//! magnetic plates (Ni) carry a static/Debye permeability.

pub mod error;
pub mod figures_data;
pub mod materials;
pub mod matsubara;
pub mod quadrature;
pub mod realfreq;
pub mod reference_limits;
pub mod reflection;
pub mod system;
pub mod units;
pub mod validation;

pub use error::{Error, Result};
pub use materials::{MaterialSpec, Model};
pub use reflection::Polarization;
pub use system::{ForceBreakdown, InnerQuadrature, NumericsConfig, PlateSystem, Ratios};

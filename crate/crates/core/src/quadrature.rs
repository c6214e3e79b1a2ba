//! Globally adaptive Gauss-Kronrod (G7/K15) quadrature on finite intervals.
//!
//! The interval list is seeded with caller-supplied breakpoints (known
//! discontinuities, scale changes); the panel with the largest error estimate
//! is bisected until the summed error satisfies the absolute/relative target
//! or the panel budget runs out. Error estimates follow the QUADPACK recipe.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Error targets for one adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_panels: usize,
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64, max_panels: usize) -> Self {
        Tolerance {
            abs,
            rel,
            max_panels,
        }
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    /// Estimated absolute error.
    pub error: f64,
    /// Integral of |f|, from the Kronrod rule.
    pub abs_value: f64,
    pub panels: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
    abs_value: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    // Largest error first; ties broken by position so the order is total and
    // the refinement sequence is deterministic.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut err = err.abs();
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    err
}

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, lo: f64, hi: f64) -> Panel {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut res_g = fc * WG[3];
    let mut res_k = fc * WGK[7];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let h = half.abs();
    let value = res_k * half;
    let abs_value = res_abs * h;
    Panel {
        lo,
        hi,
        value,
        error: rescale_error((res_k - res_g) * half, abs_value, res_asc * h),
        abs_value,
    }
}

/// Integrates `f` over `[lo, hi]`, starting from panels split at the given
/// interior breakpoints (points outside the open interval are ignored).
pub fn integrate<F>(mut f: F, lo: f64, hi: f64, breakpoints: &[f64], tol: Tolerance) -> Result<Estimate>
where
    F: FnMut(f64) -> f64,
{
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(Error::InvalidNumerics(format!(
            "integration bounds must be finite and ordered, got [{lo:e}, {hi:e}]"
        )));
    }
    if lo == hi {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
            abs_value: 0.0,
            panels: 0,
        });
    }

    let mut edges: Vec<f64> = std::iter::once(lo)
        .chain(breakpoints.iter().copied().filter(|&b| b > lo && b < hi))
        .chain(std::iter::once(hi))
        .collect();
    edges.sort_by(f64::total_cmp);
    edges.dedup();

    let mut heap = BinaryHeap::with_capacity(2 * tol.max_panels.max(edges.len()));
    // Panels too narrow to bisect further in floating point.
    let mut frozen: Vec<Panel> = Vec::new();
    for pair in edges.windows(2) {
        heap.push(gk15(&mut f, pair[0], pair[1]));
    }

    let (mut value, mut error, mut abs_value) = totals(heap.iter());
    loop {
        let panels = heap.len() + frozen.len();
        // Below ~100 ulp of ∫|f| the error estimate is roundoff, not truncation.
        let target = tol
            .abs
            .max(tol.rel * value.abs())
            .max(100.0 * f64::EPSILON * abs_value);
        if error <= target || heap.is_empty() {
            let (value, error, abs_value) = totals(heap.iter().chain(frozen.iter()));
            return Ok(Estimate {
                value,
                error,
                abs_value,
                panels,
            });
        }
        if panels >= tol.max_panels {
            let (value, error, _) = totals(heap.iter().chain(frozen.iter()));
            return Err(Error::QuadratureNotConverged {
                panels,
                estimate: value,
                error_bound: error,
            });
        }
        let worst = heap.pop().expect("non-empty heap");
        let mid = 0.5 * (worst.lo + worst.hi);
        if !(mid > worst.lo && mid < worst.hi)
            || (worst.hi - worst.lo) <= 4.0 * f64::EPSILON * mid.abs().max(f64::MIN_POSITIVE)
        {
            // Cannot refine further; its error stays in the budget but it is
            // no longer a bisection candidate.
            frozen.push(worst);
            continue;
        }
        let left = gk15(&mut f, worst.lo, mid);
        let right = gk15(&mut f, mid, worst.hi);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        abs_value += left.abs_value + right.abs_value - worst.abs_value;
        heap.push(left);
        heap.push(right);
        if heap.len() % 64 == 0 {
            // Re-sum occasionally so the running totals do not drift.
            (value, error, abs_value) = totals(heap.iter().chain(frozen.iter()));
        }
    }
}

fn totals<'a>(panels: impl Iterator<Item = &'a Panel>) -> (f64, f64, f64) {
    // Sum in position order so the result does not depend on heap layout.
    let mut v: Vec<&Panel> = panels.collect();
    v.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    v.iter().fold((0.0, 0.0, 0.0), |(s, e, a), p| {
        (s + p.value, e + p.error, a + p.abs_value)
    })
}

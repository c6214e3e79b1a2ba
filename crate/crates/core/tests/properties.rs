use proptest::prelude::*;

use lifshitz::figures_data::{lin_grid, log_grid, sweep_forces};
use lifshitz::materials::{eps_imaginary, eps_real, mu_real};
use lifshitz::matsubara::force_total;
use lifshitz::realfreq::force_breakdown;
use lifshitz::reference_limits::{polylog3, ZETA3};
use lifshitz::reflection::{r_imag, r_real_dimensionless, DimensionlessPoint, ImagAxisPoint};
use lifshitz::{MaterialSpec, Model, NumericsConfig, PlateSystem, Polarization};

fn material() -> impl Strategy<Value = MaterialSpec> {
    (prop::bool::ANY, prop::bool::ANY).prop_map(|(ni, drude)| {
        let model = if drude { Model::Drude } else { Model::Plasma };
        if ni {
            MaterialSpec::nickel(model)
        } else {
            MaterialSpec::gold(model)
        }
    })
}

fn pol() -> impl Strategy<Value = Polarization> {
    prop::bool::ANY.prop_map(|tm| if tm { Polarization::Tm } else { Polarization::Te })
}

proptest! {
    #[test]
    fn eps_real_is_passive(m in material(), lw in 3.0f64..17.0) {
        let e = eps_real(&m, 10f64.powf(lw)).unwrap();
        match m.eps_model {
            Model::Drude => prop_assert!(e.im > 0.0),
            Model::Plasma => prop_assert_eq!(e.im, 0.0),
        }
        prop_assert!(e.re < 1.0);
    }

    #[test]
    fn eps_imaginary_decreases(m in material(), lx in 10.0f64..17.0, step in 1.001f64..10.0) {
        let x = 10f64.powf(lx);
        let e1 = eps_imaginary(&m, x).unwrap();
        let e2 = eps_imaginary(&m, x * step).unwrap();
        prop_assert!(e1 > 1.0 && e2 > 1.0);
        prop_assert!(e2 < e1);
    }

    #[test]
    fn mu_real_between_one_and_static(m in material(), lw in 3.0f64..12.0) {
        let mu = mu_real(&m, 10f64.powf(lw));
        prop_assert!(mu.im >= 0.0);
        prop_assert!(mu.re >= 1.0 && mu.re <= m.mu_static);
    }

    #[test]
    fn evanescent_reflection_is_passive(
        m in material(),
        p in pol(),
        lt in -8.0f64..4.0,
        lw in -6.0f64..2.0,
        a_um in 0.1f64..10.0,
    ) {
        let point = DimensionlessPoint { t: 10f64.powf(lt), w: 10f64.powf(lw), a: a_um * 1e-6 };
        let r = r_real_dimensionless(p, &point, &m).unwrap();
        prop_assert!(r.is_finite());
        prop_assert!(r.im >= -1e-12 * r.norm().max(1.0), "Im r = {}", r.im);
        if p == Polarization::Te {
            prop_assert!(r.norm() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn matsubara_reflection_bounds(m in material(), l in 1usize..500, lk in 3.0f64..9.0) {
        let point = ImagAxisPoint::new(l, 300.0, 10f64.powf(lk)).unwrap();
        let tm = r_imag(Polarization::Tm, &point, &m).unwrap();
        let te = r_imag(Polarization::Te, &point, &m).unwrap();
        prop_assert!((0.0..=1.0).contains(&tm));
        prop_assert!((-1.0..=0.0).contains(&te));
    }

    #[test]
    fn polylog3_is_increasing(x in -1.0f64..1.0, dx in 1e-6f64..0.5) {
        let y = (x + dx).min(1.0);
        prop_assume!(y > x);
        prop_assert!(polylog3(y).unwrap() > polylog3(x).unwrap());
        prop_assert!(polylog3(x).unwrap() < ZETA3);
    }

    #[test]
    fn grids_are_increasing_with_exact_ends(lo in 0.01f64..10.0, span in 1.01f64..1e4, n in 2usize..200) {
        let hi = lo * span;
        for g in [log_grid(lo, hi, n).unwrap(), lin_grid(lo, hi, n).unwrap()] {
            prop_assert_eq!(g.len(), n);
            prop_assert_eq!(g[0], lo);
            prop_assert_eq!(g[n - 1], hi);
            prop_assert!(g.windows(2).all(|w| w[1] > w[0]));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn force_is_symmetric_under_plate_swap(a_um in 0.3f64..8.0, drude in prop::bool::ANY) {
        let model = if drude { Model::Drude } else { Model::Plasma };
        let cfg = NumericsConfig::default();
        let a = a_um * 1e-6;
        let f = force_total(&PlateSystem::au_ni(a), model, &cfg).unwrap();
        let swapped = PlateSystem::new(MaterialSpec::nickel(model), MaterialSpec::gold(model), a, 300.0).unwrap();
        let g = force_total(&swapped, model, &cfg).unwrap();
        prop_assert!(((f.f_total - g.f_total) / f.f_total).abs() < 1e-12);
        prop_assert!(f.f_total < 0.0);
    }

    #[test]
    fn breakdown_fractions_sum_to_totals(a_um in 0.5f64..6.0, ni in prop::bool::ANY) {
        let a = a_um * 1e-6;
        let sys = if ni { PlateSystem::ni_ni(a) } else { PlateSystem::au_ni(a) };
        let b = force_breakdown(&sys, Model::Drude, &NumericsConfig::default()).unwrap();
        for (evan, prop, total) in [
            (b.f_tm_evan.unwrap(), b.f_tm_prop.unwrap(), b.f_tm),
            (b.f_te_evan.unwrap(), b.f_te_prop.unwrap(), b.f_te),
        ] {
            // Equal up to the rounding of prop = total − evan.
            prop_assert!((evan + prop - total).abs() <= 4.0 * f64::EPSILON * (evan.abs() + prop.abs()));
        }
        prop_assert_eq!(b.f_tm + b.f_te, b.f_total);
    }

    #[test]
    fn sweep_csv_is_deterministic(lo in 0.5f64..2.0, n in 1usize..4) {
        let grid: Vec<f64> = (0..n).map(|i| lo * (1.0 + i as f64)).collect();
        let sys = PlateSystem::au_ni(1e-6);
        let cfg = NumericsConfig::default();
        let a = sweep_forces(&sys, Model::Drude, &grid, &cfg, false).unwrap().to_csv();
        let b = sweep_forces(&sys, Model::Drude, &grid, &cfg, false).unwrap().to_csv();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.lines().count(), n + 1);
        for (line, &a_um) in a.lines().skip(1).zip(&grid) {
            let cells: Vec<&str> = line.split(',').collect();
            prop_assert_eq!(cells[0].parse::<f64>().unwrap(), a_um);
            prop_assert!(cells.iter().skip(2).take(3).all(|c| c.parse::<f64>().is_ok()));
        }
    }
}

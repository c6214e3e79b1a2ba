mod common;

use common::*;
use lifshitz::matsubara::matsubara_term;
use lifshitz::realfreq::evanescent;
use lifshitz::{Model, NumericsConfig, Polarization};

#[test]
fn matsubara_terms_match_trapezoid() {
    let cfg = NumericsConfig::default();
    let a = 1e-6;
    let mut worst: f64 = 0.0;
    for (name, sys, m1, m2) in systems(a) {
        for model in Model::ALL {
            let s = sys.with_model(model);
            for pol in Polarization::BOTH {
                for l in 0..=3 {
                    let oracle = term_trapezoid(pol, m1, m2, model, l, a, 1_000_000);
                    let got = matsubara_term(pol, &s, l, &cfg).unwrap().value;
                    if oracle == 0.0 {
                        assert_eq!(got, 0.0, "{name} {model} {pol:?} l={l}");
                        continue;
                    }
                    let rel = ((got - oracle) / oracle).abs();
                    worst = worst.max(rel);
                    assert!(rel < 1e-6, "{name} {model} {pol:?} l={l}: {got} vs {oracle} ({rel:e})");
                }
            }
        }
    }
    println!("worst relative deviation from trapezoid: {worst:e}");
}

#[test]
fn evanescent_matches_dense_grid() {
    let cfg = NumericsConfig::default();
    for a_um in [1.0, 3.0] {
        let a = a_um * 1e-6;
        for (name, sys, m1, m2) in systems(a) {
            for pol in Polarization::BOTH {
                let engine = evanescent(pol, &sys, Model::Drude, &cfg).unwrap();
                let (oracle, self_dev) = evanescent_oracle(pol, m1, m2, a, &cfg);
                // The extrapolation step must sit well below the comparison bound.
                assert!(self_dev < 2e-5, "{name} {pol:?} {a_um} um: oracle unconverged ({self_dev:e})");
                let dev = (engine.force - oracle).abs() / oracle.abs();
                println!(
                    "{name} {pol:?} a={a_um} um: engine {:e} oracle {oracle:e} rel {dev:e} (oracle correction {self_dev:e})",
                    engine.force
                );
                assert!(dev < 1e-4, "{name} {pol:?} {a_um} um: {} vs {oracle} ({dev:e})", engine.force);
            }
        }
    }
}

// digits kept exactly as the oracle printed them
#![allow(clippy::excessive_precision)]

use std::f64::consts::PI;

use spinquat::spin::{pms_propagate, PmsConfig};
use spinquat::Vector3;

// |P_N − ẑ| from an independent 50-digit chain product
const RESONANT: f64 = 0.051486111304468857;
const SLOW_95: f64 = 0.26445938900435121;
const SLOW_90: f64 = 0.57378722649591278;
const FINE: f64 = 0.023451868693238934;

fn closure(n: usize, xi1: f64, xi2: f64) -> f64 {
    let cfg = PmsConfig::new(n, xi1, xi2, PI / n as f64).unwrap();
    pms_propagate(&cfg, Vector3::unit_z())
        .unwrap()
        .closure_distance(Vector3::unit_z())
        .unwrap()
}

#[test]
fn frozen_closure_distances() {
    for (got, want) in [
        (closure(21, 0.3, 0.01), RESONANT),
        (closure(21, 0.285, 0.0095), SLOW_95),
        (closure(21, 0.27, 0.009), SLOW_90),
        (closure(210, 0.03, 0.001), FINE),
    ] {
        assert!((got - want).abs() < 1e-9, "{got} vs {want}");
    }
}

#[test]
fn detuning_and_refinement_ordering() {
    let base = closure(21, 0.3, 0.01);
    let cfg = PmsConfig::new(21, 0.3, 0.01, PI / 21.0).unwrap();
    let slower = |f: f64| {
        pms_propagate(&cfg.with_phase_scale(f), Vector3::unit_z())
            .unwrap()
            .closure_distance(Vector3::unit_z())
            .unwrap()
    };
    assert!(slower(0.95) > base);
    assert!(slower(0.9) > slower(0.95));
    assert!(closure(210, 0.03, 0.001) < base);
}

#[test]
fn polarization_flips_at_resonance() {
    let cfg = PmsConfig::new(21, 0.3, 0.01, PI / 21.0).unwrap();
    let traj = pms_propagate(&cfg, Vector3::unit_z()).unwrap();
    let polar = traj.polar.unwrap();
    // the arrow leaves the pole and travels through the lower hemisphere
    let lowest = polar.iter().map(|(p, _)| p.z).fold(f64::INFINITY, f64::min);
    assert!(lowest < 0.0);
    assert!(polar
        .iter()
        .all(|(p, m)| (p.norm() - 1.0).abs() < 1e-12 && (m.norm() - 1.0).abs() < 1e-12));
}

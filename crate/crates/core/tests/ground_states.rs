use std::f64::consts::FRAC_PI_4;

use schwinger_core::bounds::{bound_report, R3Term};
use schwinger_core::harper::{closed_form, fourier_commutation_check, ground_state, theta_scan};

#[test]
fn delta_variances_agree_and_fourier_parity() {
    for n in 2..=12 {
        let g = ground_state(n).unwrap();
        assert!((g.v0_du - g.v0_dv).abs() < 1e-9, "N={n}");
        let f = fourier_commutation_check(n).unwrap();
        assert!(f.comm_norm < 1e-10, "N={n}");
        assert!((f.f0 - 1.0).norm() < 1e-9, "N={n}");
    }
}

#[test]
fn theta_scan_peaks_at_quarter_turn() {
    for n in [3, 4, 7] {
        let s = theta_scan(n, 101).unwrap();
        assert!((s.theta_star - FRAC_PI_4).abs() < 1e-3, "N={n}");
    }
}

#[test]
fn numerical_path_matches_radicals() {
    for n in 2..=6 {
        let g = ground_state(n).unwrap();
        let c = closed_form(n).unwrap();
        assert!((g.h0 - c.h0).abs() < 1e-9);
        assert!((g.s0 - c.expected_s0).abs() < 1e-9);
        assert!((g.r1 - c.expected_r1()).abs() < 1e-9);
    }
    let r1 = ground_state(3).unwrap().r1;
    assert!((r1 - (76.0 - 42.0 * 3f64.sqrt())).abs() < 1e-9);
}

#[test]
fn ground_state_at_four_saturates_r4() {
    let g = ground_state(4).unwrap();
    let p = schwinger_core::SchwingerPair::new(4).unwrap();
    let r = bound_report(&p, &g.density()).unwrap();
    let d = r.delta.unwrap();
    assert!((g.r1 - 4.0).abs() < 1e-9);
    assert!((r.r4 - 2.0).abs() < 1e-12);
    assert!(d.r3.value >= r.r4 - 1e-9);
    assert!(matches!(d.r3.term, R3Term::OnePlusG | R3Term::ScaledF | R3Term::HRatio));
}

use xdeficit::deficit::{oracle_deficit, paper_deficit};
use xdeficit::dynamics::{apply_channel_params, sweep, sweep_with, PhaseFlipChannel};
use xdeficit::measurement::{bloch_from_unitary, BlochMeasurement, UnitaryParams};
use xdeficit::par::Exec;
use xdeficit::xstate::XStateParams;

#[test]
fn every_bloch_direction_has_a_unitary_preimage() {
    let mut worst: f64 = 0.0;
    for i in 0..=40 {
        for j in 0..80 {
            let polar = std::f64::consts::PI * i as f64 / 40.0;
            let azimuth = std::f64::consts::TAU * j as f64 / 80.0;
            let z = BlochMeasurement::from_angles(polar, azimuth);
            let back = bloch_from_unitary(&UnitaryParams::preimage_of(&z)).unwrap();
            let err = (back.z1 - z.z1).abs().max((back.z2 - z.z2).abs()).max((back.z3 - z.z3).abs());
            worst = worst.max(err);
        }
    }
    assert!(worst < 1e-9, "{worst}");
}

#[test]
fn phase_flip_composes_multiplicatively() {
    let x = XStateParams::EXAMPLE;
    for (a, b) in [(0.1, 0.3), (0.25, 0.25), (0.6, 0.05)] {
        let two_steps = apply_channel_params(&apply_channel_params(&x, a).unwrap(), b).unwrap();
        // (1 - a)(1 - b) = 1 - p
        let one_step = apply_channel_params(&x, 1.0 - (1.0 - a) * (1.0 - b)).unwrap();
        assert!((two_steps.c1 - one_step.c1).abs() < 1e-15);
        assert!((two_steps.c2 - one_step.c2).abs() < 1e-15);
    }
}

#[test]
fn time_parametrization_inverts() {
    let ch = PhaseFlipChannel::from_time(0.7, 1.3).unwrap();
    assert!((ch.time().unwrap() - 1.3).abs() < 1e-12);
}

#[test]
fn example_sweep_shape() {
    let records = sweep(&XStateParams::EXAMPLE, 101, false).unwrap();
    assert!((records[0].deficit - 0.130614).abs() < 5e-5);
    assert!(records.windows(2).all(|w| w[1].concurrence <= w[0].concurrence));
    assert!(records.windows(2).all(|w| w[1].deficit <= w[0].deficit + 1e-12));
}

#[test]
fn sweep_is_identical_in_both_exec_modes() {
    let x = XStateParams::EXAMPLE;
    assert_eq!(
        sweep_with(&x, 51, None, Exec::Sequential).unwrap(),
        sweep_with(&x, 51, None, Exec::Parallel).unwrap()
    );
}

#[test]
fn oracle_matches_relaxed_value_on_example() {
    let x = XStateParams::EXAMPLE;
    let relaxed = paper_deficit(&x).unwrap().value;
    let oracle = oracle_deficit(&x, 64, 40).unwrap().value;
    assert!((oracle - relaxed).abs() < 1e-8);
}

//! Acceptance criteria. Each test prints one `[PASS]`/`[FAIL]` line per
//! criterion; run with `cargo test -p xdeficit --test acceptance -- --nocapture`
//! to see them.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use xdeficit::deficit::{
    bell_diagonal_deficit, oracle_deficit, paper_deficit, post_measurement_entropy, theta_feasible_max,
};
use xdeficit::dynamics::{
    apply_channel_params, apply_kraus, find_sudden_death, kraus_completeness, phase_flip_kraus, sweep,
    DEFAULT_SUDDEN_DEATH_TOL,
};
use xdeficit::entanglement::{concurrence_closed, concurrence_general, rho_rhotilde_spectrum, rho_rhotilde_spectrum_closed};
use xdeficit::linalg::{hermitian_eigenvalues, von_neumann_entropy, ComplexMat4, DensityMatrix};
use xdeficit::measurement::{bloch_from_unitary, dephase, post_measurement_spectrum, BlochMeasurement, UnitaryParams};
use xdeficit::report::sweep_svg;
use xdeficit::xstate::XStateParams;

const EXAMPLE: XStateParams = XStateParams::EXAMPLE;

fn verdict(id: &str, ok: bool, detail: String) -> bool {
    println!("[{}] criterion {id}: {detail}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn sorted_desc(mut a: [f64; 4]) -> [f64; 4] {
    a.sort_by(|x, y| y.total_cmp(x));
    a
}

fn max_diff(a: [f64; 4], b: [f64; 4]) -> f64 {
    let (a, b) = (sorted_desc(a), sorted_desc(b));
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[test]
fn criterion_1_worked_example() {
    let start = Instant::now();
    let d = paper_deficit(&EXAMPLE).unwrap();
    let elapsed = start.elapsed();
    let ok_value = (d.value - 0.130614).abs() <= 5e-5;
    let ok_time = elapsed < Duration::from_secs(1);
    assert!(verdict(
        "1",
        ok_value && ok_time,
        format!("deficit = {:.9} (target 0.130614 ± 5e-5), argmin phi = {}, {:?}", d.value, d.argmin_phi(), elapsed)
    ));
}

#[test]
fn criterion_2_sudden_death() {
    let start = Instant::now();
    let p = find_sudden_death(&EXAMPLE, DEFAULT_SUDDEN_DEATH_TOL).unwrap();
    let elapsed = start.elapsed();
    let ok = matches!(p, Some(v) if (v - 0.217617).abs() <= 5e-4) && elapsed < Duration::from_secs(1);
    assert!(verdict("2", ok, format!("p* = {p:?} (target 0.217617 ± 5e-4), {elapsed:?}")));
}

#[test]
fn criterion_3_figure_reproduction() {
    let start = Instant::now();
    let records = sweep(&EXAMPLE, 101, false).unwrap();
    let p_star = find_sudden_death(&EXAMPLE, DEFAULT_SUDDEN_DEATH_TOL).unwrap().unwrap();
    let svg = sweep_svg(&records, Some(p_star));
    let elapsed = start.elapsed();

    let entangled_at_zero = records[0].concurrence > 0.0;
    let dead_after = records.iter().filter(|r| r.p > p_star).all(|r| r.concurrence == 0.0);
    let deficit_ok = records.iter().all(|r| r.deficit.is_finite() && r.deficit > 0.0);
    let min_interior = records.iter().filter(|r| r.p < 1.0).map(|r| r.deficit).fold(f64::INFINITY, f64::min);
    let at_one = records.last().unwrap().deficit;
    let svg_ok = svg.contains(r#"<polyline id="deficit""#) && svg.contains(r#"<polyline id="concurrence""#);
    let ok = records.len() == 101
        && entangled_at_zero
        && dead_after
        && deficit_ok
        && svg_ok
        && elapsed < Duration::from_secs(10);
    assert!(verdict(
        "3",
        ok,
        format!(
            "C(0) = {:.6}, C = 0 beyond p* = {p_star:.6}: {dead_after}, min deficit on p < 1 = {min_interior:e}, deficit(1) = {at_one:e}, svg curves: {svg_ok}, {elapsed:?}",
            records[0].concurrence
        )
    ));
}

#[test]
fn criterion_4_bell_diagonal_consistency() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let b = XStateParams::sample_bell_diagonal(&mut rng);
        let relaxed = paper_deficit(&b).unwrap().value;
        let closed = bell_diagonal_deficit(b.c1, b.c2, b.c3).unwrap();
        worst = worst.max((relaxed - closed).abs());
    }
    assert!(verdict("4", worst < 1e-8, format!("max |relaxed - closed| = {worst:e} over 1000 states (tol 1e-8)")));
}

#[test]
fn criterion_5_closed_forms_vs_matrix_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut a, mut b, mut c, mut d): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    for _ in 0..1000 {
        let p = XStateParams::sample_physical(&mut rng);
        let rho = p.to_density_matrix().unwrap();
        a = a.max(max_diff(p.spectrum_closed().unwrap().to_array(), hermitian_eigenvalues(rho.mat()).unwrap()));

        let z = bloch_from_unitary(&UnitaryParams::sample(&mut rng)).unwrap();
        let closed = post_measurement_spectrum(&p, z.phi(), z.theta(&p)).unwrap();
        let matrix = hermitian_eigenvalues(dephase(&rho, &z).unwrap().mat()).unwrap();
        b = b.max(max_diff(closed, matrix));

        c = c.max(max_diff(rho_rhotilde_spectrum_closed(&p).unwrap(), rho_rhotilde_spectrum(&rho).unwrap()));
        d = d.max((concurrence_closed(&p).unwrap().value - concurrence_general(&rho).unwrap().value).abs());
    }
    let ok = [a, b, c, d].iter().all(|&x| x < 1e-10);
    assert!(verdict(
        "5",
        ok,
        format!("max deviations over 1000 states: (a) {a:e} (b) {b:e} (c) {c:e} (d) {d:e} (tol 1e-10)")
    ));
}

#[test]
fn criterion_6_theta_monotonicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut violations = 0;
    let mut worst = f64::NEG_INFINITY;
    let mut n = 0;
    while n < 10_000 {
        let p = XStateParams::sample_physical(&mut rng);
        let phi: f64 = rng.gen_range(-1.0..=1.0);
        // both radicands nonnegative and all four eigenvalues nonnegative
        let lo = (2.0 * (p.r * p.c3 * phi).abs() - p.r * p.r).max(0.0);
        let hi = theta_feasible_max(&p, phi).min(1.0);
        if !(hi > lo) {
            continue;
        }
        let t1 = rng.gen_range(lo..hi);
        let t2 = rng.gen_range(t1..=hi);
        let f1 = post_measurement_entropy(&p, phi, t1).unwrap();
        let f2 = post_measurement_entropy(&p, phi, t2).unwrap();
        worst = worst.max(f2 - f1);
        if f1 < f2 - 1e-12 {
            violations += 1;
        }
        n += 1;
    }
    assert!(verdict(
        "6",
        violations == 0,
        format!("{violations} violations of f(phi, t1) >= f(phi, t2) - 1e-12 in 10000 samples; max f(t2) - f(t1) = {worst:e}")
    ));
}

#[test]
fn criterion_7_relaxation_bound() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut bound_violations = 0;
    let mut min_gap = f64::INFINITY;
    let mut max_gap: f64 = 0.0;
    let mut strict = 0;
    let mut bell_worst: f64 = 0.0;
    for i in 0..200 {
        let p = if i % 4 == 0 {
            XStateParams::sample_bell_diagonal(&mut rng)
        } else {
            XStateParams::sample_physical(&mut rng)
        };
        let relaxed = paper_deficit(&p).unwrap().value;
        let oracle = oracle_deficit(&p, 256, 40).unwrap().value;
        let gap = oracle - relaxed;
        min_gap = min_gap.min(gap);
        max_gap = max_gap.max(gap);
        if gap < -1e-6 {
            bound_violations += 1;
        }
        if gap > 1e-6 {
            strict += 1;
        }
        if p.is_bell_diagonal() {
            bell_worst = bell_worst.max((oracle - bell_diagonal_deficit(p.c1, p.c2, p.c3).unwrap()).abs());
        }
    }
    let elapsed = start.elapsed();
    let ok = bound_violations == 0 && bell_worst < 1e-5 && elapsed < Duration::from_secs(300);
    assert!(verdict(
        "7",
        ok,
        format!(
            "oracle - relaxed in [{min_gap:e}, {max_gap:e}], {strict}/200 strictly above 1e-6; \
             Bell-diagonal |oracle - closed| max {bell_worst:e} (tol 1e-5); {elapsed:?}"
        )
    ));
}

#[test]
fn criterion_8_channel_consistency() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut entry, mut completeness): (f64, f64) = (0.0, 0.0);
    for _ in 0..500 {
        let x = XStateParams::sample_physical(&mut rng);
        let p: f64 = rng.gen_range(0.0..=1.0);
        let ops = phase_flip_kraus(p).unwrap();
        let kraus_path = apply_kraus(&ops, x.to_density_matrix().unwrap().mat());
        let param_path = apply_channel_params(&x, p).unwrap().to_density_matrix().unwrap();
        entry = entry.max(kraus_path.max_abs_diff(param_path.mat()));
        completeness = completeness.max(kraus_completeness(&ops).max_abs_diff(&ComplexMat4::identity()));
    }
    assert!(verdict(
        "8",
        entry <= 1e-12 && completeness <= 1e-12,
        format!("max entrywise deviation {entry:e}, max |sum K^dagger K - I| {completeness:e} (tol 1e-12)")
    ));
}

#[test]
fn criterion_9_entropy_invariants() {
    let mixed = von_neumann_entropy(&DensityMatrix::maximally_mixed());
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut dephase_drop = f64::NEG_INFINITY;
    let mut relaxed_min = f64::INFINITY;
    let mut oracle_min = f64::INFINITY;
    let mut relaxed_negative = Vec::new();
    for _ in 0..1000 {
        let p = XStateParams::sample_physical(&mut rng);
        let rho = p.to_density_matrix().unwrap();
        let z = BlochMeasurement::from_angles(rng.gen_range(0.0..std::f64::consts::PI), rng.gen_range(0.0..std::f64::consts::TAU));
        let d = dephase(&rho, &z).unwrap();
        dephase_drop = dephase_drop.max(von_neumann_entropy(&rho) - von_neumann_entropy(&d));

        let relaxed = paper_deficit(&p).unwrap().value;
        relaxed_min = relaxed_min.min(relaxed);
        if relaxed < -1e-9 {
            relaxed_negative.push((p, relaxed));
        }
        oracle_min = oracle_min.min(oracle_deficit(&p, 64, 40).unwrap().value);
    }
    let ok_mixed = (mixed - 2.0).abs() <= 1e-12;
    let ok_dephase = dephase_drop <= 1e-10;
    let ok_oracle = oracle_min >= -1e-9;
    let ok_relaxed = relaxed_negative.is_empty();
    for (p, v) in relaxed_negative.iter().take(5) {
        println!("    relaxed deficit {v:.6} < 0 at {:?}", p.as_array());
    }
    assert!(verdict(
        "9",
        ok_mixed && ok_dephase && ok_oracle && ok_relaxed,
        format!(
            "S(I/4) = {mixed}; max S(rho) - S(dephased) = {dephase_drop:e}; min oracle deficit {oracle_min:e}; \
             min relaxed deficit {relaxed_min:e} ({} of 1000 below -1e-9)",
            relaxed_negative.len()
        )
    ));
}

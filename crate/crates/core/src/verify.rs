//! Randomized cross-validation of every closed form against its
//! matrix-level counterpart. Backs the `verify` CLI command.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::deficit::{bell_diagonal_deficit, paper_deficit};
use crate::dynamics::{apply_channel_params, apply_kraus, kraus_completeness, phase_flip_kraus};
use crate::entanglement::{concurrence_closed, concurrence_general, rho_rhotilde_spectrum, rho_rhotilde_spectrum_closed};
use crate::error::Result;
use crate::linalg::{hermitian_eigenvalues, von_neumann_entropy, ComplexMat4};
use crate::measurement::{bloch_from_unitary, dephase, post_measurement_spectrum, UnitaryParams};
use crate::xstate::XStateParams;

/// Maximum observed deviation of one closed-form/oracle pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub samples: usize,
}

impl Check {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Check { name, max_deviation: 0.0, tolerance, samples: 0 }
    }

    fn record(&mut self, deviation: f64) {
        // NaN must register as a breach
        self.max_deviation = if deviation.is_nan() || self.max_deviation.is_nan() {
            f64::NAN
        } else {
            self.max_deviation.max(deviation)
        };
        self.samples += 1;
    }

    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub checks: Vec<Check>,
    /// States whose relaxed deficit came out below `-1e-9`. Reported, not
    /// a breach: the relaxation is only a lower bound on the true deficit.
    pub relaxed_below_zero: usize,
    pub relaxed_min_value: f64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

fn max_sorted_diff(mut a: [f64; 4], mut b: [f64; 4]) -> f64 {
    a.sort_by(|x, y| y.total_cmp(x));
    b.sort_by(|x, y| y.total_cmp(x));
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Runs all checks over `samples` random physical X states drawn from a
/// ChaCha stream seeded with `seed`.
pub fn run_verification(samples: usize, seed: u64) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut spectrum = Check::new("x-state spectrum vs eigenvalues", 1e-10);
    let mut entropy = Check::new("x-state entropy vs matrix entropy", 1e-10);
    let mut post = Check::new("post-measurement spectrum vs dephased matrix", 1e-10);
    let mut rrt = Check::new("rho*rho~ spectrum vs matrix product", 1e-10);
    let mut conc = Check::new("concurrence closed vs general", 1e-10);
    let mut monotone = Check::new("entropy decrease under dephasing", 1e-10);
    let mut bell = Check::new("bell-diagonal relaxed vs closed form", 1e-8);
    let mut channel = Check::new("channel parameter map vs kraus", 1e-12);
    let mut complete = Check::new("kraus completeness", 1e-12);
    let mut relaxed_below_zero = 0;
    let mut relaxed_min_value = f64::INFINITY;

    for _ in 0..samples {
        let p = XStateParams::sample_physical(&mut rng);
        let rho = p.to_density_matrix()?;
        spectrum.record(max_sorted_diff(p.spectrum_closed()?.to_array(), hermitian_eigenvalues(rho.mat())?));
        let s_rho = von_neumann_entropy(&rho);
        entropy.record((p.entropy_closed()? - s_rho).abs());

        let z = bloch_from_unitary(&UnitaryParams::sample(&mut rng))?;
        let dephased = dephase(&rho, &z)?;
        post.record(max_sorted_diff(
            post_measurement_spectrum(&p, z.phi(), z.theta(&p))?,
            dephased.eigenvalues(),
        ));
        monotone.record((s_rho - von_neumann_entropy(&dephased)).max(0.0));

        rrt.record(max_sorted_diff(rho_rhotilde_spectrum_closed(&p)?, rho_rhotilde_spectrum(&rho)?));
        conc.record((concurrence_closed(&p)?.value - concurrence_general(&rho)?.value).abs());

        let b = XStateParams::sample_bell_diagonal(&mut rng);
        bell.record((paper_deficit(&b)?.value - bell_diagonal_deficit(b.c1, b.c2, b.c3)?).abs());

        let strength: f64 = rand::Rng::gen_range(&mut rng, 0.0..=1.0);
        let ops = phase_flip_kraus(strength)?;
        let evolved = apply_channel_params(&p, strength)?.to_density_matrix()?;
        channel.record(apply_kraus(&ops, rho.mat()).max_abs_diff(evolved.mat()));
        complete.record(kraus_completeness(&ops).max_abs_diff(&ComplexMat4::identity()));

        let relaxed = paper_deficit(&p)?.value;
        relaxed_min_value = relaxed_min_value.min(relaxed);
        if relaxed < -1e-9 {
            relaxed_below_zero += 1;
        }
    }
    Ok(VerifyReport {
        seed,
        checks: vec![spectrum, entropy, post, monotone, rrt, conc, bell, channel, complete],
        relaxed_below_zero,
        relaxed_min_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes_and_is_reproducible() {
        let a = run_verification(50, 7).unwrap();
        assert!(a.passed(), "{a:#?}");
        assert_eq!(a, run_verification(50, 7).unwrap());
    }

    #[test]
    fn nan_is_a_breach() {
        let mut c = Check::new("x", 1.0);
        c.record(f64::NAN);
        c.record(0.5);
        assert!(!c.passed());
    }
}

//! One-way deficit: the relaxed one-variable reduction, the Bell-diagonal
//! closed form, and an exhaustive search over the measurement sphere.
//!
//! The reduction writes the post-measurement entropy as `f(phi, theta)`
//! with `phi = z3` and `theta = sum c_i^2 z_i^2`, uses that `f` decreases in
//! `theta`, and pins `theta` at `C^2 = max c_i^2`. That gives a lower bound
//! on the true minimum over measurements; [`oracle_deficit`] computes the
//! true minimum directly so the two can be compared.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{eigvalsh, shannon_bits, von_neumann_entropy};
use crate::measurement::{dephase_matrix, post_measurement_spectrum, spectrum_unchecked, BlochMeasurement};
use crate::optimize::{grid_then_golden, pattern_search_2d};
use crate::par::Exec;
use crate::xstate::XStateParams;

/// Number of equispaced `phi` samples before golden-section refinement.
pub const PHI_GRID: usize = 2001;
/// Final bracket width of the golden-section refinement.
pub const PHI_TOL: f64 = 1e-10;
/// Default latitude resolution of the sphere oracle.
pub const DEFAULT_ORACLE_GRID: usize = 256;
/// Default number of step contractions in the oracle's pattern search.
pub const DEFAULT_REFINE_ITERS: usize = 40;
/// Step contraction factor of the oracle's pattern search.
pub const REFINE_SHRINK: f64 = 0.6;
/// Most negative post-measurement eigenvalue accepted as rounding.
pub const SPECTRUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeficitMethod {
    PaperFormula,
    BellDiagonal,
    SphereOracle,
}

impl DeficitMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            DeficitMethod::PaperFormula => "paper-formula",
            DeficitMethod::BellDiagonal => "bell-diagonal",
            DeficitMethod::SphereOracle => "sphere-oracle",
        }
    }
}

/// Where the minimum was attained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Minimizer {
    Phi(f64),
    Bloch(BlochMeasurement),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeficitResult {
    /// `min_entropy - state_entropy`, bits.
    pub value: f64,
    pub argmin: Minimizer,
    /// Minimal post-measurement entropy, bits.
    pub min_entropy: f64,
    /// `S(rho)`, bits.
    pub state_entropy: f64,
    pub method: DeficitMethod,
    /// True when `theta` had to be lowered below `C^2` at the minimizer to
    /// keep the relaxed spectrum nonnegative. Always false for the oracle.
    pub theta_capped: bool,
}

impl DeficitResult {
    pub fn argmin_phi(&self) -> f64 {
        match self.argmin {
            Minimizer::Phi(phi) => phi,
            Minimizer::Bloch(z) => z.z3,
        }
    }
}

/// `f(phi, theta) = -sum l_i log2 l_i` over [`post_measurement_spectrum`].
pub fn post_measurement_entropy(p: &XStateParams, phi: f64, theta: f64) -> Result<f64> {
    let l = post_measurement_spectrum(p, phi, theta)?;
    spectrum_entropy(&l)
}

fn spectrum_entropy(l: &[f64; 4]) -> Result<f64> {
    let min = l.iter().copied().fold(f64::INFINITY, f64::min);
    if min < -SPECTRUM_TOL {
        return Err(Error::InvalidState(format!(
            "post-measurement spectrum has negative entry {min:e}"
        )));
    }
    Ok(shannon_bits(l.iter().copied()))
}

/// True iff `f(phi, theta1) >= f(phi, theta2) - 1e-12`, i.e. the entropy did
/// not increase going from `theta1` to `theta2 >= theta1`.
pub fn theta_monotonicity_check(p: &XStateParams, phi: f64, theta1: f64, theta2: f64) -> bool {
    match (post_measurement_entropy(p, phi, theta1), post_measurement_entropy(p, phi, theta2)) {
        (Ok(f1), Ok(f2)) => f1 >= f2 - 1e-12,
        _ => false,
    }
}

/// Largest `theta` for which both square-root pairs of the relaxed spectrum
/// stay nonnegative at this `phi`.
pub fn theta_feasible_max(p: &XStateParams, phi: f64) -> f64 {
    let XStateParams { r, s, c3, .. } = *p;
    let lo = (1.0 - s * phi).powi(2) - r * r + 2.0 * r * c3 * phi;
    let hi = (1.0 + s * phi).powi(2) - r * r - 2.0 * r * c3 * phi;
    lo.min(hi)
}

/// `(theta, capped)` with `theta = min(C^2, theta_feasible_max)`.
fn relaxed_theta(p: &XStateParams, phi: f64) -> (f64, bool) {
    let c2 = p.max_abs_c().powi(2);
    let cap = theta_feasible_max(p, phi).max(0.0);
    if cap < c2 {
        (cap, true)
    } else {
        (c2, false)
    }
}

/// `phi -> f(phi, min(C^2, theta_feasible_max(phi)))`.
pub(crate) fn relaxed_entropy(p: &XStateParams, phi: f64) -> f64 {
    let (theta, _) = relaxed_theta(p, phi);
    spectrum_unchecked(p, phi, theta)
        .and_then(|l| spectrum_entropy(&l))
        .unwrap_or(f64::INFINITY)
}

/// Minimizes the relaxed entropy over `phi in [-1, 1]`.
pub(crate) fn minimize_relaxed(p: &XStateParams) -> (f64, f64) {
    grid_then_golden(|phi| relaxed_entropy(p, phi), -1.0, 1.0, PHI_GRID, PHI_TOL)
}

/// One-way deficit from the one-variable reduction:
/// `min_phi f(phi, C^2) - S(rho)`.
pub fn paper_deficit(p: &XStateParams) -> Result<DeficitResult> {
    p.check_physical()?;
    let state_entropy = p.entropy_closed()?;
    let (phi, min_entropy) = minimize_relaxed(p);
    Ok(DeficitResult {
        value: min_entropy - state_entropy,
        argmin: Minimizer::Phi(phi),
        min_entropy,
        state_entropy,
        method: if p.is_bell_diagonal() {
            DeficitMethod::BellDiagonal
        } else {
            DeficitMethod::PaperFormula
        },
        theta_capped: relaxed_theta(p, phi).1,
    })
}

/// Closed form for `r = s = 0`.
pub fn bell_diagonal_deficit(c1: f64, c2: f64, c3: f64) -> Result<f64> {
    let p = XStateParams::new(0.0, 0.0, c1, c2, c3);
    p.check_physical()?;
    let xlogx = |x: f64| if x > 0.0 { x * x.log2() } else { 0.0 };
    let joint = xlogx(1.0 - c1 - c2 - c3)
        + xlogx(1.0 - c1 + c2 + c3)
        + xlogx(1.0 + c1 - c2 + c3)
        + xlogx(1.0 + c1 + c2 - c3);
    let big_c = p.max_abs_c();
    Ok(joint / 4.0 - xlogx(1.0 - big_c) / 2.0 - xlogx(1.0 + big_c) / 2.0)
}

/// Brute-force deficit: minimizes `S(sum_k (I x B_k) rho (I x B_k))` over the
/// upper hemisphere of measurement directions on a
/// `(coarse_grid + 1) x 2 coarse_grid` latitude/longitude grid, then refines
/// the best cell by compass search.
pub fn oracle_deficit(p: &XStateParams, coarse_grid: usize, refine_iters: usize) -> Result<DeficitResult> {
    oracle_deficit_with(p, coarse_grid, refine_iters, Exec::default())
}

pub fn oracle_deficit_with(
    p: &XStateParams,
    coarse_grid: usize,
    refine_iters: usize,
    exec: Exec,
) -> Result<DeficitResult> {
    if coarse_grid < 64 {
        return Err(Error::OutOfRange { name: "coarse_grid", value: coarse_grid as f64 });
    }
    let rho = p.to_density_matrix()?;
    let state_entropy = von_neumann_entropy(&rho);
    let m = *rho.mat();
    let objective = |polar: f64, azimuth: f64| {
        let z = BlochMeasurement::from_angles(polar, azimuth);
        shannon_bits(eigvalsh(&dephase_matrix(&m, &z)))
    };

    let g = coarse_grid;
    let d_polar = FRAC_PI_2 / g as f64;
    let d_azimuth = PI / g as f64;
    // index 0 is the pole; then g rings of 2g points
    let angles = |k: usize| -> (f64, f64) {
        if k == 0 {
            (0.0, 0.0)
        } else {
            let ring = 1 + (k - 1) / (2 * g);
            let j = (k - 1) % (2 * g);
            (ring as f64 * d_polar, j as f64 * d_azimuth)
        }
    };
    let values = exec.map_range(1 + 2 * g * g, |k| {
        let (a, b) = angles(k);
        objective(a, b)
    });
    let (best_k, best_v) = values
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (k, v)| if v < acc.1 { (k, v) } else { acc });

    let start = angles(best_k);
    let ((polar, azimuth), refined) =
        pattern_search_2d(objective, start, (d_polar, d_azimuth), REFINE_SHRINK, refine_iters);
    let (polar, azimuth, min_entropy) = if refined < best_v {
        (polar, azimuth, refined)
    } else {
        (start.0, start.1, best_v)
    };
    Ok(DeficitResult {
        value: min_entropy - state_entropy,
        argmin: Minimizer::Bloch(BlochMeasurement::from_angles(polar, azimuth)),
        min_entropy,
        state_entropy,
        method: DeficitMethod::SphereOracle,
        theta_capped: false,
    })
}

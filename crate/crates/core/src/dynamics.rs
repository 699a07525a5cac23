//! Two-sided phase-flip channel, correlation sweeps over its strength `p`,
//! and detection of entanglement sudden death.

use serde::{Deserialize, Serialize};

use crate::deficit::{oracle_deficit_with, paper_deficit, theta_feasible_max, PHI_GRID, PHI_TOL};
use crate::entanglement::concurrence_closed;
use crate::error::{Error, Result};
use crate::linalg::{kron, pauli, ComplexMat2, ComplexMat4, DensityMatrix};
use crate::optimize::grid_then_golden;
use crate::par::Exec;
use crate::xstate::XStateParams;

/// Default bisection tolerance of [`find_sudden_death`].
pub const DEFAULT_SUDDEN_DEATH_TOL: f64 = 1e-6;
/// Resolution of the scan that brackets the first zero of the concurrence.
const SUDDEN_DEATH_SCAN: usize = 1000;

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::OutOfRange { name: "p", value: p })
    }
}

/// Phase flip acting on both qubits with strength `p = 1 - exp(-gamma t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseFlipChannel {
    p: f64,
    gamma: Option<f64>,
}

impl PhaseFlipChannel {
    pub fn new(p: f64) -> Result<Self> {
        check_p(p)?;
        Ok(PhaseFlipChannel { p, gamma: None })
    }

    /// Channel after time `t` at damping rate `gamma`.
    pub fn from_time(gamma: f64, t: f64) -> Result<Self> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::OutOfRange { name: "gamma", value: gamma });
        }
        if !(t >= 0.0) {
            return Err(Error::OutOfRange { name: "t", value: t });
        }
        Ok(PhaseFlipChannel { p: -(-gamma * t).exp_m1(), gamma: Some(gamma) })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn gamma(&self) -> Option<f64> {
        self.gamma
    }

    /// Elapsed time `-ln(1 - p) / gamma`, when a rate is attached.
    pub fn time(&self) -> Option<f64> {
        self.gamma.map(|g| -(-self.p).ln_1p() / g)
    }

    pub fn kraus(&self) -> [ComplexMat4; 4] {
        kraus_unchecked(self.p)
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        DensityMatrix::new(apply_kraus(&self.kraus(), rho.mat()))
    }

    pub fn apply_params(&self, x: &XStateParams) -> Result<XStateParams> {
        apply_channel_params(x, self.p)
    }
}

/// Single-qubit factors `Gamma_0 = sqrt(1 - p/2) I`, `Gamma_1 = sqrt(p/2) sigma_3`.
fn single_qubit_kraus(p: f64) -> [ComplexMat2; 2] {
    let a = (1.0 - p / 2.0).sqrt();
    let b = (p / 2.0).sqrt();
    [ComplexMat2::diag([a, a]), ComplexMat2::diag([b, -b])]
}

fn kraus_unchecked(p: f64) -> [ComplexMat4; 4] {
    let [g0, g1] = single_qubit_kraus(p);
    let id = pauli::id();
    let a = [kron(&g0, &id), kron(&g1, &id)];
    let b = [kron(&id, &g0), kron(&id, &g1)];
    [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
}

/// The four products `Gamma_i^(A) Gamma_j^(B)`, ordered `(0,0), (0,1), (1,0), (1,1)`.
pub fn phase_flip_kraus(p: f64) -> Result<[ComplexMat4; 4]> {
    check_p(p)?;
    Ok(kraus_unchecked(p))
}

/// `sum_k K_k m K_k^dagger`.
pub fn apply_kraus(ops: &[ComplexMat4], m: &ComplexMat4) -> ComplexMat4 {
    ops.iter().fold(ComplexMat4::zeros(), |acc, k| acc + k.sandwich(m))
}

/// `sum_k K_k^dagger K_k`.
pub fn kraus_completeness(ops: &[ComplexMat4]) -> ComplexMat4 {
    ops.iter().fold(ComplexMat4::zeros(), |acc, k| acc + k.adjoint() * *k)
}

/// `(r, s, c1, c2, c3) -> (r, s, (1-p)^2 c1, (1-p)^2 c2, c3)`.
pub fn apply_channel_params(x: &XStateParams, p: f64) -> Result<XStateParams> {
    check_p(p)?;
    x.check_physical()?;
    let k = (1.0 - p).powi(2);
    Ok(XStateParams { c1: k * x.c1, c2: k * x.c2, ..*x })
}

/// One point of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub p: f64,
    /// Bits.
    pub deficit: f64,
    pub concurrence: f64,
    /// Bits.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_deficit: Option<f64>,
}

/// Sphere-oracle resolution used by [`sweep_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleSettings {
    pub coarse_grid: usize,
    pub refine_iters: usize,
}

impl Default for OracleSettings {
    fn default() -> Self {
        OracleSettings {
            coarse_grid: crate::deficit::DEFAULT_ORACLE_GRID,
            refine_iters: crate::deficit::DEFAULT_REFINE_ITERS,
        }
    }
}

/// `p_steps` equispaced values `0, 1/(n-1), ..., 1`.
pub fn p_grid(p_steps: usize) -> Vec<f64> {
    let last = (p_steps - 1) as f64;
    (0..p_steps).map(|i| i as f64 / last).collect()
}

pub fn sweep(x: &XStateParams, p_steps: usize, with_oracle: bool) -> Result<Vec<SweepRecord>> {
    sweep_with(x, p_steps, with_oracle.then(OracleSettings::default), Exec::default())
}

/// Deficit and concurrence along the channel, one record per grid value of
/// `p`. `C` is recomputed at every `p`. When the oracle runs, its inner grid
/// is parallelized and the records are processed in order; otherwise the
/// records themselves are mapped in parallel.
pub fn sweep_with(
    x: &XStateParams,
    p_steps: usize,
    oracle: Option<OracleSettings>,
    exec: Exec,
) -> Result<Vec<SweepRecord>> {
    if p_steps < 2 {
        return Err(Error::OutOfRange { name: "p_steps", value: p_steps as f64 });
    }
    x.check_physical()?;
    let grid = p_grid(p_steps);
    let record = |p: f64, inner: Exec| -> Result<SweepRecord> {
        let evolved = apply_channel_params(x, p)?;
        let oracle_deficit = match oracle {
            Some(o) => Some(oracle_deficit_with(&evolved, o.coarse_grid, o.refine_iters, inner)?.value),
            None => None,
        };
        Ok(SweepRecord {
            p,
            deficit: paper_deficit(&evolved)?.value,
            concurrence: concurrence_closed(&evolved)?.value,
            oracle_deficit,
        })
    };
    match oracle {
        Some(_) => grid.iter().map(|&p| record(p, exec)).collect(),
        None => exec.map_slice(&grid, |&p| record(p, Exec::Sequential)).into_iter().collect(),
    }
}

/// Unclamped Wootters expression of the evolved state.
pub fn concurrence_margin(x: &XStateParams, p: f64) -> Result<f64> {
    Ok(concurrence_closed(&apply_channel_params(x, p)?)?.margin())
}

/// Smallest `p*` where the concurrence reaches zero, if the state starts
/// entangled and ends separable. A scan brackets the first sign change of
/// the unclamped margin, then bisection narrows it to half-width `tol`.
pub fn find_sudden_death(x: &XStateParams, tol: f64) -> Result<Option<f64>> {
    if !(tol > 0.0) {
        return Err(Error::OutOfRange { name: "tol", value: tol });
    }
    x.check_physical()?;
    let margin = |p: f64| concurrence_margin(x, p);
    if margin(0.0)? <= 0.0 || margin(1.0)? > 0.0 {
        return Ok(None);
    }
    let mut lo = 0.0;
    let mut hi = 1.0;
    for k in 1..=SUDDEN_DEATH_SCAN {
        let p = k as f64 / SUDDEN_DEATH_SCAN as f64;
        if margin(p)? <= 0.0 {
            hi = p;
            break;
        }
        lo = p;
    }
    while 0.5 * (hi - lo) > tol {
        let mid = 0.5 * (lo + hi);
        if margin(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}

/// The deficit of the evolved state written out for the ordered family
/// `|c1| < |c2| < |c3|`, where `C = |c3|` at every `p` and the channel only
/// enters the `S(rho)` radicands through `(1 - p)^4`.
pub fn deficit_under_channel_closed(x: &XStateParams, p: f64) -> Result<f64> {
    if !(x.c1.abs() < x.c2.abs() && x.c2.abs() < x.c3.abs()) {
        return Err(Error::OrderingViolated);
    }
    check_p(p)?;
    x.check_physical()?;
    let XStateParams { r, s, c1, c2, c3 } = *x;
    let q4 = (1.0 - p).powi(4);
    let xlogx = |v: f64| if v > 0.0 { v * v.log2() } else { 0.0 };

    let a = ((r - s).powi(2) + q4 * (c1 + c2).powi(2)).sqrt();
    let b = ((r + s).powi(2) + q4 * (c1 - c2).powi(2)).sqrt();
    let joint = xlogx(1.0 - c3 + a) + xlogx(1.0 - c3 - a) + xlogx(1.0 + c3 + b) + xlogx(1.0 + c3 - b);

    let measured = |phi: f64| {
        let theta = (c3 * c3).min(theta_feasible_max(x, phi).max(0.0));
        let u = (r * r - 2.0 * r * c3 * phi + theta).max(0.0).sqrt();
        let v = (r * r + 2.0 * r * c3 * phi + theta).max(0.0).sqrt();
        xlogx(1.0 - s * phi + u) + xlogx(1.0 - s * phi - u) + xlogx(1.0 + s * phi + v) + xlogx(1.0 + s * phi - v)
    };
    // maximize the bracket by minimizing its negation
    let (_, neg_max) = grid_then_golden(|phi| -measured(phi), -1.0, 1.0, PHI_GRID, PHI_TOL);
    Ok(joint / 4.0 + neg_max / 4.0)
}

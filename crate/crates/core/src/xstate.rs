//! The five-parameter X-state family
//! `rho = (I + r s3 x I + s I x s3 + sum_i c_i s_i x s_i) / 4`.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kron, pauli, shannon_bits, ComplexMat4, DensityMatrix};

/// Tolerance on the closed-form eigenvalues when deciding physicality.
pub const PHYSICAL_TOL: f64 = 1e-10;
/// Default tolerance of [`XStateParams::from_density_matrix`].
pub const DEFAULT_SHAPE_TOL: f64 = 1e-9;

/// Local Bloch components `r`, `s` along z and the diagonal correlation
/// tensor `(c1, c2, c3)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct XStateParams {
    pub r: f64,
    pub s: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

/// Closed-form spectrum `u±`, `v±`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XSpectrum {
    pub u_plus: f64,
    pub u_minus: f64,
    pub v_plus: f64,
    pub v_minus: f64,
}

impl XSpectrum {
    pub fn to_array(self) -> [f64; 4] {
        [self.u_plus, self.u_minus, self.v_plus, self.v_minus]
    }

    /// Eigenvalues sorted descending, for comparison against matrix spectra.
    pub fn sorted_desc(self) -> [f64; 4] {
        let mut a = self.to_array();
        a.sort_by(|x, y| y.total_cmp(x));
        a
    }
}

impl XStateParams {
    pub const fn new(r: f64, s: f64, c1: f64, c2: f64, c3: f64) -> Self {
        XStateParams { r, s, c1, c2, c3 }
    }

    /// The state used throughout the worked examples.
    pub const EXAMPLE: XStateParams = XStateParams::new(0.2, 0.3, 0.3, -0.4, 0.56);

    /// `|Phi+><Phi+|`.
    pub const BELL_PHI_PLUS: XStateParams = XStateParams::new(0.0, 0.0, 1.0, -1.0, 1.0);

    pub fn as_array(&self) -> [f64; 5] {
        [self.r, self.s, self.c1, self.c2, self.c3]
    }

    pub fn is_bell_diagonal(&self) -> bool {
        self.r == 0.0 && self.s == 0.0
    }

    /// `C = max(|c1|, |c2|, |c3|)`.
    pub fn max_abs_c(&self) -> f64 {
        self.c1.abs().max(self.c2.abs()).max(self.c3.abs())
    }

    /// `c = min(|c1|, |c2|, |c3|)`.
    pub fn min_abs_c(&self) -> f64 {
        self.c1.abs().min(self.c2.abs()).min(self.c3.abs())
    }

    /// `sqrt((r - s)^2 + (c1 + c2)^2)`, the half-splitting of the u block.
    fn u_radius(&self) -> f64 {
        (self.r - self.s).hypot(self.c1 + self.c2)
    }

    /// `sqrt((r + s)^2 + (c1 - c2)^2)`, the half-splitting of the v block.
    fn v_radius(&self) -> f64 {
        (self.r + self.s).hypot(self.c1 - self.c2)
    }

    fn raw_spectrum(&self) -> XSpectrum {
        let (a, b) = (self.u_radius(), self.v_radius());
        XSpectrum {
            u_plus: (1.0 - self.c3 + a) / 4.0,
            u_minus: (1.0 - self.c3 - a) / 4.0,
            v_plus: (1.0 + self.c3 + b) / 4.0,
            v_minus: (1.0 + self.c3 - b) / 4.0,
        }
    }

    pub fn is_physical(&self) -> bool {
        self.check_physical().is_ok()
    }

    pub fn check_physical(&self) -> Result<()> {
        for (name, v) in ["r", "s", "c1", "c2", "c3"].iter().zip(self.as_array()) {
            if !(-1.0..=1.0).contains(&v) {
                return Err(Error::UnphysicalParams(format!("{name} = {v} outside [-1, 1]")));
            }
        }
        let spec = self.raw_spectrum();
        let min = spec.u_minus.min(spec.v_minus);
        if min < -PHYSICAL_TOL {
            return Err(Error::UnphysicalParams(format!("negative eigenvalue {min:e}")));
        }
        Ok(())
    }

    /// The density matrix in the computational basis.
    pub fn to_density_matrix(&self) -> Result<DensityMatrix> {
        self.check_physical()?;
        let XStateParams { r, s, c1, c2, c3 } = *self;
        let mut m = ComplexMat4::diag([
            (1.0 + r + s + c3) / 4.0,
            (1.0 + r - s - c3) / 4.0,
            (1.0 - r + s - c3) / 4.0,
            (1.0 - r - s + c3) / 4.0,
        ]);
        let outer = Complex64::new((c1 - c2) / 4.0, 0.0);
        let inner = Complex64::new((c1 + c2) / 4.0, 0.0);
        m[(0, 3)] = outer;
        m[(3, 0)] = outer;
        m[(1, 2)] = inner;
        m[(2, 1)] = inner;
        DensityMatrix::new(m)
    }

    /// Reads the parameters back from Pauli expectation values after
    /// checking that `rho` has the X pattern (real anti-diagonal, zeros
    /// elsewhere off the diagonal) within `tol`.
    pub fn from_density_matrix(rho: &DensityMatrix, tol: f64) -> Result<Self> {
        let m = rho.mat();
        for i in 0..4 {
            for j in 0..4 {
                let z = m[(i, j)];
                if i == j {
                    continue;
                }
                if i + j == 3 {
                    if z.im.abs() > tol {
                        return Err(Error::NotAnXState(format!("entry ({i},{j}) = {z} is not real")));
                    }
                } else if z.norm() > tol {
                    return Err(Error::NotAnXState(format!("entry ({i},{j}) = {z} off the X pattern")));
                }
            }
        }
        let [sx, sy, sz] = pauli::xyz();
        let id = pauli::id();
        let ev = |op: ComplexMat4| m.trace_product(&op).re;
        Ok(XStateParams {
            r: ev(kron(&sz, &id)),
            s: ev(kron(&id, &sz)),
            c1: ev(kron(&sx, &sx)),
            c2: ev(kron(&sy, &sy)),
            c3: ev(kron(&sz, &sz)),
        })
    }

    pub fn spectrum_closed(&self) -> Result<XSpectrum> {
        self.check_physical()?;
        Ok(self.raw_spectrum())
    }

    /// `S(rho)` in bits from the closed-form spectrum.
    pub fn entropy_closed(&self) -> Result<f64> {
        Ok(shannon_bits(self.spectrum_closed()?.to_array()))
    }

    /// The expanded form `2 - (1/4) sum x log2 x` with `x = 4 * eigenvalue`,
    /// using `(c1 - c2)^2` in both v-terms.
    pub fn entropy_expanded(&self) -> Result<f64> {
        self.check_physical()?;
        let (a, b) = (self.u_radius(), self.v_radius());
        let xlogx = |x: f64| if x > 0.0 { x * x.log2() } else { 0.0 };
        let bracket = xlogx(1.0 - self.c3 + a)
            + xlogx(1.0 - self.c3 - a)
            + xlogx(1.0 + self.c3 + b)
            + xlogx(1.0 + self.c3 - b);
        Ok(2.0 - bracket / 4.0)
    }

    /// Uniform sample from the physical region of `[-1, 1]^5` by rejection.
    pub fn sample_physical<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let p = XStateParams::new(
                rng.gen_range(-1.0..=1.0),
                rng.gen_range(-1.0..=1.0),
                rng.gen_range(-1.0..=1.0),
                rng.gen_range(-1.0..=1.0),
                rng.gen_range(-1.0..=1.0),
            );
            if p.is_physical() {
                return p;
            }
        }
    }

    /// Uniform sample of physical Bell-diagonal parameters `(0, 0, c1, c2, c3)`.
    pub fn sample_bell_diagonal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let p = XStateParams::new(
                0.0,
                0.0,
                rng.gen_range(-1.0..=1.0),
                rng.gen_range(-1.0..=1.0),
                rng.gen_range(-1.0..=1.0),
            );
            if p.is_physical() {
                return p;
            }
        }
    }
}

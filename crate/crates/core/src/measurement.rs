//! Projective measurements on qubit b.
//!
//! A von Neumann measurement `{V P_k V^dagger}` with `V = t I + i y.sigma`
//! depends on `V` only through the Bloch vector `z` of `V P_0 V^dagger`, so
//! measurements are carried around as [`BlochMeasurement`]s. The `(t, y)`
//! parametrization is kept to check that reduction.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kron, pauli, ComplexMat2, ComplexMat4, DensityMatrix};
use crate::xstate::XStateParams;

/// Normalization tolerance for unit vectors.
pub const NORM_TOL: f64 = 1e-12;
/// Radicands above this (negative) threshold are clamped to zero.
pub const RADICAND_TOL: f64 = 1e-12;

/// Unit quaternion `(t, y1, y2, y3)` of `V = t I + i y.sigma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitaryParams {
    pub t: f64,
    pub y1: f64,
    pub y2: f64,
    pub y3: f64,
}

impl UnitaryParams {
    pub fn new(t: f64, y1: f64, y2: f64, y3: f64) -> Result<Self> {
        let n2 = t * t + y1 * y1 + y2 * y2 + y3 * y3;
        if !((n2 - 1.0).abs() <= NORM_TOL) {
            return Err(Error::NotNormalized(n2));
        }
        Ok(UnitaryParams { t, y1, y2, y3 })
    }

    /// Normalizes an arbitrary nonzero 4-vector.
    pub fn normalized(t: f64, y1: f64, y2: f64, y3: f64) -> Result<Self> {
        let n = (t * t + y1 * y1 + y2 * y2 + y3 * y3).sqrt();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::NotNormalized(n * n));
        }
        Self::new(t / n, y1 / n, y2 / n, y3 / n)
    }

    /// Haar-random `V`: uniform on the unit 3-sphere.
    pub fn sample<R: rand::Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let q: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..=1.0));
            let n2: f64 = q.iter().map(|x| x * x).sum();
            if n2 > 1e-6 && n2 <= 1.0 {
                let n = n2.sqrt();
                return UnitaryParams { t: q[0] / n, y1: q[1] / n, y2: q[2] / n, y3: q[3] / n };
            }
        }
    }

    /// A preimage of `z` under [`bloch_from_unitary`]: the rotation about an
    /// axis in the xy-plane taking `e3` to `z`.
    pub fn preimage_of(z: &BlochMeasurement) -> Self {
        let polar = z.z3.clamp(-1.0, 1.0).acos();
        let azimuth = z.z2.atan2(z.z1);
        let (sh, ch) = (0.5 * polar).sin_cos();
        UnitaryParams { t: ch, y1: sh * azimuth.sin(), y2: -sh * azimuth.cos(), y3: 0.0 }
    }

    /// The 2x2 unitary `V`.
    pub fn matrix(&self) -> ComplexMat2 {
        let [x, y, z] = pauli::xyz();
        let i = num_complex::Complex64::new(0.0, 1.0);
        pauli::id().scale(self.t) + (x.scale(self.y1) + y.scale(self.y2) + z.scale(self.y3)) * i
    }
}

/// Unit Bloch vector `z` of the projector `B_0 = (I + z.sigma) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochMeasurement {
    pub z1: f64,
    pub z2: f64,
    pub z3: f64,
}

impl BlochMeasurement {
    pub fn new(z1: f64, z2: f64, z3: f64) -> Result<Self> {
        let n2 = z1 * z1 + z2 * z2 + z3 * z3;
        if !((n2 - 1.0).abs() <= NORM_TOL) {
            return Err(Error::NotNormalized(n2));
        }
        Ok(BlochMeasurement { z1, z2, z3 })
    }

    /// Point on the sphere at the given polar and azimuthal angles.
    pub fn from_angles(polar: f64, azimuth: f64) -> Self {
        let (sp, cp) = polar.sin_cos();
        let (sa, ca) = azimuth.sin_cos();
        BlochMeasurement { z1: sp * ca, z2: sp * sa, z3: cp }
    }

    pub const COMPUTATIONAL: BlochMeasurement = BlochMeasurement { z1: 0.0, z2: 0.0, z3: 1.0 };

    /// `phi = z3`.
    pub fn phi(&self) -> f64 {
        self.z3
    }

    /// `theta = c1^2 z1^2 + c2^2 z2^2 + c3^2 z3^2`.
    pub fn theta(&self, p: &XStateParams) -> f64 {
        (p.c1 * self.z1).powi(2) + (p.c2 * self.z2).powi(2) + (p.c3 * self.z3).powi(2)
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.z1, self.z2, self.z3]
    }
}

/// `z1 = 2(-t y2 + y1 y3)`, `z2 = 2(t y1 + y2 y3)`, `z3 = t^2 + y3^2 - y1^2 - y2^2`.
pub fn bloch_from_unitary(u: &UnitaryParams) -> Result<BlochMeasurement> {
    let UnitaryParams { t, y1, y2, y3 } = UnitaryParams::new(u.t, u.y1, u.y2, u.y3)?;
    let z = BlochMeasurement {
        z1: 2.0 * (-t * y2 + y1 * y3),
        z2: 2.0 * (t * y1 + y2 * y3),
        z3: t * t + y3 * y3 - y1 * y1 - y2 * y2,
    };
    Ok(z)
}

/// The projector pair `((I + z.sigma)/2, (I - z.sigma)/2)`.
pub fn measurement_from_bloch(z: &BlochMeasurement) -> Result<(ComplexMat2, ComplexMat2)> {
    let z = BlochMeasurement::new(z.z1, z.z2, z.z3)?;
    Ok(projectors(&z))
}

fn projectors(z: &BlochMeasurement) -> (ComplexMat2, ComplexMat2) {
    let [x, y, s3] = pauli::xyz();
    let zs = x.scale(z.z1) + y.scale(z.z2) + s3.scale(z.z3);
    let id = pauli::id();
    ((id + zs).scale(0.5), (id - zs).scale(0.5))
}

/// `sum_k (I x B_k) m (I x B_k)` without validating either side.
pub(crate) fn dephase_matrix(m: &ComplexMat4, z: &BlochMeasurement) -> ComplexMat4 {
    let (b0, b1) = projectors(z);
    let id = pauli::id();
    let k0 = kron(&id, &b0);
    let k1 = kron(&id, &b1);
    k0 * *m * k0 + k1 * *m * k1
}

/// The post-measurement state `p0 rho0 + p1 rho1`.
pub fn dephase(rho: &DensityMatrix, z: &BlochMeasurement) -> Result<DensityMatrix> {
    let z = BlochMeasurement::new(z.z1, z.z2, z.z3)?;
    DensityMatrix::new(dephase_matrix(rho.mat(), &z))
}

fn clamp_radicand(x: f64) -> Result<f64> {
    if x < -RADICAND_TOL {
        Err(Error::NegativeDiscriminant(x))
    } else {
        Ok(x.max(0.0))
    }
}

/// The four eigenvalues `[l1, l2, l3, l4]` of the post-measurement state,
/// with `phi` and `theta` treated as free arguments:
///
/// `l1,2 = (1 - s phi ± sqrt(r^2 - 2 r c3 phi + theta)) / 4`,
/// `l3,4 = (1 + s phi ± sqrt(r^2 + 2 r c3 phi + theta)) / 4`.
pub fn post_measurement_spectrum(p: &XStateParams, phi: f64, theta: f64) -> Result<[f64; 4]> {
    p.check_physical()?;
    if !(-1.0..=1.0).contains(&phi) {
        return Err(Error::OutOfRange { name: "phi", value: phi });
    }
    if !(theta >= 0.0) {
        return Err(Error::OutOfRange { name: "theta", value: theta });
    }
    spectrum_unchecked(p, phi, theta)
}

pub(crate) fn spectrum_unchecked(p: &XStateParams, phi: f64, theta: f64) -> Result<[f64; 4]> {
    let XStateParams { r, s, c3, .. } = *p;
    let a = clamp_radicand(r * r - 2.0 * r * c3 * phi + theta)?.sqrt();
    let b = clamp_radicand(r * r + 2.0 * r * c3 * phi + theta)?.sqrt();
    Ok([
        (1.0 - s * phi + a) / 4.0,
        (1.0 - s * phi - a) / 4.0,
        (1.0 + s * phi + b) / 4.0,
        (1.0 + s * phi - b) / 4.0,
    ])
}

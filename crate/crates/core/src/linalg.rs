//! Small dense complex matrices, Hermitian eigenvalues and von Neumann entropy.
//!
//! Everything here is fixed-size: 2x2 for single-qubit operators, 4x4 for
//! two-qubit states. Hermitian spectra are computed by cyclic complex
//! Jacobi rotations, which are accurate to a few ulps of the spectral norm
//! at these sizes.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hermiticity tolerance accepted by [`hermitian_eigenvalues`].
pub const HERMITIAN_INPUT_TOL: f64 = 1e-10;
/// Hermiticity and trace tolerance of [`DensityMatrix`].
pub const DENSITY_TOL: f64 = 1e-12;
/// Most negative eigenvalue still treated as floating-point jitter.
pub const PSD_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat<const N: usize>(pub [[Complex64; N]; N]);

pub type ComplexMat2 = Mat<2>;
pub type ComplexMat4 = Mat<4>;

impl<const N: usize> Default for Mat<N> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<const N: usize> Mat<N> {
    pub fn zeros() -> Self {
        Mat([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = ONE;
        }
        m
    }

    pub fn from_real(rows: [[f64; N]; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = Complex64::new(rows[i][j], 0.0);
            }
        }
        m
    }

    pub fn diag(d: [f64; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = Complex64::new(d[i], 0.0);
        }
        m
    }

    /// Outer product `|a><b|`.
    pub fn outer(a: &[Complex64; N], b: &[Complex64; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = a[i] * b[j].conj();
            }
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|z| *z = z.conj());
        m
    }

    pub fn trace(&self) -> Complex64 {
        (0..N).map(|i| self.0[i][i]).sum()
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|z| *z *= k);
        m
    }

    /// `max_ij |self_ij - other_ij|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max_ij |m_ij - conj(m_ji)|`.
    pub fn hermiticity_error(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `tr(self * other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Complex64 {
        let mut acc = ZERO;
        for i in 0..N {
            for k in 0..N {
                acc += self.0[i][k] * other.0[k][i];
            }
        }
        acc
    }

    /// `self * m * self^dagger`.
    pub fn sandwich(&self, m: &Self) -> Self {
        *self * *m * self.adjoint()
    }
}

impl<const N: usize> Index<(usize, usize)> for Mat<N> {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.0[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for Mat<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.0[i][j]
    }
}

impl<const N: usize> Mul for Mat<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..N {
                    m.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        m
    }
}

impl<const N: usize> Mul<Complex64> for Mat<N> {
    type Output = Self;
    fn mul(mut self, k: Complex64) -> Self {
        self.0.iter_mut().flatten().for_each(|z| *z *= k);
        self
    }
}

impl<const N: usize> Add for Mat<N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.0[i][j] += rhs.0[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Sub for Mat<N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.0[i][j] -= rhs.0[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Neg for Mat<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

/// Pauli matrices and the 2x2 identity.
pub mod pauli {
    use super::{ComplexMat2, Mat, ONE, ZERO};
    use num_complex::Complex64;

    pub fn id() -> ComplexMat2 {
        Mat::identity()
    }

    pub fn x() -> ComplexMat2 {
        Mat([[ZERO, ONE], [ONE, ZERO]])
    }

    pub fn y() -> ComplexMat2 {
        let i = Complex64::new(0.0, 1.0);
        Mat([[ZERO, -i], [i, ZERO]])
    }

    pub fn z() -> ComplexMat2 {
        Mat::diag([1.0, -1.0])
    }

    /// `[sigma_1, sigma_2, sigma_3]`.
    pub fn xyz() -> [ComplexMat2; 3] {
        [x(), y(), z()]
    }
}

/// Kronecker product in the basis order |00>, |01>, |10>, |11>.
pub fn kron(a: &ComplexMat2, b: &ComplexMat2) -> ComplexMat4 {
    let mut m = ComplexMat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m.0[2 * i + k][2 * j + l] = a.0[i][j] * b.0[k][l];
                }
            }
        }
    }
    m
}

/// Cyclic complex Jacobi diagonalization of the Hermitian part of `m`.
/// Returns the (unsorted) eigenvalues and, if requested, the unitary whose
/// columns are the eigenvectors.
///
/// Each rotation first removes the phase of `a_pq` with `diag(1, e^{-i alpha})`
/// and then applies the real Jacobi rotation that zeroes it.
fn jacobi_hermitian<const N: usize>(m: &Mat<N>, want_vectors: bool) -> ([f64; N], Mat<N>) {
    let mut a = Mat::<N>::zeros();
    for i in 0..N {
        for j in 0..N {
            a.0[i][j] = 0.5 * (m.0[i][j] + m.0[j][i].conj());
        }
        a.0[i][i].im = 0.0;
    }
    let mut v = Mat::<N>::identity();
    let frob2: f64 = a.0.iter().flatten().map(|z| z.norm_sqr()).sum();
    let stop = frob2 * (f64::EPSILON * f64::EPSILON) * 1e-4;
    for _sweep in 0..64 {
        let mut off = 0.0;
        for p in 0..N {
            for q in (p + 1)..N {
                off += a.0[p][q].norm_sqr();
            }
        }
        if off <= stop || frob2 == 0.0 {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                let g = a.0[p][q];
                let gabs = g.norm();
                if gabs == 0.0 {
                    continue;
                }
                let w = (g / gabs).conj();
                let theta = (a.0[q][q].re - a.0[p][p].re) / (2.0 * gabs);
                let t = if theta.is_infinite() {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + theta.hypot(1.0))
                };
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                // A <- A J with J = [[c, s], [-s w, c w]] on (p, q)
                for k in 0..N {
                    let akp = a.0[k][p];
                    let akq = a.0[k][q] * w;
                    a.0[k][p] = akp * c - akq * s;
                    a.0[k][q] = akp * s + akq * c;
                }
                // A <- J^dagger A
                let wc = w.conj();
                for k in 0..N {
                    let apk = a.0[p][k];
                    let aqk = a.0[q][k] * wc;
                    a.0[p][k] = apk * c - aqk * s;
                    a.0[q][k] = apk * s + aqk * c;
                }
                a.0[p][q] = ZERO;
                a.0[q][p] = ZERO;
                a.0[p][p].im = 0.0;
                a.0[q][q].im = 0.0;
                if want_vectors {
                    for k in 0..N {
                        let vkp = v.0[k][p];
                        let vkq = v.0[k][q] * w;
                        v.0[k][p] = vkp * c - vkq * s;
                        v.0[k][q] = vkp * s + vkq * c;
                    }
                }
            }
        }
    }
    (std::array::from_fn(|i| a.0[i][i].re), v)
}

/// Eigenvalues of the Hermitian part of `m`, descending. No tolerance check.
pub(crate) fn eigvalsh<const N: usize>(m: &Mat<N>) -> [f64; N] {
    let (mut e, _) = jacobi_hermitian(m, false);
    e.sort_by(|x, y| y.total_cmp(x));
    e
}

/// Applies a scalar function to a Hermitian matrix through its spectral
/// decomposition: `f(H) = V f(diag) V^dagger`.
pub(crate) fn hermitian_map<const N: usize>(m: &Mat<N>, f: impl Fn(f64) -> f64) -> Mat<N> {
    let (e, v) = jacobi_hermitian(m, true);
    let fe = e.map(f);
    let mut out = Mat::<N>::zeros();
    for i in 0..N {
        for j in 0..N {
            out.0[i][j] = (0..N).map(|k| v.0[i][k] * fe[k] * v.0[j][k].conj()).sum();
        }
    }
    out
}

/// Eigenvalues of a Hermitian 4x4 matrix in descending order.
pub fn hermitian_eigenvalues(m: &ComplexMat4) -> Result<[f64; 4]> {
    let err = m.hermiticity_error();
    if !(err <= HERMITIAN_INPUT_TOL) {
        return Err(Error::NonHermitianInput(err));
    }
    Ok(eigvalsh(m))
}

/// Shannon entropy in bits of a probability vector, with `0 log 0 = 0`.
/// Entries are clamped to `[0, 1]` first.
pub fn shannon_bits(probs: impl IntoIterator<Item = f64>) -> f64 {
    probs
        .into_iter()
        .map(|p| p.clamp(0.0, 1.0))
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum()
}

/// A validated two-qubit density matrix: Hermitian, unit trace, PSD.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMat4,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMat4) -> Result<Self> {
        if !mat.is_finite() {
            return Err(Error::InvalidState("non-finite entry".into()));
        }
        let herm = mat.hermiticity_error();
        if herm > DENSITY_TOL {
            return Err(Error::InvalidState(format!("not Hermitian ({herm:e})")));
        }
        let tr = mat.trace();
        if (tr - 1.0).norm() > DENSITY_TOL {
            return Err(Error::InvalidState(format!("trace {tr} != 1")));
        }
        let min = eigvalsh(&mat)[3];
        if min < -PSD_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(DensityMatrix { mat })
    }

    /// `I / 4`.
    pub fn maximally_mixed() -> Self {
        DensityMatrix { mat: ComplexMat4::identity().scale(0.25) }
    }

    /// `|psi><psi|` for a (not necessarily normalized) state vector.
    pub fn pure(psi: [Complex64; 4]) -> Result<Self> {
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if !(norm2 > 0.0) {
            return Err(Error::InvalidState("zero state vector".into()));
        }
        let scaled = psi.map(|z| z / norm2.sqrt());
        Self::new(ComplexMat4::outer(&scaled, &scaled))
    }

    pub fn mat(&self) -> &ComplexMat4 {
        &self.mat
    }

    pub fn into_inner(self) -> ComplexMat4 {
        self.mat
    }

    /// Eigenvalues, descending.
    pub fn eigenvalues(&self) -> [f64; 4] {
        eigvalsh(&self.mat)
    }

    /// Principal square root.
    pub fn sqrt(&self) -> ComplexMat4 {
        hermitian_map(&self.mat, |x| x.max(0.0).sqrt())
    }

    pub fn purity(&self) -> f64 {
        self.mat.trace_product(&self.mat).re
    }
}

/// `S(rho) = -sum lambda log2 lambda` over the spectrum of `rho`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    // DensityMatrix::new already rejected spectra below -PSD_TOL.
    shannon_bits(rho.eigenvalues())
}

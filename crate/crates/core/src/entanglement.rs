//! Wootters concurrence: closed form for X states and the general
//! matrix computation used to check it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{eigvalsh, kron, pauli, ComplexMat4, DensityMatrix, Mat};
use crate::xstate::XStateParams;

/// Eigenvalues of `rho * rho~` above `-NEGATIVE_SPECTRUM_TOL` are clamped to zero.
pub const NEGATIVE_SPECTRUM_TOL: f64 = 1e-8;

/// Square roots of the `rho * rho~` spectrum and the resulting concurrence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConcurrenceBreakdown {
    /// Descending.
    pub sqrt_lambdas: [f64; 4],
    pub value: f64,
}

impl ConcurrenceBreakdown {
    fn from_sqrt(mut sqrt_lambdas: [f64; 4]) -> Self {
        sqrt_lambdas.sort_by(|a, b| b.total_cmp(a));
        let mut out = ConcurrenceBreakdown { sqrt_lambdas, value: 0.0 };
        out.value = out.margin().max(0.0);
        out
    }

    /// The unclamped Wootters expression
    /// `2 max sqrt(l) - sum sqrt(l) = s0 - s1 - s2 - s3`.
    pub fn margin(&self) -> f64 {
        let [a, b, c, d] = self.sqrt_lambdas;
        a - b - c - d
    }
}

/// `sigma_y x sigma_y`.
fn yy() -> ComplexMat4 {
    kron(&pauli::y(), &pauli::y())
}

/// `rho~ = (sigma_y x sigma_y) rho* (sigma_y x sigma_y)`.
pub fn spin_flip(rho: &DensityMatrix) -> ComplexMat4 {
    let y = yy();
    y * rho.mat().conj() * y
}

/// The square roots `|c1 - c2 ∓ R+| / 4`, `|c1 + c2 ∓ R-| / 4` with
/// `R± = sqrt((1 ± c3)^2 - (r ± s)^2)`, in the order l5, l6, l7, l8.
fn sqrt_lambdas_closed(p: &XStateParams) -> [f64; 4] {
    let XStateParams { r, s, c1, c2, c3 } = *p;
    let rp = ((1.0 + c3).powi(2) - (r + s).powi(2)).max(0.0).sqrt();
    let rm = ((1.0 - c3).powi(2) - (r - s).powi(2)).max(0.0).sqrt();
    [
        (c1 - c2 - rp).abs() / 4.0,
        (c1 - c2 + rp).abs() / 4.0,
        (c1 + c2 - rm).abs() / 4.0,
        (c1 + c2 + rm).abs() / 4.0,
    ]
}

/// `[l5, l6, l7, l8]`, the spectrum of `rho * rho~` in closed form.
pub fn rho_rhotilde_spectrum_closed(p: &XStateParams) -> Result<[f64; 4]> {
    p.check_physical()?;
    Ok(sqrt_lambdas_closed(p).map(|x| x * x))
}

/// Spectrum of `rho * rho~` (descending) through the similar Hermitian
/// matrix `sqrt(rho) rho~ sqrt(rho)`.
pub fn rho_rhotilde_spectrum(rho: &DensityMatrix) -> Result<[f64; 4]> {
    let sq = rho.sqrt();
    let h = sq * spin_flip(rho) * sq;
    let mut e = eigvalsh(&h);
    for x in e.iter_mut() {
        if *x < -NEGATIVE_SPECTRUM_TOL {
            return Err(Error::NegativeSpectrum(*x));
        }
        *x = x.max(0.0);
    }
    Ok(e)
}

pub fn concurrence_closed(p: &XStateParams) -> Result<ConcurrenceBreakdown> {
    p.check_physical()?;
    Ok(ConcurrenceBreakdown::from_sqrt(sqrt_lambdas_closed(p)))
}

/// Concurrence of an arbitrary two-qubit state.
///
/// The square roots of the `rho * rho~` eigenvalues are the singular values
/// of `sqrt(rho) sqrt(rho~)`, equivalently of `M = sqrt(rho) Y sqrt(rho)*`.
/// They are read off as the positive eigenvalues of the Hermitian dilation
/// `[[0, M], [M^dagger, 0]]`, which avoids taking square roots of
/// near-zero eigenvalues.
pub fn concurrence_general(rho: &DensityMatrix) -> Result<ConcurrenceBreakdown> {
    let min = rho.eigenvalues()[3];
    if min < -NEGATIVE_SPECTRUM_TOL {
        return Err(Error::NegativeSpectrum(min));
    }
    let sq = rho.sqrt();
    let m = sq * yy() * sq.conj();
    let mut dil = Mat::<8>::zeros();
    for i in 0..4 {
        for j in 0..4 {
            dil[(i, j + 4)] = m[(i, j)];
            dil[(j + 4, i)] = m[(i, j)].conj();
        }
    }
    let e = eigvalsh(&dil);
    Ok(ConcurrenceBreakdown::from_sqrt([e[0], e[1], e[2], e[3]].map(|x| x.max(0.0))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn physical() -> impl Strategy<Value = XStateParams> {
        prop::array::uniform5(-1.0f64..=1.0)
            .prop_map(|a| XStateParams::new(a[0], a[1], a[2], a[3], a[4]))
            .prop_filter("physical", |p| p.is_physical())
    }

    fn ket(i: usize) -> DensityMatrix {
        let mut v = [Complex64::new(0.0, 0.0); 4];
        v[i] = Complex64::new(1.0, 0.0);
        DensityMatrix::pure(v).unwrap()
    }

    #[test]
    fn spin_flip_fixed_points() {
        let mixed = DensityMatrix::maximally_mixed();
        assert!(spin_flip(&mixed).max_abs_diff(mixed.mat()) < 1e-15);
        let bell = XStateParams::BELL_PHI_PLUS.to_density_matrix().unwrap();
        assert!(spin_flip(&bell).max_abs_diff(bell.mat()) < 1e-15);
        assert!(spin_flip(&ket(0)).max_abs_diff(ket(3).mat()) < 1e-15);
    }

    #[test]
    fn closed_spectra() {
        let l = rho_rhotilde_spectrum_closed(&XStateParams::default()).unwrap();
        assert_eq!(l, [1.0 / 16.0; 4]);
        let l = rho_rhotilde_spectrum_closed(&XStateParams::BELL_PHI_PLUS).unwrap();
        assert_eq!(l, [0.0, 1.0, 0.0, 0.0]);
        assert_eq!(concurrence_closed(&XStateParams::BELL_PHI_PLUS).unwrap().value, 1.0);
        assert_eq!(concurrence_closed(&XStateParams::default()).unwrap().value, 0.0);
    }

    #[test]
    fn general_trivial_cases() {
        let bell = XStateParams::BELL_PHI_PLUS.to_density_matrix().unwrap();
        assert!((concurrence_general(&bell).unwrap().value - 1.0).abs() < 1e-12);
        assert!(concurrence_general(&DensityMatrix::maximally_mixed()).unwrap().value.abs() < 1e-12);
        assert!(concurrence_general(&ket(1)).unwrap().value.abs() < 1e-12);
    }

    #[test]
    fn example_state() {
        let p = XStateParams::EXAMPLE;
        let rho = p.to_density_matrix().unwrap();
        let closed = concurrence_closed(&p).unwrap();
        assert!(closed.value > 0.0);
        assert!((closed.value - concurrence_general(&rho).unwrap().value).abs() < 1e-10);
        let mut l = rho_rhotilde_spectrum_closed(&p).unwrap();
        l.sort_by(|a, b| b.total_cmp(a));
        let m = rho_rhotilde_spectrum(&rho).unwrap();
        for k in 0..4 {
            assert!((l[k] - m[k]).abs() < 1e-10);
        }
    }

    proptest! {
        #[test]
        fn closed_matches_general(p in physical()) {
            let a = concurrence_closed(&p).unwrap();
            let b = concurrence_general(&p.to_density_matrix().unwrap()).unwrap();
            prop_assert!((a.value - b.value).abs() < 1e-10);
            prop_assert!((0.0..=1.0).contains(&a.value));
            prop_assert!((a.value - a.margin().max(0.0)).abs() < 1e-12);
            prop_assert!(rho_rhotilde_spectrum_closed(&p).unwrap().iter().all(|&x| x >= 0.0));
        }

        #[test]
        fn radicand_factorizations(p in physical()) {
            let XStateParams { r, s, c3, .. } = p;
            let a = (1.0 + c3).powi(2) - (r + s).powi(2);
            let b = (1.0 + r + s + c3) * (1.0 - r - s + c3);
            let c = (1.0 - c3).powi(2) - (r - s).powi(2);
            let d = (1.0 + r - s - c3) * (1.0 - r + s - c3);
            prop_assert!((a - b).abs() < 1e-12 && (c - d).abs() < 1e-12);
        }
    }
}

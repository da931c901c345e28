use super::eig::{eigh, EigenSystem};
use super::mat::{Mat4, C64};
use super::{HERMITIAN_TOL, PSD_TOL};
use crate::error::{QreeError, Result};

/// A validated two-qubit density matrix in the basis |00⟩, |01⟩, |10⟩, |11⟩.
///
/// Construction checks finiteness, Hermiticity (1e-12 entrywise), unit trace
/// (1e-12) and positive semidefiniteness (smallest eigenvalue ≥ −1e-10).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix {
    m: Mat4,
}

impl DensityMatrix {
    pub fn new(m: Mat4) -> Result<Self> {
        if !m.is_finite() {
            return Err(QreeError::NonFinite);
        }
        let herm = m.hermiticity_error();
        if herm > HERMITIAN_TOL {
            return Err(QreeError::NotHermitian(herm));
        }
        let tr = m.trace().re;
        if (tr - 1.0).abs() > HERMITIAN_TOL {
            return Err(QreeError::Trace(tr));
        }
        let min = eigh(&m).min();
        if min < -PSD_TOL {
            return Err(QreeError::NotPositive(min));
        }
        Ok(DensityMatrix { m })
    }

    /// Validates the Hermitian part of `m`, after rescaling to unit trace.
    ///
    /// Meant for internally assembled mixtures whose trace drifts by rounding.
    pub fn from_mixture(m: Mat4) -> Result<Self> {
        let tr = m.trace().re;
        if !(tr > 0.0) {
            return Err(QreeError::Trace(tr));
        }
        Self::new(m.hermitian_part().scale(1.0 / tr))
    }

    pub fn pure(amplitudes: &[C64; 4]) -> Result<Self> {
        Self::new(Mat4::projector(amplitudes))
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix { m: Mat4::identity().scale(0.25) }
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.m
    }

    pub fn eigen(&self) -> EigenSystem {
        eigh(&self.m)
    }

    pub fn partial_transpose(&self) -> Mat4 {
        partial_transpose_matrix(&self.m)
    }

    pub fn min_pt_eigenvalue(&self) -> f64 {
        min_pt_eigenvalue(&self.m)
    }

    pub fn distance(&self, other: &DensityMatrix) -> f64 {
        (self.m - other.m).frobenius_norm()
    }
}

impl From<DensityMatrix> for Mat4 {
    fn from(d: DensityMatrix) -> Mat4 {
        d.m
    }
}

/// Transpose on the second qubit: ⟨ij|ρ^Γ|kl⟩ = ⟨il|ρ|kj⟩.
pub fn partial_transpose(rho: &DensityMatrix) -> Mat4 {
    partial_transpose_matrix(rho.matrix())
}

pub fn partial_transpose_matrix(m: &Mat4) -> Mat4 {
    let mut out = Mat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.0[2 * i + j][2 * k + l] = m.0[2 * i + l][2 * k + j];
                }
            }
        }
    }
    out
}

pub fn min_pt_eigenvalue(m: &Mat4) -> f64 {
    eigh(&partial_transpose_matrix(m)).min()
}

#[cfg(test)]
mod tests {
    use super::super::mat::{basis_ket, Bell};
    use super::*;

    #[test]
    fn product_state_is_pt_invariant() {
        let p = Mat4::projector(&basis_ket(0));
        assert_eq!(partial_transpose_matrix(&p), p);
    }

    #[test]
    fn bell_projector_pt_spectrum() {
        // brute force: PT of |β3⟩⟨β3| = ½(|01⟩⟨01| + |10⟩⟨10| + |00⟩⟨11| + |11⟩⟨00|),
        // whose {|00⟩,|11⟩} block [[0, ½], [½, 0]] has eigenvalues ±½
        let pt = partial_transpose_matrix(&Bell::PsiPlus.projector());
        let mut want = Mat4::from_real_diag([0.0, 0.5, 0.5, 0.0]);
        want.0[0][3] = C64::new(0.5, 0.0);
        want.0[3][0] = C64::new(0.5, 0.0);
        assert!((pt - want).max_abs() < 1e-15);
        assert!((min_pt_eigenvalue(&Bell::PsiPlus.projector()) + 0.5).abs() < 1e-14);
    }

    #[test]
    fn validation_errors() {
        let bad_trace = Mat4::identity().scale(0.225);
        assert!(matches!(DensityMatrix::new(bad_trace), Err(QreeError::Trace(_))));
        let neg = Mat4::from_real_diag([1.1, -0.1, 0.0, 0.0]);
        assert!(matches!(DensityMatrix::new(neg), Err(QreeError::NotPositive(_))));
        let mut nh = Mat4::identity().scale(0.25);
        nh.0[0][1] = C64::new(0.0, 0.1);
        assert!(matches!(DensityMatrix::new(nh), Err(QreeError::NotHermitian(_))));
        let mut nan = Mat4::identity().scale(0.25);
        nan.0[2][2] = C64::new(f64::NAN, 0.0);
        assert_eq!(DensityMatrix::new(nan), Err(QreeError::NonFinite));
    }

    #[test]
    fn trace_error_message_names_trace() {
        let e = DensityMatrix::new(Mat4::identity().scale(0.225)).unwrap_err();
        assert!(e.to_string().contains("trace"));
    }
}

//! Schmidt decomposition of two-qubit pure states and their closest separable state.

use crate::measures::{concurrence_pure, PureState};
use crate::qcore::{jacobi, kron, DensityMatrix, Ket2, Mat2, Mat4, Matrix, C64};

/// Normalizers below this use the direct eigendecomposition branch.
pub const DEGENERATE_NORMALIZER: f64 = 1e-6;
/// Smaller Schmidt weights below this also use the direct branch.
pub const DEGENERATE_WEIGHT: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchmidtBranch {
    /// Bases from the closed expressions in x±, y±, u, v, w.
    Closed,
    /// Bases from a direct eigendecomposition of the reduced state of A.
    Degenerate,
}

/// Schmidt weights, intermediates and bases of a pure state.
///
/// With Ψ = [[α1, α2], [α3, α4]], (x±, y±) are the normalized eigenvectors of
/// Ψ†Ψ, u = Ψ(Ψ†Ψ)^{-1/2}, v = u·[[x+, x−], [y+, y−]] and w = [[x+*, y+*], [x−*, y−*]].
/// Column i of v is |i_A⟩ and row i of w is |i_B⟩.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SchmidtData {
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub x_plus: C64,
    pub x_minus: C64,
    pub y_plus: C64,
    pub y_minus: C64,
    pub n_plus: f64,
    pub n_minus: f64,
    pub u: Mat2,
    pub v: Mat2,
    pub w: Mat2,
    /// |0_A⟩, |1_A⟩
    pub basis_a: [Ket2; 2],
    /// |0_B⟩, |1_B⟩
    pub basis_b: [Ket2; 2],
    pub branch: SchmidtBranch,
}

impl SchmidtData {
    pub fn weights(&self) -> [f64; 2] {
        [self.lambda_plus, self.lambda_minus]
    }

    /// √λ+ |0_A 0_B⟩ + √λ− |1_A 1_B⟩
    pub fn reconstruct(&self) -> [C64; 4] {
        let p = kron(&self.basis_a[0], &self.basis_b[0]);
        let m = kron(&self.basis_a[1], &self.basis_b[1]);
        std::array::from_fn(|i| p[i] * self.lambda_plus.sqrt() + m[i] * self.lambda_minus.sqrt())
    }
}

pub fn schmidt_decompose(psi: &PureState) -> SchmidtData {
    let a = psi.amplitudes();
    let c = concurrence_pure(psi);
    let root = (1.0 - c * c).max(0.0).sqrt();
    let lambda_plus = 0.5 * (1.0 + root);
    let lambda_minus = if lambda_plus > 0.0 { c * c / (4.0 * lambda_plus) } else { 0.0 };

    let off = a[0].conj() * a[1] + a[2].conj() * a[3];
    let upper = a[0].norm_sqr() + a[2].norm_sqr();
    let y_plus_raw = lambda_plus - upper;
    let y_minus_raw = lambda_minus - upper;
    let n_plus = (off.norm_sqr() + y_plus_raw * y_plus_raw).sqrt();
    let n_minus = (off.norm_sqr() + y_minus_raw * y_minus_raw).sqrt();

    let psi_mat = Matrix([[a[0], a[1]], [a[2], a[3]]]);

    let mut data = if n_plus < DEGENERATE_NORMALIZER
        || n_minus < DEGENERATE_NORMALIZER
        || lambda_minus < DEGENERATE_WEIGHT
    {
        degenerate(&psi_mat, lambda_plus, lambda_minus, n_plus, n_minus)
    } else {
        let x_plus = off / n_plus;
        let x_minus = off / n_minus;
        let y_plus = C64::new(y_plus_raw / n_plus, 0.0);
        let y_minus = C64::new(y_minus_raw / n_minus, 0.0);
        let cp = [x_plus, y_plus];
        let cm = [x_minus, y_minus];
        let inv_sqrt = Mat2::projector(&cp).scale(1.0 / lambda_plus.sqrt())
            + Mat2::projector(&cm).scale(1.0 / lambda_minus.sqrt());
        let u = psi_mat * inv_sqrt;
        let v = u * Matrix([[x_plus, x_minus], [y_plus, y_minus]]);
        let w = Matrix([[x_plus.conj(), y_plus.conj()], [x_minus.conj(), y_minus.conj()]]);
        SchmidtData {
            lambda_plus,
            lambda_minus,
            x_plus,
            x_minus,
            y_plus,
            y_minus,
            n_plus,
            n_minus,
            u,
            v,
            w,
            basis_a: [[v.0[0][0], v.0[1][0]], [v.0[0][1], v.0[1][1]]],
            basis_b: [w.0[0], w.0[1]],
            branch: SchmidtBranch::Closed,
        }
    };
    for i in 0..2 {
        fix_phase(&mut data.basis_a[i], &mut data.basis_b[i]);
    }
    data
}

fn degenerate(psi: &Mat2, lambda_plus: f64, lambda_minus: f64, n_plus: f64, n_minus: f64) -> SchmidtData {
    let reduced = (*psi * psi.adjoint()).hermitian_part();
    let (vals, vecs) = jacobi(&reduced);
    let a0: Ket2 = [vecs.0[0][1], vecs.0[1][1]];
    let a1: Ket2 = [vecs.0[0][0], vecs.0[1][0]];
    let project = |a: &Ket2, weight: f64| -> Ket2 {
        let s = weight.sqrt();
        [
            (a[0].conj() * psi.0[0][0] + a[1].conj() * psi.0[1][0]) / s,
            (a[0].conj() * psi.0[0][1] + a[1].conj() * psi.0[1][1]) / s,
        ]
    };
    let b0 = project(&a0, vals[1].max(lambda_plus));
    let b1 = if lambda_minus >= DEGENERATE_WEIGHT {
        project(&a1, vals[0].max(lambda_minus))
    } else {
        [-b0[1].conj(), b0[0].conj()]
    };
    // keep x±, y± consistent with w: |i_B⟩ = conj(x, y)
    let (x_plus, y_plus) = (b0[0].conj(), b0[1].conj());
    let (x_minus, y_minus) = (b1[0].conj(), b1[1].conj());
    let v = Matrix([[a0[0], a1[0]], [a0[1], a1[1]]]);
    let w = Matrix([b0, b1]);
    let u = v * Matrix([[x_plus, x_minus], [y_plus, y_minus]]).adjoint();
    SchmidtData {
        lambda_plus,
        lambda_minus,
        x_plus,
        x_minus,
        y_plus,
        y_minus,
        n_plus,
        n_minus,
        u,
        v,
        w,
        basis_a: [a0, a1],
        basis_b: [b0, b1],
        branch: SchmidtBranch::Degenerate,
    }
}

/// Rotates |a⟩ so its largest-modulus component is real-positive and
/// counter-rotates |b⟩, leaving |a⟩⊗|b⟩ unchanged.
fn fix_phase(a: &mut Ket2, b: &mut Ket2) {
    let lead = if a[1].norm() > a[0].norm() + 1e-14 { a[1] } else { a[0] };
    if lead.norm() == 0.0 {
        return;
    }
    let phase = lead.conj() / lead.norm();
    for z in a.iter_mut() {
        *z *= phase;
    }
    for z in b.iter_mut() {
        *z *= phase.conj();
    }
}

/// λ+ |0_A 0_B⟩⟨0_A 0_B| + λ− |1_A 1_B⟩⟨1_A 1_B|
pub fn css_pure(psi: &PureState) -> DensityMatrix {
    let s = schmidt_decompose(psi);
    css_from_schmidt(&s)
}

pub(crate) fn css_from_schmidt(s: &SchmidtData) -> DensityMatrix {
    let p = kron(&s.basis_a[0], &s.basis_b[0]);
    let m = kron(&s.basis_a[1], &s.basis_b[1]);
    let sigma = Mat4::projector(&p).scale(s.lambda_plus) + Mat4::projector(&m).scale(s.lambda_minus);
    DensityMatrix::from_mixture(sigma).expect("mixture of product projectors is a density matrix")
}

/// −λ+ ln λ+ − λ− ln λ−
pub fn ree_pure(psi: &PureState) -> f64 {
    let s = schmidt_decompose(psi);
    [s.lambda_plus, s.lambda_minus]
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.ln())
        .sum()
}

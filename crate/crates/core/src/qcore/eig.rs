//! Cyclic complex Jacobi eigensolver and spectral matrix functions.

use super::mat::{Ket4, Mat4, Matrix, C64};
use super::{HERMITIAN_TOL, SUPPORT_THRESHOLD};
use crate::error::{QreeError, Result};

const OFF_DIAGONAL_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 100;

/// Eigendecomposition of a 4×4 Hermitian matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenSystem {
    /// Ascending eigenvalues.
    pub values: [f64; 4],
    /// `vectors[k]` is the normalized eigenvector for `values[k]`.
    pub vectors: [Ket4; 4],
}

impl EigenSystem {
    /// Σ f(λ_k) |v_k⟩⟨v_k|
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Mat4 {
        let mut m = Mat4::zeros();
        for k in 0..4 {
            m += Mat4::projector(&self.vectors[k]).scale(f(self.values[k]));
        }
        m
    }

    pub fn reconstruct(&self) -> Mat4 {
        self.map(|x| x)
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[3]
    }
}

/// Eigendecomposition with Hermiticity validation.
pub fn hermitian_eig(m: &Mat4) -> Result<EigenSystem> {
    if !m.is_finite() {
        return Err(QreeError::NonFinite);
    }
    let err = m.hermiticity_error();
    if err > HERMITIAN_TOL {
        return Err(QreeError::NotHermitian(err));
    }
    Ok(eigh(m))
}

/// Eigendecomposition of the Hermitian part of `m`, no validation.
pub fn eigh(m: &Mat4) -> EigenSystem {
    let (values, v) = jacobi(&m.hermitian_part());
    let mut vectors = [[C64::new(0.0, 0.0); 4]; 4];
    for k in 0..4 {
        for i in 0..4 {
            vectors[k][i] = v.0[i][k];
        }
    }
    EigenSystem { values, vectors }
}

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Returns ascending eigenvalues and a unitary whose columns are the
/// corresponding eigenvectors, each rotated so its largest-modulus
/// component is real and positive.
pub fn jacobi<const N: usize>(m: &Matrix<N>) -> ([f64; N], Matrix<N>) {
    let mut a = *m;
    let mut v = Matrix::<N>::identity();
    let scale = m.frobenius_norm().max(1.0);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..N)
            .flat_map(|i| (0..N).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a.0[i][j].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off < OFF_DIAGONAL_TOL * scale {
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: [usize; N] = std::array::from_fn(|i| i);
    order.sort_by(|&i, &j| a.0[i][i].re.total_cmp(&a.0[j][j].re));

    let values = std::array::from_fn(|k| a.0[order[k]][order[k]].re);
    let mut vecs = Matrix::<N>::zeros();
    for (k, &src) in order.iter().enumerate() {
        let mut lead = 0;
        let mut best = -1.0;
        for i in 0..N {
            let mag = v.0[i][src].norm();
            if mag > best + 1e-14 {
                best = mag;
                lead = i;
            }
        }
        let z = v.0[lead][src];
        let phase = if best > 0.0 { z.conj() / z.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..N {
            vecs.0[i][k] = v.0[i][src] * phase;
        }
        if best > 0.0 {
            vecs.0[lead][k] = C64::new(best, 0.0);
        }
    }
    (values, vecs)
}

fn rotate<const N: usize>(a: &mut Matrix<N>, v: &mut Matrix<N>, p: usize, q: usize) {
    let apq = a.0[p][q];
    let r = apq.norm();
    if r < 1e-300 {
        return;
    }
    let e = apq / r;
    let theta = (a.0[q][q].re - a.0[p][p].re) / (2.0 * r);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    // U = diag(1, conj(e)) · [[c, s], [-s, c]] restricted to (p, q)
    let upp = C64::new(c, 0.0);
    let upq = C64::new(s, 0.0);
    let uqp = e.conj() * (-s);
    let uqq = e.conj() * c;

    for k in 0..N {
        let akp = a.0[k][p];
        let akq = a.0[k][q];
        a.0[k][p] = akp * upp + akq * uqp;
        a.0[k][q] = akp * upq + akq * uqq;
    }
    for k in 0..N {
        let apk = a.0[p][k];
        let aqk = a.0[q][k];
        a.0[p][k] = upp.conj() * apk + uqp.conj() * aqk;
        a.0[q][k] = upq.conj() * apk + uqq.conj() * aqk;
    }
    a.0[p][q] = C64::new(0.0, 0.0);
    a.0[q][p] = C64::new(0.0, 0.0);
    a.0[p][p].im = 0.0;
    a.0[q][q].im = 0.0;
    for k in 0..N {
        let vkp = v.0[k][p];
        let vkq = v.0[k][q];
        v.0[k][p] = vkp * upp + vkq * uqp;
        v.0[k][q] = vkp * upq + vkq * uqq;
    }
}

/// Spectral function f(M) of a Hermitian matrix.
pub fn matrix_function(m: &Mat4, f: impl Fn(f64) -> f64) -> Mat4 {
    eigh(m).map(f)
}

/// Σ ln(λ_k) |v_k⟩⟨v_k| over eigenvalues above the support threshold.
pub fn matrix_log_on_support(m: &Mat4) -> Mat4 {
    eigh(m).map(|x| if x > SUPPORT_THRESHOLD { x.ln() } else { 0.0 })
}

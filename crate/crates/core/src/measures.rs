//! Scalar entanglement measures. All entropies are in nats.

use std::fmt;

use crate::error::{QreeError, Result};
use crate::qcore::{eigh, inner, matrix_log_on_support, DensityMatrix, Ket4, Mat4, C64, SUPPORT_THRESHOLD};

const NORMALIZATION_TOL: f64 = 1e-12;
const SUPPORT_LEAK_TOL: f64 = 1e-10;

/// Normalized two-qubit pure state α1|00⟩ + α2|01⟩ + α3|10⟩ + α4|11⟩.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PureState {
    amplitudes: Ket4,
}

impl PureState {
    pub fn new(amplitudes: Ket4) -> Result<Self> {
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(QreeError::NonFinite);
        }
        let n2 = inner(&amplitudes, &amplitudes).re;
        if (n2 - 1.0).abs() > NORMALIZATION_TOL {
            return Err(QreeError::NotNormalized(n2));
        }
        Ok(PureState { amplitudes })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(v: Ket4) -> Result<Self> {
        let n = inner(&v, &v).re.sqrt();
        if !(n > 0.0) || !n.is_finite() {
            return Err(QreeError::NotNormalized(n * n));
        }
        Self::new(v.map(|z| z / n))
    }

    pub fn from_real(a: [f64; 4]) -> Result<Self> {
        Self::new(a.map(|x| C64::new(x, 0.0)))
    }

    pub fn amplitudes(&self) -> &Ket4 {
        &self.amplitudes
    }

    pub fn projector(&self) -> Mat4 {
        Mat4::projector(&self.amplitudes)
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from_mixture(self.projector()).expect("projector of a normalized state is a valid density matrix")
    }
}

/// How an REE value in a [`MeasureReport`] was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReeMethod {
    ClosedForm,
    Procedure,
    Oracle,
}

impl fmt::Display for ReeMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReeMethod::ClosedForm => "closed_form",
            ReeMethod::Procedure => "procedure",
            ReeMethod::Oracle => "oracle",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasureReport {
    pub concurrence: f64,
    pub eof: f64,
    pub ree: f64,
    pub method: ReeMethod,
}

/// Result of a relative entropy evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RelativeEntropy {
    Finite(f64),
    /// The support of the first argument is not contained in that of the second.
    Infinite,
}

impl RelativeEntropy {
    pub fn is_finite(&self) -> bool {
        matches!(self, RelativeEntropy::Finite(_))
    }

    pub fn finite(&self) -> Option<f64> {
        match *self {
            RelativeEntropy::Finite(v) => Some(v),
            RelativeEntropy::Infinite => None,
        }
    }

    /// The value as a float, with `f64::INFINITY` for the infinite case.
    pub fn value(&self) -> f64 {
        self.finite().unwrap_or(f64::INFINITY)
    }
}

/// C = 2|α1α4 − α2α3|
pub fn concurrence_pure(psi: &PureState) -> f64 {
    let a = psi.amplitudes();
    (2.0 * (a[0] * a[3] - a[1] * a[2]).norm()).min(1.0)
}

/// σy ⊗ σy applied to the complex conjugate of `v`.
pub(crate) fn spin_flip(v: &Ket4) -> Ket4 {
    [-v[3].conj(), v[2].conj(), v[1].conj(), -v[0].conj()]
}

/// Subnormalized eigenvectors √λ_k e_k of ρ (zero off the support) and the
/// symmetric matrix τ_ij = ⟨v_i|σy⊗σy|v_j*⟩.
pub(crate) fn spin_flip_overlaps(rho: &DensityMatrix) -> ([Ket4; 4], Mat4) {
    let eig = rho.eigen();
    let vectors: [Ket4; 4] = std::array::from_fn(|k| {
        let lambda = eig.values[k];
        if lambda > SUPPORT_THRESHOLD {
            eig.vectors[k].map(|z| z * lambda.sqrt())
        } else {
            [C64::new(0.0, 0.0); 4]
        }
    });
    let mut tau = Mat4::zeros();
    for i in 0..4 {
        for j in i..4 {
            let z = inner(&vectors[i], &spin_flip(&vectors[j]));
            tau.0[i][j] = z;
            tau.0[j][i] = z;
        }
    }
    (vectors, tau)
}

/// Square roots of the eigenvalues of ρ(σy⊗σy)ρ*(σy⊗σy), descending.
pub fn spin_flip_singular_values(rho: &DensityMatrix) -> [f64; 4] {
    let (_, tau) = spin_flip_overlaps(rho);
    crate::qcore::takagi(&tau).0
}

/// C = max(0, s1 − s2 − s3 − s4).
pub fn concurrence_mixed(rho: &DensityMatrix) -> f64 {
    let s = spin_flip_singular_values(rho);
    (s[0] - s[1] - s[2] - s[3]).clamp(0.0, 1.0)
}

/// −x ln x − (1−x) ln(1−x), with 0 ln 0 = 0.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(QreeError::Domain(x));
    }
    Ok(xlnx_neg(x) + xlnx_neg(1.0 - x))
}

fn xlnx_neg(x: f64) -> f64 {
    if x > 0.0 {
        -x * x.ln()
    } else {
        0.0
    }
}

/// E_F = h((1 + √(1 − C²))/2); `c` is clamped to [0, 1].
pub fn eof_from_concurrence(c: f64) -> f64 {
    let c = c.clamp(0.0, 1.0);
    let x = (0.5 * (1.0 + (1.0 - c * c).sqrt())).clamp(0.5, 1.0);
    binary_entropy(x).expect("argument lies in [1/2, 1]")
}

pub fn eof(rho: &DensityMatrix) -> f64 {
    eof_from_concurrence(concurrence_mixed(rho))
}

pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    rho.eigen()
        .values
        .iter()
        .filter(|&&x| x > SUPPORT_THRESHOLD)
        .map(|&x| -x * x.ln())
        .sum()
}

/// S(ρ‖σ) = tr ρ ln ρ − tr ρ ln σ, evaluated on supports.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> RelativeEntropy {
    relative_entropy_matrices(rho.matrix(), sigma.matrix())
}

pub(crate) fn relative_entropy_matrices(rho: &Mat4, sigma: &Mat4) -> RelativeEntropy {
    let es = eigh(sigma);
    let mut leak = 0.0;
    for k in 0..4 {
        if es.values[k] <= SUPPORT_THRESHOLD {
            leak += rho.sandwich(&es.vectors[k], &es.vectors[k]).re;
        }
    }
    if leak > SUPPORT_LEAK_TOL {
        return RelativeEntropy::Infinite;
    }
    let log_sigma = es.map(|x| if x > SUPPORT_THRESHOLD { x.ln() } else { 0.0 });
    let log_rho = matrix_log_on_support(rho);
    let value = rho.trace_product(&log_rho).re - rho.trace_product(&log_sigma).re;
    RelativeEntropy::Finite(value)
}

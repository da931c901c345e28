//! Optimal pure-state decompositions for the entanglement of formation.

use crate::error::{QreeError, Result};
use crate::measures::{concurrence_mixed, concurrence_pure, eof, eof_from_concurrence, spin_flip_overlaps, PureState};
use crate::qcore::{inner, takagi, DensityMatrix, Ket4, Mat4, C64};

/// Concurrence at or below this counts as separable.
pub const SEPARABLE_CONCURRENCE: f64 = 1e-12;
const WEIGHT_FLOOR: f64 = 1e-12;
const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Weighted list of at most four pure states.
#[derive(Clone, Debug, PartialEq)]
pub struct Ensemble {
    members: Vec<(f64, PureState)>,
}

impl Ensemble {
    pub fn new(members: Vec<(f64, PureState)>) -> Result<Self> {
        if members.is_empty() || members.len() > 4 {
            return Err(QreeError::InvalidEnsemble(format!("{} members, expected 1 to 4", members.len())));
        }
        if let Some((p, _)) = members.iter().find(|(p, _)| !(-WEIGHT_SUM_TOL..=1.0 + WEIGHT_SUM_TOL).contains(p)) {
            return Err(QreeError::InvalidEnsemble(format!("weight {p} outside [0, 1]")));
        }
        let total: f64 = members.iter().map(|(p, _)| p).sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(QreeError::InvalidEnsemble(format!("weights sum to {total}")));
        }
        Ok(Ensemble { members })
    }

    pub fn members(&self) -> &[(f64, PureState)] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Σ p_j |ψ_j⟩⟨ψ_j|
    pub fn mixture(&self) -> Mat4 {
        self.members
            .iter()
            .fold(Mat4::zeros(), |acc, (p, psi)| acc + psi.projector().scale(*p))
    }

    /// Frobenius distance between the ensemble average and `rho`.
    pub fn residual(&self, rho: &DensityMatrix) -> f64 {
        (self.mixture() - *rho.matrix()).frobenius_norm()
    }
}

/// Checks an ensemble against the defining properties of an optimal decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    /// ‖Σ p_j ψ_jψ_j† − ρ‖_F
    pub reconstruction_residual: f64,
    /// |C(ψ_j) − C(ρ)| per member
    pub concurrence_deviations: Vec<f64>,
    /// Σ p_j E_F(ψ_j) − E_F(ρ)
    pub eof_excess: f64,
}

impl ValidationReport {
    pub fn max_concurrence_deviation(&self) -> f64 {
        self.concurrence_deviations.iter().fold(0.0, |a, &b| a.max(b))
    }

    /// True when every residual is within `tol`.
    pub fn passes(&self, tol: f64) -> bool {
        self.reconstruction_residual <= tol && self.max_concurrence_deviation() <= tol && self.eof_excess.abs() <= tol
    }
}

pub fn validate_optimal(rho: &DensityMatrix, e: &Ensemble) -> ValidationReport {
    let c = concurrence_mixed(rho);
    let concurrence_deviations = e
        .members()
        .iter()
        .map(|(_, psi)| (concurrence_pure(psi) - c).abs())
        .collect();
    let mean_eof: f64 = e
        .members()
        .iter()
        .map(|(p, psi)| p * eof_from_concurrence(concurrence_pure(psi)))
        .sum();
    ValidationReport {
        reconstruction_residual: e.residual(rho),
        concurrence_deviations,
        eof_excess: mean_eof - eof(rho),
    }
}

/// Decomposition of an entangled ρ into at most four pure states that all
/// carry the concurrence of ρ.
///
/// The spin-flip overlap matrix of the subnormalized eigenvectors is brought
/// to diagonal form by a Takagi factorization, giving vectors x_i with
/// ⟨x_i|x̃_j⟩ = s_i δ_ij. With y_1 = x_1 and y_j = i x_j otherwise, a real
/// orthogonal mix z = O y is chosen so that every z_i has concurrence C:
/// starting from the 4×4 Hadamard pattern, Givens rotations drive the
/// diagonal of O (diag(s1, −s2, −s3, −s4) − C Re⟨y_i|y_j⟩) Oᵀ to zero.
pub fn optimal_decomposition(rho: &DensityMatrix) -> Result<Ensemble> {
    let (vectors, tau) = spin_flip_overlaps(rho);
    let (s, u) = takagi(&tau);
    let c = s[0] - s[1] - s[2] - s[3];
    if c <= SEPARABLE_CONCURRENCE {
        return Err(QreeError::Separable(format!("concurrence {:.3e}, no entangled decomposition", c.max(0.0))));
    }

    let zero = C64::new(0.0, 0.0);
    let x: [Ket4; 4] = std::array::from_fn(|i| {
        let mut v = [zero; 4];
        for j in 0..4 {
            let coef = u.0[i][j].conj();
            for k in 0..4 {
                v[k] += coef * vectors[j][k];
            }
        }
        v
    });
    let y: [Ket4; 4] = std::array::from_fn(|i| if i == 0 { x[0] } else { x[i].map(|z| z * C64::i()) });

    let mut k = [[0.0f64; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            k[i][j] = -c * inner(&y[i], &y[j]).re;
        }
        k[i][i] += if i == 0 { s[0] } else { -s[i] };
    }

    let o = zero_diagonal_rotation(k);

    let mut members = Vec::with_capacity(4);
    for row in &o {
        let mut z = [zero; 4];
        for (coef, yj) in row.iter().zip(&y) {
            for t in 0..4 {
                z[t] += yj[t] * *coef;
            }
        }
        let p = inner(&z, &z).re;
        if p > WEIGHT_FLOOR {
            members.push((p, z));
        }
    }
    let total: f64 = members.iter().map(|(p, _)| p).sum();
    let members = members
        .into_iter()
        .map(|(p, z)| Ok((p / total, PureState::normalized(z)?)))
        .collect::<Result<Vec<_>>>()?;
    Ensemble::new(members)
}

/// Real orthogonal O with zero diagonal for O K Oᵀ, K symmetric with zero trace.
fn zero_diagonal_rotation(k: [[f64; 4]; 4]) -> [[f64; 4]; 4] {
    let scale = k.iter().flatten().fold(0.0f64, |a, &b| a.max(b.abs())).max(1e-300);
    let tol = 1e-15 * scale.max(1.0);
    let mut o = [[0.0; 4]; 4];
    if (0..4).all(|i| k[i][i].abs() <= tol) {
        for (i, row) in o.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        return o;
    }
    let h = [[1.0, 1.0, 1.0, 1.0], [1.0, 1.0, -1.0, -1.0], [1.0, -1.0, 1.0, -1.0], [1.0, -1.0, -1.0, 1.0]];
    for i in 0..4 {
        for j in 0..4 {
            o[i][j] = 0.5 * h[i][j];
        }
    }
    let mut kp = congruence(&o, &k);
    for _ in 0..8 {
        let (mut imax, mut imin) = (0, 0);
        for t in 1..4 {
            if kp[t][t] > kp[imax][imax] {
                imax = t;
            }
            if kp[t][t] < kp[imin][imin] {
                imin = t;
            }
        }
        if kp[imax][imax].abs() <= tol && kp[imin][imin].abs() <= tol {
            break;
        }
        let (i, j) = (imax, imin);
        // K_jj t² + 2 K_ij t + K_ii = 0, smaller root
        let (a, b, cc) = (kp[j][j], kp[i][j], kp[i][i]);
        let disc = (b * b - a * cc).max(0.0).sqrt();
        let q = -(b + b.signum() * disc);
        let t = if q != 0.0 {
            let r1 = q / a;
            let r2 = cc / q;
            if r1.abs() < r2.abs() {
                r1
            } else {
                r2
            }
        } else {
            (-cc / a).max(0.0).sqrt()
        };
        let cth = 1.0 / (1.0 + t * t).sqrt();
        let sth = t * cth;
        let mut r = [[0.0; 4]; 4];
        for (d, row) in r.iter_mut().enumerate() {
            row[d] = 1.0;
        }
        r[i][i] = cth;
        r[i][j] = sth;
        r[j][i] = -sth;
        r[j][j] = cth;
        o = matmul(&r, &o);
        kp = congruence(&r, &kp);
    }
    o
}

fn matmul(a: &[[f64; 4]; 4], b: &[[f64; 4]; 4]) -> [[f64; 4]; 4] {
    let mut m = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = (0..4).map(|t| a[i][t] * b[t][j]).sum();
        }
    }
    m
}

/// R K Rᵀ
fn congruence(r: &[[f64; 4]; 4], k: &[[f64; 4]; 4]) -> [[f64; 4]; 4] {
    let rk = matmul(r, k);
    let mut m = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = (0..4).map(|t| rk[i][t] * r[j][t]).sum();
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::Bell;

    fn bell_diagonal(l: [f64; 4]) -> DensityMatrix {
        let m = Bell::ALL
            .iter()
            .zip(l)
            .fold(Mat4::zeros(), |acc, (b, w)| acc + b.projector().scale(w));
        DensityMatrix::new(m).unwrap()
    }

    #[test]
    fn bell_diagonal_decomposition_is_optimal() {
        let rho = bell_diagonal([0.1, 0.1, 0.6, 0.2]);
        let e = optimal_decomposition(&rho).unwrap();
        assert_eq!(e.len(), 4);
        let r = validate_optimal(&rho, &e);
        assert!(r.passes(1e-10), "{r:?}");
        for (p, psi) in e.members() {
            assert!((p - 0.25).abs() < 1e-12);
            assert!((concurrence_pure(psi) - 0.2).abs() < 1e-10);
        }
    }

    #[test]
    fn pure_input_gives_single_member() {
        let rho = DensityMatrix::pure(&Bell::PsiMinus.ket()).unwrap();
        let e = optimal_decomposition(&rho).unwrap();
        assert_eq!(e.len(), 1);
        assert!(validate_optimal(&rho, &e).passes(1e-10));
    }

    #[test]
    fn separable_input_is_rejected() {
        let rho = DensityMatrix::maximally_mixed();
        assert!(matches!(optimal_decomposition(&rho), Err(QreeError::Separable(_))));
    }

    #[test]
    fn eigen_ensemble_is_not_optimal() {
        let rho = bell_diagonal([0.1, 0.15, 0.6, 0.15]);
        let eig = rho.eigen();
        let members = (0..4)
            .map(|k| (eig.values[k], PureState::normalized(eig.vectors[k]).unwrap()))
            .collect();
        let e = Ensemble::new(members).unwrap();
        let r = validate_optimal(&rho, &e);
        assert!(r.reconstruction_residual < 1e-12);
        assert!(r.max_concurrence_deviation() > 0.1);
        assert!(r.eof_excess > 0.1);
    }

    #[test]
    fn ensemble_rejects_bad_weights() {
        let psi = PureState::new(Bell::PhiPlus.ket()).unwrap();
        assert!(Ensemble::new(vec![(0.5, psi)]).is_err());
        assert!(Ensemble::new(vec![]).is_err());
        assert!(Ensemble::new(vec![(1.2, psi), (-0.2, psi)]).is_err());
    }
}

use super::FamilyOutcome;
use crate::error::{QreeError, Result};
use crate::measures::{binary_entropy, PureState};
use crate::qcore::{basis_ket, DensityMatrix, Ket4, Mat4};
use crate::wootters::Ensemble;

const PARAM_TOL: f64 = 1e-12;
const RANK_ONE_TOL: f64 = 1e-12;

/// A2 |01⟩⟨01| + A3 |10⟩⟨10| + D (|01⟩⟨10| + |10⟩⟨01|), with A2 + A3 = 1,
/// A2 ≥ A3 and 0 ≤ D ≤ √(A2A3).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VpTypeSpec {
    a2: f64,
    a3: f64,
    d: f64,
}

impl VpTypeSpec {
    pub fn new(a2: f64, a3: f64, d: f64) -> Result<Self> {
        let bad = |msg: String| Err(QreeError::InvalidSpec(format!("vp_type: {msg}")));
        if ![a2, a3, d].iter().all(|v| v.is_finite()) {
            return bad("non-finite parameter".into());
        }
        if a3 < 0.0 || (a2 + a3 - 1.0).abs() > PARAM_TOL {
            return bad(format!("need A2, A3 ≥ 0 with A2 + A3 = 1, got {a2} + {a3}"));
        }
        if a2 < a3 {
            return bad(format!("need A2 ≥ A3, got {a2} < {a3}"));
        }
        let cap = (a2 * a3).sqrt();
        if d < 0.0 || d > cap + PARAM_TOL {
            return bad(format!("need 0 ≤ D ≤ √(A2A3) = {cap}, got {d}"));
        }
        Ok(VpTypeSpec { a2, a3, d: d.min(cap) })
    }

    pub fn a2(&self) -> f64 {
        self.a2
    }

    pub fn a3(&self) -> f64 {
        self.a3
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    /// R = √((A2 − A3)² + 4D²)
    pub fn r(&self) -> f64 {
        (self.a2 - self.a3).hypot(2.0 * self.d)
    }

    /// Rotation angle with tan 2θ = 2D/(A2 − A3).
    pub fn theta(&self) -> f64 {
        0.5 * (2.0 * self.d).atan2(self.a2 - self.a3)
    }

    /// λ1,2 = ((A2 + A3) ± R)/2
    pub fn eigenvalues(&self) -> [f64; 2] {
        let (s, r) = (self.a2 + self.a3, self.r());
        [0.5 * (s + r), (0.5 * (s - r)).max(0.0)]
    }

    /// |λ1⟩ = cos θ |01⟩ + sin θ |10⟩, |λ2⟩ = sin θ |01⟩ − cos θ |10⟩
    pub fn eigenvectors(&self) -> [Ket4; 2] {
        let (s, c) = self.theta().sin_cos();
        let (k01, k10) = (basis_ket(1), basis_ket(2));
        [
            std::array::from_fn(|i| k01[i] * c + k10[i] * s),
            std::array::from_fn(|i| k01[i] * s - k10[i] * c),
        ]
    }

    /// p1,2 = (1 ± (A2 − A3)/√(1 − 4D²))/2
    pub fn weights(&self) -> [f64; 2] {
        let t = (self.a2 - self.a3) / (1.0 - 4.0 * self.d * self.d).sqrt();
        [0.5 * (1.0 + t), 0.5 * (1.0 - t)]
    }

    /// ξ± = R√(A2A3) ± D(A2 + A3)
    pub fn xi(&self) -> [f64; 2] {
        let base = self.r() * (self.a2 * self.a3).sqrt();
        let shift = self.d * (self.a2 + self.a3);
        [base + shift, (base - shift).max(0.0)]
    }

    /// η± = √(A2A3(1 − 4D²)) ± D(A2 − A3)
    pub fn eta(&self) -> [f64; 2] {
        let base = (self.a2 * self.a3 * (1.0 - 4.0 * self.d * self.d)).max(0.0).sqrt();
        let shift = self.d * (self.a2 - self.a3);
        [base + shift, (base - shift).max(0.0)]
    }

    /// 𝒴± = √(2A2A3R(√(1 − 4D²) ± (A2 − A3)))
    pub fn normalizers(&self) -> [f64; 2] {
        let root = (1.0 - 4.0 * self.d * self.d).max(0.0).sqrt();
        let k = 2.0 * self.a2 * self.a3 * self.r();
        let diff = self.a2 - self.a3;
        [(k * (root + diff)).sqrt(), (k * (root - diff)).max(0.0).sqrt()]
    }

    /// (√(ξ+η+) + √(ξ−η−), √(ξ+η−) − √(ξ−η+))
    fn mixing(&self) -> (f64, f64) {
        let [xp, xm] = self.xi();
        let [ep, em] = self.eta();
        ((xp * ep).sqrt() + (xm * em).sqrt(), (xp * em).sqrt() - (xm * ep).sqrt())
    }

    fn is_diagonal(&self) -> bool {
        self.d == 0.0
    }

    fn is_rank_one(&self) -> bool {
        self.eigenvalues()[1] <= RANK_ONE_TOL
    }

    /// Amplitudes on |01⟩ and |10⟩ of the two members.
    fn member_amplitudes(&self) -> [[f64; 2]; 2] {
        let (s, c) = self.theta().sin_cos();
        let [l1, l2] = self.eigenvalues().map(f64::sqrt);
        let (p, q) = self.mixing();
        let [yp, ym] = self.normalizers();
        [
            [(c * l1 * p + s * l2 * q) / yp, (s * l1 * p - c * l2 * q) / yp],
            [(c * l1 * q - s * l2 * p) / ym, (s * l1 * q + c * l2 * p) / ym],
        ]
    }

    /// Closest separable states of the two members, A² |01⟩⟨01| + B² |10⟩⟨10|
    /// with A, B their amplitudes.
    pub fn member_css(&self) -> [DensityMatrix; 2] {
        self.member_amplitudes().map(|[u, v]| {
            DensityMatrix::from_mixture(Mat4::from_real_diag([0.0, u * u, v * v, 0.0])).expect("diagonal state")
        })
    }

    pub fn density(&self) -> DensityMatrix {
        let mut m = Mat4::from_real_diag([0.0, self.a2, self.a3, 0.0]);
        m.0[1][2] = self.d.into();
        m.0[2][1] = self.d.into();
        DensityMatrix::from_mixture(m).expect("vp-type state")
    }

    /// A2 |01⟩⟨01| + A3 |10⟩⟨10|
    pub fn css(&self) -> DensityMatrix {
        DensityMatrix::from_mixture(Mat4::from_real_diag([0.0, self.a2, self.a3, 0.0])).expect("diagonal state")
    }

    /// h(A2) − h((1 + R)/2)
    pub fn ree(&self) -> f64 {
        let top = self.eigenvalues()[0].clamp(0.0, 1.0);
        binary_entropy(self.a2.clamp(0.0, 1.0)).expect("in range") - binary_entropy(top).expect("in range")
    }

    /// Optimal pair p1 |w1⟩ + p2 |w2⟩. A diagonal state splits into its
    /// two basis states and a pure state is its own single member.
    pub fn ensemble(&self) -> Result<Ensemble> {
        let (k01, k10) = (basis_ket(1), basis_ket(2));
        if self.is_diagonal() {
            return Ensemble::new(vec![(self.a2, PureState::new(k01)?), (self.a3, PureState::new(k10)?)]);
        }
        if self.is_rank_one() {
            return Ensemble::new(vec![(1.0, PureState::normalized(self.eigenvectors()[0])?)]);
        }
        let members = self
            .weights()
            .into_iter()
            .zip(self.member_amplitudes())
            .filter(|(p, _)| *p > RANK_ONE_TOL)
            .map(|(p, [u, v])| {
                let w: Ket4 = std::array::from_fn(|i| k01[i] * u + k10[i] * v);
                Ok((p, PureState::normalized(w)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let total: f64 = members.iter().map(|(p, _)| p).sum();
        Ensemble::new(members.into_iter().map(|(p, w)| (p / total, w)).collect())
    }
}

/// State, closest separable state, REE and optimal ensemble.
pub fn vp_type(spec: &VpTypeSpec) -> Result<FamilyOutcome> {
    Ok(FamilyOutcome {
        rho: spec.density(),
        css: spec.css(),
        ree: spec.ree(),
        ensemble: spec.ensemble()?,
    })
}

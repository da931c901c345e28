use std::f64::consts::{LN_2, PI};

use super::{check_distribution, FamilyOutcome};
use crate::error::{QreeError, Result};
use crate::measures::{binary_entropy, PureState};
use crate::qcore::{Bell, DensityMatrix, Mat4, C64};
use crate::wootters::Ensemble;

/// λ1 |β3⟩⟨β3| + λ2 |00⟩⟨00| + λ3 |11⟩⟨11|.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenHorodeckiSpec {
    lambdas: [f64; 3],
}

fn xlnx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

impl GenHorodeckiSpec {
    pub fn new(lambdas: [f64; 3]) -> Result<Self> {
        check_distribution("gen_horodecki", &lambdas)?;
        Ok(GenHorodeckiSpec { lambdas })
    }

    pub fn lambdas(&self) -> [f64; 3] {
        self.lambdas
    }

    /// λ1 − 2√(λ2λ3), the concurrence when positive.
    pub fn entanglement_margin(&self) -> f64 {
        let [l1, l2, l3] = self.lambdas;
        l1 - 2.0 * (l2 * l3).sqrt()
    }

    pub fn is_entangled(&self) -> bool {
        self.entanglement_margin() > 0.0
    }

    /// R = √(2λ1 + (√λ2 − √λ3)²)
    pub fn r(&self) -> f64 {
        let [l1, l2, l3] = self.lambdas;
        let d = l2.sqrt() - l3.sqrt();
        (2.0 * l1 + d * d).sqrt()
    }

    /// Schmidt weights λ± = ((R ± (√λ2 + √λ3))/2)², shared by every member.
    pub fn member_schmidt_weights(&self) -> [f64; 2] {
        let [_, l2, l3] = self.lambdas;
        let r = self.r();
        let s = l2.sqrt() + l3.sqrt();
        [(0.5 * (r + s)).powi(2), (0.5 * (r - s)).powi(2)]
    }

    fn coupling(&self, lead: f64) -> f64 {
        let [l1, l2, l3] = self.lambdas;
        let r2 = self.r().powi(2);
        (2.0 * l1).sqrt() / (4.0 * r2) * (2.0 * lead.sqrt() + (l2.sqrt() + l3.sqrt()) * self.entanglement_margin())
    }

    /// 𝒜, coupling of |00⟩ to the |01⟩, |10⟩ block in a member CSS.
    pub fn coupling_00(&self) -> f64 {
        self.coupling(self.lambdas[1])
    }

    /// ℬ, coupling of |11⟩ to the |01⟩, |10⟩ block in a member CSS.
    pub fn coupling_11(&self) -> f64 {
        self.coupling(self.lambdas[2])
    }

    /// Mixing weight of σ̃ at which x σ̃ + (1 − x) ρ reaches the PPT boundary:
    /// R²(λ1 + 2√(λ2λ3))/(2λ1).
    pub fn x(&self) -> f64 {
        let [l1, l2, l3] = self.lambdas;
        self.r().powi(2) * (l1 + 2.0 * (l2 * l3).sqrt()) / (2.0 * l1)
    }

    /// √λ1 |β3⟩ + √λ2 e^{iθ} |00⟩ + √λ3 e^{−iθ} |11⟩
    pub fn member(&self, theta: f64) -> PureState {
        let [l1, l2, l3] = self.lambdas;
        let b = Bell::PsiPlus.ket();
        let mut v = b.map(|z| z * l1.sqrt());
        v[0] += C64::from_polar(l2.sqrt(), theta);
        v[3] += C64::from_polar(l3.sqrt(), -theta);
        PureState::normalized(v).expect("unit norm")
    }

    /// Closed-form closest separable state of [`Self::member`].
    pub fn member_css(&self, theta: f64) -> DensityMatrix {
        let [l1, l2, l3] = self.lambdas;
        let q = l1 / (2.0 * self.r().powi(2));
        let a = self.coupling_00();
        let b = self.coupling_11();
        let e = |k: f64| C64::from_polar(1.0, k * theta);
        let re = |x: f64| C64::new(x, 0.0);
        let mut m = Mat4::zeros();
        m.0[0] = [re(0.5 * (l1 + 2.0 * l2) - q), e(1.0) * a, e(1.0) * a, e(2.0) * q];
        m.0[1] = [e(-1.0) * a, re(q), re(q), e(1.0) * b];
        m.0[2] = [e(-1.0) * a, re(q), re(q), e(1.0) * b];
        m.0[3] = [e(-2.0) * q, e(-1.0) * b, e(-1.0) * b, re(0.5 * (l1 + 2.0 * l3) - q)];
        DensityMatrix::from_mixture(m).expect("member CSS")
    }

    /// Equal-weight average of the three member CSSs.
    pub fn sigma_tilde(&self) -> DensityMatrix {
        let [l1, l2, l3] = self.lambdas;
        let q = l1 / (2.0 * self.r().powi(2));
        let mut m = Mat4::from_real_diag([0.5 * (l1 + 2.0 * l2) - q, q, q, 0.5 * (l1 + 2.0 * l3) - q]);
        m.0[1][2] = C64::new(q, 0.0);
        m.0[2][1] = C64::new(q, 0.0);
        DensityMatrix::from_mixture(m).expect("σ̃")
    }

    /// Members at θ = 0, 2π/3, 4π/3, each with weight 1/3.
    pub fn ensemble(&self) -> Result<Ensemble> {
        Ensemble::new((0..3).map(|k| (1.0 / 3.0, self.member(2.0 * PI * k as f64 / 3.0))).collect())
    }

    pub fn density(&self) -> DensityMatrix {
        let [l1, l2, l3] = self.lambdas;
        let m = Bell::PsiPlus.projector().scale(l1) + Mat4::from_real_diag([l2, 0.0, 0.0, l3]);
        DensityMatrix::from_mixture(m).expect("generalized Horodecki mixture")
    }

    /// (λ1 + 2λ2)(λ1 + 2λ3)/2 |β3⟩⟨β3| + (λ1 + 2λ2)²/4 |00⟩⟨00| + (λ1 + 2λ3)²/4 |11⟩⟨11|
    pub fn css(&self) -> DensityMatrix {
        let [l1, l2, l3] = self.lambdas;
        let (u, w) = (l1 + 2.0 * l2, l1 + 2.0 * l3);
        let m = Bell::PsiPlus.projector().scale(0.5 * u * w) + Mat4::from_real_diag([0.25 * u * u, 0.0, 0.0, 0.25 * w * w]);
        DensityMatrix::from_mixture(m).expect("closest separable state")
    }

    /// Σ λ_i ln λ_i + 2h(λ1/2 + λ2) − λ1 ln 2
    pub fn ree(&self) -> f64 {
        let [l1, l2, l3] = self.lambdas;
        let h = binary_entropy((0.5 * l1 + l2).clamp(0.0, 1.0)).expect("in range");
        xlnx(l1) + xlnx(l2) + xlnx(l3) + 2.0 * h - l1 * LN_2
    }
}

/// State, closest separable state, REE and three-member ensemble.
pub fn gen_horodecki(spec: &GenHorodeckiSpec) -> Result<FamilyOutcome> {
    if !spec.is_entangled() {
        return Err(QreeError::Separable(format!(
            "λ1 − 2√(λ2λ3) = {:.3e}, the state is separable",
            spec.entanglement_margin()
        )));
    }
    Ok(FamilyOutcome {
        rho: spec.density(),
        css: spec.css(),
        ree: spec.ree(),
        ensemble: spec.ensemble()?,
    })
}

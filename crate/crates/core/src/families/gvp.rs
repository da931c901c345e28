use super::{check_distribution, FamilyOutcome};
use crate::error::{QreeError, Result};
use crate::measures::{binary_entropy, PureState};
use crate::qcore::{basis_ket, Bell, DensityMatrix, Ket4, Mat4, C64};
use crate::wootters::Ensemble;

/// λ1 |β3⟩⟨β3| + λ2 |01⟩⟨01| + λ3 |10⟩⟨10|.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GvpSpec {
    lambdas: [f64; 3],
}

impl GvpSpec {
    pub fn new(lambdas: [f64; 3]) -> Result<Self> {
        check_distribution("gvp", &lambdas)?;
        Ok(GvpSpec { lambdas })
    }

    pub fn lambdas(&self) -> [f64; 3] {
        self.lambdas
    }

    /// √(λ1² + (λ2 − λ3)²)
    pub fn spread(&self) -> f64 {
        let [l1, l2, l3] = self.lambdas;
        l1.hypot(l2 - l3)
    }

    /// Nonzero eigenvalues Λ± = (1 ± spread)/2.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let s = self.spread();
        [0.5 * (1.0 + s), 0.5 * (1.0 - s)]
    }

    /// spread + (λ2 − λ3), evaluated without cancellation.
    fn shifted_spread(&self) -> f64 {
        let [l1, l2, l3] = self.lambdas;
        let d = l2 - l3;
        let s = self.spread();
        if d >= 0.0 {
            s + d
        } else {
            l1 * l1 / (s - d)
        }
    }

    /// a = λ1Λ+/spread
    pub fn overlap_a(&self) -> f64 {
        self.lambdas[0] * self.eigenvalues()[0] / self.spread()
    }

    /// b = −(λ2 − λ3)√(Λ+Λ−)/spread
    pub fn overlap_b(&self) -> f64 {
        let [_, l2, l3] = self.lambdas;
        let [lp, lm] = self.eigenvalues();
        -(l2 - l3) * (lp * lm).max(0.0).sqrt() / self.spread()
    }

    /// c = −λ1Λ−/spread
    pub fn overlap_c(&self) -> f64 {
        -self.lambdas[0] * self.eigenvalues()[1] / self.spread()
    }

    /// √((a − c)² + 4b²) − (a − c), evaluated without cancellation.
    fn phase_gap(&self) -> f64 {
        let (a, b, c) = (self.overlap_a(), self.overlap_b(), self.overlap_c());
        let amc = a - c;
        let root = amc.hypot(2.0 * b);
        4.0 * b * b / (root + amc)
    }

    /// Ω = √(2[(a − c)² + 4b² − (a − c)√((a − c)² + 4b²)])
    pub fn omega(&self) -> f64 {
        let (a, b, c) = (self.overlap_a(), self.overlap_b(), self.overlap_c());
        let root = (a - c).hypot(2.0 * b);
        (2.0 * root * self.phase_gap()).sqrt()
    }

    /// Normalizer N of the eigenvectors.
    pub fn normalizer(&self) -> f64 {
        (2.0 * self.spread() * self.shifted_spread()).sqrt()
    }

    /// Normalized eigenvectors |Λ+⟩, |Λ−⟩.
    pub fn eigenvectors(&self) -> [Ket4; 2] {
        let l1 = self.lambdas[0];
        let n = self.normalizer();
        let t = self.shifted_spread();
        let (k01, k10) = (basis_ket(1), basis_ket(2));
        let plus = std::array::from_fn(|i| (k01[i] * t + k10[i] * l1) / n);
        let minus = std::array::from_fn(|i| (k01[i] * l1 - k10[i] * t) / n);
        [plus, minus]
    }

    /// √Λ± |Λ±⟩
    pub fn subnormalized_eigenvectors(&self) -> [Ket4; 2] {
        let [lp, lm] = self.eigenvalues();
        let [p, m] = self.eigenvectors();
        [p.map(|z| z * lp.sqrt()), m.map(|z| z * lm.max(0.0).sqrt())]
    }

    pub fn density(&self) -> DensityMatrix {
        let [l1, l2, l3] = self.lambdas;
        let m = Bell::PsiPlus.projector().scale(l1) + Mat4::from_real_diag([0.0, l2, l3, 0.0]);
        DensityMatrix::from_mixture(m).expect("GVP mixture")
    }

    /// (λ1/2 + λ2) |01⟩⟨01| + (λ1/2 + λ3) |10⟩⟨10|
    pub fn css(&self) -> DensityMatrix {
        let [l1, l2, l3] = self.lambdas;
        DensityMatrix::from_mixture(Mat4::from_real_diag([0.0, 0.5 * l1 + l2, 0.5 * l1 + l3, 0.0]))
            .expect("diagonal state")
    }

    /// h(λ1/2 + λ2) − h(Λ+)
    pub fn ree(&self) -> f64 {
        let [l1, l2, _] = self.lambdas;
        let x = (0.5 * l1 + l2).clamp(0.0, 1.0);
        let lp = self.eigenvalues()[0].clamp(0.0, 1.0);
        binary_entropy(x).expect("in range") - binary_entropy(lp).expect("in range")
    }

    /// Equal-weight pair ∝ |v+⟩ ± i|v−⟩ with the unit-modulus prefactors
    /// −i(2b ∓ i[√((a − c)² + 4b²) − (a − c)])/Ω.
    ///
    /// This pair reproduces the state and both members share the closest
    /// separable state of the family, but their concurrence is 2√(A2 A3)
    /// with A2, A3 the diagonal of the closest separable state, which exceeds
    /// that of the mixture unless λ2 = λ3. [`crate::wootters::optimal_decomposition`]
    /// gives an optimal one. When λ2 = λ3 the prefactor is 0/0 and is taken as 1.
    pub fn ensemble(&self) -> Result<Ensemble> {
        let b = self.overlap_b();
        let gap = self.phase_gap();
        let omega = self.omega();
        let i = C64::i();
        let prefactor = |sign: f64| {
            if omega > 1e-12 {
                -i * (C64::new(2.0 * b, 0.0) - i * (sign * gap)) / omega
            } else {
                C64::new(1.0, 0.0)
            }
        };
        let [vp, vm] = self.subnormalized_eigenvectors();
        let members = [1.0, -1.0]
            .iter()
            .map(|&sign| {
                let f = prefactor(sign);
                let v: Ket4 = std::array::from_fn(|k| f * (vp[k] + i * sign * vm[k]));
                Ok((0.5, PureState::normalized(v)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ensemble::new(members)
    }
}

/// State, closest separable state, REE and two-member ensemble.
pub fn gvp(spec: &GvpSpec) -> Result<FamilyOutcome> {
    if spec.lambdas[0] <= 0.0 {
        return Err(QreeError::Separable("λ1 = 0 leaves a diagonal, separable state".into()));
    }
    Ok(FamilyOutcome {
        rho: spec.density(),
        css: spec.css(),
        ree: spec.ree(),
        ensemble: spec.ensemble()?,
    })
}

use std::f64::consts::LN_2;

use super::{check_distribution, FamilyOutcome};
use crate::error::{QreeError, Result};
use crate::measures::{binary_entropy, PureState};
use crate::qcore::{Bell, DensityMatrix, Ket2, Ket4, Mat4, C64};
use crate::wootters::Ensemble;

/// Pauli operator on the second qubit that relabels Bell states.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum LocalPauli {
    I,
    X,
    Y,
    Z,
}

impl LocalPauli {
    /// Bring the Bell state with index `k` (0-based) onto |β3⟩.
    fn to_psi_plus(k: usize) -> Self {
        [LocalPauli::X, LocalPauli::Y, LocalPauli::I, LocalPauli::Z][k]
    }

    /// Index permutation of the Bell labels; each is an involution.
    fn permutation(self) -> [usize; 4] {
        match self {
            LocalPauli::I => [0, 1, 2, 3],
            LocalPauli::X => [2, 3, 0, 1],
            LocalPauli::Y => [3, 2, 1, 0],
            LocalPauli::Z => [1, 0, 3, 2],
        }
    }

    fn apply(self, a: &Ket4) -> Ket4 {
        let i = C64::i();
        match self {
            LocalPauli::I => *a,
            LocalPauli::X => [a[1], a[0], a[3], a[2]],
            LocalPauli::Y => [-i * a[1], i * a[0], -i * a[3], i * a[2]],
            LocalPauli::Z => [a[0], -a[1], a[2], -a[3]],
        }
    }

    fn operator(self) -> Mat4 {
        let mut u = Mat4::zeros();
        for col in 0..4 {
            let mut e = [C64::new(0.0, 0.0); 4];
            e[col] = C64::new(1.0, 0.0);
            let img = self.apply(&e);
            for row in 0..4 {
                u.0[row][col] = img[row];
            }
        }
        u
    }

    fn conjugate(self, m: &Mat4) -> Mat4 {
        let u = self.operator();
        u * *m * u.adjoint()
    }
}

/// Σ λ_j |β_j⟩⟨β_j| with weights in the order β1..β4 of [`Bell::ALL`].
///
/// Internally the largest weight is moved onto |β3⟩ by a Pauli on the
/// second qubit; the canonical-frame quantities (`canonical_*`, `mu`, `nu_*`,
/// `d_*`, `n_*`) refer to that frame, all states are returned in the
/// caller's labeling.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BellDiagonalSpec {
    lambdas: [f64; 4],
    canonical: [f64; 4],
    frame: LocalPauli,
}

impl BellDiagonalSpec {
    pub fn new(lambdas: [f64; 4]) -> Result<Self> {
        check_distribution("bell_diagonal", &lambdas)?;
        let k = (0..4).fold(0, |best, j| if lambdas[j] > lambdas[best] { j } else { best });
        let frame = LocalPauli::to_psi_plus(k);
        let perm = frame.permutation();
        let canonical = std::array::from_fn(|j| lambdas[perm[j]]);
        Ok(BellDiagonalSpec { lambdas, canonical, frame })
    }

    pub fn lambdas(&self) -> [f64; 4] {
        self.lambdas
    }

    /// Weights relabeled so the largest sits on |β3⟩.
    pub fn canonical_lambdas(&self) -> [f64; 4] {
        self.canonical
    }

    pub fn max_weight(&self) -> f64 {
        self.canonical[2]
    }

    pub fn is_entangled(&self) -> bool {
        self.max_weight() > 0.5
    }

    /// μ = √λ1 + i√λ2 (canonical frame)
    pub fn mu(&self) -> C64 {
        C64::new(self.canonical[0].sqrt(), self.canonical[1].sqrt())
    }

    /// ν+ = 2(1 − λ3)√λ3 + √λ4 (canonical frame)
    pub fn nu_plus(&self) -> f64 {
        let [_, _, l3, l4] = self.canonical;
        2.0 * (1.0 - l3) * l3.sqrt() + l4.sqrt()
    }

    /// ν− = 2(1 − λ3)√λ3 − √λ4 (canonical frame)
    pub fn nu_minus(&self) -> f64 {
        let [_, _, l3, l4] = self.canonical;
        2.0 * (1.0 - l3) * l3.sqrt() - l4.sqrt()
    }

    /// d+ = (1 − λ3 + λ4) + 4(1 − λ3)√(λ3λ4)
    pub fn d_plus(&self) -> f64 {
        let [_, _, l3, l4] = self.canonical;
        (1.0 - l3 + l4) + 4.0 * (1.0 - l3) * (l3 * l4).sqrt()
    }

    /// d− = (1 − λ3 + λ4) − 4(1 − λ3)√(λ3λ4)
    pub fn d_minus(&self) -> f64 {
        let [_, _, l3, l4] = self.canonical;
        (1.0 - l3 + l4) - 4.0 * (1.0 - l3) * (l3 * l4).sqrt()
    }

    /// Normalizer of |0_A⟩, |0_B⟩: √(2√(1 − λ3)(√(1 − λ3) + √λ4))
    pub fn n_plus(&self) -> f64 {
        let [_, _, l3, l4] = self.canonical;
        let r = (1.0 - l3).sqrt();
        (2.0 * r * (r + l4.sqrt())).sqrt()
    }

    /// Normalizer of |1_A⟩, |1_B⟩: √(2√(1 − λ3)(√(1 − λ3) − √λ4))
    pub fn n_minus(&self) -> f64 {
        let [_, _, l3, l4] = self.canonical;
        let r = (1.0 - l3).sqrt();
        (2.0 * r * (r - l4.sqrt())).max(0.0).sqrt()
    }

    /// Schmidt weights (√λ3 ± √(1 − λ3))²/2 shared by all ensemble members.
    pub fn member_schmidt_weights(&self) -> [f64; 2] {
        let l3 = self.canonical[2];
        let (a, b) = (l3.sqrt(), (1.0 - l3).sqrt());
        [0.5 * (a + b) * (a + b), 0.5 * (a - b) * (a - b)]
    }

    /// Schmidt bases ([|0_A⟩, |1_A⟩], [|0_B⟩, |1_B⟩]) of the first ensemble
    /// member, in the canonical frame.
    pub fn member_schmidt_bases(&self) -> ([Ket2; 2], [Ket2; 2]) {
        let [_, _, l3, l4] = self.canonical;
        let r = (1.0 - l3).sqrt();
        let s4 = l4.sqrt();
        let mu = self.mu();
        let (np, nm) = (self.n_plus(), self.n_minus());
        let re = |x: f64| C64::new(x, 0.0);
        let a0 = [re((r + s4) / np), mu.conj() / np];
        let a1 = [re(-(r - s4) / nm), mu.conj() / nm];
        let b0 = [mu / np, re((r + s4) / np)];
        let b1 = [mu / nm, re(-(r - s4) / nm)];
        ([a0, a1], [b0, b1])
    }

    pub fn density(&self) -> DensityMatrix {
        let m = Bell::ALL
            .iter()
            .zip(self.lambdas)
            .fold(Mat4::zeros(), |acc, (b, w)| acc + b.projector().scale(w));
        DensityMatrix::from_mixture(m).expect("Bell-diagonal mixture")
    }

    /// Closest separable state: the largest weight becomes 1/2, the others
    /// are rescaled by 1/(2(1 − λmax)).
    pub fn css(&self) -> DensityMatrix {
        let [l1, l2, l3, l4] = self.canonical;
        let rest = 1.0 - l3;
        let w = if rest > 0.0 {
            [l1 / (2.0 * rest), l2 / (2.0 * rest), 0.5, l4 / (2.0 * rest)]
        } else {
            [0.0, 0.0, 0.5, 0.5]
        };
        DensityMatrix::from_mixture(self.from_canonical(&Self::bell_mixture(w))).expect("Bell-diagonal mixture")
    }

    /// ln 2 − h(λmax)
    pub fn ree(&self) -> f64 {
        LN_2 - binary_entropy(self.max_weight()).expect("weight in [0, 1]")
    }

    /// Four equal-weight members √λ1 β1 ± i√λ2 β2 ± √λ3 β3 ± √λ4 β4.
    pub fn ensemble(&self) -> Result<Ensemble> {
        let s: [f64; 4] = self.canonical.map(f64::sqrt);
        let signs = [(1.0, 1.0, 1.0), (1.0, -1.0, -1.0), (-1.0, 1.0, -1.0), (-1.0, -1.0, 1.0)];
        let members = signs
            .iter()
            .map(|&(s2, s3, s4)| {
                let coef = [C64::new(s[0], 0.0), C64::new(0.0, s2 * s[1]), C64::new(s3 * s[2], 0.0), C64::new(s4 * s[3], 0.0)];
                let v = self.frame.apply(&combine_bell(coef));
                Ok((0.25, PureState::new(v)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ensemble::new(members)
    }

    /// Closest separable state of the first ensemble member, written with μ, ν±, d±.
    pub fn member_css(&self) -> Result<DensityMatrix> {
        let rest = 1.0 - self.canonical[2];
        if rest <= 0.0 {
            return Err(QreeError::InvalidSpec("member CSS formula needs λmax < 1".into()));
        }
        let mu = self.mu();
        let mc = mu.conj();
        let (np, nm) = (self.nu_plus(), self.nu_minus());
        let re = |x: f64| C64::new(x, 0.0);
        let mm = mu * mc;
        let m = crate::qcore::Matrix([
            [mm, mu * np, mu * nm, mu * mu],
            [mc * np, re(self.d_plus()), mm, mu * np],
            [mc * nm, mm, re(self.d_minus()), mu * nm],
            [mc * mc, mc * np, mc * nm, mm],
        ])
        .scale(1.0 / (4.0 * rest));
        DensityMatrix::from_mixture(self.from_canonical(&m))
    }

    /// Equal-weight mixture of the four member CSSs, an X-shaped matrix.
    pub fn sigma_tilde(&self) -> Result<DensityMatrix> {
        let [l1, l2, l3, l4] = self.canonical;
        let rest = 1.0 - l3;
        if rest <= 0.0 {
            return Err(QreeError::InvalidSpec("mixture formula needs λmax < 1".into()));
        }
        let mut m = Mat4::from_real_diag([l1 + l2, rest + l4, rest + l4, l1 + l2]);
        m.0[0][3] = C64::new(l1 - l2, 0.0);
        m.0[3][0] = C64::new(l1 - l2, 0.0);
        m.0[1][2] = C64::new(l1 + l2, 0.0);
        m.0[2][1] = C64::new(l1 + l2, 0.0);
        DensityMatrix::from_mixture(self.from_canonical(&m.scale(1.0 / (4.0 * rest))))
    }

    fn bell_mixture(w: [f64; 4]) -> Mat4 {
        Bell::ALL
            .iter()
            .zip(w)
            .fold(Mat4::zeros(), |acc, (b, x)| acc + b.projector().scale(x))
    }

    fn from_canonical(&self, m: &Mat4) -> Mat4 {
        self.frame.conjugate(m)
    }
}

fn combine_bell(coef: [C64; 4]) -> Ket4 {
    let mut v = [C64::new(0.0, 0.0); 4];
    for (c, b) in coef.iter().zip(Bell::ALL) {
        let k = b.ket();
        for i in 0..4 {
            v[i] += c * k[i];
        }
    }
    v
}

/// State, closest separable state, REE and optimal ensemble of an entangled
/// Bell-diagonal state.
pub fn bell_diagonal(spec: &BellDiagonalSpec) -> Result<FamilyOutcome> {
    if !spec.is_entangled() {
        return Err(QreeError::Separable(format!(
            "largest Bell weight {} is at most 1/2",
            spec.max_weight()
        )));
    }
    Ok(FamilyOutcome {
        rho: spec.density(),
        css: spec.css(),
        ree: spec.ree(),
        ensemble: spec.ensemble()?,
    })
}

use super::XState;
use crate::error::{QreeError, Result};
use crate::measures::PureState;
use crate::qcore::{kron, Bell, DensityMatrix, Ket2, Ket4, Mat4, C64};
use crate::wootters::Ensemble;

const PARAM_TOL: f64 = 1e-12;
const ROOT_SLACK: f64 = 1e-12;

/// X state with diagonal (A1, A, A, A4) and coherence D between |01⟩ and |10⟩,
/// A1 + A4 + 2A = 1, 0 ≤ D ≤ A.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HorodeckiTypeSpec {
    a1: f64,
    a4: f64,
    a: f64,
    d: f64,
}

/// State, procedure candidate, true closest separable state and the
/// four-member optimal ensemble.
#[derive(Clone, Debug, PartialEq)]
pub struct HorodeckiTypeOutcome {
    pub rho: DensityMatrix,
    pub procedure_css_candidate: DensityMatrix,
    pub true_css: DensityMatrix,
    pub ensemble: Ensemble,
}

/// Qubit swap applied on both sides.
fn swap_conjugate(m: &Mat4) -> Mat4 {
    const P: [usize; 4] = [0, 2, 1, 3];
    let mut out = Mat4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            out.0[P[i]][P[j]] = m.0[i][j];
        }
    }
    out
}

impl HorodeckiTypeSpec {
    pub fn new(a1: f64, a4: f64, a: f64, d: f64) -> Result<Self> {
        let bad = |msg: String| Err(QreeError::InvalidSpec(format!("horodecki_type: {msg}")));
        if ![a1, a4, a, d].iter().all(|v| v.is_finite()) {
            return bad("non-finite parameter".into());
        }
        if a1 < 0.0 || a4 < 0.0 || a < 0.0 || d < 0.0 {
            return bad(format!("parameters must be non-negative, got ({a1}, {a4}, {a}, {d})"));
        }
        if (a1 + a4 + 2.0 * a - 1.0).abs() > PARAM_TOL {
            return bad(format!("A1 + A4 + 2A = {}, expected 1", a1 + a4 + 2.0 * a));
        }
        if d > a + PARAM_TOL {
            return bad(format!("need D ≤ A, got D = {d} > A = {a}"));
        }
        Ok(HorodeckiTypeSpec { a1, a4, a, d: d.min(a) })
    }

    pub fn a1(&self) -> f64 {
        self.a1
    }

    pub fn a4(&self) -> f64 {
        self.a4
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn is_entangled(&self) -> bool {
        self.d > (self.a1 * self.a4).sqrt()
    }

    /// 𝒞 = 2(D − √(A1A4)), the concurrence when positive.
    pub fn concurrence(&self) -> f64 {
        2.0 * (self.d - (self.a1 * self.a4).sqrt())
    }

    /// 1 − 𝒞², which vanishes only at the Bell point.
    fn gap(&self) -> f64 {
        let c = self.concurrence();
        1.0 - c * c
    }

    /// 𝒵±² = ½√(1 − 𝒞²)[√(1 − 𝒞²) ∓ (A1 − A4) ± 2√(A² − D²)]
    pub fn z(&self) -> [f64; 2] {
        let r = self.gap().max(0.0).sqrt();
        let t = 2.0 * (self.a * self.a - self.d * self.d).max(0.0).sqrt() - (self.a1 - self.a4);
        [(0.5 * r * (r + t)).max(0.0).sqrt(), (0.5 * r * (r - t)).max(0.0).sqrt()]
    }

    fn x_state(&self) -> XState {
        XState { p00: self.a1, p11: self.a4, mid: self.a, coherence: self.d }
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from_mixture(self.x_state().matrix()).expect("horodecki-type state")
    }

    /// √(A + D) |β3⟩ ± √(A − D) |β4⟩ + e^{iθ} √A1 |00⟩ + e^{−iθ} √A4 |11⟩,
    /// with + for `first`.
    pub fn member(&self, first: bool, theta: f64) -> PureState {
        let p = (self.a + self.d).sqrt();
        let m = (self.a - self.d).max(0.0).sqrt() * if first { 1.0 } else { -1.0 };
        let (b3, b4) = (Bell::PsiPlus.ket(), Bell::PsiMinus.ket());
        let mut v: Ket4 = std::array::from_fn(|k| b3[k] * p + b4[k] * m);
        v[0] += C64::from_polar(self.a1.sqrt(), theta);
        v[3] += C64::from_polar(self.a4.sqrt(), -theta);
        PureState::normalized(v).expect("unit norm")
    }

    /// Schmidt weights ((√(1 + 𝒞) ± √(1 − 𝒞))/2)² of every member.
    pub fn member_schmidt_weights(&self) -> [f64; 2] {
        let c = self.concurrence();
        let (sp, sm) = ((1.0 + c).sqrt(), (1.0 - c).max(0.0).sqrt());
        [(0.5 * (sp + sm)).powi(2), (0.5 * (sp - sm)).powi(2)]
    }

    /// Closed-form Schmidt bases ([0_A, 1_A], [0_B, 1_B]) of the first member.
    pub fn member_schmidt_bases(&self, theta: f64) -> ([Ket2; 2], [Ket2; 2]) {
        let c = self.concurrence();
        let (sp, sm) = ((1.0 + c).sqrt(), (1.0 - c).max(0.0).sqrt());
        let r = self.gap().max(0.0).sqrt();
        let p = (self.a + self.d).sqrt();
        let m = (self.a - self.d).max(0.0).sqrt();
        let (sa1, sa4) = (self.a1.sqrt(), self.a4.sqrt());
        let (sum, diff) = (sa1 + sa4, sa1 - sa4);
        let [zp, zm] = self.z();
        let back = C64::from_polar(1.0, -theta);
        let fwd = C64::from_polar(1.0, theta);
        let rt2 = std::f64::consts::SQRT_2;
        let re = |x: f64| C64::new(x, 0.0);
        let a0 = [re(rt2 * (m * sp + p * sm)), back * (sum * sp - diff * sm)].map(|z| z / (2.0 * zp));
        let a1 = [re(rt2 * (m * sp - p * sm)), back * (sum * sp + diff * sm)].map(|z| z / (2.0 * zm));
        let lead = fwd * (rt2 * (p * sum + m * diff));
        let tail = 2.0 * p * m - (self.a1 - self.a4);
        let b0 = [lead, re(tail + r)].map(|z| z / (2.0 * zp));
        let b1 = [lead, re(tail - r)].map(|z| z / (2.0 * zm));
        ([a0, a1], [b0, b1])
    }

    /// Closest separable state σ1(θ) of the first member, or σ2(θ) of the
    /// second, which is its qubit swap.
    pub fn member_css(&self, first: bool, theta: f64) -> DensityMatrix {
        let [wp, wm] = self.member_schmidt_weights();
        let ([a0, a1], [b0, b1]) = self.member_schmidt_bases(theta);
        let m = Mat4::projector(&kron(&a0, &b0)).scale(wp) + Mat4::projector(&kron(&a1, &b1)).scale(wm);
        let m = if first { m } else { swap_conjugate(&m) };
        DensityMatrix::from_mixture(m).expect("member CSS")
    }

    /// Members φ1(0), φ1(π), φ2(π/2), φ2(−π/2).
    fn member_labels() -> [(bool, f64); 4] {
        use std::f64::consts::{FRAC_PI_2, PI};
        [(true, 0.0), (true, PI), (false, FRAC_PI_2), (false, -FRAC_PI_2)]
    }

    /// Four equal-weight members.
    pub fn ensemble(&self) -> Result<Ensemble> {
        Ensemble::new(Self::member_labels().iter().map(|&(f, t)| (0.25, self.member(f, t))).collect())
    }

    /// Member closest separable states in ensemble order.
    pub fn ensemble_member_css(&self) -> Vec<DensityMatrix> {
        Self::member_labels().iter().map(|&(f, t)| self.member_css(f, t)).collect()
    }

    /// Entries (a1, a4, a, d) of Π̃, the average of the member CSSs.
    pub fn pi_tilde_entries(&self) -> XState {
        let c = self.concurrence();
        let g = self.gap();
        let (sa1, sa4) = (self.a1.sqrt(), self.a4.sqrt());
        let common = (1.0 + c) * (sa1 + sa4).powi(2) + (1.0 - c) * (sa1 - sa4).powi(2);
        let tilt = 2.0 * g * (self.a1 - self.a4);
        XState {
            p00: (common + tilt) / (4.0 * g),
            p11: (common - tilt) / (4.0 * g),
            mid: ((1.0 + c) * (self.a - self.d) + (1.0 - c) * (self.a + self.d)) / (2.0 * g),
            coherence: (2.0 * self.a * sa1 * sa4 + self.d * (self.a1 + self.a4)) / g,
        }
    }

    pub fn pi_tilde(&self) -> DensityMatrix {
        DensityMatrix::from_mixture(self.pi_tilde_entries().matrix()).expect("Π̃")
    }

    /// f = 𝒞(D − A𝒞)
    pub fn f(&self) -> f64 {
        let c = self.concurrence();
        c * (self.d - self.a * c)
    }

    /// g = 𝒞(𝒞D − A)
    pub fn g(&self) -> f64 {
        let c = self.concurrence();
        c * (c * self.d - self.a)
    }

    /// Weight of Π̃ in x Π̃ + (1 − x) ρ at which the PT block
    /// [[x u + A1, x v + D], [x v + D, x u + A4]] becomes singular, with
    /// u = f/(1 − 𝒞²) and v = g/(1 − 𝒞²). Of the roots in [0, 1] the largest,
    /// closest to Π̃, is taken.
    pub fn x_star(&self) -> Result<f64> {
        let gap = self.gap();
        let (u, v) = (self.f() / gap, self.g() / gap);
        let qa = u * u - v * v;
        let qb = u * (self.a1 + self.a4) - 2.0 * v * self.d;
        let qc = self.a1 * self.a4 - self.d * self.d;
        let scale = qa.abs().max(qb.abs()).max(qc.abs());
        let roots: Vec<f64> = if qa.abs() <= 1e-14 * scale {
            if qb == 0.0 {
                Vec::new()
            } else {
                vec![-qc / qb]
            }
        } else {
            let disc = qb * qb - 4.0 * qa * qc;
            if disc < 0.0 {
                Vec::new()
            } else {
                let q = -0.5 * (qb + qb.signum() * disc.sqrt());
                if q == 0.0 {
                    vec![0.0]
                } else {
                    vec![q / qa, qc / q]
                }
            }
        };
        roots
            .into_iter()
            .filter(|x| (-ROOT_SLACK..=1.0 + ROOT_SLACK).contains(x))
            .map(|x| x.clamp(0.0, 1.0))
            .reduce(f64::max)
            .ok_or_else(|| QreeError::Infeasible("no boundary crossing for x in [0, 1]".into()))
    }

    /// Π* = x* Π̃ + (1 − x*) ρ
    pub fn procedure_css_candidate(&self) -> Result<DensityMatrix> {
        let x = self.x_star()?;
        DensityMatrix::from_mixture(self.pi_tilde().matrix().scale(x) + self.density().matrix().scale(1.0 - x))
    }

    /// Entries (r1, r4, r, y) of the true closest separable state.
    pub fn true_css_entries(&self) -> XState {
        let (a1, a4, a2, d) = (self.a1, self.a4, self.a, self.d);
        let s = a1 + a2 + a4;
        let f = 2.0 * (s + d) * (s - d);
        let delta = d * (d * d * (a1 - a4).powi(2) + 4.0 * a1 * a4 * (a1 + a2) * (a2 + a4)).sqrt();
        let r1 = (2.0 * a1 * (a1 + a2) * s - d * d * (a1 - a4) + delta) / f;
        let r4 = (2.0 * a4 * (a2 + a4) * s + d * d * (a1 - a4) + delta) / f;
        let r = (2.0 * (a1 + a2) * (a2 + a4) * s - d * d * (a1 + 2.0 * a2 + a4) - delta) / f;
        XState { p00: r1, p11: r4, mid: r, coherence: (r1 * r4).max(0.0).sqrt() }
    }

    pub fn true_css(&self) -> DensityMatrix {
        DensityMatrix::from_mixture(self.true_css_entries().matrix()).expect("closest separable state")
    }
}

pub fn horodecki_type(spec: &HorodeckiTypeSpec) -> Result<HorodeckiTypeOutcome> {
    if !spec.is_entangled() {
        return Err(QreeError::Separable(format!(
            "D ≤ √(A1A4) = {:.6}, the state is separable",
            (spec.a1 * spec.a4).sqrt()
        )));
    }
    if spec.gap() <= PARAM_TOL {
        return Err(QreeError::InvalidSpec("horodecki_type: 𝒞 = 1 (a Bell state) is outside the family".into()));
    }
    Ok(HorodeckiTypeOutcome {
        rho: spec.density(),
        procedure_css_candidate: spec.procedure_css_candidate()?,
        true_css: spec.true_css(),
        ensemble: spec.ensemble()?,
    })
}

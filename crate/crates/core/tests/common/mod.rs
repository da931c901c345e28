//! Reference constructions written out entry by entry, shared by the
//! integration tests. Nothing here calls the library's closed forms.
#![allow(dead_code)]

use qree_core::measures::PureState;
use qree_core::qcore::{basis_ket, Bell, DensityMatrix, Ket4, Mat4, C64};
use qree_core::wootters::Ensemble;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn combine(terms: &[(C64, Ket4)]) -> Ket4 {
    std::array::from_fn(|i| terms.iter().map(|(w, k)| *w * k[i]).sum())
}

pub fn h(x: f64) -> f64 {
    let t = |p: f64| if p > 0.0 { -p * p.ln() } else { 0.0 };
    t(x) + t(1.0 - x)
}

pub fn density(m: Mat4) -> DensityMatrix {
    DensityMatrix::new(m).unwrap()
}

/// Symmetric X-pattern state with the given corners, middle block and coherence.
pub fn x_state(p00: f64, mid: f64, coherence: f64, p11: f64) -> Mat4 {
    Mat4::from_real([
        [p00, 0.0, 0.0, 0.0],
        [0.0, mid, coherence, 0.0],
        [0.0, coherence, mid, 0.0],
        [0.0, 0.0, 0.0, p11],
    ])
}

pub fn bell_mixture(l: [f64; 4]) -> DensityMatrix {
    density(Bell::ALL.iter().zip(l).fold(Mat4::zeros(), |acc, (b, w)| acc + b.projector().scale(w)))
}

/// Closest separable state of a Bell-diagonal state whose largest weight sits at index `top`.
pub fn bell_css(l: [f64; 4]) -> DensityMatrix {
    let top = (0..4).fold(0, |best, k| if l[k] > l[best] { k } else { best });
    let q = 2.0 * (1.0 - l[top]);
    let w: [f64; 4] = std::array::from_fn(|k| if k == top { 0.5 } else { l[k] / q });
    bell_mixture(w)
}

/// Four equal-weight members √λ1 β1 ± i√λ2 β2 ± √λ3 β3 ± √λ4 β4 (λ3 dominant).
pub fn bell_ensemble(l: [f64; 4]) -> Ensemble {
    let r = l.map(f64::sqrt);
    let signs = [(1.0, 1.0, 1.0), (1.0, -1.0, -1.0), (-1.0, 1.0, -1.0), (-1.0, -1.0, 1.0)];
    let members = signs
        .iter()
        .map(|&(s2, s3, s4)| {
            let k = combine(&[
                (c(r[0], 0.0), Bell::PhiPlus.ket()),
                (c(0.0, s2 * r[1]), Bell::PhiMinus.ket()),
                (c(s3 * r[2], 0.0), Bell::PsiPlus.ket()),
                (c(s4 * r[3], 0.0), Bell::PsiMinus.ket()),
            ]);
            (0.25, PureState::new(k).unwrap())
        })
        .collect();
    Ensemble::new(members).unwrap()
}

/// Mixture of the members' closest separable states for the four-member Bell ensemble.
pub fn bell_sigma_tilde(l: [f64; 4]) -> DensityMatrix {
    let (s, d) = (l[0] + l[1], l[0] - l[1]);
    let m = 1.0 - l[2] + l[3];
    let grid = [[s, 0.0, 0.0, d], [0.0, m, s, 0.0], [0.0, s, m, 0.0], [d, 0.0, 0.0, s]];
    density(Mat4::from_real(grid).scale(1.0 / (4.0 * (1.0 - l[2]))))
}

pub fn gvp_density(l: [f64; 3]) -> DensityMatrix {
    density(Bell::PsiPlus.projector().scale(l[0]) + Mat4::from_real_diag([0.0, l[1], l[2], 0.0]))
}

pub fn gvp_css(l: [f64; 3]) -> DensityMatrix {
    density(Mat4::from_real_diag([0.0, l[0] / 2.0 + l[1], l[0] / 2.0 + l[2], 0.0]))
}

pub fn gvp_ree(l: [f64; 3]) -> f64 {
    let top = 0.5 * (1.0 + (l[0] * l[0] + (l[1] - l[2]).powi(2)).sqrt());
    h(l[0] / 2.0 + l[1]) - h(top)
}

pub fn gh_density(l: [f64; 3]) -> DensityMatrix {
    density(Bell::PsiPlus.projector().scale(l[0]) + Mat4::from_real_diag([l[1], 0.0, 0.0, l[2]]))
}

pub fn gh_css(l: [f64; 3]) -> DensityMatrix {
    let (u, v) = (l[0] + 2.0 * l[1], l[0] + 2.0 * l[2]);
    density(Bell::PsiPlus.projector().scale(u * v / 2.0) + Mat4::from_real_diag([u * u / 4.0, 0.0, 0.0, v * v / 4.0]))
}

pub fn gh_ree(l: [f64; 3]) -> f64 {
    let xlx = |p: f64| if p > 0.0 { p * p.ln() } else { 0.0 };
    xlx(l[0]) + xlx(l[1]) + xlx(l[2]) + 2.0 * h(l[0] / 2.0 + l[1]) - l[0] * std::f64::consts::LN_2
}

pub fn gh_r2(l: [f64; 3]) -> f64 {
    2.0 * l[0] + (l[1].sqrt() - l[2].sqrt()).powi(2)
}

/// Three equal-weight members √λ1 β3 + √λ2 e^{iθ}|00⟩ + √λ3 e^{−iθ}|11⟩, θ = 0, 2π/3, 4π/3.
pub fn gh_ensemble(l: [f64; 3]) -> Ensemble {
    let members = (0..3)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
            let v = combine(&[
                (c(l[0].sqrt(), 0.0), Bell::PsiPlus.ket()),
                (C64::from_polar(l[1].sqrt(), theta), basis_ket(0)),
                (C64::from_polar(l[2].sqrt(), -theta), basis_ket(3)),
            ]);
            (1.0 / 3.0, PureState::new(v).unwrap())
        })
        .collect();
    Ensemble::new(members).unwrap()
}

pub fn gh_sigma_tilde(l: [f64; 3]) -> DensityMatrix {
    let k = l[0] / (2.0 * gh_r2(l));
    density(x_state((l[0] + 2.0 * l[1]) / 2.0 - k, k, k, (l[0] + 2.0 * l[2]) / 2.0 - k))
}

/// Weight of σ̃ in the boundary mixture for the generalized Horodecki state.
pub fn gh_x(l: [f64; 3]) -> f64 {
    gh_r2(l) / (2.0 * l[0]) * (l[0] + 2.0 * (l[1] * l[2]).sqrt())
}

pub fn vpt_density(a2: f64, a3: f64, d: f64) -> DensityMatrix {
    density(x_like_vp(a2, a3, d))
}

fn x_like_vp(a2: f64, a3: f64, d: f64) -> Mat4 {
    Mat4::from_real([[0.0; 4], [0.0, a2, d, 0.0], [0.0, d, a3, 0.0], [0.0; 4]])
}

pub fn vpt_css(a2: f64, a3: f64) -> DensityMatrix {
    density(Mat4::from_real_diag([0.0, a2, a3, 0.0]))
}

pub fn ht_density(a1: f64, a4: f64, a: f64, d: f64) -> DensityMatrix {
    density(x_state(a1, a, d, a4))
}

/// Closest separable state of the Horodecki-type state (second diagonal weight equal to `a`).
pub fn ht_true_css(a1: f64, a4: f64, a: f64, d: f64) -> DensityMatrix {
    let s = a1 + a + a4;
    let f = 2.0 * (s + d) * (s - d);
    let delta = d * (d * d * (a1 - a4).powi(2) + 4.0 * a1 * a4 * (a1 + a) * (a + a4)).sqrt();
    let r1 = (2.0 * a1 * (a1 + a) * s - d * d * (a1 - a4) + delta) / f;
    let r4 = (2.0 * a4 * (a + a4) * s + d * d * (a1 - a4) + delta) / f;
    let r = (2.0 * (a1 + a) * (a + a4) * s - d * d * (a1 + 2.0 * a + a4) - delta) / f;
    density(x_state(r1, r, (r1 * r4).sqrt(), r4))
}

/// Mixture of member CSSs for the four-member Horodecki-type ensemble.
pub fn ht_pi_tilde(a1: f64, a4: f64, a: f64, d: f64) -> DensityMatrix {
    let cc = 2.0 * (d - (a1 * a4).sqrt());
    let k = 1.0 - cc * cc;
    let (sp, sm) = ((a1.sqrt() + a4.sqrt()).powi(2), (a1.sqrt() - a4.sqrt()).powi(2));
    let base = (1.0 + cc) * sp + (1.0 - cc) * sm;
    let p00 = (base + 2.0 * k * (a1 - a4)) / (4.0 * k);
    let p11 = (base - 2.0 * k * (a1 - a4)) / (4.0 * k);
    let mid = ((1.0 + cc) * (a - d) + (1.0 - cc) * (a + d)) / (2.0 * k);
    let coh = (2.0 * a * (a1 * a4).sqrt() + d * (a1 + a4)) / k;
    density(x_state(p00, mid, coh, p11))
}

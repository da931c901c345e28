//! Closest separable state from an optimal EOF decomposition.
//!
//! 1. decompose ρ optimally into pure states ψ_j with weights p_j;
//! 2. map each ψ_j to its closest separable state σ_j and mix: σ̃ = Σ p_j σ_j;
//! 3. if σ̃ lies on the boundary of the separable set, σ* = σ̃;
//! 4. otherwise σ* = q₀ρ + (1 − q₀)σ̃ with q₀ the first mixing weight that
//!    reaches the boundary.
//!
//! The construction is exact for several symmetric families but not in
//! general; callers compare against an independent minimum.

use crate::error::{QreeError, Result};
use crate::measures::{concurrence_mixed, relative_entropy, RelativeEntropy};
use crate::qcore::{min_pt_eigenvalue, DensityMatrix, Mat4};
use crate::schmidt::css_pure;
use crate::wootters::{optimal_decomposition, Ensemble, SEPARABLE_CONCURRENCE};

/// Half-width of the band around zero PT eigenvalue that counts as boundary.
pub const BOUNDARY_TOL: f64 = 1e-9;
/// Ensembles passed in explicitly must reproduce ρ to this Frobenius distance.
pub const ENSEMBLE_RESIDUAL_TOL: f64 = 1e-9;

const SCAN_POINTS: usize = 64;
const MAX_BISECTIONS: usize = 200;
const ROOT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryVerdict {
    pub min_pt_eigenvalue: f64,
    pub is_boundary: bool,
    pub is_interior: bool,
    pub is_entangled: bool,
}

pub fn classify_boundary(sigma: &DensityMatrix, tol: f64) -> BoundaryVerdict {
    verdict(sigma.min_pt_eigenvalue(), tol)
}

fn verdict(min_pt_eigenvalue: f64, tol: f64) -> BoundaryVerdict {
    BoundaryVerdict {
        min_pt_eigenvalue,
        is_boundary: min_pt_eigenvalue.abs() <= tol,
        is_interior: min_pt_eigenvalue > tol,
        is_entangled: min_pt_eigenvalue < -tol,
    }
}

/// Closest separable state of every ensemble member.
pub fn member_css(e: &Ensemble) -> Vec<DensityMatrix> {
    e.members().iter().map(|(_, psi)| css_pure(psi)).collect()
}

/// σ̃ = Σ p_j css(ψ_j)
pub fn mix_member_css(e: &Ensemble) -> DensityMatrix {
    mix(e, &member_css(e))
}

fn mix(e: &Ensemble, css: &[DensityMatrix]) -> DensityMatrix {
    let m = e
        .members()
        .iter()
        .zip(css)
        .fold(Mat4::zeros(), |acc, ((p, _), s)| acc + s.matrix().scale(*p));
    DensityMatrix::from_mixture(m).expect("convex mixture of density matrices")
}

/// Smallest q in (0, 1] at which q ρ + (1 − q) σ̃ reaches the PPT boundary.
pub fn solve_boundary_mixing(rho: &DensityMatrix, sigma_tilde: &DensityMatrix) -> Result<f64> {
    let r = *rho.matrix();
    let s = *sigma_tilde.matrix();
    let g = |q: f64| min_pt_eigenvalue(&(r.scale(q) + s.scale(1.0 - q)));

    let g0 = g(0.0);
    if g0 <= BOUNDARY_TOL {
        return Err(QreeError::Infeasible(format!(
            "mixing starts at min PT eigenvalue {g0:.3e}, not in the interior"
        )));
    }
    let mut lo = 0.0;
    let mut hi = None;
    for k in 1..=SCAN_POINTS {
        let q = k as f64 / SCAN_POINTS as f64;
        let gq = g(q);
        if gq == 0.0 {
            return Ok(q);
        }
        if gq < 0.0 {
            hi = Some(q);
            break;
        }
        lo = q;
    }
    let mut hi = hi.ok_or_else(|| {
        QreeError::Infeasible("min PT eigenvalue stays positive on [0, 1]; rho is not entangled".into())
    })?;
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        let gm = g(mid);
        if gm.abs() <= ROOT_TOL || hi - lo <= f64::EPSILON * hi {
            return Ok(mid);
        }
        if gm > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Full record of one run of the procedure.
#[derive(Clone, Debug, PartialEq)]
pub struct ProcedureTrace {
    pub source: DensityMatrix,
    pub concurrence: f64,
    /// Absent for separable input.
    pub ensemble: Option<Ensemble>,
    pub member_css: Vec<DensityMatrix>,
    pub sigma_tilde: DensityMatrix,
    pub sigma_tilde_verdict: BoundaryVerdict,
    pub boundary_at_step3: bool,
    /// Weight of ρ in σ* when the boundary search ran.
    pub q0: Option<f64>,
    /// Weight of σ̃ in σ*, 1 − q0.
    pub x: Option<f64>,
    pub sigma_star: DensityMatrix,
    pub ree_value: f64,
    pub note: Option<String>,
}

/// Runs the procedure on the generic optimal decomposition of ρ.
pub fn ree_from_eof(rho: &DensityMatrix) -> Result<ProcedureTrace> {
    let c = concurrence_mixed(rho);
    if c <= SEPARABLE_CONCURRENCE {
        let v = classify_boundary(rho, BOUNDARY_TOL);
        return Ok(ProcedureTrace {
            source: *rho,
            concurrence: c,
            ensemble: None,
            member_css: Vec::new(),
            sigma_tilde: *rho,
            sigma_tilde_verdict: v,
            boundary_at_step3: v.is_boundary,
            q0: None,
            x: None,
            sigma_star: *rho,
            ree_value: 0.0,
            note: Some("separable input: concurrence is zero, the state is its own closest separable state".into()),
        });
    }
    let e = optimal_decomposition(rho)?;
    run(rho, c, e)
}

/// Runs the procedure on a caller-supplied optimal decomposition.
pub fn ree_from_eof_with(rho: &DensityMatrix, ensemble: &Ensemble) -> Result<ProcedureTrace> {
    let res = ensemble.residual(rho);
    if res > ENSEMBLE_RESIDUAL_TOL {
        return Err(QreeError::InvalidEnsemble(format!("ensemble misses rho by {res:.3e} (Frobenius)")));
    }
    run(rho, concurrence_mixed(rho), ensemble.clone())
}

fn run(rho: &DensityMatrix, concurrence: f64, e: Ensemble) -> Result<ProcedureTrace> {
    let css = member_css(&e);
    let sigma_tilde = mix(&e, &css);
    let v = classify_boundary(&sigma_tilde, BOUNDARY_TOL);
    let mut note = None;

    let (boundary_at_step3, q0, sigma_star) = if v.is_interior {
        let q = solve_boundary_mixing(rho, &sigma_tilde)?;
        let m = rho.matrix().scale(q) + sigma_tilde.matrix().scale(1.0 - q);
        (false, Some(q), DensityMatrix::from_mixture(m)?)
    } else {
        if v.is_entangled {
            note = Some(format!(
                "mixture of member CSSs has min PT eigenvalue {:.3e}; kept as sigma*",
                v.min_pt_eigenvalue
            ));
        }
        (true, None, sigma_tilde)
    };

    let ree_value = match relative_entropy(rho, &sigma_star) {
        RelativeEntropy::Finite(x) => x,
        RelativeEntropy::Infinite => {
            note = Some("support of rho not contained in sigma*".into());
            f64::INFINITY
        }
    };

    Ok(ProcedureTrace {
        source: *rho,
        concurrence,
        ensemble: Some(e),
        member_css: css,
        sigma_tilde,
        sigma_tilde_verdict: v,
        boundary_at_step3,
        q0,
        x: q0.map(|q| 1.0 - q),
        sigma_star,
        ree_value,
        note,
    })
}

//! Parameterized two-qubit state families with closed-form closest separable
//! states, relative entropies of entanglement and explicit optimal ensembles.

mod bell_diagonal;
mod gen_horodecki;
mod gvp;
mod horodecki_type;
mod vp_type;

use std::collections::BTreeMap;

pub use bell_diagonal::{bell_diagonal, BellDiagonalSpec};
pub use gen_horodecki::{gen_horodecki, GenHorodeckiSpec};
pub use gvp::{gvp, GvpSpec};
pub use horodecki_type::{horodecki_type, HorodeckiTypeOutcome, HorodeckiTypeSpec};
pub use vp_type::{vp_type, VpTypeSpec};

use crate::error::{QreeError, Result};
use crate::qcore::{DensityMatrix, Mat4, C64};
use crate::wootters::Ensemble;

const SUM_TOL: f64 = 1e-12;

/// State, closed-form closest separable state, REE and optimal ensemble of a family member.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyOutcome {
    pub rho: DensityMatrix,
    pub css: DensityMatrix,
    pub ree: f64,
    pub ensemble: Ensemble,
}

/// Entries of a state supported on the X pattern
///
/// ```text
/// [p00  0    0    0  ]
/// [0    mid  coh  0  ]
/// [0    coh  mid  0  ]
/// [0    0    0    p11]
/// ```
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XState {
    pub p00: f64,
    pub p11: f64,
    pub mid: f64,
    pub coherence: f64,
}

impl XState {
    pub fn matrix(&self) -> Mat4 {
        let mut m = Mat4::from_real_diag([self.p00, self.mid, self.mid, self.p11]);
        m.0[1][2] = C64::new(self.coherence, 0.0);
        m.0[2][1] = C64::new(self.coherence, 0.0);
        m
    }

    pub fn density(&self) -> Result<DensityMatrix> {
        DensityMatrix::new(self.matrix())
    }
}

pub(crate) fn check_distribution(name: &str, values: &[f64]) -> Result<()> {
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(QreeError::InvalidSpec(format!("{name}: non-finite parameter {v}")));
    }
    if let Some(v) = values.iter().find(|&&v| v < 0.0) {
        return Err(QreeError::InvalidSpec(format!("{name}: negative weight {v}")));
    }
    let total: f64 = values.iter().sum();
    if (total - 1.0).abs() > SUM_TOL {
        return Err(QreeError::InvalidSpec(format!("{name}: weights sum to {total}, expected 1")));
    }
    Ok(())
}

/// Any of the five families, as read from a parameter map.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FamilySpec {
    BellDiagonal(BellDiagonalSpec),
    Gvp(GvpSpec),
    GenHorodecki(GenHorodeckiSpec),
    VpType(VpTypeSpec),
    HorodeckiType(HorodeckiTypeSpec),
}

impl FamilySpec {
    pub const NAMES: [&'static str; 5] = ["bell_diagonal", "gvp", "gen_horodecki", "vp_type", "horodecki_type"];

    pub fn param_names(name: &str) -> Option<&'static [&'static str]> {
        Some(match name {
            "bell_diagonal" => &["lambda1", "lambda2", "lambda3", "lambda4"],
            "gvp" | "gen_horodecki" => &["lambda1", "lambda2", "lambda3"],
            "vp_type" => &["a2", "a3", "d"],
            "horodecki_type" => &["a1", "a4", "a", "d"],
            _ => return None,
        })
    }

    /// Builds a spec from its family name and a complete parameter map.
    /// Missing or unknown keys are errors.
    pub fn from_params(name: &str, params: &BTreeMap<String, f64>) -> Result<Self> {
        let keys = Self::param_names(name).ok_or_else(|| {
            QreeError::InvalidSpec(format!("unknown family {name:?}, expected one of {:?}", Self::NAMES))
        })?;
        if let Some(k) = params.keys().find(|k| !keys.contains(&k.as_str())) {
            return Err(QreeError::InvalidSpec(format!("{name}: unknown parameter {k:?}, expected {keys:?}")));
        }
        let v = keys
            .iter()
            .map(|k| {
                params
                    .get(*k)
                    .copied()
                    .ok_or_else(|| QreeError::InvalidSpec(format!("{name}: missing parameter {k:?}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        Ok(match name {
            "bell_diagonal" => FamilySpec::BellDiagonal(BellDiagonalSpec::new([v[0], v[1], v[2], v[3]])?),
            "gvp" => FamilySpec::Gvp(GvpSpec::new([v[0], v[1], v[2]])?),
            "gen_horodecki" => FamilySpec::GenHorodecki(GenHorodeckiSpec::new([v[0], v[1], v[2]])?),
            "vp_type" => FamilySpec::VpType(VpTypeSpec::new(v[0], v[1], v[2])?),
            _ => FamilySpec::HorodeckiType(HorodeckiTypeSpec::new(v[0], v[1], v[2], v[3])?),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::BellDiagonal(_) => "bell_diagonal",
            FamilySpec::Gvp(_) => "gvp",
            FamilySpec::GenHorodecki(_) => "gen_horodecki",
            FamilySpec::VpType(_) => "vp_type",
            FamilySpec::HorodeckiType(_) => "horodecki_type",
        }
    }

    pub fn params(&self) -> BTreeMap<String, f64> {
        let values: Vec<f64> = match self {
            FamilySpec::BellDiagonal(s) => s.lambdas().to_vec(),
            FamilySpec::Gvp(s) => s.lambdas().to_vec(),
            FamilySpec::GenHorodecki(s) => s.lambdas().to_vec(),
            FamilySpec::VpType(s) => vec![s.a2(), s.a3(), s.d()],
            FamilySpec::HorodeckiType(s) => vec![s.a1(), s.a4(), s.a(), s.d()],
        };
        Self::param_names(self.name())
            .expect("known family")
            .iter()
            .zip(values)
            .map(|(k, v)| (k.to_string(), v))
            .collect()
    }

    pub fn density(&self) -> DensityMatrix {
        match self {
            FamilySpec::BellDiagonal(s) => s.density(),
            FamilySpec::Gvp(s) => s.density(),
            FamilySpec::GenHorodecki(s) => s.density(),
            FamilySpec::VpType(s) => s.density(),
            FamilySpec::HorodeckiType(s) => s.density(),
        }
    }

    /// Closest separable state from the closed form (the true one for the
    /// Horodecki-type family, not the procedure's candidate).
    pub fn closed_form_css(&self) -> Result<DensityMatrix> {
        Ok(match self {
            FamilySpec::BellDiagonal(s) => bell_diagonal(s)?.css,
            FamilySpec::Gvp(s) => gvp(s)?.css,
            FamilySpec::GenHorodecki(s) => gen_horodecki(s)?.css,
            FamilySpec::VpType(s) => vp_type(s)?.css,
            FamilySpec::HorodeckiType(s) => horodecki_type(s)?.true_css,
        })
    }

    /// Explicit ensemble given for the family.
    pub fn explicit_ensemble(&self) -> Result<Ensemble> {
        match self {
            FamilySpec::BellDiagonal(s) => s.ensemble(),
            FamilySpec::Gvp(s) => s.ensemble(),
            FamilySpec::GenHorodecki(s) => s.ensemble(),
            FamilySpec::VpType(s) => s.ensemble(),
            FamilySpec::HorodeckiType(s) => s.ensemble(),
        }
    }
}

//! JSON state files and the matrix encoding shared by every JSON output.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::Context;
use qree_core::families::FamilySpec;
use qree_core::qcore::{DensityMatrix, Mat4, Matrix, C64};
use qree_core::{PureState, QreeError};
use serde::{Deserialize, Serialize};

/// A complex number as `[re, im]`.
pub type Complex = [f64; 2];
/// Row-major 4×4 grid in the basis |00⟩, |01⟩, |10⟩, |11⟩.
pub type Grid = [[Complex; 4]; 4];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StateFile {
    Pure { amplitudes: [Complex; 4] },
    Density { matrix: Grid },
    Family { name: String, params: BTreeMap<String, f64> },
}

/// A validated state file.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub rho: DensityMatrix,
    pub pure: Option<PureState>,
    pub family: Option<FamilySpec>,
}

impl StateFile {
    pub fn read(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("invalid state file {}", path.display()))
    }

    pub fn parse(text: &str) -> anyhow::Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn family(spec: &FamilySpec) -> Self {
        StateFile::Family { name: spec.name().to_string(), params: spec.params() }
    }

    pub fn resolve(&self) -> Result<Resolved, QreeError> {
        Ok(match self {
            StateFile::Pure { amplitudes } => {
                let psi = PureState::new(amplitudes.map(|[re, im]| C64::new(re, im)))?;
                Resolved { rho: psi.density(), pure: Some(psi), family: None }
            }
            StateFile::Density { matrix } => {
                Resolved { rho: DensityMatrix::new(from_grid(matrix))?, pure: None, family: None }
            }
            StateFile::Family { name, params } => {
                let spec = FamilySpec::from_params(name, params)?;
                Resolved { rho: spec.density(), pure: None, family: Some(spec) }
            }
        })
    }
}

pub fn to_grid(m: &Mat4) -> Grid {
    m.0.map(|row| row.map(|z| [z.re, z.im]))
}

pub fn from_grid(g: &Grid) -> Mat4 {
    Matrix(g.map(|row| row.map(|[re, im]| C64::new(re, im))))
}

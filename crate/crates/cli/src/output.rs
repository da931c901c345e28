//! JSON shapes for traces, oracle results and measurement reports.

use std::io;

use qree_core::measures::PureState;
use qree_core::oracle::OracleResult;
use qree_core::procedure::{BoundaryVerdict, ProcedureTrace};
use qree_core::qcore::DensityMatrix;
use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;

use crate::state_file::{to_grid, Complex, Grid, StateFile};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemberJson {
    pub weight: f64,
    pub amplitudes: [Complex; 4],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictJson {
    pub min_pt_eigenvalue: f64,
    pub is_boundary: bool,
    pub is_interior: bool,
    pub is_entangled: bool,
}

impl From<BoundaryVerdict> for VerdictJson {
    fn from(v: BoundaryVerdict) -> Self {
        VerdictJson {
            min_pt_eigenvalue: v.min_pt_eigenvalue,
            is_boundary: v.is_boundary,
            is_interior: v.is_interior,
            is_entangled: v.is_entangled,
        }
    }
}

/// Serialized [`ProcedureTrace`]. `ree` is null when σ* misses the support of ρ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceJson {
    pub input: StateFile,
    pub source: Grid,
    pub concurrence: f64,
    pub ensemble: Option<Vec<MemberJson>>,
    pub member_css: Vec<Grid>,
    pub sigma_tilde: Grid,
    pub sigma_tilde_verdict: VerdictJson,
    pub boundary_at_step3: bool,
    pub q0: Option<f64>,
    pub x: Option<f64>,
    pub sigma_star: Grid,
    pub ree: Option<f64>,
    pub note: Option<String>,
}

fn amplitudes(psi: &PureState) -> [Complex; 4] {
    psi.amplitudes().map(|z| [z.re, z.im])
}

fn grid(rho: &DensityMatrix) -> Grid {
    to_grid(rho.matrix())
}

impl TraceJson {
    pub fn new(input: StateFile, t: &ProcedureTrace) -> Self {
        TraceJson {
            input,
            source: grid(&t.source),
            concurrence: t.concurrence,
            ensemble: t.ensemble.as_ref().map(|e| {
                e.members()
                    .iter()
                    .map(|(p, psi)| MemberJson { weight: *p, amplitudes: amplitudes(psi) })
                    .collect()
            }),
            member_css: t.member_css.iter().map(grid).collect(),
            sigma_tilde: grid(&t.sigma_tilde),
            sigma_tilde_verdict: t.sigma_tilde_verdict.into(),
            boundary_at_step3: t.boundary_at_step3,
            q0: t.q0,
            x: t.x,
            sigma_star: grid(&t.sigma_star),
            ree: t.ree_value.is_finite().then_some(t.ree_value),
            note: t.note.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleJson {
    pub ree: f64,
    pub sigma: Grid,
    pub iterations: usize,
    pub converged: bool,
    pub per_restart_values: Vec<f64>,
    pub history: Vec<f64>,
}

impl From<&OracleResult> for OracleJson {
    fn from(r: &OracleResult) -> Self {
        OracleJson {
            ree: r.ree,
            sigma: to_grid(r.sigma.matrix()),
            iterations: r.iterations,
            converged: r.converged,
            per_restart_values: r.per_restart_values.clone(),
            history: r.history.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureJson {
    pub concurrence: f64,
    pub eof: f64,
    pub ree_procedure: Option<f64>,
    pub boundary_at_step3: bool,
    pub q0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ree_closed_form: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ree_oracle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_converged: Option<bool>,
}

/// Objects one key per line, arrays (matrices, amplitude lists) on a single
/// line.
struct Layout {
    indent: usize,
    has_value: bool,
}

impl Layout {
    fn newline<W: ?Sized + io::Write>(&self, w: &mut W) -> io::Result<()> {
        w.write_all(b"\n")?;
        for _ in 0..self.indent {
            w.write_all(b"  ")?;
        }
        Ok(())
    }
}

impl Formatter for Layout {
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.indent += 1;
        self.has_value = false;
        w.write_all(b"{")
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.indent -= 1;
        if self.has_value {
            self.newline(w)?;
        }
        w.write_all(b"}")
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        if !first {
            w.write_all(b",")?;
        }
        self.newline(w)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        w.write_all(b": ")
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, _w: &mut W) -> io::Result<()> {
        self.has_value = true;
        Ok(())
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        if first {
            Ok(())
        } else {
            w.write_all(b", ")
        }
    }
}

/// JSON with a trailing newline. Floats use the shortest representation
/// that parses back to the same value.
pub fn to_json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Layout { indent: 0, has_value: false });
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf)?)
}

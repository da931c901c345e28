use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Result};
use qree_core::measures::{concurrence_mixed, eof};
use qree_core::oracle::{ree_numeric, OracleConfig};
use qree_core::procedure::ree_from_eof;

use crate::output::{to_json, MeasureJson, OracleJson, TraceJson};
use crate::state_file::{Resolved, StateFile};
use crate::verify::{render_table, select_families, verify_families, verify_spec, VerifyConfig};
use crate::Status;

/// Reads and validates a state file. Any failure here is an input error.
pub fn load(path: &Path) -> Result<(StateFile, Resolved)> {
    let file = StateFile::read(path)?;
    let resolved = file.resolve()?;
    Ok((file, resolved))
}

fn closed_form_ree(state: &Resolved) -> Option<f64> {
    let spec = state.family?;
    let css = spec.closed_form_css().ok()?;
    Some(qree_core::measures::relative_entropy(&state.rho, &css).value())
}

pub fn measure(state: &Resolved, with_oracle: bool) -> Result<MeasureJson> {
    let trace = ree_from_eof(&state.rho)?;
    let oracle = with_oracle.then(|| ree_numeric(&state.rho, &OracleConfig::default()));
    Ok(MeasureJson {
        concurrence: concurrence_mixed(&state.rho),
        eof: eof(&state.rho),
        ree_procedure: trace.ree_value.is_finite().then_some(trace.ree_value),
        boundary_at_step3: trace.boundary_at_step3,
        q0: trace.q0,
        ree_closed_form: closed_form_ree(state),
        ree_oracle: oracle.as_ref().map(|r| r.ree),
        oracle_converged: oracle.as_ref().map(|r| r.converged),
    })
}

pub fn render_measure(m: &MeasureJson) -> String {
    let mut rows = vec![("concurrence", format!("{:.6}", m.concurrence)), ("eof", format!("{:.6}", m.eof))];
    rows.push(("ree_procedure", m.ree_procedure.map_or("inf".into(), |v| format!("{v:.6}"))));
    rows.push(("boundary_at_step3", m.boundary_at_step3.to_string()));
    if let Some(q) = m.q0 {
        rows.push(("q0", format!("{q:.6}")));
    }
    if let Some(v) = m.ree_closed_form {
        rows.push(("ree_closed_form", format!("{v:.6}")));
    }
    if let Some(v) = m.ree_oracle {
        rows.push(("ree_oracle", format!("{v:.6}")));
        rows.push(("oracle_converged", m.oracle_converged.unwrap_or(false).to_string()));
    }
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<18} {v:>12}");
    }
    out
}

pub fn trace(file: StateFile, state: &Resolved) -> Result<String> {
    let t = ree_from_eof(&state.rho)?;
    if let Some(note) = &t.note {
        log::info!("{note}");
    }
    to_json(&TraceJson::new(file, &t))
}

pub fn oracle(state: &Resolved, cfg: &OracleConfig) -> Result<String> {
    if cfg.restarts == 0 || cfg.max_iters == 0 || !(cfg.tol > 0.0) {
        bail!("restarts, iterations and tolerance must all be positive");
    }
    let r = ree_numeric(&state.rho, cfg);
    if !r.converged {
        log::warn!("oracle stopped after {} iterations without reaching tol {:e}", r.iterations, cfg.tol);
    }
    to_json(&OracleJson::from(&r))
}

pub struct VerifyRequest<'a> {
    pub family: &'a str,
    pub input: Option<&'a Path>,
    pub cfg: VerifyConfig,
    pub json: bool,
}

/// Runs the verification and returns the report and the exit status.
pub fn verify(req: &VerifyRequest) -> Result<(String, Status)> {
    if !(req.cfg.tol > 0.0) || req.cfg.oracle_restarts == 0 {
        bail!("--tol and --oracle-restarts must be positive");
    }
    let rows = match req.input {
        Some(path) => {
            let (_, state) = load(path)?;
            let Some(spec) = state.family else {
                bail!("verify --input needs a family state file");
            };
            verify_spec(&spec, &req.cfg)?
        }
        None => verify_families(&select_families(req.family)?, &req.cfg)?,
    };
    let failed: Vec<_> = rows.iter().filter(|r| !r.pass).cloned().collect();
    let status = if failed.is_empty() { Status::Success } else { Status::VerificationFailed };
    let report = if req.json {
        to_json(&rows)?
    } else {
        let mut s = render_table(&rows);
        let _ = writeln!(s, "{} rows, {} failed", rows.len(), failed.len());
        if !failed.is_empty() {
            s.push_str("failing rows:\n");
            s.push_str(&render_table(&failed));
        }
        s
    };
    Ok((report, status))
}

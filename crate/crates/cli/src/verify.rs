//! Sampled comparison of the procedure and the numeric oracle against the
//! closed forms of each family.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use anyhow::{bail, Result};
use qree_core::families::{bell_diagonal, gen_horodecki, gvp, horodecki_type, vp_type, FamilySpec};
use qree_core::measures::relative_entropy;
use qree_core::oracle::{ree_numeric, OracleConfig};
use qree_core::procedure::{member_css, ree_from_eof, BOUNDARY_TOL};
use qree_core::qcore::DensityMatrix;
use qree_core::sampling;
use serde::Serialize;

/// Agreement required between the oracle and a closed form.
pub const ORACLE_TOL: f64 = 1e-4;
/// Smallest ‖Π* − π‖_F that counts as a genuine miss in the failure rows.
pub const FAILURE_DISTANCE: f64 = 1e-4;

/// The families in sampling order, with their short aliases.
pub const FAMILIES: [(&str, &str); 5] = [
    ("bd", "bell_diagonal"),
    ("gvp", "gvp"),
    ("gh", "gen_horodecki"),
    ("vpt", "vp_type"),
    ("ht", "horodecki_type"),
];

/// Resolves `all`, a short alias or a full family name.
pub fn select_families(arg: &str) -> Result<Vec<&'static str>> {
    if arg == "all" {
        return Ok(FAMILIES.iter().map(|(_, name)| *name).collect());
    }
    match FAMILIES.iter().find(|(short, name)| *short == arg || *name == arg) {
        Some((_, name)) => Ok(vec![name]),
        None => bail!("unknown family {arg:?}, expected all, bd, gvp, gh, vpt or ht"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// pass ⇔ abs_error ≤ tolerance
    Within,
    /// pass ⇔ actual − expected > tolerance
    Exceeds,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationRow {
    pub family: String,
    pub params: BTreeMap<String, f64>,
    pub quantity: String,
    pub expected: f64,
    pub actual: f64,
    pub abs_error: f64,
    pub tolerance: f64,
    pub check: Check,
    pub pass: bool,
}

impl VerificationRow {
    fn new(spec: &FamilySpec, quantity: &str, expected: f64, actual: f64, tolerance: f64, check: Check) -> Self {
        let abs_error = (actual - expected).abs();
        let pass = match check {
            Check::Within => abs_error <= tolerance,
            Check::Exceeds => actual - expected > tolerance,
        };
        VerificationRow {
            family: spec.name().to_string(),
            params: spec.params(),
            quantity: quantity.to_string(),
            expected,
            actual,
            abs_error,
            tolerance,
            check,
            pass,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub samples: usize,
    pub seed: u64,
    /// Tolerance for matrix and mixing-weight rows; REE rows use a tenth of it.
    pub tol: f64,
    pub oracle_restarts: usize,
}

/// Draws `samples` specs of one family from its own seeded stream, so a
/// family's rows do not depend on which other families are selected.
pub fn sample_specs(family: &str, samples: usize, seed: u64) -> Vec<FamilySpec> {
    let stream = FAMILIES.iter().position(|(_, name)| *name == family).expect("known family") as u64;
    let mut rng = sampling::seeded(seed);
    rng.set_stream(stream);
    (0..samples)
        .map(|_| match family {
            "bell_diagonal" => FamilySpec::BellDiagonal(sampling::bell_diagonal(&mut rng)),
            "gvp" => FamilySpec::Gvp(sampling::gvp(&mut rng)),
            "gen_horodecki" => FamilySpec::GenHorodecki(sampling::gen_horodecki(&mut rng)),
            "vp_type" => FamilySpec::VpType(sampling::vp_type(&mut rng)),
            _ => FamilySpec::HorodeckiType(sampling::horodecki_type_generic(&mut rng)),
        })
        .collect()
}

fn oracle_value(rho: &DensityMatrix, cfg: &VerifyConfig) -> f64 {
    ree_numeric(rho, &OracleConfig { restarts: cfg.oracle_restarts, seed: cfg.seed, ..OracleConfig::default() }).ree
}

/// All rows for one family member.
pub fn verify_spec(spec: &FamilySpec, cfg: &VerifyConfig) -> Result<Vec<VerificationRow>> {
    use Check::{Exceeds, Within};
    let row = |q: &str, expected: f64, actual: f64, tol: f64, check: Check| {
        VerificationRow::new(spec, q, expected, actual, tol, check)
    };
    let ree_tol = cfg.tol / 10.0;
    let rho = spec.density();
    let trace = ree_from_eof(&rho)?;
    log::debug!("{} {:?}: boundary_at_step3={} q0={:?}", spec.name(), spec.params(), trace.boundary_at_step3, trace.q0);

    let mut rows = Vec::new();
    let (css, ree) = match spec {
        FamilySpec::BellDiagonal(s) => {
            let out = bell_diagonal(s)?;
            rows.push(row("boundary", 0.0, trace.sigma_tilde_verdict.min_pt_eigenvalue, BOUNDARY_TOL, Within));
            (out.css, out.ree)
        }
        FamilySpec::Gvp(s) => {
            let out = gvp(s)?;
            let css = member_css(&out.ensemble);
            let spread = css.iter().flat_map(|a| css.iter().map(move |b| a.distance(b))).fold(0.0, f64::max);
            rows.push(row("member_css_spread", 0.0, spread, cfg.tol, Within));
            let off = css.iter().map(|c| c.distance(&out.css)).fold(0.0, f64::max);
            rows.push(row("member_css_match", 0.0, off, cfg.tol, Within));
            (out.css, out.ree)
        }
        FamilySpec::GenHorodecki(s) => {
            let out = gen_horodecki(s)?;
            rows.push(row("q0_match", 1.0 - s.x(), trace.q0.unwrap_or(0.0), cfg.tol, Within));
            (out.css, out.ree)
        }
        FamilySpec::VpType(s) => {
            let out = vp_type(s)?;
            rows.push(row("sigma_tilde_match", 0.0, trace.sigma_tilde.distance(&out.css), cfg.tol, Within));
            rows.push(row("boundary", 0.0, trace.sigma_tilde_verdict.min_pt_eigenvalue, BOUNDARY_TOL, Within));
            (out.css, out.ree)
        }
        FamilySpec::HorodeckiType(s) => {
            let out = horodecki_type(s)?;
            let s_true = relative_entropy(&rho, &out.true_css).value();
            let s_candidate = relative_entropy(&rho, &out.procedure_css_candidate).value();
            let oracle = oracle_value(&rho, cfg);
            rows.extend([
                row("candidate_match", 0.0, trace.sigma_star.distance(&out.procedure_css_candidate), cfg.tol, Within),
                row("failure_distance", 0.0, out.procedure_css_candidate.distance(&out.true_css), FAILURE_DISTANCE, Exceeds),
                row("failure_gap", s_true, s_candidate, 0.0, Exceeds),
                row("oracle_match", s_true, oracle, ORACLE_TOL, Within),
                row("oracle_below_procedure", oracle, trace.ree_value, 0.0, Exceeds),
            ]);
            return Ok(rows);
        }
    };
    rows.extend([
        row("css_match", 0.0, trace.sigma_star.distance(&css), cfg.tol, Within),
        row("ree_match", ree, trace.ree_value, ree_tol, Within),
        row("oracle_match", ree, oracle_value(&rho, cfg), ORACLE_TOL, Within),
    ]);
    Ok(rows)
}

pub fn verify_families(families: &[&str], cfg: &VerifyConfig) -> Result<Vec<VerificationRow>> {
    let mut rows = Vec::new();
    for family in families {
        log::info!("verifying {family}: {} samples, seed {}", cfg.samples, cfg.seed);
        for spec in sample_specs(family, cfg.samples, cfg.seed) {
            rows.extend(verify_spec(&spec, cfg)?);
        }
    }
    Ok(rows)
}

fn format_params(params: &BTreeMap<String, f64>) -> String {
    params.iter().map(|(k, v)| format!("{k}={v:.6}")).collect::<Vec<_>>().join(",")
}

/// Fixed-width table, six decimals for values and scientific errors.
pub fn render_table(rows: &[VerificationRow]) -> String {
    let params: Vec<String> = rows.iter().map(|r| format_params(&r.params)).collect();
    let pw = params.iter().map(String::len).max().unwrap_or(0).max(6);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<15} {:<pw$} {:<23} {:>12} {:>12} {:>13} {:>4}",
        "family", "params", "quantity", "expected", "actual", "abs_error", "pass"
    );
    for (r, p) in rows.iter().zip(&params) {
        let _ = writeln!(
            out,
            "{:<15} {:<pw$} {:<23} {:>12.6} {:>12.6} {:>13.6e} {:>4}",
            r.family,
            p,
            r.quantity,
            r.expected,
            r.actual,
            r.abs_error,
            if r.pass { "ok" } else { "FAIL" }
        );
    }
    out
}

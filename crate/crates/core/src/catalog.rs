//! Dataset of classification rows and the end-to-end row verifier.
//!
//! Each JSONL line is one concrete family member: a polynomial in the table
//! notation with parameter bindings and the printed reduction data.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::complements::{ComplementDatum, ComplementProfile, DEFAULT_N_MAX};
use crate::error::{Error, Result};
use crate::lattice::support_value;
use crate::polyexpr::{instantiate, parse_expression, SupportedPolynomial};
use crate::quasihom::{check_weights, detect_weights, numeric_criteria, WeightDetection, WeightSystem};
use crate::rational::{fmt_q, is_standard_coefficient, parse_q, Q};
use crate::wps::{degree_data, linear_cone_reduce, well_formize, HypersurfaceDatum, WellFormedDatum};

/// Table id used for worked examples that are not rows of a printed table.
pub const WORKED_EXAMPLES: u32 = 0;
pub const MAX_TABLE: u32 = 17;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurationStatus {
    Clean,
    OcrSuspect,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableRow {
    pub table_id: u32,
    pub row_id: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sub_label: Option<String>,
    pub poly_src: String,
    #[serde(default)]
    pub params: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_weights: Option<Vec<u64>>,
    pub expected_atilde: Vec<u64>,
    pub expected_dtilde: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_reduced_space: Option<Vec<u64>>,
    pub expected_diff: Vec<String>,
    pub expected_index: u32,
    #[serde(default)]
    pub notes: String,
    pub curation_status: CurationStatus,
}

impl TableRow {
    pub fn label(&self) -> String {
        let mut s = format!("T{}.{}", self.table_id, self.row_id);
        if let Some(sub) = &self.sub_label {
            s.push_str(sub);
        }
        for (k, v) in &self.params {
            let _ = write!(s, " {k}={v}");
        }
        s
    }

    fn key(&self) -> (u32, u32, Option<String>, BTreeMap<String, i64>) {
        (self.table_id, self.row_id, self.sub_label.clone(), self.params.clone())
    }
}

fn schema(line: usize, field: &str, msg: impl Into<String>) -> Error {
    Error::Schema {
        line,
        field: field.to_string(),
        msg: msg.into(),
    }
}

fn validate(row: &TableRow, line: usize) -> Result<()> {
    if row.table_id > MAX_TABLE {
        return Err(schema(line, "table_id", format!("{} is not in 0..=17", row.table_id)));
    }
    if row.expected_index == 0 {
        return Err(schema(line, "expected_index", "must be at least 1"));
    }
    if row.expected_diff.len() != row.expected_atilde.len() {
        return Err(schema(line, "expected_diff", "length differs from expected_atilde"));
    }
    if let Some(w) = &row.expected_weights {
        if w.len() != row.expected_atilde.len() {
            return Err(schema(line, "expected_weights", "length differs from expected_atilde"));
        }
    }
    for d in &row.expected_diff {
        match parse_q(d) {
            Some(v) if is_standard_coefficient(&v) => {}
            Some(_) => return Err(schema(line, "expected_diff", format!("{d} is not 0 or (m-1)/m"))),
            None => return Err(schema(line, "expected_diff", format!("{d} is not a rational"))),
        }
    }
    Ok(())
}

/// Parses and validates JSONL text; blank lines are skipped.
pub fn parse_dataset(text: &str) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let row: TableRow = serde_json::from_str(raw).map_err(|e| schema(line, "<record>", e.to_string()))?;
        validate(&row, line)?;
        if !seen.insert(row.key()) {
            return Err(schema(line, "<record>", format!("duplicate row {}", row.label())));
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn load_dataset(path: &Path) -> Result<Vec<TableRow>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_dataset(&text)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    NecessaryPass { detail: String },
    Mismatch { field: String, computed: String, expected: String },
    Degenerate { reason: String },
    ParseFail { reason: String },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Verified => "verified",
            Verdict::NecessaryPass { .. } => "necessary_pass",
            Verdict::Mismatch { .. } => "mismatch",
            Verdict::Degenerate { .. } => "degenerate",
            Verdict::ParseFail { .. } => "parse_fail",
        }
    }

    pub fn is_failure(&self) -> bool {
        matches!(
            self,
            Verdict::Mismatch { .. } | Verdict::Degenerate { .. } | Verdict::ParseFail { .. }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Computed {
    pub weights: Vec<u64>,
    pub degree: u64,
    pub atilde: Vec<u64>,
    pub dtilde: u64,
    pub q: Vec<u64>,
    pub diff: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced_space: Option<Vec<u64>>,
    pub fano_deg: String,
    pub index_candidate: Option<u32>,
    /// `r_n` (floor rounding) for `n = 1, 2, …`.
    pub r_table: Vec<String>,
    pub regular_complement_absent: bool,
    pub big_coefficient: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub atilde: Vec<u64>,
    pub dtilde: u64,
    pub diff: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced_space: Option<Vec<u64>>,
    pub index: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowReport {
    pub table: u32,
    pub row: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sub_label: Option<String>,
    pub params: BTreeMap<String, i64>,
    pub status: CurationStatus,
    pub verdict: Verdict,
    pub computed: Option<Computed>,
    pub expected: Expected,
    pub detail: String,
}

impl RowReport {
    pub fn label(&self) -> String {
        let mut s = format!("T{}.{}", self.table, self.row);
        if let Some(sub) = &self.sub_label {
            s.push_str(sub);
        }
        for (k, v) in &self.params {
            let _ = write!(s, " {k}={v}");
        }
        s
    }
}

fn fmt_vec(v: &[u64]) -> String {
    format!("{v:?}")
}

fn fmt_qs(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}

fn sorted(v: &[u64]) -> Vec<u64> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

/// Weight system from explicit weights, with the degree read off the support.
pub fn weights_from_explicit(poly: &SupportedPolynomial, w: &[u64]) -> Result<WeightSystem> {
    let wq: Vec<Q> = w.iter().map(|&x| crate::rational::q_u(x)).collect();
    let d = support_value(&wq, poly)?;
    let degree = d
        .to_integer()
        .try_into()
        .map_err(|_| Error::InvalidWeight("degree out of range".into()))?;
    let ws = WeightSystem::new(w.to_vec(), degree)?;
    if !check_weights(poly, &ws)? {
        return Err(Error::NotQuasihomogeneous);
    }
    Ok(ws)
}

/// Detected (or explicit) weights, failing on non-unique solutions.
pub fn resolve_weights(poly: &SupportedPolynomial, explicit: Option<&[u64]>) -> Result<WeightSystem> {
    if let Some(w) = explicit {
        return weights_from_explicit(poly, w);
    }
    match detect_weights(poly)? {
        WeightDetection::Unique(ws) => Ok(ws),
        WeightDetection::NotQuasihomogeneous => Err(Error::NotQuasihomogeneous),
        WeightDetection::Underdetermined { .. } => Err(Error::InvalidWeight(
            "weights are not determined by the support".into(),
        )),
    }
}

fn degenerate(e: &Error) -> Verdict {
    let reason = match e {
        Error::NotQuasihomogeneous => "not quasihomogeneous".to_string(),
        other => other.to_string(),
    };
    Verdict::Degenerate { reason }
}

struct Pipeline {
    ws: WeightSystem,
    wfd: WellFormedDatum,
    profile: ComplementProfile,
    canonical_necessary: bool,
}

fn run_pipeline(row: &TableRow) -> std::result::Result<Pipeline, Verdict> {
    let names: Vec<&str> = row.params.keys().map(String::as_str).collect();
    let poly = parse_expression(&row.poly_src, &names)
        .and_then(|e| instantiate(&e, &row.params))
        .map_err(|e| Verdict::ParseFail { reason: e.to_string() })?;
    let ws = resolve_weights(&poly, row.expected_weights.as_deref()).map_err(|e| degenerate(&e))?;
    let criteria = numeric_criteria(&ws, &poly).map_err(|e| degenerate(&e))?;
    let hd = HypersurfaceDatum::new(&ws, poly).map_err(|e| degenerate(&e))?;
    let wfd = linear_cone_reduce(&well_formize(&hd).map_err(|e| degenerate(&e))?);
    let datum = ComplementDatum::from(&wfd);
    let profile = ComplementProfile::build(&datum, DEFAULT_N_MAX.max(row.expected_index), row.expected_index);
    Ok(Pipeline {
        ws,
        wfd,
        profile,
        canonical_necessary: criteria.canonical_necessary(),
    })
}

fn computed_of(p: &Pipeline) -> Computed {
    Computed {
        weights: p.ws.weights.clone(),
        degree: p.ws.degree,
        atilde: p.wfd.atilde.clone(),
        dtilde: p.wfd.dtilde,
        q: p.wfd.q.clone(),
        diff: fmt_qs(&p.wfd.diff),
        reduced_space: p.wfd.linear_cone.as_ref().map(|c| c.space.clone()),
        fano_deg: fmt_q(&degree_data(&p.wfd).fano_deg),
        index_candidate: p.profile.candidate_min_index,
        r_table: p.profile.table.iter().map(|e| fmt_q(&e.floor)).collect(),
        regular_complement_absent: p.profile.regular_complement_absent,
        big_coefficient: p.profile.big_coefficient,
    }
}

fn compare(row: &TableRow, p: &Pipeline) -> Verdict {
    let mismatch = |field: &str, computed: String, expected: String| Verdict::Mismatch {
        field: field.into(),
        computed,
        expected,
    };
    if let Some(w) = &row.expected_weights {
        if *w != p.ws.weights {
            return mismatch("weights", fmt_vec(&p.ws.weights), fmt_vec(w));
        }
    }
    if !p.canonical_necessary {
        return mismatch("canonical_necessary", "false".into(), "true".into());
    }
    if p.wfd.atilde != row.expected_atilde {
        return mismatch("atilde", fmt_vec(&p.wfd.atilde), fmt_vec(&row.expected_atilde));
    }
    if p.wfd.dtilde != row.expected_dtilde {
        return mismatch("dtilde", p.wfd.dtilde.to_string(), row.expected_dtilde.to_string());
    }
    let expected_diff: Vec<Q> = row
        .expected_diff
        .iter()
        .map(|s| parse_q(s).expect("validated on load"))
        .collect();
    if p.wfd.diff != expected_diff {
        return mismatch(
            "diff",
            fmt_qs(&p.wfd.diff).join(","),
            row.expected_diff.join(","),
        );
    }
    if let Some(space) = &row.expected_reduced_space {
        let got = p.wfd.linear_cone.as_ref().map(|c| sorted(&c.space));
        if got.as_ref() != Some(&sorted(space)) {
            let shown = got.map_or_else(|| "none".to_string(), |g| fmt_vec(&g));
            return mismatch("reduced_space", shown, fmt_vec(space));
        }
    }
    let candidate = p.profile.candidate_min_index;
    if candidate == Some(row.expected_index) {
        Verdict::Verified
    } else if p.profile.admits(row.expected_index) {
        Verdict::NecessaryPass {
            detail: format!(
                "index {} is admissible but the least admissible index is {}",
                row.expected_index,
                candidate.map_or_else(|| "none".into(), |c| c.to_string())
            ),
        }
    } else {
        mismatch(
            "index",
            candidate.map_or_else(|| "none".into(), |c| c.to_string()),
            row.expected_index.to_string(),
        )
    }
}

pub fn verify_row(row: &TableRow) -> RowReport {
    let (verdict, computed) = match run_pipeline(row) {
        Ok(p) => (compare(row, &p), Some(computed_of(&p))),
        Err(v) => (v, None),
    };
    RowReport {
        table: row.table_id,
        row: row.row_id,
        sub_label: row.sub_label.clone(),
        params: row.params.clone(),
        status: row.curation_status,
        verdict,
        computed,
        expected: Expected {
            atilde: row.expected_atilde.clone(),
            dtilde: row.expected_dtilde,
            diff: row.expected_diff.clone(),
            reduced_space: row.expected_reduced_space.clone(),
            index: row.expected_index,
        },
        detail: row.notes.clone(),
    }
}

/// Verifies every row on a pool of `threads` workers; the output follows the
/// dataset order.
pub fn verify_all(rows: &[TableRow], threads: usize) -> Vec<RowReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| rows.par_iter().map(verify_row).collect())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub verified: usize,
    pub necessary_pass: usize,
    pub mismatch: usize,
    pub degenerate: usize,
    pub parse_fail: usize,
    /// Clean rows with a failing verdict.
    pub clean_failures: usize,
}

impl Summary {
    pub fn of(reports: &[RowReport]) -> Self {
        let mut s = Summary::default();
        for r in reports {
            s.total += 1;
            match r.verdict {
                Verdict::Verified => s.verified += 1,
                Verdict::NecessaryPass { .. } => s.necessary_pass += 1,
                Verdict::Mismatch { .. } => s.mismatch += 1,
                Verdict::Degenerate { .. } => s.degenerate += 1,
                Verdict::ParseFail { .. } => s.parse_fail += 1,
            }
            if r.status == CurationStatus::Clean && r.verdict.is_failure() {
                s.clean_failures += 1;
            }
        }
        s
    }

    pub fn success(&self) -> bool {
        self.clean_failures == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

pub fn emit_report(reports: &[RowReport], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => emit_text(reports),
    }
}

fn emit_text(reports: &[RowReport]) -> String {
    let mut by_table: BTreeMap<u32, Vec<&RowReport>> = BTreeMap::new();
    for r in reports {
        by_table.entry(r.table).or_default().push(r);
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>5} {:>5} {:>8} {:>9} {:>8} {:>10} {:>10}",
        "table", "rows", "verified", "necessary", "mismatch", "degenerate", "parse_fail"
    );
    for (t, rs) in &by_table {
        let s = Summary::of(&rs.iter().map(|r| (*r).clone()).collect::<Vec<_>>());
        let _ = writeln!(
            out,
            "{:>5} {:>5} {:>8} {:>9} {:>8} {:>10} {:>10}",
            t, s.total, s.verified, s.necessary_pass, s.mismatch, s.degenerate, s.parse_fail
        );
    }
    let s = Summary::of(reports);
    let _ = writeln!(
        out,
        "{:>5} {:>5} {:>8} {:>9} {:>8} {:>10} {:>10}",
        "all", s.total, s.verified, s.necessary_pass, s.mismatch, s.degenerate, s.parse_fail
    );
    for r in reports.iter().filter(|r| !matches!(r.verdict, Verdict::Verified)) {
        let status = match r.status {
            CurationStatus::Clean => "clean",
            CurationStatus::OcrSuspect => "ocr_suspect",
        };
        let what = match &r.verdict {
            Verdict::Verified => unreachable!(),
            Verdict::NecessaryPass { detail } => detail.clone(),
            Verdict::Mismatch { field, computed, expected } => {
                format!("{field}: computed {computed}, expected {expected}")
            }
            Verdict::Degenerate { reason } | Verdict::ParseFail { reason } => reason.clone(),
        };
        let _ = writeln!(out, "{} [{status}] {}: {what}", r.label(), r.verdict.name());
    }
    out
}

/// Full analysis of one polynomial as JSON: weights, Newton criteria,
/// well-formed datum, degrees and complement profile.
pub fn analyze(
    poly_src: &str,
    params: &BTreeMap<String, i64>,
    weights: Option<&[u64]>,
    degree: Option<u64>,
) -> Result<Value> {
    let names: Vec<&str> = params.keys().map(String::as_str).collect();
    let poly = instantiate(&parse_expression(poly_src, &names)?, params)?;
    let ws = resolve_weights(&poly, weights)?;
    if let Some(d) = degree {
        if d != ws.degree {
            return Err(Error::NotQuasihomogeneous);
        }
    }
    let criteria = numeric_criteria(&ws, &poly)?;
    let hd = HypersurfaceDatum::new(&ws, poly.clone())?;
    let wfd = linear_cone_reduce(&well_formize(&hd)?);
    let dd = degree_data(&wfd);
    let profile = ComplementProfile::build(&ComplementDatum::from(&wfd), DEFAULT_N_MAX, 12);
    let r_table: Vec<Value> = profile
        .table
        .iter()
        .map(|e| {
            json!({
                "n": e.n,
                "floor": fmt_q(&e.floor),
                "ceil": fmt_q(&e.ceil),
                "representable": e.representable,
            })
        })
        .collect();
    Ok(json!({
        "polynomial": poly.to_string(),
        "weights": ws.weights,
        "degree": ws.degree,
        "newton": {
            "excess": criteria.excess,
            "canonical_necessary": criteria.canonical_necessary(),
            "lc_necessary": criteria.lc_necessary(),
            "one_in_gamma": criteria.newton_lc,
            "one_in_gamma_interior": criteria.newton_canonical,
        },
        "well_formed": {
            "atilde": wfd.atilde,
            "dtilde": wfd.dtilde,
            "q": wfd.q,
            "diff": fmt_qs(&wfd.diff),
            "reduced_polynomial": wfd.reduced_poly.to_string(),
            "linear_cone": wfd.linear_cone.as_ref().map(|c| json!({
                "eliminated": c.eliminated,
                "space": c.space,
                "curve_coefficient": fmt_q(&c.curve_coefficient),
                "coordinate_diff": fmt_qs(&c.coordinate_diff),
            })),
        },
        "degrees": {
            "canonical_deg": dd.canonical_deg,
            "o1_power": fmt_q(&dd.o1_power),
            "fano_deg": fmt_q(&dd.fano_deg),
        },
        "complements": {
            "index_candidate": profile.candidate_min_index,
            "regular_complement_absent": profile.regular_complement_absent,
            "big_coefficient": profile.big_coefficient,
            "r_table": r_table,
        },
    }))
}

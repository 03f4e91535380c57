use std::collections::BTreeMap;
use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Usage(format!("unknown format {other:?}"))),
        }
    }
}

/// Grid coordinates of a report entry, rendered in the backend's format.
/// Audits that do not depend on `n` or `beta` leave them empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GridPoint {
    pub n: Option<u32>,
    pub alpha: Option<String>,
    pub beta: Option<String>,
}

impl GridPoint {
    pub fn key(&self) -> String {
        let mut parts = Vec::new();
        if let Some(n) = self.n {
            parts.push(format!("n={n}"));
        }
        if let Some(a) = &self.alpha {
            parts.push(format!("alpha={a}"));
        }
        if let Some(b) = &self.beta {
            parts.push(format!("beta={b}"));
        }
        parts.join(",")
    }
}

/// Everything needed to replay a failing trial in isolation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub trial: u64,
    pub trial_seed: u64,
    pub k: usize,
    /// Generator documents by role (`p`, or `h`/`p`/`q` for the Nehari suite).
    pub generators: BTreeMap<String, Value>,
}

/// One assertion of one suite at one grid point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub point: GridPoint,
    pub k: Option<usize>,
    pub passed: bool,
    /// Name of the quantity in `worst`.
    pub metric: String,
    pub worst: String,
    pub detail: String,
    pub witness: Option<Witness>,
    /// Wall time; never serialized so reports stay byte-identical.
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    suite: &'a str,
    n: String,
    alpha: &'a str,
    beta: &'a str,
    k: String,
    passed: bool,
    metric: &'a str,
    worst: &'a str,
    detail: &'a str,
    witness: String,
}

fn csv_string<T: Serialize>(rows: impl IntoIterator<Item = T>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("in-memory csv write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8 csv")
}

/// CSV: one row per assertion. JSON: suites, then grid points, then entries.
pub fn render_reports(reports: &[SuiteReport], format: Format) -> String {
    let mut sorted: Vec<&SuiteReport> = reports.iter().collect();
    sorted.sort_by(|a, b| (&a.suite, &a.point, a.k).cmp(&(&b.suite, &b.point, b.k)));
    match format {
        Format::Csv => csv_string(sorted.iter().map(|r| CsvRow {
            suite: &r.suite,
            n: r.point.n.map(|n| n.to_string()).unwrap_or_default(),
            alpha: r.point.alpha.as_deref().unwrap_or(""),
            beta: r.point.beta.as_deref().unwrap_or(""),
            k: r.k.map(|k| k.to_string()).unwrap_or_default(),
            passed: r.passed,
            metric: &r.metric,
            worst: &r.worst,
            detail: &r.detail,
            witness: r
                .witness
                .as_ref()
                .map(|w| serde_json::to_string(w).expect("witness json"))
                .unwrap_or_default(),
        })),
        Format::Json => {
            let mut suites: BTreeMap<&str, BTreeMap<String, (GridPoint, Vec<Value>)>> = BTreeMap::new();
            for r in &sorted {
                let entry = json!({
                    "k": r.k,
                    "passed": r.passed,
                    "metric": r.metric,
                    "worst": r.worst,
                    "detail": r.detail,
                    "witness": r.witness,
                });
                suites
                    .entry(&r.suite)
                    .or_default()
                    .entry(r.point.key())
                    .or_insert_with(|| (r.point.clone(), Vec::new()))
                    .1
                    .push(entry);
            }
            let suites: Vec<Value> = suites
                .into_iter()
                .map(|(name, points)| {
                    let passed = points.values().all(|(_, es)| es.iter().all(|e| e["passed"] == true));
                    let points: Vec<Value> = points
                        .into_values()
                        .map(|(p, entries)| {
                            json!({"n": p.n, "alpha": p.alpha, "beta": p.beta, "entries": entries})
                        })
                        .collect();
                    json!({"suite": name, "passed": passed, "points": points})
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&json!({ "suites": suites })).expect("json");
            s.push('\n');
            s
        }
    }
}

/// One row of the bound table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsRow {
    pub n: u32,
    pub alpha: String,
    pub beta: String,
    pub k: usize,
    pub sharp_bound: String,
    pub sharp_bound_applicable: bool,
    pub theorem1_region: String,
    /// Empty outside the small-alpha regions.
    pub theorem1_value: String,
    /// Estimate on the k-th coefficient of `(f/z)^alpha`, i.e. index `k - 1`.
    pub theorem2_estimate: String,
}

pub fn render_bounds(rows: &[BoundsRow], format: Format) -> String {
    match format {
        Format::Csv => csv_string(rows),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json!({ "rows": rows })).expect("json");
            s.push('\n');
            s
        }
    }
}

/// Output of the `expand` command.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpandOutput {
    pub n: u32,
    pub alpha: String,
    pub beta: String,
    pub order: usize,
    /// `(k, Re a_k, Im a_k)` for `k = 0..=order`.
    pub coefficients: Vec<(usize, String, String)>,
    pub reports: Vec<ExpandReportRow>,
    /// Min over the sampled circle of the defining real part minus beta.
    pub membership_min: f64,
    pub radius: f64,
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpandReportRow {
    pub k: usize,
    pub a_k_re: String,
    pub a_k_im: String,
    pub a_k_abs: String,
    pub bound: String,
    pub bound_source: String,
    pub applicable: bool,
    pub region: String,
    pub margin: String,
    pub sharp_hit: bool,
}

pub fn render_expand(out: &ExpandOutput, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut s = format!(
                "# n={} alpha={} beta={} order={} membership_min={:.16e} radius={} samples={}\n",
                out.n, out.alpha, out.beta, out.order, out.membership_min, out.radius, out.samples
            );
            s.push_str(&csv_string(&out.reports));
            s
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(out).expect("json");
            s.push('\n');
            s
        }
    }
}

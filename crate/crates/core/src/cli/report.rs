//! Suite reports and their stable JSON encoding.
//!
//! Schema 1: numbers carry 17 significant digits, complex values are
//! `[re, im]` pairs, and per-check runtimes appear only when requested so
//! that repeated runs produce byte-identical output.

use std::fmt::Write as _;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Number, Value};

pub const SCHEMA: u32 = 1;
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Not a failure, but coverage or a diagnostic needs attention.
    Flagged,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Flagged => "flagged",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckRecord {
    pub id: String,
    /// Which mathematical statement the check exercises.
    pub anchor: String,
    pub status: Status,
    pub value: f64,
    pub tolerance: f64,
    pub note: Option<String>,
    pub runtime_ms: f64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub flagged: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub version: String,
    pub seed: u64,
    records: Vec<CheckRecord>,
}

impl SuiteReport {
    /// Records are kept sorted by check id whatever order they were produced in.
    pub fn new(suite: &str, seed: u64, mut records: Vec<CheckRecord>) -> Self {
        records.sort_by(|a, b| a.id.cmp(&b.id));
        SuiteReport { suite: suite.to_string(), version: VERSION.to_string(), seed, records }
    }

    pub fn records(&self) -> &[CheckRecord] {
        &self.records
    }

    pub fn record(&self, id: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary { total: self.records.len(), ..Summary::default() };
        for r in &self.records {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Flagged => s.flagged += 1,
            }
        }
        s
    }

    pub fn all_passed(&self) -> bool {
        self.summary().fail == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json_value(&self, timings: bool) -> Value {
        let records: Vec<Value> = self
            .records
            .iter()
            .map(|r| {
                let mut v = json!({
                    "id": r.id,
                    "anchor": r.anchor,
                    "status": r.status,
                    "value": num(r.value),
                    "tolerance": num(r.tolerance),
                });
                if let Some(n) = &r.note {
                    v["note"] = json!(n);
                }
                if timings {
                    v["runtime_ms"] = num(r.runtime_ms);
                }
                v
            })
            .collect();
        json!({
            "schema": SCHEMA,
            "suite": self.suite,
            "version": self.version,
            "seed": self.seed,
            "summary": self.summary(),
            "records": records,
        })
    }

    pub fn to_json(&self, timings: bool) -> String {
        serde_json::to_string_pretty(&self.to_json_value(timings)).expect("report values are serializable")
    }

    pub fn to_text(&self, timings: bool) -> String {
        let mut out = String::new();
        let s = self.summary();
        let _ = writeln!(out, "suite {} (version {}, seed {})", self.suite, self.version, self.seed);
        for r in &self.records {
            let _ = write!(out, "[{:>7}] {:<44} value {:<12.4e} tol {:.1e}", r.status.label(), r.id, r.value, r.tolerance);
            if timings {
                let _ = write!(out, "  {:.1} ms", r.runtime_ms);
            }
            let _ = writeln!(out, "\n          {}", r.anchor);
            if let Some(n) = &r.note {
                let _ = writeln!(out, "          {n}");
            }
        }
        let _ = writeln!(out, "{} checks: {} pass, {} fail, {} flagged", s.total, s.pass, s.fail, s.flagged);
        out
    }
}

/// A float with 17 significant digits; non-finite values become strings.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(Number::from_str(&format!("{x:.16e}")).expect("formatted float is a JSON number"))
    } else {
        Value::String(format!("{x}"))
    }
}

pub fn complex(c: Complex64) -> Value {
    Value::Array(vec![num(c.re), num(c.im)])
}

pub fn matrix(m: &DMatrix<Complex64>) -> Value {
    Value::Array((0..m.nrows()).map(|i| Value::Array((0..m.ncols()).map(|j| complex(m[(i, j)])).collect())).collect())
}

/// `[a, b; c, d]` with real entries printed as plain reals.
pub fn matrix_text(m: &DMatrix<Complex64>) -> String {
    let rows: Vec<String> = (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| complex_text(m[(i, j)])).collect::<Vec<_>>().join(", "))
        .collect();
    format!("[{}]", rows.join("; "))
}

/// Human-readable complex number; parts below 1e-13 of the modulus are shown as 0.
pub fn complex_text(c: Complex64) -> String {
    let small = 1e-13 * c.norm().max(1.0);
    let c = Complex64::new(if c.re.abs() < small { 0.0 } else { c.re }, if c.im.abs() < small { 0.0 } else { c.im });
    let re = if c.re == 0.0 { 0.0 } else { c.re };
    if c.im == 0.0 {
        format!("{re}")
    } else if c.re == 0.0 {
        format!("{}i", c.im)
    } else {
        format!("{re}{:+}i", c.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(id: &str, status: Status) -> CheckRecord {
        CheckRecord { id: id.into(), anchor: "a".into(), status, value: 0.1, tolerance: 1e-10, note: None, runtime_ms: 3.0 }
    }

    #[test]
    fn summary_matches_records_and_order_is_by_id() {
        let r = SuiteReport::new("s", 7, vec![rec("b", Status::Fail), rec("a", Status::Pass), rec("c", Status::Flagged)]);
        assert_eq!(r.records()[0].id, "a");
        assert_eq!(r.summary(), Summary { total: 3, pass: 1, fail: 1, flagged: 1 });
        assert_eq!(r.exit_code(), 1);
        let ok = SuiteReport::new("s", 7, vec![rec("a", Status::Pass), rec("c", Status::Flagged)]);
        assert_eq!(ok.exit_code(), 0);
    }

    #[test]
    fn json_is_stable_and_omits_timings_by_default() {
        let r = SuiteReport::new("s", 7, vec![rec("a", Status::Pass)]);
        let j = r.to_json(false);
        assert!(j.contains("\"value\": 1.0000000000000001e-1"));
        assert!(j.contains("\"schema\": 1"));
        assert!(!j.contains("runtime_ms"));
        assert!(r.to_json(true).contains("runtime_ms"));
        let back: Value = serde_json::from_str(&j).unwrap();
        assert_eq!(back["records"][0]["status"], "pass");
        assert_eq!(num(f64::NAN), Value::String("NaN".into()));
    }

    #[test]
    fn matrix_printing() {
        let m = DMatrix::from_row_slice(2, 2, &[Complex64::new(16.0 / 9.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(-0.0, 0.0), Complex64::new(0.5, -2.0)]);
        assert_eq!(matrix_text(&m), "[1.7777777777777777, 0; 0, 0.5-2i]");
        assert_eq!(matrix(&m)[1][1][1], num(-2.0));
    }
}

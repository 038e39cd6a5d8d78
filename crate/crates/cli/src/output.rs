//! Output records shared by every subcommand.
//!
//! Records serialize to JSON with counts as decimal strings, so values of
//! any size survive a round trip. Apart from `elapsed_ms` (and the timing
//! columns of bench rows) a record depends only on its inputs.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    /// Every resolved parameter, including defaults.
    pub params: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub engine: Option<String>,
    pub result: Payload,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Count {
        count: String,
    },
    Ramanujan {
        value: String,
    },
    Ggcd {
        value: String,
        base: String,
    },
    Classes {
        modulus: String,
        rows: Vec<ClassRow>,
    },
    Solutions {
        count: String,
        solutions: Vec<Vec<u64>>,
    },
    Verify(VerifyReport),
    Bench {
        rows: Vec<BenchRow>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassRow {
    pub d: u64,
    pub size: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<u64>>,
}

/// One disagreement found by `verify`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mismatch {
    pub n: u64,
    pub s: u32,
    pub b: u64,
    pub t: Vec<u64>,
    pub formula: String,
    pub brute: Option<String>,
    pub convolution: Option<String>,
    /// Command line that reproduces the disagreement.
    pub reproduce: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub checks: u64,
    pub failures: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub instances: u64,
    pub brute_checked: u64,
    pub convolution_checked: u64,
    /// (n, s, k) cells too large to sweep exhaustively, sampled instead.
    pub sampled_cells: u64,
    pub mismatches: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<Mismatch>,
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.mismatches == 0 && self.suites.iter().all(|s| s.failures == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: u64,
    pub s: u32,
    pub k: usize,
    pub b: u64,
    pub count: String,
    /// Median milliseconds per engine; `None` when the engine's budget was
    /// exceeded.
    pub formula_ms: f64,
    pub convolution_ms: Option<f64>,
    pub brute_ms: Option<f64>,
}

impl OutputRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }

    /// Human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.result {
            Payload::Count { count } => out.push_str(count),
            Payload::Ramanujan { value } => out.push_str(value),
            Payload::Ggcd { value, base } => {
                let s = self.params.get("s").map(Value::to_string).unwrap_or_default();
                write!(out, "{value} (l = {base}, s = {s})").unwrap();
            }
            Payload::Classes { modulus, rows } => {
                writeln!(out, "modulus {modulus}").unwrap();
                write!(out, "{:>8} {:>10}", "d", "size").unwrap();
                if rows.iter().any(|r| r.members.is_some()) {
                    out.push_str("  members");
                }
                for row in rows {
                    write!(out, "\n{:>8} {:>10}", row.d, row.size).unwrap();
                    if let Some(m) = &row.members {
                        let list: Vec<String> = m.iter().map(u64::to_string).collect();
                        write!(out, "  {{{}}}", list.join(", ")).unwrap();
                    }
                }
            }
            Payload::Solutions { count, solutions } => {
                for sol in solutions {
                    let parts: Vec<String> = sol.iter().map(u64::to_string).collect();
                    writeln!(out, "({})", parts.join(", ")).unwrap();
                }
                write!(out, "count: {count} ({} listed)", solutions.len()).unwrap();
            }
            Payload::Verify(report) => {
                writeln!(
                    out,
                    "instances: {} (brute force on {}, convolution on {}, {} sampled cells)",
                    report.instances,
                    report.brute_checked,
                    report.convolution_checked,
                    report.sampled_cells
                )
                .unwrap();
                for suite in &report.suites {
                    writeln!(out, "suite {}: {} checks, {} failures", suite.name, suite.checks, suite.failures)
                        .unwrap();
                    if let Some(f) = &suite.first_failure {
                        writeln!(out, "  first failure: {f}").unwrap();
                    }
                }
                write!(out, "mismatches: {}", report.mismatches).unwrap();
                if let Some(m) = &report.first_mismatch {
                    write!(
                        out,
                        "\nfirst mismatch: n={} s={} b={} t={:?}: formula {}, brute {}, convolution {}\nreproduce: {}",
                        m.n,
                        m.s,
                        m.b,
                        m.t,
                        m.formula,
                        m.brute.as_deref().unwrap_or("-"),
                        m.convolution.as_deref().unwrap_or("-"),
                        m.reproduce
                    )
                    .unwrap();
                }
                write!(out, "\n{}", if report.ok() { "OK" } else { "FAILED" }).unwrap();
            }
            Payload::Bench { rows } => {
                write!(
                    out,
                    "{:>4} {:>2} {:>3} {:>4} {:>24} {:>12} {:>14} {:>12}",
                    "n", "s", "k", "b", "count", "formula_ms", "convolution_ms", "brute_ms"
                )
                .unwrap();
                let ms = |v: Option<f64>| v.map_or_else(|| "skipped".to_string(), |v| format!("{v:.4}"));
                for r in rows {
                    write!(
                        out,
                        "\n{:>4} {:>2} {:>3} {:>4} {:>24} {:>12.4} {:>14} {:>12}",
                        r.n,
                        r.s,
                        r.k,
                        r.b,
                        r.count,
                        r.formula_ms,
                        ms(r.convolution_ms),
                        ms(r.brute_ms)
                    )
                    .unwrap();
                }
            }
        }
        out
    }

    /// CSV rendering; only bench records have a tabular form.
    pub fn to_csv(&self) -> Option<String> {
        let Payload::Bench { rows } = &self.result else {
            return None;
        };
        let opt = |v: Option<f64>| v.map(|v| v.to_string()).unwrap_or_default();
        let mut out = String::from("n,s,k,b,count,formula_ms,convolution_ms,brute_ms\n");
        for r in rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                r.n,
                r.s,
                r.k,
                r.b,
                r.count,
                r.formula_ms,
                opt(r.convolution_ms),
                opt(r.brute_ms)
            )
            .unwrap();
        }
        Some(out)
    }
}

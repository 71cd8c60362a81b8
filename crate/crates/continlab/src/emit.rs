//! Report emission: canonical JSON, one-row-per-property CSV summaries, and
//! human-readable text with witnesses printed as coordinate lists.

use crate::core::{PropertyReport, Verdict};
use crate::corpus::{CorpusReport, EntryReport};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    CsvSummary,
    Text,
}

impl ReportFormat {
    pub fn parse(s: &str) -> Option<ReportFormat> {
        Some(match s {
            "json" => ReportFormat::Json,
            "csv" | "csv-summary" => ReportFormat::CsvSummary,
            "text" => ReportFormat::Text,
            _ => return None,
        })
    }
}

#[derive(Serialize)]
struct CorpusEnvelope<'a> {
    #[serde(flatten)]
    report: &'a CorpusReport,
    canonical_hash: String,
}

/// Serialize a corpus report.  The canonical hash covers the whole document
/// minus the hash field itself; the report carries no timestamps.
pub fn emit_corpus(report: &CorpusReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let envelope = CorpusEnvelope {
                report,
                canonical_hash: report.canonical_hash(),
            };
            serde_json::to_string_pretty(&envelope).expect("corpus report serializes")
        }
        ReportFormat::CsvSummary => {
            let mut out = String::from("entry,property,verdict,witnesses,samples\n");
            for entry in &report.entries {
                for (prop, r) in &entry.direct {
                    out.push_str(&format!(
                        "{},{},{},{},{}\n",
                        entry.id,
                        prop,
                        r.verdict,
                        r.witnesses.len(),
                        r.samples_used
                    ));
                }
            }
            out
        }
        ReportFormat::Text => {
            let mut out = String::new();
            for entry in &report.entries {
                out.push_str(&format!("== {} ==\n", entry.id));
                for (prop, r) in &entry.direct {
                    out.push_str(&format!("  {:<36} {}\n", prop, r.verdict));
                    for w in &r.witnesses {
                        out.push_str(&format!("    witness: {}\n", w.description));
                        for p in &w.points {
                            out.push_str(&format!("      point {}\n", coords(p)));
                        }
                        if !w.scalars.is_empty() {
                            out.push_str(&format!("      scalars {:?}\n", w.scalars));
                        }
                    }
                }
                for m in &entry.mismatches {
                    out.push_str(&format!(
                        "  MISMATCH {}: expected {:?}, got {}\n",
                        m.property, m.expected, m.actual
                    ));
                }
                for c in &entry.contradictions {
                    out.push_str(&format!(
                        "  CONTRADICTION {}: derived {:?} vs direct {}\n",
                        c.fact, c.derived, c.direct
                    ));
                }
            }
            out.push_str(&format!(
                "summary: {} ({} entries, {} mismatches, {} contradictions, {} unresolved)\n",
                if report.summary.pass { "PASS" } else { "FAIL" },
                report.summary.entries,
                report.summary.mismatches,
                report.summary.contradictions,
                report.summary.unresolved,
            ));
            out
        }
    }
}

#[derive(Serialize)]
struct PropertyEnvelope<'a> {
    schema: &'static str,
    subject: &'a str,
    reports: &'a [PropertyReport],
}

/// Serialize standalone property reports for one subject.
pub fn emit_properties(subject: &str, reports: &[PropertyReport], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => serde_json::to_string_pretty(&PropertyEnvelope {
            schema: "continlab/1",
            subject,
            reports,
        })
        .expect("property reports serialize"),
        ReportFormat::CsvSummary => {
            let mut out = String::from("entry,property,verdict,witnesses,samples\n");
            for r in reports {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    subject,
                    r.property_id,
                    r.verdict,
                    r.witnesses.len(),
                    r.samples_used
                ));
            }
            out
        }
        ReportFormat::Text => {
            let mut out = format!("subject: {subject}\n");
            for r in reports {
                out.push_str(&format!("  {:<36} {}\n", r.property_id, r.verdict));
                if !r.notes.is_empty() {
                    out.push_str(&format!("    note: {}\n", r.notes));
                }
                for w in &r.witnesses {
                    out.push_str(&format!("    witness: {}\n", w.description));
                    for p in &w.points {
                        out.push_str(&format!("      point {}\n", coords(p)));
                    }
                    if !w.scalars.is_empty() {
                        out.push_str(&format!("      scalars {:?}\n", w.scalars));
                    }
                }
            }
            out
        }
    }
}

fn coords(p: &[f64]) -> String {
    let inner: Vec<String> = p.iter().map(|c| format!("{c:.9}")).collect();
    format!("({})", inner.join(", "))
}

/// Worst verdict across a set of reports, for exit-code mapping.
pub fn overall_verdict<'a>(reports: impl Iterator<Item = &'a PropertyReport>) -> Verdict {
    let mut worst = Verdict::Holds;
    for r in reports {
        match r.verdict {
            Verdict::Fails => return Verdict::Fails,
            Verdict::Unresolved(reason) => worst = Verdict::Unresolved(reason),
            Verdict::Holds => {}
        }
    }
    worst
}

/// Exit-code contract: 0 pass/holds, 1 fails/mismatch, 2 unresolved present,
/// 3 usage or configuration error.
pub fn exit_code_for(report: &CorpusReport) -> i32 {
    if report.summary.mismatches > 0
        || report.summary.contradictions > 0
        || report.summary.errors > 0
    {
        1
    } else if report.summary.unresolved > 0 {
        2
    } else {
        0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryDigest<'a> {
    pub id: &'a str,
    pub pass: bool,
}

/// One-line pass/fail digest per entry, used by the acceptance suite.
pub fn entry_digests(report: &CorpusReport) -> Vec<EntryDigest<'_>> {
    report
        .entries
        .iter()
        .map(|e: &EntryReport| EntryDigest {
            id: &e.id,
            pass: e.mismatches.is_empty() && e.contradictions.is_empty() && e.errors.is_empty(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::CheckConfig;
    use crate::corpus::run_corpus;

    #[test]
    fn csv_row_count_is_entries_times_properties() {
        let cfg = CheckConfig {
            grid_resolution: 21,
            lambda_resolution: 41,
            sample_count: 8,
            ..CheckConfig::default()
        };
        let report = run_corpus(&cfg, Some(&["ex4-locally-convex-set".to_string()])).unwrap();
        let csv = emit_corpus(&report, ReportFormat::CsvSummary);
        let rows = csv.lines().count() - 1;
        let props: usize = report.entries.iter().map(|e| e.direct.len()).sum();
        assert_eq!(rows, props);
    }

    #[test]
    fn json_has_schema_and_summary() {
        let cfg = CheckConfig {
            grid_resolution: 21,
            lambda_resolution: 41,
            sample_count: 8,
            ..CheckConfig::default()
        };
        let report = run_corpus(&cfg, Some(&["ex4-locally-convex-set".to_string()])).unwrap();
        let json = emit_corpus(&report, ReportFormat::Json);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["schema"], "continlab/1");
        assert!(v["summary"]["pass"].is_boolean());
        assert!(v["canonical_hash"].as_str().unwrap().len() == 64);
    }

    #[test]
    fn identical_runs_emit_identical_documents() {
        let cfg = CheckConfig {
            grid_resolution: 21,
            lambda_resolution: 41,
            sample_count: 8,
            ..CheckConfig::default()
        };
        let a = run_corpus(&cfg, Some(&["ex4-locally-convex-set".to_string()])).unwrap();
        let b = run_corpus(&cfg, Some(&["ex4-locally-convex-set".to_string()])).unwrap();
        assert_eq!(a.canonical_hash(), b.canonical_hash());
        assert_eq!(
            emit_corpus(&a, ReportFormat::Json),
            emit_corpus(&b, ReportFormat::Json)
        );
    }

    #[test]
    fn witness_points_are_printed_in_text_mode() {
        let cfg = CheckConfig {
            grid_resolution: 21,
            lambda_resolution: 41,
            sample_count: 8,
            ..CheckConfig::default()
        };
        let report = run_corpus(&cfg, Some(&["ex4-locally-convex-set".to_string()])).unwrap();
        let text = emit_corpus(&report, ReportFormat::Text);
        assert!(text.contains("witness:"));
        assert!(text.contains("point ("));
    }
}

//! continlab command-line interface.
//!
//! Exit codes: 0 = pass/holds, 1 = fails/mismatch, 2 = unresolved present,
//! 3 = usage or configuration error.

use clap::{Args, Parser, Subcommand};
use continlab::continuity::check_relation_property;
use continlab::core::{CheckConfig, PropertyReport, Verdict};
use continlab::corpus::{load_example, run_corpus, run_entry, Subject};
use continlab::deduction::{applicable_edges, audit, build_graph, closure};
use continlab::emit::{emit_corpus, emit_properties, exit_code_for, overall_verdict, ReportFormat};
use continlab::functions::{
    check_function_continuity, check_function_convexity, ContinuityMode, ConvexityKind,
    FUNCTION_PROPERTIES,
};
use continlab::io::{load_config, LoadedSubject, SubjectSpec};
use continlab::relations::Relation;
use std::collections::BTreeSet;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "continlab",
    version,
    about = "Numerical verification of continuity, convexity, monotonicity and order postulates on convex domains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArgs {
    /// Spatial grid resolution per axis.
    #[arg(long)]
    grid: Option<usize>,
    /// Lambda-grid resolution on [0,1].
    #[arg(long)]
    lambda: Option<usize>,
    /// Sample budget (segments / arcs / tuples).
    #[arg(long)]
    samples: Option<usize>,
    /// Root seed for the derived sampling streams.
    #[arg(long)]
    seed: Option<u64>,
    /// Comparison tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// JSON configuration file mirroring the config field names.
    #[arg(long)]
    config: Option<String>,
}

impl ConfigArgs {
    fn build(&self) -> Result<CheckConfig, String> {
        let mut cfg = match &self.config {
            Some(path) => {
                let raw = std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read config {path}: {e}"))?;
                load_config(&raw).map_err(|e| e.to_string())?
            }
            None => CheckConfig::default(),
        };
        if let Some(g) = self.grid {
            cfg.grid_resolution = g;
        }
        if let Some(m) = self.lambda {
            cfg.lambda_resolution = m;
        }
        if let Some(k) = self.samples {
            cfg.sample_count = k;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(t) = self.tol {
            cfg.cmp_tolerance = t;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check one property (or the standard battery) of a subject.
    Check {
        /// Corpus example id or a subject JSON file.
        #[arg(long)]
        subject: String,
        /// Property id, or "all" for the standard battery.
        #[arg(long, default_value = "all")]
        property: String,
        #[command(flatten)]
        config: ConfigArgs,
        /// Output format.
        #[arg(long, default_value = "text")]
        format: String,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<String>,
    },
    /// Run the golden corpus and audit it against the deduction engine.
    Corpus {
        /// Comma-separated entry ids; default is the whole corpus.
        #[arg(long)]
        subset: Option<String>,
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Run direct checks, assert extra side conditions, and print the
    /// deduction closure with its audit.
    Deduce {
        #[arg(long)]
        subject: String,
        /// Comma-separated side-condition assertions.
        #[arg(long, value_name = "condition,...", default_value = "")]
        assert: String,
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long)]
        out: Option<String>,
    },
    /// Export the implication-edge table as JSON.
    Edges {
        #[arg(long)]
        out: Option<String>,
    },
}

fn write_out(out: &Option<String>, content: &str) -> Result<(), String> {
    use std::io::Write;
    match out {
        Some(path) => std::fs::write(path, content).map_err(|e| format!("cannot write {path}: {e}")),
        None => {
            // Tolerate closed pipes (e.g. piping into head).
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{content}");
            Ok(())
        }
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(3)
}

enum CheckSubject {
    Function {
        f: continlab::functions::RealFunction,
        domain: continlab::geometry::Domain,
    },
    Relation(Relation),
}

fn load_subject(raw: &str, cfg: &CheckConfig) -> Result<(String, CheckSubject), String> {
    if raw.ends_with(".json") {
        let doc = std::fs::read_to_string(raw).map_err(|e| format!("cannot read {raw}: {e}"))?;
        let spec: SubjectSpec =
            serde_json::from_str(&doc).map_err(|e| format!("invalid subject json: {e}"))?;
        return Ok(match spec.build(cfg).map_err(|e| e.to_string())? {
            LoadedSubject::Function { f, domain } => {
                (raw.to_string(), CheckSubject::Function { f, domain })
            }
            LoadedSubject::Relation(r) => (raw.to_string(), CheckSubject::Relation(r)),
        });
    }
    let entry = load_example(raw).map_err(|e| e.to_string())?;
    Ok(match &entry.subject {
        Subject::Function { f, domain } => (
            entry.id.to_string(),
            CheckSubject::Function {
                f: f.clone(),
                domain: domain.clone(),
            },
        ),
        Subject::Relation(rel) => (entry.id.to_string(), CheckSubject::Relation(rel.clone())),
    })
}

const RELATION_BATTERY: [&str; 12] = [
    "complete",
    "transitive",
    "reflexive",
    "non-trivial",
    "convex-upper-sections",
    "continuous",
    "linear-continuous",
    "mixture-continuous",
    "archimedean",
    "strict-archimedean",
    "order-dense",
    "weak-wold-continuous",
];

fn function_property(
    f: &continlab::functions::RealFunction,
    domain: &continlab::geometry::Domain,
    prop: &str,
    cfg: &CheckConfig,
) -> Result<Vec<PropertyReport>, String> {
    let err = |e: continlab::functions::FunctionError| e.to_string();
    let report = match prop {
        "joint-continuity" => {
            check_function_continuity(f, domain, ContinuityMode::Joint, cfg).map_err(err)?
        }
        "separate-continuity" => {
            check_function_continuity(f, domain, ContinuityMode::Separate, cfg).map_err(err)?
        }
        "linear-continuity" => {
            check_function_continuity(f, domain, ContinuityMode::Linear, cfg).map_err(err)?
        }
        "arc-continuity" => {
            check_function_continuity(f, domain, ContinuityMode::Arc, cfg).map_err(err)?
        }
        "concave" => check_function_convexity(f, domain, ConvexityKind::Concave, cfg).map_err(err)?,
        "convex" => check_function_convexity(f, domain, ConvexityKind::Convex, cfg).map_err(err)?,
        "quasi-concave" => {
            check_function_convexity(f, domain, ConvexityKind::QuasiConcave, cfg).map_err(err)?
        }
        "quasi-convex" => {
            check_function_convexity(f, domain, ConvexityKind::QuasiConvex, cfg).map_err(err)?
        }
        "midpoint-quasi-concave" => {
            check_function_convexity(f, domain, ConvexityKind::MidpointQuasiConcave, cfg)
                .map_err(err)?
        }
        "midpoint-quasi-convex" => {
            check_function_convexity(f, domain, ConvexityKind::MidpointQuasiConvex, cfg)
                .map_err(err)?
        }
        other => return Err(format!("unknown function property '{other}'")),
    };
    Ok(vec![report])
}

fn cmd_check(
    subject: String,
    property: String,
    config: ConfigArgs,
    format: String,
    out: Option<String>,
) -> ExitCode {
    let cfg = match config.build() {
        Ok(c) => c,
        Err(e) => return usage_error(&e),
    };
    let Some(fmt) = ReportFormat::parse(&format) else {
        return usage_error(&format!("unknown format '{format}'"));
    };
    let (label, subject) = match load_subject(&subject, &cfg) {
        Ok(s) => s,
        Err(e) => return usage_error(&e),
    };
    let reports: Result<Vec<PropertyReport>, String> = match &subject {
        CheckSubject::Function { f, domain } => {
            if property == "all" {
                let mut all = Vec::new();
                for prop in FUNCTION_PROPERTIES {
                    match function_property(f, domain, prop, &cfg) {
                        Ok(mut r) => all.append(&mut r),
                        Err(e) => return usage_error(&e),
                    }
                }
                Ok(all)
            } else {
                function_property(f, domain, &property, &cfg)
            }
        }
        CheckSubject::Relation(rel) => {
            if property == "all" {
                let mut all = Vec::new();
                for prop in RELATION_BATTERY {
                    match check_relation_property(rel, prop, &cfg) {
                        Ok(mut r) => all.append(&mut r),
                        Err(e) => return usage_error(&e.to_string()),
                    }
                }
                Ok(all)
            } else {
                check_relation_property(rel, &property, &cfg).map_err(|e| e.to_string())
            }
        }
    };
    let reports = match reports {
        Ok(r) => r,
        Err(e) => return usage_error(&e),
    };
    let doc = emit_properties(&label, &reports, fmt);
    if let Err(e) = write_out(&out, &doc) {
        return usage_error(&e);
    }
    match overall_verdict(reports.iter()) {
        Verdict::Holds => ExitCode::SUCCESS,
        Verdict::Fails => ExitCode::from(1),
        Verdict::Unresolved(_) => ExitCode::from(2),
    }
}

fn cmd_corpus(
    subset: Option<String>,
    config: ConfigArgs,
    format: String,
    out: Option<String>,
) -> ExitCode {
    let cfg = match config.build() {
        Ok(c) => c,
        Err(e) => return usage_error(&e),
    };
    let Some(fmt) = ReportFormat::parse(&format) else {
        return usage_error(&format!("unknown format '{format}'"));
    };
    let ids: Option<Vec<String>> =
        subset.map(|s| s.split(',').map(|x| x.trim().to_string()).collect());
    let report = match run_corpus(&cfg, ids.as_deref()) {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    let doc = emit_corpus(&report, fmt);
    if let Err(e) = write_out(&out, &doc) {
        return usage_error(&e);
    }
    ExitCode::from(exit_code_for(&report) as u8)
}

fn cmd_deduce(
    subject: String,
    assert: String,
    config: ConfigArgs,
    out: Option<String>,
) -> ExitCode {
    let cfg = match config.build() {
        Ok(c) => c,
        Err(e) => return usage_error(&e),
    };
    let user_asserted: Vec<String> = assert
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();

    // Corpus entries run their curated battery; file subjects run the
    // standard relation battery plus set-property classification.
    let (mut result, extra_asserted) = if subject.ends_with(".json") {
        let (label, loaded) = match load_subject(&subject, &cfg) {
            Ok(s) => s,
            Err(e) => return usage_error(&e),
        };
        let CheckSubject::Relation(rel) = loaded else {
            return usage_error("deduce expects a relation subject");
        };
        let mut direct = std::collections::BTreeMap::new();
        for prop in RELATION_BATTERY {
            match check_relation_property(&rel, prop, &cfg) {
                Ok(reports) => {
                    for r in reports {
                        direct.insert(r.property_id.clone(), r);
                    }
                }
                Err(e) => return usage_error(&e.to_string()),
            }
        }
        let mut extra = Vec::new();
        if rel.domain.is_declared_cone() {
            extra.push("cone-domain".to_string());
        }
        let profile = continlab::geometry::classify_set_properties(&rel.domain, &cfg);
        let mk = |id: &str, v: Verdict| -> PropertyReport {
            match v {
                Verdict::Holds => PropertyReport::holds(id, 1, &cfg),
                Verdict::Fails => PropertyReport::fails(
                    id,
                    vec![continlab::core::Witness::new(vec![], vec![], "structural classification")
                        .survived()],
                    1,
                    &cfg,
                ),
                Verdict::Unresolved(r) => PropertyReport::unresolved(id, r, 1, &cfg),
            }
        };
        direct.insert("property-c".into(), mk("property-c", profile.property_c));
        direct.insert(
            "property-b".into(),
            continlab::geometry::property_b_report(&rel.domain, &cfg),
        );
        let report = continlab::corpus::EntryReport {
            id: label,
            direct,
            derived: continlab::deduction::DerivedProfile::new("file-subject"),
            asserted: Vec::new(),
            contradictions: Vec::new(),
            mismatches: Vec::new(),
            errors: Vec::new(),
        };
        (report, extra)
    } else {
        let entry = match load_example(&subject) {
            Ok(e) => e,
            Err(e) => return usage_error(&e.to_string()),
        };
        let report = run_entry(&entry, &cfg);
        let extra = report.asserted.clone();
        (report, extra)
    };

    let asserted: BTreeSet<String> = user_asserted
        .into_iter()
        .chain(extra_asserted)
        .collect();
    // Re-close with the combined assertions and re-audit.
    let graph = build_graph();
    let mut profile = continlab::deduction::DerivedProfile::new(result.id.clone());
    for (key, report) in &result.direct {
        if let Some(fact) = continlab::deduction::FactId::parse(key) {
            let survived = report
                .witnesses
                .iter()
                .any(|w| w.robustness == continlab::core::Robustness::SurvivedRefinement);
            profile.set_direct(fact, report.verdict, survived);
        }
    }
    let derived = closure(graph, &profile, &asserted);
    let fired = applicable_edges(graph, &derived, &asserted);
    result.contradictions = audit(&derived, &result.direct);
    result.derived = derived;
    result.asserted = asserted.into_iter().collect();

    #[derive(serde::Serialize)]
    struct DeduceEnvelope<'a> {
        schema: &'static str,
        entry: &'a continlab::corpus::EntryReport,
        fired_edges: Vec<&'a str>,
    }
    let doc = serde_json::to_string_pretty(&DeduceEnvelope {
        schema: "continlab/1",
        entry: &result,
        fired_edges: fired.iter().map(|e| e.id.as_str()).collect(),
    })
    .expect("deduce report serializes");
    if let Err(e) = write_out(&out, &doc) {
        return usage_error(&e);
    }
    if !result.contradictions.is_empty() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn cmd_edges(out: Option<String>) -> ExitCode {
    #[derive(serde::Serialize)]
    struct EdgesEnvelope<'a> {
        schema: &'static str,
        edges: &'a [continlab::deduction::ImplicationEdge],
    }
    let graph = build_graph();
    let doc = serde_json::to_string_pretty(&EdgesEnvelope {
        schema: "continlab/1",
        edges: &graph.edges,
    })
    .expect("edge table serializes");
    if let Err(e) = write_out(&out, &doc) {
        return usage_error(&e);
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Check {
            subject,
            property,
            config,
            format,
            out,
        } => cmd_check(subject, property, config, format, out),
        Command::Corpus {
            subset,
            config,
            format,
            out,
        } => cmd_corpus(subset, config, format, out),
        Command::Deduce {
            subject,
            assert,
            config,
            out,
        } => cmd_deduce(subject, assert, config, out),
        Command::Edges { out } => cmd_edges(out),
    }
}

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use unicurve::sections::{CertificateRecord, RoutedArgument};

use crate::config::RunConfig;

pub const SCHEMA: &str = "unicurve-report";
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationRecord {
    pub g: usize,
    pub n: usize,
    pub cutoff: usize,
    /// Dimensions of weights -1, -2, .. down to the cutoff.
    pub dims: Vec<usize>,
    pub expected_weight1: usize,
    pub expected_weight2: usize,
    pub relations: usize,
    pub nonzero_relations: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExistenceRecord {
    pub g: usize,
    pub n: usize,
    pub verdict: String,
    pub expected_residual: String,
    pub candidates: Vec<Vec<String>>,
    pub constraints_checked: usize,
    pub certificates: Vec<CertificateRecord>,
    pub routed: Option<RoutedArgument>,
    pub evidence: Vec<String>,
    pub notes: Vec<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionCheck {
    pub j: usize,
    pub c: Vec<String>,
    pub constraints: usize,
    pub nonzero_residuals: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TautologicalRecord {
    pub g: usize,
    pub n: usize,
    pub candidates: usize,
    pub sections: Vec<SectionCheck>,
    pub consistent: bool,
    pub notes: Vec<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Constituent {
    pub irrep: String,
    pub multiplicity: u64,
    pub dimension: u64,
    pub weight: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharsRecord {
    pub g: usize,
    pub expression: String,
    pub constituents: Vec<Constituent>,
    pub dimension: u64,
    pub error: Option<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegenerationRecord {
    pub g: usize,
    /// `dim(Λ³H - H)`.
    pub lambda3_0_dim: i64,
    /// Multiplicity of `[1,1]` in `Λ²(Λ³H - H)`, twists ignored.
    pub partition_multiplicity: u64,
    /// `dim Hom(Λ²Λ³₀H, Λ²₀H)` with weights matched.
    pub bracket_multiplicity: u64,
    /// Multiplicity of `[1,1]` in `Λ²Λ²₀H`.
    pub lambda2_lambda2_0_multiplicity: u64,
    pub expectation: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkippedRecord {
    pub g: usize,
    pub n: usize,
    pub suite: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureRecord {
    pub g: usize,
    pub n: usize,
    pub suite: String,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Record {
    Presentation(PresentationRecord),
    Existence(ExistenceRecord),
    Tautological(TautologicalRecord),
    Chars(CharsRecord),
    Degeneration(DegenerationRecord),
    Skipped(SkippedRecord),
    Failure(FailureRecord),
}

impl Record {
    pub fn suite(&self) -> &str {
        match self {
            Record::Presentation(_) => "presentation",
            Record::Existence(_) => "gamma-o",
            Record::Tautological(_) => "gamma",
            Record::Chars(_) => "chars",
            Record::Degeneration(_) => "degeneration",
            Record::Skipped(s) => &s.suite,
            Record::Failure(f) => &f.suite,
        }
    }

    /// `None` for skipped cases.
    pub fn pass(&self) -> Option<bool> {
        match self {
            Record::Presentation(r) => Some(r.pass),
            Record::Existence(r) => Some(r.pass),
            Record::Tautological(r) => Some(r.pass),
            Record::Chars(r) => Some(r.pass),
            Record::Degeneration(r) => Some(r.pass),
            Record::Skipped(_) => None,
            Record::Failure(_) => Some(false),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    #[serde(flatten)]
    pub record: Record,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SummaryRow {
    pub suite: String,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.record.pass() != Some(false))
    }

    pub fn records(&self) -> impl Iterator<Item = &Record> {
        self.entries.iter().map(|e| &e.record)
    }

    /// Pass/fail counts per suite, in suite-name order.
    pub fn summary(&self) -> Vec<SummaryRow> {
        let mut rows: BTreeMap<String, SummaryRow> = BTreeMap::new();
        for r in self.records() {
            let row = rows
                .entry(r.suite().to_string())
                .or_insert_with(|| SummaryRow {
                    suite: r.suite().to_string(),
                    ..SummaryRow::default()
                });
            match r.pass() {
                Some(true) => row.passed += 1,
                Some(false) => row.failed += 1,
                None => row.skipped += 1,
            }
        }
        rows.into_values().collect()
    }

    /// Line-delimited JSON: a schema header, one line per record, the
    /// per-suite summary and a final verdict.
    pub fn to_structured(&self) -> String {
        let mut out = String::new();
        let header = serde_json::json!({
            "schema": SCHEMA,
            "version": SCHEMA_VERSION,
            "config": self.config,
        });
        let _ = writeln!(out, "{header}");
        for e in &self.entries {
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string(e).expect("records serialize")
            );
        }
        for row in self.summary() {
            let mut v = serde_json::to_value(&row).expect("summary serializes");
            v["kind"] = "summary".into();
            let _ = writeln!(out, "{v}");
        }
        let _ = writeln!(
            out,
            "{}",
            serde_json::json!({ "kind": "verdict", "pass": self.passed() })
        );
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let _ = writeln!(
            out,
            "unicurve {} g={} n={} cutoff={}",
            c.command.name(),
            c.g,
            c.n,
            c.cutoff
        );
        for e in &self.entries {
            let mark = match e.record.pass() {
                Some(true) => "PASS",
                Some(false) => "FAIL",
                None => "SKIP",
            };
            let _ = write!(out, "{mark} {}", describe(&e.record));
            if let Some(ms) = e.elapsed_ms {
                let _ = write!(out, " ({ms} ms)");
            }
            out.push('\n');
            for line in details(&e.record) {
                let _ = writeln!(out, "    {line}");
            }
        }
        let _ = writeln!(out, "summary:");
        for row in self.summary() {
            let _ = writeln!(
                out,
                "  {:<13} passed {:>3}  failed {:>3}  skipped {:>3}",
                row.suite, row.passed, row.failed, row.skipped
            );
        }
        let _ = writeln!(
            out,
            "verdict: {}",
            if self.passed() { "pass" } else { "fail" }
        );
        out
    }
}

fn describe(r: &Record) -> String {
    match r {
        Record::Presentation(p) => format!(
            "presentation g={} n={}: dims {:?}, {} relations, {} nonzero",
            p.g, p.n, p.dims, p.relations, p.nonzero_relations
        ),
        Record::Existence(e) => format!(
            "gamma-o g={} n={}: {} ({} constraints, {} certificates)",
            e.g,
            e.n,
            e.verdict,
            e.constraints_checked,
            e.certificates.len()
        ),
        Record::Tautological(t) => format!(
            "gamma g={} n={}: {} tautological sections, {}",
            t.g,
            t.n,
            t.candidates,
            if t.consistent {
                "consistent"
            } else {
                "inconsistent"
            }
        ),
        Record::Chars(c) => match &c.error {
            Some(err) => format!("chars g={} {}: {err}", c.g, c.expression),
            None => format!("chars g={} {}: dim {}", c.g, c.expression, c.dimension),
        },
        Record::Degeneration(d) => format!(
            "degeneration g={}: dim Λ³₀H {}, [1,1] in Λ²Λ³₀H {}, Hom(Λ²Λ³₀H, Λ²₀H) {}",
            d.g, d.lambda3_0_dim, d.partition_multiplicity, d.bracket_multiplicity
        ),
        Record::Skipped(s) => format!("{} g={} n={}: {}", s.suite, s.g, s.n, s.reason),
        Record::Failure(f) => format!("{} g={} n={}: error: {}", f.suite, f.g, f.n, f.error),
    }
}

fn details(r: &Record) -> Vec<String> {
    match r {
        Record::Existence(e) => {
            let mut out: Vec<String> = e
                .certificates
                .iter()
                .map(|c| {
                    format!(
                        "c=({}) {}({}): lhs {} rhs {} residual {} {:?}",
                        c.candidate.join(","),
                        c.projection,
                        c.element,
                        c.lhs,
                        c.rhs,
                        c.residual,
                        c.verdict
                    )
                })
                .collect();
            if let Some(route) = &e.routed {
                out.push(format!(
                    "routed: d(g,1) ≅ dC(g,0) {} (weight -2 dims {} / {}), tautological candidates {}, {}",
                    route.isomorphic,
                    route.weight2_dims.0,
                    route.weight2_dims.1,
                    route.tautological_candidates,
                    route.bracket
                ));
            }
            out.extend(e.evidence.iter().map(|s| format!("evidence: {s}")));
            out.extend(e.notes.iter().map(|s| format!("note: {s}")));
            out
        }
        Record::Tautological(t) => t
            .sections
            .iter()
            .map(|s| {
                format!(
                    "s_{} c=({}): {} constraints, {} nonzero residuals",
                    s.j,
                    s.c.join(","),
                    s.constraints,
                    s.nonzero_residuals
                )
            })
            .chain(t.notes.iter().map(|n| format!("note: {n}")))
            .collect(),
        Record::Chars(c) => c
            .constituents
            .iter()
            .map(|k| {
                format!(
                    "{} x{} (dim {}, weight {})",
                    k.irrep, k.multiplicity, k.dimension, k.weight
                )
            })
            .collect(),
        _ => Vec::new(),
    }
}

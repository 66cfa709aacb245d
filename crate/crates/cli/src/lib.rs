//! Grid sweeps over `(g, n)` running the presentation, classification and
//! character suites, with text and line-delimited JSON reports.

pub mod config;
pub mod report;

use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use unicurve::characters::cache::DecompositionCache;
use unicurve::characters::{
    decompose, exterior_power, lambda2_0, lambda3_0, weight_of, weyl_character,
};
use unicurve::free_lie::generators;
use unicurve::presentation::{build_gr_p_gn, configuration_relations};
use unicurve::sections::{bracket_fact, exists_section, verify_taut_sections, Existence, MapKind};
use unicurve::Scalar;

pub use config::{Command, Format, RunConfig, Span};
use report::*;
pub use report::{Entry, Record, Report};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] unicurve::Error),
    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot start worker pool: {0}")]
    Pool(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            _ => 1,
        }
    }
}

/// `(2g - 2) / g`, the expected obstruction residual.
pub fn expected_residual(g: usize) -> Scalar {
    Scalar::new((2 * g as i64 - 2).into(), (g as i64).into())
}

fn open_cache(config: &RunConfig) -> Result<Option<DecompositionCache>, CliError> {
    match &config.cache_dir {
        Some(dir) => Ok(Some(DecompositionCache::open(dir)?)),
        None => Ok(None),
    }
}

fn skipped(g: usize, n: usize, suite: &str, reason: impl Into<String>) -> Record {
    Record::Skipped(SkippedRecord {
        g,
        n,
        suite: suite.into(),
        reason: reason.into(),
    })
}

fn failure(g: usize, n: usize, suite: &str, err: impl ToString) -> Record {
    Record::Failure(FailureRecord {
        g,
        n,
        suite: suite.into(),
        error: err.to_string(),
    })
}

/// Relation-vanishing and dimension checks for `Gr p_{g,n}`.
pub fn presentation_case(g: usize, n: usize, cutoff: usize) -> Record {
    let run = || -> unicurve::Result<PresentationRecord> {
        let p = build_gr_p_gn::<Scalar>(g, n, cutoff)?;
        let copies: Vec<u32> = (1..=n as u32).collect();
        let relations = configuration_relations::<Scalar>(g, &copies);
        let mut nonzero = 0;
        for r in &relations {
            if !p.normal_form_in(r, 2)?.is_zero() {
                nonzero += 1;
            }
        }
        let dims: Vec<usize> = (1..=cutoff).map(|w| p.explicit_dim(w)).collect();
        let expected_weight1 = 2 * g * n;
        let expected_weight2 = n * (2 * g * g - g - 1) + n * n.saturating_sub(1) / 2;
        let pass = nonzero == 0
            && dims[0] == expected_weight1
            && dims[1] == expected_weight2
            && generators(g, &copies).len() == expected_weight1;
        Ok(PresentationRecord {
            g,
            n,
            cutoff,
            dims,
            expected_weight1,
            expected_weight2,
            relations: relations.len(),
            nonzero_relations: nonzero,
            pass,
        })
    };
    run().map_or_else(|e| failure(g, n, "presentation", e), Record::Presentation)
}

/// Existence of a section of `γ_n^o`.
pub fn existence_case(g: usize, n: usize) -> Record {
    if g < 3 {
        return skipped(g, n, "gamma-o", "requires g >= 3");
    }
    let run = || -> unicurve::Result<ExistenceRecord> {
        let r = exists_section::<Scalar>(g, n)?;
        let expected = expected_residual(g);
        let pass = if g >= 4 {
            r.verdict == Existence::NoSection
                && r.certificates.len() == n
                && r.certificates.iter().all(|c| c.residual == expected)
        } else {
            r.verdict == Existence::Inconclusive
        };
        Ok(ExistenceRecord {
            g,
            n,
            verdict: r.verdict.to_string(),
            expected_residual: expected.to_string(),
            candidates: r
                .candidates
                .iter()
                .map(|c| c.iter().map(ToString::to_string).collect())
                .collect(),
            constraints_checked: r.constraints_checked,
            certificates: r.certificates.iter().map(|c| c.record()).collect(),
            routed: r.routed,
            evidence: r.evidence.iter().map(ToString::to_string).collect(),
            notes: r.notes,
            pass,
        })
    };
    run().map_or_else(|e| failure(g, n, "gamma-o", e), Record::Existence)
}

/// Consistency of the tautological sections of `γ_n`.
pub fn tautological_case(g: usize, n: usize) -> Record {
    if g < 3 {
        return skipped(g, n, "gamma", "requires g >= 3");
    }
    let run = || -> unicurve::Result<TautologicalRecord> {
        let r = verify_taut_sections::<Scalar>(g, n)?;
        let sections: Vec<SectionCheck> = r
            .checks
            .iter()
            .map(|c| SectionCheck {
                j: c.j,
                c: c.c.iter().map(ToString::to_string).collect(),
                constraints: c.certificates.len(),
                nonzero_residuals: c
                    .certificates
                    .iter()
                    .filter(|x| !is_zero(&x.residual))
                    .count(),
            })
            .collect();
        let consistent = r.consistent();
        Ok(TautologicalRecord {
            g,
            n,
            candidates: sections.len(),
            pass: consistent && sections.len() == n,
            sections,
            consistent,
            notes: r.notes,
        })
    };
    run().map_or_else(|e| failure(g, n, "gamma", e), Record::Tautological)
}

fn is_zero(x: &Scalar) -> bool {
    num_traits::Zero::is_zero(x)
}

fn descriptor_for(
    g: usize,
    expression: &str,
    cache: Option<&DecompositionCache>,
) -> unicurve::Result<unicurve::characters::WeightedModuleDescriptor> {
    match cache {
        Some(c) => c.descriptor(g, expression),
        None => decompose(g, &unicurve::characters::expr::evaluate(g, expression)?),
    }
}

/// Evaluate and decompose a character expression.
pub fn chars_case(g: usize, expression: &str, cache: Option<&DecompositionCache>) -> Record {
    let run = || -> unicurve::Result<CharsRecord> {
        let d = descriptor_for(g, expression, cache)?;
        let mut constituents = Vec::new();
        for (label, &m) in d.iter() {
            let dimension = match cache {
                Some(c) => c.character(g, label.partition())?.dimension() as u64,
                None => weyl_character(g, label.partition())?.dimension() as u64,
            };
            constituents.push(Constituent {
                irrep: label.to_string(),
                multiplicity: m,
                dimension,
                weight: weight_of(label),
            });
        }
        let dimension = constituents
            .iter()
            .map(|c| c.multiplicity * c.dimension)
            .sum();
        Ok(CharsRecord {
            g,
            expression: expression.to_string(),
            constituents,
            dimension,
            error: None,
            pass: true,
        })
    };
    Record::Chars(run().unwrap_or_else(|e| CharsRecord {
        g,
        expression: expression.to_string(),
        constituents: Vec::new(),
        dimension: 0,
        error: Some(e.to_string()),
        pass: false,
    }))
}

/// The low-genus behaviour of `Λ³₀H` and its bracket into `Λ²₀H`.
pub fn degeneration_case(g: usize, cache: Option<&DecompositionCache>) -> Record {
    let run = || -> unicurve::Result<DegenerationRecord> {
        let lambda3_0_dim = lambda3_0(g).dimension();
        let partition_multiplicity = if g >= 2 {
            descriptor_for(g, "Λ2(Λ3(std) - std)", cache)?.partition_multiplicity(&[1, 1])
        } else {
            0
        };
        let (bracket_multiplicity, l2l2) = if g >= 2 {
            let l2 = decompose(g, &exterior_power(&lambda2_0(g), 2))?;
            (
                bracket_fact(g)?.multiplicity,
                l2.partition_multiplicity(&[1, 1]),
            )
        } else {
            (0, 0)
        };
        let (expectation, pass) = match g {
            0 | 1 => ("no expectation below genus 2".to_string(), true),
            2 => ("Λ³₀H = 0".to_string(), lambda3_0_dim == 0),
            3 => (
                "[1,1] absent from Λ²Λ³₀H".to_string(),
                partition_multiplicity == 0 && bracket_multiplicity == 0,
            ),
            _ => (
                "[1,1] present in Λ²Λ³₀H".to_string(),
                partition_multiplicity >= 1 && bracket_multiplicity >= 1,
            ),
        };
        Ok(DegenerationRecord {
            g,
            lambda3_0_dim,
            partition_multiplicity,
            bracket_multiplicity,
            lambda2_lambda2_0_multiplicity: l2l2,
            expectation,
            pass,
        })
    };
    run().map_or_else(|e| failure(g, 0, "degeneration", e), Record::Degeneration)
}

fn pool(config: &RunConfig) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| CliError::Pool(e.to_string()))
}

/// Run `f` on every case in parallel, keeping grid order.
fn sweep<F>(config: &RunConfig, cases: &[(usize, usize)], f: F) -> Result<Vec<Entry>, CliError>
where
    F: Fn(usize, usize) -> Record + Sync,
{
    let timings = config.timings;
    Ok(pool(config)?.install(|| {
        cases
            .par_iter()
            .map(|&(g, n)| {
                let start = Instant::now();
                let record = f(g, n);
                Entry {
                    record,
                    elapsed_ms: timings.then(|| start.elapsed().as_millis()),
                }
            })
            .collect()
    }))
}

fn grid_sweep<F>(config: &RunConfig, suite: &str, f: F) -> Result<Vec<Entry>, CliError>
where
    F: Fn(usize, usize) -> Record + Sync,
{
    sweep(config, &config.all_cases(), |g, n| {
        if config::hyperbolic(g, n) {
            f(g, n)
        } else {
            skipped(g, n, suite, "2g-2+n must be positive")
        }
    })
}

pub fn cmd_verify_presentation(config: &RunConfig) -> Result<Report, CliError> {
    config.validate()?;
    let cutoff = config.cutoff;
    let entries = grid_sweep(config, "presentation", |g, n| {
        presentation_case(g, n, cutoff)
    })?;
    Ok(Report {
        config: config.clone(),
        entries,
    })
}

pub fn cmd_classify(config: &RunConfig, map: MapKind) -> Result<Report, CliError> {
    config.validate()?;
    let entries = match map {
        MapKind::GammaO => grid_sweep(config, "gamma-o", existence_case)?,
        MapKind::Gamma => grid_sweep(config, "gamma", tautological_case)?,
    };
    let mut config = config.clone();
    config.command = Command::Classify { map };
    Ok(Report { config, entries })
}

pub fn cmd_chars(config: &RunConfig, expression: &str) -> Result<Report, CliError> {
    config.validate()?;
    let cache = open_cache(config)?;
    let genera: Vec<(usize, usize)> = config.g.values().map(|g| (g, 0)).collect();
    let entries = sweep(config, &genera, |g, _| {
        chars_case(g, expression, cache.as_ref())
    })?;
    Ok(Report {
        config: config.clone(),
        entries,
    })
}

/// Every suite over the grid, grouped by suite.
pub fn cmd_report(config: &RunConfig) -> Result<Report, CliError> {
    config.validate()?;
    let cache = open_cache(config)?;
    let cutoff = config.cutoff;
    let mut entries = grid_sweep(config, "presentation", |g, n| {
        presentation_case(g, n, cutoff)
    })?;
    entries.extend(grid_sweep(config, "gamma-o", existence_case)?);
    entries.extend(grid_sweep(config, "gamma", tautological_case)?);
    let genera: Vec<(usize, usize)> = config.g.values().map(|g| (g, 0)).collect();
    entries.extend(sweep(config, &genera, |g, _| {
        degeneration_case(g, cache.as_ref())
    })?);
    Ok(Report {
        config: config.clone(),
        entries,
    })
}

/// Dispatch on the configured command.
pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    match &config.command {
        Command::VerifyPresentation => cmd_verify_presentation(config),
        Command::Classify { map } => cmd_classify(config, *map),
        Command::Chars { expression } => cmd_chars(config, expression),
        Command::Report => cmd_report(config),
    }
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Text => report.to_text(),
        Format::Structured => report.to_structured(),
    }
}

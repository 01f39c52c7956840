//! Library half of the `openbook-rho` command-line tool.
//!
//! [`run`] takes a parsed [`JobConfig`] and the input document and returns
//! everything the process should print, so the binary is a thin shell.

pub mod parse;
pub mod render;

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use num_traits::ToPrimitive;
use openbook_core::{
    boundary_connected_sum_variation, classify_dichotomy, free_lie_ranks, growth_estimate,
    homotopy_ranks, is_rationally_elliptic, milnor_openbook_spec, milnor_page,
    monodromy_constraint_report, space_ranks, validate_spec, variation_is_iso, ConstraintOutcome,
    DichotomyVerdict, GrowthClass, MilnorError, NoObstructionReason, SpaceError, SpaceModel,
    DEFAULT_TRUNCATION,
};

use parse::InputError;
use render::{exact_number, float, pretty, ranks_json, space_model_json, spec_json};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Rational homotopy ranks of a space.
    Ranks,
    /// Elliptic/hyperbolic verdict for an open book.
    Classify,
    /// Milnor page and monodromy constraints for a Brieskorn polynomial.
    Brieskorn,
    /// Ranks of the free graded Lie algebra on given generators.
    LieRanks,
    /// Determinant and isomorphism test for a variation matrix.
    Variation,
    /// Partial sums and exponential growth base of a wedge.
    Growth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Parser)]
#[command(
    name = "openbook-rho",
    version,
    about = "Exact rational homotopy ranks of open books"
)]
pub struct JobConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Input JSON document; read from stdin when absent.
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Highest degree computed.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_TRUNCATION, value_parser = parse_truncation)]
    pub truncation: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,
}

fn parse_truncation(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n < 2 {
        return Err(format!("must be at least 2, got {n}"));
    }
    Ok(n)
}

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    Violations,
    MalformedInput,
    Internal,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::Violations => 1,
            Status::MalformedInput => 2,
            Status::Internal => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn success(stdout: String) -> Self {
        Outcome {
            status: Status::Success,
            stdout,
            stderr: String::new(),
        }
    }

    pub fn malformed(e: &InputError) -> Self {
        Outcome {
            status: Status::MalformedInput,
            stdout: String::new(),
            stderr: format!("error: malformed input: {e}\n"),
        }
    }

    fn internal(message: &str) -> Self {
        Outcome {
            status: Status::Internal,
            stdout: String::new(),
            stderr: format!("error: internal: {message}\n"),
        }
    }
}

struct Issue {
    code: String,
    message: String,
}

impl Issue {
    fn of_space(e: &SpaceError) -> Self {
        Issue {
            code: e.code().to_string(),
            message: e.to_string(),
        }
    }
}

/// Violations: in JSON mode `report` goes to stdout with a `violations`
/// array added; otherwise one `code: message` line each on stderr.
fn violations(format: OutputFormat, report: Value, issues: &[Issue]) -> Outcome {
    let (stdout, stderr) = if format == OutputFormat::Json {
        let mut report = report;
        report["violations"] = issues
            .iter()
            .map(|i| render::issue_json(&i.code, &i.message))
            .collect();
        (pretty(&report), String::new())
    } else {
        let lines: String = issues
            .iter()
            .map(|i| format!("{}: {}\n", i.code, i.message))
            .collect();
        (String::new(), lines)
    };
    Outcome {
        status: Status::Violations,
        stdout,
        stderr,
    }
}

fn csv_unsupported(command: &str) -> Outcome {
    Outcome::malformed(&InputError {
        field: "--format".into(),
        message: format!("csv output is not available for {command}"),
    })
}

/// Runs one job on the text of its input document.
pub fn run(config: &JobConfig, input: &str) -> Outcome {
    if config.truncation < 2 {
        return Outcome::malformed(&InputError {
            field: "--truncation".into(),
            message: format!("must be at least 2, got {}", config.truncation),
        });
    }
    let result = panic::catch_unwind(AssertUnwindSafe(|| dispatch(config, input)));
    match result {
        Ok(Ok(outcome)) => outcome,
        Ok(Err(e)) => Outcome::malformed(&e),
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unexpected failure".to_string());
            Outcome::internal(&message)
        }
    }
}

fn dispatch(config: &JobConfig, input: &str) -> Result<Outcome, InputError> {
    let doc = parse::parse_document(input)?;
    let n = config.truncation;
    let format = config.format;
    Ok(match config.command {
        Command::Ranks => ranks(&parse::parse_space_model(&doc, "")?, n, format),
        Command::Growth => growth(&parse::parse_space_model(&doc, "")?, n, format),
        Command::LieRanks => lie_ranks(&parse::parse_generators(&doc)?, n, format),
        Command::Classify => classify(&parse::parse_openbook(&doc)?, n, format),
        Command::Brieskorn => brieskorn(&parse::parse_brieskorn(&doc)?, n, format),
        Command::Variation => variation(&parse::parse_variation(&doc)?, format),
    })
}

fn ranks(model: &SpaceModel, n: usize, format: OutputFormat) -> Outcome {
    let report = json!({"model": space_model_json(model), "truncation": n});
    match space_ranks(model, n) {
        Err(e) => violations(format, report, &[Issue::of_space(&e)]),
        Ok(r) => Outcome::success(match format {
            OutputFormat::Json => {
                let mut report = report;
                report["ranks"] = ranks_json(&r);
                pretty(&report)
            }
            OutputFormat::Csv => render::ranks_csv(&r),
            OutputFormat::Table => format!(
                "rational homotopy ranks of {model}, degrees 1..={n}\n{}",
                render::ranks_table(&r)
            ),
        }),
    }
}

fn lie_ranks(generators: &openbook_core::GradedRanks, n: usize, format: OutputFormat) -> Outcome {
    let r = match free_lie_ranks(generators, n) {
        Ok(r) => r,
        Err(e) => return Outcome::internal(&e.to_string()),
    };
    Outcome::success(match format {
        OutputFormat::Json => pretty(&json!({
            "generators": ranks_json(generators),
            "truncation": n,
            "ranks": ranks_json(&r),
        })),
        OutputFormat::Csv => render::ranks_csv(&r),
        OutputFormat::Table => format!(
            "free graded Lie algebra on {generators}, degrees 1..={n}\n{}",
            render::ranks_table(&r)
        ),
    })
}

fn growth_class_code(c: GrowthClass) -> &'static str {
    match c {
        GrowthClass::PolynomialOrFinite => "polynomial_or_finite",
        GrowthClass::Exponential => "exponential",
    }
}

fn growth(model: &SpaceModel, n: usize, format: OutputFormat) -> Outcome {
    let report = json!({"model": space_model_json(model), "truncation": n});
    let g = match growth_estimate(model, n) {
        Ok(g) => g,
        Err(e) => return violations(format, report, &[Issue::of_space(&e)]),
    };
    let lo = 3 * n / 4;
    let rate = g.window_rate(lo, n);
    let sums = || g.partial_sums.iter().enumerate().map(|(i, s)| (i + 1, s));
    Outcome::success(match format {
        OutputFormat::Json => {
            let mut report = report;
            report["classification"] = json!(growth_class_code(g.classification));
            report["growth_base"] = float(g.growth_base);
            report["window_rate"] = json!({"lo": lo, "hi": n, "rate": float(rate)});
            report["partial_sums"] = Value::Object(
                sums()
                    .map(|(d, s)| (d.to_string(), exact_number(s)))
                    .collect(),
            );
            pretty(&report)
        }
        OutputFormat::Csv => render::csv(("degree", "partial_sum"), sums()),
        OutputFormat::Table => {
            let fmt = |x: Option<f64>| x.map_or("none".to_string(), |x| format!("{x:.9}"));
            format!(
                "growth of {model}, degrees 1..={n}\nclassification: {}\ngrowth base: {}\n\
                 window rate over degrees {lo}..{n}: {}\n{}",
                growth_class_code(g.classification),
                fmt(g.growth_base),
                fmt(rate),
                render::table(("degree", "partial_sum"), sums())
            )
        }
    })
}

/// Spec echo, verdict, ranks and notes of an open book.
fn openbook_report(spec: &openbook_core::OpenBookSpec, n: usize) -> (Value, DichotomyVerdict) {
    let verdict = classify_dichotomy(spec, n);
    let ranks = homotopy_ranks(spec, n).ok();
    let report = json!({
        "spec": spec_json(spec),
        "verdict": render::verdict_json(&verdict),
        "homotopy_ranks": ranks.as_ref().map_or(Value::Null, ranks_json),
        "notes": spec.notes(),
    });
    (report, verdict)
}

fn classify(spec: &openbook_core::OpenBookSpec, n: usize, format: OutputFormat) -> Outcome {
    let (report, verdict) = openbook_report(spec, n);
    let found = validate_spec(spec);
    if !found.is_empty() {
        let issues: Vec<Issue> = found
            .iter()
            .map(|v| Issue {
                code: v.code().to_string(),
                message: v.to_string(),
            })
            .collect();
        return violations(format, report, &issues);
    }
    let ranks = homotopy_ranks(spec, n).expect("validated spec has ranks");
    Outcome::success(match format {
        OutputFormat::Json => pretty(&report),
        OutputFormat::Csv => render::ranks_csv(&ranks),
        OutputFormat::Table => {
            let mut out = format!(
                "open book of dimension {} with page {}\nverdict: {}\n",
                spec.ambient_dim,
                spec.page,
                render::verdict_line(&verdict)
            );
            for note in spec.notes() {
                out.push_str(&format!("note: {note}\n"));
            }
            out.push_str(&format!("rational homotopy ranks, degrees 1..={n}\n"));
            out.push_str(&render::ranks_table(&ranks));
            out
        }
    })
}

fn brieskorn(job: &parse::BrieskornJob, n: usize, format: OutputFormat) -> Outcome {
    if format == OutputFormat::Csv {
        return csv_unsupported("brieskorn");
    }
    let b = &job.exponents;
    let report = monodromy_constraint_report(b);
    let page = report
        .multiplicity
        .to_u64()
        .ok_or_else(|| MilnorError::MultiplicityTooLarge(report.multiplicity.clone()))
        .and_then(|mu| milnor_page(mu, b.n()));
    let mut notes = Vec::new();
    let page = match page {
        Ok(p) => Some(p),
        Err(e) => {
            notes.push(format!("no page model: {e}"));
            None
        }
    };
    let page_elliptic = page.as_ref().map(is_rationally_elliptic);
    let page_growth = page
        .as_ref()
        .filter(|p| matches!(p, SpaceModel::WedgeOfSpheres(_)))
        .and_then(|p| growth_estimate(p, n.max(10)).ok())
        .and_then(|g| g.growth_base);
    let monodromy = job
        .monodromy
        .unwrap_or(openbook_core::MonodromyHypothesis::Unverified);
    let open_book = match milnor_openbook_spec(b, monodromy, job.fibre.clone()) {
        Ok(spec) => Some(openbook_report(&spec, n)),
        Err(e) => {
            notes.push(format!("no open book spec: {e}"));
            None
        }
    };
    let (outcome, reason) = match report.outcome {
        ConstraintOutcome::Obstruction => ("obstruction", None),
        ConstraintOutcome::NoObstruction(r) => (
            "no_obstruction",
            Some(match r {
                NoObstructionReason::DimensionBelowThree => "dimension_below_three",
                NoObstructionReason::MultiplicityAtMostOne => "multiplicity_at_most_one",
            }),
        ),
    };

    if format == OutputFormat::Json {
        return Outcome::success(pretty(&json!({
            "exponents": b.exponents(),
            "n": b.n(),
            "multiplicity": exact_number(&report.multiplicity),
            "page": page.as_ref().map_or(Value::Null, space_model_json),
            "page_rationally_elliptic": page_elliptic,
            "page_growth_base": float(page_growth),
            "constraint": {
                "outcome": outcome,
                "reason": reason,
                "conclusions": report.conclusions(),
            },
            "open_book": open_book.as_ref().map_or(Value::Null, |(r, _)| r.clone()),
            "notes": notes,
        })));
    }

    let mut out = report.to_string();
    if let Some(p) = &page {
        let kind = if page_elliptic == Some(true) {
            "elliptic"
        } else {
            "hyperbolic"
        };
        out.push_str(&format!("page: {p}, rationally {kind}\n"));
    }
    if let Some(base) = page_growth {
        out.push_str(&format!("page growth base: {base:.9}\n"));
    }
    if let Some((_, verdict)) = &open_book {
        out.push_str(&format!(
            "open book verdict: {}\n",
            render::verdict_line(verdict)
        ));
        if let DichotomyVerdict::NotClassifiable { missing } = verdict {
            for v in missing {
                out.push_str(&format!("  {}: {v}\n", v.code()));
            }
        }
    }
    for note in notes {
        out.push_str(&format!("note: {note}\n"));
    }
    Outcome::success(out)
}

fn variation(v: &openbook_core::VariationMatrix, format: OutputFormat) -> Outcome {
    if format == OutputFormat::Csv {
        return csv_unsupported("variation");
    }
    let det = v.determinant();
    let iso = variation_is_iso(v);
    let sum = boundary_connected_sum_variation(v);
    let sum_det = sum.determinant();
    let sum_iso = variation_is_iso(&sum);
    Outcome::success(match format {
        OutputFormat::Json => pretty(&json!({
            "matrix": v.rows().iter().map(|r| r.iter().map(exact_number).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "size": v.size(),
            "determinant": exact_number(&det),
            "is_isomorphism": iso,
            "boundary_connected_sum": {
                "determinant": exact_number(&sum_det),
                "is_isomorphism": sum_iso,
            },
        })),
        _ => format!(
            "size: {}\ndeterminant: {det}\nisomorphism: {iso}\n\
             boundary connected sum determinant: {sum_det}\nboundary connected sum isomorphism: {sum_iso}\n",
            v.size()
        ),
    })
}

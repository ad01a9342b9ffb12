//! `algebroid`: runs TOML job documents against algebroid-core.

mod document;
mod jobs;

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use algebroid_core::{Expr, Poly};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use document::{parse_document, Backend, Context, Diagnostic, DocScalar, Document, Job, QuadratureSpec};
use jobs::{run_job, Flags, JobOutput, Status};

#[derive(Parser, Debug)]
#[command(
    name = "algebroid",
    version,
    about = "Lie algebroid characteristic classes and index integrands"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Truncation degree for characteristic forms.
    #[arg(long, global = true)]
    truncate: Option<usize>,

    /// Absolute error target for numeric integrals.
    #[arg(long, global = true)]
    tolerance: Option<f64>,

    /// Maximum number of quadrature boxes.
    #[arg(long, global = true)]
    budget: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every job listed in the document.
    Run(Input),
    /// Check the algebroid axioms.
    Validate(Input),
    /// Betti numbers of a Lie algebra.
    Cohomology(Input),
    /// Characteristic forms of a connection.
    Charclass(Input),
    /// Curvature matrix of a connection.
    Curvature(Input),
    /// Topological side of an index formula.
    Index(Input),
    /// Cohomology, convolution and trace of a finite groupoid.
    Groupoid(Input),
    /// Compare a base integral with its Thom-mapped counterpart.
    ThomCheck(Input),
}

#[derive(clap::Args, Debug)]
struct Input {
    /// Job document; `-` or absent reads standard input.
    path: Option<PathBuf>,
}

impl Command {
    fn parts(&self) -> (Option<&'static str>, &Input) {
        match self {
            Command::Run(i) => (None, i),
            Command::Validate(i) => (Some("validate"), i),
            Command::Cohomology(i) => (Some("cohomology"), i),
            Command::Charclass(i) => (Some("charclass"), i),
            Command::Curvature(i) => (Some("curvature"), i),
            Command::Index(i) => (Some("index"), i),
            Command::Groupoid(i) => (Some("groupoid"), i),
            Command::ThomCheck(i) => (Some("thom-check"), i),
        }
    }
}

fn read_input(input: &Input) -> Result<(String, String), Diagnostic> {
    match &input.path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map(|s| (p.display().to_string(), s))
            .map_err(|e| Diagnostic::parse(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Diagnostic::parse(format!("cannot read standard input: {e}")))?;
            Ok(("<stdin>".into(), s))
        }
    }
}

/// The jobs a subcommand selects; a default job when the document lists none.
fn selected_jobs(doc: &Document, kind: Option<&str>) -> Vec<Job> {
    match kind {
        None => doc.jobs.clone(),
        Some(k) => {
            let listed: Vec<Job> = doc.jobs.iter().filter(|j| j.kind == k).cloned().collect();
            if listed.is_empty() {
                vec![Job {
                    kind: k.to_string(),
                    ..Job::default()
                }]
            } else {
                listed
            }
        }
    }
}

fn execute<S: DocScalar>(source: &str, doc: &Document, jobs: &[Job], cli: &Cli) -> Result<Vec<JobOutput>, Diagnostic> {
    let overrides = QuadratureSpec {
        tolerance: cli.tolerance,
        budget: cli.budget,
    };
    let ctx = Context::<S>::build(source, doc, overrides)?;
    let flags = Flags { truncate: cli.truncate };
    Ok(jobs.iter().map(|j| run_job(&ctx, j, flags)).collect())
}

fn render(name: &str, outputs: &[JobOutput], format: Format) -> String {
    match format {
        Format::Text => {
            let mut s = String::new();
            for (i, o) in outputs.iter().enumerate() {
                let tag = match o.status {
                    Status::Ok => String::new(),
                    other => format!(" [{}]", other.label()),
                };
                s.push_str(&format!("[{}] {}{tag}: {}\n", i + 1, o.kind, o.summary));
                for d in &o.details {
                    s.push_str(&format!("    {d}\n"));
                }
            }
            s
        }
        Format::Json => {
            let results: Vec<_> = outputs
                .iter()
                .enumerate()
                .map(|(i, o)| {
                    json!({
                        "job": i + 1,
                        "kind": o.kind,
                        "status": o.status.label(),
                        "summary": o.summary,
                        "result": o.data,
                    })
                })
                .collect();
            let doc = json!({ "document": name, "results": results });
            format!(
                "{}\n",
                serde_json::to_string_pretty(&doc).expect("JSON values serialize")
            )
        }
    }
}

fn fail(d: &Diagnostic, format: Format) -> ExitCode {
    match format {
        Format::Text => eprintln!("error: {}", d.message),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&json!({ "error": d.message, "exit": d.exit }))
                .expect("JSON values serialize")
        ),
    }
    ExitCode::from(d.exit)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let (kind, input) = cli.command.parts();
    let (name, source) = match read_input(input) {
        Ok(v) => v,
        Err(d) => return fail(&d, cli.format),
    };
    let doc = match parse_document(&source) {
        Ok(d) => d,
        Err(d) => return fail(&d, cli.format),
    };
    let jobs = selected_jobs(&doc, kind);
    let outputs = match doc.scalars {
        Backend::Poly => execute::<Poly>(&source, &doc, &jobs, &cli),
        Backend::Expr => execute::<Expr>(&source, &doc, &jobs, &cli),
    };
    let outputs = match outputs {
        Ok(o) => o,
        Err(d) => return fail(&d, cli.format),
    };
    let mut stdout = io::stdout().lock();
    let _ = stdout.write_all(render(&name, &outputs, cli.format).as_bytes());
    let code = outputs.iter().map(|o| o.status.exit_code()).max().unwrap_or(0);
    ExitCode::from(code)
}

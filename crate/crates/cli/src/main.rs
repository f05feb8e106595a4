//! `qgal`: load a catalog algebra or a presentation file and run checks on it.

mod suites;
mod target;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qgal::haar::DEFAULT_Q_SAMPLES;
use qgal::presentations::parse_coaction_file;
use qgal::report::Report;
use qgal::{Error, Result};
use serde_json::{json, Map, Value};

use suites::{Outcome, Settings};

#[derive(Parser)]
#[command(name = "qgal", version, about = "Exact checks for Hopf *-algebras, comodule algebras and Galois extensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify {
        target: String,
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        common: Common,
    },
    /// Haar functional values, invariance and Gram positivity.
    Haar {
        target: String,
        #[command(flatten)]
        common: Common,
    },
    /// Cotensor product of a corepresentation with the target.
    Cotensor {
        target: String,
        #[command(flatten)]
        common: Common,
    },
    /// Normal form of an expression in the target.
    Normalize {
        target: String,
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Parse a presentation or coaction file and summarize it.
    Parse {
        target: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 2)]
    degree: usize,
    /// Comma-separated real samples of q.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    q: Option<Vec<f64>>,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    p: usize,
    /// trivial, fundamental, conjugate or tensorK.
    #[arg(long, default_value = "fundamental")]
    comodule: String,
    /// Coaction file for a file target.
    #[arg(long)]
    coaction: Option<String>,
    #[arg(long)]
    json: bool,
}

impl Common {
    fn settings(&self) -> Settings {
        Settings {
            degree: self.degree,
            q_samples: self.q.clone().unwrap_or_else(|| DEFAULT_Q_SAMPLES.to_vec()),
            comodule: self.comodule.clone(),
        }
    }

    fn resolve(&self, target: &str) -> Result<target::Target> {
        target::resolve(target, self.degree, self.n, self.p, self.coaction.as_deref())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, common) = match &cli.command {
        Command::Verify { common, .. } => ("verify", common),
        Command::Haar { common, .. } => ("haar", common),
        Command::Cotensor { common, .. } => ("cotensor", common),
        Command::Normalize { common, .. } => ("normalize", common),
        Command::Parse { common, .. } => ("parse", common),
    };
    let settings = common.settings();
    match run(&cli.command, common, &settings) {
        Ok(out) => {
            let code = out.report.status().exit_code();
            emit(&out, common.json, &settings);
            ExitCode::from(code as u8)
        }
        Err(e) => {
            if common.json {
                println!("{}", json!({ "check": name, "status": "error", "error": e.to_string() }));
            }
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn run(command: &Command, common: &Common, s: &Settings) -> Result<Outcome> {
    match command {
        Command::Verify { target, suite, .. } => suites::verify(&common.resolve(target)?, suite, s),
        Command::Haar { target, .. } => suites::haar_command(&common.resolve(target)?, s),
        Command::Cotensor { target, .. } => suites::cotensor_command(&common.resolve(target)?, s),
        Command::Normalize { target, expr, .. } => normalize(&common.resolve(target)?, expr),
        Command::Parse { target, .. } => parse(target, common),
    }
}

fn normalize(t: &target::Target, expr: &str) -> Result<Outcome> {
    let p = &t.presentation;
    let x = p.parse(expr)?;
    let nf = p.nf(&x);
    let mut report = Report::new(format!("normalize in {}", t.name));
    report.note(format!("normal forms are unique up to degree {}", p.certified_degree()));
    if nf.degree() > p.certified_degree() {
        report.push(
            "normal form lies within the certified degree",
            qgal::report::Status::Undecided,
            format!("degree {}", nf.degree()),
        );
    }
    let shown = p.show(&nf);
    let mut extra = Map::new();
    extra.insert("input".into(), json!(expr));
    extra.insert("normal_form".into(), json!(shown));
    Ok(Outcome { report: report.finish(), extra, text: format!("{shown}\n") })
}

fn parse(target: &str, common: &Common) -> Result<Outcome> {
    if std::path::Path::new(target).is_file() {
        let src = std::fs::read_to_string(target).map_err(|e| Error::Invalid(format!("{target}: {e}")))?;
        if src.trim_start().starts_with("coaction") {
            let cf = parse_coaction_file(&src)?;
            let mut report = Report::new(format!("parse {target}"));
            report.note(format!("coaction of {} on {}", cf.base, cf.total));
            let mut extra = Map::new();
            extra.insert("total".into(), json!(cf.total));
            extra.insert("base".into(), json!(cf.base));
            return Ok(Outcome {
                report: report.finish(),
                extra,
                text: format!("coaction {} <- {}\n", cf.total, cf.base),
            });
        }
    }
    let t = common.resolve(target)?;
    let p = &t.presentation;
    let mut report = Report::new(format!("parse {}", t.name));
    let mut text = format!("algebra {}\ngenerators: {}\n", p.name, p.alphabet.names().join(", "));
    text.push_str(&format!("relations: {}\n", p.relations.len()));
    for r in &p.relations {
        text.push_str(&format!("  {} = 0\n", p.show(r)));
    }
    text.push_str(&format!(
        "rewrite rules: {}, certified to degree {}\nstar: {}\nhopf: {}\ncoaction: {}\n",
        p.rewrite.len(),
        p.certified_degree(),
        yes(p.has_star()),
        yes(t.hopf.is_some()),
        yes(t.coaction.is_some()),
    ));
    report.check("presentation parsed and completed", true, "");
    let mut extra = Map::new();
    extra.insert("name".into(), json!(p.name));
    extra.insert("generators".into(), json!(p.alphabet.names()));
    extra.insert("relations".into(), json!(p.relations.iter().map(|r| p.show(r)).collect::<Vec<_>>()));
    extra.insert("rules".into(), json!(p.rewrite.len()));
    extra.insert("certified_degree".into(), json!(p.certified_degree()));
    extra.insert("star".into(), json!(p.has_star()));
    extra.insert("hopf".into(), json!(t.hopf.is_some()));
    extra.insert("coaction".into(), json!(t.coaction.is_some()));
    Ok(Outcome { report: report.finish(), extra, text })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn emit(out: &Outcome, as_json: bool, s: &Settings) {
    let mut stdout = std::io::stdout().lock();
    if as_json {
        let mut v = out.report.to_json();
        if let Value::Object(m) = &mut v {
            m.insert("params".into(), json!({ "degree": s.degree, "q_samples": s.q_samples }));
            for (k, x) in &out.extra {
                m.insert(k.clone(), x.clone());
            }
        }
        let _ = writeln!(stdout, "{v}");
    } else {
        let _ = write!(stdout, "{}{}", out.text, out.report);
    }
}

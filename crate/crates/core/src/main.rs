use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use superkit::atlas::{classify_maximal, SplitModelSpec};
use superkit::consistency::component_difference;
use superkit::error::{Error, Result};
use superkit::grassmann::{ConjugationPolicy, Grassmann};
use superkit::jet::Reality;
use superkit::lagrangian::Superfield;
use superkit::laurent::LaurentFn;
use superkit::reference::{reference_check, ReferenceReport};
use superkit::report::{
    classification_report, goodfield_report, random_family, scan, seed_from_env, to_csv,
};
use superkit::scalar::ComplexScalar;

/// Exact computations on (1|2)-dimensional projective supermanifolds and the consistency of the
/// superparticle component Lagrangian.
#[derive(Parser, Debug)]
#[command(name = "superkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Maximality classification over a range of split models.
    Classify(ClassifyArgs),
    /// Recompute displayed closed forms and diff them against first principles.
    PaperCheck(PaperCheckArgs),
    /// Consistency report for one field on one model.
    Consistency(FieldArgs),
    /// Good-field residuals for one field on one model.
    Goodfield(FieldArgs),
    /// One table row per field, from a file or a seeded random family.
    Scan(ScanArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, default_value = "fix", value_parser = parse_policy)]
    policy: ConjugationPolicy,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct ModelArgs {
    /// `k1,k2`
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    model: (i64, i64),
    #[arg(long, default_value = "i", value_parser = parse_complex, allow_hyphen_values = true)]
    lambda1: ComplexScalar,
    #[arg(long, default_value = "i", value_parser = parse_complex, allow_hyphen_values = true)]
    lambda2: ComplexScalar,
    /// JSON Laurent function for the even nilpotent shift.
    #[arg(long)]
    alpha: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    /// Inclusive `lo,hi`.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true, default_value = "-2,4")]
    k1_range: (i64, i64),
    /// Inclusive `lo,hi`; when omitted `k2 = 2 − k1`.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    k2_range: Option<(i64, i64)>,
    #[arg(long, default_value = "i", value_parser = parse_complex, allow_hyphen_values = true)]
    lambda1: ComplexScalar,
    #[arg(long, default_value = "i", value_parser = parse_complex, allow_hyphen_values = true)]
    lambda2: ComplexScalar,
    #[arg(long)]
    alpha: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct PaperCheckArgs {
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct FieldArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Superfield JSON: `{"charts": {"V": {"phi": …, "psi1": …, "psi2": …, "F": …}}}`.
    #[arg(long)]
    fields: PathBuf,
    /// Reject fields with a nonzero good-field residual (exit 3).
    #[arg(long)]
    require_good: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// JSON array of superfields.
    #[arg(long, conflicts_with = "family")]
    fields: Option<PathBuf>,
    /// Random family `type1,type2` with types among real, imaginary, zero, free.
    #[arg(long, value_parser = parse_types)]
    family: Option<(Reality, Reality)>,
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[command(flatten)]
    common: Common,
}

fn parse_policy(s: &str) -> std::result::Result<ConjugationPolicy, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_complex(s: &str) -> std::result::Result<ComplexScalar, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_pair(s: &str) -> std::result::Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `a,b`, got {s:?}"))?;
    let n = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"));
    Ok((n(a)?, n(b)?))
}

fn parse_types(s: &str) -> std::result::Result<(Reality, Reality), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `type1,type2`, got {s:?}"))?;
    let t = |x: &str| {
        serde_json::from_value::<Reality>(serde_json::Value::String(x.trim().to_ascii_lowercase()))
            .map_err(|_| format!("unknown type {x:?}"))
    };
    Ok((t(a)?, t(b)?))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn read_alpha(path: &Option<PathBuf>) -> Result<LaurentFn> {
    path.as_deref().map_or(Ok(LaurentFn::default()), read_json)
}

impl ModelArgs {
    fn spec(&self) -> Result<SplitModelSpec> {
        let (k1, k2) = self.model;
        Ok(SplitModelSpec::new(k1, k2, self.lambda1.clone(), self.lambda2.clone()).with_alpha(read_alpha(&self.alpha)?))
    }
}

fn emit(common: &Common, text: String) -> Result<()> {
    match &common.out {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

#[derive(Serialize)]
struct ClassifyRow {
    k1: i64,
    k2: i64,
    maximal: bool,
    reasons: Vec<String>,
    berezinian: String,
}

fn compact(g: &Grassmann<LaurentFn>) -> String {
    let constant = g.is_even() && g.c12.is_empty() && g.c0.terms().all(|(e, _)| *e == (0, 0));
    if constant {
        g.c0.coeff(0, 0).to_string()
    } else {
        g.to_string()
    }
}

fn classify(args: &ClassifyArgs) -> Result<()> {
    let (lo, hi) = args.k1_range;
    if lo > hi || args.k2_range.is_some_and(|(a, b)| a > b) {
        return Err(Error::Parse("empty range".into()));
    }
    let alpha = read_alpha(&args.alpha)?;
    let mut rows = Vec::new();
    for k1 in lo..=hi {
        let k2s: Vec<i64> = match args.k2_range {
            Some((a, b)) => (a..=b).collect(),
            None => vec![2 - k1],
        };
        for k2 in k2s {
            let spec = SplitModelSpec::new(k1, k2, args.lambda1.clone(), args.lambda2.clone()).with_alpha(alpha.clone());
            let report = classify_maximal(&spec);
            let berezinian = match spec.transition().and_then(|t| t.berezinian()) {
                Ok(b) => compact(&b),
                Err(e) => format!("error: {e}"),
            };
            rows.push(ClassifyRow { k1, k2, maximal: report.maximal, reasons: report.reasons, berezinian });
        }
    }
    let text = match args.common.format {
        Format::Json => json(&rows)?,
        Format::Csv => {
            let mut out = String::from("k1,k2,maximal,reasons,berezinian\n");
            for r in &rows {
                let line = [
                    r.k1.to_string(),
                    r.k2.to_string(),
                    r.maximal.to_string(),
                    csv_cell(&r.reasons.join("; ")),
                    csv_cell(&r.berezinian),
                ];
                out.push_str(&line.join(","));
                out.push('\n');
            }
            out
        }
    };
    emit(&args.common, text)
}

fn paper_check(args: &PaperCheckArgs) -> Result<()> {
    let report = reference_check(args.common.policy)?;
    let text = match args.common.format {
        Format::Json => json(&report)?,
        Format::Csv => {
            let mut out = String::from("id,status,documented,differences\n");
            for e in &report.entries {
                let status = if e.matches() { "match" } else { "mismatch" };
                out.push_str(&format!("{},{},{},{}\n", e.id, status, e.documented, e.differences.len()));
            }
            out
        }
    };
    emit(&args.common, text)
}

fn load_field(args: &FieldArgs) -> Result<(SplitModelSpec, Superfield)> {
    Ok((args.model.spec()?, read_json(&args.fields)?))
}

fn consistency(args: &FieldArgs) -> Result<()> {
    let (spec, field) = load_field(args)?;
    let policy = args.common.policy;
    let reference: ReferenceReport = reference_check(policy)?;
    let report = classification_report(&spec, &field, policy, &reference)?;
    if args.require_good {
        let residual = report.good_residual.parse().map_err(|_| Error::Parse(report.good_residual.clone()))?;
        component_difference(&spec, policy, &residual, false)?;
    }
    emit(&args.common, json(&report)?)
}

fn goodfield(args: &FieldArgs) -> Result<()> {
    let (spec, field) = load_field(args)?;
    let report = goodfield_report(&spec, &field, args.common.policy)?;
    if args.require_good && !report.good {
        return Err(Error::NotGood { max_residual: report.good_residual_norm });
    }
    emit(&args.common, json(&report)?)
}

fn scan_command(args: &ScanArgs) -> Result<()> {
    let spec = args.model.spec()?;
    let fields: Vec<Superfield> = match (&args.fields, args.family) {
        (Some(path), _) => read_json(path)?,
        (None, Some(types)) => random_family(seed_from_env()?, types, args.count),
        (None, None) => return Err(Error::Parse("scan needs --fields or --family".into())),
    };
    let rows = scan(&spec, &fields, args.common.policy)?;
    let text = match args.common.format {
        Format::Csv => to_csv(&rows),
        Format::Json => json(&rows)?,
    };
    emit(&args.common, text)
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Classify(a) => classify(a),
        Command::PaperCheck(a) => paper_check(a),
        Command::Consistency(a) => consistency(a),
        Command::Goodfield(a) => goodfield(a),
        Command::Scan(a) => scan_command(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

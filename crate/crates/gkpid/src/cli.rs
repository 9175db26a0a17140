//! Command-line front end.
//!
//! Subcommands: `info`, `meet`, `decompose`, `check`, `corpus`. Exit codes:
//! 0 success, 2 parse/validation failure, 3 unknown identifier, 4 arity
//! misuse. Values are reported in bits at six decimals; a refuted property
//! is a result, not an error.

use crate::fileio::{self, fmt_bits, round_bits};
use crate::lattice::{join, meet};
use crate::measures::{zero_error_information, MeasureId};
use crate::pid::{decompose2, PidResult, SYNERGY_TOLERANCE};
use crate::probspace::{JointDistribution, RandomVariable};
use crate::propcheck::{self, gen, PropertyId, PropertyReport};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "gkpid",
    version,
    about = "Information decomposition over finite discrete joint distributions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum InFormat {
    Auto,
    Json,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print entropies and pairwise informations against a target variable.
    Info {
        file: PathBuf,
        /// Target variable name.
        #[arg(long)]
        target: String,
        /// Input format (default: detect JSON by a leading brace).
        #[arg(long, value_enum, default_value_t = InFormat::Auto)]
        format: InFormat,
    },
    /// Print the common random variable of two or more variables.
    Meet {
        file: PathBuf,
        /// Comma-separated variable names, e.g. X1,X2.
        #[arg(long)]
        vars: String,
        #[arg(long, value_enum, default_value_t = InFormat::Auto)]
        format: InFormat,
    },
    /// Decompose the information two predictors carry about a target.
    Decompose {
        file: PathBuf,
        /// One of: imin, iwedge, iwedge0.
        #[arg(long)]
        measure: String,
        /// Comma-separated pair of predictor names, e.g. X1,X2.
        #[arg(long)]
        predictors: String,
        #[arg(long)]
        target: String,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// Check desired properties by randomized counterexample search.
    Check {
        /// One of: imin, iwedge, iwedge0 (required unless --all).
        #[arg(long)]
        measure: Option<String>,
        /// One of: gp, eq, tm, m0, s0, lb, sr, id, lp0, m1, s1, lp1, im.
        #[arg(long)]
        property: Option<String>,
        /// Run the full 11-property x 3-measure matrix.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
    /// List the built-in example distributions, or write one as a file.
    Corpus { name: Option<String> },
}

/// Runs the CLI against process arguments and streams.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    execute(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Parses `args` (including argv\[0\]) and executes; returns the exit code.
pub fn execute<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are success, anything else is a
            // parse failure.
            let msg = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{msg}");
                return 2;
            }
            let _ = write!(out, "{msg}");
            return 0;
        }
    };
    match dispatch(cli, out) {
        Ok(()) => 0,
        Err(CliError { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

struct CliError {
    code: i32,
    message: String,
}

fn parse_error(message: impl Into<String>) -> CliError {
    CliError {
        code: 2,
        message: message.into(),
    }
}

fn unknown(message: impl Into<String>) -> CliError {
    CliError {
        code: 3,
        message: message.into(),
    }
}

fn arity(message: impl Into<String>) -> CliError {
    CliError {
        code: 4,
        message: message.into(),
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Info {
            file,
            target,
            format,
        } => cmd_info(&file, &target, format, out),
        Command::Meet { file, vars, format } => cmd_meet(&file, &vars, format, out),
        Command::Decompose {
            file,
            measure,
            predictors,
            target,
            format,
        } => cmd_decompose(&file, &measure, &predictors, &target, format, out),
        Command::Check {
            measure,
            property,
            all,
            trials,
            seed,
            format,
        } => cmd_check(
            measure.as_deref(),
            property.as_deref(),
            all,
            trials,
            seed,
            format,
            out,
        ),
        Command::Corpus { name } => cmd_corpus(name.as_deref(), out),
    }
}

fn load(file: &PathBuf, format: InFormat) -> Result<JointDistribution, CliError> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| parse_error(format!("{}: {e}", file.display())))?;
    let result = match format {
        InFormat::Auto => fileio::from_str_auto(&text),
        InFormat::Json => fileio::from_json_str(&text),
        InFormat::Tsv => fileio::from_tsv_str(&text),
    };
    result.map_err(|e| parse_error(e.to_string()))
}

fn variable(d: &JointDistribution, name: &str) -> Result<RandomVariable, CliError> {
    d.variable(name).map_err(|e| unknown(e.to_string()))
}

fn w(out: &mut dyn Write, line: String) -> Result<(), CliError> {
    writeln!(out, "{line}").map_err(|e| parse_error(e.to_string()))
}

fn cmd_info(
    file: &PathBuf,
    target: &str,
    format: InFormat,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let d = load(file, format)?;
    let t = variable(&d, target)?;
    let names = d.variable_names().to_vec();
    w(out, format!("variables: {}", names.join(", ")))?;
    w(out, format!("target: {target}"))?;
    for name in &names {
        let v = variable(&d, name)?;
        w(
            out,
            format!("H({name}) = {}", fmt_bits(d.entropy(&v).expect("same support"))),
        )?;
    }
    let others: Vec<&String> = names.iter().filter(|n| n.as_str() != target).collect();
    let mut other_vars = Vec::new();
    for name in &others {
        let v = variable(&d, name)?;
        let mi = d.mutual_information(&v, &t).expect("same support");
        let i0 = zero_error_information(&d, &v, &t).expect("same support");
        w(
            out,
            format!(
                "I({name}:{target}) = {}  I0({name}:{target}) = {}",
                fmt_bits(mi),
                fmt_bits(i0)
            ),
        )?;
        other_vars.push(v);
    }
    if other_vars.len() >= 2 {
        let refs: Vec<&RandomVariable> = other_vars.iter().collect();
        let j = join(&d, &refs).expect("nonempty");
        let label = others
            .iter()
            .map(|s| s.as_str())
            .collect::<Vec<_>>()
            .join("\u{2228}");
        let mi = d.mutual_information(&j, &t).expect("same support");
        let i0 = zero_error_information(&d, &j, &t).expect("same support");
        w(
            out,
            format!(
                "I({label}:{target}) = {}  I0({label}:{target}) = {}",
                fmt_bits(mi),
                fmt_bits(i0)
            ),
        )?;
    }
    Ok(())
}

fn cmd_meet(
    file: &PathBuf,
    vars: &str,
    format: InFormat,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let d = load(file, format)?;
    let names: Vec<&str> = vars.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if names.len() < 2 {
        return Err(arity("meet needs at least two variable names"));
    }
    let mut variables = Vec::new();
    for name in &names {
        variables.push(variable(&d, name)?);
    }
    let refs: Vec<&RandomVariable> = variables.iter().collect();
    let q = meet(&d, &refs).expect("nonempty list over one support");
    w(
        out,
        format!("meet({}): {} components", names.join(","), q.block_count()),
    )?;
    for (name, v) in names.iter().zip(&variables) {
        for b in 0..v.block_count() {
            let row = (0..d.len()).find(|&r| v.block(r) == b).expect("block nonempty");
            w(
                out,
                format!(
                    "  {name}={} -> {}",
                    v.block_labels()[b],
                    q.block_labels()[q.block(row)]
                ),
            )?;
        }
    }
    w(
        out,
        format!(
            "H({}) = {}",
            q.label(),
            fmt_bits(d.entropy(&q).expect("same support"))
        ),
    )?;
    Ok(())
}

#[derive(Serialize)]
struct DecomposeReport {
    measure: String,
    predictors: [String; 2],
    target: String,
    whole: f64,
    redundant: f64,
    unique_1: f64,
    unique_2: f64,
    synergy: f64,
    negative_synergy: bool,
}

impl DecomposeReport {
    fn new(measure: MeasureId, p1: &str, p2: &str, target: &str, r: &PidResult) -> Self {
        DecomposeReport {
            measure: measure.name().to_string(),
            predictors: [p1.to_string(), p2.to_string()],
            target: target.to_string(),
            whole: round_bits(r.whole),
            redundant: round_bits(r.redundant),
            unique_1: round_bits(r.unique_1),
            unique_2: round_bits(r.unique_2),
            synergy: round_bits(r.synergy),
            negative_synergy: r.synergy < -SYNERGY_TOLERANCE,
        }
    }
}

fn cmd_decompose(
    file: &PathBuf,
    measure: &str,
    predictors: &str,
    target: &str,
    format: OutFormat,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let d = load(file, InFormat::Auto)?;
    let m = MeasureId::parse(measure)
        .ok_or_else(|| unknown(format!("unknown measure `{measure}`")))?;
    let names: Vec<&str> = predictors
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if names.len() != 2 {
        return Err(arity(format!(
            "decompose needs exactly two predictors, got {}",
            names.len()
        )));
    }
    let x1 = variable(&d, names[0])?;
    let x2 = variable(&d, names[1])?;
    let t = variable(&d, target)?;
    let r = decompose2(&d, m, &x1, &x2, &t).expect("two predictors over one support");
    let report = DecomposeReport::new(m, names[0], names[1], target, &r);
    match format {
        OutFormat::Json => {
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            w(out, text)?;
        }
        OutFormat::Text => {
            let base = match m {
                MeasureId::Wedge0 => "I0",
                _ => "I",
            };
            w(out, format!("measure = {}", report.measure))?;
            w(
                out,
                format!(
                    "whole: {base}({}\u{2228}{}:{target}) = {}",
                    names[0],
                    names[1],
                    fmt_bits(report.whole)
                ),
            )?;
            w(out, format!("redundant = {}", fmt_bits(report.redundant)))?;
            w(
                out,
                format!("unique({}) = {}", names[0], fmt_bits(report.unique_1)),
            )?;
            w(
                out,
                format!("unique({}) = {}", names[1], fmt_bits(report.unique_2)),
            )?;
            w(out, format!("synergy = {}", fmt_bits(report.synergy)))?;
            w(
                out,
                format!("negative_synergy = {}", report.negative_synergy),
            )?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct CheckReport {
    trials: usize,
    seed: u64,
    generator: String,
    reports: Vec<serde_json::Value>,
}

fn report_json(r: &PropertyReport) -> serde_json::Value {
    let mut value = serde_json::to_value(r).expect("report serializes");
    // Witness comparison values are rounded to reporting precision so the
    // JSON matches the text output; the witness distribution itself stays
    // exact for replay.
    if let Some(cmp) = value
        .pointer_mut("/witness/comparison")
        .and_then(|v| v.as_object_mut())
    {
        for key in ["lhs", "rhs"] {
            if let Some(n) = cmp.get(key).and_then(|v| v.as_f64()) {
                cmp.insert(key.to_string(), serde_json::json!(round_bits(n)));
            }
        }
    }
    value
}

fn write_check_reports(
    reports: &[PropertyReport],
    trials: usize,
    seed: u64,
    format: OutFormat,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match format {
        OutFormat::Json => {
            let wrapped = CheckReport {
                trials,
                seed,
                generator: gen::generator_description(),
                reports: reports.iter().map(report_json).collect(),
            };
            let text = serde_json::to_string_pretty(&wrapped).expect("report serializes");
            w(out, text)?;
        }
        OutFormat::Text => {
            w(out, format!("# trials={trials} seed={seed}"))?;
            w(out, format!("# {}", gen::generator_description()))?;
            w(
                out,
                format!(
                    "{:<9} {:<8} {:<16} {:>6}  witness",
                    "property", "measure", "verdict", "trials"
                ),
            )?;
            for r in reports {
                let witness = match &r.witness {
                    None => "-".to_string(),
                    Some(wit) => format!(
                        "{} (trial {}: lhs={} rhs={})",
                        wit.instance.name,
                        wit.trial,
                        fmt_bits(wit.comparison.lhs),
                        fmt_bits(wit.comparison.rhs)
                    ),
                };
                w(
                    out,
                    format!(
                        "{:<9} {:<8} {:<16} {:>6}  {witness}",
                        r.property.name(),
                        r.measure.name(),
                        r.verdict.to_string(),
                        r.trials
                    ),
                )?;
            }
        }
    }
    Ok(())
}

fn cmd_check(
    measure: Option<&str>,
    property: Option<&str>,
    all: bool,
    trials: usize,
    seed: u64,
    format: OutFormat,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    if all {
        let reports = propcheck::table1(trials, seed);
        return write_check_reports(&reports, trials, seed, format, out);
    }
    let measure = measure.ok_or_else(|| parse_error("--measure is required unless --all"))?;
    let property = property.ok_or_else(|| parse_error("--property is required unless --all"))?;
    let m = MeasureId::parse(measure)
        .ok_or_else(|| unknown(format!("unknown measure `{measure}`")))?;
    let p = PropertyId::parse(property)
        .ok_or_else(|| unknown(format!("unknown property `{property}`")))?;
    let report = propcheck::search_counterexample(p, m, seed, trials);
    write_check_reports(&[report], trials, seed, format, out)
}

fn cmd_corpus(name: Option<&str>, out: &mut dyn Write) -> Result<(), CliError> {
    match name {
        None => {
            for n in crate::corpus::NAMES {
                w(out, n.to_string())?;
            }
            Ok(())
        }
        Some(n) => {
            let d = crate::corpus::by_name(n)
                .ok_or_else(|| unknown(format!("unknown corpus distribution `{n}`")))?;
            let text = fileio::to_canonical_json(&d);
            write!(out, "{text}").map_err(|e| parse_error(e.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_cli(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["gkpid"];
        full.extend_from_slice(args);
        let code = execute(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn corpus_file(name: &str) -> tempdir::TempFile {
        tempdir::write_corpus(name)
    }

    // Minimal temp-file helper; std-only.
    mod tempdir {
        use std::path::PathBuf;

        pub struct TempFile {
            pub path: PathBuf,
        }

        impl Drop for TempFile {
            fn drop(&mut self) {
                let _ = std::fs::remove_file(&self.path);
            }
        }

        pub fn write_corpus(name: &str) -> TempFile {
            let d = crate::corpus::by_name(name).unwrap();
            let text = crate::fileio::to_canonical_json(&d);
            let path = std::env::temp_dir().join(format!(
                "gkpid-cli-test-{}-{}.json",
                name,
                std::process::id()
            ));
            std::fs::write(&path, text).unwrap();
            TempFile { path }
        }
    }

    #[test]
    fn corpus_lists_names() {
        let (code, out, _) = run_cli(&["corpus"]);
        assert_eq!(code, 0);
        assert_eq!(out, "rdn\nunq\nrdnxor\nimperfectrdn\nsubtle\n");
    }

    #[test]
    fn corpus_emits_imperfect_rdn() {
        let (code, out, _) = run_cli(&["corpus", "imperfectrdn"]);
        assert_eq!(code, 0);
        assert!(out.contains("\"p\": 0.499"));
        assert!(out.contains("\"p\": 0.001"));
        assert!(out.contains("\"p\": 0.5"));
    }

    #[test]
    fn corpus_unknown_name_is_exit_3() {
        let (code, _, err) = run_cli(&["corpus", "nope"]);
        assert_eq!(code, 3);
        assert!(err.contains("unknown"));
    }

    #[test]
    fn info_reports_unq_quantities() {
        let f = corpus_file("unq");
        let (code, out, _) = run_cli(&["info", f.path.to_str().unwrap(), "--target", "Y"]);
        assert_eq!(code, 0);
        assert!(out.contains("I(X1:Y) = 1.000000"));
        assert!(out.contains("I(X2:Y) = 1.000000"));
        assert!(out.contains("I(X1\u{2228}X2:Y) = 2.000000"));
    }

    #[test]
    fn info_subtle_pairwise_against_x2() {
        let f = corpus_file("subtle");
        let (code, out, _) = run_cli(&["info", f.path.to_str().unwrap(), "--target", "X2"]);
        assert_eq!(code, 0);
        assert!(out.contains("I(X1:X2) = 0.251629"));
    }

    #[test]
    fn info_unknown_target_is_exit_3() {
        let f = corpus_file("unq");
        let (code, _, _) = run_cli(&["info", f.path.to_str().unwrap(), "--target", "Z"]);
        assert_eq!(code, 3);
    }

    #[test]
    fn info_rejects_unnormalizable_file() {
        let path = std::env::temp_dir().join(format!("gkpid-halfmass-{}.json", std::process::id()));
        std::fs::write(
            &path,
            r#"{"variables":["A"],"pmf":[{"state":["a"],"p":0.5}]}"#,
        )
        .unwrap();
        let (code, _, err) = run_cli(&["info", path.to_str().unwrap(), "--target", "A"]);
        std::fs::remove_file(&path).unwrap();
        assert_eq!(code, 2);
        assert!(err.contains("mass not normalizable"));
    }

    #[test]
    fn meet_rdnxor_extracts_two_components() {
        let f = corpus_file("rdnxor");
        let (code, out, _) = run_cli(&[
            "meet",
            f.path.to_str().unwrap(),
            "--vars",
            "X1,X2",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("2 components"));
        assert!(out.contains("H(X1\u{2227}X2) = 1.000000"));
    }

    #[test]
    fn meet_imperfect_rdn_single_component() {
        let f = corpus_file("imperfectrdn");
        let (code, out, _) = run_cli(&[
            "meet",
            f.path.to_str().unwrap(),
            "--vars",
            "X1,X2",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("1 components"));
        assert!(out.contains("H(X1\u{2227}X2) = 0.000000"));
    }

    #[test]
    fn meet_idempotent_on_repeated_name() {
        let f = corpus_file("unq");
        let (code, out, _) = run_cli(&["meet", f.path.to_str().unwrap(), "--vars", "X1,X1"]);
        assert_eq!(code, 0);
        assert!(out.contains("2 components"));
    }

    #[test]
    fn meet_single_name_is_exit_4() {
        let f = corpus_file("unq");
        let (code, _, _) = run_cli(&["meet", f.path.to_str().unwrap(), "--vars", "X1"]);
        assert_eq!(code, 4);
    }

    #[test]
    fn decompose_rdnxor_wedge() {
        let f = corpus_file("rdnxor");
        let (code, out, _) = run_cli(&[
            "decompose",
            f.path.to_str().unwrap(),
            "--measure",
            "iwedge",
            "--predictors",
            "X1,X2",
            "--target",
            "Y",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("redundant = 1.000000"));
        assert!(out.contains("unique(X1) = 0.000000"));
        assert!(out.contains("unique(X2) = 0.000000"));
        assert!(out.contains("synergy = 1.000000"));
        assert!(out.contains("negative_synergy = false"));
    }

    #[test]
    fn decompose_subtle_wedge_reports_negative_synergy() {
        let f = corpus_file("subtle");
        let (code, out, _) = run_cli(&[
            "decompose",
            f.path.to_str().unwrap(),
            "--measure",
            "iwedge",
            "--predictors",
            "X1,X2",
            "--target",
            "Y",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("synergy = -0.251629"));
        assert!(out.contains("negative_synergy = true"));
    }

    #[test]
    fn decompose_json_matches_text_values() {
        let f = corpus_file("unq");
        let (code, out, _) = run_cli(&[
            "decompose",
            f.path.to_str().unwrap(),
            "--measure",
            "imin",
            "--predictors",
            "X1,X2",
            "--target",
            "Y",
            "--format",
            "json",
        ]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["redundant"], serde_json::json!(1.0));
        assert_eq!(v["synergy"], serde_json::json!(1.0));
        assert_eq!(v["negative_synergy"], serde_json::json!(false));
    }

    #[test]
    fn decompose_wrong_predictor_count_is_exit_4() {
        let f = corpus_file("unq");
        let (code, _, _) = run_cli(&[
            "decompose",
            f.path.to_str().unwrap(),
            "--measure",
            "imin",
            "--predictors",
            "X1",
            "--target",
            "Y",
        ]);
        assert_eq!(code, 4);
    }

    #[test]
    fn decompose_unknown_measure_is_exit_3() {
        let f = corpus_file("unq");
        let (code, _, _) = run_cli(&[
            "decompose",
            f.path.to_str().unwrap(),
            "--measure",
            "imax",
            "--predictors",
            "X1,X2",
            "--target",
            "Y",
        ]);
        assert_eq!(code, 3);
    }

    #[test]
    fn check_single_cell_refuted_exit_0() {
        let (code, out, _) = run_cli(&[
            "check",
            "--measure",
            "iwedge",
            "--property",
            "lp0",
            "--trials",
            "50",
            "--seed",
            "7",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("REFUTED"));
        assert!(out.contains("corpus:imperfectrdn"));
    }

    #[test]
    fn check_tm_wedge_holds() {
        let (code, out, _) = run_cli(&[
            "check",
            "--measure",
            "iwedge",
            "--property",
            "tm",
            "--trials",
            "200",
            "--seed",
            "7",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("HOLDS_ON_TRIALS"));
    }

    #[test]
    fn check_unknown_property_is_exit_3() {
        let (code, _, _) = run_cli(&["check", "--measure", "imin", "--property", "zz"]);
        assert_eq!(code, 3);
    }

    #[test]
    fn tsv_input_accepted() {
        let path = std::env::temp_dir().join(format!("gkpid-tsv-{}.tsv", std::process::id()));
        std::fs::write(&path, "X1\tX2\tY\tp\nr\tr\tr\t0.5\nR\tR\tR\t0.5\n").unwrap();
        let (code, out, _) = run_cli(&[
            "info",
            path.to_str().unwrap(),
            "--target",
            "Y",
            "--format",
            "tsv",
        ]);
        std::fs::remove_file(&path).unwrap();
        assert_eq!(code, 0);
        assert!(out.contains("I(X1:Y) = 1.000000"));
    }
}

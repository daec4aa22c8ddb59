//! `confmodel`: extract configuration models from device configurations,
//! generate commands from models, and check the round trip.

use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use confmodel::extract::corpus_stats;
use confmodel::generate::model_vendor;
use confmodel::generate::{generate_with, Templates};
use confmodel::{
    builtin_metamodel, model_stats, validate_model, DeviceExtraction, DeviceModel, MappingTable, Metamodel, ModelStats,
    Pipeline, PipelineError, SyntaxError, Vendor,
};

#[derive(Debug, Parser)]
#[command(name = "confmodel", version, about = "Network device configuration models")]
struct Cli {
    /// Write the result here instead of standard output.
    #[arg(short, long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Extract a model from each configuration file.
    Extract(ConfigArgs),
    /// Generate configuration commands from a model file.
    Generate {
        /// Template set; defaults to the vendor of the model's groups.
        #[arg(long)]
        vendor: Option<Vendor>,
        /// Print the configuration as `show running-config` would.
        #[arg(long)]
        config_text: bool,
        model: PathBuf,
    },
    /// Extract, generate, re-parse and re-extract each configuration file.
    Roundtrip(ConfigArgs),
    /// Validate a model file against the metamodel.
    Check { model: PathBuf },
    /// Slot, item kind, group value and link counts for a model file or
    /// the output of a multi-file `extract`.
    Stats { model: PathBuf },
    /// Print the parse tree of each configuration file.
    DumpTree {
        #[arg(long)]
        vendor: Vendor,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct ConfigArgs {
    #[arg(long)]
    vendor: Vendor,
    /// Mapping table (TSV) replacing the builtin one.
    #[arg(long, value_name = "TSV")]
    mapping: Option<PathBuf>,
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
}

/// A failed command: exit status and what has already been reported.
#[derive(Debug)]
struct Failure(u8);

const FAILED: Failure = Failure(1);
const USAGE: Failure = Failure(2);

fn diag(msg: impl Display) {
    eprintln!("confmodel: {msg}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli.command, &mut out);
    let code = match result {
        Ok(()) => 0,
        Err(Failure(code)) => code,
    };
    if !out.is_empty() {
        if let Err(code) = emit(cli.output.as_deref(), &out) {
            return ExitCode::from(code.0);
        }
    }
    ExitCode::from(code)
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    let written = match path {
        Some(p) => std::fs::write(p, text).map_err(|e| (p.display().to_string(), e)),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| ("standard output".to_owned(), e)),
    };
    written.map_err(|(target, e)| {
        diag(format_args!("cannot write {target}: {e}"));
        USAGE
    })
}

/// Runs one subcommand, appending its payload to `out`. Payload produced
/// before a partial failure is still written.
fn run(command: Command, out: &mut String) -> Result<(), Failure> {
    let mm = builtin_metamodel();
    match command {
        Command::Extract(args) => extract(&pipeline(&args, mm)?, &args, out),
        Command::Roundtrip(args) => roundtrip(&pipeline(&args, mm)?, &args, out),
        Command::Generate { vendor, config_text, model } => {
            let m = read_model(&model, mm)?;
            let vendor = vendor.or_else(|| model_vendor(&m, mm)).unwrap_or(Vendor::Cisco);
            let script = generate_with(&m, mm, &Templates::builtin(vendor, mm)).map_err(|e| {
                diag(format_args!("{}: {e}", model.display()));
                FAILED
            })?;
            out.push_str(&if config_text { script.to_config_text() } else { script.to_text() });
            Ok(())
        }
        Command::Check { model } => {
            let m = read_model(&model, mm)?;
            let violations = validate_model(&m, mm);
            for v in &violations {
                diag(format_args!("{}: {v}", model.display()));
            }
            if violations.is_empty() {
                out.push_str("OK\n");
                Ok(())
            } else {
                Err(FAILED)
            }
        }
        Command::Stats { model } => stats(&model, mm, out),
        Command::DumpTree { vendor, inputs } => {
            let p = Pipeline::builtin();
            let mut status = Ok(());
            for path in &inputs {
                let tree = read_config(path).and_then(|text| p.parse_text(&text, vendor).map_err(|e| report(path, &e)));
                match tree {
                    Ok(tree) => {
                        if inputs.len() > 1 {
                            out.push_str(&format!("== {} ==\n", path.display()));
                        }
                        out.push_str(&tree.dump());
                    }
                    Err(f) => status = worse(status, f),
                }
            }
            status
        }
    }
}

fn pipeline(args: &ConfigArgs, mm: &'static Metamodel) -> Result<Pipeline, Failure> {
    let p = Pipeline::builtin();
    let Some(path) = &args.mapping else { return Ok(p) };
    match MappingTable::load(path, args.vendor, mm) {
        Ok(table) => Ok(p.with_mapping(table)),
        Err(confmodel::mapping::MappingError::Rows(rows)) => {
            for r in rows {
                diag(format_args!("{}:{}: {}", path.display(), r.line, r.kind));
            }
            Err(USAGE)
        }
        Err(e) => {
            diag(e);
            Err(USAGE)
        }
    }
}

fn read_config(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| {
        diag(format_args!("cannot read {}: {e}", path.display()));
        USAGE
    })
}

/// Prints `e` as `path:line:column: message` and classifies it.
fn report(path: &Path, e: &PipelineError) -> Failure {
    match e {
        PipelineError::Io { .. } => {
            diag(e);
            USAGE
        }
        PipelineError::Lex(inner) => {
            diag(format_args!("{}:{inner}", path.display()));
            FAILED
        }
        PipelineError::Parse(inner) => {
            diag(format_args!("{}:{inner}", path.display()));
            FAILED
        }
        PipelineError::Extract(inner) => {
            if e.position().is_some() {
                diag(format_args!("{}:{inner}", path.display()));
            } else {
                diag(format_args!("{}: {inner}", path.display()));
            }
            FAILED
        }
    }
}

fn worse(a: Result<(), Failure>, b: Failure) -> Result<(), Failure> {
    match a {
        Err(Failure(c)) if c >= b.0 => Err(Failure(c)),
        _ => Err(b),
    }
}

#[derive(Serialize)]
struct ExtractEntry<'a> {
    device: &'a str,
    source: &'a Path,
    model: DeviceModel,
}

fn extract(p: &Pipeline, args: &ConfigArgs, out: &mut String) -> Result<(), Failure> {
    let inputs: Vec<(PathBuf, Vendor)> = args.inputs.iter().map(|i| (i.clone(), args.vendor)).collect();
    let results = p.extract_multi(&inputs);
    let mut status = Ok(());
    let mut done: Vec<DeviceExtraction> = Vec::new();
    for ((path, _), r) in inputs.iter().zip(results) {
        match r {
            Ok(d) => done.push(d),
            Err(e) => status = worse(status, report(path, &e)),
        }
    }
    if inputs.len() == 1 {
        if let Some(d) = done.first() {
            out.push_str(&d.model.to_json());
        }
    } else {
        let entries: Vec<ExtractEntry> = done
            .iter()
            .map(|d| ExtractEntry { device: &d.device, source: &d.source, model: d.model.normalized() })
            .collect();
        out.push_str(&serde_json::to_string_pretty(&entries).expect("entries serialize"));
        out.push('\n');
    }
    status
}

fn roundtrip(p: &Pipeline, args: &ConfigArgs, out: &mut String) -> Result<(), Failure> {
    let outcomes: Vec<Result<Vec<String>, Failure>> = std::thread::scope(|s| {
        let handles: Vec<_> =
            args.inputs.iter().map(|path| s.spawn(move || roundtrip_one(p, path, args.vendor))).collect();
        handles.into_iter().map(|h| h.join().expect("round trip thread panicked")).collect()
    });
    let mut status = Ok(());
    for (path, outcome) in args.inputs.iter().zip(outcomes) {
        match outcome {
            Ok(diff) if diff.is_empty() => {
                if args.inputs.len() == 1 {
                    out.push_str("OK\n");
                } else {
                    out.push_str(&format!("{}: OK\n", path.display()));
                }
            }
            Ok(diff) => {
                for d in diff {
                    diag(format_args!("{}: {d}", path.display()));
                }
                status = worse(status, FAILED);
            }
            Err(f) => status = worse(status, f),
        }
    }
    status
}

/// Differences found by the round trip of one file; empty when it holds.
fn roundtrip_one(p: &Pipeline, path: &Path, vendor: Vendor) -> Result<Vec<String>, Failure> {
    use confmodel::generate::RoundTripError;

    let text = read_config(path)?;
    match p.roundtrip_text(&text, vendor) {
        Ok(rt) => Ok(rt.diff),
        Err(RoundTripError::Source(SyntaxError::Lex(e))) => Err(report(path, &PipelineError::Lex(e))),
        Err(RoundTripError::Source(SyntaxError::Parse(e))) => Err(report(path, &PipelineError::Parse(e))),
        Err(RoundTripError::Source(e @ SyntaxError::Io { .. })) => {
            diag(e);
            Err(USAGE)
        }
        Err(RoundTripError::Extract(e)) => Err(report(path, &PipelineError::Extract(e))),
        Err(RoundTripError::Reparse { error, printed }) => {
            diag(format_args!("{}: generated configuration does not parse: {error}", path.display()));
            eprintln!("{printed}");
            Err(FAILED)
        }
        Err(e) => {
            diag(format_args!("{}: {e}", path.display()));
            Err(FAILED)
        }
    }
}

fn read_model(path: &Path, mm: &Metamodel) -> Result<DeviceModel, Failure> {
    let text = read_config(path)?;
    DeviceModel::from_json(&text, mm).map_err(|e| {
        diag(format_args!("{}:{e}", path.display()));
        FAILED
    })
}

#[derive(Deserialize)]
struct StoredEntry {
    device: String,
    model: DeviceModel,
}

#[derive(Serialize)]
struct DeviceStats {
    device: String,
    stats: ModelStats,
}

#[derive(Serialize)]
struct CorpusStats {
    devices: Vec<DeviceStats>,
    total: ModelStats,
}

fn stats(path: &Path, mm: &Metamodel, out: &mut String) -> Result<(), Failure> {
    let text = read_config(path)?;
    let json = if text.trim_start().starts_with('[') {
        let entries: Vec<StoredEntry> = serde_json::from_str(&text).map_err(|e| {
            diag(format_args!("{}:{}:{}: {e}", path.display(), e.line(), e.column()));
            FAILED
        })?;
        if let Some((entry, gv)) = entries
            .iter()
            .find_map(|en| en.model.group_values.iter().find(|g| mm.group(&g.group).is_none()).map(|g| (en, g)))
        {
            diag(format_args!("{}: {}: unknown specification item group '{}'", path.display(), entry.device, gv.group));
            return Err(FAILED);
        }
        let devices = entries
            .iter()
            .map(|en| DeviceStats { device: en.device.clone(), stats: model_stats(&en.model, mm) })
            .collect();
        let total = corpus_stats(entries.iter().map(|en| &en.model), mm);
        serde_json::to_string_pretty(&CorpusStats { devices, total })
    } else {
        let m = read_model(path, mm)?;
        serde_json::to_string_pretty(&model_stats(&m, mm))
    };
    out.push_str(&json.expect("stats serialize"));
    out.push('\n');
    Ok(())
}

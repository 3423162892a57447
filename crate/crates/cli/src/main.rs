use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use qpair_cli::campaigns::{run_verify, Mode, Tag};
use qpair_cli::codec::{parse_field_arg, InputError};
use qpair_cli::commands::{build, decompose, recover, DecomposeMode, Output};
use qpair_cli::report::EXIT_INPUT_ERROR;
use serde_json::Value;

#[derive(Parser)]
#[command(name = "qp", version, about = "Quadratic pairs: constructions, decompositions and verification campaigns")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a structure document and print its canonical data.
    Build {
        file: PathBuf,
        /// Tower used when the document has no `field` entry.
        #[arg(long)]
        field: Option<String>,
    },
    /// Rewrite a total decomposition and print the certificate.
    #[command(group(ArgGroup::new("how").args(["orthogonalize", "canonical"])))]
    Decompose {
        file: PathBuf,
        #[arg(long)]
        orthogonalize: bool,
        #[arg(long)]
        canonical: bool,
        #[arg(long)]
        field: Option<String>,
    },
    /// Recover the quadratic form of a pair over a splitting field.
    Recover {
        file: PathBuf,
        #[arg(long)]
        splitting: String,
        #[arg(long)]
        field: Option<String>,
        #[arg(long, default_value_t = 2)]
        bound: usize,
    },
    /// Run a verification campaign.
    #[command(group(ArgGroup::new("mode").required(true).args(["exhaustive", "random", "instances"])))]
    Verify {
        tag: String,
        #[arg(long)]
        field: String,
        /// Parameter ranges, e.g. `dim=2,4` or `degree=4,8;variants=tau`.
        #[arg(long, num_args = 0..=1, default_missing_value = "")]
        exhaustive: Option<String>,
        #[arg(long, num_args = 2, value_names = ["SEED", "COUNT"])]
        random: Option<Vec<u64>>,
        #[arg(long)]
        instances: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        bound: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn read_json(path: &Path) -> Result<Value, InputError> {
    let p = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| InputError::new("", format!("{p}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| InputError::new("", format!("{p}: {e}")))
}

fn field_opt(s: &Option<String>) -> Result<Option<qpair_core::Field>, InputError> {
    s.as_deref().map(parse_field_arg).transpose()
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(s: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn print_output(out: Output) -> i32 {
    emit(&serde_json::to_string_pretty(&out.doc).expect("serializable"));
    emit("\n");
    out.code
}

fn run(cli: Cli) -> Result<i32, InputError> {
    match cli.command {
        Command::Build { file, field } => {
            let f = field_opt(&field)?;
            Ok(print_output(build(&read_json(&file)?, f.as_ref())?))
        }
        Command::Decompose {
            file,
            orthogonalize,
            canonical,
            field,
        } => {
            let f = field_opt(&field)?;
            let mode = if canonical {
                DecomposeMode::Canonical
            } else if orthogonalize {
                DecomposeMode::Orthogonalize
            } else {
                DecomposeMode::Identity
            };
            Ok(print_output(decompose(&read_json(&file)?, f.as_ref(), mode)?))
        }
        Command::Recover {
            file,
            splitting,
            field,
            bound,
        } => {
            let f = field_opt(&field)?;
            let k = parse_field_arg(&splitting).map_err(|e| InputError::new("splitting", e.message))?;
            Ok(print_output(recover(&read_json(&file)?, f.as_ref(), &k, bound)?))
        }
        Command::Verify {
            tag,
            field,
            exhaustive,
            random,
            instances,
            bound,
            format,
        } => {
            let t = Tag::parse(&tag).ok_or_else(|| {
                let names: Vec<&str> = Tag::ALL.iter().map(|t| t.name()).collect();
                InputError::new("tag", format!("unknown tag `{tag}`; expected one of {}", names.join(", ")))
            })?;
            let f = parse_field_arg(&field)?;
            let mode = if let Some(r) = exhaustive {
                Mode::Exhaustive(r)
            } else if let Some(v) = random {
                Mode::Random {
                    seed: v[0],
                    count: v[1] as usize,
                }
            } else {
                let path = instances.expect("clap enforces a mode");
                let doc = read_json(&path)?;
                let list = match doc {
                    Value::Array(v) => v,
                    Value::Object(mut o) => match o.remove("instances") {
                        Some(Value::Array(v)) => v,
                        _ => return Err(InputError::new("instances", "expected an array of instances")),
                    },
                    _ => return Err(InputError::new("", "expected an array of instances")),
                };
                Mode::Instances(list)
            };
            let report = run_verify(t, &f, &mode, bound)?;
            match format {
                Format::Text => emit(&report.render_text()),
                Format::Machine => emit(&report.render_machine()),
            }
            Ok(report.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("qp: input error {e}");
            ExitCode::from(EXIT_INPUT_ERROR as u8)
        }
    }
}

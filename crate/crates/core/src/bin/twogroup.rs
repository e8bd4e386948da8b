use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use twogroup::spec_file::{parse_spec, run_command, Command, CommandKind, Report};
use twogroup::Error;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Sub {
    Validate,
    Nerve,
    Cohomology,
    GroupCohomology,
    E2Page,
    Structural,
}

impl From<Sub> for CommandKind {
    fn from(s: Sub) -> Self {
        match s {
            Sub::Validate => CommandKind::Validate,
            Sub::Nerve => CommandKind::Nerve,
            Sub::Cohomology => CommandKind::Cohomology,
            Sub::GroupCohomology => CommandKind::GroupCohomology,
            Sub::E2Page => CommandKind::E2Page,
            Sub::Structural => CommandKind::Structural,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OnOff {
    On,
    Off,
}

/// Cohomology of finite 2-groups and related arithmetic groups.
///
/// Exit status: 0 success, 1 input error, 2 budget exceeded, 3 internal
/// invariant violation.
#[derive(Parser, Debug)]
#[command(version)]
struct Cli {
    /// Command to run; overrides `run` in the spec file's [command] block.
    command: Sub,
    /// Spec file (`-` reads standard input).
    spec: PathBuf,
    /// Coefficients: Z, Q, or GF(p) / Fp.
    #[arg(long)]
    coeff: Option<String>,
    #[arg(long)]
    max_degree: Option<usize>,
    /// Largest number of simplices materialized at one level.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, value_enum)]
    normalized: Option<OnOff>,
    #[arg(long)]
    threads: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn execute(cli: &Cli) -> Result<Report, Error> {
    let text = if cli.spec.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(&cli.spec)
    }
    .map_err(|e| Error::Parse { line: 0, message: format!("{}: {e}", cli.spec.display()) })?;
    let spec = parse_spec(&text)?;
    let kind = CommandKind::from(cli.command);
    let mut cmd = match &spec.command {
        Some(c) if c.kind == kind => c.clone(),
        _ => Command::new(kind),
    };
    let degree_key = if kind == CommandKind::Nerve { "max-level" } else { "max-degree" };
    let overrides = [
        ("coeff", cli.coeff.clone()),
        (degree_key, cli.max_degree.map(|d| d.to_string())),
        ("budget", cli.budget.map(|b| b.to_string())),
        ("normalized", cli.normalized.map(|n| if matches!(n, OnOff::On) { "on" } else { "off" }.to_string())),
    ];
    for (key, value) in overrides {
        if let Some(v) = value {
            cmd.set(key, v);
        }
    }
    run_command(&spec, &cmd)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let outcome = std::panic::catch_unwind(|| execute(&cli));
    let (text, code) = match outcome {
        Ok(Ok(report)) => (report.to_json(), report.exit_code),
        Ok(Err(e)) => {
            let body = serde_json::json!({ "status": "error", "error": e.to_string(), "exit_code": e.exit_code() });
            (serde_json::to_string_pretty(&body).expect("serializable"), e.exit_code())
        }
        Err(_) => (r#"{ "status": "error", "error": "internal failure", "exit_code": 3 }"#.to_string(), 3),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text + "\n") {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => {
            let _ = writeln!(std::io::stdout(), "{text}");
        }
    }
    ExitCode::from(code as u8)
}

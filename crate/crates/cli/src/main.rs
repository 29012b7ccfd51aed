mod commands;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use commands::{Command, CommandError};
use hvcheck_core::Tolerances;
use report::{render_report, Format, RunReport, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ToleranceProfile {
    Default,
    Strict,
}

/// Numerical checks of hidden-variable no-go arguments.
///
/// Exit status: 0 confirmed, 1 refuted, 2 usage error, 3 input error.
#[derive(Debug, Parser)]
#[command(name = "hvcheck", version)]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    #[arg(long, value_enum, default_value = "default", global = true)]
    tolerance_profile: ToleranceProfile,
    /// Record wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code.clamp(0, 255) as u8);
        }
    };
    let tol = match cli.tolerance_profile {
        ToleranceProfile::Default => Tolerances::default(),
        ToleranceProfile::Strict => Tolerances::strict(),
    };
    let start = Instant::now();
    let outcome = cli.command.run(&tol);
    let elapsed_ms = cli.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    let command = cli.command.name().to_string();

    let (report, code) = match outcome {
        Ok(o) => {
            let code = if o.verdict == Verdict::Confirmed { 0 } else { 1 };
            (RunReport { command, verdict: o.verdict, message: None, inputs: o.inputs, result: o.result, elapsed_ms }, code)
        }
        Err(CommandError::Usage(msg)) => {
            eprintln!("error: {msg}");
            (error_report(command, msg, elapsed_ms), 2)
        }
        Err(CommandError::Input(msg)) => {
            eprintln!("error: {msg}");
            (error_report(command, msg, elapsed_ms), 3)
        }
    };
    print!("{}", render_report(&report, cli.format));
    ExitCode::from(code)
}

fn error_report(command: String, msg: String, elapsed_ms: Option<f64>) -> RunReport {
    RunReport {
        command,
        verdict: Verdict::Error,
        message: Some(msg),
        inputs: json!({}),
        result: Value::Null,
        elapsed_ms,
    }
}

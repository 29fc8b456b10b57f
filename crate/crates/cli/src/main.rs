mod commands;
mod job;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use commands::{Report, Settings, FAILURE};
use job::InputError;

/// Total p-differentials, Frobenius lifts and their obstruction classes.
///
/// Exit status: 0 on success, 2 when the answer is negative (no lift,
/// nonzero class, failed comparison), 1 on input errors.
#[derive(Parser, Debug)]
#[command(name = "totdiff", version)]
struct Args {
    /// Job file (TOML) describing the scheme and the command.
    #[arg(long)]
    input: Option<PathBuf>,
    /// One of omega, lift, kappa, di, compare, gm, axioms; overrides the job file.
    #[arg(long)]
    command: Option<String>,
    /// Degree bound for chart splitting searches.
    #[arg(long)]
    degree_bound: Option<u32>,
    /// Truncation window for coboundary solves.
    #[arg(long)]
    window: Option<u32>,
    /// Also write the machine-readable report to this path.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Seed for the randomized property suites.
    #[arg(long)]
    seed: Option<u64>,
    /// Random cases per property suite.
    #[arg(long)]
    samples: Option<usize>,
}

fn execute(args: &Args) -> Result<Report, InputError> {
    let (spec, src) = match &args.input {
        Some(path) => {
            let src = std::fs::read_to_string(path).map_err(|e| InputError::plain(format!("{}: {e}", path.display())))?;
            let spec = job::parse(&src)?;
            (Some(spec), src)
        }
        None => (None, String::new()),
    };
    let command = args
        .command
        .clone()
        .or_else(|| spec.as_ref().and_then(|j| j.command.clone()))
        .ok_or_else(|| InputError::plain("no command given (use --command or `command = ...` in the job file)"))?;
    if !commands::COMMANDS.contains(&command.as_str()) {
        return Err(InputError::plain(format!("unknown command `{command}`; expected one of {}", commands::COMMANDS.join(", "))));
    }
    let opts = spec.as_ref().map(|j| &j.options);
    let set = Settings {
        degree_bound: args.degree_bound.or(opts.and_then(|o| o.degree_bound)),
        window: args.window.or(opts.and_then(|o| o.window)),
    };
    let seed = args.seed.or(opts.and_then(|o| o.seed)).unwrap_or(1);
    let samples = args.samples.or(opts.and_then(|o| o.samples)).unwrap_or(200);
    let (scheme, omega) = match (&spec, command.as_str()) {
        (_, "axioms") => (None, None),
        (Some(j), _) => {
            let s = job::build(j, &src)?;
            let omega = job::global_form(j, &src, &s)?;
            (Some(s), omega)
        }
        (None, _) => (None, None),
    };
    commands::run(&command, scheme.as_ref(), omega, set, seed, samples)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(report) => {
            print!("{}", report.text);
            if let Some(path) = &args.json {
                let body = serde_json::to_string_pretty(&report.json).expect("reports serialize") + "\n";
                if let Err(e) = std::fs::write(path, body) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(FAILURE as u8);
                }
            }
            ExitCode::from(report.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(FAILURE as u8)
        }
    }
}

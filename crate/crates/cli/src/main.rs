use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod report;

use report::{run, Request};

#[derive(Parser)]
#[command(name = "singwb", version, about = "Newton polyhedra, toric resolutions, zeta-functions and Milnor numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Newton data and face-by-face degeneracy report.
    Analyze(Common),
    /// Admissible subdivision and the simultaneous-resolution certificate.
    Resolve(Common),
    /// Milnor-Orlik divisor against the A'Campo zeta-function.
    Zeta(Common),
    /// Milnor number by formula, Newton number and Jacobian ring.
    Mu(Common),
    /// Everything above.
    Verify(Common),
}

#[derive(Args)]
struct Common {
    /// Number of variables.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(2..=3))]
    vars: u8,
    /// Seed for the generic deformation.
    #[arg(long, env = "SINGWB_SEED", default_value_t = 1)]
    seed: u64,
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Read the polynomial from a UTF-8 file.
    #[arg(long, conflicts_with = "expr", required_unless_present = "expr")]
    file: Option<PathBuf>,
    /// Polynomial in z1, z2, z3 (or x, y, z).
    expr: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, common) = match &cli.command {
        Command::Analyze(c) => ("analyze", c),
        Command::Resolve(c) => ("resolve", c),
        Command::Zeta(c) => ("zeta", c),
        Command::Mu(c) => ("mu", c),
        Command::Verify(c) => ("verify", c),
    };
    let text = match (&common.expr, &common.file) {
        (Some(e), _) => e.clone(),
        (None, Some(path)) => match std::fs::read_to_string(path) {
            Ok(s) => s.trim().to_string(),
            Err(e) => {
                eprintln!("singwb: cannot read {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        (None, None) => unreachable!("clap requires one input"),
    };
    let request = Request { command: name.to_string(), polynomial: text, vars: common.vars as usize, seed: common.seed };
    let (report, code) = run(&request);
    let json = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    if let Some(err) = &report.error {
        eprintln!("singwb: {}", err.message);
    }
    match &common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &json) {
                eprintln!("singwb: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{json}"),
    }
    ExitCode::from(code)
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use plate_flow::app::{self, Format, Mode, Overrides};
use plate_flow::{Error, FieldKind};

/// Closed-form and finite-difference free convection past an inclined plate.
#[derive(Debug, Parser)]
#[command(name = "plate-flow", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample one field at the configured times.
    Profile(Common),
    /// Sample one field for each value of a swept parameter.
    Sweep(Common),
    /// Compare the closed form with the Crank-Nicolson solver.
    Verify(Common),
    /// Write the eight published figure datasets and check their trends.
    Figures(Common),
    /// Grid refinement study of the finite-difference solver.
    Convergence(Common),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FieldArg {
    Velocity,
    Temperature,
    Concentration,
}

#[derive(Debug, Args)]
struct Common {
    /// TOML run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[arg(long, value_enum)]
    field: Option<FieldArg>,
    #[arg(long, allow_negative_numbers = true)]
    gr: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    gc: Option<f64>,
    #[arg(long)]
    pr: Option<f64>,
    #[arg(long)]
    sc: Option<f64>,
    /// Plate inclination in degrees, 0 <= alpha < 90.
    #[arg(long = "alpha-deg")]
    alpha_deg: Option<f64>,
    /// Dimensionless time (replaces the configured list).
    #[arg(long)]
    t: Option<f64>,
    /// Finite-difference grid spacing.
    #[arg(long)]
    dy: Option<f64>,
    /// Finite-difference time step.
    #[arg(long)]
    dt: Option<f64>,
}

fn error_record(err: &Error) -> String {
    let mut record = serde_json::json!({
        "error": {
            "kind": err.kind(),
            "message": err.to_string(),
        }
    });
    if let Error::Config { key, .. } = err {
        record["error"]["key"] = serde_json::json!(key);
    }
    record.to_string()
}

fn execute(mode: Mode, args: Common) -> Result<app::RunOutcome, Error> {
    let text = match &args.config {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?,
        None => String::new(),
    };
    let overrides = Overrides {
        mode: Some(mode),
        out: args.out,
        format: args.format.map(|f| match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }),
        field: args.field.map(|f| match f {
            FieldArg::Velocity => FieldKind::Velocity,
            FieldArg::Temperature => FieldKind::Temperature,
            FieldArg::Concentration => FieldKind::Concentration,
        }),
        gr: args.gr,
        gc: args.gc,
        pr: args.pr,
        sc: args.sc,
        alpha_deg: args.alpha_deg,
        t: args.t,
        dy: args.dy,
        dt: args.dt,
    };
    let config = app::parse_config_with(&text, &overrides)?;
    app::run(&config)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mode, args) = match cli.command {
        Command::Profile(a) => (Mode::Profile, a),
        Command::Sweep(a) => (Mode::Sweep, a),
        Command::Verify(a) => (Mode::Verify, a),
        Command::Figures(a) => (Mode::Figures, a),
        Command::Convergence(a) => (Mode::Convergence, a),
    };
    match execute(mode, args) {
        Ok(outcome) => {
            for file in &outcome.files {
                println!("wrote {}", file.display());
            }
            for check in &outcome.checks {
                let verdict = if check.pass { "PASS" } else { "FAIL" };
                println!("{verdict} {}: {}", check.name, check.detail);
            }
            if outcome.all_passed() {
                ExitCode::SUCCESS
            } else {
                eprintln!(
                    "{}",
                    serde_json::json!({
                        "error": {
                            "kind": "verification_failed",
                            "failed": outcome.checks.iter().filter(|c| !c.pass).map(|c| &c.name).collect::<Vec<_>>(),
                        }
                    })
                );
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("{}", error_record(&err));
            ExitCode::from(2)
        }
    }
}

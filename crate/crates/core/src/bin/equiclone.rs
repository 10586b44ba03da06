use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use equiclone::analysis::{self, MAX_CLOSED_COPIES, MAX_SIM_COPIES};
use equiclone::network::{self, NetworkConfig};
use equiclone::optimality;
use equiclone::report::{format_float, Cell, Format, Table};

const DEFAULT_TOL: f64 = 1e-9;
const TOL_ENV: &str = "EQUICLONE_TOL";

/// Phase points used when simulating the N → M maps.
const SIM_GRID: usize = 16;

#[derive(Parser, Debug)]
#[command(name = "equiclone", version, about = "Phase-covariant cloning tables")]
struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv, global = true)]
    format: OutputFormat,
    /// Write the table here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Json => Format::Json,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form and simulated N → M fidelities.
    FidelityTable {
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        #[arg(long, default_value_t = 12)]
        mmax: usize,
    },
    /// Partial-transpose spectrum of the two copies across λ.
    Separability {
        #[arg(long, default_value_t = -0.99, allow_negative_numbers = true)]
        min: f64,
        #[arg(long, default_value_t = 0.99, allow_negative_numbers = true)]
        max: f64,
        #[arg(long, default_value_t = 10_000)]
        steps: usize,
    },
    /// Gate network against the direct cloners.
    NetworkVerify {
        #[arg(long, default_value_t = 128)]
        grid: usize,
    },
    /// Optimal one-to-M fidelity three ways.
    Optimality {
        #[arg(long, default_value_t = 12)]
        mmax: usize,
    },
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<equiclone::Error> for Failure {
    fn from(e: equiclone::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

struct Outcome {
    table: Table,
    passed: bool,
    summary: Option<String>,
}

fn tolerance() -> Result<f64, Failure> {
    match std::env::var(TOL_ENV) {
        Err(_) => Ok(DEFAULT_TOL),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t.is_finite() && t > 0.0 => Ok(t),
            _ => Err(Failure::Usage(format!(
                "{TOL_ENV}={s:?} is not a positive number"
            ))),
        },
    }
}

fn fidelity_table(nmax: usize, mmax: usize, tol: f64) -> Result<Outcome, Failure> {
    if nmax < 1 || nmax >= mmax {
        return Err(Failure::Usage(format!(
            "need 1 ≤ nmax < mmax, got nmax={nmax}, mmax={mmax}"
        )));
    }
    if mmax > MAX_CLOSED_COPIES {
        return Err(Failure::Usage(format!(
            "mmax is capped at {MAX_CLOSED_COPIES}"
        )));
    }
    let mut table = Table::new([
        "n",
        "m",
        "closed_form",
        "simulated",
        "abs_error",
        "asymptotic_limit",
    ]);
    let mut passed = true;
    for n in 1..=nmax {
        let limit = analysis::fidelity_asymptotic(n)?;
        for m in n + 1..=mmax {
            let closed = analysis::fidelity_closed_ntom(n, m)?;
            let (sim, err) = if m <= MAX_SIM_COPIES {
                let r = analysis::simulate_fidelity(n, m, SIM_GRID)?;
                passed &= r.abs_error < tol;
                (Some(r.simulated), Some(r.abs_error))
            } else {
                (None, None)
            };
            table.push(vec![
                n.into(),
                m.into(),
                closed.into(),
                sim.into(),
                err.into(),
                limit.into(),
            ]);
        }
    }
    table.set_meta("command", json!("fidelity-table"));
    table.set_meta("nmax", json!(nmax));
    table.set_meta("mmax", json!(mmax));
    table.set_meta("simulation_cap", json!(MAX_SIM_COPIES));
    table.set_meta("phase_grid", json!(SIM_GRID));
    Ok(Outcome {
        table,
        passed,
        summary: None,
    })
}

fn separability(min: f64, max: f64, steps: usize) -> Result<Outcome, Failure> {
    let sweep =
        analysis::separability_sweep(min, max, steps).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut table = Table::new(["lambda", "e1", "e2", "e3", "e4", "is_ppt", "cell_ppt"]);
    for row in &sweep.rows {
        let s = &row.spectrum;
        let mut cells: Vec<Cell> = vec![s.lambda.into()];
        cells.extend(s.eigenvalues.iter().map(|&e| Cell::from(e)));
        cells.push(s.is_ppt.into());
        cells.push(row.cell_ppt.into());
        table.push(cells);
    }
    let cells = sweep.ppt_cells();
    let window: Vec<serde_json::Value> = cells
        .iter()
        .map(|&(a, b)| {
            json!([
                equiclone::report::float_json(a),
                equiclone::report::float_json(b)
            ])
        })
        .collect();
    let summary = if cells.is_empty() {
        "no PPT cell in range".to_string()
    } else {
        let parts: Vec<String> = cells
            .iter()
            .map(|&(a, b)| format!("[{}, {}]", format_float(a), format_float(b)))
            .collect();
        format!("PPT window: {}", parts.join(" "))
    };
    table.set_meta("command", json!("separability"));
    table.set_meta("min", equiclone::report::float_json(min));
    table.set_meta("max", equiclone::report::float_json(max));
    table.set_meta("steps", json!(steps));
    table.set_meta("ppt_cells", json!(window));
    Ok(Outcome {
        table,
        passed: true,
        summary: Some(summary),
    })
}

fn network_verify(grid: usize, tol: f64) -> Result<Outcome, Failure> {
    if grid < 2 {
        return Err(Failure::Usage("grid must be at least 2".into()));
    }
    let mut table = Table::new([
        "config",
        "equator",
        "lambda",
        "max_deviation",
        "copy_asymmetry",
        "fidelity",
        "fidelity_spread",
        "ok",
    ]);
    let mut passed = true;
    for config in NetworkConfig::ALL {
        let r = network::verify_config(config, grid)?;
        let ok = r.max_deviation < tol && r.copy_asymmetry < tol;
        passed &= ok;
        table.push(vec![
            config.name().into(),
            config.equator().name().into(),
            r.lambda.into(),
            r.max_deviation.into(),
            r.copy_asymmetry.into(),
            r.fidelity_min.into(),
            r.fidelity_spread().into(),
            ok.into(),
        ]);
    }
    table.set_meta("command", json!("network-verify"));
    table.set_meta("grid", json!(grid));
    table.set_meta("tolerance", equiclone::report::float_json(tol));
    Ok(Outcome {
        table,
        passed,
        summary: None,
    })
}

fn optimality_table(mmax: usize, tol: f64) -> Result<Outcome, Failure> {
    if !(2..=MAX_CLOSED_COPIES).contains(&mmax) {
        return Err(Failure::Usage(format!(
            "mmax must lie in 2..={MAX_CLOSED_COPIES}"
        )));
    }
    let mut table = Table::new(["m", "closed_form", "via_a", "via_eta_gram", "agree"]);
    let mut passed = true;
    for m in 2..=mmax {
        let row = optimality::optimality_row(m, MAX_SIM_COPIES)?;
        let agree = row.max_deviation() < tol;
        passed &= agree;
        table.push(vec![
            m.into(),
            row.closed_form.into(),
            row.via_a.into(),
            row.via_eta_gram.into(),
            agree.into(),
        ]);
    }
    table.set_meta("command", json!("optimality"));
    table.set_meta("mmax", json!(mmax));
    table.set_meta("tolerance", equiclone::report::float_json(tol));
    Ok(Outcome {
        table,
        passed,
        summary: None,
    })
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let tol = tolerance()?;
    let outcome = match cli.command {
        Command::FidelityTable { nmax, mmax } => fidelity_table(nmax, mmax, tol)?,
        Command::Separability { min, max, steps } => separability(min, max, steps)?,
        Command::NetworkVerify { grid } => network_verify(grid, tol)?,
        Command::Optimality { mmax } => optimality_table(mmax, tol)?,
    };
    let text = outcome.table.render(cli.format.into());
    match &cli.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Runtime(format!("writing {}: {e}", path.display())))?,
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Runtime(e.to_string()))?,
    }
    if let Some(s) = outcome.summary {
        eprintln!("{s}");
    }
    if !outcome.passed {
        eprintln!("tolerance check failed (tol = {})", format_float(tol));
    }
    Ok(outcome.passed)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

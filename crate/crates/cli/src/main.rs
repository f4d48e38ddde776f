//! `femtolb` command line front end.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 configuration error,
//! 3 infeasible parameters, 4 validation threshold exceeded.

mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::{is_infeasible, load, Failure, Outcome};
use output::{sink, write_series, write_table};

fn run(cli: Cli) -> Outcome<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Runtime(e.to_string()))?;
    }
    match cli.command {
        Command::Analyze(c) => {
            let row = commands::analyze(&load(&c)?)?;
            write_table(sink(c.output.as_deref())?, std::slice::from_ref(&row))?;
            if is_infeasible(&row) {
                let reason = if row.status == "ok" { "service radius outside [D_h, D_max]".into() } else { row.status };
                return Err(Failure::Infeasible(reason));
            }
        }
        Command::Optimize(c) => {
            let row = commands::optimize(&load(&c)?)?;
            write_table(sink(c.output.as_deref())?, std::slice::from_ref(&row))?;
            if is_infeasible(&row) {
                return Err(Failure::Infeasible("outage cap violated at the home radius".into()));
            }
        }
        Command::Simulate(a) => {
            let file = load(&a.common)?;
            eprintln!("simulating {} drops of {}", file.run.drops, file.run.scheme);
            let row = commands::simulate(&file, a.calibrate, a.records.as_deref())?;
            write_table(sink(a.common.output.as_deref())?, std::slice::from_ref(&row))?;
            if is_infeasible(&row) {
                return Err(Failure::Infeasible(row.status));
            }
        }
        Command::Validate(a) => {
            let file = load(&a.common)?;
            let rows = commands::validate(&file, &a.radii)?;
            write_table(sink(a.common.output.as_deref())?, &rows)?;
            let failed: Vec<String> = rows
                .iter()
                .filter(|r| !r.pass)
                .map(|r| format!("{} at d_f = {} ({:.3}%)", r.metric, r.service_radius, 100.0 * r.rel_error))
                .collect();
            if !failed.is_empty() {
                return Err(Failure::Threshold(failed.join(", ")));
            }
        }
        Command::Sweep(a) => {
            let file = load(&a.common)?;
            let rows = commands::sweep(&file, a.axis, &a.values, a.task)?;
            write_table(sink(a.common.output.as_deref())?, &rows)?;
            if let Some(dir) = &a.series {
                write_series(dir, a.axis.name(), &rows)?;
            }
            let bad = rows.iter().filter(|r| is_infeasible(r)).count();
            if bad > 0 {
                return Err(Failure::Infeasible(format!("{bad} of {} sweep points", rows.len())));
            }
        }
        Command::ReportConditions(c) => {
            let file = load(&c)?;
            commands::conditions(&file, &mut sink(c.output.as_deref())?)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("femtolb: {e}");
            ExitCode::from(e.code())
        }
    }
}

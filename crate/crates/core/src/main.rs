use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use liouville_core::cli::{run, Command, Options};

/// Invariant and standard discretizations of u·u_xy − u_x·u_y = u³.
#[derive(Parser, Debug)]
#[command(name = "liouville", version, about)]
struct Args {
    /// key=value configuration file
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// RNG seed (overrides the config)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// output directory (default: config out_dir, else ./out)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Fill one lattice from exact boundary data and write field.csv
    Solve,
    /// Run the three table experiments with both schemes and write table.csv
    ReproduceTable,
    /// Seeded property battery; writes residuals.csv
    InvarianceSuite,
    /// Per-cell defect and global convergence orders; writes order.csv
    Consistency {
        /// comma-separated decreasing steps
        #[arg(long = "h", value_delimiter = ',', default_values_t = [0.04, 0.02, 0.01])]
        h_list: Vec<f64>,
    },
    /// Adler–Startsev exact fields against the four-point equation
    AsCheck,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let mut opts = Options {
        config: args.config,
        seed: args.seed,
        out: args.out,
        h_list: None,
    };
    let cmd = match args.command {
        Cmd::Solve => Command::Solve,
        Cmd::ReproduceTable => Command::ReproduceTable,
        Cmd::InvarianceSuite => Command::InvarianceSuite,
        Cmd::Consistency { h_list } => {
            opts.h_list = Some(h_list);
            Command::Consistency
        }
        Cmd::AsCheck => Command::AsCheck,
    };
    let code = run(cmd, &opts, &mut std::io::stdout().lock());
    ExitCode::from(code as u8)
}

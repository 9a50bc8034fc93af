//! Command implementations behind the `liouville` binary.
//!
//! Every command writes its CSV files into the output directory, prints a
//! short human-readable report and ends standard output with
//! `STATUS <ok|partial|fail> <command> <metrics>`.

pub mod config;

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, ErrorKind, Result};
use crate::experiments::{consistency_study, named_solution, reproduce_table, separable_wave_check, SchemeRun};
use crate::lattice::{GridField, OrthogonalLattice};
use crate::metrics::chi;
use crate::solutions::{make_constant, ExactSolution};
use crate::solver::{boundary_from_solution, solve_bvp};
use crate::suite::{as_exactness, as_scaling, rng, run_invariance_suite};

pub use config::Config;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Partial,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Partial => "partial",
            Status::Fail => "fail",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Partial | Status::Fail => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Solve,
    ReproduceTable,
    InvarianceSuite,
    Consistency,
    AsCheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Solve => "solve",
            Command::ReproduceTable => "reproduce-table",
            Command::InvarianceSuite => "invariance-suite",
            Command::Consistency => "consistency",
            Command::AsCheck => "as-check",
        }
    }
}

/// Command-line options shared by all commands.
#[derive(Debug, Clone, Default)]
pub struct Options {
    pub config: Option<PathBuf>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    /// Step list for `consistency`.
    pub h_list: Option<Vec<f64>>,
}

pub const DEFAULT_H_LIST: [f64; 3] = [0.04, 0.02, 0.01];

/// Runs one command and returns the process exit code: 0 success, 1 usage
/// or configuration error, 2 partial or failed results.
pub fn run(cmd: Command, opts: &Options, stdout: &mut dyn Write) -> i32 {
    let outcome = (|| -> Result<(Status, String)> {
        let mut cfg = match &opts.config {
            Some(p) => Config::load(p)?,
            None => Config::default(),
        };
        if let Some(seed) = opts.seed {
            cfg.seed = seed;
        }
        let out_dir = opts
            .out
            .clone()
            .or_else(|| cfg.out_dir.clone())
            .unwrap_or_else(|| PathBuf::from("out"));
        fs::create_dir_all(&out_dir)?;
        match cmd {
            Command::Solve => cmd_solve(&cfg, &out_dir, stdout),
            Command::ReproduceTable => cmd_reproduce_table(&cfg, &out_dir, stdout),
            Command::InvarianceSuite => cmd_invariance_suite(cfg.seed, &out_dir, stdout),
            Command::Consistency => {
                let hs = opts.h_list.clone().unwrap_or_else(|| DEFAULT_H_LIST.to_vec());
                cmd_consistency(&cfg, &hs, &out_dir, stdout)
            }
            Command::AsCheck => cmd_as_check(cfg.seed, &out_dir, stdout),
        }
    })();
    match outcome {
        Ok((status, metrics)) => {
            let _ = writeln!(stdout, "STATUS {} {} {}", status.as_str(), cmd.name(), metrics);
            status.exit_code()
        }
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::Config | ErrorKind::InvalidArgument | ErrorKind::Io => 1,
                _ => 2,
            };
            eprintln!("error: {e}");
            let _ = writeln!(stdout, "STATUS fail {} error={}", cmd.name(), e.kind());
            code
        }
    }
}

fn fmt_e(v: f64) -> String {
    format!("{v:.6e}")
}

/// Field CSV: `m,n,x,y,u_num,u_exact,abs_err`, m-major. Unfilled cells
/// print `nan`; the oracle columns are empty without an oracle.
pub fn field_csv(field: &GridField, oracle: Option<&ExactSolution>) -> String {
    let mut s = String::from("m,n,x,y,u_num,u_exact,abs_err\n");
    let lat = field.lattice();
    for (m, &x) in lat.xs().iter().enumerate() {
        for (n, &y) in lat.ys().iter().enumerate() {
            let u = field.get(m, n);
            let num = u.map_or_else(|| "nan".to_string(), |v| v.to_string());
            let (ex, err) = match oracle {
                Some(sol) => {
                    let e = sol.eval(x, y);
                    let d = u.map_or(f64::NAN, |v| (v - e).abs());
                    (e.to_string(), d.to_string())
                }
                None => (String::new(), String::new()),
            };
            let _ = writeln!(s, "{m},{n},{x},{y},{num},{ex},{err}");
        }
    }
    s
}

fn cmd_solve(cfg: &Config, out: &Path, stdout: &mut dyn Write) -> Result<(Status, String)> {
    let name = cfg
        .solution
        .as_deref()
        .ok_or_else(|| Error::Config("solve needs a 'solution' key".into()))?;
    let (sol, oracle) = if name == "constant" {
        (make_constant(cfg.value), false)
    } else {
        (named_solution(name, &cfg.params)?, true)
    };
    let lat = OrthogonalLattice::uniform(cfg.x0, cfg.y0, cfg.h, cfg.k, cfg.m, cfg.n)?;
    let bd = boundary_from_solution(&sol, &lat)?;
    let report = solve_bvp(&lat, &bd, cfg.scheme)?;
    let oracle = oracle.then_some(&sol);
    fs::write(out.join("field.csv"), field_csv(&report.field, oracle))?;

    let mut summary = String::new();
    let _ = writeln!(summary, "solution {name}");
    let _ = writeln!(summary, "scheme {}", cfg.scheme);
    let _ = writeln!(
        summary,
        "grid corner=({}, {}) h={} k={} M={} N={}",
        cfg.x0, cfg.y0, cfg.h, cfg.k, cfg.m, cfg.n
    );
    let _ = writeln!(
        summary,
        "cells_computed {} cells_skipped {} failures {} coverage {:.6}",
        report.cells_computed,
        report.cells_skipped,
        report.failures.len(),
        report.coverage()
    );
    let _ = writeln!(summary, "u_range {} {}", fmt_e(report.min_u), fmt_e(report.max_u));
    let mut metrics = format!(
        "coverage={:.6} failures={}",
        report.coverage(),
        report.failures.len()
    );
    if let Some(sol) = oracle {
        let c = chi(&report.field, sol)?;
        let _ = writeln!(
            summary,
            "chi_rms {} chi_relative {} max_abs {}",
            fmt_e(c.rms),
            fmt_e(c.relative),
            fmt_e(c.max_abs)
        );
        let _ = write!(metrics, " chi_rms={} chi_relative={}", fmt_e(c.rms), fmt_e(c.relative));
    }
    for f in report.failures.iter().take(20) {
        let _ = writeln!(summary, "failure ({}, {}) {}: {}", f.m, f.n, f.kind, f.message);
    }
    if report.failures.len() > 20 {
        let _ = writeln!(summary, "... {} more failures", report.failures.len() - 20);
    }
    fs::write(out.join("summary.txt"), &summary)?;
    stdout.write_all(summary.as_bytes())?;
    let status = if report.is_complete() { Status::Ok } else { Status::Partial };
    Ok((status, metrics))
}

fn run_cells(run: &Result<SchemeRun>) -> [String; 5] {
    match run {
        Ok(r) => [
            fmt_e(r.chi.rms),
            fmt_e(r.chi.relative),
            fmt_e(r.chi.max_abs),
            format!("{:.6}", r.coverage()),
            r.report.failures.len().to_string(),
        ],
        Err(e) => [format!("error:{}", e.kind()), String::new(), String::new(), String::new(), String::new()],
    }
}

fn complete(run: &Result<SchemeRun>) -> bool {
    matches!(run, Ok(r) if r.report.is_complete())
}

fn cmd_reproduce_table(cfg: &Config, out: &Path, stdout: &mut dyn Write) -> Result<(Status, String)> {
    let rows = reproduce_table(&cfg.params, cfg.swap_captions)?;
    let mut csv = String::from("solution,grid,scheme,chi_rms,chi_relative,max_abs,coverage,failures\n");
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{:<4} {:<28} {:>13} {:>13} {:>13} {:>13} {:>9} {:>9}",
        "sol", "grid", "inv chi_rms", "inv chi_rel", "std chi_rms", "std chi_rel", "inv cov", "std cov"
    );
    let mut metrics = Vec::new();
    let mut all_complete = true;
    for row in &rows {
        let e = &row.experiment;
        let grid = e.grid_label();
        for (label, run) in [("invariant", &row.invariant), ("standard", &row.standard)] {
            let c = run_cells(run);
            let _ = writeln!(csv, "{},{},{},{}", e.solution.name(), grid, label, c.join(","));
        }
        let (ci, cs) = (run_cells(&row.invariant), run_cells(&row.standard));
        let _ = writeln!(
            text,
            "{:<4} {:<28} {:>13} {:>13} {:>13} {:>13} {:>9} {:>9}",
            e.solution.name(),
            grid,
            ci[0],
            ci[1],
            cs[0],
            cs[1],
            ci[3],
            cs[3]
        );
        all_complete &= complete(&row.invariant) && complete(&row.standard);
        if let (Ok(i), Ok(s)) = (&row.invariant, &row.standard) {
            metrics.push(format!("{}_ratio={}", e.solution.name(), fmt_e(s.chi.rms / i.chi.rms)));
        }
    }
    fs::write(out.join("table.csv"), &csv)?;
    stdout.write_all(text.as_bytes())?;
    let status = if all_complete { Status::Ok } else { Status::Partial };
    Ok((status, metrics.join(" ")))
}

fn cmd_invariance_suite(seed: u64, out: &Path, stdout: &mut dyn Write) -> Result<(Status, String)> {
    let cats = run_invariance_suite(seed)?;
    let mut csv = String::from("category,value,tolerance,must_fail,samples,marker\n");
    let mut failed = 0;
    for c in &cats {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{}",
            c.name,
            fmt_e(c.value),
            fmt_e(c.tolerance),
            c.must_fail,
            c.samples,
            c.marker()
        );
        writeln!(
            stdout,
            "{:<24} {:>13} {} {:>9}  {}",
            c.name,
            fmt_e(c.value),
            if c.must_fail { ">=" } else { "<=" },
            fmt_e(c.tolerance),
            c.marker()
        )?;
        if !c.pass() {
            failed += 1;
        }
    }
    fs::write(out.join("residuals.csv"), &csv)?;
    let status = if failed == 0 { Status::Ok } else { Status::Fail };
    Ok((status, format!("seed={seed} categories={} failed={failed}", cats.len())))
}

fn cmd_consistency(cfg: &Config, hs: &[f64], out: &Path, stdout: &mut dyn Write) -> Result<(Status, String)> {
    let name = cfg.solution.as_deref().unwrap_or("s2");
    if name == "constant" {
        return Err(Error::Config("consistency needs an exact solution".into()));
    }
    let sol = named_solution(name, &cfg.params)?;
    // the default corner is the s₂ experiment's; square region of side 0.48
    let (x0, y0) = if cfg.solution.is_some() { (cfg.x0, cfg.y0) } else { (-1.5, -1.0) };
    let r = consistency_study(&sol, x0, y0, 0.48, hs)?;
    let (jgap, wave) = separable_wave_check(hs[hs.len() - 1], 10)?;
    let mut csv = String::from("h,standard_defect,invariant_defect,standard_chi_rms,invariant_chi_rms\n");
    for i in 0..hs.len() {
        let _ = writeln!(
            csv,
            "{},{},{},{},{}",
            hs[i], r.standard_defects[i], r.invariant_defects[i], r.standard_chi[i], r.invariant_chi[i]
        );
    }
    let _ = writeln!(
        csv,
        "order,{},{},{},{}",
        r.standard_defect_order, r.invariant_defect_order, r.standard_global_order, r.invariant_global_order
    );
    fs::write(out.join("order.csv"), &csv)?;
    stdout.write_all(csv.as_bytes())?;
    writeln!(stdout, "separable J2-J1 relative {} wave defect {}", fmt_e(jgap), fmt_e(wave))?;
    Ok((
        Status::Ok,
        format!(
            "solution={name} inv_defect_order={:.3} std_defect_order={:.3} std_global_order={:.3} inv_global_order={:.3} wave_defect={}",
            r.invariant_defect_order,
            r.standard_defect_order,
            r.standard_global_order,
            r.invariant_global_order,
            fmt_e(wave)
        ),
    ))
}

fn cmd_as_check(seed: u64, out: &Path, stdout: &mut dyn Write) -> Result<(Status, String)> {
    let mut r = rng(seed);
    let cats = [as_exactness(&mut r)?, as_scaling(&mut r)?];
    let mut csv = String::from("check,value,tolerance,marker\n");
    for c in &cats {
        let _ = writeln!(csv, "{},{},{},{}", c.name, fmt_e(c.value), fmt_e(c.tolerance), c.marker());
        writeln!(stdout, "{:<22} {:>13}  {}", c.name, fmt_e(c.value), c.marker())?;
    }
    fs::write(out.join("as_check.csv"), &csv)?;
    let ok = cats.iter().all(|c| c.pass());
    Ok((
        if ok { Status::Ok } else { Status::Fail },
        format!("seed={seed} max_residual={} min_scaling_violation={}", fmt_e(cats[0].value), fmt_e(cats[1].value)),
    ))
}

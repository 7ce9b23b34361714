//! The `stl` command-line tool.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Parser;

pub mod args;
pub mod commands;
pub mod error;
pub mod figures;
pub mod manifest;

use args::{Cli, Command};
use error::{CliError, CliResult};
use manifest::{manifest_path_for, OutputRecord, RunManifest};

/// Runs the tool and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be >= 1");
            return 2;
        }
        // A pool may already exist when called repeatedly in-process; keep it.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    let rest: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match dispatch(&cli, &rest) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli, rest: &[String]) -> CliResult<i32> {
    if let Command::Replay(r) = &cli.command {
        return replay(&r.manifest);
    }
    let started = Instant::now();
    let run = commands::execute(cli)?;
    let duration_s = started.elapsed().as_secs_f64();
    for a in &run.artifacts {
        match &a.path {
            None => std::io::stdout()
                .write_all(&a.bytes)
                .map_err(|e| CliError::io("<stdout>", e))?,
            Some(p) => write_file(p, &a.bytes)?,
        }
    }
    if let Some(path) = manifest_location(cli, &run) {
        let m = RunManifest {
            command: command_name(&cli.command).into(),
            argv: rest.to_vec(),
            params: serde_json::to_value(cli).expect("arguments serialize"),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            outputs: run.artifacts.iter().map(OutputRecord::of).collect(),
            duration_s,
        };
        write_file(&path, m.to_json().as_bytes())?;
    }
    for n in &run.notes {
        eprintln!("{n}");
    }
    if let Some(f) = &run.failure {
        eprintln!("{f}");
        return Ok(1);
    }
    Ok(0)
}

fn write_file(path: &Path, bytes: &[u8]) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir.display().to_string(), e))?;
    }
    std::fs::write(path, bytes).map_err(|e| CliError::io(path.display().to_string(), e))
}

/// Next to the first file output; figures go in the output directory.
fn manifest_location(cli: &Cli, run: &commands::Run) -> Option<PathBuf> {
    if let Command::Figures(f) = &cli.command {
        return Some(f.out_dir.join(format!("{}.manifest.json", figures::slug(f.fig))));
    }
    run.artifacts.iter().find_map(|a| a.path.as_deref()).map(manifest_path_for)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Throughput(_) => "throughput",
        Command::Simulate(_) => "simulate",
        Command::Compare(_) => "compare",
        Command::OracleCheck(_) => "oracle-check",
        Command::Figures(_) => "figures",
        Command::Replay(_) => "replay",
    }
}

/// Re-executes a manifest in memory and compares digests; nothing is written.
fn replay(path: &Path) -> CliResult<i32> {
    let m = RunManifest::load(path)?;
    let argv = std::iter::once("stl".to_string()).chain(m.argv.iter().cloned());
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError::Manifest(format!("argv does not parse: {e}")))?;
    if matches!(cli.command, Command::Replay(_)) {
        return Err(CliError::Manifest("cannot replay a replay".into()));
    }
    let run = commands::execute(&cli)?;
    let fresh: Vec<OutputRecord> = run.artifacts.iter().map(OutputRecord::of).collect();
    let mut mismatches = 0;
    for want in &m.outputs {
        match fresh.iter().find(|o| o.path == want.path) {
            Some(got) if got.sha256 == want.sha256 => println!("OK {}", want.path),
            Some(got) => {
                mismatches += 1;
                println!("MISMATCH {} (expected {}, got {})", want.path, want.sha256, got.sha256);
            }
            None => {
                mismatches += 1;
                println!("MISMATCH {} (not produced)", want.path);
            }
        }
    }
    for extra in fresh.iter().filter(|o| !m.outputs.iter().any(|w| w.path == o.path)) {
        mismatches += 1;
        println!("MISMATCH {} (not in manifest)", extra.path);
    }
    if mismatches > 0 {
        return Err(CliError::Check(format!("{mismatches} output(s) differ")));
    }
    Ok(0)
}

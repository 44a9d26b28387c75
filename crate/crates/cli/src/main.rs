//! `holoq <command> --config <file> [--out <dir>] [--seed <u64>] [--threads <n>]`
//!
//! Exit codes: 0 success, 2 configuration error, 3 physics failure
//! (degeneracy or integration; whatever was computed is still written),
//! 1 I/O failure.

use clap::{Parser, Subcommand};
use holoq_cli::commands::{self, Failure, Outcome};
use holoq_cli::config;
use holoq_cli::output::RunDir;
use serde_json::{json, Map, Value};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

#[derive(Parser)]
#[command(name = "holoq", version, about = "Holonomic pi-SQUID qubit simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Berry curvature of both parity sectors on a (Φ, Q) grid.
    CurvatureMap(Common),
    /// Wilson-loop gate angle over a sweep of the asymmetry η.
    GateAngle(Common),
    /// Time evolution: holonomic gate, discrete Z gate or Landau-Zener sweep.
    Dynamics(Common),
    /// Static offset errors, analytic dephasing and Monte Carlo 1/f noise.
    Noise(Common),
}

#[derive(clap::Args)]
struct Common {
    /// TOML run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides `[output] dir`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Master seed for stochastic commands; overrides the config.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

fn fail(code: u8, msg: &str) -> ExitCode {
    eprintln!("holoq: {msg}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, args) = match &cli.command {
        Command::CurvatureMap(a) => ("curvature-map", a),
        Command::GateAngle(a) => ("gate-angle", a),
        Command::Dynamics(a) => ("dynamics", a),
        Command::Noise(a) => ("noise", a),
    };

    if let Some(n) = args.threads {
        if n == 0 {
            return fail(2, "--threads must be at least 1");
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            return fail(1, &e.to_string());
        }
    }
    let (cfg, raw) = match config::load(&args.config) {
        Ok(c) => c,
        Err(e) => return fail(2, &e),
    };
    let dir = args.out.clone().unwrap_or_else(|| cfg.output.dir.clone());
    let mut out = match RunDir::create(&dir, cfg.output.format) {
        Ok(d) => d,
        Err(e) => return fail(1, &format!("{}: {e}", dir.display())),
    };

    let started = Instant::now();
    let result = match cli.command {
        Command::CurvatureMap(_) => commands::curvature(&cfg, &mut out),
        Command::GateAngle(_) => commands::gate(&cfg, &mut out),
        Command::Dynamics(_) => commands::dynamics(&cfg, &mut out),
        Command::Noise(_) => commands::noise(&cfg, &mut out, args.seed),
    };
    let elapsed = started.elapsed().as_secs_f64();

    let (status, code, results, seed) = match result {
        Ok(Outcome { results, seed, failed_rows: 0 }) => ("ok".to_string(), 0, results, seed),
        Ok(Outcome { results, seed, failed_rows }) => (format!("partial: {failed_rows} rows failed"), 3, results, seed),
        Err(Failure::Config(e)) => return fail(2, &e),
        Err(Failure::Io(e)) => return fail(1, &e),
        Err(Failure::Physics(e)) => (format!("failed: {e}"), 3, Map::new(), None),
    };

    let mut meta = Map::new();
    meta.insert("command".into(), json!(name));
    meta.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    meta.insert("status".into(), json!(status));
    meta.insert("elapsed_seconds".into(), json!(elapsed));
    let unix = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    meta.insert("finished_unix".into(), json!(unix));
    meta.insert("seed".into(), json!(seed.or(args.seed)));
    meta.insert("threads".into(), json!(rayon::current_num_threads()));
    meta.insert("config_path".into(), json!(args.config.display().to_string()));
    meta.insert("config".into(), serde_json::to_value(&cfg).unwrap_or(Value::Null));
    meta.insert("config_toml".into(), json!(raw));
    meta.insert("files".into(), json!(out.files()));
    meta.insert("results".into(), Value::Object(results));
    if let Err(e) = out.write_metadata(&meta) {
        return fail(1, &e);
    }

    if code != 0 {
        return fail(code, &status);
    }
    println!("{name}: wrote {} to {} ({elapsed:.1} s)", out.files().join(", "), dir.display());
    ExitCode::SUCCESS
}

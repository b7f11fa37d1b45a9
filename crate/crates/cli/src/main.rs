use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;
use witting_core::arith::rational_string;
use witting_core::classical::exhaustive_scan;
use witting_core::group::{generate_group, DEFAULT_MAX_ELEMENTS};
use witting_core::measure::{intercept_resend_distribution, joint_distribution};
use witting_core::protocol::{run_session, PolicyMode, Protocol, SessionConfig, SessionStats};
use witting_core::{verify, WittingConfig};

/// Seed used when `--seed` is not given.
const DEFAULT_SEED: u64 = 1;

#[derive(Parser)]
#[command(
    name = "witting",
    version,
    about = "Exact simulator for the 40-state Witting configuration"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dump the 40 states with both numberings
    States,
    /// Dump the 40 orthogonal tetrads
    Bases,
    /// Generate the symmetry group and report its orders
    Group,
    /// Exact joint outcome distribution for a pair of tetrads
    Joint {
        #[arg(long, value_parser = basis_id)]
        alice: usize,
        #[arg(long, value_parser = basis_id)]
        bob: usize,
        /// Tetrad an intercept-resend eavesdropper measures in
        #[arg(long, value_parser = basis_id)]
        eve: Option<usize>,
    },
    /// Run a protocol session
    Simulate {
        #[arg(long)]
        protocol: Protocol,
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        rounds: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_parser = basis_id)]
        eve: Option<usize>,
        /// uniform, agreed, correlated:W or fixed:N
        #[arg(long, default_value = "uniform")]
        policy: PolicyMode,
        /// Write a per-round CSV transcript
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Score all 4^10 non-contextual markings
    ClassicalScan {
        /// Write the maximizing markings as JSON
        #[arg(long)]
        dump_max: Option<PathBuf>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        threads: Option<u64>,
    },
    /// Run the structural self-check; exits 1 on any failure
    Verify,
}

fn basis_id(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(id) if id < 40 => Ok(id),
        _ => Err(format!("'{s}' is not a basis id in 0..40")),
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct JointOutput {
    alice: usize,
    bob: usize,
    eve: Option<usize>,
    matrix: Vec<Vec<String>>,
    mismatch: String,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SimulateOutput {
    protocol: Protocol,
    seed: u64,
    eve: Option<usize>,
    sift_rate: f64,
    match_rate: f64,
    mismatches: usize,
    key_bits_hex: String,
    stats: SessionStats,
}

fn run(cli: Cli) -> Result<ExitCode> {
    let config = WittingConfig::shared();
    match cli.command {
        Command::States => print_json(&config.states())?,
        Command::Bases => print_json(&config.bases())?,
        Command::Group => {
            let group = generate_group(config, DEFAULT_MAX_ELEMENTS)?;
            print_json(&group.orders())?;
        }
        Command::Joint { alice, bob, eve } => {
            let (a, b) = (config.basis(alice), config.basis(bob));
            let joint = match eve {
                Some(e) => intercept_resend_distribution(config, a, b, config.basis(e)),
                None => joint_distribution(config, a, b, true),
            };
            print_json(&JointOutput {
                alice,
                bob,
                eve,
                matrix: joint
                    .p
                    .iter()
                    .map(|row| row.iter().map(rational_string).collect())
                    .collect(),
                mismatch: rational_string(&joint.mismatch()),
            })?;
        }
        Command::Simulate {
            protocol,
            rounds,
            seed,
            eve,
            policy,
            transcript,
        } => {
            let session = SessionConfig::from_seed(rounds as usize, policy, seed, eve);
            let t = run_session(config, protocol, &session)?;
            if let Some(path) = transcript {
                let mut w =
                    csv::Writer::from_path(&path).with_context(|| format!("cannot write {}", path.display()))?;
                for r in &t.rounds {
                    w.serialize(r)?;
                }
                w.flush()?;
            }
            print_json(&SimulateOutput {
                protocol,
                seed,
                eve,
                sift_rate: t.stats.sift_rate,
                match_rate: t.stats.match_rate_within_sifted,
                mismatches: t.stats.mismatches,
                key_bits_hex: t.key_hex(),
                stats: t.stats.clone(),
            })?;
        }
        Command::ClassicalScan { dump_max, threads } => {
            let summary = exhaustive_scan(config, threads.map(|n| n as usize));
            if let Some(path) = dump_max {
                std::fs::write(&path, serde_json::to_string_pretty(&summary.maximizers)? + "\n")
                    .with_context(|| format!("cannot write {}", path.display()))?;
            }
            print_json(&summary)?;
        }
        Command::Verify => {
            let report = verify::run_all(config);
            print_json(&report)?;
            if !report.passed {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    run(cli).unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(1)
    })
}

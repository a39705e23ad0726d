use campedelli_core::campedelli::{build_family, eigenspace_table, family_report, invariant_cubics, FamilyLabel, VerificationReport};
use campedelli_core::scalars::{PrimeField, DEFAULT_PRIMES, Q9};
use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "campedelli", version, about = "Exact checks for numerical Campedelli surfaces with fundamental group of order 9")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification pipeline and write a JSON report.
    Verify {
        /// Family to verify (repeatable; all three by default).
        #[arg(long = "family")]
        families: Vec<FamilyLabel>,
        /// Prime p ≡ 1 (mod 9) for finite-field checks (repeatable).
        #[arg(long = "prime")]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "report.json")]
        out: PathBuf,
        /// Suppress the summary table.
        #[arg(long)]
        quiet: bool,
    },
    /// Print the character decomposition of the degree-d sections.
    Decompose {
        #[arg(long)]
        family: FamilyLabel,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3))]
        degree: u32,
    },
}

/// Configuration errors exit with 2, like argument errors.
fn config_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn print_summary(report: &VerificationReport) {
    println!("family {}", report.family);
    for c in &report.checks {
        let status = match c.status {
            campedelli_core::campedelli::CheckStatus::Pass => "PASS",
            campedelli_core::campedelli::CheckStatus::Fail => "FAIL",
        };
        println!("  {status}  {:<22} {}", c.name, c.paper_ref);
        if status == "FAIL" {
            for w in &c.witnesses {
                println!("        {w}");
            }
        }
    }
    for (k, v) in &report.computed {
        println!("  {k} = {v}");
    }
}

fn verify(families: Vec<FamilyLabel>, primes: Vec<u64>, seed: u64, out: PathBuf, quiet: bool) -> ExitCode {
    let primes = if primes.is_empty() { DEFAULT_PRIMES.to_vec() } else { primes };
    for &p in &primes {
        if PrimeField::new(p).is_err() {
            return config_error(format!("{p} is not a prime congruent to 1 mod 9"));
        }
    }
    let mut families = if families.is_empty() { FamilyLabel::ALL.to_vec() } else { families };
    families.dedup();
    let reports: Vec<VerificationReport> = families.iter().map(|&f| family_report(f, &primes, seed)).collect();
    let json = serde_json::to_string_pretty(&reports).expect("reports serialize");
    if let Err(e) = std::fs::write(&out, json + "\n") {
        return config_error(format!("cannot write {}: {e}", out.display()));
    }
    if !quiet {
        for r in &reports {
            print_summary(r);
        }
        println!("report written to {}", out.display());
    }
    if reports.iter().all(VerificationReport::passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn decompose(label: FamilyLabel, degree: u32) -> ExitCode {
    let run = || -> campedelli_core::Result<()> {
        let family = build_family(label)?;
        println!("family {label}, degree {degree}");
        for (chi, dim) in eigenspace_table(&family, &Q9, degree)? {
            println!("  {chi:<14} {dim}");
        }
        println!("T1 basis:");
        let ring = family.ambient.ring();
        for b in invariant_cubics(&family)?.basis {
            println!("  {}", b.render(&Q9, ring));
        }
        Ok(())
    };
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Verify { families, primes, seed, out, quiet } => verify(families, primes, seed, out, quiet),
        Command::Decompose { family, degree } => decompose(family, degree),
    }
}

//! `cdx`: flag vectors, cd-indices and partition certificates from the
//! command line.
//!
//! Exit status is 0 on success, 1 on a definite negative (a failed check,
//! no cd-index, no certificate) and 2 on bad input.

mod commands;
mod report;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use cdx_core::partition::DEFAULT_BUDGET;
use clap::{Args, Parser, Subcommand};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "cdx",
    version,
    about = "cd-index and partition toolkit for graded posets"
)]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct SearchOpts {
    /// Maximum number of search nodes.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Write the certificate to this file.
    #[arg(long)]
    emit_cert: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check that a poset file describes a bounded graded poset.
    Validate { poset: PathBuf },
    /// Print the flag f-vector (and h-vector with --h).
    Flags {
        poset: PathBuf,
        #[arg(long)]
        h: bool,
    },
    /// Euler characteristic and Eulerian status.
    Euler { poset: PathBuf },
    /// The cd-index of an Eulerian poset.
    Cd { poset: PathBuf },
    /// The cd-index of the modified flag vector of a semi-Eulerian poset.
    Semicd { poset: PathBuf },
    /// Check every interval for the Eulerian property.
    CheckEulerian { poset: PathBuf },
    /// Verify an S-partition certificate.
    CheckSpart { poset: PathBuf, cert: PathBuf },
    /// Verify an SE-partition certificate.
    CheckSepart { poset: PathBuf, cert: PathBuf },
    /// Search for an S-partition certificate.
    SearchSpart {
        poset: PathBuf,
        #[command(flatten)]
        opts: SearchOpts,
    },
    /// Search for an SE-partition certificate.
    SearchSepart {
        poset: PathBuf,
        #[command(flatten)]
        opts: SearchOpts,
    },
    /// The cd-index summed from a certificate's contributions.
    CdRecursive { poset: PathBuf, cert: PathBuf },
    /// Per-coatom contribution table of a certificate.
    Contributions { poset: PathBuf, cert: PathBuf },
    /// Generate a fixture poset.
    Gen {
        family: String,
        params: Vec<usize>,
        /// Write the poset here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the fixture's transcribed certificate here.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Build an S-certificate from a facet order.
    ConvertShelling {
        poset: PathBuf,
        #[arg(required = true)]
        facets: Vec<String>,
        #[command(flatten)]
        opts: SearchOpts,
    },
    /// Build an S-certificate from a partition of a simplicial complex into
    /// intervals, given as `<face> <facet>` lines.
    ConvertSimplicialPartition {
        poset: PathBuf,
        pairs: PathBuf,
        #[command(flatten)]
        opts: SearchOpts,
    },
    /// Test whether an S-certificate's facet order can be reversed.
    ReverseCheck {
        poset: PathBuf,
        cert: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

impl Cmd {
    fn name(&self) -> &'static str {
        match self {
            Cmd::Validate { .. } => "validate",
            Cmd::Flags { .. } => "flags",
            Cmd::Euler { .. } => "euler",
            Cmd::Cd { .. } => "cd",
            Cmd::Semicd { .. } => "semicd",
            Cmd::CheckEulerian { .. } => "check-eulerian",
            Cmd::CheckSpart { .. } => "check-spart",
            Cmd::CheckSepart { .. } => "check-separt",
            Cmd::SearchSpart { .. } => "search-spart",
            Cmd::SearchSepart { .. } => "search-separt",
            Cmd::CdRecursive { .. } => "cd-recursive",
            Cmd::Contributions { .. } => "contributions",
            Cmd::Gen { .. } => "gen",
            Cmd::ConvertShelling { .. } => "convert-shelling",
            Cmd::ConvertSimplicialPartition { .. } => "convert-simplicial-partition",
            Cmd::ReverseCheck { .. } => "reverse-check",
        }
    }
}

fn run(cmd: &Cmd) -> commands::Outcome {
    use commands as c;
    match cmd {
        Cmd::Validate { poset } => c::validate(poset),
        Cmd::Flags { poset, h } => c::flags(poset, *h),
        Cmd::Euler { poset } => c::euler(poset),
        Cmd::Cd { poset } => c::cd(poset),
        Cmd::Semicd { poset } => c::semicd(poset),
        Cmd::CheckEulerian { poset } => c::check_eulerian(poset),
        Cmd::CheckSpart { poset, cert } => c::check_cert(poset, cert, false),
        Cmd::CheckSepart { poset, cert } => c::check_cert(poset, cert, true),
        Cmd::SearchSpart { poset, opts } => {
            c::search(poset, false, opts.budget, opts.emit_cert.as_deref())
        }
        Cmd::SearchSepart { poset, opts } => {
            c::search(poset, true, opts.budget, opts.emit_cert.as_deref())
        }
        Cmd::CdRecursive { poset, cert } => c::cd_recursive(poset, cert),
        Cmd::Contributions { poset, cert } => c::contributions(poset, cert),
        Cmd::Gen {
            family,
            params,
            output,
            cert,
        } => c::gen(family, params, output.as_deref(), cert.as_deref()),
        Cmd::ConvertShelling {
            poset,
            facets,
            opts,
        } => c::convert_shelling(poset, facets, opts.budget, opts.emit_cert.as_deref()),
        Cmd::ConvertSimplicialPartition { poset, pairs, opts } => {
            c::convert_simplicial(poset, pairs, opts.budget, opts.emit_cert.as_deref())
        }
        Cmd::ReverseCheck {
            poset,
            cert,
            budget,
        } => c::reverse_check(poset, cert, *budget),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = run(&cli.cmd);
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match outcome {
        Ok(mut report) => {
            report
                .timings
                .insert("elapsed_ms".into(), start.elapsed().as_millis() as u64);
            if report
                .write(cli.json, report::color_from_env(), &mut out)
                .is_err()
            {
                return ExitCode::from(2);
            }
            report.exit
        }
        Err(commands::InputError(msg)) => {
            if cli.json {
                let v = json!({ "command": cli.cmd.name(), "error": msg });
                let _ = writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&v).unwrap_or_default()
                );
            }
            eprintln!("error: {msg}");
            2
        }
    };
    let _ = out.flush();
    ExitCode::from(code)
}

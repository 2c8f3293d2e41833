use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mckay::chambers::Limits;
use mckay::cli::{self, Report};
use mckay::Error;

#[derive(Parser)]
#[command(name = "mckay", version, about = "G-Hilbert schemes, tautological bundles and GIT chambers for C^3/G")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write an SVG drawing (ghilb, quiver).
    #[arg(long, global = true, value_name = "PATH")]
    svg: Option<PathBuf>,
    /// Write the JSON report.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    #[arg(long, global = true, value_name = "N")]
    max_chambers: Option<usize>,
    #[arg(long, global = true, value_name = "N")]
    max_fans: Option<usize>,
    /// Give up on a chamber search after this many seconds.
    #[arg(long, global = true, value_name = "SECS")]
    max_seconds: Option<u64>,
    /// Start from a state printed by `cross` instead of G-Hilb.
    #[arg(long, global = true, value_name = "TOKEN")]
    seed_state: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// G-Hilb fan, tautological bundles and markings.
    Ghilb { group: String },
    /// Reid's recipe.
    Markings { group: String },
    /// Facets of a chamber.
    Chamber { group: String },
    /// Walls of a chamber with their type and effect.
    Walls { group: String },
    /// Cross the given facet of a chamber.
    Cross { group: String, facet: usize },
    /// All chambers reachable from G-Hilb.
    Enumerate { group: String },
    /// Support quiver of a torus orbit and its splittings.
    Quiver {
        group: String,
        /// Triangle and vertex indices, as `T,V`.
        #[arg(long, value_name = "T,V")]
        orbit: Option<String>,
        /// Characters of the quotient, e.g. `ρ0,ρ1`.
        #[arg(long, value_name = "CHARS")]
        split: Option<String>,
    },
    /// Internal consistency checks.
    Verify { group: String },
}

fn parse_orbit(s: &str) -> Result<(usize, usize), Error> {
    let bad = || Error::Parse(format!("--orbit expects T,V, got `{s}`"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn run(cli: &Cli) -> Result<Report, Error> {
    let mut limits = Limits::default();
    if let Some(n) = cli.max_chambers {
        limits.max_chambers = n;
    }
    if let Some(n) = cli.max_fans {
        limits.max_fans = n;
    }
    limits.max_seconds = cli.max_seconds;
    let seed = cli.seed_state.as_deref();
    let write_svg = |svg: String| -> Result<(), Error> {
        if let Some(p) = &cli.svg {
            std::fs::write(p, svg).map_err(|e| Error::Precondition(format!("writing {}: {e}", p.display())))?;
        }
        Ok(())
    };
    match &cli.command {
        Command::Ghilb { group } => {
            let (rep, svg) = cli::cmd_ghilb(group)?;
            write_svg(svg)?;
            Ok(rep)
        }
        Command::Markings { group } => cli::cmd_markings(group),
        Command::Chamber { group } => cli::cmd_chamber(group, seed, &limits),
        Command::Walls { group } => cli::cmd_walls(group, seed, &limits),
        Command::Cross { group, facet } => cli::cmd_cross(group, *facet, seed, &limits),
        Command::Enumerate { group } => cli::cmd_enumerate(group, &limits),
        Command::Quiver { group, orbit, split } => {
            let orbit = orbit.as_deref().map(parse_orbit).transpose()?;
            let (rep, svg) = cli::cmd_quiver(group, orbit, split.as_deref(), seed)?;
            write_svg(svg)?;
            Ok(rep)
        }
        Command::Verify { group } => cli::cmd_verify(group, &limits),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(rep) => {
            // A closed pipe (`| head`) is not an error worth reporting.
            let mut out = std::io::stdout().lock();
            for line in &rep.summary {
                if writeln!(out, "{line}").is_err() {
                    break;
                }
            }
            if let Some(p) = &cli.json {
                if let Err(e) = std::fs::write(p, rep.to_json() + "\n") {
                    eprintln!("error: writing {}: {e}", p.display());
                    return ExitCode::from(1);
                }
            }
            if rep.ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

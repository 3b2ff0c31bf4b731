mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{FileConfig, FlagValues, Format, RunConfig, SbarSpec, OUT_DIR_VAR};

#[derive(Parser)]
#[command(name = "wlax", version, about = "Classical W-algebras of gl_N, their Lax operators and hierarchies")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Free generators w_{ij;k} in the q variables.
    Generators,
    /// Both λ-brackets between all pairs of generators.
    Brackets,
    /// Hamiltonian densities and evolution equations.
    Hierarchy,
    /// Runs every checker and reports pass/fail with witnesses.
    Verify,
}

impl Cmd {
    fn name(self) -> &'static str {
        match self {
            Cmd::Generators => "generators",
            Cmd::Brackets => "brackets",
            Cmd::Hierarchy => "hierarchy",
            Cmd::Verify => "verify",
        }
    }
}

#[derive(Args)]
struct Opts {
    /// Config file with the same keys as the flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Partition p_1 ≥ p_2 ≥ ... as a comma separated list.
    #[arg(long, global = true)]
    partition: Option<String>,
    /// `identity`, `E11`, or a file holding an r_1 × r_1 rational matrix.
    #[arg(long, global = true)]
    sbar: Option<String>,
    /// Truncation floor for pseudodifferential expansions.
    #[arg(long, global = true, allow_negative_numbers = true)]
    floor: Option<i64>,
    /// Highest flow index.
    #[arg(long, global = true)]
    flows: Option<u32>,
    /// Order K of the root of L.
    #[arg(long, global = true)]
    root: Option<u32>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// `constrained` quotients by the central block before building the hierarchy.
    #[arg(long, global = true)]
    reduce: Option<String>,
    /// Directory for output files; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Writes output under the fixture naming scheme.
    #[arg(long, global = true)]
    fixture: bool,
    #[arg(long, global = true, hide = true)]
    corrupt: bool,
}

const EXIT_CHECK: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_COMPUTE: u8 = 3;

fn load(opts: Opts) -> Result<RunConfig, String> {
    let file = match &opts.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let flags = FlagValues {
        partition: opts.partition,
        sbar: opts.sbar,
        floor: opts.floor,
        flows: opts.flows,
        root: opts.root,
        format: opts.format,
        reduce: opts.reduce,
        out: opts.out,
        fixture: opts.fixture,
        corrupt: opts.corrupt,
    };
    config::resolve(flags, file, std::env::var_os(OUT_DIR_VAR).map(PathBuf::from))
}

fn output_path(cmd: Cmd, cfg: &RunConfig) -> Option<PathBuf> {
    let dir = match (&cfg.out, cfg.fixture) {
        (Some(d), _) => d.clone(),
        (None, true) => PathBuf::from("fixtures"),
        (None, false) => return None,
    };
    let parts: Vec<String> = cfg.pyr.parts().iter().map(|p| p.to_string()).collect();
    let mut stem = format!("{}-{}", cmd.name(), parts.join("_"));
    match cfg.sbar_spec {
        SbarSpec::Identity => {}
        SbarSpec::E11 => stem.push_str("-e11"),
        SbarSpec::Matrix(_) => stem.push_str("-sbar"),
    }
    if cfg.constrained {
        stem.push_str("-constrained");
    }
    Some(dir.join(format!("{}.{}", stem, cfg.format.extension())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cmd = cli.cmd;
    let cfg = match load(cli.opts) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("config error: {}", e);
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let result = match cmd {
        Cmd::Generators => commands::generators(&cfg),
        Cmd::Brackets => commands::brackets(&cfg),
        Cmd::Hierarchy => commands::hierarchy(&cfg),
        Cmd::Verify => commands::verify(&cfg),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(EXIT_COMPUTE);
        }
    };
    match output_path(cmd, &cfg) {
        Some(path) => {
            let written = path
                .parent()
                .map_or(Ok(()), std::fs::create_dir_all)
                .and_then(|_| std::fs::write(&path, &outcome.body));
            if let Err(e) = written {
                eprintln!("error: {}: {}", path.display(), e);
                return ExitCode::from(EXIT_COMPUTE);
            }
            eprintln!("wrote {}", path.display());
        }
        None => print!("{}", outcome.body),
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK)
    }
}

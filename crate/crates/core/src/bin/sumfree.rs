use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use sumfree::report::{
    emit, run, Command, Format, RunConfig, TheoremSelector, EXIT_USAGE, MAX_NODES_ENV,
};

#[derive(Parser)]
#[command(
    name = "sumfree",
    version,
    about = "Sum-free sets in small finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Group structure, maximum sum-free size, and optional set properties.
    Analyze {
        #[command(flatten)]
        common: Common,
        /// Set literal such as "{1,3}" or "{(1,0),(0,1)}".
        #[arg(long)]
        set: Option<String>,
    },
    /// Enumerate maximum (or locally maximal) sum-free sets.
    Enumerate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        locally_maximal: bool,
    },
    /// Check the characterisation theorems and related identities.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "all")]
        theorem: TheoremSelector,
        #[arg(long)]
        set: Option<String>,
        #[arg(long)]
        element: Option<String>,
    },
    /// Enumerate and verify every abelian group up to a given order.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 16)]
        max_order: usize,
        #[arg(long)]
        locally_maximal: bool,
    },
}

#[derive(Args)]
struct Common {
    /// Group descriptor, e.g. "Z:3^2" or "C:2xC:4". Repeatable.
    #[arg(long = "group", short = 'g')]
    groups: Vec<String>,
    /// Search node budget.
    #[arg(long, env = MAX_NODES_ENV)]
    max_nodes: Option<u64>,
    /// Wall-clock limit per search, in seconds.
    #[arg(long)]
    timeout: Option<f64>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn config(cli: Cli) -> Result<RunConfig, String> {
    let (command, common) = match &cli.command {
        Sub::Analyze { common, .. } => (Command::Analyze, common),
        Sub::Enumerate { common, .. } => (Command::Enumerate, common),
        Sub::Verify { common, .. } => (Command::Verify, common),
        Sub::Sweep { common, .. } => (Command::Sweep, common),
    };
    let mut c = RunConfig::new(command);
    c.groups = common.groups.clone();
    c.max_nodes = common.max_nodes;
    c.timeout = match common.timeout {
        Some(t) if t.is_finite() && t > 0.0 => Some(Duration::from_secs_f64(t)),
        Some(_) => return Err("--timeout must be a positive number of seconds".into()),
        None => None,
    };
    c.workers = common.workers;
    c.format = common.format;
    c.out = common.out.clone();
    match cli.command {
        Sub::Analyze { set, .. } => c.set = set,
        Sub::Enumerate {
            locally_maximal, ..
        } => c.locally_maximal = locally_maximal,
        Sub::Verify {
            theorem,
            set,
            element,
            ..
        } => {
            c.theorem = theorem;
            c.set = set;
            c.element = element;
        }
        Sub::Sweep {
            max_order,
            locally_maximal,
            ..
        } => {
            c.max_order = max_order;
            c.locally_maximal = locally_maximal;
        }
    }
    Ok(c)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match config(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let result = run(&config).and_then(|env| Ok((emit(&env, config.format)?, env.exit_code)));
    let (body, code) = match result {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    match &config.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_USAGE as u8);
            }
        }
        None => print!("{body}"),
    }
    ExitCode::from(code as u8)
}

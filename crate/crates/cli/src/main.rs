mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "mackeykit",
    version,
    about = "Burnside categories, Mackey and Green functors of finite groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Also write the result (a reloadable document where there is one) to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Order and conjugacy classes of subgroups.
    GroupInfo {
        #[arg(long)]
        group: String,
    },
    /// Table of marks: `marks[i][j] = |(G/H_i)^{H_j}|`.
    Marks {
        #[arg(long)]
        group: String,
    },
    /// Structure constants of the Burnside ring on the orbit basis.
    BurnsideRing {
        #[arg(long)]
        group: String,
    },
    /// Canonical basis of spans between two G-sets (class labels or G-set files).
    HomBasis {
        #[arg(long)]
        group: Option<String>,
        source: String,
        target: String,
    },
    /// Composes two span files (`SECOND o FIRST`), or with `--group` checks
    /// category laws on random spans.
    Compose {
        first: Option<PathBuf>,
        second: Option<PathBuf>,
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
    /// Loads and validates a Mackey functor.
    MackeyCheck { mackey: PathBuf },
    /// Box product of two Mackey functors, with unit and symmetry checks.
    Box { left: PathBuf, right: PathBuf },
    /// Loads a Green functor and checks every axiom.
    GreenCheck { green: PathBuf },
    /// Tor over a Green functor.
    Tor {
        ring: PathBuf,
        left: PathBuf,
        right: PathBuf,
        #[arg(long, default_value_t = 2)]
        pmax: usize,
    },
    /// Spectral sequence of a filtered complex.
    Ss {
        complex: PathBuf,
        #[arg(long, default_value_t = 3)]
        rmax: usize,
    },
    /// K_0 of G-sets over orbits versus the Burnside Green functor.
    Bpq {
        #[arg(long)]
        group: String,
    },
    /// The duality triangle on every orbit.
    DualityCheck {
        #[arg(long)]
        group: String,
    },
    /// The coend condition for multi-spans with few feet.
    PromonoidalCheck {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 2)]
        feet: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(r) => {
            let json = serde_json::to_string(&r.json).expect("serializable");
            match cli.format {
                Format::Json => println!("{json}"),
                Format::Text => print!("{}", r.text),
            }
            if let Some(path) = &cli.out {
                let body = r.artifact.clone().unwrap_or(json);
                if let Err(e) = std::fs::write(path, body + "\n") {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(if r.ok { 0 } else { 1 })
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

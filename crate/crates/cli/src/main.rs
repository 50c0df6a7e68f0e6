use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fixpoint_cli::{
    classify, count, gadget, simulate, CliError, CountOptions, EngineChoice, GadgetKind, Report,
};
use fixpoint_core::Caps;

/// Count, classify and simulate fixed points of boolean network systems.
#[derive(Parser)]
#[command(name = "fixpoint", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CapArgs {
    /// Largest vertex count for exhaustive enumeration.
    #[arg(long, default_value_t = 26)]
    brute_cap: usize,
    /// Largest arity turned into a lookup table.
    #[arg(long, default_value_t = 20)]
    arity_cap: usize,
    /// Largest tree-decomposition width the DP engines accept.
    #[arg(long, default_value_t = 12)]
    width_cap: usize,
}

impl CapArgs {
    fn caps(&self) -> Caps {
        Caps {
            brute: self.brute_cap,
            arity: self.arity_cap,
            width: self.width_cap,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Count the fixed points of a system file.
    Count {
        file: String,
        #[arg(long, value_enum, default_value_t = EngineChoice::Auto)]
        engine: EngineChoice,
        #[command(flatten)]
        caps: CapArgs,
        /// Leave out the elapsed_ms line.
        #[arg(long)]
        no_timing: bool,
    },
    /// Classify every local function and the network.
    Classify {
        file: String,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Run the update schedule from an initial configuration.
    Simulate {
        file: String,
        #[arg(long, default_value_t = 16)]
        steps: usize,
        /// Bits for vertices 1..n; all zeros by default.
        #[arg(long)]
        init: Option<String>,
    },
    /// Write a reduction gadget and its count identity.
    Gadget {
        #[arg(value_enum)]
        name: GadgetKind,
        /// CNF file, or a graph file for vc-d2 and bip-horn.
        input: Option<String>,
        /// Amplifier size.
        #[arg(long)]
        h: Option<usize>,
        #[arg(short, long)]
        output: String,
    },
}

fn run(cli: Cli) -> Result<Report, CliError> {
    match cli.command {
        Command::Count {
            file,
            engine,
            caps,
            no_timing,
        } => count(
            &file,
            &CountOptions {
                engine,
                caps: caps.caps(),
                timing: !no_timing,
            },
        ),
        Command::Classify { file, caps } => classify(&file, &caps.caps()),
        Command::Simulate { file, steps, init } => simulate(&file, steps, init.as_deref()),
        Command::Gadget {
            name,
            input,
            h,
            output,
        } => gadget(name, input.as_deref(), h, &output),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(report) => {
            print!("{report}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

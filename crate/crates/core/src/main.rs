use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fibq::cli::{self, CliError, SimulateMode};

#[derive(Parser)]
#[command(name = "fibq", version, about = "Fibonacci Q-matrix block codec")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode a text message into a codeword file
    Encode {
        /// Input text (default: stdin)
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Output codeword file (default: stdout)
        #[arg(long = "out")]
        output: Option<PathBuf>,
    },
    /// Decode a codeword file back to text
    Decode {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long = "out")]
        output: Option<PathBuf>,
    },
    /// Print the letter table for shift n
    Table { n: u64 },
    /// Measure detection of single-field corruptions for a message
    Simulate {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long = "out")]
        output: Option<PathBuf>,
        /// Defaults to exhaustive up to 16 rows, sampled above
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        /// RNG seed, sampled mode only
        #[arg(long)]
        seed: Option<u64>,
        /// Number of sampled corruptions
        #[arg(long)]
        samples: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Sampled,
}

fn read_input(path: Option<&PathBuf>) -> io::Result<String> {
    match path {
        Some(p) => fs::read_to_string(p),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn write_output(path: Option<&PathBuf>, body: &str) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, body),
        None => io::stdout().lock().write_all(body.as_bytes()),
    }
}

fn run(args: Args) -> Result<(), CliError> {
    match args.command {
        Command::Encode { input, output } => {
            let body = cli::encode_command(&read_input(input.as_ref())?)?;
            write_output(output.as_ref(), &body)?;
        }
        Command::Decode { input, output } => {
            let body = cli::decode_command(&read_input(input.as_ref())?)?;
            write_output(output.as_ref(), &body)?;
        }
        Command::Table { n } => write_output(None, &cli::table_command(n)?)?,
        Command::Simulate {
            input,
            output,
            mode,
            seed,
            samples,
        } => {
            let mode = mode.map(|m| match m {
                Mode::Exhaustive => SimulateMode::Exhaustive,
                Mode::Sampled => SimulateMode::Sampled,
            });
            let body = cli::simulate_command(&read_input(input.as_ref())?, mode, seed, samples)?;
            write_output(output.as_ref(), &body)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fibq: {e}");
            ExitCode::FAILURE
        }
    }
}

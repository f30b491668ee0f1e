mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use icnoma_core::{Error, SearchLimits};

#[derive(Parser)]
#[command(name = "icnoma", version, about = "Design, analyze and simulate index-coded NOMA broadcast schemes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Design a scheme and print its codes, lengths and schedule.
    Design {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Rate, power-saving and QoS numbers per near-layer power fraction, as CSV.
    Analyze {
        #[command(flatten)]
        input: Input,
        /// Per-user QoS rate in bits per channel use.
        #[arg(long, default_value_t = 1.0)]
        qos_rate: f64,
        /// Comma-separated near-layer power fractions; defaults to the scenario's.
        #[arg(long, value_delimiter = ',')]
        alphas: Vec<f64>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Monte-Carlo link simulation of the designed schedule, as CSV.
    Simulate {
        #[command(flatten)]
        input: Input,
        /// Comma-separated SNR points in dB (total power over noise variance);
        /// `inf` is noiseless. Defaults to the scenario's noise variance.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        snr_sweep: Vec<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        packet_bits: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Regenerate a reference table or figure series and compare it with the
    /// published values.
    Reproduce {
        /// example1, example2, table5, table7, table9, fig3, fig4, fig5 or all.
        target: String,
        #[arg(long, default_value = "reproduced")]
        out_dir: PathBuf,
    },
}

#[derive(Args)]
struct Input {
    /// Scenario file, or the name of a bundled scenario.
    scenario: String,
    /// 1: first optimal far code (or the scenario's preferred one);
    /// 2: far code that minimizes the near code.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
    algorithm: u8,
    #[arg(long)]
    max_messages: Option<usize>,
    #[arg(long)]
    max_length: Option<usize>,
}

impl Input {
    fn limits(&self) -> SearchLimits {
        let d = SearchLimits::default();
        SearchLimits {
            max_messages: self.max_messages.unwrap_or(d.max_messages),
            max_length: self.max_length.unwrap_or(d.max_length),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
}

pub(crate) enum Failure {
    Core(Error),
    Io(String),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Design { input, format } => {
            commands::design(&input.scenario, input.algorithm, &input.limits(), matches!(format, Format::Csv))
        }
        Command::Analyze {
            input,
            qos_rate,
            alphas,
            output,
        } => commands::analyze(
            &input.scenario,
            input.algorithm,
            &input.limits(),
            qos_rate,
            &alphas,
            output.as_deref(),
        ),
        Command::Simulate {
            input,
            snr_sweep,
            seed,
            trials,
            packet_bits,
            output,
        } => commands::simulate(
            &input.scenario,
            input.algorithm,
            &input.limits(),
            commands::SimOverrides {
                snr_sweep,
                seed,
                trials,
                packet_bits,
            },
            output.as_deref(),
        ),
        Command::Reproduce { target, out_dir } => commands::reproduce(&target, &out_dir),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Core(e @ Error::SearchExhausted { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Mismatch) => ExitCode::from(3),
    }
}

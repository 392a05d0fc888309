mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Format;

#[derive(Parser, Debug)]
#[command(
    name = "rsdlog",
    version,
    about = "Reed–Solomon decoding, index-calculus DLOG and exact quantum reduction simulators"
)]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Seed for the run's random generator.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub out: Format,
    /// Largest amplitude vector the simulators may allocate.
    #[arg(long, global = true, default_value_t = 1 << 24, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_dim: u64,
    /// Largest number of codewords or subsets enumerated by brute force.
    #[arg(long, global = true, default_value_t = 10_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_enum: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum DualDecoder {
    Nearest,
    Bw,
    Gs,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decoder noise rates at k = 3h + 4.
    Params {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        h: u64,
    },
    /// Run a decoder on an instance file {"code": ..., "received": ...}.
    Decode {
        #[arg(long)]
        instance: String,
        #[arg(long, default_value = "bw")]
        decoder: String,
        /// Radius for gs and brute.
        #[arg(long)]
        t: Option<usize>,
    },
    /// Generate a received-word instance.
    CwGen {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        g: usize,
        /// Plant a witness codeword and include it.
        #[arg(long)]
        planted: bool,
    },
    /// Planted round trip, or relation recovery from an instance file.
    CwDemo {
        #[arg(long, default_value_t = 16)]
        q: u64,
        #[arg(long, default_value_t = 2)]
        h: usize,
        #[arg(long, default_value_t = 12)]
        g: usize,
        #[arg(long, default_value_t = 10)]
        trials: u64,
        #[arg(long)]
        instance: Option<String>,
    },
    /// Index-calculus discrete log in F_{q^h}, checked against a baseline.
    Dlog {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        h: usize,
        /// Exponent of the target; drawn from the seed when absent.
        #[arg(long)]
        exponent: Option<u64>,
        /// Cap on relation draws.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Syndrome-decoding pipeline with a Bernoulli amplitude on RS[q, k]_q.
    RegevSim {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0.2)]
        tau: f64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, value_enum, default_value_t = DualDecoder::Nearest)]
        decoder: DualDecoder,
    },
    /// PGM bounded-distance decoding by exact simulation.
    PgmSim {
        #[arg(long)]
        q: u64,
        /// Generator rows separated by ';', entries by ','.
        #[arg(long = "G")]
        gen: String,
        #[arg(long)]
        y0: String,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 100)]
        trials: u64,
    },
    /// Pad a moment subset-sum instance and compare answers.
    PadMss {
        /// MSS JSON {"A", "k", "m"}; a random instance is drawn when absent.
        #[arg(long)]
        instance: Option<String>,
        /// Number of dummy elements.
        #[arg(long, default_value_t = 5)]
        m: u64,
        #[arg(long, default_value_t = 8)]
        size: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
    },
    /// Coordinate marginals of received words against uniform.
    CwStats {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        g: usize,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cfg = &cli.config;
    let result = match &cli.command {
        Command::Params { q, h } => commands::params(cfg, *q, *h),
        Command::Decode { instance, decoder, t } => commands::decode(cfg, instance, decoder, *t),
        Command::CwGen { q, h, g, planted } => commands::cw_gen(cfg, *q, *h, *g, *planted),
        Command::CwDemo { q, h, g, trials, instance } => {
            commands::cw_demo(cfg, *q, *h, *g, *trials, instance.as_deref())
        }
        Command::Dlog { q, h, exponent, budget } => commands::dlog(cfg, *q, *h, *exponent, *budget),
        Command::RegevSim { q, k, tau, trials, decoder } => commands::regev_sim(cfg, *q, *k, *tau, *trials, *decoder),
        Command::PgmSim { q, gen, y0, t, trials } => commands::pgm_sim(cfg, *q, gen, y0, *t, *trials),
        Command::PadMss { instance, m, size, k, d } => commands::pad_mss(cfg, instance.as_deref(), *m, *size, *k, *d),
        Command::CwStats { q, h, g, samples } => commands::cw_stats(cfg, *q, *h, *g, *samples),
    };
    match result {
        Ok(value) => {
            print!("{}", output::render(value, cfg.seed, cfg.out));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}

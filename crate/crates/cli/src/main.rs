//! `qcorr` — sweep dilated channel trajectories, compute discord reports,
//! and run the simulated tomography pipeline from the command line.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use qcorr::{
    emit_csv, emit_json, genuine_discord, load_state, noise_study, run_sweep, save_state,
    Analysis, ChannelKind, ChannelSpec, DiscordOptions, DiscordReport, Error, InitialState,
    NoiseConfig, NoiseStudyConfig, Orientations, StateFile, SweepConfig, TomoConfig,
};

#[derive(Parser)]
#[command(name = "qcorr", version, about = "Correlation flow of a two-qubit system and its environment")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the channel strength p and emit one correlation record per point.
    Sweep(SweepArgs),
    /// Full tripartite discord report for a state file.
    Discord(DiscordArgs),
    /// Reconstruct a density matrix from a tomography counts file.
    Tomo(TomoArgs),
    /// Simulate tomography counts for a state file.
    SimulateCounts(SimulateCountsArgs),
    /// Sweep the correlated-noise strength q at fixed p on the damping
    /// trajectory and report the induced 3-tangle estimates.
    NoiseStudy(NoiseStudyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ChannelArg {
    Ad,
    Pd,
    Custom,
}

#[derive(Clone, Copy, ValueEnum)]
enum AnalysisArg {
    Direct,
    QuasiPure,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientationsArg {
    Anchored,
    Both,
    First,
}

#[derive(Args)]
struct SweepArgs {
    /// Channel family; `custom` requires --channel-file.
    #[arg(long, value_enum, default_value = "pd")]
    channel: ChannelArg,
    /// JSON channel spec ({"channel": "ad"|"pd"|"custom", ...}).
    #[arg(long)]
    channel_file: Option<PathBuf>,
    /// Initial amplitude of |11⟩ (a float or "re,im"); normalized together
    /// with the other three.
    #[arg(long, default_value = "0.7071067811865476")]
    alpha: String,
    /// Initial amplitude of |10⟩.
    #[arg(long, default_value = "0")]
    beta: String,
    /// Initial amplitude of |01⟩.
    #[arg(long, default_value = "0")]
    gamma: String,
    /// Initial amplitude of |00⟩.
    #[arg(long, default_value = "0.7071067811865476")]
    delta: String,
    /// Number of uniform p intervals over [0, 1] (emits p-steps+1 points).
    #[arg(long, default_value_t = 20)]
    p_steps: usize,
    /// White-noise admixture ε in [0, 1].
    #[arg(long, default_value_t = 0.0)]
    noise_white: f64,
    /// Correlated Z_B⊗Z_E dephasing strength q in [0, 1/2].
    #[arg(long, default_value_t = 0.0)]
    noise_zz: f64,
    /// Expected coincidences per tomography setting; enables the simulated
    /// tomography stage.
    #[arg(long)]
    tomo_n0: Option<u64>,
    /// Monte Carlo resamples for error bars.
    #[arg(long, default_value_t = 100)]
    tomo_mc: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "direct")]
    analysis: AnalysisArg,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Output path ("-" for stdout).
    #[arg(long, default_value = "-")]
    out: String,
    /// Skip the discord columns (they dominate the runtime).
    #[arg(long)]
    skip_discord: bool,
    /// Measurement grid points per angle for the discord minimizations.
    #[arg(long, default_value_t = 24)]
    grid: usize,
    /// Simplex refinement tolerance.
    #[arg(long, default_value_t = 1e-8)]
    refine_tol: f64,
    /// Report entropic columns (d3, tqd) in bits instead of nats.
    #[arg(long)]
    bits: bool,
    /// Also write a gnuplot script for the emitted CSV.
    #[arg(long)]
    gnuplot: Option<PathBuf>,
}

#[derive(Args)]
struct DiscordArgs {
    /// State file (state_vector or density_matrix).
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 24)]
    grid: usize,
    #[arg(long, default_value_t = 1e-8)]
    refine_tol: f64,
    /// Measured-side scan for the bipartite maximum D⁽²⁾.
    #[arg(long, value_enum, default_value = "anchored")]
    orientations: OrientationsArg,
    /// Report entropic quantities in bits instead of nats.
    #[arg(long)]
    bits: bool,
}

#[derive(Args)]
struct TomoArgs {
    /// Counts table (setting_a,setting_b,setting_e,counts,N0).
    #[arg(long)]
    counts: PathBuf,
    /// Destination state file for the reconstructed density matrix.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SimulateCountsArgs {
    /// State file to sample from.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 500)]
    n0: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write exact probabilities scaled by N0 instead of Poisson draws.
    #[arg(long)]
    exact: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct NoiseStudyArgs {
    /// Fixed channel strength of the damping trajectory.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Number of uniform q intervals over [0, q-max].
    #[arg(long, default_value_t = 10)]
    q_steps: usize,
    #[arg(long, default_value_t = 0.5)]
    q_max: f64,
    #[arg(long, default_value = "0")]
    alpha: String,
    #[arg(long, default_value = "0.7071067811865476")]
    beta: String,
    #[arg(long, default_value = "0.7071067811865476")]
    gamma: String,
    #[arg(long, default_value = "0")]
    delta: String,
    #[arg(long, default_value = "-")]
    out: String,
}

fn parse_complex(text: &str) -> Result<Complex64, Error> {
    let trimmed = text.trim();
    let parts: Vec<&str> = trimmed.split(',').collect();
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|e| Error::Config(format!("amplitude {trimmed:?}: {e}")))
    };
    match parts.as_slice() {
        [re] => Ok(Complex64::new(parse(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(parse(re)?, parse(im)?)),
        _ => Err(Error::Config(format!("amplitude {trimmed:?}: expected RE or RE,IM"))),
    }
}

fn parse_initial(alpha: &str, beta: &str, gamma: &str, delta: &str) -> Result<InitialState, Error> {
    InitialState::from_unnormalized(
        parse_complex(alpha)?,
        parse_complex(beta)?,
        parse_complex(gamma)?,
        parse_complex(delta)?,
    )
}

fn open_out(path: &str) -> Result<Box<dyn Write>, Error> {
    if path == "-" {
        Ok(Box::new(io::stdout().lock()))
    } else {
        Ok(Box::new(File::create(path)?))
    }
}

fn discord_options(grid: usize, refine_tol: f64, orientations: Orientations) -> DiscordOptions {
    DiscordOptions { grid, refine_tol, orientations, ..Default::default() }
}

fn run_sweep_command(args: SweepArgs) -> Result<(), Error> {
    let channel = match (&args.channel, &args.channel_file) {
        (ChannelArg::Custom, None) => {
            return Err(Error::Config("channel: custom requires --channel-file".into()))
        }
        (_, Some(path)) => {
            let spec = ChannelSpec::from_json(&std::fs::read_to_string(path)?)?;
            match spec {
                ChannelSpec::Ad { .. } | ChannelSpec::Pd { .. } => {
                    return Err(Error::Config(
                        "channel-file: named channels are swept via --channel; \
                         only custom Kraus pairs come from files"
                            .into(),
                    ))
                }
                ChannelSpec::Custom { .. } => ChannelKind::Custom(spec.kraus()?),
            }
        }
        (ChannelArg::Ad, None) => ChannelKind::Ad,
        (ChannelArg::Pd, None) => ChannelKind::Pd,
    };
    if args.p_steps == 0 {
        return Err(Error::Config("p-steps: must be positive".into()));
    }
    let config = SweepConfig {
        channel,
        initial: parse_initial(&args.alpha, &args.beta, &args.gamma, &args.delta)?,
        p_grid: SweepConfig::uniform_grid(args.p_steps),
        noise: NoiseConfig { white: args.noise_white, zz: args.noise_zz },
        tomography: args
            .tomo_n0
            .map(|n0| TomoConfig { n0, mc: args.tomo_mc, seed: args.seed }),
        analysis: match args.analysis {
            AnalysisArg::Direct => Analysis::Direct,
            AnalysisArg::QuasiPure => Analysis::QuasiPure,
            AnalysisArg::Both => Analysis::Both,
        },
        skip_discord: args.skip_discord,
        discord: discord_options(args.grid, args.refine_tol, Orientations::Anchored),
    };
    let mut records = run_sweep(&config)?;
    if args.bits {
        for r in &mut records {
            r.d3 = r.d3.map(|v| v / std::f64::consts::LN_2);
            r.tqd = r.tqd.map(|v| v / std::f64::consts::LN_2);
        }
    }
    let mut out = open_out(&args.out)?;
    match args.format {
        FormatArg::Csv => emit_csv(&records, &mut out)?,
        FormatArg::Json => emit_json(&records, &mut out)?,
    }
    if let Some(script) = args.gnuplot {
        std::fs::write(&script, qcorr::experiments::gnuplot_script(&args.out))?;
    }
    Ok(())
}

fn bits_report(report: &mut DiscordReport) {
    let ln2 = std::f64::consts::LN_2;
    report.total_information /= ln2;
    report.classical /= ln2;
    report.total_discord /= ln2;
    report.bipartite /= ln2;
    report.genuine /= ln2;
}

fn run_discord_command(args: DiscordArgs) -> Result<(), Error> {
    let state = load_state(&args.input)?;
    let rho = state.to_density_matrix();
    let orientations = match args.orientations {
        OrientationsArg::Anchored => Orientations::Anchored,
        OrientationsArg::Both => Orientations::Both,
        OrientationsArg::First => Orientations::First,
    };
    let opts = discord_options(args.grid, args.refine_tol, orientations);
    let mut report = genuine_discord(&rho, &opts)?;
    if args.bits {
        bits_report(&mut report);
    }
    let text = serde_json::to_string_pretty(&report)
        .map_err(|e| Error::Numerical(format!("json: {e}")))?;
    println!("{text}");
    Ok(())
}

fn run_tomo_command(args: TomoArgs) -> Result<(), Error> {
    let records = qcorr::read_counts_file(&args.counts)?;
    let rho = qcorr::reconstruct(&records)?;
    save_state(&args.out, &StateFile::Matrix(rho))?;
    Ok(())
}

fn run_simulate_command(args: SimulateCountsArgs) -> Result<(), Error> {
    let rho = load_state(&args.input)?.to_density_matrix();
    let records = if args.exact {
        qcorr::tomography::exact_counts(&rho, args.n0 as f64)?
    } else {
        qcorr::simulate_counts(&rho, args.n0, args.seed)?
    };
    qcorr::write_counts_file(&args.out, &records)?;
    Ok(())
}

fn run_noise_study_command(args: NoiseStudyArgs) -> Result<(), Error> {
    if args.q_steps == 0 {
        return Err(Error::Config("q-steps: must be positive".into()));
    }
    if !(0.0..=0.5).contains(&args.q_max) {
        return Err(Error::Config(format!("q-max: {} outside [0, 1/2]", args.q_max)));
    }
    let config = NoiseStudyConfig {
        initial: parse_initial(&args.alpha, &args.beta, &args.gamma, &args.delta)?,
        p: args.p,
        q_grid: (0..=args.q_steps)
            .map(|i| i as f64 * args.q_max / args.q_steps as f64)
            .collect(),
    };
    let records = noise_study(&config)?;
    let mut out = open_out(&args.out)?;
    qcorr::experiments::emit_noise_csv(&records, &mut out)?;
    Ok(())
}

fn exit_code_for(error: &Error) -> u8 {
    match error {
        Error::Numerical(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep(args) => run_sweep_command(args),
        Command::Discord(args) => run_discord_command(args),
        Command::Tomo(args) => run_tomo_command(args),
        Command::SimulateCounts(args) => run_simulate_command(args),
        Command::NoiseStudy(args) => run_noise_study_command(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(exit_code_for(&error))
        }
    }
}

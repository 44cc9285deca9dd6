use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use stirap_cli::formats::{read_grid, render_heatmap, Scale};
use stirap_cli::{execute, load_config, CliError, ExecOptions, Mode, BUNDLED};

#[derive(Parser)]
#[command(name = "stirap", version, about = "Vortex-beam STIRAP localization and condensate imprinting")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dark-spot population map from full Λ dynamics.
    Localize(RunArgs),
    /// Coherent-population-trapping steady-state map.
    CptMap(RunArgs),
    /// Map of the local adiabaticity condition.
    AdiabaticityMap(RunArgs),
    /// Condensate solvers.
    Gpe {
        #[command(subcommand)]
        command: GpeCommand,
    },
    /// Log density, slices, spots and map comparison of a saved grid.
    Analyze(RunArgs),
    /// Render a saved F64G grid as a PGM heatmap.
    Render {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value_t = ScaleArg::Linear)]
        scale: ScaleArg,
    },
    /// List or print the bundled configurations.
    Configs {
        /// Print this configuration instead of listing names.
        name: Option<String>,
    },
}

#[derive(Subcommand)]
enum GpeCommand {
    /// Imaginary-time ground state of component a.
    Ground(RunArgs),
    /// Driven three-component evolution from the ground state.
    Evolve(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// JSON file, or the name of a bundled configuration.
    #[arg(long)]
    config: String,
    /// Output directory; overrides the configuration.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads, 0 for all cores.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Use the larger grids the configuration lists under `heavy`.
    #[arg(long)]
    heavy: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScaleArg {
    Linear,
    Log,
}

fn run(verb: Mode, args: RunArgs) -> Result<(), CliError> {
    let config = load_config(&args.config)?;
    if config.mode != verb {
        return Err(CliError::Usage(format!(
            "configuration {:?} has mode {}, not {}",
            args.config,
            config.mode.name(),
            verb.name()
        )));
    }
    let opts = ExecOptions {
        out_dir: args.out,
        threads: args.threads,
        heavy: args.heavy,
    };
    let manifest = execute(&config, &opts)?;
    let dir = opts.out_dir.unwrap_or_else(|| PathBuf::from(&config.output.directory));
    eprintln!(
        "{} run {} finished in {:.2} s on {} threads; {} files in {}",
        manifest.mode,
        manifest.run_id,
        manifest.wall_clock_seconds,
        manifest.threads,
        manifest.files.len() + 1,
        dir.display()
    );
    println!("{}", serde_json::to_string_pretty(&manifest.summary).expect("summary serializes"));
    Ok(())
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Localize(a) => run(Mode::Localize, a),
        Command::CptMap(a) => run(Mode::CptMap, a),
        Command::AdiabaticityMap(a) => run(Mode::AdiabaticityMap, a),
        Command::Gpe { command } => match command {
            GpeCommand::Ground(a) => run(Mode::GpeGround, a),
            GpeCommand::Evolve(a) => run(Mode::GpeEvolve, a),
        },
        Command::Analyze(a) => run(Mode::Analyze, a),
        Command::Render { input, output, scale } => {
            let field = read_grid(&input)?;
            let scale = match scale {
                ScaleArg::Linear => Scale::Linear,
                ScaleArg::Log => Scale::Log,
            };
            render_heatmap(&field, &output, scale)
        }
        Command::Configs { name: None } => {
            for (name, text) in BUNDLED {
                let mode = stirap_cli::parse_config(text).map(|c| c.mode.name()).unwrap_or("invalid");
                println!("{name:<12} {mode}");
            }
            Ok(())
        }
        Command::Configs { name: Some(name) } => match stirap_cli::bundled(&name) {
            Some(text) => {
                print!("{text}");
                Ok(())
            }
            None => Err(CliError::Usage(format!("no bundled configuration named {name:?}"))),
        },
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            // Bad input is distinguished from a failed run.
            match e {
                CliError::Config(_) | CliError::Usage(_) => ExitCode::from(2),
                _ => ExitCode::FAILURE,
            }
        }
    }
}

//! `mwkit` — command-line front end.
//!
//! Flag parsing only: every subcommand delegates to `mwkit::cli`, prints the
//! resulting report to stdout (and optionally to `--report <file>`), and
//! exits with the command's code. See `docs/FORMATS.md` for the report and
//! file grammars.

use clap::{Parser, Subcommand, ValueEnum};
use mwkit::cli::{self, CmdResult, RenderMode};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "mwkit",
    version,
    about = "Graph-directed self-similar systems: invariant lists, coding, classification, and isomorphism certificates"
)]
struct Args {
    /// Also write the report to this file.
    #[arg(long, global = true, value_name = "FILE")]
    report: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Paint the solved box covering.
    Covering,
    /// Plot random-orbit sample points.
    Cloud,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a config and validate the system (contraction, injectivity, containment).
    Validate { config: PathBuf },

    /// Solve the invariant list; write the covering as a .boxes file.
    Attractor {
        config: PathBuf,
        /// Grid step (defaults to the config's value, else a size budget).
        #[arg(long)]
        resolution: Option<f64>,
        /// Box-list output path [default: <config>.boxes].
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write covering cell centers as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Iteration budget before giving up with a partial answer.
        #[arg(long)]
        max_iterations: Option<usize>,
    },

    /// Rasterize the system to a binary PPM image.
    Render {
        config: PathBuf,
        #[arg(long, default_value_t = 512)]
        width: usize,
        #[arg(long, default_value_t = 512)]
        height: usize,
        /// Image output path [default: <config>.ppm].
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ModeArg::Covering)]
        mode: ModeArg,
        #[arg(long)]
        resolution: Option<f64>,
        /// Points per vertex in cloud mode.
        #[arg(long, default_value_t = 20000)]
        points: usize,
        #[arg(long)]
        seed: Option<u64>,
    },

    /// Decide whether sibling edge images are disjoint or overlap.
    Classify {
        config: PathBuf,
        #[arg(long)]
        resolution: Option<f64>,
        /// Extra refinement rounds for touching pairs.
        #[arg(long, default_value_t = 2)]
        refinements: usize,
    },

    /// Coding map: address to point (--address/--cycle) or point to addresses (--point).
    Code {
        config: PathBuf,
        /// Comma-separated edge ids forming the leading prefix.
        #[arg(long)]
        address: Option<String>,
        /// Comma-separated edge ids repeated after the prefix up to --depth.
        #[arg(long)]
        cycle: Option<String>,
        /// Comma-separated coordinates; switches to point-to-addresses mode.
        #[arg(long, conflicts_with_all = ["address", "cycle"])]
        point: Option<String>,
        /// Vertex id the point lives at (point mode).
        #[arg(long, default_value_t = 0)]
        vertex: u32,
        /// Address length [default: 40 forward, 8 inverse].
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, default_value_t = 1e-9)]
        eps: f64,
        #[arg(long)]
        resolution: Option<f64>,
    },

    /// Decide isomorphism of two totally disconnected systems over one graph.
    DecideIso {
        config1: PathBuf,
        config2: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        /// Random element pairs beyond the always-checked basis pairs.
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        resolution: Option<f64>,
        #[arg(long, default_value_t = 2)]
        refinements: usize,
        /// Certificate output path (written only on a positive answer).
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Re-check a stored certificate against the two systems.
    VerifyCert {
        config1: PathBuf,
        config2: PathBuf,
        cert: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
    },

    /// Certify an aperiodicity witness: a bump whose first shifts have disjoint supports.
    Witness {
        config: PathBuf,
        /// Number of leading shifts that must be disjoint.
        #[arg(long, default_value_t = 1)]
        n0: usize,
        /// Sandwich slack: the witness must reach 1 - eps.
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        /// CSV of vertex,x[,y[,z]],value samples [default: constant 1].
        #[arg(long)]
        a0: Option<PathBuf>,
        #[arg(long)]
        resolution: Option<f64>,
    },
}

fn run(cmd: Command) -> CmdResult {
    match cmd {
        Command::Validate { config } => cli::cmd_validate(&config),
        Command::Attractor {
            config,
            resolution,
            out,
            csv,
            max_iterations,
        } => {
            let out = out.unwrap_or_else(|| config.with_extension("boxes"));
            cli::cmd_attractor(
                &config,
                resolution,
                Some(&out),
                csv.as_deref(),
                max_iterations,
            )
        }
        Command::Render {
            config,
            width,
            height,
            out,
            mode,
            resolution,
            points,
            seed,
        } => {
            let out = out.unwrap_or_else(|| config.with_extension("ppm"));
            let mode = match mode {
                ModeArg::Covering => RenderMode::Covering,
                ModeArg::Cloud => RenderMode::Cloud,
            };
            cli::cmd_render(&config, width, height, &out, mode, resolution, points, seed)
        }
        Command::Classify {
            config,
            resolution,
            refinements,
        } => cli::cmd_classify(&config, resolution, refinements),
        Command::Code {
            config,
            address,
            cycle,
            point,
            vertex,
            depth,
            eps,
            resolution,
        } => {
            let depth = depth.unwrap_or(if point.is_some() { 8 } else { 40 });
            cli::cmd_code(
                &config,
                address.as_deref(),
                cycle.as_deref(),
                point.as_deref(),
                vertex,
                depth,
                eps,
                resolution,
            )
        }
        Command::DecideIso {
            config1,
            config2,
            tol,
            trials,
            seed,
            resolution,
            refinements,
            out,
        } => cli::cmd_decide_iso(
            &config1,
            &config2,
            tol,
            trials,
            seed,
            resolution,
            refinements,
            out.as_deref(),
        ),
        Command::VerifyCert {
            config1,
            config2,
            cert,
            tol,
            trials,
            seed,
        } => cli::cmd_verify_cert(&config1, &config2, &cert, tol, trials, seed),
        Command::Witness {
            config,
            n0,
            eps,
            a0,
            resolution,
        } => cli::cmd_witness(&config, n0, eps, a0.as_deref(), resolution),
    }
}

fn main() {
    let args = Args::parse();
    let result = run(args.command);
    print!("{}", result.report.render());
    if let Some(path) = &args.report {
        if let Err(e) = result.report.write_to(path) {
            eprintln!("error: cannot write report to {}: {e}", path.display());
            std::process::exit(cli::EXIT_INPUT);
        }
    }
    std::process::exit(result.exit);
}

//! `cubic` — construct a cubic surface from six plane points, report its
//! 27 lines, tritangent planes and Eckardt points, and emit a printable
//! test-shape mesh with a measurement reference report.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cubic_cli::mesh_io::MeshFormat;
use cubic_cli::run::{self, ArtifactConfig, PointsSource};
use cubic_core::mesher::HighlightMode;

#[derive(Parser)]
#[command(
    name = "cubic",
    version,
    about = "Cubic surfaces with their 27 lines as 3D-printer test shapes",
    after_help = "Exit codes: 0 ok, 2 invalid input, 3 general-position violation, \
                  4 line census failure, 5 plane census failure, 6 mesh failure, 7 io failure."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SourceArgs {
    /// Built-in point configuration.
    #[arg(long, value_enum, conflicts_with = "points")]
    preset: Option<Preset>,
    /// Points file: six lines of "x : y : z" exact expressions.
    #[arg(long, value_name = "FILE")]
    points: Option<PathBuf>,
    /// Emit only a JSON document on stdout.
    #[arg(long)]
    json: bool,
    /// Also write JSON output into this directory.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    Clebsch,
}

impl SourceArgs {
    fn source(&self) -> PointsSource {
        match (&self.preset, &self.points) {
            (_, Some(path)) => PointsSource::File(path.clone()),
            _ => PointsSource::Preset,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    StlBinary,
    StlAscii,
    Obj,
}

impl From<FormatArg> for MeshFormat {
    fn from(f: FormatArg) -> MeshFormat {
        match f {
            FormatArg::StlBinary => MeshFormat::StlBinary,
            FormatArg::StlAscii => MeshFormat::StlAscii,
            FormatArg::Obj => MeshFormat::Obj,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum HighlightArg {
    Cylinders,
    None,
}

impl From<HighlightArg> for HighlightMode {
    fn from(h: HighlightArg) -> HighlightMode {
        match h {
            HighlightArg::Cylinders => HighlightMode::Cylinders,
            HighlightArg::None => HighlightMode::None,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the cubic equation (projective x0..x3; --affine for y1..y3).
    Cubic {
        #[command(flatten)]
        source: SourceArgs,
        /// Print the affine equation instead of the projective one.
        #[arg(long)]
        affine: bool,
    },
    /// Print the 27 lines in implicit and parametric form, plus the
    /// Eckardt points.
    Lines {
        #[command(flatten)]
        source: SourceArgs,
        /// Use the affine chart (implicit pair + parametrization).
        #[arg(long)]
        affine: bool,
    },
    /// Print the Eckardt points.
    Eckardt {
        #[command(flatten)]
        source: SourceArgs,
        /// Report affine positions (and the points at infinity).
        #[arg(long)]
        affine: bool,
    },
    /// Write the printable mesh, the measurement report and the quality
    /// summary.
    Artifact {
        #[command(flatten)]
        source: SourceArgs,
        /// Build volume half-extents R1,R2,R3 (exact: integers, decimals
        /// or fractions).
        #[arg(long, default_value = "6,6,6", value_name = "R1,R2,R3")]
        volume: String,
        /// Vane thickness in build units (default: 2% of the shortest
        /// box extent).
        #[arg(long, value_name = "T")]
        thickness: Option<f64>,
        /// Radius of the line-highlight cylinders (default: twice the
        /// half thickness).
        #[arg(long = "cyl-radius", value_name = "R")]
        cyl_radius: Option<f64>,
        /// Grid cells per axis (>= 16).
        #[arg(long, default_value_t = 128)]
        resolution: u32,
        #[arg(long, value_enum, default_value_t = FormatArg::StlBinary)]
        format: FormatArg,
        #[arg(long, value_enum, default_value_t = HighlightArg::Cylinders)]
        highlight: HighlightArg,
        /// Include distances between intersection points that do not
        /// share a line.
        #[arg(long)]
        all_distances: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Cubic { source, affine } => {
            run::cmd_cubic(&source.source(), *affine, source.json, &source.out)
        }
        Command::Lines { source, affine } => {
            run::cmd_lines(&source.source(), *affine, source.json, &source.out)
        }
        Command::Eckardt { source, affine } => {
            run::cmd_eckardt(&source.source(), *affine, source.json, &source.out)
        }
        Command::Artifact {
            source,
            volume,
            thickness,
            cyl_radius,
            resolution,
            format,
            highlight,
            all_distances,
        } => run::parse_volume(volume).and_then(|volume| {
            let config = ArtifactConfig {
                volume,
                thickness: *thickness,
                cylinder_radius: *cyl_radius,
                resolution: *resolution,
                format: (*format).into(),
                highlight: (*highlight).into(),
                all_distances: *all_distances,
                out_dir: source.out.clone().unwrap_or_else(|| PathBuf::from(".")),
            };
            run::cmd_artifact(&source.source(), &config, source.json)
        }),
    };
    match result {
        Ok(stdout_text) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(stdout_text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code.clamp(0, 255) as u8)
        }
    }
}

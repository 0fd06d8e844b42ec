//! Command implementations with stable exit codes.
//!
//! Exit codes: 0 success; 2 invalid input (unreadable or unparseable
//! points file, bad flag values); 3 general-position violation; 4 line
//! census failure; 5 plane census or degenerate hyperplane system; 6 mesh
//! generation failure; 7 output IO failure.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_rational::BigRational;

use cubic_core::mesher::{contour, mesh_report, HighlightMode, MeshError, ShapeField, ShellSpec};
use cubic_core::metrology::{build_report, BuildVolume, ReportOptions};
use cubic_core::surface::{build_surface, clebsch_preset, CubicSurface, SurfaceError};

use crate::json;
use crate::mesh_io::{write_mesh, MeshFormat};
use crate::points_file::parse_points;
use crate::text;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for CliError {}

fn err(code: i32, message: impl fmt::Display) -> CliError {
    CliError {
        code,
        message: message.to_string(),
    }
}

fn surface_error(e: SurfaceError) -> CliError {
    let code = match &e {
        SurfaceError::NotGeneralPosition(_) => 3,
        SurfaceError::LineCountMismatch { .. } | SurfaceError::IncidenceMismatch(_) => 4,
        SurfaceError::PlaneCountMismatch { .. } | SurfaceError::DegenerateLinearSystem => 5,
        _ => 2,
    };
    err(code, e)
}

fn mesh_error(e: MeshError) -> CliError {
    let code = match &e {
        MeshError::EmptyMesh => 6,
        MeshError::InvalidSpec(_) | MeshError::UnsupportedHighlight(_) => 2,
    };
    err(code, e)
}

fn io_error(context: &str, e: std::io::Error) -> CliError {
    err(7, format!("{context}: {e}"))
}

#[derive(Debug, Clone)]
pub enum PointsSource {
    Preset,
    File(PathBuf),
}

pub fn load_surface(source: &PointsSource) -> Result<CubicSurface, CliError> {
    let points = match source {
        PointsSource::Preset => clebsch_preset(),
        PointsSource::File(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| err(2, format!("cannot read {}: {e}", path.display())))?;
            parse_points(&text).map_err(|e| err(2, format!("{e:#}")))?
        }
    };
    build_surface(points).map_err(surface_error)
}

/// Parses a positive extent: integer, decimal or fraction.
pub fn parse_extent(s: &str) -> Result<BigRational, CliError> {
    let s = s.trim();
    let bad = |_| err(2, format!("cannot parse extent '{s}'"));
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(bad)?;
        let d: BigInt = den.trim().parse().map_err(bad)?;
        if d == BigInt::from(0) {
            return Err(err(2, "zero denominator in extent"));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let digits = frac.len() as u32;
        let combined = format!("{whole}{frac}");
        let n: BigInt = combined.parse().map_err(bad)?;
        return Ok(BigRational::new(n, BigInt::from(10u32).pow(digits)));
    }
    let n: BigInt = s.parse().map_err(bad)?;
    Ok(BigRational::from_integer(n))
}

pub fn parse_volume(spec: &str) -> Result<BuildVolume, CliError> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 3 {
        return Err(err(2, format!("--volume expects R1,R2,R3, got '{spec}'")));
    }
    let r1 = parse_extent(parts[0])?;
    let r2 = parse_extent(parts[1])?;
    let r3 = parse_extent(parts[2])?;
    BuildVolume::new([r1, r2, r3]).map_err(|e| err(2, e))
}

fn write_out(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| io_error("creating output directory", e))?;
    }
    fs::write(path, bytes).map_err(|e| io_error(&format!("writing {}", path.display()), e))
}

fn to_json(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn maybe_save_model(
    surface: &CubicSurface,
    out: &Option<PathBuf>,
    name: &str,
) -> Result<(), CliError> {
    if let Some(dir) = out {
        let doc = json::model_doc(surface);
        write_out(&dir.join(name), to_json(&doc).as_bytes())?;
    }
    Ok(())
}

/// Prints the projective (or affine) cubic equation.
pub fn cmd_cubic(
    source: &PointsSource,
    affine: bool,
    json_mode: bool,
    out: &Option<PathBuf>,
) -> Result<String, CliError> {
    let surface = load_surface(source)?;
    maybe_save_model(&surface, out, "cubic.json")?;
    if json_mode {
        return Ok(to_json(&json::model_doc(&surface)));
    }
    let poly = if affine {
        &surface.model.f_affine
    } else {
        &surface.model.f_p3
    };
    Ok(format!("{poly}\n"))
}

/// Prints the 27 lines (implicit and parametric) and the Eckardt points.
pub fn cmd_lines(
    source: &PointsSource,
    affine: bool,
    json_mode: bool,
    out: &Option<PathBuf>,
) -> Result<String, CliError> {
    let surface = load_surface(source)?;
    maybe_save_model(&surface, out, "lines.json")?;
    if json_mode {
        return Ok(to_json(&json::model_doc(&surface)));
    }
    let mut s = text::lines_text(&surface, affine);
    s.push('\n');
    s.push_str(&text::eckardt_text(&surface, affine));
    Ok(s)
}

/// Prints the Eckardt points.
pub fn cmd_eckardt(
    source: &PointsSource,
    affine: bool,
    json_mode: bool,
    out: &Option<PathBuf>,
) -> Result<String, CliError> {
    let surface = load_surface(source)?;
    maybe_save_model(&surface, out, "eckardt.json")?;
    if json_mode {
        return Ok(to_json(&json::model_doc(&surface)));
    }
    Ok(text::eckardt_text(&surface, affine))
}

#[derive(Debug, Clone)]
pub struct ArtifactConfig {
    pub volume: BuildVolume,
    pub thickness: Option<f64>,
    pub cylinder_radius: Option<f64>,
    pub resolution: u32,
    pub format: MeshFormat,
    pub highlight: HighlightMode,
    pub all_distances: bool,
    pub out_dir: PathBuf,
}

#[derive(serde::Serialize)]
struct ArtifactSummary {
    schema: &'static str,
    mesh_path: String,
    mesh_bytes: u64,
    triangle_count: usize,
    report_path: String,
    quality: json::QualityDoc,
}

/// Builds the full artifact: mesh file, measurement report (JSON + text)
/// and the mesh quality summary.
pub fn cmd_artifact(
    source: &PointsSource,
    config: &ArtifactConfig,
    json_mode: bool,
) -> Result<String, CliError> {
    let surface = load_surface(source)?;
    let report = build_report(
        &surface,
        &config.volume,
        ReportOptions {
            include_all_distances: config.all_distances,
        },
    )
    .map_err(|e| err(2, e))?;

    let box_half = config.volume.half_extents_f64();
    let mut spec = ShellSpec::defaults(box_half);
    spec.resolution = config.resolution;
    spec.highlight = config.highlight;
    if let Some(t) = config.thickness {
        spec.half_thickness = t / 2.0;
        if config.cylinder_radius.is_none() {
            spec.cylinder_radius = spec.half_thickness * 2.0;
        }
    }
    if let Some(r) = config.cylinder_radius {
        spec.cylinder_radius = r;
    }
    let (f_scaled, scaled_lines) =
        cubic_core::metrology::scale_to_volume(&surface, &config.volume).map_err(|e| err(2, e))?;
    let field = ShapeField::build(&f_scaled, &scaled_lines, spec.clone()).map_err(mesh_error)?;
    let mesh = contour(&|p| field.clipped(p), &spec).map_err(mesh_error)?;
    let quality = mesh_report(&mesh, &field);

    let mesh_name = format!("artifact.{}", config.format.extension());
    let mesh_path = config.out_dir.join(&mesh_name);
    if let Some(dir) = mesh_path.parent() {
        fs::create_dir_all(dir).map_err(|e| io_error("creating output directory", e))?;
    }
    let mut mesh_bytes_buf = Vec::new();
    let mesh_bytes = write_mesh(&mesh, config.format, &mut mesh_bytes_buf)
        .map_err(|e| err(7, format!("{e:#}")))?;
    write_out(&mesh_path, &mesh_bytes_buf)?;

    let report_path = config.out_dir.join("report.json");
    write_out(&report_path, to_json(&json::report_doc(&report)).as_bytes())?;
    write_out(
        &config.out_dir.join("report.txt"),
        text::report_text(&report).as_bytes(),
    )?;

    let quality_doc = json::quality_doc(
        &quality,
        spec.resolution,
        spec.half_thickness,
        spec.cylinder_radius,
    );
    write_out(
        &config.out_dir.join("quality.json"),
        to_json(&quality_doc).as_bytes(),
    )?;

    let summary = ArtifactSummary {
        schema: "cubic-artifact-summary/1",
        mesh_path: mesh_path.display().to_string(),
        mesh_bytes,
        triangle_count: mesh.triangles.len(),
        report_path: report_path.display().to_string(),
        quality: quality_doc,
    };
    if json_mode {
        Ok(to_json(&summary))
    } else {
        Ok(format!(
            "wrote {} ({} bytes, {} triangles, watertight: {})\nwrote {}\nwrote {}\nwrote {}\n",
            mesh_path.display(),
            mesh_bytes,
            mesh.triangles.len(),
            quality.watertight,
            report_path.display(),
            config.out_dir.join("report.txt").display(),
            config.out_dir.join("quality.json").display(),
        ))
    }
}

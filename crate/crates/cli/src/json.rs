//! Schema-versioned JSON documents: the surface model, the measurement
//! report and the mesh quality summary. Exact values are expression
//! strings; float mirrors are rounded to a fixed number of significant
//! digits so output bytes are stable.

use cubic_core::mesher::MeshQuality;
use cubic_core::metrology::MeasurementReport;
use cubic_core::numfield::FieldElement;
use cubic_core::surface::{AffineLineForms, CubicSurface, EckardtPosition, PlaneKind};
use serde::Serialize;

pub const MODEL_SCHEMA: &str = "cubic-surface-model/1";
pub const REPORT_SCHEMA: &str = "cubic-surface-report/1";
pub const QUALITY_SCHEMA: &str = "cubic-mesh-quality/1";

/// Rounds to `sig` significant digits for stable, readable JSON numbers.
pub fn round_sig(x: f64, sig: i32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", (sig - 1).max(0) as usize, x)
        .parse()
        .unwrap_or(x)
}

fn exact(e: &FieldElement) -> String {
    e.to_string()
}

fn exact3(v: &[FieldElement; 3]) -> [String; 3] {
    core::array::from_fn(|k| exact(&v[k]))
}

fn float3(v: &[FieldElement; 3], sig: i32) -> [f64; 3] {
    core::array::from_fn(|k| round_sig(v[k].to_f64(), sig))
}

#[derive(Serialize)]
pub struct ModelDoc {
    pub schema: &'static str,
    pub field_radicands: Vec<u64>,
    pub points: Vec<[String; 3]>,
    pub a_vector: [String; 6],
    pub pivot_pair: [usize; 2],
    pub cubic_projective: String,
    pub cubic_affine: String,
    pub planes: Vec<PlaneDoc>,
    pub lines: Vec<LineDoc>,
    pub eckardt_points: Vec<EckardtDoc>,
    pub lines_at_infinity: Vec<usize>,
}

#[derive(Serialize)]
pub struct PlaneDoc {
    pub index: usize,
    pub kind: String,
    pub form: String,
    pub lines: Vec<usize>,
    pub generic: bool,
}

#[derive(Serialize)]
pub struct LineDoc {
    pub index: usize,
    pub implicit_projective: [String; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub implicit_affine: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub param_base: Option<[String; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub param_base_f64: Option<[f64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub param_direction: Option<[String; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub param_direction_f64: Option<[f64; 3]>,
    pub at_infinity: bool,
    pub planes: Vec<usize>,
}

#[derive(Serialize)]
pub struct EckardtDoc {
    pub index: usize,
    pub coords_projective: [String; 4],
    pub position: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub affine: Option<[String; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub affine_f64: Option<[f64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub infinity_coords: Option<[String; 4]>,
    pub lines: [usize; 3],
    pub plane: usize,
}

/// Model floats carry 15 significant digits.
const MODEL_SIG: i32 = 15;
/// Report floats carry 12 significant digits.
const REPORT_SIG: i32 = 12;

pub fn model_doc(surface: &CubicSurface) -> ModelDoc {
    let model = &surface.model;
    let planes = surface
        .planes
        .iter()
        .enumerate()
        .map(|(index, p)| PlaneDoc {
            index,
            kind: match p.kind {
                PlaneKind::Pair(i, j) => format!("pair({i},{j})"),
                PlaneKind::Cycle(c) => format!(
                    "cycle(({},{}),({},{}),({},{}))",
                    c[0].0, c[0].1, c[1].0, c[1].1, c[2].0, c[2].1
                ),
            },
            form: p.form_p5.to_string(),
            lines: p.line_indices.clone(),
            generic: p.is_generic,
        })
        .collect();
    let lines = surface
        .lines
        .iter()
        .enumerate()
        .map(|(index, l)| {
            let implicit_affine = match &l.implicit_affine {
                AffineLineForms::Affine(forms) => {
                    Some(core::array::from_fn(|k| forms[k].to_string()))
                }
                AffineLineForms::AtInfinity => None,
            };
            let (pb, pbf, pd, pdf) = match &l.param_affine {
                Some(p) => (
                    Some(exact3(&p.base)),
                    Some(float3(&p.base, MODEL_SIG)),
                    Some(exact3(&p.direction)),
                    Some(float3(&p.direction, MODEL_SIG)),
                ),
                None => (None, None, None, None),
            };
            LineDoc {
                index,
                implicit_projective: core::array::from_fn(|k| l.implicit_p3[k].to_string()),
                implicit_affine,
                param_base: pb,
                param_base_f64: pbf,
                param_direction: pd,
                param_direction_f64: pdf,
                at_infinity: l.param_affine.is_none(),
                planes: l.parent_planes.clone(),
            }
        })
        .collect();
    let eckardt_points = surface
        .eckardt
        .iter()
        .enumerate()
        .map(|(index, e)| {
            let coords_projective: [String; 4] = core::array::from_fn(|k| exact(&e.coords_p3[k]));
            let (position, affine, affine_f64, infinity_coords) = match &e.affine {
                EckardtPosition::Affine(p) => (
                    "affine".to_string(),
                    Some(exact3(p)),
                    Some(float3(p, MODEL_SIG)),
                    None,
                ),
                EckardtPosition::AtInfinity(p) => (
                    "infinity".to_string(),
                    None,
                    None,
                    Some(core::array::from_fn(|k| exact(&p[k]))),
                ),
            };
            EckardtDoc {
                index,
                coords_projective,
                position,
                affine,
                affine_f64,
                infinity_coords,
                lines: e.line_indices,
                plane: e.plane_index,
            }
        })
        .collect();
    ModelDoc {
        schema: MODEL_SCHEMA,
        field_radicands: model.chart_field.radicands().to_vec(),
        points: model
            .points
            .iter()
            .map(|p| core::array::from_fn(|k| exact(&p.coords()[k])))
            .collect(),
        a_vector: core::array::from_fn(|k| exact(&model.a_vector[k])),
        pivot_pair: [model.pivot_pair.0, model.pivot_pair.1],
        cubic_projective: model.f_p3.to_string(),
        cubic_affine: model.f_affine.to_string(),
        planes,
        lines,
        eckardt_points,
        lines_at_infinity: surface.lines_at_infinity.clone(),
    }
}

#[derive(Serialize)]
pub struct ReportDoc {
    pub schema: &'static str,
    pub volume_half_extents: [f64; 3],
    pub cubic_scaled: String,
    pub lines: Vec<ScaledLineDoc>,
    pub intersections: Vec<IntersectionDoc>,
    pub angles: Vec<AngleDoc>,
    pub distances: Vec<DistanceDoc>,
    pub eckardt_records: Vec<usize>,
    pub excluded_lines_at_infinity: Vec<usize>,
    pub out_of_volume_records: usize,
}

#[derive(Serialize)]
pub struct ScaledLineDoc {
    pub line: usize,
    pub implicit: [String; 2],
    pub param_base: [String; 3],
    pub param_base_f64: [f64; 3],
    pub param_direction: [String; 3],
    pub param_direction_f64: [f64; 3],
}

#[derive(Serialize)]
pub struct IntersectionDoc {
    pub index: usize,
    pub point: [String; 3],
    pub point_f64: [f64; 3],
    pub lines: Vec<usize>,
    pub eckardt: bool,
}

#[derive(Serialize)]
pub struct AngleDoc {
    pub record: usize,
    pub line_a: usize,
    pub line_b: usize,
    pub degrees: f64,
}

#[derive(Serialize)]
pub struct DistanceDoc {
    pub record_a: usize,
    pub record_b: usize,
    pub shared_lines: Vec<usize>,
    pub line_connected: bool,
    pub length: f64,
}

pub fn report_doc(report: &MeasurementReport) -> ReportDoc {
    ReportDoc {
        schema: REPORT_SCHEMA,
        volume_half_extents: report
            .volume
            .half_extents_f64()
            .map(|x| round_sig(x, REPORT_SIG)),
        cubic_scaled: report.f_scaled.to_string(),
        lines: report
            .lines
            .iter()
            .map(|l| ScaledLineDoc {
                line: l.index,
                implicit: core::array::from_fn(|k| l.implicit[k].to_string()),
                param_base: exact3(&l.param.base),
                param_base_f64: l.base_f64.map(|x| round_sig(x, REPORT_SIG)),
                param_direction: exact3(&l.param.direction),
                param_direction_f64: l.direction_f64.map(|x| round_sig(x, REPORT_SIG)),
            })
            .collect(),
        intersections: report
            .intersections
            .iter()
            .enumerate()
            .map(|(index, r)| IntersectionDoc {
                index,
                point: exact3(&r.point),
                point_f64: r.point_f64.map(|x| round_sig(x, REPORT_SIG)),
                lines: r.concurring_lines.clone(),
                eckardt: r.is_eckardt,
            })
            .collect(),
        angles: report
            .angles
            .iter()
            .map(|a| AngleDoc {
                record: a.record,
                line_a: a.line_a,
                line_b: a.line_b,
                degrees: round_sig(a.degrees, REPORT_SIG),
            })
            .collect(),
        distances: report
            .distances
            .iter()
            .map(|d| DistanceDoc {
                record_a: d.record_a,
                record_b: d.record_b,
                shared_lines: d.shared_lines.clone(),
                line_connected: d.line_connected,
                length: round_sig(d.length, REPORT_SIG),
            })
            .collect(),
        eckardt_records: report.eckardt_records.clone(),
        excluded_lines_at_infinity: report.excluded_lines.clone(),
        out_of_volume_records: report.out_of_volume_records,
    }
}

#[derive(Serialize)]
pub struct QualityDoc {
    pub schema: &'static str,
    pub watertight: bool,
    pub open_edge_count: usize,
    pub triangle_count: usize,
    pub vertex_count: usize,
    pub max_shell_residual: f64,
    pub bbox_min: [f64; 3],
    pub bbox_max: [f64; 3],
    pub resolution: u32,
    pub half_thickness: f64,
    pub cylinder_radius: f64,
}

pub fn quality_doc(
    q: &MeshQuality,
    resolution: u32,
    half_thickness: f64,
    cylinder_radius: f64,
) -> QualityDoc {
    QualityDoc {
        schema: QUALITY_SCHEMA,
        watertight: q.watertight,
        open_edge_count: q.open_edges.len(),
        triangle_count: q.triangle_count,
        vertex_count: q.vertex_count,
        max_shell_residual: round_sig(q.max_shell_residual, REPORT_SIG),
        bbox_min: q.bbox_min.map(|x| round_sig(x, REPORT_SIG)),
        bbox_max: q.bbox_max.map(|x| round_sig(x, REPORT_SIG)),
        resolution,
        half_thickness,
        cylinder_radius,
    }
}

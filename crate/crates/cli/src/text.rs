//! Human-readable renderings of the pipeline outputs.

use std::fmt::Write as _;

use cubic_core::metrology::MeasurementReport;
use cubic_core::numfield::FieldElement;
use cubic_core::surface::{AffineLineForms, CubicSurface, EckardtPosition};

fn coords_line(coords: &[FieldElement]) -> String {
    let parts: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
    parts.join(" : ")
}

fn tuple_line(coords: &[FieldElement]) -> String {
    let parts: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub fn lines_text(surface: &CubicSurface, affine: bool) -> String {
    let mut out = String::new();
    for (i, line) in surface.lines.iter().enumerate() {
        if affine {
            match (&line.implicit_affine, &line.param_affine) {
                (AffineLineForms::Affine(forms), Some(param)) => {
                    let _ = writeln!(
                        out,
                        "line {i}: {} = 0, {} = 0 | base {} direction {}",
                        forms[0],
                        forms[1],
                        tuple_line(&param.base),
                        tuple_line(&param.direction),
                    );
                }
                _ => {
                    let _ = writeln!(out, "line {i}: at infinity in this chart");
                }
            }
        } else {
            let _ = writeln!(
                out,
                "line {i}: {} = 0, {} = 0 | planes {:?}",
                line.implicit_p3[0], line.implicit_p3[1], line.parent_planes
            );
        }
    }
    out
}

pub fn eckardt_text(surface: &CubicSurface, affine: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "eckardt points: {}", surface.eckardt.len());
    for (i, e) in surface.eckardt.iter().enumerate() {
        if affine {
            match &e.affine {
                EckardtPosition::Affine(p) => {
                    let _ = writeln!(out, "e{i}: {} | lines {:?}", tuple_line(p), e.line_indices);
                }
                EckardtPosition::AtInfinity(p) => {
                    let _ = writeln!(
                        out,
                        "e{i}: at infinity ({}) | lines {:?}",
                        coords_line(p),
                        e.line_indices
                    );
                }
            }
        } else {
            let _ = writeln!(
                out,
                "e{i}: ({}) | lines {:?}",
                coords_line(&e.coords_p3),
                e.line_indices
            );
        }
    }
    out
}

pub fn report_text(report: &MeasurementReport) -> String {
    let mut out = String::new();
    let r = report.volume.half_extents_f64();
    let _ = writeln!(
        out,
        "measurement report | volume [-{0},{0}]x[-{1},{1}]x[-{2},{2}]",
        r[0], r[1], r[2]
    );
    let _ = writeln!(out, "scaled cubic: {} = 0", report.f_scaled);
    if report.out_of_volume_records > 0 {
        let _ = writeln!(
            out,
            "note: {} crossings outside the build volume omitted",
            report.out_of_volume_records
        );
    }
    if !report.excluded_lines.is_empty() {
        let _ = writeln!(
            out,
            "note: lines at infinity excluded: {:?}",
            report.excluded_lines
        );
    }
    let _ = writeln!(out, "\nlines ({}):", report.lines.len());
    for l in &report.lines {
        let _ = writeln!(
            out,
            "  line {:2}: {} = 0, {} = 0 | base {} direction {}",
            l.index,
            l.implicit[0],
            l.implicit[1],
            tuple_line(&l.param.base),
            tuple_line(&l.param.direction)
        );
    }
    let _ = writeln!(
        out,
        "\nintersections ({}, {} eckardt):",
        report.intersections.len(),
        report.eckardt_records.len()
    );
    for (i, rec) in report.intersections.iter().enumerate() {
        let _ = writeln!(
            out,
            "  p{:3}: ({:.12}, {:.12}, {:.12}) lines {:?}{}",
            i,
            rec.point_f64[0],
            rec.point_f64[1],
            rec.point_f64[2],
            rec.concurring_lines,
            if rec.is_eckardt { " [eckardt]" } else { "" }
        );
    }
    let _ = writeln!(out, "\nangles ({}):", report.angles.len());
    for a in &report.angles {
        let _ = writeln!(
            out,
            "  p{:3}: lines {:2} / {:2} -> {:.9} deg",
            a.record, a.line_a, a.line_b, a.degrees
        );
    }
    let _ = writeln!(
        out,
        "\nline-connected distances ({}):",
        report.distances.len()
    );
    for d in &report.distances {
        let _ = writeln!(
            out,
            "  p{:3} - p{:3} along {:?}: {:.9}",
            d.record_a, d.record_b, d.shared_lines, d.length
        );
    }
    out
}

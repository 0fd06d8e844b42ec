//! Measurement data of the preset surface: intersection graph, reference
//! angles and distances, and build-volume scaling behavior.

use cubic_core::metrology::*;
use cubic_core::numfield::FieldElement;
use cubic_core::surface::{build_surface, clebsch_preset, CubicSurface};

fn surface() -> CubicSurface {
    build_surface(clebsch_preset()).unwrap()
}

fn reference_report(s: &CubicSurface) -> MeasurementReport {
    build_report(s, &BuildVolume::cube(6).unwrap(), ReportOptions::default()).unwrap()
}

#[test]
fn eckardt_records_match_the_chart() {
    let s = surface();
    let rep = reference_report(&s);
    assert_eq!(rep.lines.len(), 27);
    assert_eq!(rep.excluded_lines.len(), 0);
    // seven Eckardt points are visible in the chart
    assert_eq!(rep.eckardt_records.len(), 7);
    for &ri in &rep.eckardt_records {
        assert_eq!(rep.intersections[ri].concurring_lines.len(), 3);
    }
    // the record at (0,0,1) exists and has exactly three concurring lines
    let field = s.model.chart_field.clone();
    let target = [field.zero(), field.zero(), field.one()];
    let rec = rep
        .intersections
        .iter()
        .find(|r| r.point == target)
        .expect("record at (0,0,1)");
    assert!(rec.is_eckardt);
}

#[test]
fn every_intersection_lies_on_the_scaled_cubic_exactly() {
    let s = surface();
    for volume in [
        BuildVolume::cube(6).unwrap(),
        BuildVolume::from_integers([12, 12, 12]).unwrap(),
        BuildVolume::from_integers([6, 6, 12]).unwrap(),
    ] {
        let rep = build_report(&s, &volume, ReportOptions::default()).unwrap();
        for rec in &rep.intersections {
            let v = rep.f_scaled.evaluate(&rec.point).unwrap();
            assert!(v.is_zero());
            // and on every concurring line's implicit forms
            for &li in &rec.concurring_lines {
                let line = rep.lines.iter().find(|l| l.index == li).unwrap();
                for form in &line.implicit {
                    assert!(form.poly().evaluate(&rec.point).unwrap().is_zero());
                }
            }
        }
    }
}

#[test]
fn reference_cube_scaling_is_identity() {
    let s = surface();
    let (f6, lines6) = scale_to_volume(&s, &BuildVolume::cube(6).unwrap()).unwrap();
    assert_eq!(f6, s.model.f_affine);
    for (scaled, line) in lines6.iter().zip(s.lines.iter()) {
        let p = line.param_affine.as_ref().unwrap();
        assert_eq!(scaled.param.base, p.base);
        assert_eq!(scaled.param.direction, p.direction);
    }
}

#[test]
fn uniform_scaling_moves_points_proportionally() {
    let s = surface();
    let rep6 = reference_report(&s);
    let rep60 = build_report(
        &s,
        &BuildVolume::from_integers([60, 60, 60]).unwrap(),
        ReportOptions::default(),
    )
    .unwrap();
    assert_eq!(rep6.intersections.len(), rep60.intersections.len());
    let field = s.model.chart_field.clone();
    let ten = field.from_integer(10);
    for (a, b) in rep6.intersections.iter().zip(rep60.intersections.iter()) {
        assert_eq!(a.concurring_lines, b.concurring_lines);
        for k in 0..3 {
            assert_eq!(a.point[k].mul(&ten), b.point[k]);
        }
    }
    // isotropic scaling leaves every angle unchanged
    for (a, b) in rep6.angles.iter().zip(rep60.angles.iter()) {
        assert_eq!((a.line_a, a.line_b), (b.line_a, b.line_b));
        assert!((a.degrees - b.degrees).abs() < 1e-9);
    }
}

#[test]
fn anisotropic_scaling_preserves_incidence_but_changes_angles() {
    let s = surface();
    let rep6 = reference_report(&s);
    let aniso = build_report(
        &s,
        &BuildVolume::from_integers([6, 6, 12]).unwrap(),
        ReportOptions::default(),
    )
    .unwrap();
    // incidence structure is invariant under invertible diagonal maps
    let pairs = |rep: &MeasurementReport| -> Vec<Vec<usize>> {
        rep.intersections
            .iter()
            .map(|r| r.concurring_lines.clone())
            .collect()
    };
    let mut p6 = pairs(&rep6);
    let mut pa = pairs(&aniso);
    p6.sort();
    pa.sort();
    assert_eq!(p6, pa);
    // at least one angle differs
    let changed = rep6
        .angles
        .iter()
        .zip(aniso.angles.iter())
        .any(|(x, y)| (x.degrees - y.degrees).abs() > 1e-6);
    assert!(changed);
}

#[test]
fn reference_distance_along_a_shared_line() {
    let s = surface();
    let rep = reference_report(&s);
    let field = s.model.chart_field.clone();
    let sqrt2 = field.sqrt_radicand(0);
    // the Eckardt points (0,0,1) and (2/sqrt2, 0, -1) share a line
    let p1 = [field.zero(), field.zero(), field.one()];
    let p2 = [
        field.from_integer(2).div(&sqrt2).unwrap(),
        field.zero(),
        field.from_integer(-1),
    ];
    let r1 = rep
        .intersections
        .iter()
        .position(|r| r.point == p1)
        .unwrap();
    let r2 = rep
        .intersections
        .iter()
        .position(|r| r.point == p2)
        .unwrap();
    let (d, shared) = distance_between(&rep.intersections[r1], &rep.intersections[r2]);
    assert!(!shared.is_empty());
    assert!((d - 6.0f64.sqrt()).abs() < 1e-9);
    // the record pair is in the report with the same length
    let rec = rep
        .distances
        .iter()
        .find(|x| (x.record_a == r1 && x.record_b == r2) || (x.record_a == r2 && x.record_b == r1))
        .expect("line-connected pair reported");
    assert!(rec.line_connected);
    assert!((rec.length - d).abs() == 0.0);
    // doubling the volume doubles the distance
    let rep12 = build_report(
        &s,
        &BuildVolume::from_integers([12, 12, 12]).unwrap(),
        ReportOptions::default(),
    )
    .unwrap();
    let q1: [FieldElement; 3] = core::array::from_fn(|k| p1[k].mul(&field.from_integer(2)));
    let q2: [FieldElement; 3] = core::array::from_fn(|k| p2[k].mul(&field.from_integer(2)));
    let s1 = rep12.intersections.iter().find(|r| r.point == q1).unwrap();
    let s2 = rep12.intersections.iter().find(|r| r.point == q2).unwrap();
    let (d2, _) = distance_between(s1, s2);
    assert!((d2 - 2.0 * 6.0f64.sqrt()).abs() < 1e-9);
}

#[test]
fn distances_are_symmetric_and_satisfy_triangle_inequality() {
    let s = surface();
    let rep = reference_report(&s);
    // symmetry
    for rec in rep.distances.iter().take(400) {
        let (d, _) = distance_between(
            &rep.intersections[rec.record_b],
            &rep.intersections[rec.record_a],
        );
        assert_eq!(d, rec.length);
    }
    // triangle inequality on line-connected triples along each line
    for line in rep.lines.iter().take(6) {
        let on_line: Vec<usize> = rep
            .intersections
            .iter()
            .enumerate()
            .filter(|(_, r)| r.concurring_lines.contains(&line.index))
            .map(|(i, _)| i)
            .collect();
        for a in 0..on_line.len() {
            for b in a + 1..on_line.len() {
                for c in b + 1..on_line.len() {
                    let d = |x: usize, y: usize| {
                        distance_between(&rep.intersections[x], &rep.intersections[y]).0
                    };
                    let (ab, bc, ac) = (
                        d(on_line[a], on_line[b]),
                        d(on_line[b], on_line[c]),
                        d(on_line[a], on_line[c]),
                    );
                    assert!(ab + bc >= ac - 1e-9);
                    assert!(ab + ac >= bc - 1e-9);
                    assert!(bc + ac >= ab - 1e-9);
                }
            }
        }
    }
}

#[test]
fn angles_are_acute_and_positive() {
    let s = surface();
    let rep = reference_report(&s);
    assert!(!rep.angles.is_empty());
    for a in &rep.angles {
        assert!(a.degrees > 0.0 && a.degrees <= 90.0 + 1e-12);
    }
    for d in &rep.distances {
        assert!(d.length > 0.0);
    }
    // self-consistency: recompute from the report's own float directions
    let by_index: std::collections::BTreeMap<usize, &ScaledLine> =
        rep.lines.iter().map(|l| (l.index, l)).collect();
    for a in &rep.angles {
        let da = by_index[&a.line_a].direction_f64;
        let db = by_index[&a.line_b].direction_f64;
        let dot: f64 = (0..3).map(|k| da[k] * db[k]).sum();
        let na: f64 = (0..3).map(|k| da[k] * da[k]).sum::<f64>().sqrt();
        let nb: f64 = (0..3).map(|k| db[k] * db[k]).sum::<f64>().sqrt();
        let deg = (dot.abs() / (na * nb)).min(1.0).acos().to_degrees();
        assert!((deg - a.degrees).abs() < 1e-9);
    }
}

#[test]
fn parallel_table_lines_produce_no_record() {
    // rows 1 and 2 of the reference table are parallel: (s, 0, 1) and
    // (s, 2/sqrt2, 1)
    let s = surface();
    let rep = reference_report(&s);
    let field = s.model.chart_field.clone();
    // find those two lines among the scaled ones by their directions and
    // base points
    let dir_x = [field.one(), field.zero(), field.zero()];
    let xs: Vec<&ScaledLine> = rep
        .lines
        .iter()
        .filter(|l| l.param.direction == dir_x)
        .collect();
    assert_eq!(xs.len(), 3, "three lines parallel to the x axis");
    for a in 0..xs.len() {
        for b in a + 1..xs.len() {
            // no record lists both lines
            assert!(!rep.intersections.iter().any(|r| {
                r.concurring_lines.contains(&xs[a].index)
                    && r.concurring_lines.contains(&xs[b].index)
            }));
        }
    }
}

#[test]
fn report_is_deterministic() {
    let s = surface();
    let r1 = reference_report(&s);
    let r2 = reference_report(&s);
    assert_eq!(r1.intersections.len(), r2.intersections.len());
    for (a, b) in r1.intersections.iter().zip(r2.intersections.iter()) {
        assert_eq!(a.point, b.point);
        assert_eq!(a.concurring_lines, b.concurring_lines);
        assert_eq!(a.point_f64, b.point_f64);
    }
    for (a, b) in r1.angles.iter().zip(r2.angles.iter()) {
        assert_eq!(a.degrees.to_bits(), b.degrees.to_bits());
    }
    for (a, b) in r1.distances.iter().zip(r2.distances.iter()) {
        assert_eq!(a.length.to_bits(), b.length.to_bits());
    }
}

#[test]
fn rejects_non_positive_volume() {
    assert_eq!(
        BuildVolume::from_integers([6, 0, 6]),
        Err(MetrologyError::NonPositiveExtent)
    );
    assert_eq!(
        BuildVolume::from_integers([-6, 6, 6]),
        Err(MetrologyError::NonPositiveExtent)
    );
}

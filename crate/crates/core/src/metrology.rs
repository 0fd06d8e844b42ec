//! Measurement reference data for dimensional-accuracy validation: the
//! line intersection graph, angles at intersections, distances along
//! shared lines, and build-volume scaling.
//!
//! Intersections are solved exactly; angles and distances are floated at
//! the very end from exact values. All collections are kept in canonical
//! order so the assembled report is deterministic.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::numfield::{FieldDescriptor, FieldElement};
use crate::polyring::{LinearForm, MultiPoly};
use crate::surface::{y_affine_vars, AffineLineForms, AffineParam, CubicSurface};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MetrologyError {
    NonPositiveExtent,
}

impl fmt::Display for MetrologyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetrologyError::NonPositiveExtent => {
                write!(f, "build volume half-extents must be positive")
            }
        }
    }
}

impl core::error::Error for MetrologyError {}

/// Half-extents of the printable box `[-r1,r1] x [-r2,r2] x [-r3,r3]`,
/// exact so that scaling preserves the exact arithmetic path.
#[derive(Debug, Clone, PartialEq)]
pub struct BuildVolume {
    half_extents: [BigRational; 3],
}

impl BuildVolume {
    pub fn new(half_extents: [BigRational; 3]) -> Result<Self, MetrologyError> {
        if half_extents.iter().any(|r| !r.is_positive()) {
            return Err(MetrologyError::NonPositiveExtent);
        }
        Ok(BuildVolume { half_extents })
    }

    pub fn cube(r: i64) -> Result<Self, MetrologyError> {
        let q = BigRational::from_integer(BigInt::from(r));
        BuildVolume::new([q.clone(), q.clone(), q])
    }

    pub fn from_integers(r: [i64; 3]) -> Result<Self, MetrologyError> {
        BuildVolume::new(r.map(|v| BigRational::from_integer(BigInt::from(v))))
    }

    pub fn half_extents(&self) -> &[BigRational; 3] {
        &self.half_extents
    }

    pub fn half_extents_f64(&self) -> [f64; 3] {
        [
            rational_to_f64(&self.half_extents[0]),
            rational_to_f64(&self.half_extents[1]),
            rational_to_f64(&self.half_extents[2]),
        ]
    }

    /// Per-axis point scale `r_i / 6` (the reference data spans a cube of
    /// half-extent 6).
    fn point_scale(&self, field: &FieldDescriptor) -> [FieldElement; 3] {
        let six = BigRational::from_integer(6.into());
        core::array::from_fn(|i| field.from_rational(&self.half_extents[i] / &six))
    }
}

fn rational_to_f64(q: &BigRational) -> f64 {
    num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
}

/// A line of the scaled scene: implicit pair and canonical
/// parametrization in build units.
#[derive(Debug, Clone)]
pub struct ScaledLine {
    /// Index of the source line in the surface's line list.
    pub index: usize,
    pub implicit: [LinearForm; 2],
    pub param: AffineParam,
    pub direction_f64: [f64; 3],
    pub base_f64: [f64; 3],
}

/// A point where two or more lines cross. The exact coordinates satisfy
/// every concurring line's implicit equations.
#[derive(Debug, Clone)]
pub struct IntersectionRecord {
    pub line_a: usize,
    pub line_b: usize,
    pub point: [FieldElement; 3],
    pub point_f64: [f64; 3],
    /// All line indices through the point, ascending. Three entries mark
    /// an Eckardt point.
    pub concurring_lines: Vec<usize>,
    pub is_eckardt: bool,
}

/// Acute angle between two concurring lines at a record.
#[derive(Debug, Clone)]
pub struct AngleRecord {
    pub record: usize,
    pub line_a: usize,
    pub line_b: usize,
    pub degrees: f64,
}

/// Distance between two intersection points, measurable along a printed
/// line when they share one.
#[derive(Debug, Clone)]
pub struct DistanceRecord {
    pub record_a: usize,
    pub record_b: usize,
    pub shared_lines: Vec<usize>,
    pub line_connected: bool,
    pub length: f64,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ReportOptions {
    /// Also include distances between intersection points that do not
    /// share a line (not measurable along a printed edge).
    pub include_all_distances: bool,
}

/// The assembled measurement reference document.
#[derive(Debug, Clone)]
pub struct MeasurementReport {
    pub volume: BuildVolume,
    /// The affine cubic after scaling, vanishing on all scaled data.
    pub f_scaled: MultiPoly,
    pub lines: Vec<ScaledLine>,
    pub intersections: Vec<IntersectionRecord>,
    pub angles: Vec<AngleRecord>,
    pub distances: Vec<DistanceRecord>,
    /// Indices into `intersections` that are Eckardt points.
    pub eckardt_records: Vec<usize>,
    /// Lines excluded because the chart puts them at infinity.
    pub excluded_lines: Vec<usize>,
    /// Crossings dropped because they fall outside the build volume (they
    /// are not present on the printed part).
    pub out_of_volume_records: usize,
}

/// Scales every line of the surface into build units: implicit equations
/// receive `y_i -> y_i * 6 / r_i`, points and directions transform as
/// `y_i -> y_i * r_i / 6`. With the reference cube (r = 6) this is the
/// identity.
pub fn scale_to_volume(
    surface: &CubicSurface,
    volume: &BuildVolume,
) -> Result<(MultiPoly, Vec<ScaledLine>), MetrologyError> {
    let field = surface.model.chart_field.clone();
    let vars = y_affine_vars();
    let scale = volume.point_scale(&field);
    let six = BigRational::from_integer(6.into());
    let inv_scale: [MultiPoly; 3] = core::array::from_fn(|i| {
        let c = field.from_rational(&six / &volume.half_extents()[i]);
        MultiPoly::variable(&vars, &field, i).scale(&c)
    });

    let f_scaled = surface
        .model
        .f_affine
        .substitute(&inv_scale)
        .expect("three variables");

    let mut lines = Vec::new();
    for (index, line) in surface.lines.iter().enumerate() {
        let AffineLineForms::Affine(forms) = &line.implicit_affine else {
            continue;
        };
        let param = line.param_affine.as_ref().expect("visible line");
        let implicit: [LinearForm; 2] = core::array::from_fn(|k| {
            LinearForm::new(
                forms[k]
                    .poly()
                    .substitute(&inv_scale)
                    .expect("three variables"),
            )
            .expect("degree one")
        });
        let base: [FieldElement; 3] = core::array::from_fn(|k| param.base[k].mul(&scale[k]));
        let dir: [FieldElement; 3] = core::array::from_fn(|k| param.direction[k].mul(&scale[k]));
        let param = canonical_param(base, dir);
        let direction_f64 = core::array::from_fn(|k| param.direction[k].to_f64());
        let base_f64 = core::array::from_fn(|k| param.base[k].to_f64());
        lines.push(ScaledLine {
            index,
            implicit,
            param,
            direction_f64,
            base_f64,
        });
    }
    Ok((f_scaled, lines))
}

/// Largest-magnitude direction component scaled to 1, base slid so the
/// same component is 0.
fn canonical_param(base: [FieldElement; 3], dir: [FieldElement; 3]) -> AffineParam {
    let mut m = 0;
    for k in 1..3 {
        if dir[k].abs().cmp_real(&dir[m].abs()) == Ordering::Greater {
            m = k;
        }
    }
    let dinv = dir[m].inverse().expect("direction nonzero");
    let dir: [FieldElement; 3] = core::array::from_fn(|k| dir[k].mul(&dinv));
    let shift = base[m].clone();
    let base: [FieldElement; 3] = core::array::from_fn(|k| base[k].sub(&shift.mul(&dir[k])));
    AffineParam {
        base,
        direction: dir,
    }
}

/// Exact intersection of two affine lines, if they meet in a single point.
fn intersect(a: &AffineParam, b: &AffineParam) -> Option<[FieldElement; 3]> {
    let field = a.base[0].field().clone();
    // solve base_a + s d_a = base_b + t d_b
    let delta: [FieldElement; 3] = core::array::from_fn(|k| b.base[k].sub(&a.base[k]));
    // find two independent rows of the 3x2 system [d_a, -d_b]
    let rows: Vec<[FieldElement; 2]> = (0..3)
        .map(|k| [a.direction[k].clone(), b.direction[k].neg()])
        .collect();
    let mut pivot_rows = None;
    'search: for r0 in 0..3 {
        for r1 in r0 + 1..3 {
            let det = rows[r0][0]
                .mul(&rows[r1][1])
                .sub(&rows[r0][1].mul(&rows[r1][0]));
            if !det.is_zero() {
                pivot_rows = Some((r0, r1, det));
                break 'search;
            }
        }
    }
    let (r0, r1, det) = pivot_rows?; // rank 1: parallel, no single point
    let inv = det.inverse().expect("nonzero");
    let s = delta[r0]
        .mul(&rows[r1][1])
        .sub(&delta[r1].mul(&rows[r0][1]))
        .mul(&inv);
    let t = rows[r0][0]
        .mul(&delta[r1])
        .sub(&rows[r1][0].mul(&delta[r0]))
        .mul(&inv);
    // consistency of the remaining equation
    let third = 3 - r0 - r1;
    let lhs = a.direction[third].mul(&s).sub(&b.direction[third].mul(&t));
    if lhs != delta[third] {
        return None; // skew
    }
    let _ = field;
    Some(a.at(&s))
}

fn cmp_points(a: &[FieldElement; 3], b: &[FieldElement; 3]) -> Ordering {
    for k in 0..3 {
        match a[k].cmp_real(&b[k]) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// Builds the intersection graph of the scaled lines: every crossing pair
/// contributes to exactly one record; coincident crossing points are
/// merged with all concurring lines listed.
pub fn intersection_graph(lines: &[ScaledLine]) -> Vec<IntersectionRecord> {
    let mut found: Vec<([FieldElement; 3], Vec<usize>)> = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let Some(p) = intersect(&lines[i].param, &lines[j].param) else {
                continue;
            };
            match found
                .iter_mut()
                .find(|(q, _)| cmp_points(q, &p) == Ordering::Equal)
            {
                Some((_, members)) => {
                    for idx in [lines[i].index, lines[j].index] {
                        if !members.contains(&idx) {
                            members.push(idx);
                        }
                    }
                }
                None => {
                    found.push((p, alloc::vec![lines[i].index, lines[j].index]));
                }
            }
        }
    }
    found.sort_by(|(a, _), (b, _)| cmp_points(a, b));
    found
        .into_iter()
        .map(|(point, mut members)| {
            members.sort_unstable();
            let point_f64 = core::array::from_fn(|k| point[k].to_f64());
            IntersectionRecord {
                line_a: members[0],
                line_b: members[1],
                is_eckardt: members.len() == 3,
                concurring_lines: members,
                point,
                point_f64,
            }
        })
        .collect()
}

/// Acute angle between two affine directions, in degrees. Zero only for
/// parallel directions. The cosine is computed exactly and floated last,
/// so the result is accurate to well below 1e-9 degrees.
pub fn angle_between(a: &AffineParam, b: &AffineParam) -> f64 {
    let dot = (0..3).fold(a.base[0].field().zero(), |acc, k| {
        acc.add(&a.direction[k].mul(&b.direction[k]))
    });
    let na = (0..3).fold(a.base[0].field().zero(), |acc, k| {
        acc.add(&a.direction[k].square())
    });
    let nb = (0..3).fold(a.base[0].field().zero(), |acc, k| {
        acc.add(&b.direction[k].square())
    });
    if dot.is_zero() {
        return 90.0;
    }
    // cos^2 as an exact field element, then float
    let cos2 = dot.square().div(&na.mul(&nb)).expect("nonzero norms");
    let c = cos2.to_f64().min(1.0).max(0.0).sqrt();
    c.acos().to_degrees()
}

/// Euclidean distance between two records and whether they share a line.
pub fn distance_between(a: &IntersectionRecord, b: &IntersectionRecord) -> (f64, Vec<usize>) {
    let field = a.point[0].field().clone();
    let d2 = (0..3).fold(field.zero(), |acc, k| {
        acc.add(&a.point[k].sub(&b.point[k]).square())
    });
    let shared: Vec<usize> = a
        .concurring_lines
        .iter()
        .filter(|i| b.concurring_lines.contains(i))
        .copied()
        .collect();
    (d2.to_f64().max(0.0).sqrt(), shared)
}

/// Assembles the deterministic measurement document for a surface scaled
/// to a build volume.
pub fn build_report(
    surface: &CubicSurface,
    volume: &BuildVolume,
    options: ReportOptions,
) -> Result<MeasurementReport, MetrologyError> {
    let (f_scaled, lines) = scale_to_volume(surface, volume)?;
    let all_records = intersection_graph(&lines);
    // only crossings inside the box exist on the printed part
    let field = surface.model.chart_field.clone();
    let bounds: [FieldElement; 3] =
        core::array::from_fn(|k| field.from_rational(volume.half_extents()[k].clone()));
    let total = all_records.len();
    let intersections: Vec<IntersectionRecord> = all_records
        .into_iter()
        .filter(|rec| (0..3).all(|k| rec.point[k].abs().cmp_real(&bounds[k]) != Ordering::Greater))
        .collect();
    let out_of_volume_records = total - intersections.len();

    let by_index: alloc::collections::BTreeMap<usize, &ScaledLine> =
        lines.iter().map(|l| (l.index, l)).collect();

    let mut angles = Vec::new();
    for (ri, rec) in intersections.iter().enumerate() {
        for a in 0..rec.concurring_lines.len() {
            for b in a + 1..rec.concurring_lines.len() {
                let (la, lb) = (rec.concurring_lines[a], rec.concurring_lines[b]);
                angles.push(AngleRecord {
                    record: ri,
                    line_a: la,
                    line_b: lb,
                    degrees: angle_between(&by_index[&la].param, &by_index[&lb].param),
                });
            }
        }
    }

    let mut distances = Vec::new();
    for i in 0..intersections.len() {
        for j in i + 1..intersections.len() {
            let (length, shared) = distance_between(&intersections[i], &intersections[j]);
            let line_connected = !shared.is_empty();
            if line_connected || options.include_all_distances {
                distances.push(DistanceRecord {
                    record_a: i,
                    record_b: j,
                    shared_lines: shared,
                    line_connected,
                    length,
                });
            }
        }
    }

    let eckardt_records = intersections
        .iter()
        .enumerate()
        .filter(|(_, r)| r.is_eckardt)
        .map(|(i, _)| i)
        .collect();

    Ok(MeasurementReport {
        volume: volume.clone(),
        f_scaled,
        lines,
        intersections,
        angles,
        distances,
        eckardt_records,
        excluded_lines: surface.lines_at_infinity.clone(),
        out_of_volume_records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::make_field;

    fn param(field: &FieldDescriptor, base: [i64; 3], dir: [i64; 3]) -> AffineParam {
        AffineParam {
            base: base.map(|v| field.from_integer(v)),
            direction: dir.map(|v| field.from_integer(v)),
        }
    }

    #[test]
    fn angle_of_line_with_itself_is_zero() {
        let f = make_field(&[2]).unwrap();
        let l = param(&f, [0, 0, 0], [1, 2, 3]);
        assert_eq!(angle_between(&l, &l), 0.0);
    }

    #[test]
    fn reference_angles() {
        let f = make_field(&[2]).unwrap();
        let sqrt2 = f.sqrt_radicand(0);
        let inv_c = f.one().div(&sqrt2).unwrap();
        // (1,0,0) vs (1/sqrt2, 0, 1): arccos(1/sqrt3)
        let a = param(&f, [0, 0, 1], [1, 0, 0]);
        let b = AffineParam {
            base: [f.zero(), f.zero(), f.zero()],
            direction: [inv_c.clone(), f.zero(), f.one()],
        };
        let deg = angle_between(&a, &b);
        assert!((deg - 54.735_610_317_245_35).abs() < 1e-9);
        // (1/sqrt2,0,1) vs (-1/sqrt2,0,1): arccos(1/3)
        let c = AffineParam {
            base: [f.zero(), f.zero(), f.zero()],
            direction: [inv_c.neg(), f.zero(), f.one()],
        };
        let deg = angle_between(&b, &c);
        assert!((deg - 70.528_779_365_509_31).abs() < 1e-9);
    }

    #[test]
    fn skew_and_parallel_lines_do_not_intersect() {
        let f = make_field(&[2]).unwrap();
        let a = param(&f, [0, 0, 1], [1, 0, 0]);
        let b = param(&f, [0, 2, 1], [1, 0, 0]); // parallel
        assert!(intersect(&a, &b).is_none());
        let c = param(&f, [0, 1, 0], [0, 0, 1]); // skew with a
        assert!(intersect(&a, &c).is_none());
        let d = param(&f, [1, 0, 0], [0, 0, 1]); // meets a at (1,0,1)
        let p = intersect(&a, &d).unwrap();
        assert_eq!(p[0], f.one());
        assert!(p[1].is_zero());
        assert_eq!(p[2], f.one());
    }
}

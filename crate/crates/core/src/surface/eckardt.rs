//! Eckardt points: for each tritangent plane whose three lines meet in a
//! single point, that common point — in projective `x` coordinates and,
//! through the chart transform, in affine coordinates or at infinity.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::linalg::Matrix;
use crate::numfield::FieldElement;

use super::chart::AffineChart;
use super::{
    canonical_projective, projectively_equal, EckardtPoint, EckardtPosition, SurfaceError,
    SurfaceLine, TritangentPlane,
};

/// Intersection point of two coplanar lines in `P3`, if any.
fn intersect_lines(a: &SurfaceLine, b: &SurfaceLine) -> Option<[FieldElement; 4]> {
    let field = a.implicit_p3[0].poly().field().clone();
    let rows: Vec<Vec<FieldElement>> = a
        .implicit_p3
        .iter()
        .chain(b.implicit_p3.iter())
        .map(|f| f.coefficients())
        .collect();
    let ns = Matrix::from_rows(rows).nullspace(&field);
    if ns.len() != 1 {
        return None;
    }
    let pt = canonical_projective(&ns[0]);
    Some(pt.try_into().expect("four coordinates"))
}

/// Scans the planes, classifies each as generic or not, and returns the
/// Eckardt points in plane order.
pub fn eckardt_points(
    planes: &mut [TritangentPlane],
    lines: &[SurfaceLine],
    chart: &AffineChart,
) -> Result<Vec<EckardtPoint>, SurfaceError> {
    let mut out = Vec::new();
    for (pi, plane) in planes.iter_mut().enumerate() {
        let [la, lb, lc]: [usize; 3] =
            plane.line_indices.clone().try_into().map_err(|_| {
                SurfaceError::IncidenceMismatch("plane without 3 lines".to_string())
            })?;
        let pab = intersect_lines(&lines[la], &lines[lb]);
        let pac = intersect_lines(&lines[la], &lines[lc]);
        let pbc = intersect_lines(&lines[lb], &lines[lc]);
        let (Some(pab), Some(pac), Some(pbc)) = (pab, pac, pbc) else {
            return Err(SurfaceError::IncidenceMismatch(alloc::format!(
                "lines of tritangent plane {pi} do not pairwise intersect"
            )));
        };
        let concurrent = projectively_equal(&pab, &pac) && projectively_equal(&pab, &pbc);
        if !concurrent {
            plane.is_generic = true;
            continue;
        }
        plane.is_generic = false;

        // Position in the affine chart through the transform.
        let promoted: [FieldElement; 4] = [
            pab[0].promote(&chart.field)?,
            pab[1].promote(&chart.field)?,
            pab[2].promote(&chart.field)?,
            pab[3].promote(&chart.field)?,
        ];
        let y = chart.transform.apply_inverse(&promoted);
        let affine = if y[0].is_zero() {
            let canon = canonical_projective(&y);
            EckardtPosition::AtInfinity(canon.try_into().expect("four coordinates"))
        } else {
            let inv = y[0].inverse().expect("visible");
            EckardtPosition::Affine([y[1].mul(&inv), y[2].mul(&inv), y[3].mul(&inv)])
        };

        let mut idx = [la, lb, lc];
        idx.sort_unstable();
        out.push(EckardtPoint {
            coords_p3: pab,
            affine,
            line_indices: idx,
            plane_index: pi,
        });
    }
    Ok(out)
}

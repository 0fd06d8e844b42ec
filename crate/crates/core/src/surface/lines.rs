//! Extraction of the 27 lines: every line is the intersection of the two
//! hyperplanes with two tritangent planes, so candidates come from plane
//! pairs and are kept exactly when substituting their parametrization into
//! the sum of cubes vanishes identically. No factorization is involved;
//! the containment check guarantees correctness and the plane incidence
//! guarantees completeness.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::linalg::Matrix;
use crate::numfield::{FieldDescriptor, FieldElement};
use crate::polyring::{LinearForm, MultiPoly};

use super::eliminate::Elimination;
use super::{x3_vars, AffineLineForms, SurfaceError, SurfaceLine, TritangentPlane};

/// Dot of a linear-form coefficient vector with a point.
fn form_at(coeffs: &[FieldElement], point: &[FieldElement]) -> FieldElement {
    coeffs
        .iter()
        .zip(point)
        .fold(point[0].field().zero(), |acc, (c, x)| acc.add(&c.mul(x)))
}

/// Checks that the projective line spanned by `v`, `w` lies on the cubic
/// `sum x_i^3`: all four coefficients of the binary cubic in the
/// parameters must vanish.
fn on_sum_of_cubes(v: &[FieldElement], w: &[FieldElement], field: &FieldDescriptor) -> bool {
    let mut c30 = field.zero();
    let mut c21 = field.zero();
    let mut c12 = field.zero();
    let mut c03 = field.zero();
    for (vi, wi) in v.iter().zip(w) {
        let vv = vi.square();
        let ww = wi.square();
        c30 = c30.add(&vv.mul(vi));
        c21 = c21.add(&vv.mul(wi));
        c12 = c12.add(&vi.mul(&ww));
        c03 = c03.add(&ww.mul(wi));
    }
    c30.is_zero() && c21.is_zero() && c12.is_zero() && c03.is_zero()
}

/// Extracts the lines from all tritangent-plane pairs, fills the
/// plane/line incidence and the canonical `P3` implicit forms.
///
/// Plane-pair candidates are independent of one another; they are scanned
/// in canonical plane order so the resulting line numbering (first
/// discovery) is deterministic.
pub fn lines_on_cubic(
    a: &[FieldElement; 6],
    elim: &Elimination,
    planes: &mut [TritangentPlane],
) -> Result<Vec<SurfaceLine>, SurfaceError> {
    let field = a[0].field().clone();
    let ones: Vec<FieldElement> = (0..6).map(|_| field.one()).collect();
    let plane_coeffs: Vec<Vec<FieldElement>> =
        planes.iter().map(|p| p.form_p5.coefficients()).collect();

    let vars3 = x3_vars();
    let non_pivot: Vec<usize> = (0..6)
        .filter(|&r| r != elim.pivot_pair.0 && r != elim.pivot_pair.1)
        .collect();

    let mut lines: Vec<SurfaceLine> = Vec::new();
    let mut line_gens_p5: Vec<[Vec<FieldElement>; 2]> = Vec::new();
    let mut seen: BTreeMap<alloc::string::String, usize> = BTreeMap::new();

    for p in 0..planes.len() {
        for q in p + 1..planes.len() {
            let m = Matrix::from_rows(alloc::vec![
                ones.clone(),
                a.to_vec(),
                plane_coeffs[p].clone(),
                plane_coeffs[q].clone(),
            ]);
            let ns = m.nullspace(&field);
            if ns.len() != 2 {
                continue;
            }
            if !on_sum_of_cubes(&ns[0], &ns[1], &field) {
                continue;
            }
            // Canonical generators: reduced echelon form of the projected
            // P3 point pair.
            let mut point_mat = Matrix::from_rows(
                ns.iter()
                    .map(|v| non_pivot.iter().map(|&r| v[r].clone()).collect())
                    .collect(),
            );
            let pivots = point_mat.rref();
            if pivots.len() != 2 {
                return Err(SurfaceError::IncidenceMismatch(
                    "line projects to a point in P3".to_string(),
                ));
            }
            let g0: [FieldElement; 4] = point_mat.row(0).to_vec().try_into().expect("4");
            let g1: [FieldElement; 4] = point_mat.row(1).to_vec().try_into().expect("4");

            // Implicit pair: canonical echelon basis of the forms
            // vanishing on both generators.
            let span = Matrix::from_rows(alloc::vec![g0.to_vec(), g1.to_vec()]);
            let mut forms = Matrix::from_rows(span.nullspace(&field));
            forms.rref();
            let implicit: Vec<LinearForm> = (0..2)
                .map(|r| {
                    let poly = MultiPoly::from_terms(
                        &vars3,
                        &field,
                        (0..4).map(|c| {
                            let mut e = alloc::vec![0u32; 4];
                            e[c] = 1;
                            (e, forms.at(r, c).clone())
                        }),
                    );
                    LinearForm::new(poly).expect("degree one")
                })
                .collect();
            let key = alloc::format!("{};{}", implicit[0], implicit[1]);
            if seen.contains_key(&key) {
                continue;
            }
            seen.insert(key, lines.len());
            // Lift generators back to P5 through the elimination embedding.
            let lift = |g: &[FieldElement; 4]| -> Vec<FieldElement> {
                elim.p5_from_p3
                    .iter()
                    .map(|form| form.evaluate(g).expect("4 coords"))
                    .collect()
            };
            line_gens_p5.push([lift(&g0), lift(&g1)]);
            lines.push(SurfaceLine {
                points_p3: [g0, g1],
                implicit_p3: implicit.try_into().expect("two forms"),
                implicit_affine: AffineLineForms::AtInfinity, // filled by the chart
                param_affine: None,
                parent_planes: Vec::new(),
            });
        }
    }

    if lines.len() != 27 {
        return Err(SurfaceError::LineCountMismatch { found: lines.len() });
    }

    // Incidence: a plane contains a line iff its form vanishes on both
    // generators.
    for (li, gens) in line_gens_p5.iter().enumerate() {
        for (pi, coeffs) in plane_coeffs.iter().enumerate() {
            if form_at(coeffs, &gens[0]).is_zero() && form_at(coeffs, &gens[1]).is_zero() {
                lines[li].parent_planes.push(pi);
                planes[pi].line_indices.push(li);
            }
        }
        if lines[li].parent_planes.len() != 5 {
            return Err(SurfaceError::IncidenceMismatch(alloc::format!(
                "line {li} lies on {} planes instead of 5",
                lines[li].parent_planes.len()
            )));
        }
    }
    for (pi, plane) in planes.iter().enumerate() {
        if plane.line_indices.len() != 3 {
            return Err(SurfaceError::IncidenceMismatch(alloc::format!(
                "plane {pi} contains {} lines instead of 3",
                plane.line_indices.len()
            )));
        }
    }
    Ok(lines)
}

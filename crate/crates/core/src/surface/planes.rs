//! The 45 tritangent planes: 15 coordinate-pair planes `x_i + x_j = 0`
//! plus 30 planes indexed by 3-cycles of disjoint index pairs.
//!
//! A tritangent plane is a plane of the ambient projective 3-space, so two
//! hyperplane forms in `x0..x5` describe the same plane exactly when they
//! differ by a combination of the two hyperplane equations. Candidates are
//! therefore canonicalized modulo `sum x_i` and `sum a_i x_i` before
//! deduplication. The cycle formula does not pin down which representative
//! of a rotation class to use, so every ordered pair of disjoint 2-subsets
//! generates a candidate; the census is validated afterwards (45 distinct
//! planes, each containing exactly three of the extracted lines).

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::linalg::{det3, Matrix};
use crate::numfield::{FieldDescriptor, FieldElement};
use crate::polyring::{LinearForm, MultiPoly};

use super::{x5_vars, PlaneKind, PlanePoint, SurfaceError, TritangentPlane};

/// The fixed 2x2 determinant of point-determinant products entering the
/// 30-plane formula.
fn d2(points: &[PlanePoint; 6]) -> FieldElement {
    let d = |a: usize, b: usize, c: usize| {
        det3(
            points[a - 1].coords(),
            points[b - 1].coords(),
            points[c - 1].coords(),
        )
    };
    let e11 = d(3, 4, 1).mul(&d(5, 6, 1));
    let e12 = d(5, 3, 1).mul(&d(4, 6, 1));
    let e21 = d(3, 4, 2).mul(&d(5, 6, 2));
    let e22 = d(5, 3, 2).mul(&d(4, 6, 2));
    e11.mul(&e22).sub(&e12.mul(&e21))
}

/// `m_{i,j} = sum_{s<t} a_s a_t + 2 (a_i^2 + a_j^2 + a_i a_j)` over the
/// raw coefficient vector, 0-based indices.
fn m_coeff(a: &[FieldElement; 6], base: &FieldElement, i: usize, j: usize) -> FieldElement {
    let quad = a[i].square().add(&a[j].square()).add(&a[i].mul(&a[j]));
    base.add(&quad.add(&quad))
}

fn pair_form(field: &FieldDescriptor, i: usize, j: usize) -> MultiPoly {
    let vars = x5_vars();
    let mut ei = alloc::vec![0u32; 6];
    ei[i] = 1;
    let mut ej = alloc::vec![0u32; 6];
    ej[j] = 1;
    MultiPoly::from_terms(&vars, field, [(ei, field.one()), (ej, field.one())])
}

/// Canonicalizer for hyperplane forms modulo the span of the two
/// hyperplane equations.
struct QuotientCanon {
    field: FieldDescriptor,
    reducer: Matrix,
    pivots: Vec<usize>,
}

impl QuotientCanon {
    fn new(field: &FieldDescriptor, a: &[FieldElement; 6]) -> Self {
        let ones: Vec<FieldElement> = (0..6).map(|_| field.one()).collect();
        let mut reducer = Matrix::from_rows(alloc::vec![ones, a.to_vec()]);
        let pivots = reducer.rref();
        QuotientCanon {
            field: field.clone(),
            reducer,
            pivots,
        }
    }

    /// Unique monic representative of the plane's class, or `None` when the
    /// form lies in the span of the hyperplane equations.
    fn key(&self, form: &MultiPoly) -> Option<alloc::string::String> {
        let mut coeffs: Vec<FieldElement> = (0..6)
            .map(|i| {
                let mut e = alloc::vec![0u32; 6];
                e[i] = 1;
                form.coefficient(&e)
            })
            .collect();
        for (r, &pc) in self.pivots.iter().enumerate() {
            if coeffs[pc].is_zero() {
                continue;
            }
            let factor = coeffs[pc].clone();
            for c in 0..6 {
                coeffs[c] = coeffs[c].sub(&factor.mul(self.reducer.at(r, c)));
            }
        }
        if coeffs.iter().all(|c| c.is_zero()) {
            return None;
        }
        let vars = x5_vars();
        let reduced = MultiPoly::from_terms(
            &vars,
            &self.field,
            coeffs.into_iter().enumerate().map(|(i, c)| {
                let mut e = alloc::vec![0u32; 6];
                e[i] = 1;
                (e, c)
            }),
        );
        Some(reduced.monic().to_string())
    }
}

/// Builds the candidate tritangent planes and validates the census of 45.
/// Line incidence data is filled in later by the line extraction.
pub fn tritangent_planes(
    points: &[PlanePoint; 6],
    a_raw: &[FieldElement; 6],
    a_norm: &[FieldElement; 6],
) -> Result<Vec<TritangentPlane>, SurfaceError> {
    let field = points[0].coords()[0].field().clone();
    let canon = QuotientCanon::new(&field, a_norm);
    let mut planes = Vec::with_capacity(45);
    let mut seen: BTreeMap<alloc::string::String, usize> = BTreeMap::new();

    for i in 0..6 {
        for j in i + 1..6 {
            let form = pair_form(&field, i, j);
            let Some(key) = canon.key(&form) else {
                return Err(SurfaceError::PlaneCountMismatch { found: 0 });
            };
            if seen.contains_key(&key) {
                return Err(SurfaceError::PlaneCountMismatch {
                    found: planes.len(),
                });
            }
            seen.insert(key, planes.len());
            planes.push(TritangentPlane {
                form_p5: LinearForm::new(form).expect("degree one"),
                kind: PlaneKind::Pair(i, j),
                line_indices: Vec::new(),
                is_generic: true,
            });
        }
    }

    // The bracket determinant pairs with the m-values only after a fixed
    // convention correction: the row sums enter the quadratic forms at
    // one sixth of their raw scale and the determinant with opposite
    // sign, i.e. d2 -> -36 * d2 relative to raw row sums. The plane
    // census below validates the corrected formula on every input.
    let d2 = d2(points).scale_rational(&num_rational::BigRational::from_integer((-36).into()));
    let mut base = field.zero();
    for s in 0..6 {
        for t in s + 1..6 {
            base = base.add(&a_raw[s].mul(&a_raw[t]));
        }
    }

    let subsets: Vec<(usize, usize)> = (0..6)
        .flat_map(|i| ((i + 1)..6).map(move |j| (i, j)))
        .collect();

    // Candidates from every ordered pair of disjoint 2-subsets; the third
    // pair of the cycle is the complement and does not enter the formula.
    let mut cycle_planes: BTreeMap<alloc::string::String, (MultiPoly, PlaneKind)> = BTreeMap::new();
    for &(i, j) in &subsets {
        for &(k, l) in &subsets {
            if i == k || i == l || j == k || j == l {
                continue;
            }
            let rest: Vec<usize> = (0..6).filter(|&r| ![i, j, k, l].contains(&r)).collect();
            let kind = PlaneKind::Cycle([(i, j), (k, l), (rest[0], rest[1])]);
            let ca = m_coeff(a_raw, &base, i, j).sub(&d2);
            let cb = m_coeff(a_raw, &base, k, l).add(&d2);
            let form = pair_form(&field, i, j)
                .scale(&ca)
                .sub(&pair_form(&field, k, l).scale(&cb));
            let Some(key) = canon.key(&form) else {
                continue; // degenerate candidate
            };
            if seen.contains_key(&key) {
                continue; // coincides with a pair plane
            }
            cycle_planes.entry(key).or_insert((form, kind));
        }
    }

    for (key, (form, kind)) in cycle_planes {
        seen.insert(key, planes.len());
        planes.push(TritangentPlane {
            form_p5: LinearForm::new(form).expect("degree one"),
            kind,
            line_indices: Vec::new(),
            is_generic: true,
        });
    }

    if planes.len() != 45 {
        return Err(SurfaceError::PlaneCountMismatch {
            found: planes.len(),
        });
    }
    Ok(planes)
}

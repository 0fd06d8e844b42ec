//! The fixed coordinate change into the affine chart in which (for the
//! preset configuration and nearby ones) all 27 lines are visible, plus
//! the derived affine data: the affine cubic, line equations and
//! parametrizations.
//!
//! The transform needs `sqrt(2)`, so the model field is extended here when
//! the input points were rational.

use alloc::vec::Vec;

use num_rational::BigRational;

use crate::numfield::{make_field, unify, FieldDescriptor, FieldElement};
use crate::polyring::{LinearForm, MultiPoly};

use super::{y_affine_vars, y_proj_vars, AffineLineForms, AffineParam, SurfaceError, SurfaceLine};

/// Invertible coordinate change between the `x0..x3` and `y0..y3` systems,
/// with `forward * inverse` verified to be the identity exactly.
#[derive(Debug, Clone)]
pub struct ChartTransform {
    pub field: FieldDescriptor,
    /// `x_i = sum_j forward[i][j] * y_j`.
    pub forward: [[FieldElement; 4]; 4],
    /// `y_i = sum_j inverse[i][j] * x_j`.
    pub inverse: [[FieldElement; 4]; 4],
}

impl ChartTransform {
    /// The fixed chart transform over a field containing `sqrt(2)`.
    pub fn standard(field: &FieldDescriptor) -> Result<Self, SurfaceError> {
        let r2 = field.sqrt_rational(&BigRational::from_integer(2.into()))?;
        let one = field.one();
        let neg = |e: &FieldElement| e.neg();
        let zero = field.zero();
        // x0 = y0 - y3 - sqrt2 y1, x1 = y0 - y3 + sqrt2 y1,
        // x2 = y0 + y3 + sqrt2 y2, x3 = -y0 - y3 + sqrt2 y2.
        let forward = [
            [one.clone(), neg(&r2), zero.clone(), neg(&one)],
            [one.clone(), r2.clone(), zero.clone(), neg(&one)],
            [one.clone(), zero.clone(), r2.clone(), one.clone()],
            [neg(&one), zero.clone(), r2.clone(), neg(&one)],
        ];
        // y0 = x0 + x1 + x2 - x3, y1 = sqrt2 (-x0 + x1),
        // y2 = sqrt2 (x2 + x3),   y3 = -x0 - x1 + x2 - x3,
        // scaled by 1/4 so that forward * inverse = id exactly.
        let quarter = BigRational::new(1.into(), 4.into());
        let q = |e: FieldElement| e.scale_rational(&quarter);
        let inverse = [
            [q(one.clone()), q(one.clone()), q(one.clone()), q(neg(&one))],
            [q(neg(&r2)), q(r2.clone()), q(zero.clone()), q(zero.clone())],
            [
                q(zero.clone()),
                q(zero.clone()),
                q(r2.clone()),
                q(r2.clone()),
            ],
            [q(neg(&one)), q(neg(&one)), q(one.clone()), q(neg(&one))],
        ];
        let t = ChartTransform {
            field: field.clone(),
            forward,
            inverse,
        };
        // forward * inverse = identity, exactly.
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = t.field.zero();
                for k in 0..4 {
                    acc = acc.add(&t.forward[i][k].mul(&t.inverse[k][j]));
                }
                let expect = if i == j {
                    t.field.one()
                } else {
                    t.field.zero()
                };
                assert_eq!(acc, expect, "chart transform inverse mismatch");
            }
        }
        Ok(t)
    }

    pub fn apply_inverse(&self, x: &[FieldElement; 4]) -> [FieldElement; 4] {
        apply(&self.inverse, x, &self.field)
    }

    pub fn apply_forward(&self, y: &[FieldElement; 4]) -> [FieldElement; 4] {
        apply(&self.forward, y, &self.field)
    }

    /// The forward rows as polynomials in `y0..y3`, for substitution.
    pub fn forward_polys(&self) -> [MultiPoly; 4] {
        let vars = y_proj_vars();
        let rows: Vec<MultiPoly> = self
            .forward
            .iter()
            .map(|row| {
                MultiPoly::from_terms(
                    &vars,
                    &self.field,
                    row.iter().enumerate().map(|(j, c)| {
                        let mut e = alloc::vec![0u32; 4];
                        e[j] = 1;
                        (e, c.clone())
                    }),
                )
            })
            .collect();
        rows.try_into().expect("four rows")
    }
}

fn apply(
    m: &[[FieldElement; 4]; 4],
    v: &[FieldElement; 4],
    field: &FieldDescriptor,
) -> [FieldElement; 4] {
    let mut out = [field.zero(), field.zero(), field.zero(), field.zero()];
    for i in 0..4 {
        for j in 0..4 {
            out[i] = out[i].add(&m[i][j].mul(&v[j]));
        }
    }
    out
}

/// Output of the chart stage.
#[derive(Debug, Clone)]
pub struct AffineChart {
    pub field: FieldDescriptor,
    pub transform: ChartTransform,
    /// Affine cubic in `y1,y2,y3`, primitive normalized.
    pub f_affine: MultiPoly,
    pub lines_at_infinity: Vec<usize>,
}

/// Substitutes `y0 = 1` into a polynomial in `y0..y3`.
fn dehomogenize(p: &MultiPoly, field: &FieldDescriptor) -> MultiPoly {
    let av = y_affine_vars();
    let assignment = alloc::vec![
        MultiPoly::constant(&av, field.one()),
        MultiPoly::variable(&av, field, 0),
        MultiPoly::variable(&av, field, 1),
        MultiPoly::variable(&av, field, 2),
    ];
    p.substitute(&assignment).expect("four variables")
}

/// Applies the fixed chart transform: computes the affine cubic and fills
/// each line's affine implicit pair and parametrization. Lines forced into
/// the plane at infinity are flagged and listed, not treated as an error;
/// the caller decides whether to proceed.
pub fn to_affine_chart(
    model_field: &FieldDescriptor,
    f_p3: &MultiPoly,
    lines: &mut [SurfaceLine],
) -> Result<AffineChart, SurfaceError> {
    let chart_field = unify(model_field, &make_field(&[2])?)?;
    let transform = ChartTransform::standard(&chart_field)?;

    let f_proj = f_p3
        .promote(&chart_field)?
        .substitute(&transform.forward_polys())?;
    let f_affine = dehomogenize(&f_proj, &chart_field).primitive();

    let forward_polys = transform.forward_polys();
    let mut at_infinity = Vec::new();
    for (idx, line) in lines.iter_mut().enumerate() {
        let promote4 = |g: &[FieldElement; 4]| -> Result<[FieldElement; 4], SurfaceError> {
            Ok([
                g[0].promote(&chart_field)?,
                g[1].promote(&chart_field)?,
                g[2].promote(&chart_field)?,
                g[3].promote(&chart_field)?,
            ])
        };
        let g0 = transform.apply_inverse(&promote4(&line.points_p3[0])?);
        let g1 = transform.apply_inverse(&promote4(&line.points_p3[1])?);
        if g0[0].is_zero() && g1[0].is_zero() {
            line.implicit_affine = AffineLineForms::AtInfinity;
            line.param_affine = None;
            at_infinity.push(idx);
            continue;
        }

        // Implicit forms composed through the transform, then y0 = 1.
        let mut affine_forms = Vec::with_capacity(2);
        for form in line.implicit_p3.iter() {
            let composed = form
                .poly()
                .promote(&chart_field)?
                .substitute(&forward_polys)?;
            let aff = dehomogenize(&composed, &chart_field);
            affine_forms.push(LinearForm::new(aff).expect("degree one"));
        }

        // Direction: the intersection of the line with y0 = 0.
        let combo = |s: &FieldElement, t: &FieldElement| -> [FieldElement; 4] {
            [
                g0[0].mul(s).add(&g1[0].mul(t)),
                g0[1].mul(s).add(&g1[1].mul(t)),
                g0[2].mul(s).add(&g1[2].mul(t)),
                g0[3].mul(s).add(&g1[3].mul(t)),
            ]
        };
        let dirh = combo(&g1[0], &g0[0].neg());
        debug_assert!(dirh[0].is_zero());
        let mut dir = [dirh[1].clone(), dirh[2].clone(), dirh[3].clone()];

        // Base: dehomogenize whichever generator is visible.
        let gb = if !g0[0].is_zero() { &g0 } else { &g1 };
        let inv0 = gb[0].inverse().expect("visible generator");
        let mut base = [gb[1].mul(&inv0), gb[2].mul(&inv0), gb[3].mul(&inv0)];

        // Canonical parametrization: scale the direction so its largest
        // component is 1, then slide the base so that component is 0.
        let mut m = 0;
        for k in 1..3 {
            if dir[k].abs().cmp_real(&dir[m].abs()) == core::cmp::Ordering::Greater {
                m = k;
            }
        }
        let dinv = dir[m].inverse().expect("direction nonzero");
        for d in dir.iter_mut() {
            *d = d.mul(&dinv);
        }
        let shift = base[m].clone();
        for (b, d) in base.iter_mut().zip(dir.iter()) {
            *b = b.sub(&shift.mul(d));
        }

        line.implicit_affine = AffineLineForms::Affine(affine_forms.try_into().expect("two forms"));
        line.param_affine = Some(AffineParam {
            base,
            direction: dir,
        });
    }

    Ok(AffineChart {
        field: chart_field,
        transform,
        f_affine,
        lines_at_infinity: at_infinity,
    })
}

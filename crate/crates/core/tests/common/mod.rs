//! Shared test support: an independent construction of the 27 lines
//! (exceptional lines from the blowup Jacobian, images of connecting
//! lines, images of conics through five points) and a random
//! general-position generator. The independent route never touches the
//! tritangent-plane machinery, so it can cross-check it.

use cubic_core::linalg::Matrix;
use cubic_core::numfield::{rationals, FieldDescriptor, FieldElement};
use cubic_core::polyring::MultiPoly;
use cubic_core::surface::{blowup_map, check_general_position, t_vars, PlanePoint};
use rand::Rng;

pub fn phi_image(phi: &[MultiPoly; 6], t: &[FieldElement; 3]) -> Option<Vec<FieldElement>> {
    let v: Vec<FieldElement> = phi.iter().map(|p| p.evaluate(t).unwrap()).collect();
    if v.iter().all(|c| c.is_zero()) {
        None
    } else {
        Some(v)
    }
}

fn independent_pair(pts: &mut Vec<Vec<FieldElement>>, candidate: Vec<FieldElement>) -> bool {
    pts.push(candidate);
    if pts.len() == 2 && Matrix::from_rows(pts.clone()).rank() < 2 {
        pts.pop();
    }
    pts.len() == 2
}

/// All 27 lines as generator-point pairs in the 6 projective coordinates,
/// built directly from the blowup geometry.
pub fn independent_lines(points: &[PlanePoint; 6]) -> Vec<(String, [Vec<FieldElement>; 2])> {
    let field = points[0].coords()[0].field().clone();
    let phi = blowup_map(points).unwrap();
    let grads: Vec<Vec<MultiPoly>> = phi.iter().map(|p| p.gradient()).collect();
    let _ = t_vars();
    let mut out = Vec::with_capacity(27);

    // Exceptional lines: first-order image of directions at each point.
    for i in 0..6 {
        let pi = points[i].coords();
        let mut pts: Vec<Vec<FieldElement>> = Vec::new();
        for axis in 0..3 {
            let mut u = [field.zero(), field.zero(), field.zero()];
            u[axis] = field.one();
            let v: Vec<FieldElement> = (0..6)
                .map(|j| {
                    (0..3).fold(field.zero(), |acc, k| {
                        acc.add(&grads[j][k].evaluate(pi).unwrap().mul(&u[k]))
                    })
                })
                .collect();
            if v.iter().all(|c| c.is_zero()) {
                continue;
            }
            if independent_pair(&mut pts, v) {
                break;
            }
        }
        assert_eq!(pts.len(), 2, "exceptional line {} generators", i + 1);
        out.push((format!("E{}", i + 1), [pts[0].clone(), pts[1].clone()]));
    }

    // Images of the connecting lines through point pairs.
    for i in 0..6 {
        for j in i + 1..6 {
            let pi = points[i].coords();
            let pj = points[j].coords();
            let mut pts = Vec::new();
            for k in 1..40i64 {
                let s = field.from_integer(k);
                let t = [
                    pi[0].add(&pj[0].mul(&s)),
                    pi[1].add(&pj[1].mul(&s)),
                    pi[2].add(&pj[2].mul(&s)),
                ];
                let Some(v) = phi_image(&phi, &t) else {
                    continue;
                };
                if independent_pair(&mut pts, v) {
                    break;
                }
            }
            assert_eq!(
                pts.len(),
                2,
                "connecting line {}{} generators",
                i + 1,
                j + 1
            );
            out.push((
                format!("F{}{}", i + 1, j + 1),
                [pts[0].clone(), pts[1].clone()],
            ));
        }
    }

    // Images of the conic through each complementary set of five points.
    for i in 0..6 {
        let others: Vec<usize> = (0..6).filter(|&k| k != i).collect();
        let rows: Vec<Vec<FieldElement>> = others
            .iter()
            .map(|&k| {
                let [t0, t1, t2] = points[k].coords();
                vec![
                    t0.mul(t0),
                    t0.mul(t1),
                    t0.mul(t2),
                    t1.mul(t1),
                    t1.mul(t2),
                    t2.mul(t2),
                ]
            })
            .collect();
        let ns = Matrix::from_rows(rows).nullspace(&field);
        assert_eq!(ns.len(), 1, "conic through five points");
        let q = &ns[0];
        let qeval = |t: &[FieldElement; 3]| -> FieldElement {
            q[0].mul(&t[0])
                .mul(&t[0])
                .add(&q[1].mul(&t[0]).mul(&t[1]))
                .add(&q[2].mul(&t[0]).mul(&t[2]))
                .add(&q[3].mul(&t[1]).mul(&t[1]))
                .add(&q[4].mul(&t[1]).mul(&t[2]))
                .add(&q[5].mul(&t[2]).mul(&t[2]))
        };
        let qbil = |x: &[FieldElement; 3], y: &[FieldElement; 3]| -> FieldElement {
            let s = [x[0].add(&y[0]), x[1].add(&y[1]), x[2].add(&y[2])];
            qeval(&s).sub(&qeval(x)).sub(&qeval(y))
        };
        let base = points[others[0]].coords().clone();
        let mut pts = Vec::new();
        'outer: for w0 in -4i64..5 {
            for w1 in -4i64..5 {
                for w2 in 0i64..5 {
                    let w = [
                        field.from_integer(w0),
                        field.from_integer(w1),
                        field.from_integer(w2),
                    ];
                    if w.iter().all(|c| c.is_zero()) {
                        continue;
                    }
                    let qw = qeval(&w);
                    if qw.is_zero() {
                        continue;
                    }
                    // Second intersection of the line base + s*w with the
                    // conic (the base-point root splits off).
                    let b = qbil(&base, &w);
                    let pt = [
                        base[0].mul(&qw).sub(&b.mul(&w[0])),
                        base[1].mul(&qw).sub(&b.mul(&w[1])),
                        base[2].mul(&qw).sub(&b.mul(&w[2])),
                    ];
                    if pt.iter().all(|c| c.is_zero()) {
                        continue;
                    }
                    let Some(v) = phi_image(&phi, &pt) else {
                        continue;
                    };
                    if independent_pair(&mut pts, v) {
                        break 'outer;
                    }
                }
            }
        }
        assert_eq!(pts.len(), 2, "conic line {} generators", i + 1);
        out.push((format!("G{}", i + 1), [pts[0].clone(), pts[1].clone()]));
    }
    assert_eq!(out.len(), 27);
    out
}

/// Random rational points in general position, small coordinates.
pub fn random_general_position<R: Rng>(rng: &mut R) -> [PlanePoint; 6] {
    let field: FieldDescriptor = rationals();
    loop {
        let pts: Vec<PlanePoint> = (0..6)
            .map(|_| {
                PlanePoint::new([
                    field.from_integer(rng.gen_range(-9i64..10)),
                    field.from_integer(rng.gen_range(-9i64..10)),
                    field.from_integer(1),
                ])
                .unwrap()
            })
            .collect();
        let arr: [PlanePoint; 6] = pts.try_into().unwrap();
        if check_general_position(&arr).is_ok() {
            return arr;
        }
    }
}

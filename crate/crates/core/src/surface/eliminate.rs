//! Elimination of two variables via the two hyperplane equations, turning
//! the surface in projective 5-space into a cubic in projective 3-space.

use alloc::vec::Vec;

use crate::numfield::FieldElement;
use crate::polyring::MultiPoly;

use super::{x3_vars, SurfaceError};

/// Result of the elimination: the pivot pair, the embedding of all six
/// coordinates as linear forms in the remaining four, and the cubic.
#[derive(Debug, Clone)]
pub struct Elimination {
    pub pivot_pair: (usize, usize),
    /// `x0..x5` expressed in the `P3` variables `x0..x3`.
    pub p5_from_p3: [MultiPoly; 6],
    /// The cubic obtained by substituting into `sum x_i^3`, unscaled.
    pub f_p3: MultiPoly,
}

/// Solves the two linear equations for the lexicographically last variable
/// pair with invertible 2x2 minor (preferring `(x4, x5)`), substitutes into
/// the sum of cubes and returns the resulting homogeneous cubic.
pub fn eliminate_to_p3(p5_equations: &[MultiPoly; 3]) -> Result<Elimination, SurfaceError> {
    let field = p5_equations[0].field().clone();
    // Coefficients of the two linear forms.
    let coeff = |eq: &MultiPoly, i: usize| {
        let mut e = alloc::vec![0u32; 6];
        e[i] = 1;
        eq.coefficient(&e)
    };
    let l1: Vec<FieldElement> = (0..6).map(|i| coeff(&p5_equations[1], i)).collect();
    let l2: Vec<FieldElement> = (0..6).map(|i| coeff(&p5_equations[2], i)).collect();

    let mut pivot = None;
    for i in 0..6 {
        for j in i + 1..6 {
            // minor: [[l1[i], l1[j]], [l2[i], l2[j]]]
            let det = l1[i].mul(&l2[j]).sub(&l1[j].mul(&l2[i]));
            if !det.is_zero() {
                pivot = Some((i, j, det));
            }
        }
    }
    let Some((pi, pj, det)) = pivot else {
        return Err(SurfaceError::DegenerateLinearSystem);
    };

    let vars3 = x3_vars();
    let others: Vec<usize> = (0..6).filter(|&r| r != pi && r != pj).collect();

    // Solve l1 = 0, l2 = 0 for x_pi, x_pj: the right-hand sides are
    // S = -sum l1[r] x_r and T = -sum l2[r] x_r over the others.
    let rhs = |l: &[FieldElement]| {
        MultiPoly::from_terms(
            &vars3,
            &field,
            others.iter().enumerate().map(|(k, &r)| {
                let mut e = alloc::vec![0u32; 4];
                e[k] = 1;
                (e, l[r].neg())
            }),
        )
    };
    let s = rhs(&l1);
    let t = rhs(&l2);
    let inv_det = det.inverse().expect("invertible minor");
    // Cramer: x_pi = (l2[pj] S - l1[pj] T) / det, x_pj = (l1[pi] T - l2[pi] S) / det.
    let x_pi = s.scale(&l2[pj]).sub(&t.scale(&l1[pj])).scale(&inv_det);
    let x_pj = t.scale(&l1[pi]).sub(&s.scale(&l2[pi])).scale(&inv_det);

    let mut p5_from_p3: Vec<MultiPoly> = Vec::with_capacity(6);
    for r in 0..6 {
        if r == pi {
            p5_from_p3.push(x_pi.clone());
        } else if r == pj {
            p5_from_p3.push(x_pj.clone());
        } else {
            let k = others.iter().position(|&o| o == r).expect("non-pivot");
            p5_from_p3.push(MultiPoly::variable(&vars3, &field, k));
        }
    }
    let p5_from_p3: [MultiPoly; 6] = p5_from_p3.try_into().expect("six coordinates");

    // The two linear equations must vanish identically under the solution.
    debug_assert!(p5_equations[1]
        .substitute(&p5_from_p3)
        .expect("same arity")
        .is_zero());
    debug_assert!(p5_equations[2]
        .substitute(&p5_from_p3)
        .expect("same arity")
        .is_zero());

    let f_p3 = p5_equations[0].substitute(&p5_from_p3).expect("same arity");
    debug_assert_eq!(f_p3.homogeneous_degree(), Some(3));

    Ok(Elimination {
        pivot_pair: (pi, pj),
        p5_from_p3,
        f_p3,
    })
}

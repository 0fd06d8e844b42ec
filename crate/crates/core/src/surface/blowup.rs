//! The blowup map of the plane in six points, the skew bracket matrix and
//! the coefficient vector of the second hyperplane equation.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::linalg::det3;
use crate::numfield::FieldElement;
use crate::polyring::MultiPoly;

use super::{line_through, t_vars, x5_vars, PlanePoint, SurfaceError};

/// Each blowup component is a sum of five products of three connecting
/// lines; entries are 1-based point index pairs `l_{i,j}`.
const PHI_TABLE: [[[(usize, usize); 3]; 5]; 6] = [
    [
        [(2, 5), (1, 3), (4, 6)],
        [(5, 1), (4, 2), (3, 6)],
        [(1, 4), (3, 5), (2, 6)],
        [(4, 3), (2, 1), (5, 6)],
        [(3, 2), (5, 4), (1, 6)],
    ],
    [
        [(5, 3), (1, 2), (4, 6)],
        [(1, 4), (2, 3), (5, 6)],
        [(2, 5), (3, 4), (1, 6)],
        [(3, 1), (4, 5), (2, 6)],
        [(4, 2), (5, 1), (3, 6)],
    ],
    [
        [(5, 3), (4, 1), (2, 6)],
        [(3, 4), (2, 5), (1, 6)],
        [(4, 2), (1, 3), (5, 6)],
        [(2, 1), (5, 4), (3, 6)],
        [(1, 5), (3, 2), (4, 6)],
    ],
    [
        [(4, 5), (3, 1), (2, 6)],
        [(5, 3), (2, 4), (1, 6)],
        [(4, 1), (2, 5), (3, 6)],
        [(3, 2), (1, 5), (4, 6)],
        [(2, 1), (4, 3), (5, 6)],
    ],
    [
        [(3, 1), (2, 4), (5, 6)],
        [(1, 2), (5, 3), (4, 6)],
        [(2, 5), (4, 1), (3, 6)],
        [(5, 4), (3, 2), (1, 6)],
        [(4, 3), (1, 5), (2, 6)],
    ],
    [
        [(4, 2), (3, 5), (1, 6)],
        [(2, 3), (1, 4), (5, 6)],
        [(3, 1), (5, 2), (4, 6)],
        [(1, 5), (4, 3), (2, 6)],
        [(5, 4), (2, 1), (3, 6)],
    ],
];

/// Upper triangle of the skew-symmetric bracket matrix, as
/// `(i, j) -> |i1,i2; j1,j2; k1,k2|` with 1-based point indices.
const BRACKET_TABLE: [[(usize, usize, usize, usize, usize, usize); 6]; 6] = {
    const Z: (usize, usize, usize, usize, usize, usize) = (0, 0, 0, 0, 0, 0);
    [
        [
            Z,
            (1, 5, 2, 4, 3, 6),
            (1, 4, 3, 5, 2, 6),
            (1, 2, 4, 3, 5, 6),
            (2, 3, 4, 5, 1, 6),
            (1, 3, 5, 2, 4, 6),
        ],
        [
            Z,
            Z,
            (2, 5, 3, 4, 1, 6),
            (1, 3, 5, 4, 2, 6),
            (1, 2, 3, 5, 4, 6),
            (1, 4, 2, 3, 5, 6),
        ],
        [
            Z,
            Z,
            Z,
            (1, 5, 3, 2, 4, 6),
            (1, 3, 2, 4, 5, 6),
            (1, 2, 4, 5, 3, 6),
        ],
        [Z, Z, Z, Z, (1, 4, 5, 2, 3, 6), (2, 4, 3, 5, 1, 6)],
        [Z, Z, Z, Z, Z, (1, 5, 3, 4, 2, 6)],
        [Z, Z, Z, Z, Z, Z],
    ]
};

/// The 2x2 bracket `|i,j; k,l; m,n|` of point determinants. It vanishes
/// exactly when the lines through `(Pi,Pj)`, `(Pk,Pl)` and `(Pm,Pn)` are
/// concurrent. All indices 1-based.
pub fn triple_bracket(
    points: &[PlanePoint; 6],
    i: usize,
    j: usize,
    k: usize,
    l: usize,
    m: usize,
    n: usize,
) -> FieldElement {
    let d = |a: usize, b: usize, c: usize| {
        det3(
            points[a - 1].coords(),
            points[b - 1].coords(),
            points[c - 1].coords(),
        )
    };
    d(i, j, m)
        .mul(&d(k, l, n))
        .sub(&d(i, j, n).mul(&d(k, l, m)))
}

/// The six cubics whose common image closure is the cubic surface in
/// projective 5-space. Each vanishes at all six points.
pub fn blowup_map(points: &[PlanePoint; 6]) -> Result<[MultiPoly; 6], SurfaceError> {
    let vars = t_vars();
    let field = points[0].coords()[0].field().clone();
    let mut phis = Vec::with_capacity(6);
    for component in PHI_TABLE.iter() {
        let mut acc = MultiPoly::zero(&vars, &field);
        for summand in component.iter() {
            let mut prod = MultiPoly::constant(&vars, field.one());
            for &(i, j) in summand.iter() {
                prod = prod.mul(line_through(points, i, j)?.poly());
            }
            acc = acc.add(&prod);
        }
        phis.push(acc);
    }
    Ok(phis.try_into().expect("six components"))
}

/// Row sums of the skew bracket matrix: the raw vector exactly as the
/// matrix produces it, and the scale-normalized form (first nonzero entry
/// used as divisor, then cleared to the smallest integer vector when the
/// result is rational).
///
/// The raw vector is what the 30-plane formulas need — they are quadratic
/// in `a` against a fixed determinant, so rescaling would break them.
pub fn coefficient_vector(
    points: &[PlanePoint; 6],
) -> Result<([FieldElement; 6], [FieldElement; 6]), SurfaceError> {
    let field = points[0].coords()[0].field().clone();
    let mut a_raw = Vec::with_capacity(6);
    for i in 0..6 {
        let mut sum = field.zero();
        for j in 0..6 {
            if i == j {
                continue;
            }
            let entry = if i < j {
                let (a, b, c, d, e, f) = BRACKET_TABLE[i][j];
                triple_bracket(points, a, b, c, d, e, f)
            } else {
                let (a, b, c, d, e, f) = BRACKET_TABLE[j][i];
                triple_bracket(points, a, b, c, d, e, f).neg()
            };
            sum = sum.add(&entry);
        }
        a_raw.push(sum);
    }
    let a_raw: [FieldElement; 6] = a_raw.try_into().expect("six entries");
    let a_vector = normalize_vector(&a_raw);
    Ok((a_raw, a_vector))
}

/// Projective normalization of a coefficient vector: divide by the first
/// nonzero entry; if the result is entirely rational, scale to the
/// smallest integer vector with positive first entry.
pub fn normalize_vector(v: &[FieldElement; 6]) -> [FieldElement; 6] {
    let Some(lead) = v.iter().find(|e| !e.is_zero()) else {
        return v.clone();
    };
    let inv = lead.inverse().expect("nonzero");
    let mut out: Vec<FieldElement> = v.iter().map(|e| e.mul(&inv)).collect();
    if out.iter().all(|e| e.is_rational()) {
        let mut denom_lcm = BigUint::one();
        let mut numer_gcd = BigUint::zero();
        for e in out.iter() {
            let q = e.as_rational().expect("rational");
            if q.is_zero() {
                continue;
            }
            denom_lcm = num_integer::lcm(denom_lcm, q.denom().magnitude().clone());
            numer_gcd = num_integer::gcd(numer_gcd, q.numer().magnitude().clone());
        }
        if !numer_gcd.is_zero() {
            let scale = BigRational::new(BigInt::from(denom_lcm), BigInt::from(numer_gcd));
            for e in out.iter_mut() {
                *e = e.scale_rational(&scale);
            }
        }
    }
    out.try_into().expect("six entries")
}

/// The three equations cutting the surface in projective 5-space:
/// `sum x_i^3`, `sum x_i`, `sum a_i x_i`.
pub fn cubic_in_p5(a: &[FieldElement; 6]) -> [MultiPoly; 3] {
    let vars = x5_vars();
    let field = a[0].field().clone();
    let cubes = MultiPoly::from_terms(
        &vars,
        &field,
        (0..6).map(|i| {
            let mut e = alloc::vec![0u32; 6];
            e[i] = 3;
            (e, field.one())
        }),
    );
    let plane = MultiPoly::from_terms(
        &vars,
        &field,
        (0..6).map(|i| {
            let mut e = alloc::vec![0u32; 6];
            e[i] = 1;
            (e, field.one())
        }),
    );
    let weighted = MultiPoly::from_terms(
        &vars,
        &field,
        (0..6).map(|i| {
            let mut e = alloc::vec![0u32; 6];
            e[i] = 1;
            (e, a[i].clone())
        }),
    );
    [cubes, plane, weighted]
}

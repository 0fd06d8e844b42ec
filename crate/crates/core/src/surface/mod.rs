//! The geometric pipeline from six plane points to a cubic surface with
//! its 27 lines, 45 tritangent planes and Eckardt points.
//!
//! Index conventions: the six input points are 1-based (`P1..P6`) wherever
//! an operation mirrors the classical formulas; coordinates and the
//! coefficient vector are 0-based (`x0..x5`, `a0..a5`). The mapping is
//! `P(i+1) <-> index i`.
//!
//! Everything here is exact. The pipeline stages are pure functions on
//! immutable inputs, so they are safe to run from concurrent contexts;
//! results are merged in canonical (deterministic) order.

mod blowup;
mod chart;
mod eckardt;
mod eliminate;
mod lines;
mod planes;

pub use blowup::{blowup_map, coefficient_vector, cubic_in_p5, triple_bracket};
pub use chart::{to_affine_chart, AffineChart, ChartTransform};
pub use eckardt::eckardt_points;
pub use eliminate::eliminate_to_p3;
pub use lines::lines_on_cubic;
pub use planes::tritangent_planes;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::linalg::{det3, Matrix};
use crate::numfield::{make_field, unify, FieldDescriptor, FieldElement, NumFieldError};
use crate::polyring::{LinearForm, MultiPoly, PolyError, VarSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    NotGeneralPosition(PositionViolation),
    IdenticalIndices,
    /// The two hyperplane equations cannot be solved for any variable pair
    /// (e.g. all coefficients equal, so the planes coincide).
    DegenerateLinearSystem,
    PlaneCountMismatch {
        found: usize,
    },
    LineCountMismatch {
        found: usize,
    },
    /// An incidence count contradicts the classical structure; the input
    /// is likely too degenerate.
    IncidenceMismatch(String),
    Num(NumFieldError),
    Poly(PolyError),
}

impl fmt::Display for SurfaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceError::NotGeneralPosition(v) => write!(f, "points not in general position: {v}"),
            SurfaceError::IdenticalIndices => write!(f, "line through a point and itself"),
            SurfaceError::DegenerateLinearSystem => {
                write!(f, "hyperplane equations are degenerate; cannot eliminate")
            }
            SurfaceError::PlaneCountMismatch { found } => {
                write!(f, "expected 45 tritangent planes, found {found}")
            }
            SurfaceError::LineCountMismatch { found } => {
                write!(f, "expected 27 lines, found {found}")
            }
            SurfaceError::IncidenceMismatch(msg) => write!(f, "incidence mismatch: {msg}"),
            SurfaceError::Num(e) => write!(f, "{e}"),
            SurfaceError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SurfaceError {}

impl From<NumFieldError> for SurfaceError {
    fn from(e: NumFieldError) -> Self {
        SurfaceError::Num(e)
    }
}

impl From<PolyError> for SurfaceError {
    fn from(e: PolyError) -> Self {
        SurfaceError::Poly(e)
    }
}

/// Which general-position requirement failed; indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PositionViolation {
    Collinear(usize, usize, usize),
    OnConic,
}

impl fmt::Display for PositionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PositionViolation::Collinear(i, j, k) => {
                write!(f, "points P{i}, P{j}, P{k} are collinear")
            }
            PositionViolation::OnConic => write!(f, "all six points lie on a conic"),
        }
    }
}

/// Variable lists used across the pipeline.
pub fn t_vars() -> VarSet {
    VarSet::new(&["t0", "t1", "t2"])
}
pub fn x5_vars() -> VarSet {
    VarSet::new(&["x0", "x1", "x2", "x3", "x4", "x5"])
}
pub fn x3_vars() -> VarSet {
    VarSet::new(&["x0", "x1", "x2", "x3"])
}
pub fn y_proj_vars() -> VarSet {
    VarSet::new(&["y0", "y1", "y2", "y3"])
}
pub fn y_affine_vars() -> VarSet {
    VarSet::new(&["y1", "y2", "y3"])
}

/// A point of the projective plane in homogeneous coordinates, not all
/// zero. Stored as given; comparison is projective (first nonzero
/// coordinate scaled to one).
#[derive(Debug, Clone)]
pub struct PlanePoint {
    coords: [FieldElement; 3],
}

impl PlanePoint {
    pub fn new(coords: [FieldElement; 3]) -> Result<Self, SurfaceError> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(SurfaceError::IncidenceMismatch(String::from(
                "projective point with all coordinates zero",
            )));
        }
        Ok(PlanePoint { coords })
    }

    pub fn coords(&self) -> &[FieldElement; 3] {
        &self.coords
    }

    /// Rescales so the first nonzero coordinate is 1.
    pub fn canonical(&self) -> PlanePoint {
        let lead = self.coords.iter().find(|c| !c.is_zero()).expect("nonzero");
        let inv = lead.inverse().expect("nonzero");
        PlanePoint {
            coords: [
                self.coords[0].mul(&inv),
                self.coords[1].mul(&inv),
                self.coords[2].mul(&inv),
            ],
        }
    }

    pub fn promote(&self, field: &FieldDescriptor) -> Result<PlanePoint, NumFieldError> {
        Ok(PlanePoint {
            coords: [
                self.coords[0].promote(field)?,
                self.coords[1].promote(field)?,
                self.coords[2].promote(field)?,
            ],
        })
    }
}

impl PartialEq for PlanePoint {
    fn eq(&self, other: &Self) -> bool {
        self.canonical().coords == other.canonical().coords
    }
}
impl Eq for PlanePoint {}

/// The six points of the classical icosahedral configuration, with
/// `g = (1 + sqrt(5))/2`, over `Q(sqrt(2), sqrt(5))`.
pub fn clebsch_preset() -> [PlanePoint; 6] {
    let field = make_field(&[2, 5]).expect("tower {2,5}");
    let one = field.one();
    let zero = field.zero();
    let sqrt5 = field.sqrt_radicand(1);
    let g = one
        .add(&sqrt5)
        .scale_rational(&num_rational::BigRational::new(1.into(), 2.into()));
    let ng = g.neg();
    let p = |a: &FieldElement, b: &FieldElement, c: &FieldElement| PlanePoint {
        coords: [a.clone(), b.clone(), c.clone()],
    };
    [
        p(&zero, &one, &ng),
        p(&g, &zero, &one),
        p(&one, &g, &zero),
        p(&one, &ng, &zero),
        p(&zero, &one, &g),
        p(&ng, &zero, &one),
    ]
}

/// Brings all six points into one common field tower.
pub fn unify_points(
    points: &[PlanePoint; 6],
) -> Result<([PlanePoint; 6], FieldDescriptor), SurfaceError> {
    let mut field = points[0].coords[0].field().clone();
    for p in points.iter() {
        for c in p.coords.iter() {
            field = unify(&field, c.field())?;
        }
    }
    let mut out = Vec::with_capacity(6);
    for p in points.iter() {
        out.push(p.promote(&field)?);
    }
    Ok((out.try_into().expect("six points"), field))
}

/// Checks that no three points are collinear and that the six do not all
/// lie on one conic; the report names the offending triple (1-based).
pub fn check_general_position(points: &[PlanePoint; 6]) -> Result<(), PositionViolation> {
    for i in 0..6 {
        for j in i + 1..6 {
            for k in j + 1..6 {
                let d = det3(points[i].coords(), points[j].coords(), points[k].coords());
                if d.is_zero() {
                    return Err(PositionViolation::Collinear(i + 1, j + 1, k + 1));
                }
            }
        }
    }
    // Conic test: the 6x6 determinant of the quadric monomials
    // (t0^2, t0*t1, t0*t2, t1^2, t1*t2, t2^2) at the six points.
    let field = points[0].coords[0].field().clone();
    let rows: Vec<Vec<FieldElement>> = points
        .iter()
        .map(|p| {
            let [t0, t1, t2] = p.coords();
            alloc::vec![
                t0.mul(t0),
                t0.mul(t1),
                t0.mul(t2),
                t1.mul(t1),
                t1.mul(t2),
                t2.mul(t2),
            ]
        })
        .collect();
    if Matrix::from_rows(rows).det(&field).is_zero() {
        return Err(PositionViolation::OnConic);
    }
    Ok(())
}

/// The linear form `det(Pi, Pj, t)` cutting the line through `Pi` and `Pj`
/// (1-based); antisymmetric in `i, j`.
pub fn line_through(
    points: &[PlanePoint; 6],
    i: usize,
    j: usize,
) -> Result<LinearForm, SurfaceError> {
    if i == j {
        return Err(SurfaceError::IdenticalIndices);
    }
    assert!((1..=6).contains(&i) && (1..=6).contains(&j), "indices 1..6");
    let pi = points[i - 1].coords();
    let pj = points[j - 1].coords();
    // Expansion along the t column of det(Pi, Pj, t).
    let c0 = pi[1].mul(&pj[2]).sub(&pi[2].mul(&pj[1]));
    let c1 = pi[0].mul(&pj[2]).sub(&pi[2].mul(&pj[0])).neg();
    let c2 = pi[0].mul(&pj[1]).sub(&pi[1].mul(&pj[0]));
    let vars = t_vars();
    let field = pi[0].field().clone();
    let poly = MultiPoly::from_terms(
        &vars,
        &field,
        [
            (alloc::vec![1, 0, 0], c0),
            (alloc::vec![0, 1, 0], c1),
            (alloc::vec![0, 0, 1], c2),
        ],
    );
    Ok(LinearForm::new(poly).expect("degree one"))
}

/// The fully derived surface: inputs, blowup map, coefficient vector, the
/// three equations cutting the surface in projective 5-space, the cubic in
/// projective 3-space, the chart transform and the affine cubic.
#[derive(Debug, Clone)]
pub struct SurfaceModel {
    pub field: FieldDescriptor,
    /// Field extended by sqrt(2) for the chart transform.
    pub chart_field: FieldDescriptor,
    pub points: [PlanePoint; 6],
    /// The six cubics of the blowup map, in `t0,t1,t2`.
    pub phi: [MultiPoly; 6],
    /// Row sums of the skew bracket matrix, as computed.
    pub a_raw: [FieldElement; 6],
    /// Scale-normalized coefficient vector (smallest integer form when
    /// rational).
    pub a_vector: [FieldElement; 6],
    /// `sum x_i^3`, `sum x_i`, `sum a_i x_i` in `x0..x5`.
    pub p5_equations: [MultiPoly; 3],
    /// The variable pair eliminated by the two linear equations.
    pub pivot_pair: (usize, usize),
    /// Each of `x0..x5` as a linear form in the four remaining variables.
    pub p5_from_p3: [MultiPoly; 6],
    /// The cubic in `x0..x3`, exactly as the elimination produces it.
    pub f_p3: MultiPoly,
    pub transform: ChartTransform,
    /// The affine cubic in `y1,y2,y3`, in primitive normalized form.
    pub f_affine: MultiPoly,
}

/// One of the 27 lines in its synchronized representations.
#[derive(Debug, Clone)]
pub struct SurfaceLine {
    /// Two generating points of the line in `P3` coordinates (rows of the
    /// reduced echelon form of any generator pair, so canonical).
    pub points_p3: [[FieldElement; 4]; 2],
    /// Canonical implicit pair in `x0..x3`.
    pub implicit_p3: [LinearForm; 2],
    /// Implicit pair in the affine chart, when visible.
    pub implicit_affine: AffineLineForms,
    /// Base point and direction of the affine parametrization; `None` for
    /// lines at infinity.
    pub param_affine: Option<AffineParam>,
    /// Indices into the tritangent plane list; always 5 entries.
    pub parent_planes: Vec<usize>,
}

#[derive(Debug, Clone)]
pub enum AffineLineForms {
    Affine([LinearForm; 2]),
    AtInfinity,
}

/// Affine line `s -> base + s * direction`; the direction component of
/// largest magnitude is scaled to 1 and the base is shifted so that the
/// same component is 0.
#[derive(Debug, Clone)]
pub struct AffineParam {
    pub base: [FieldElement; 3],
    pub direction: [FieldElement; 3],
}

impl AffineParam {
    /// Point at parameter `s`.
    pub fn at(&self, s: &FieldElement) -> [FieldElement; 3] {
        [
            self.base[0].add(&self.direction[0].mul(s)),
            self.base[1].add(&self.direction[1].mul(s)),
            self.base[2].add(&self.direction[2].mul(s)),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlaneKind {
    /// `x_i + x_j = 0`.
    Pair(usize, usize),
    /// Plane from a 3-cycle of disjoint index pairs.
    Cycle([(usize, usize); 3]),
}

#[derive(Debug, Clone)]
pub struct TritangentPlane {
    pub form_p5: LinearForm,
    pub kind: PlaneKind,
    /// The exactly three lines contained in this plane.
    pub line_indices: Vec<usize>,
    /// True when the three lines meet pairwise in three distinct points;
    /// false exactly at the Eckardt planes.
    pub is_generic: bool,
}

#[derive(Debug, Clone)]
pub struct EckardtPoint {
    /// Homogeneous coordinates in `x0..x3`, first nonzero scaled to 1.
    pub coords_p3: [FieldElement; 4],
    /// Affine chart position, or the projective point at infinity.
    pub affine: EckardtPosition,
    /// The three concurrent lines.
    pub line_indices: [usize; 3],
    /// The (non-generic) plane carrying the three lines.
    pub plane_index: usize,
}

#[derive(Debug, Clone)]
pub enum EckardtPosition {
    Affine([FieldElement; 3]),
    /// Projective `y0..y3` coordinates with `y0 = 0`.
    AtInfinity([FieldElement; 4]),
}

/// Full pipeline output.
#[derive(Debug, Clone)]
pub struct CubicSurface {
    pub model: SurfaceModel,
    pub planes: Vec<TritangentPlane>,
    pub lines: Vec<SurfaceLine>,
    pub eckardt: Vec<EckardtPoint>,
    /// Lines invisible in the affine chart (empty for the preset input).
    pub lines_at_infinity: Vec<usize>,
}

/// Runs the whole construction.
pub fn build_surface(points: [PlanePoint; 6]) -> Result<CubicSurface, SurfaceError> {
    let (points, field) = unify_points(&points)?;
    check_general_position(&points).map_err(SurfaceError::NotGeneralPosition)?;

    let phi = blowup_map(&points)?;
    let (a_raw, a_vector) = coefficient_vector(&points)?;

    // The kernel identities of the blowup: these must hold exactly for
    // every general-position input.
    verify_kernel_identities(&phi, &a_vector);

    let p5_equations = cubic_in_p5(&a_vector);
    let elim = eliminate_to_p3(&p5_equations)?;

    let mut planes = tritangent_planes(&points, &a_raw, &a_vector)?;
    let mut lines = lines_on_cubic(&a_vector, &elim, &mut planes)?;
    let chart = to_affine_chart(&field, &elim.f_p3, &mut lines)?;
    let eckardt = eckardt_points(&mut planes, &lines, &chart)?;

    let model = SurfaceModel {
        field,
        chart_field: chart.field.clone(),
        points,
        phi,
        a_raw,
        a_vector,
        p5_equations,
        pivot_pair: elim.pivot_pair,
        p5_from_p3: elim.p5_from_p3,
        f_p3: elim.f_p3,
        transform: chart.transform.clone(),
        f_affine: chart.f_affine.clone(),
    };
    Ok(CubicSurface {
        model,
        planes,
        lines,
        eckardt,
        lines_at_infinity: chart.lines_at_infinity,
    })
}

fn verify_kernel_identities(phi: &[MultiPoly; 6], a: &[FieldElement; 6]) {
    let zero = MultiPoly::zero(phi[0].vars(), phi[0].field());
    let sum = phi.iter().fold(zero.clone(), |acc, p| acc.add(p));
    assert!(sum.is_zero(), "sum of blowup cubics must vanish");
    let asum = phi
        .iter()
        .zip(a.iter())
        .fold(zero.clone(), |acc, (p, ai)| acc.add(&p.scale(ai)));
    assert!(asum.is_zero(), "weighted sum of blowup cubics must vanish");
    let cubes = phi.iter().fold(zero, |acc, p| acc.add(&p.pow(3)));
    assert!(cubes.is_zero(), "sum of cubed blowup cubics must vanish");
}

/// Projective equality of homogeneous coordinate tuples.
pub fn projectively_equal(a: &[FieldElement], b: &[FieldElement]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if !a[i].mul(&b[j]).sub(&a[j].mul(&b[i])).is_zero() {
                return false;
            }
        }
    }
    // rule out mismatched zero patterns
    a.iter().zip(b).all(|(x, y)| x.is_zero() == y.is_zero())
}

/// Scales homogeneous coordinates so the first nonzero entry is 1.
pub fn canonical_projective(coords: &[FieldElement]) -> Vec<FieldElement> {
    let lead = coords.iter().find(|c| !c.is_zero()).expect("nonzero tuple");
    let inv = lead.inverse().expect("nonzero");
    coords.iter().map(|c| c.mul(&inv)).collect()
}

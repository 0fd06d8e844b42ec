//! Exact computation with cubic surfaces built from six plane points.
//!
//! The crate follows the classical construction: six points in the
//! projective plane in general position determine a smooth cubic surface
//! (the blowup of the plane in those points), which carries exactly 27
//! lines, 45 tritangent planes and up to 10 Eckardt points. Everything up
//! to the affine chart is computed exactly over towers of real quadratic
//! extensions of the rationals; floating point enters only for meshing and
//! measurement output.
//!
//! Modules:
//! - [`numfield`]: exact arithmetic in `Q(sqrt(n1), ..., sqrt(nk))`.
//! - [`polyring`]: sparse multivariate polynomials over such fields.
//! - [`surface`]: the geometric pipeline (blowup map, coefficient vector,
//!   elimination to projective 3-space, tritangent planes, lines, Eckardt
//!   points, affine chart).
//! - [`metrology`]: line intersections, angles, distances and build-volume
//!   scaling for dimensional-accuracy validation.
//! - [`mesher`]: implicit-field contouring into watertight triangle meshes
//!   with line-highlight cylinders.
//!
//! The crate is `no_std` (with `alloc`); all IO lives in the companion CLI
//! crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod linalg;
pub mod mesher;
pub mod metrology;
pub mod numfield;
pub mod polyring;
pub mod surface;

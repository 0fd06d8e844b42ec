//! Printable test-shape meshing: a thin shell around the cubic surface
//! with the lines highlighted by embedded cylinders, clipped to the build
//! box and contoured into a watertight triangle mesh.
//!
//! The solid is an implicit union: the shell uses the first-order distance
//! estimate `|f| / |grad f|` minus the half thickness, each highlighted
//! line contributes an infinite cylinder, and the box clips by max. No
//! mesh booleans are involved.

mod grid;
mod mesh;

pub use grid::contour;
pub use mesh::{mesh_report, MeshProvenance, MeshQuality, TriangleMesh};

use alloc::vec::Vec;
use core::fmt;

use crate::metrology::ScaledLine;
use crate::polyring::{FloatPoly, MultiPoly};

/// Gradient magnitudes below this floor are clamped; cells straddling
/// singular-gradient points are resolved by the cylinder union or show up
/// in the mesh report.
pub const GRAD_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MeshError {
    /// The field has uniform sign over the box: wrong spec or box.
    EmptyMesh,
    InvalidSpec(&'static str),
    /// Reserved highlight modes that are not implemented yet.
    UnsupportedHighlight(HighlightMode),
}

impl fmt::Display for MeshError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeshError::EmptyMesh => write!(f, "field has uniform sign over the box"),
            MeshError::InvalidSpec(msg) => write!(f, "invalid shell spec: {msg}"),
            MeshError::UnsupportedHighlight(m) => {
                write!(f, "highlight mode {m:?} is reserved but not implemented")
            }
        }
    }
}

impl core::error::Error for MeshError {}

/// How the 27 lines are made visible on the printed part. `Thinned` and
/// `Perforated` are reserved names for future variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HighlightMode {
    Cylinders,
    None,
    Thinned,
    Perforated,
}

/// Geometry parameters of the printable shell.
#[derive(Debug, Clone)]
pub struct ShellSpec {
    /// Half of the vane thickness, in box units.
    pub half_thickness: f64,
    /// Radius of the line-highlight cylinders; must exceed the half
    /// thickness so highlights stand out from the vanes.
    pub cylinder_radius: f64,
    pub highlight: HighlightMode,
    /// Grid cells per axis.
    pub resolution: u32,
    /// Box half-extents in build units.
    pub box_half: [f64; 3],
}

impl ShellSpec {
    /// Printable defaults for a box: half thickness 1% of the shortest box
    /// extent, cylinder radius twice that, 128 cells per axis.
    pub fn defaults(box_half: [f64; 3]) -> ShellSpec {
        let min_extent = 2.0 * box_half[0].min(box_half[1]).min(box_half[2]);
        let half_thickness = 0.01 * min_extent;
        ShellSpec {
            half_thickness,
            cylinder_radius: 2.0 * half_thickness,
            highlight: HighlightMode::Cylinders,
            resolution: 128,
            box_half,
        }
    }

    pub fn validate(&self) -> Result<(), MeshError> {
        if !(self.half_thickness > 0.0) {
            return Err(MeshError::InvalidSpec("half thickness must be positive"));
        }
        if self.resolution < 16 {
            return Err(MeshError::InvalidSpec("resolution must be at least 16"));
        }
        if self.box_half.iter().any(|&r| !(r > 0.0)) {
            return Err(MeshError::InvalidSpec("box half-extents must be positive"));
        }
        match self.highlight {
            HighlightMode::Cylinders => {
                if !(self.cylinder_radius > self.half_thickness) {
                    return Err(MeshError::InvalidSpec(
                        "cylinder radius must exceed the half thickness",
                    ));
                }
            }
            HighlightMode::None => {}
            m @ (HighlightMode::Thinned | HighlightMode::Perforated) => {
                return Err(MeshError::UnsupportedHighlight(m));
            }
        }
        Ok(())
    }

    pub fn cell_size(&self) -> [f64; 3] {
        core::array::from_fn(|k| 2.0 * self.box_half[k] / self.resolution as f64)
    }

    pub fn cell_diagonal(&self) -> f64 {
        let h = self.cell_size();
        (h[0] * h[0] + h[1] * h[1] + h[2] * h[2]).sqrt()
    }
}

#[derive(Debug, Clone)]
struct CylinderAxis {
    base: [f64; 3],
    /// Unit direction.
    dir: [f64; 3],
}

/// The signed implicit field of the printable solid. Negative inside.
/// Evaluation is pure; the float coefficients are compiled once here, so
/// shared concurrent reads are safe.
#[derive(Debug, Clone)]
pub struct ShapeField {
    f: FloatPoly,
    grad: [FloatPoly; 3],
    cylinders: Vec<CylinderAxis>,
    spec: ShellSpec,
}

impl ShapeField {
    /// Compiles the field from the scaled cubic and scaled lines.
    pub fn build(
        f_scaled: &MultiPoly,
        lines: &[ScaledLine],
        spec: ShellSpec,
    ) -> Result<ShapeField, MeshError> {
        spec.validate()?;
        let grad_polys = f_scaled.gradient();
        let grad: [FloatPoly; 3] = core::array::from_fn(|k| grad_polys[k].to_float());
        let cylinders = match spec.highlight {
            HighlightMode::Cylinders => lines
                .iter()
                .map(|l| {
                    let d = l.direction_f64;
                    let n = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
                    CylinderAxis {
                        base: l.base_f64,
                        dir: [d[0] / n, d[1] / n, d[2] / n],
                    }
                })
                .collect(),
            _ => Vec::new(),
        };
        Ok(ShapeField {
            f: f_scaled.to_float(),
            grad,
            cylinders,
            spec,
        })
    }

    pub fn spec(&self) -> &ShellSpec {
        &self.spec
    }

    /// First-order distance estimate to the surface minus the half
    /// thickness.
    pub fn shell_term(&self, p: &[f64; 3]) -> f64 {
        let v = self.f.evaluate(p);
        let g: [f64; 3] = core::array::from_fn(|k| self.grad[k].evaluate(p));
        let gn = (g[0] * g[0] + g[1] * g[1] + g[2] * g[2]).sqrt();
        v.abs() / gn.max(GRAD_FLOOR) - self.spec.half_thickness
    }

    /// Distance to the nearest highlighted line minus the cylinder radius;
    /// positive infinity without highlights.
    pub fn cylinder_term(&self, p: &[f64; 3]) -> f64 {
        let mut best = f64::INFINITY;
        for cyl in &self.cylinders {
            let d: [f64; 3] = core::array::from_fn(|k| p[k] - cyl.base[k]);
            let along = d[0] * cyl.dir[0] + d[1] * cyl.dir[1] + d[2] * cyl.dir[2];
            let perp: [f64; 3] = core::array::from_fn(|k| d[k] - along * cyl.dir[k]);
            let dist = (perp[0] * perp[0] + perp[1] * perp[1] + perp[2] * perp[2]).sqrt();
            best = best.min(dist - self.spec.cylinder_radius);
        }
        best
    }

    /// Union field: negative inside the solid.
    pub fn value(&self, p: &[f64; 3]) -> f64 {
        self.shell_term(p).min(self.cylinder_term(p))
    }

    /// Field clipped to the box (what the contouring samples).
    pub fn clipped(&self, p: &[f64; 3]) -> f64 {
        let b = (0..3)
            .map(|k| p[k].abs() - self.spec.box_half[k])
            .fold(f64::NEG_INFINITY, f64::max);
        self.value(p).max(b)
    }
}

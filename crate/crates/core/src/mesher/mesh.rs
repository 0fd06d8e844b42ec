//! Indexed triangle meshes: watertightness accounting, point containment
//! by ray parity, and the quality summary.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{HighlightMode, ShapeField};

/// Generation parameters carried along with the geometry.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshProvenance {
    pub resolution: u32,
    pub half_thickness: f64,
    pub cylinder_radius: f64,
    pub box_half: [f64; 3],
    pub highlight: HighlightMode,
}

/// An indexed triangle set, counter-clockwise outward.
#[derive(Debug, Clone)]
pub struct TriangleMesh {
    pub vertices: Vec<[f64; 3]>,
    pub triangles: Vec<[u32; 3]>,
    pub provenance: MeshProvenance,
}

/// Quality summary of a generated mesh.
#[derive(Debug, Clone)]
pub struct MeshQuality {
    pub watertight: bool,
    /// Undirected edges not shared by exactly two triangles.
    pub open_edges: Vec<(u32, u32)>,
    pub triangle_count: usize,
    pub vertex_count: usize,
    /// Maximum of | |f|/|grad f| - half_thickness | over shell vertices
    /// (cap and cylinder vertices excluded).
    pub max_shell_residual: f64,
    pub bbox_min: [f64; 3],
    pub bbox_max: [f64; 3],
}

impl TriangleMesh {
    /// Every undirected edge must border exactly two triangles.
    pub fn open_edges(&self) -> Vec<(u32, u32)> {
        let mut counts: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        for t in &self.triangles {
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                let key = (a.min(b), a.max(b));
                *counts.entry(key).or_insert(0) += 1;
            }
        }
        counts
            .into_iter()
            .filter(|&(_, c)| c != 2)
            .map(|(e, _)| e)
            .collect()
    }

    pub fn is_watertight(&self) -> bool {
        self.open_edges().is_empty()
    }

    pub fn bbox(&self) -> ([f64; 3], [f64; 3]) {
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for v in &self.vertices {
            for k in 0..3 {
                lo[k] = lo[k].min(v[k]);
                hi[k] = hi[k].max(v[k]);
            }
        }
        (lo, hi)
    }

    /// Point containment by ray parity. The ray direction is fixed and
    /// slightly irrational so grid-aligned geometry cannot produce
    /// edge-grazing ties for the sample points used in validation.
    pub fn contains_point(&self, p: &[f64; 3]) -> bool {
        let dir = [1.0, 0.012_345_678_9, 0.098_765_432_1];
        let mut crossings = 0usize;
        for t in &self.triangles {
            let a = self.vertices[t[0] as usize];
            let b = self.vertices[t[1] as usize];
            let c = self.vertices[t[2] as usize];
            if ray_hits_triangle(p, &dir, &a, &b, &c) {
                crossings += 1;
            }
        }
        crossings % 2 == 1
    }

    /// Total surface area (for sanity checks).
    pub fn area(&self) -> f64 {
        self.triangles
            .iter()
            .map(|t| {
                let a = self.vertices[t[0] as usize];
                let b = self.vertices[t[1] as usize];
                let c = self.vertices[t[2] as usize];
                let u: [f64; 3] = core::array::from_fn(|k| b[k] - a[k]);
                let v: [f64; 3] = core::array::from_fn(|k| c[k] - a[k]);
                let n = [
                    u[1] * v[2] - u[2] * v[1],
                    u[2] * v[0] - u[0] * v[2],
                    u[0] * v[1] - u[1] * v[0],
                ];
                0.5 * (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt()
            })
            .sum()
    }
}

fn ray_hits_triangle(
    origin: &[f64; 3],
    dir: &[f64; 3],
    a: &[f64; 3],
    b: &[f64; 3],
    c: &[f64; 3],
) -> bool {
    // Moeller-Trumbore
    let e1: [f64; 3] = core::array::from_fn(|k| b[k] - a[k]);
    let e2: [f64; 3] = core::array::from_fn(|k| c[k] - a[k]);
    let pv = [
        dir[1] * e2[2] - dir[2] * e2[1],
        dir[2] * e2[0] - dir[0] * e2[2],
        dir[0] * e2[1] - dir[1] * e2[0],
    ];
    let det = e1[0] * pv[0] + e1[1] * pv[1] + e1[2] * pv[2];
    if det.abs() < 1e-14 {
        return false;
    }
    let inv = 1.0 / det;
    let tv: [f64; 3] = core::array::from_fn(|k| origin[k] - a[k]);
    let u = (tv[0] * pv[0] + tv[1] * pv[1] + tv[2] * pv[2]) * inv;
    if !(0.0..=1.0).contains(&u) {
        return false;
    }
    let qv = [
        tv[1] * e1[2] - tv[2] * e1[1],
        tv[2] * e1[0] - tv[0] * e1[2],
        tv[0] * e1[1] - tv[1] * e1[0],
    ];
    let v = (dir[0] * qv[0] + dir[1] * qv[1] + dir[2] * qv[2]) * inv;
    if v < 0.0 || u + v > 1.0 {
        return false;
    }
    let t = (e2[0] * qv[0] + e2[1] * qv[1] + e2[2] * qv[2]) * inv;
    t > 1e-12
}

/// Builds the quality summary: watertightness, counts, bounding box and
/// the worst shell residual (how far shell vertices sit from the intended
/// offset distance).
pub fn mesh_report(mesh: &TriangleMesh, field: &ShapeField) -> MeshQuality {
    let open_edges = mesh.open_edges();
    let (bbox_min, bbox_max) = mesh.bbox();
    let spec = field.spec();
    // cap vertices land within the interpolation clamp of a box face
    let cell = spec.cell_size();
    let mut max_residual = 0.0f64;
    for v in &mesh.vertices {
        if (0..3).any(|k| v[k].abs() >= spec.box_half[k] - 1e-3 * cell[k]) {
            continue;
        }
        // cylinder vertices: the cylinder term dominates there
        if field.cylinder_term(v) < field.shell_term(v) {
            continue;
        }
        // shell_term is already |f|/|grad f| - half_thickness
        max_residual = max_residual.max(field.shell_term(v).abs());
    }
    MeshQuality {
        watertight: open_edges.is_empty(),
        open_edges,
        triangle_count: mesh.triangles.len(),
        vertex_count: mesh.vertices.len(),
        max_shell_residual: max_residual,
        bbox_min,
        bbox_max,
    }
}

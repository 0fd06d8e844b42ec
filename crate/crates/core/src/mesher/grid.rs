//! Contouring of the zero level set over a uniform grid. Each cell splits
//! into the six tetrahedra of the translation-invariant diagonal
//! subdivision, so neighboring cells always agree on shared faces and the
//! surface closes up; cells one layer outside the box cap the solid at the
//! box faces (the clipped field is positive out there).
//!
//! Vertices are deduplicated through a global grid-edge key, so the output
//! is independent of traversal order and byte-stable across runs.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::mesh::{MeshProvenance, TriangleMesh};
use super::{MeshError, ShellSpec};

/// Vertices of the six tetrahedra around the main diagonal of a cell;
/// corner bits: 1 = +x, 2 = +y, 4 = +z.
const TETS: [[usize; 4]; 6] = [
    [0, 1, 3, 7],
    [0, 1, 5, 7],
    [0, 2, 3, 7],
    [0, 2, 6, 7],
    [0, 4, 5, 7],
    [0, 4, 6, 7],
];

/// Interpolation clamp keeping vertices strictly off the grid nodes, so
/// snapped samples cannot produce zero-area triangles.
const T_CLAMP: f64 = 1e-4;

struct GridDims {
    /// Samples per axis, including the one-cell margin on each side.
    n: usize,
}

impl GridDims {
    fn node_id(&self, i: usize, j: usize, k: usize) -> u64 {
        ((i * self.n + j) * self.n + k) as u64
    }
}

/// Marching-tetrahedra contouring of `field`'s zero level set over the
/// box in `spec`, sampling one cell beyond every face so the solid is
/// capped at the box boundary.
pub fn contour(
    field: &dyn Fn(&[f64; 3]) -> f64,
    spec: &ShellSpec,
) -> Result<TriangleMesh, MeshError> {
    if spec.resolution < 16 {
        return Err(MeshError::InvalidSpec("resolution must be at least 16"));
    }
    if spec.box_half.iter().any(|&r| !(r > 0.0)) {
        return Err(MeshError::InvalidSpec("box half-extents must be positive"));
    }
    let res = spec.resolution as usize;
    let cell = spec.cell_size();
    // samples at -r - h .. r + h inclusive
    let n = res + 3;
    let dims = GridDims { n };
    let coord =
        |axis: usize, idx: usize| -> f64 { -spec.box_half[axis] + (idx as f64 - 1.0) * cell[axis] };

    let mut samples = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let p = [coord(0, i), coord(1, j), coord(2, k)];
                let mut v = field(&p);
                if v == 0.0 {
                    v = f64::MIN_POSITIVE; // zero samples count as outside
                }
                samples.push(v);
            }
        }
    }
    let sample = |i: usize, j: usize, k: usize| samples[(i * n + j) * n + k];

    let mut mesh = TriangleMesh {
        vertices: Vec::new(),
        triangles: Vec::new(),
        provenance: MeshProvenance {
            resolution: spec.resolution,
            half_thickness: spec.half_thickness,
            cylinder_radius: spec.cylinder_radius,
            box_half: spec.box_half,
            highlight: spec.highlight,
        },
    };
    let mut edge_vertices: BTreeMap<(u64, u64), u32> = BTreeMap::new();

    let corner_offset = |c: usize| -> (usize, usize, usize) { (c & 1, (c >> 1) & 1, (c >> 2) & 1) };

    for ci in 0..n - 1 {
        for cj in 0..n - 1 {
            for ck in 0..n - 1 {
                let corner_idx: [(usize, usize, usize); 8] = core::array::from_fn(|c| {
                    let (dx, dy, dz) = corner_offset(c);
                    (ci + dx, cj + dy, ck + dz)
                });
                let values: [f64; 8] = core::array::from_fn(|c| {
                    let (i, j, k) = corner_idx[c];
                    sample(i, j, k)
                });
                // skip uniform cells fast
                if values.iter().all(|&v| v > 0.0) || values.iter().all(|&v| v < 0.0) {
                    continue;
                }
                for tet in TETS.iter() {
                    emit_tet(
                        tet,
                        &corner_idx,
                        &values,
                        &dims,
                        &coord,
                        &mut edge_vertices,
                        &mut mesh,
                    );
                }
            }
        }
    }

    if mesh.triangles.is_empty() {
        return Err(MeshError::EmptyMesh);
    }
    Ok(mesh)
}

#[allow(clippy::too_many_arguments)]
fn emit_tet(
    tet: &[usize; 4],
    corner_idx: &[(usize, usize, usize); 8],
    values: &[f64; 8],
    dims: &GridDims,
    coord: &dyn Fn(usize, usize) -> f64,
    edge_vertices: &mut BTreeMap<(u64, u64), u32>,
    mesh: &mut TriangleMesh,
) {
    let inside: Vec<usize> = tet.iter().copied().filter(|&c| values[c] < 0.0).collect();
    let outside: Vec<usize> = tet.iter().copied().filter(|&c| values[c] >= 0.0).collect();
    if inside.is_empty() || outside.is_empty() {
        return;
    }

    let pos = |c: usize| -> [f64; 3] {
        let (i, j, k) = corner_idx[c];
        [coord(0, i), coord(1, j), coord(2, k)]
    };
    let mut cut = |a: usize, b: usize, mesh: &mut TriangleMesh| -> u32 {
        let (ia, ja, ka) = corner_idx[a];
        let (ib, jb, kb) = corner_idx[b];
        let na = dims.node_id(ia, ja, ka);
        let nb = dims.node_id(ib, jb, kb);
        let key = (na.min(nb), na.max(nb));
        if let Some(&v) = edge_vertices.get(&key) {
            return v;
        }
        // interpolate from the canonical (smaller node id) endpoint
        let (lo, hi) = if na <= nb { (a, b) } else { (b, a) };
        let (vlo, vhi) = (values[lo], values[hi]);
        let t = (vlo / (vlo - vhi)).clamp(T_CLAMP, 1.0 - T_CLAMP);
        let plo = pos(lo);
        let phi = pos(hi);
        let p: [f64; 3] = core::array::from_fn(|k| plo[k] + t * (phi[k] - plo[k]));
        let idx = mesh.vertices.len() as u32;
        mesh.vertices.push(p);
        edge_vertices.insert(key, idx);
        idx
    };

    // reference point on the inside, for outward orientation
    let inref: [f64; 3] = {
        let mut acc = [0.0; 3];
        for &c in &inside {
            let p = pos(c);
            for k in 0..3 {
                acc[k] += p[k];
            }
        }
        core::array::from_fn(|k| acc[k] / inside.len() as f64)
    };
    let push_tri = |a: u32, b: u32, c: u32, mesh: &mut TriangleMesh| {
        let pa = mesh.vertices[a as usize];
        let pb = mesh.vertices[b as usize];
        let pc = mesh.vertices[c as usize];
        let u: [f64; 3] = core::array::from_fn(|k| pb[k] - pa[k]);
        let v: [f64; 3] = core::array::from_fn(|k| pc[k] - pa[k]);
        let nrm = [
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        ];
        let centroid: [f64; 3] = core::array::from_fn(|k| (pa[k] + pb[k] + pc[k]) / 3.0);
        let outward: [f64; 3] = core::array::from_fn(|k| centroid[k] - inref[k]);
        let dot = nrm[0] * outward[0] + nrm[1] * outward[1] + nrm[2] * outward[2];
        if dot < 0.0 {
            mesh.triangles.push([a, c, b]);
        } else {
            mesh.triangles.push([a, b, c]);
        }
    };

    match inside.len() {
        1 => {
            let v = inside[0];
            let t0 = cut(v, outside[0], mesh);
            let t1 = cut(v, outside[1], mesh);
            let t2 = cut(v, outside[2], mesh);
            push_tri(t0, t1, t2, mesh);
        }
        3 => {
            let w = outside[0];
            let t0 = cut(inside[0], w, mesh);
            let t1 = cut(inside[1], w, mesh);
            let t2 = cut(inside[2], w, mesh);
            push_tri(t0, t1, t2, mesh);
        }
        2 => {
            let (u, v) = (inside[0], inside[1]);
            let (w, x) = (outside[0], outside[1]);
            let uw = cut(u, w, mesh);
            let ux = cut(u, x, mesh);
            let vx = cut(v, x, mesh);
            let vw = cut(v, w, mesh);
            // quad uw-ux-vx-vw split along the uw-vx diagonal
            push_tri(uw, ux, vx, mesh);
            push_tri(uw, vx, vw, mesh);
        }
        _ => unreachable!(),
    }
}

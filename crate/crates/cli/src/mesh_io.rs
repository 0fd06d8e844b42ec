//! Mesh file formats: binary STL (80-byte header, little-endian), ASCII
//! STL and Wavefront OBJ, plus readers for round-trip validation.

use std::io::{Read, Write};

use anyhow::{bail, Result};
use cubic_core::mesher::TriangleMesh;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshFormat {
    StlBinary,
    StlAscii,
    Obj,
}

impl MeshFormat {
    pub fn extension(&self) -> &'static str {
        match self {
            MeshFormat::StlBinary | MeshFormat::StlAscii => "stl",
            MeshFormat::Obj => "obj",
        }
    }
}

const STL_HEADER_TAG: &[u8] = b"cubic surface test artifact";

fn triangle_normal(a: &[f64; 3], b: &[f64; 3], c: &[f64; 3]) -> [f32; 3] {
    let u: [f64; 3] = core::array::from_fn(|k| b[k] - a[k]);
    let v: [f64; 3] = core::array::from_fn(|k| c[k] - a[k]);
    let n = [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ];
    let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    if len > 0.0 {
        [
            (n[0] / len) as f32,
            (n[1] / len) as f32,
            (n[2] / len) as f32,
        ]
    } else {
        [0.0, 0.0, 0.0]
    }
}

/// Writes the mesh in the requested format; returns the byte count.
pub fn write_mesh(mesh: &TriangleMesh, format: MeshFormat, out: &mut dyn Write) -> Result<u64> {
    let mut counter = CountingWriter {
        inner: out,
        bytes: 0,
    };
    match format {
        MeshFormat::StlBinary => write_stl_binary(mesh, &mut counter)?,
        MeshFormat::StlAscii => write_stl_ascii(mesh, &mut counter)?,
        MeshFormat::Obj => write_obj(mesh, &mut counter)?,
    }
    counter.flush()?;
    Ok(counter.bytes)
}

struct CountingWriter<'a> {
    inner: &'a mut dyn Write,
    bytes: u64,
}

impl Write for CountingWriter<'_> {
    fn write(&mut self, buf: &[u8]) -> std::io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.bytes += n as u64;
        Ok(n)
    }
    fn flush(&mut self) -> std::io::Result<()> {
        self.inner.flush()
    }
}

fn write_stl_binary(mesh: &TriangleMesh, out: &mut dyn Write) -> Result<()> {
    let mut header = [0u8; 80];
    header[..STL_HEADER_TAG.len()].copy_from_slice(STL_HEADER_TAG);
    out.write_all(&header)?;
    out.write_all(&(mesh.triangles.len() as u32).to_le_bytes())?;
    for t in &mesh.triangles {
        let a = mesh.vertices[t[0] as usize];
        let b = mesh.vertices[t[1] as usize];
        let c = mesh.vertices[t[2] as usize];
        for x in triangle_normal(&a, &b, &c) {
            out.write_all(&x.to_le_bytes())?;
        }
        for v in [a, b, c] {
            for x in v {
                out.write_all(&(x as f32).to_le_bytes())?;
            }
        }
        out.write_all(&0u16.to_le_bytes())?;
    }
    Ok(())
}

fn write_stl_ascii(mesh: &TriangleMesh, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "solid cubic_test_artifact")?;
    for t in &mesh.triangles {
        let a = mesh.vertices[t[0] as usize];
        let b = mesh.vertices[t[1] as usize];
        let c = mesh.vertices[t[2] as usize];
        let n = triangle_normal(&a, &b, &c);
        writeln!(out, "  facet normal {:e} {:e} {:e}", n[0], n[1], n[2])?;
        writeln!(out, "    outer loop")?;
        for v in [a, b, c] {
            writeln!(
                out,
                "      vertex {:e} {:e} {:e}",
                v[0] as f32, v[1] as f32, v[2] as f32
            )?;
        }
        writeln!(out, "    endloop")?;
        writeln!(out, "  endfacet")?;
    }
    writeln!(out, "endsolid cubic_test_artifact")?;
    Ok(())
}

fn write_obj(mesh: &TriangleMesh, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "# cubic surface test artifact")?;
    for v in &mesh.vertices {
        writeln!(out, "v {:e} {:e} {:e}", v[0], v[1], v[2])?;
    }
    for t in &mesh.triangles {
        writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1)?;
    }
    Ok(())
}

/// A mesh as read back from a file: one vertex triple per triangle corner
/// (no index dedup on the STL path).
#[derive(Debug, Clone)]
pub struct RawTriangles {
    pub triangles: Vec<[[f32; 3]; 3]>,
}

pub fn read_stl_binary(input: &mut dyn Read) -> Result<RawTriangles> {
    let mut header = [0u8; 80];
    input.read_exact(&mut header)?;
    let mut count_bytes = [0u8; 4];
    input.read_exact(&mut count_bytes)?;
    let count = u32::from_le_bytes(count_bytes);
    let mut triangles = Vec::with_capacity(count as usize);
    let mut record = [0u8; 50];
    for _ in 0..count {
        input.read_exact(&mut record)?;
        let f = |off: usize| -> f32 {
            f32::from_le_bytes(record[off..off + 4].try_into().expect("4 bytes"))
        };
        // skip the normal (offsets 0..12)
        let tri: [[f32; 3]; 3] =
            core::array::from_fn(|v| core::array::from_fn(|k| f(12 + 12 * v + 4 * k)));
        triangles.push(tri);
    }
    let mut rest = Vec::new();
    input.read_to_end(&mut rest)?;
    if !rest.is_empty() {
        bail!("trailing bytes after {} triangles", count);
    }
    Ok(RawTriangles { triangles })
}

pub fn read_stl_ascii(text: &str) -> Result<RawTriangles> {
    let mut triangles = Vec::new();
    let mut current: Vec<[f32; 3]> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("vertex ") {
            let coords: Vec<f32> = rest
                .split_whitespace()
                .map(|s| s.parse::<f32>())
                .collect::<Result<_, _>>()?;
            if coords.len() != 3 {
                bail!("vertex line with {} coordinates", coords.len());
            }
            current.push([coords[0], coords[1], coords[2]]);
        } else if line.starts_with("endfacet") {
            if current.len() != 3 {
                bail!("facet with {} vertices", current.len());
            }
            triangles.push([current[0], current[1], current[2]]);
            current.clear();
        }
    }
    Ok(RawTriangles { triangles })
}

pub fn read_obj(text: &str) -> Result<(usize, usize)> {
    let mut vertices = 0usize;
    let mut faces = 0usize;
    for line in text.lines() {
        if line.starts_with("v ") {
            vertices += 1;
        } else if line.starts_with("f ") {
            faces += 1;
        }
    }
    Ok((vertices, faces))
}

#[cfg(test)]
mod tests {
    use super::*;
    use cubic_core::mesher::{HighlightMode, MeshProvenance, TriangleMesh};

    fn one_triangle() -> TriangleMesh {
        TriangleMesh {
            vertices: vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]],
            triangles: vec![[0, 1, 2]],
            provenance: MeshProvenance {
                resolution: 16,
                half_thickness: 0.1,
                cylinder_radius: 0.2,
                box_half: [1.0, 1.0, 1.0],
                highlight: HighlightMode::None,
            },
        }
    }

    #[test]
    fn one_triangle_binary_size() {
        let mesh = one_triangle();
        let mut buf = Vec::new();
        let bytes = write_mesh(&mesh, MeshFormat::StlBinary, &mut buf).unwrap();
        assert_eq!(bytes, 134); // 80 + 4 + 50
        assert_eq!(buf.len(), 134);
        let back = read_stl_binary(&mut buf.as_slice()).unwrap();
        assert_eq!(back.triangles.len(), 1);
        for (v, expect) in back.triangles[0].iter().zip(mesh.vertices.iter()) {
            for k in 0..3 {
                assert!((v[k] as f64 - expect[k]).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn ascii_and_obj_round_trip_counts() {
        let mesh = one_triangle();
        let mut buf = Vec::new();
        write_mesh(&mesh, MeshFormat::StlAscii, &mut buf).unwrap();
        let back = read_stl_ascii(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(back.triangles.len(), 1);

        let mut buf = Vec::new();
        write_mesh(&mesh, MeshFormat::Obj, &mut buf).unwrap();
        let (v, f) = read_obj(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!((v, f), (3, 1));
    }
}

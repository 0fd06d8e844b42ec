//! Exact points files: one point per line, three expression strings
//! separated by colons, e.g. `0 : 1 : -(1+sqrt(5))/2`. Blank lines and
//! `#` comments are skipped. All coordinates are parsed exactly and
//! promoted into one common field tower.

use anyhow::{bail, Context, Result};
use cubic_core::numfield::{unify, FieldElement};
use cubic_core::surface::PlanePoint;

pub fn parse_points(text: &str) -> Result<[PlanePoint; 6]> {
    let mut raw: Vec<[FieldElement; 3]> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split(':').collect();
        if parts.len() != 3 {
            bail!(
                "line {}: expected three coordinates separated by ':', got {}",
                lineno + 1,
                parts.len()
            );
        }
        let mut coords = Vec::with_capacity(3);
        for part in parts {
            let value = FieldElement::parse(part.trim())
                .with_context(|| format!("line {}: cannot parse '{}'", lineno + 1, part.trim()))?;
            coords.push(value);
        }
        raw.push(coords.try_into().expect("three coordinates"));
    }
    if raw.len() != 6 {
        bail!("expected exactly 6 points, found {}", raw.len());
    }
    // unify all coordinates into one field
    let mut field = raw[0][0].field().clone();
    for p in &raw {
        for c in p {
            field = unify(&field, c.field()).context("unifying coordinate fields")?;
        }
    }
    let mut points = Vec::with_capacity(6);
    for p in raw {
        let promoted: [FieldElement; 3] = [
            p[0].promote(&field).context("promoting coordinate")?,
            p[1].promote(&field).context("promoting coordinate")?,
            p[2].promote(&field).context("promoting coordinate")?,
        ];
        points.push(PlanePoint::new(promoted).map_err(|e| anyhow::anyhow!("invalid point: {e}"))?);
    }
    Ok(points.try_into().expect("six points"))
}

//! Field CSV files (`x,y,value`, row-major) with a JSON metadata sidecar.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{DirichletSpec, FieldKind, FieldSample};
use crate::error::{Error, Result};
use crate::lattice::LatticeBox;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainMeta {
    pub cx: f64,
    pub cy: f64,
    pub hx: f64,
    pub hy: f64,
}

impl DomainMeta {
    pub fn of(b: &LatticeBox) -> Self {
        DomainMeta {
            cx: (b.x0 + b.x1) as f64 / 2.0,
            cy: (b.y0 + b.y1) as f64 / 2.0,
            hx: (b.x1 - b.x0) as f64 / 2.0,
            hy: (b.y1 - b.y0) as f64 / 2.0,
        }
    }

    pub fn to_box(&self) -> Result<LatticeBox> {
        let r = |v: f64| -> Result<i32> {
            if v.fract() != 0.0 {
                return Err(Error::Parse(format!("domain bound {v} is not an integer")));
            }
            Ok(v as i32)
        };
        LatticeBox::new(r(self.cx - self.hx)?, r(self.cx + self.hx)?, r(self.cy - self.hy)?, r(self.cy + self.hy)?)
    }
}

/// Metadata sidecar of a field file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldMeta {
    pub kind: FieldKind,
    pub seed: u64,
    pub domain: DomainMeta,
    pub dirichlet: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub dirichlet_vertices: Vec<(i32, i32)>,
}

impl FieldMeta {
    pub fn of(f: &FieldSample) -> Self {
        let tag = f.dirichlet_tag();
        let dirichlet_vertices = if tag == "custom" {
            f.domain.points().zip(&f.dirichlet).filter(|(_, d)| **d).map(|(p, _)| p).collect()
        } else {
            Vec::new()
        };
        FieldMeta {
            kind: f.kind,
            seed: f.seed,
            domain: DomainMeta::of(&f.domain),
            dirichlet: tag.to_string(),
            dirichlet_vertices,
        }
    }

    fn mask(&self, domain: &LatticeBox) -> Result<Vec<bool>> {
        match self.dirichlet.as_str() {
            "none" => Ok(vec![false; domain.len()]),
            "origin" => DirichletSpec::Origin.mask(domain),
            "boundary" => DirichletSpec::Boundary.mask(domain),
            "both" => DirichletSpec::Both.mask(domain),
            "custom" => DirichletSpec::Custom(self.dirichlet_vertices.clone()).mask(domain),
            other => Err(Error::Parse(format!("unknown Dirichlet tag {other:?}"))),
        }
    }
}

/// Sidecar location: the CSV path with its extension replaced by `json`.
pub fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("json")
}

pub fn field_to_csv(f: &FieldSample) -> String {
    let mut s = String::with_capacity(f.values.len() * 24 + 12);
    s.push_str("x,y,value\n");
    for (p, v) in f.domain.points().zip(&f.values) {
        let _ = writeln!(s, "{},{},{}", p.0, p.1, v);
    }
    s
}

/// Writes the CSV and its sidecar.
pub fn write_field(f: &FieldSample, csv: &Path) -> Result<()> {
    fs::write(csv, field_to_csv(f))?;
    let meta = serde_json::to_string_pretty(&FieldMeta::of(f))?;
    fs::write(sidecar_path(csv), meta + "\n")?;
    Ok(())
}

/// Parses a field CSV; the domain is the bounding box of the listed
/// vertices, which must cover it exactly once.
pub fn parse_field_csv(text: &str) -> Result<(LatticeBox, Vec<f64>)> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty field file".into()))?;
    if header.trim() != "x,y,value" {
        return Err(Error::Parse(format!("unexpected header {header:?}")));
    }
    let mut rows = Vec::new();
    for (ln, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').map(str::trim).collect();
        if cols.len() != 3 {
            return Err(Error::Parse(format!("line {}: expected 3 columns", ln + 2)));
        }
        let bad = |c: &str| Error::Parse(format!("line {}: bad number {c:?}", ln + 2));
        let x: i32 = cols[0].parse().map_err(|_| bad(cols[0]))?;
        let y: i32 = cols[1].parse().map_err(|_| bad(cols[1]))?;
        let v: f64 = cols[2].parse().map_err(|_| bad(cols[2]))?;
        rows.push((x, y, v));
    }
    if rows.is_empty() {
        return Err(Error::Parse("field file has no rows".into()));
    }
    let x0 = rows.iter().map(|r| r.0).min().unwrap();
    let x1 = rows.iter().map(|r| r.0).max().unwrap();
    let y0 = rows.iter().map(|r| r.1).min().unwrap();
    let y1 = rows.iter().map(|r| r.1).max().unwrap();
    let dom = LatticeBox::new(x0, x1, y0, y1)?;
    let mut values = vec![f64::NAN; dom.len()];
    for (x, y, v) in rows {
        let i = dom.index((x, y)).unwrap();
        if !values[i].is_nan() {
            return Err(Error::Parse(format!("vertex ({x},{y}) listed twice")));
        }
        values[i] = v;
    }
    if values.iter().any(|v| v.is_nan()) {
        return Err(Error::Parse("field file does not cover its bounding box".into()));
    }
    Ok((dom, values))
}

/// Reads a field CSV and, when present, its sidecar.
pub fn read_field(csv: &Path) -> Result<FieldSample> {
    let (domain, values) = parse_field_csv(&fs::read_to_string(csv)?)?;
    let side = sidecar_path(csv);
    let (kind, seed, dirichlet) = if side.exists() {
        let meta: FieldMeta = serde_json::from_str(&fs::read_to_string(&side)?)?;
        if meta.domain.to_box()? != domain {
            return Err(Error::Parse("sidecar domain does not match the CSV".into()));
        }
        let mask = meta.mask(&domain)?;
        (meta.kind, meta.seed, mask)
    } else {
        (FieldKind::Synthetic, 0, vec![false; domain.len()])
    };
    FieldSample::new(domain, values, dirichlet, kind, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn csv_roundtrip_is_exact(vals in proptest::collection::vec(-1e6f64..1e6, 15)) {
            let d = LatticeBox::new(-2, 2, 0, 2).unwrap();
            let f = FieldSample::new(d, vals, vec![false; 15], FieldKind::Synthetic, 0).unwrap();
            let (dom, back) = parse_field_csv(&field_to_csv(&f)).unwrap();
            prop_assert_eq!(dom, d);
            prop_assert_eq!(back, f.values);
        }
    }

    #[test]
    fn rejects_holes() {
        assert!(parse_field_csv("x,y,value\n0,0,1\n2,0,1\n").is_err());
        assert!(parse_field_csv("a,b,c\n").is_err());
    }
}

//! Field serialization: a raw little-endian binary format for production
//! fields and JSON for small cases.
//!
//! Binary layout: magic "SSL1", u32 n, f64 r_max, u32 l, then 2n f64 samples
//! interleaved re/im in node order.

use crate::error::{Error, Result};
use crate::grid::{RadialGrid, SectorField};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};
use std::path::Path;

const MAGIC: &[u8; 4] = b"SSL1";

pub fn write_field(path: &Path, field: &SectorField) -> Result<()> {
    let grid = field.grid();
    let mut buf = Vec::with_capacity(16 + 16 * grid.n());
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&(grid.n() as u32).to_le_bytes());
    buf.extend_from_slice(&grid.r_max().to_le_bytes());
    buf.extend_from_slice(&grid.l().to_le_bytes());
    for v in field.values() {
        buf.extend_from_slice(&v.re.to_le_bytes());
        buf.extend_from_slice(&v.im.to_le_bytes());
    }
    let mut file = std::fs::File::create(path)?;
    file.write_all(&buf)?;
    Ok(())
}

pub fn read_field(path: &Path) -> Result<SectorField> {
    let mut bytes = Vec::new();
    std::fs::File::open(path)?.read_to_end(&mut bytes)?;
    if bytes.len() < 16 || &bytes[0..4] != MAGIC {
        return Err(Error::Serialization(format!("{}: not a field file", path.display())));
    }
    let n = u32::from_le_bytes(bytes[4..8].try_into().unwrap()) as usize;
    let r_max = f64::from_le_bytes(bytes[8..16].try_into().unwrap());
    let l = u32::from_le_bytes(bytes[16..20].try_into().unwrap());
    let expected = 20 + 16 * n;
    if bytes.len() != expected {
        return Err(Error::Serialization(format!(
            "{}: {} bytes, expected {expected}",
            path.display(),
            bytes.len()
        )));
    }
    let grid = RadialGrid::new(r_max, n, l)?;
    let values = (0..n)
        .map(|i| {
            let off = 20 + 16 * i;
            Complex64::new(
                f64::from_le_bytes(bytes[off..off + 8].try_into().unwrap()),
                f64::from_le_bytes(bytes[off + 8..off + 16].try_into().unwrap()),
            )
        })
        .collect();
    SectorField::new(grid, values)
}

#[derive(Serialize, Deserialize)]
struct FieldJson {
    r_max: f64,
    n: usize,
    l: u32,
    re: Vec<f64>,
    im: Vec<f64>,
}

pub fn write_field_json(path: &Path, field: &SectorField) -> Result<()> {
    let grid = field.grid();
    let dto = FieldJson {
        r_max: grid.r_max(),
        n: grid.n(),
        l: grid.l(),
        re: field.values().iter().map(|v| v.re).collect(),
        im: field.values().iter().map(|v| v.im).collect(),
    };
    let text = serde_json::to_string_pretty(&dto).map_err(|e| Error::Serialization(e.to_string()))?;
    std::fs::write(path, text)?;
    Ok(())
}

pub fn read_field_json(path: &Path) -> Result<SectorField> {
    let text = std::fs::read_to_string(path)?;
    let dto: FieldJson = serde_json::from_str(&text).map_err(|e| Error::Serialization(e.to_string()))?;
    if dto.re.len() != dto.n || dto.im.len() != dto.n {
        return Err(Error::Serialization("sample arrays disagree with n".into()));
    }
    let grid = RadialGrid::new(dto.r_max, dto.n, dto.l)?;
    let values = dto
        .re
        .iter()
        .zip(&dto.im)
        .map(|(&re, &im)| Complex64::new(re, im))
        .collect();
    SectorField::new(grid, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::TEST_N;

    #[test]
    fn binary_round_trip() {
        let dir = std::env::temp_dir().join("ssl_io_test");
        std::fs::create_dir_all(&dir).unwrap();
        let grid = RadialGrid::new(25.0, TEST_N, 1).unwrap();
        let f = SectorField::from_fn(grid, |r| Complex64::new((-r).exp(), r * (-r).exp()));
        let path = dir.join("field.ssl");
        write_field(&path, &f).unwrap();
        let g = read_field(&path).unwrap();
        assert_eq!(g.grid().n(), TEST_N);
        assert_eq!(g.grid().l(), 1);
        for (a, b) in f.values().iter().zip(g.values()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn json_round_trip() {
        let dir = std::env::temp_dir().join("ssl_io_test");
        std::fs::create_dir_all(&dir).unwrap();
        let grid = RadialGrid::new(10.0, 16, 0).unwrap();
        let f = SectorField::from_fn(grid, |r| Complex64::new(r, -r));
        let path = dir.join("field.json");
        write_field_json(&path, &f).unwrap();
        let g = read_field_json(&path).unwrap();
        for (a, b) in f.values().iter().zip(g.values()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn rejects_foreign_bytes() {
        let dir = std::env::temp_dir().join("ssl_io_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("junk.ssl");
        std::fs::write(&path, b"not a field").unwrap();
        assert!(read_field(&path).is_err());
    }
}

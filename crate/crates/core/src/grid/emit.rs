//! CSV and PGM output for grids.
//!
//! CSV: one header line `# n=2 lo=-2e0,-2e0 hi=2e0,2e0 N=64,64 epsilon=2e-2`
//! followed by one value per line in row-major order (last axis fastest).
//! Values use the shortest round-trip exponent notation, so parsing
//! reproduces them bit for bit.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::{GridSpec, WignerGrid};
use crate::error::{Result, WignerError};

fn join(xs: &[f64]) -> String {
    xs.iter().map(|x| format!("{x:e}")).collect::<Vec<_>>().join(",")
}

pub fn to_csv_string(grid: &WignerGrid) -> String {
    let s = &grid.spec;
    let samples: Vec<String> = s.samples.iter().map(|n| n.to_string()).collect();
    let mut out = format!(
        "# n={} lo={} hi={} N={} epsilon={:e}\n",
        s.n(),
        join(&s.lo),
        join(&s.hi),
        samples.join(","),
        s.epsilon
    );
    for v in &grid.values {
        let _ = writeln!(out, "{v:e}");
    }
    out
}

pub fn write_csv(grid: &WignerGrid, path: &Path) -> Result<()> {
    fs::write(path, to_csv_string(grid))?;
    Ok(())
}

fn parse_list<T: std::str::FromStr>(text: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| WignerError::Parse(format!("bad number {x:?}"))))
        .collect()
}

pub fn parse_csv(text: &str) -> Result<WignerGrid> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .and_then(|l| l.strip_prefix('#'))
        .ok_or_else(|| WignerError::Parse("missing header line".into()))?;
    let (mut lo, mut hi, mut samples, mut eps, mut n) = (None, None, None, None, None);
    for field in header.split_whitespace() {
        let (key, value) =
            field.split_once('=').ok_or_else(|| WignerError::Parse(format!("bad header field {field:?}")))?;
        match key {
            "n" => n = Some(value.parse::<usize>().map_err(|_| WignerError::Parse("bad n".into()))?),
            "lo" => lo = Some(parse_list::<f64>(value)?),
            "hi" => hi = Some(parse_list::<f64>(value)?),
            "N" => samples = Some(parse_list::<usize>(value)?),
            "epsilon" => eps = Some(value.parse::<f64>().map_err(|_| WignerError::Parse("bad epsilon".into()))?),
            _ => return Err(WignerError::Parse(format!("unknown header key {key:?}"))),
        }
    }
    let missing = |k: &str| WignerError::Parse(format!("header lacks {k}"));
    let spec = GridSpec::new(
        lo.ok_or_else(|| missing("lo"))?,
        hi.ok_or_else(|| missing("hi"))?,
        samples.ok_or_else(|| missing("N"))?,
        eps.ok_or_else(|| missing("epsilon"))?,
    )?;
    if n.is_some_and(|n| n != spec.n()) {
        return Err(WignerError::Parse("n disagrees with lo/hi/N".into()));
    }
    let values = lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.trim().parse::<f64>().map_err(|_| WignerError::Parse(format!("bad value {l:?}"))))
        .collect::<Result<Vec<_>>>()?;
    WignerGrid::from_values(spec, values)
}

/// Affine map from values to gray levels recorded next to an image.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PgmScaling {
    pub width: usize,
    pub height: usize,
    /// Value mapped to gray level 0.
    pub min: f64,
    /// Value mapped to gray level 255.
    pub max: f64,
}

fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta");
    PathBuf::from(s)
}

/// Writes a binary PGM of a 2-D grid, or of the slice `index` along `axis`
/// of a 3-D grid. The first free axis runs left to right, the second
/// bottom to top. The scaling goes to `<path>.meta`.
pub fn write_pgm_slice(grid: &WignerGrid, path: &Path, slice: Option<(usize, usize)>) -> Result<PgmScaling> {
    let spec = &grid.spec;
    let (free, fixed): (Vec<usize>, Option<(usize, usize)>) = match (spec.n(), slice) {
        (2, None) => (vec![0, 1], None),
        (3, Some((axis, index))) if axis < 3 && index < spec.samples[axis] => {
            ((0..3).filter(|&k| k != axis).collect(), Some((axis, index)))
        }
        (3, _) => return Err(WignerError::InvalidArgument("3-D grids need a valid slice (axis, index)".into())),
        (n, _) => return Err(WignerError::InvalidArgument(format!("cannot draw an image of an {n}-D grid"))),
    };
    let (width, height) = (spec.samples[free[0]], spec.samples[free[1]]);
    let mut idx = vec![0usize; spec.n()];
    if let Some((axis, index)) = fixed {
        idx[axis] = index;
    }
    let mut plane = Vec::with_capacity(width * height);
    for row in 0..height {
        for col in 0..width {
            idx[free[0]] = col;
            idx[free[1]] = height - 1 - row;
            plane.push(grid.value(&idx));
        }
    }
    let min = plane.iter().copied().fold(f64::INFINITY, f64::min);
    let max = plane.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let range = if max > min { max - min } else { 1.0 };
    let mut bytes = format!("P5\n{width} {height}\n255\n").into_bytes();
    bytes.extend(plane.iter().map(|v| (((v - min) / range) * 255.0).round().clamp(0.0, 255.0) as u8));
    fs::write(path, bytes)?;
    let meta = format!(
        "width={width}\nheight={height}\nmin={min:e}\nmax={max:e}\ngray=(value-min)/(max-min)*255\nslice={}\n",
        fixed.map_or("none".to_string(), |(a, i)| format!("axis {a} index {i}"))
    );
    fs::write(sidecar_path(path), meta)?;
    Ok(PgmScaling { width, height, min, max })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::grid::compute_wigner_grid;

    fn tmp(name: &str) -> PathBuf {
        std::env::temp_dir().join(format!("qwigner-emit-{}-{name}", std::process::id()))
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let ex = catalog::make("pauli2").unwrap();
        let spec = GridSpec::new(vec![-2.0, -1.7], vec![2.0, 1.3], vec![16, 32], 0.05).unwrap();
        let grid = compute_wigner_grid(&ex.tuple, &ex.state, &spec).unwrap();
        let back = parse_csv(&to_csv_string(&grid)).unwrap();
        assert_eq!(back.spec, grid.spec);
        assert!(back.values.iter().zip(&grid.values).all(|(a, b)| a.to_bits() == b.to_bits()));
    }

    #[test]
    fn pgm_dimensions_and_sidecar() {
        let spec = GridSpec::new(vec![0.0, 0.0], vec![1.0, 1.0], vec![16, 8], 0.1).unwrap();
        let values = (0..spec.len()).map(|f| f as f64).collect();
        let grid = WignerGrid::from_values(spec, values).unwrap();
        let path = tmp("a.pgm");
        let scale = write_pgm_slice(&grid, &path, None).unwrap();
        let bytes = fs::read(&path).unwrap();
        assert!(bytes.starts_with(b"P5\n16 8\n255\n"));
        assert_eq!(bytes.len(), b"P5\n16 8\n255\n".len() + 128);
        assert_eq!((scale.min, scale.max), (0.0, 127.0));
        let meta = fs::read_to_string(sidecar_path(&path)).unwrap();
        assert!(meta.contains("min=0e0"));
        fs::remove_file(&path).ok();
        fs::remove_file(sidecar_path(&path)).ok();
    }

    #[test]
    fn central_slice_of_3d_grid() {
        let ex = catalog::make("pauli3").unwrap();
        let spec = GridSpec::cube(3, -2.0, 2.0, 16, 0.05).unwrap();
        let grid = compute_wigner_grid(&ex.tuple, &ex.state, &spec).unwrap();
        let path = tmp("b.pgm");
        let scale = write_pgm_slice(&grid, &path, Some((2, 8))).unwrap();
        assert_eq!((scale.width, scale.height), (16, 16));
        assert!(write_pgm_slice(&grid, &path, None).is_err());
        fs::remove_file(&path).ok();
        fs::remove_file(sidecar_path(&path)).ok();
    }
}

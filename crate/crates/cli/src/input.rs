//! Parsing of command line values into core types.

use std::fs;

use num_bigint::BigInt;
use valgcd_core::grid::GridBox;
use valgcd_core::{parse_family, Error, Polynomial, Result};

use crate::args::PolyArgs;

pub struct Family {
    pub texts: Vec<String>,
    pub polys: Vec<Polynomial>,
}

pub fn read_polys(args: &PolyArgs) -> Result<Family> {
    let texts: Vec<String> = match &args.polys_file {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(String::from)
            .collect(),
        None => args.polys.clone(),
    };
    if texts.is_empty() {
        return Err(Error::Precondition("no polynomials given".into()));
    }
    let polys = parse_family(&texts)?;
    Ok(Family { texts, polys })
}

fn parse_int<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    let t = s.trim().replace('\u{2212}', "-");
    t.parse().map_err(|_| Error::Syntax { column: 1, message: format!("{what}: cannot read {s:?} as an integer") })
}

fn parse_range(s: &str) -> Result<(i64, i64)> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| Error::Syntax { column: 1, message: format!("range {s:?} is not of the form a..b") })?;
    Ok((parse_int(lo, "range start")?, parse_int(hi, "range end")?))
}

/// `"a..b"` for every variable, or one comma separated range per variable.
pub fn parse_box(s: &str, dim: usize) -> Result<GridBox> {
    let parts: Vec<&str> = s.split(',').collect();
    let ranges = if parts.len() == 1 {
        vec![parse_range(parts[0])?; dim]
    } else {
        parts.iter().map(|p| parse_range(p)).collect::<Result<Vec<_>>>()?
    };
    let grid = GridBox::new(ranges)?;
    grid.check_dim(dim)?;
    Ok(grid)
}

/// Comma separated values and inclusive ranges.
pub fn parse_set(s: &str) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for part in s.split(',') {
        if part.contains("..") {
            let (lo, hi) = parse_range(part)?;
            out.extend(lo..=hi);
        } else {
            out.push(parse_int(part, "set element")?);
        }
    }
    Ok(out)
}

pub fn parse_point(s: &str) -> Result<Vec<BigInt>> {
    s.split(',').map(|c| parse_int(c, "coordinate")).collect()
}

//! Text file format for lattice functions.
//!
//! ```text
//! h=<scalar> region=<whole|upper|lower|box lo..hi> mode=<exact|float>
//! m0 m1 m2 m3 m4 m5 m6 m7 : c0 c1 c2 c3 c4 c5 c6 c7
//! ...
//! ```
//!
//! Box corners are comma-separated, e.g. `box -1,-1,-1,-1,-1,-1,-1,0..1,1,1,1,1,1,1,1`.
//! Blank lines and lines starting with `#` are ignored.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::algebra::Octonion;
use crate::error::{Error, Result};
use crate::scalar::{Mode, Scalar};

use super::{LatticeFunction, MultiIndex, Region};

#[derive(Debug, Clone, PartialEq)]
pub struct FileHeader {
    /// Lattice constant as written; parse it with the scalar type of `mode`.
    pub h: String,
    pub region: Region,
    pub mode: Mode,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

impl FileHeader {
    pub fn parse(line: &str) -> Result<Self> {
        let line = line.trim();
        let rest = line.strip_prefix("h=").ok_or_else(|| parse_err(1, "header must start with `h=`"))?;
        let (h, rest) = rest.split_once(" region=").ok_or_else(|| parse_err(1, "header is missing `region=`"))?;
        let (region, mode) = rest.rsplit_once(" mode=").ok_or_else(|| parse_err(1, "header is missing `mode=`"))?;
        Ok(FileHeader {
            h: h.trim().to_string(),
            region: region.parse().map_err(|e: String| parse_err(1, e))?,
            mode: mode.trim().parse().map_err(|e: String| parse_err(1, e))?,
        })
    }

    /// Reads only the header line of a function file.
    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(text.lines().next().unwrap_or(""))
    }
}

pub fn render_function<S: Scalar>(f: &LatticeFunction<S>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "h={} region={} mode={}", f.h().render(), f.region(), S::MODE);
    for (m, v) in f.iter() {
        let _ = writeln!(out, "{m} : {}", v.render());
    }
    out
}

pub fn write_function<S: Scalar>(path: impl AsRef<Path>, f: &LatticeFunction<S>) -> Result<()> {
    std::fs::write(path, render_function(f))?;
    Ok(())
}

pub fn read_function<S: Scalar>(path: impl AsRef<Path>) -> Result<LatticeFunction<S>> {
    read_function_str(&std::fs::read_to_string(path)?)
}

pub fn read_function_str<S: Scalar>(text: &str) -> Result<LatticeFunction<S>> {
    let mut lines = text.lines().enumerate();
    let header = match lines.next() {
        Some((_, l)) => FileHeader::parse(l)?,
        None => return Err(parse_err(1, "missing header line")),
    };
    if header.mode != S::MODE {
        return Err(parse_err(1, format!("file is in {} mode, expected {}", header.mode, S::MODE)));
    }
    let h = S::parse_canonical(&header.h).map_err(|e| parse_err(1, e))?;
    if !h.is_positive() {
        return Err(parse_err(1, "lattice constant must be positive"));
    }

    let mut values = BTreeMap::new();
    for (idx, raw) in lines {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (site, coeffs) = line
            .split_once(':')
            .ok_or_else(|| parse_err(lineno, "expected `m0 .. m7 : c0 .. c7`"))?;
        let m: MultiIndex = site.parse().map_err(|e: String| parse_err(lineno, e))?;
        if !header.region.admits(&m) {
            return Err(parse_err(lineno, format!("site ({m}) lies outside region {}", header.region)));
        }
        let v = Octonion::<S>::parse(coeffs).map_err(|e| parse_err(lineno, e))?;
        if values.insert(m, v).is_some() {
            return Err(parse_err(lineno, format!("duplicate site ({m})")));
        }
    }
    let entries = values.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    Ok(LatticeFunction::from_sorted_unchecked(h, header.region, entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{random_function, BoxRegion};
    use crate::scalar::Rational;

    #[test]
    fn round_trip_random() {
        let f = random_function::<Rational>(&BoxRegion::cube(1), 7, Rational::new(1, 3)).unwrap();
        let text = render_function(&f);
        let g: LatticeFunction<Rational> = read_function_str(&text).unwrap();
        assert_eq!(f, g);
        assert_eq!(render_function(&g), text);
    }

    #[test]
    fn round_trip_float_and_box_region() {
        let b = BoxRegion::new(MultiIndex([-1, 0, 0, 0, 0, 0, 0, 0]), MultiIndex([1, 0, 0, 0, 0, 0, 1, 2]));
        let f = random_function::<f64>(&b, 11, 0.25).unwrap().with_region(Region::Box(b)).unwrap();
        let g: LatticeFunction<f64> = read_function_str(&render_function(&f)).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn empty_body_is_zero_function() {
        let f: LatticeFunction<Rational> = read_function_str("h=1/2 region=upper mode=exact\n").unwrap();
        assert!(f.is_empty());
        assert_eq!(f.region(), Region::Upper);
        assert_eq!(*f.h(), Rational::new(1, 2));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let dup = "h=1 region=whole mode=exact\n0 0 0 0 0 0 0 0 : 1 0 0 0 0 0 0 0\n\n0 0 0 0 0 0 0 0 : 0 1 0 0 0 0 0 0\n";
        match read_function_str::<Rational>(dup) {
            Err(Error::Parse { line: 4, message }) => assert!(message.contains("(0 0 0 0 0 0 0 0)"), "{message}"),
            other => panic!("unexpected {other:?}"),
        }
        let non_reduced = "h=1 region=whole mode=exact\n0 0 0 0 0 0 0 0 : 2/4 0 0 0 0 0 0 0\n";
        assert!(matches!(read_function_str::<Rational>(non_reduced), Err(Error::Parse { line: 2, .. })));
        let short = "h=1 region=whole mode=exact\n0 0 0 : 1 0 0 0 0 0 0 0\n";
        assert!(matches!(read_function_str::<Rational>(short), Err(Error::Parse { line: 2, .. })));
        let outside = "h=1 region=upper mode=exact\n0 0 0 0 0 0 0 -1 : 1 0 0 0 0 0 0 0\n";
        assert!(matches!(read_function_str::<Rational>(outside), Err(Error::Parse { line: 2, .. })));
        let wrong_mode = "h=1 region=whole mode=float\n";
        assert!(matches!(read_function_str::<Rational>(wrong_mode), Err(Error::Parse { line: 1, .. })));
        assert!(read_function_str::<Rational>("").is_err());
    }
}

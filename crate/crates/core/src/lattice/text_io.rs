//! Plain-text serialization for cross-checking against independent tools.
//!
//! Format: one complex number per line as `re im` (two decimal floats
//! separated by a single space), nothing else. States are `N` lines;
//! operators are `n^2` lines in row-major order, the dimension inferred
//! from the line count.

use num_complex::Complex64;

use crate::error::{Error, Result};

use super::{LatticeState, OperatorMatrix};

pub fn write_complex_lines(values: &[Complex64]) -> String {
    let mut out = String::new();
    for v in values {
        out.push_str(&format!("{} {}\n", v.re, v.im));
    }
    out
}

pub fn parse_complex_lines(text: &str) -> Result<Vec<Complex64>> {
    let mut values = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (re, im) = match (parts.next(), parts.next(), parts.next()) {
            (Some(re), Some(im), None) => (re, im),
            _ => {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: format!("expected `re im`, got {line:?}"),
                })
            }
        };
        let parse = |s: &str| {
            s.parse::<f64>().map_err(|e| Error::Parse {
                line: idx + 1,
                msg: format!("bad float {s:?}: {e}"),
            })
        };
        values.push(Complex64::new(parse(re)?, parse(im)?));
    }
    Ok(values)
}

impl LatticeState {
    pub fn to_text(&self) -> String {
        write_complex_lines(self.amplitudes())
    }

    /// Parses and re-validates (normalizes) the state.
    pub fn from_text(text: &str) -> Result<Self> {
        Self::from_amplitudes(parse_complex_lines(text)?)
    }
}

impl OperatorMatrix {
    pub fn to_text(&self) -> String {
        write_complex_lines(self.entries())
    }

    /// Parses a row-major square matrix; the line count must be a perfect
    /// square.
    pub fn from_text(label: impl Into<String>, text: &str) -> Result<Self> {
        let entries = parse_complex_lines(text)?;
        let n = (entries.len() as f64).sqrt().round() as usize;
        if n * n != entries.len() {
            return Err(Error::Invalid(format!(
                "{} lines do not form a square matrix",
                entries.len()
            )));
        }
        Self::new(n, label, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_xp, gaussian_packet, Lattice, Topology};

    #[test]
    fn state_round_trips_exactly() {
        let lat = Lattice::new(64, 64.0, Topology::LinePeriodic).unwrap();
        let psi = gaussian_packet(&lat, 20.0, 0.7, 4.0).unwrap();
        let back = LatticeState::from_text(&psi.to_text()).unwrap();
        assert_eq!(psi, back);
    }

    #[test]
    fn operator_round_trips_exactly() {
        let lat = Lattice::new(8, 8.0, Topology::LinePeriodic).unwrap();
        let (_, p) = build_xp(&lat);
        let back = OperatorMatrix::from_text("P", &p.to_text()).unwrap();
        assert_eq!(p.entries(), back.entries());
        assert_eq!(back.dim(), 8);
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(parse_complex_lines("1.0").is_err());
        assert!(parse_complex_lines("1.0 2.0 3.0").is_err());
        assert!(parse_complex_lines("a b").is_err());
        assert!(OperatorMatrix::from_text("M", "1 0\n0 1\n1 1\n").is_err());
    }
}

//! SI constants table for Planck-unit conversion.
//!
//! The table ships as a human-readable data file (`data/constants.txt`)
//! embedded at compile time. Reports quote its version and fingerprint so
//! every emitted number can be traced to the exact constants that produced
//! it.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Parsed SI constants, all in base SI units.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantsTable {
    pub version: u32,
    /// Reduced Planck constant, J s.
    pub hbar: f64,
    /// Speed of light, m/s.
    pub speed_of_light: f64,
    /// Newton's constant, m^3 kg^-1 s^-2.
    pub newton_g: f64,
    /// Planck length, m. Stored directly (CODATA rounding), not derived.
    pub planck_length_m: f64,
}

impl ConstantsTable {
    /// Planck time in seconds: l_P / c.
    pub fn planck_time_s(&self) -> f64 {
        self.planck_length_m / self.speed_of_light
    }

    /// Planck mass in kilograms: hbar / (l_P c).
    pub fn planck_mass_kg(&self) -> f64 {
        self.hbar / (self.planck_length_m * self.speed_of_light)
    }
}

const TABLE_TEXT: &str = include_str!("../data/constants.txt");

/// Raw text of the embedded constants table.
pub fn table_text() -> &'static str {
    TABLE_TEXT
}

/// The parsed constants table.
pub fn table() -> &'static ConstantsTable {
    static TABLE: OnceLock<ConstantsTable> = OnceLock::new();
    TABLE.get_or_init(|| parse(TABLE_TEXT).expect("embedded constants table is well-formed"))
}

/// FNV-1a 64-bit fingerprint of the table text, as 16 hex digits.
pub fn table_fingerprint() -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    for byte in TABLE_TEXT.bytes() {
        hash ^= u64::from(byte);
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("{hash:016x}")
}

/// Parse a constants table from its text form.
pub fn parse(text: &str) -> Result<ConstantsTable> {
    let mut version = None;
    let mut hbar = None;
    let mut c = None;
    let mut g = None;
    let mut lp = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: idx + 1,
            msg: format!("expected `key = value`, got {raw:?}"),
        })?;
        let key = key.trim();
        let value = value.trim();
        let parse_f64 = || {
            value.parse::<f64>().map_err(|e| Error::Parse {
                line: idx + 1,
                msg: format!("bad number {value:?}: {e}"),
            })
        };
        match key {
            "version" => {
                version = Some(value.parse::<u32>().map_err(|e| Error::Parse {
                    line: idx + 1,
                    msg: format!("bad version {value:?}: {e}"),
                })?)
            }
            "hbar_joule_second" => hbar = Some(parse_f64()?),
            "speed_of_light_m_per_s" => c = Some(parse_f64()?),
            "newton_g_m3_per_kg_s2" => g = Some(parse_f64()?),
            "planck_length_m" => lp = Some(parse_f64()?),
            other => {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: format!("unknown constants key {other:?}"),
                })
            }
        }
    }

    let missing = |what: &str| Error::Invalid(format!("constants table missing key {what}"));
    let table = ConstantsTable {
        version: version.ok_or_else(|| missing("version"))?,
        hbar: hbar.ok_or_else(|| missing("hbar_joule_second"))?,
        speed_of_light: c.ok_or_else(|| missing("speed_of_light_m_per_s"))?,
        newton_g: g.ok_or_else(|| missing("newton_g_m3_per_kg_s2"))?,
        planck_length_m: lp.ok_or_else(|| missing("planck_length_m"))?,
    };
    for (name, v) in [
        ("hbar", table.hbar),
        ("speed_of_light", table.speed_of_light),
        ("newton_g", table.newton_g),
        ("planck_length_m", table.planck_length_m),
    ] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::Invalid(format!(
                "constant {name} must be positive, got {v}"
            )));
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_table_parses() {
        let t = table();
        assert_eq!(t.version, 1);
        assert_eq!(t.speed_of_light, 299_792_458.0);
        assert_eq!(t.planck_length_m, 1.616255e-35);
    }

    #[test]
    fn planck_length_consistent_with_hbar_g_c() {
        // Stored l_P should match sqrt(hbar G / c^3) to the precision of the
        // rounded CODATA inputs.
        let t = table();
        let derived = (t.hbar * t.newton_g / t.speed_of_light.powi(3)).sqrt();
        assert!(
            (derived - t.planck_length_m).abs() / t.planck_length_m < 1e-4,
            "derived {derived}, stored {}",
            t.planck_length_m
        );
    }

    #[test]
    fn derived_units_match_codata() {
        let t = table();
        assert!((t.planck_time_s() - 5.391247e-44).abs() / 5.391247e-44 < 1e-5);
        assert!((t.planck_mass_kg() - 2.176434e-8).abs() / 2.176434e-8 < 1e-5);
    }

    #[test]
    fn fingerprint_is_hex() {
        let fp = table_fingerprint();
        assert_eq!(fp.len(), 16);
        assert!(fp.chars().all(|c| c.is_ascii_hexdigit()));
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(parse("version 1").is_err());
        assert!(parse("version = 1\nbogus_key = 2").is_err());
        assert!(parse("version = 1").is_err());
    }
}

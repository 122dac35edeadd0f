//! Report serialization.
//!
//! Complex numbers are written as `{"re": .., "im": ..}` objects, optionally with the
//! exact dyadic angle `{"angle_num": p, "angle_level": l}` (angle `pi * p / 2^l`).
//! JSON floats use the shortest representation that parses back to the same `f64`;
//! CSV floats are written with 17 significant digits. Neither depends on the locale.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::leja1d::DyadicAngle;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CplxRepr {
    pub re: f64,
    pub im: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub angle_num: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub angle_level: Option<u32>,
}

impl From<Complex64> for CplxRepr {
    fn from(z: Complex64) -> Self {
        CplxRepr {
            re: z.re,
            im: z.im,
            angle_num: None,
            angle_level: None,
        }
    }
}

impl From<CplxRepr> for Complex64 {
    fn from(c: CplxRepr) -> Self {
        Complex64::new(c.re, c.im)
    }
}

impl CplxRepr {
    pub fn exact(angle: DyadicAngle) -> Self {
        CplxRepr {
            angle_num: Some(angle.numerator()),
            angle_level: Some(angle.level()),
            ..CplxRepr::from(angle.to_complex())
        }
    }

    /// The exact angle, when present and well formed.
    pub fn angle(&self) -> Option<DyadicAngle> {
        match (self.angle_num, self.angle_level) {
            (Some(p), Some(l)) => DyadicAngle::new(p, l).ok(),
            _ => None,
        }
    }
}

pub mod cplx {
    use super::*;

    pub fn serialize<S: serde::Serializer>(
        z: &Complex64,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        CplxRepr::from(*z).serialize(s)
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Complex64, D::Error> {
        CplxRepr::deserialize(d).map(Complex64::from)
    }
}

pub mod cplx_vec {
    use super::*;

    pub fn serialize<S: serde::Serializer>(
        v: &[Complex64],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let reprs: Vec<CplxRepr> = v.iter().map(|&z| z.into()).collect();
        reprs.serialize(s)
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Complex64>, D::Error> {
        Vec::<CplxRepr>::deserialize(d).map(|v| v.into_iter().map(Complex64::from).collect())
    }
}

/// Output encodings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// A float with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

/// A CSV table with a fixed header.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.join(","));
            out.push('\n');
        }
        out
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Write to `path`, or to standard output when `path` is `None`.
pub fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

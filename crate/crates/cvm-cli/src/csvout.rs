//! CSV output: LF newlines, comma separator, no quoting (fields never
//! contain commas), floats at 12 significant digits, rationals as `p/q`.

use anyhow::{bail, Context, Result};
use cvm::rational::{display_fraction, Rational};
use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

/// A single CSV field.
pub enum Field<'a> {
    Str(&'a str),
    UInt(u64),
    Float(f64),
    Rational(&'a Rational),
    Bool(bool),
}

/// 12 significant digits: `d.dddddddddddE±ee`.
pub fn format_float(x: f64) -> String {
    format!("{x:.11e}")
}

pub struct CsvWriter {
    out: BufWriter<File>,
    columns: usize,
    path: String,
}

impl CsvWriter {
    pub fn create(path: &Path, header: &[&str]) -> Result<CsvWriter> {
        let file = File::create(path)
            .with_context(|| format!("cannot create {}", path.display()))?;
        let mut w = CsvWriter {
            out: BufWriter::new(file),
            columns: header.len(),
            path: path.display().to_string(),
        };
        let line = header.join(",");
        w.write_line(&line)?;
        Ok(w)
    }

    pub fn row(&mut self, fields: &[Field<'_>]) -> Result<()> {
        if fields.len() != self.columns {
            bail!(
                "{}: row has {} fields, header has {}",
                self.path,
                fields.len(),
                self.columns
            );
        }
        let mut line = String::new();
        for (i, field) in fields.iter().enumerate() {
            if i > 0 {
                line.push(',');
            }
            match field {
                Field::Str(s) => {
                    debug_assert!(!s.contains(',') && !s.contains('\n'));
                    line.push_str(s);
                }
                Field::UInt(v) => write!(line, "{v}").unwrap(),
                Field::Float(x) => line.push_str(&format_float(*x)),
                Field::Rational(r) => line.push_str(&display_fraction(r)),
                Field::Bool(b) => line.push_str(if *b { "true" } else { "false" }),
            }
        }
        self.write_line(&line)
    }

    fn write_line(&mut self, line: &str) -> Result<()> {
        self.out
            .write_all(line.as_bytes())
            .and_then(|_| self.out.write_all(b"\n"))
            .with_context(|| format!("write failed for {}", self.path))
    }

    pub fn finish(mut self) -> Result<()> {
        self.out
            .flush()
            .with_context(|| format!("flush failed for {}", self.path))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits_round_trip() {
        for &x in &[0.0, 1.0 / 3.0, 0.5022, 6.626_070_15e-34, -1234.5678] {
            let s = format_float(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(format_float(back), s, "{x} -> {s}");
        }
        assert_eq!(format_float(0.25), "2.50000000000e-1");
    }

    #[test]
    fn writes_header_and_rows() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        let mut w = CsvWriter::create(&path, &["a", "b", "c"]).unwrap();
        w.row(&[
            Field::UInt(3),
            Field::Rational(&cvm::rational::rat(-3, 8)),
            Field::Float(0.25),
        ])
        .unwrap();
        w.finish().unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, "a,b,c\n3,-3/8,2.50000000000e-1\n");
    }

    #[test]
    fn rejects_ragged_rows() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        let mut w = CsvWriter::create(&path, &["a", "b"]).unwrap();
        assert!(w.row(&[Field::UInt(1)]).is_err());
    }
}

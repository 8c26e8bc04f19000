//! Run reports and their canonical JSON form.

use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::Value;

use crate::error::Result;

pub const SCHEMA: &str = "bfm-workbench/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub payload: Value,
}

impl CheckResult {
    pub fn new(name: &str, pass: bool, payload: impl Serialize) -> Self {
        CheckResult {
            name: name.to_string(),
            status: if pass { Status::Pass } else { Status::Fail },
            payload: serde_json::to_value(payload).expect("payloads are plain data"),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Wall-clock time is reported on standard error only so that manifests of
/// identical runs are byte-identical.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: String,
    pub config: Value,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(config: Value, checks: Vec<CheckResult>) -> Self {
        Report {
            schema: SCHEMA.to_string(),
            config,
            checks,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }

    /// Canonical JSON: sorted object keys, floats with 17 significant digits.
    pub fn to_canonical_json(&self) -> String {
        // Value maps are ordered, so a round trip sorts every object's keys.
        let value = serde_json::to_value(self).expect("reports are plain data");
        let mut out = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut out, CanonicalFormatter::default());
        value.serialize(&mut ser).expect("in-memory write");
        out.push(b'\n');
        String::from_utf8(out).expect("JSON is UTF-8")
    }
}

/// Pretty-printing formatter that writes every float as `d.dddddddddddddddde±x`.
#[derive(Default)]
pub struct CanonicalFormatter {
    indent: usize,
    has_value: bool,
}

impl CanonicalFormatter {
    fn newline<W: ?Sized + Write>(&self, w: &mut W) -> io::Result<()> {
        w.write_all(b"\n")?;
        for _ in 0..self.indent {
            w.write_all(b"  ")?;
        }
        Ok(())
    }
}

impl Formatter for CanonicalFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        // -0.0 and 0.0 compare equal; print one spelling
        let v = if value == 0.0 { 0.0 } else { value };
        write!(w, "{v:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(value))
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.indent += 1;
        self.has_value = false;
        w.write_all(b"[")
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.indent -= 1;
        if self.has_value {
            self.newline(w)?;
        }
        w.write_all(b"]")
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        if !first {
            w.write_all(b",")?;
        }
        self.newline(w)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, _w: &mut W) -> io::Result<()> {
        self.has_value = true;
        Ok(())
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.indent += 1;
        self.has_value = false;
        w.write_all(b"{")
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.indent -= 1;
        if self.has_value {
            self.newline(w)?;
        }
        w.write_all(b"}")
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        if !first {
            w.write_all(b",")?;
        }
        self.newline(w)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        w.write_all(b": ")
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, _w: &mut W) -> io::Result<()> {
        self.has_value = true;
        Ok(())
    }
}

/// Write the canonical manifest of `report` to `path`.
pub fn emit_manifest(report: &Report, path: &Path) -> Result<()> {
    std::fs::write(path, report.to_canonical_json())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn canonical_json_sorts_and_formats() {
        let r = Report::new(
            json!({"z": 1, "a": 0.1}),
            vec![CheckResult::new("c", true, json!({"y": [1.5, -0.0]}))],
        );
        let s = r.to_canonical_json();
        assert!(s.find("\"a\"").unwrap() < s.find("\"z\"").unwrap());
        assert!(s.contains("1.0000000000000001e-1"));
        assert!(s.contains("1.5000000000000000e0"));
        assert!(s.contains("0.0000000000000000e0"));
        assert!(s.contains("\"schema\": \"bfm-workbench/1\""));
        assert!(s.contains("\"status\": \"pass\""));
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["config"]["a"], json!(0.1));
    }

    #[test]
    fn empty_containers() {
        let r = Report::new(json!({}), vec![]);
        let s = r.to_canonical_json();
        assert!(s.contains("\"checks\": []"));
        assert!(s.contains("\"config\": {}"));
    }
}

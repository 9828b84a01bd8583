//! Run reports: one record per check, written as CSV and JSON.
//!
//! Reports carry no timestamps or host data, so repeated runs with the same
//! seed and thread setting produce identical bytes.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::Scenario;

/// Where a reference value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Closed-form value of the quantity.
    ClosedForm,
    /// Independent numerical computation (ODE solver, second discretization).
    Oracle,
    /// Two sides of an identity computed from the same discrete data.
    Identity,
    /// A measured quantity reported without a claim.
    Measured,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::ClosedForm => "closed-form",
            Provenance::Oracle => "oracle",
            Provenance::Identity => "identity",
            Provenance::Measured => "measured",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub check_name: String,
    pub equation_ref: String,
    pub value: f64,
    pub reference: f64,
    pub provenance: Provenance,
    /// Absent for reported measurements and lower bounds.
    pub tolerance: Option<f64>,
    pub abs_error: f64,
    pub pass: bool,
}

impl Record {
    /// `|value − reference| ≤ tolerance`.
    pub fn check(name: impl Into<String>, eq: &str, value: f64, reference: f64, prov: Provenance, tolerance: f64) -> Self {
        let abs_error = (value - reference).abs();
        Self {
            check_name: name.into(),
            equation_ref: eq.into(),
            value,
            reference,
            provenance: prov,
            tolerance: Some(tolerance),
            abs_error,
            pass: abs_error <= tolerance,
        }
    }

    /// An error measure that must stay below `tolerance`.
    pub fn below(name: impl Into<String>, eq: &str, error: f64, prov: Provenance, tolerance: f64) -> Self {
        Self::check(name, eq, error, 0.0, prov, tolerance)
    }

    /// `value ≥ minimum`.
    pub fn at_least(name: impl Into<String>, eq: &str, value: f64, minimum: f64, prov: Provenance) -> Self {
        Self {
            check_name: name.into(),
            equation_ref: eq.into(),
            value,
            reference: minimum,
            provenance: prov,
            tolerance: None,
            abs_error: (value - minimum).abs(),
            pass: value >= minimum,
        }
    }

    /// A reported number with no pass criterion.
    pub fn info(name: impl Into<String>, eq: &str, value: f64, reference: f64) -> Self {
        Self {
            check_name: name.into(),
            equation_ref: eq.into(),
            value,
            reference,
            provenance: Provenance::Measured,
            tolerance: None,
            abs_error: (value - reference).abs(),
            pass: true,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Environment {
    pub tool: &'static str,
    pub version: &'static str,
    pub seed: u64,
    /// Worker threads, 0 for the rayon default.
    pub threads: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub scenario: String,
    pub environment: Environment,
    pub config: Scenario,
    pub records: Vec<Record>,
}

/// Output formats for [`Report::write`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

fn num(x: f64) -> String {
    // Shortest round-trip representation; fixed across platforms.
    format!("{x:?}")
}

impl Report {
    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| !r.pass).count()
    }

    pub fn to_csv(&self) -> anyhow::Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "check_name",
            "equation_ref",
            "value",
            "reference",
            "provenance",
            "tolerance",
            "abs_error",
            "pass",
        ])?;
        for r in &self.records {
            w.write_record([
                r.check_name.clone(),
                r.equation_ref.clone(),
                num(r.value),
                num(r.reference),
                r.provenance.as_str().into(),
                r.tolerance.map(num).unwrap_or_default(),
                num(r.abs_error),
                r.pass.to_string(),
            ])?;
        }
        Ok(w.into_inner()?)
    }

    pub fn to_json(&self) -> anyhow::Result<Vec<u8>> {
        let mut v = serde_json::to_vec_pretty(self)?;
        v.push(b'\n');
        Ok(v)
    }

    /// Writes `<scenario>-report.<ext>` for each format into `dir`.
    pub fn write(&self, dir: &Path, formats: &[Format]) -> anyhow::Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)?;
        let mut out = Vec::new();
        for f in formats {
            let (ext, bytes) = match f {
                Format::Csv => ("csv", self.to_csv()?),
                Format::Json => ("json", self.to_json()?),
            };
            let path = dir.join(format!("{}-report.{ext}", self.scenario));
            std::fs::File::create(&path)?.write_all(&bytes)?;
            out.push(path);
        }
        Ok(out)
    }

    /// Plain-text table for the terminal.
    pub fn summary(&self) -> String {
        let width = self.records.iter().map(|r| r.check_name.len()).max().unwrap_or(0);
        let mut s = String::new();
        for r in &self.records {
            let status = match (r.tolerance, r.pass) {
                (None, true) if r.provenance == Provenance::Measured => "info",
                (_, true) => "pass",
                (_, false) => "FAIL",
            };
            s.push_str(&format!(
                "{status:4}  {:width$}  value {:<24} reference {:<24} error {:e}\n",
                r.check_name,
                num(r.value),
                num(r.reference),
                r.abs_error,
            ));
        }
        s.push_str(&format!(
            "{}: {} records, {} failed\n",
            self.scenario,
            self.records.len(),
            self.failures()
        ));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_semantics() {
        assert!(Record::check("a", "x", 1.0, 1.0 + 1e-9, Provenance::ClosedForm, 1e-8).pass);
        assert!(!Record::check("a", "x", f64::NAN, 1.0, Provenance::ClosedForm, 1e-8).pass);
        assert!(!Record::below("a", "x", 2e-3, Provenance::Identity, 1e-3).pass);
        assert!(Record::at_least("a", "x", 3.9, 1.7, Provenance::Measured).pass);
        assert!(Record::info("a", "x", 5.0, 6.0).pass);
    }

    #[test]
    fn csv_header_and_empty_tolerance() {
        let r = Report {
            scenario: "t".into(),
            environment: Environment {
                tool: "dirac-forge",
                version: "0",
                seed: 0,
                threads: 0,
            },
            config: crate::config::Scenario::parse("name = \"t\"", "t.cfg").unwrap(),
            records: vec![Record::info("n", "geod", 1.5, 2.0)],
        };
        let csv = String::from_utf8(r.to_csv().unwrap()).unwrap();
        assert_eq!(
            csv,
            "check_name,equation_ref,value,reference,provenance,tolerance,abs_error,pass\nn,geod,1.5,2.0,measured,,0.5,true\n"
        );
        assert_eq!(r.failures(), 0);
    }
}

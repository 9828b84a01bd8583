//! Scenario files.
//!
//! A scenario is TOML (sectioned `key = value` text with typed values) or,
//! for files ending in `.json`, the same structure as JSON. Unknown keys are
//! rejected so typos surface as located parse errors.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::catalog;

/// Errors that map to exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

fn two_pi() -> f64 {
    2.0 * PI
}
fn one() -> f64 {
    1.0
}
fn both_signs() -> Vec<i32> {
    vec![1, -1]
}
fn order4() -> usize {
    4
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    /// Values of ε to run, each `1` or `-1`.
    #[serde(default = "both_signs")]
    pub eps: Vec<i32>,
    /// Stencil order, 2 or 4.
    #[serde(default = "order4")]
    pub order: usize,
    #[serde(default)]
    pub seed: u64,
    /// Node counts for `convergence`, strictly increasing.
    #[serde(default)]
    pub grids: Vec<usize>,
    #[serde(default)]
    pub geometry: Option<GeometrySpec>,
    /// Built-in module for the Dirac blocks.
    #[serde(default = "default_module")]
    pub module: String,
    #[serde(default)]
    pub algebra: Option<AlgebraSpec>,
    #[serde(default)]
    pub stype: Option<StypeSpec>,
    #[serde(default)]
    pub lichnerowicz: Option<LichnerowiczSpec>,
    #[serde(default)]
    pub trace: Option<TraceSpec>,
    #[serde(default)]
    pub convergence: Option<ConvergenceSpec>,
    #[serde(default)]
    pub sigma: Option<SigmaSpec>,
    #[serde(default)]
    pub geodesic: Option<GeodesicSpec>,
    #[serde(default, rename = "yang-mills")]
    pub yang_mills: Option<YangMillsSpec>,
    #[serde(default)]
    pub dhym: Option<DhymSpec>,
    #[serde(default)]
    pub higgs: Option<HiggsSpec>,
}

fn default_module() -> String {
    "spinor".into()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GeometrySpec {
    /// `flat-torus`, `flat-patch`, `sphere-cap`, `hyperbolic` or `raw`.
    pub preset: String,
    #[serde(default = "dim2")]
    pub dim: usize,
    /// Negative directions of a flat preset.
    #[serde(default)]
    pub q: usize,
    #[serde(default = "nodes64")]
    pub nodes: usize,
    /// Torus period.
    #[serde(default = "two_pi")]
    pub length: f64,
    /// Patch bounds.
    #[serde(default)]
    pub start: f64,
    #[serde(default = "one")]
    pub end: f64,
    #[serde(default = "one")]
    pub radius: f64,
    #[serde(default = "theta0")]
    pub theta0: f64,
    /// Coordinate distance from chart edges excluded from node-wise checks.
    #[serde(default = "band")]
    pub band: f64,
    /// Metric table for `raw`, relative to the scenario file.
    #[serde(default)]
    pub file: Option<String>,
    /// Axes for `raw`.
    #[serde(default)]
    pub axes: Vec<AxisSpec>,
}

fn dim2() -> usize {
    2
}
fn nodes64() -> usize {
    64
}
fn theta0() -> f64 {
    0.4
}
fn band() -> f64 {
    0.1
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AxisSpec {
    pub nodes: usize,
    pub start: f64,
    pub end: f64,
    #[serde(default)]
    pub periodic: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    #[serde(default = "four")]
    pub max_n: usize,
    /// Restrict to one signature `[p, q]`.
    #[serde(default)]
    pub signature: Option<[usize; 2]>,
}

fn four() -> usize {
    4
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct StypeSpec {
    pub masses: Vec<f64>,
    /// Relative tolerance on `1 + |I_D|`.
    #[serde(default = "tol6")]
    pub tolerance: f64,
}

fn tol6() -> f64 {
    1e-6
}
fn tol3() -> f64 {
    1e-3
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct LichnerowiczSpec {
    #[serde(default)]
    pub mass: f64,
    /// Relative tolerance on interior nodes.
    #[serde(default = "tol3")]
    pub tolerance: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct TraceSpec {
    /// `φ = (mass + amplitude·sin x¹)·Id`.
    #[serde(default = "half")]
    pub mass: f64,
    #[serde(default = "amp")]
    pub amplitude: f64,
    #[serde(default = "tol6")]
    pub tolerance: f64,
}

fn half() -> f64 {
    0.5
}
fn amp() -> f64 {
    0.3
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ConvergenceSpec {
    /// `scal` or `lichnerowicz`.
    pub quantity: String,
    /// Pass if the fitted order is at least this. Without it the order must
    /// be within 0.3 of the stencil order.
    #[serde(default)]
    pub min_order: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SigmaSpec {
    /// Base signatures `[p, q]`.
    #[serde(default = "sigma_bases")]
    pub bases: Vec<[usize; 2]>,
    /// Flat target signatures `[p, q]`.
    #[serde(default = "sigma_targets")]
    pub targets: Vec<[usize; 2]>,
    #[serde(default = "twenty")]
    pub maps: usize,
    #[serde(default = "seven")]
    pub nodes: usize,
}

fn sigma_bases() -> Vec<[usize; 2]> {
    vec![[2, 0]]
}
fn sigma_targets() -> Vec<[usize; 2]> {
    vec![[2, 0], [3, 0], [1, 1]]
}
fn twenty() -> usize {
    20
}
fn seven() -> usize {
    7
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GeodesicSpec {
    pub distances: Vec<f64>,
    #[serde(default = "geo_nodes")]
    pub nodes: usize,
    #[serde(default = "latitude")]
    pub latitude: f64,
}

fn geo_nodes() -> usize {
    257
}
fn latitude() -> f64 {
    0.3
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct YangMillsSpec {
    pub flux: Vec<f64>,
    #[serde(default = "sixteen")]
    pub nodes: usize,
    #[serde(default = "one_usize")]
    pub fiber_rank: usize,
}

fn sixteen() -> usize {
    16
}
fn one_usize() -> usize {
    1
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DhymSpec {
    #[serde(default = "dhym_nodes")]
    pub nodes: usize,
    #[serde(default = "one_usize")]
    pub fiber_rank: usize,
}

fn dhym_nodes() -> usize {
    24
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct HiggsSpec {
    #[serde(default = "higgs_nodes")]
    pub nodes: usize,
    /// Overrides `Λ = dim M₁` in the term table.
    #[serde(default)]
    pub lambda: Option<f64>,
    /// Constant flux on the first fiber component.
    #[serde(default = "flux")]
    pub flux: f64,
    /// Phase rate of the covariantly constant section.
    #[serde(default = "rate")]
    pub rate: f64,
}

fn higgs_nodes() -> usize {
    33
}
fn flux() -> f64 {
    0.8
}
fn rate() -> f64 {
    1.7
}

impl Scenario {
    /// Parse scenario text. `origin` names the source in diagnostics and
    /// selects JSON when it ends in `.json`.
    pub fn parse(text: &str, origin: &str) -> Result<Self, ConfigError> {
        let s: Scenario = if origin.ends_with(".json") {
            serde_json::from_str(text).map_err(|e| ConfigError::Parse {
                path: origin.into(),
                message: format!("line {}, column {}: {e}", e.line(), e.column()),
            })?
        } else {
            toml::from_str(text).map_err(|e| ConfigError::Parse {
                path: origin.into(),
                message: match e.span() {
                    Some(span) => {
                        let (line, col) = line_col(text, span.start);
                        format!("line {line}, column {col}: {}", e.message())
                    }
                    None => e.message().to_string(),
                },
            })?
        };
        s.validate(origin)?;
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.into(),
            source,
        })?;
        Self::parse(&text, &path.display().to_string())
    }

    fn validate(&self, origin: &str) -> Result<(), ConfigError> {
        let bad = |message: String| ConfigError::Invalid {
            path: origin.into(),
            message,
        };
        if self.name.is_empty() || self.name.contains(['/', '\\']) {
            return Err(bad(format!("scenario name {:?} must be a plain file stem", self.name)));
        }
        if self.eps.is_empty() || self.eps.iter().any(|e| *e != 1 && *e != -1) {
            return Err(bad(format!("eps must list values 1 or -1, got {:?}", self.eps)));
        }
        if self.order != 2 && self.order != 4 {
            return Err(bad(format!("order must be 2 or 4, got {}", self.order)));
        }
        if self.grids.windows(2).any(|w| w[0] >= w[1]) {
            return Err(bad(format!("grids must be strictly increasing, got {:?}", self.grids)));
        }
        if !catalog::MODULES.contains(&self.module.as_str()) {
            return Err(bad(format!(
                "unknown module '{}' (known: {})",
                self.module,
                catalog::MODULES.join(", ")
            )));
        }
        if let Some(g) = &self.geometry {
            if !catalog::GEOMETRIES.contains(&g.preset.as_str()) {
                return Err(bad(format!(
                    "unknown geometry preset '{}' (known: {})",
                    g.preset,
                    catalog::GEOMETRIES.join(", ")
                )));
            }
            if g.preset == "raw" && (g.file.is_none() || g.axes.is_empty()) {
                return Err(bad("raw geometry needs `file` and `axes`".into()));
            }
        }
        let needs_geometry = self.stype.is_some() || self.lichnerowicz.is_some() || self.trace.is_some();
        if needs_geometry && self.geometry.is_none() {
            return Err(bad("stype, lichnerowicz and trace blocks need a [geometry] block".into()));
        }
        if let Some(c) = &self.convergence {
            if c.quantity != "scal" && c.quantity != "lichnerowicz" {
                return Err(bad(format!("convergence quantity must be scal or lichnerowicz, got '{}'", c.quantity)));
            }
            if self.geometry.is_none() {
                return Err(bad("a [convergence] block needs a [geometry] block".into()));
            }
        }
        Ok(())
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, col)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_toml() {
        let s = Scenario::parse("name = \"x\"\n[algebra]\n", "x.cfg").unwrap();
        assert_eq!(s.eps, vec![1, -1]);
        assert_eq!(s.algebra.unwrap().max_n, 4);
    }

    #[test]
    fn json_alternative() {
        let s = Scenario::parse(r#"{"name": "x", "eps": [1], "geodesic": {"distances": [1.0]}}"#, "x.json").unwrap();
        assert_eq!(s.geodesic.unwrap().nodes, 257);
    }

    #[test]
    fn located_errors() {
        let e = Scenario::parse("name = \"x\"\norder = \"four\"\n", "bad.cfg").unwrap_err();
        assert!(e.to_string().contains("bad.cfg: line 2"), "{e}");
        let e = Scenario::parse("name = \"x\"\nbogus = 1\n", "bad.cfg").unwrap_err();
        assert!(e.to_string().contains("bogus"), "{e}");
    }

    #[test]
    fn semantic_checks() {
        for text in [
            "name = \"x\"\ngrids = [64, 32]\n",
            "name = \"x\"\neps = [2]\n",
            "name = \"x\"\n[geometry]\npreset = \"klein-bottle\"\n",
            "name = \"x\"\n[stype]\nmasses = [0.0]\n",
            "name = \"x\"\nmodule = \"octonion\"\n",
        ] {
            assert!(matches!(Scenario::parse(text, "t.cfg"), Err(ConfigError::Invalid { .. })), "{text}");
        }
    }
}

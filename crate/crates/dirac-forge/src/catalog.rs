//! Built-in scenarios and the names scenario files may refer to.

pub use dirac_forge_core::module::BUILTIN_NAMES as MODULES;

pub const GEOMETRIES: &[&str] = &["flat-torus", "flat-patch", "sphere-cap", "hyperbolic", "raw"];

/// A scenario shipped with the binary.
#[derive(Clone, Copy, Debug)]
pub struct Preset {
    pub name: &'static str,
    /// Identity the scenario exercises, as written in the `equation_ref`
    /// column.
    pub equation: &'static str,
    pub summary: &'static str,
    pub text: &'static str,
}

macro_rules! preset {
    ($name:literal, $eq:literal, $summary:literal) => {
        Preset {
            name: $name,
            equation: $eq,
            summary: $summary,
            text: include_str!(concat!("../../../scenarios/", $name, ".cfg")),
        }
    };
}

pub const PRESETS: &[Preset] = &[
    preset!("algebra", "cliffmodbdl", "Clifford relations, symbol maps, quantization of Θ (n ≤ 4)"),
    preset!("stype-torus", "stypediract", "constant mass on the flat torus"),
    preset!("sphere-lichnerowicz", "stypediract", "tr V_D against scalar curvature on the sphere cap"),
    preset!("sphere-scal", "stypediract", "scalar curvature convergence on the sphere cap"),
    preset!("trace-torus", "trdirpot", "trace formula with a varying mass"),
    preset!("sigma-flat", "dirharmact", "σ-model proportionality constant"),
    preset!("geod-sphere", "geod", "geodesic energy minimizers on the unit sphere"),
    preset!("ym-u1-torus", "ymchi", "Yang–Mills proportionality for constant U(1) flux"),
    preset!("dhym-torus", "DEHYM-action", "combined σ-model and Yang–Mills split"),
    preset!("higgs-lambda", "hkt", "Higgs kinetic identity and gauge–Higgs term table"),
];

pub fn find(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}

//! Strict JSON run configurations.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::dispersion::DispersionForm;
use crate::extended::Wavelength;
use crate::grid::GridSpec;
use crate::waves::WaveForm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
    /// Raw field slab; only for slab-producing experiments.
    Binary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub grid: GridSpec,
    pub experiment: Experiment,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn new(grid: GridSpec, experiment: Experiment) -> Self {
        RunConfig { grid, experiment, output_path: None, format: Format::Csv, seed: None }
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| e.to_string())
    }

    /// Canonical serialization; keys inside `experiment` are sorted.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}

fn default_tol() -> f64 {
    1e-9
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DispersionScan {
    pub form: DispersionForm,
    pub m0: f64,
    pub n_max: u32,
    pub m_max: u32,
    #[serde(default = "default_tol")]
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LorentzEnumerate {
    pub max_word_len: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LorentzFactorize {
    /// Row-major, 16 integers (decimal strings allowed for large entries).
    pub matrix: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaveSample {
    pub form: WaveForm,
    pub period: u32,
    pub wavelength: Wavelength,
    #[serde(default)]
    pub n0: i64,
    #[serde(default)]
    pub j0: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeatMeasure {
    pub period_a: f64,
    pub period_b: f64,
    pub wavelength_a: f64,
    pub wavelength_b: f64,
}

/// A lattice plane wave and the rest mass it is tested against. Without `m0`,
/// the mass is solved from `relation` (by default the one the form satisfies).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KgResidual {
    pub form: WaveForm,
    pub period: u32,
    pub wavelength: Wavelength,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation: Option<DispersionForm>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KgEvolve {
    pub form: WaveForm,
    pub period: u32,
    pub wavelength: Wavelength,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation: Option<DispersionForm>,
    pub steps: usize,
    #[serde(default)]
    pub verify: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KinematicsBoost {
    pub m0: f64,
    pub momentum: [f64; 3],
    pub velocity: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantizationCheck {
    pub dn: u64,
    #[serde(default)]
    pub dj: [i64; 3],
    pub m0: f64,
    #[serde(default = "default_tol")]
    pub tol: f64,
}

/// The experiment family, tagged by `"kind"` in JSON.
#[derive(Debug, Clone, PartialEq)]
pub enum Experiment {
    DispersionScan(DispersionScan),
    LorentzEnumerate(LorentzEnumerate),
    LorentzFactorize(LorentzFactorize),
    WaveSample(WaveSample),
    BeatMeasure(BeatMeasure),
    KgResidual(KgResidual),
    KgEvolve(KgEvolve),
    KinematicsBoost(KinematicsBoost),
    QuantizationCheck(QuantizationCheck),
}

pub const EXPERIMENT_KINDS: [&str; 9] = [
    "dispersion-scan",
    "lorentz-enumerate",
    "lorentz-factorize",
    "wave-sample",
    "beat-measure",
    "kg-residual",
    "kg-evolve",
    "kinematics-boost",
    "quantization-check",
];

impl Experiment {
    pub fn kind(&self) -> &'static str {
        let i = match self {
            Experiment::DispersionScan(_) => 0,
            Experiment::LorentzEnumerate(_) => 1,
            Experiment::LorentzFactorize(_) => 2,
            Experiment::WaveSample(_) => 3,
            Experiment::BeatMeasure(_) => 4,
            Experiment::KgResidual(_) => 5,
            Experiment::KgEvolve(_) => 6,
            Experiment::KinematicsBoost(_) => 7,
            Experiment::QuantizationCheck(_) => 8,
        };
        EXPERIMENT_KINDS[i]
    }

    pub fn produces_slab(&self) -> bool {
        matches!(self, Experiment::WaveSample(_) | Experiment::KgEvolve(_))
    }

    fn params(&self) -> Value {
        let v = match self {
            Experiment::DispersionScan(p) => serde_json::to_value(p),
            Experiment::LorentzEnumerate(p) => serde_json::to_value(p),
            Experiment::LorentzFactorize(p) => serde_json::to_value(p),
            Experiment::WaveSample(p) => serde_json::to_value(p),
            Experiment::BeatMeasure(p) => serde_json::to_value(p),
            Experiment::KgResidual(p) => serde_json::to_value(p),
            Experiment::KgEvolve(p) => serde_json::to_value(p),
            Experiment::KinematicsBoost(p) => serde_json::to_value(p),
            Experiment::QuantizationCheck(p) => serde_json::to_value(p),
        };
        v.expect("experiment parameters serialize")
    }
}

impl Serialize for Experiment {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = match self.params() {
            Value::Object(m) => m,
            _ => unreachable!("parameters are structs"),
        };
        map.insert("kind".into(), Value::String(self.kind().into()));
        map.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Experiment {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let mut map = match Value::deserialize(d)? {
            Value::Object(m) => m,
            other => return Err(D::Error::custom(format!("experiment must be an object, got {other}"))),
        };
        let kind = match map.remove("kind") {
            Some(Value::String(k)) => k,
            Some(other) => return Err(D::Error::custom(format!("experiment kind must be a string, got {other}"))),
            None => return Err(D::Error::custom("experiment is missing \"kind\"")),
        };
        let rest = Value::Object(map);
        fn parse<T: serde::de::DeserializeOwned, E: Error>(kind: &str, v: Value) -> Result<T, E> {
            serde_json::from_value(v).map_err(|e| E::custom(format!("{kind}: {e}")))
        }
        Ok(match kind.as_str() {
            "dispersion-scan" => Experiment::DispersionScan(parse(&kind, rest)?),
            "lorentz-enumerate" => Experiment::LorentzEnumerate(parse(&kind, rest)?),
            "lorentz-factorize" => Experiment::LorentzFactorize(parse(&kind, rest)?),
            "wave-sample" => Experiment::WaveSample(parse(&kind, rest)?),
            "beat-measure" => Experiment::BeatMeasure(parse(&kind, rest)?),
            "kg-residual" => Experiment::KgResidual(parse(&kind, rest)?),
            "kg-evolve" => Experiment::KgEvolve(parse(&kind, rest)?),
            "kinematics-boost" => Experiment::KinematicsBoost(parse(&kind, rest)?),
            "quantization-check" => Experiment::QuantizationCheck(parse(&kind, rest)?),
            other => {
                return Err(D::Error::custom(format!(
                    "unknown experiment kind {other:?}; expected one of {}",
                    EXPERIMENT_KINDS.join(", ")
                )))
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SCAN: &str = r#"{
        "grid": {"nt": 8},
        "experiment": {"kind": "dispersion-scan", "form": "cayley", "m0": 1.5, "n_max": 10, "m_max": 10},
        "format": "json"
    }"#;

    #[test]
    fn parses_and_round_trips() {
        let cfg = RunConfig::from_json(SCAN).unwrap();
        assert_eq!(cfg.grid.nt, 8);
        assert_eq!(cfg.grid.nx, 32);
        assert_eq!(cfg.format, Format::Json);
        match &cfg.experiment {
            Experiment::DispersionScan(p) => assert_eq!(p.tol, 1e-9),
            other => panic!("{other:?}"),
        }
        assert_eq!(RunConfig::from_json(&cfg.canonical_json()).unwrap(), cfg);
    }

    #[test]
    fn unknown_keys_rejected_at_every_level() {
        assert!(RunConfig::from_json(&SCAN.replace("\"format\"", "\"extra\": 1, \"format\"")).is_err());
        assert!(RunConfig::from_json(&SCAN.replace("\"nt\": 8", "\"nt\": 8, \"dt\": 1")).is_err());
        assert!(RunConfig::from_json(&SCAN.replace("\"m_max\"", "\"bogus\": 2, \"m_max\"")).is_err());
        assert!(RunConfig::from_json(&SCAN.replace("dispersion-scan", "dispersion-scam")).is_err());
    }

    #[test]
    fn infinite_wavelength_in_config() {
        let text = r#"{"experiment": {"kind": "wave-sample", "form": "cayley", "period": 6, "wavelength": "inf"}}"#;
        match RunConfig::from_json(text).unwrap().experiment {
            Experiment::WaveSample(w) => assert_eq!(w.wavelength, Wavelength::Infinite),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn canonical_json_is_stable() {
        let a = RunConfig::from_json(SCAN).unwrap().canonical_json();
        let b = RunConfig::from_json(&RunConfig::from_json(SCAN).unwrap().canonical_json()).unwrap().canonical_json();
        assert_eq!(a, b);
    }
}

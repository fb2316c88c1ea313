//! Group definition files (JSON).
//!
//! ```json
//! {
//!   "name": "schottky_h2(6)",
//!   "model": "H2",
//!   "generators": [
//!     { "label": "h1", "matrix": [1.4142135623730951, 1, 1, 1.4142135623730951] },
//!     { "label": "h2", "matrix": [...] }
//!   ],
//!   "certification": "pingpong"
//! }
//! ```
//!
//! Matrices are `[a, b, c, d]` for real groups and interleaved
//! `[Re a, Im a, Re b, Im b, Re c, Im c, Re d, Im d]` for complex ones.
//! Floats are written in shortest round-trip form, so writing a file and
//! reading it back reproduces every entry bit for bit.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::path::Path;

use super::{CertificationMode, Generator, GroupSpec};
use crate::error::{Error, Result};
use crate::geometry::{Model, MoebiusMap};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub label: String,
    pub matrix: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub model: Model,
    pub generators: Vec<GeneratorEntry>,
    pub certification: CertificationField,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificationField {
    Pingpong,
    BuiltinFree,
    Generic,
}

impl From<CertificationMode> for CertificationField {
    fn from(m: CertificationMode) -> Self {
        match m {
            CertificationMode::PingPong => CertificationField::Pingpong,
            CertificationMode::BuiltinFree => CertificationField::BuiltinFree,
            CertificationMode::Generic => CertificationField::Generic,
        }
    }
}

impl From<CertificationField> for CertificationMode {
    fn from(m: CertificationField) -> Self {
        match m {
            CertificationField::Pingpong => CertificationMode::PingPong,
            CertificationField::BuiltinFree => CertificationMode::BuiltinFree,
            CertificationField::Generic => CertificationMode::Generic,
        }
    }
}

impl GroupFile {
    pub fn from_spec(spec: &GroupSpec) -> Self {
        let generators = spec
            .generators()
            .iter()
            .map(|g| {
                let e = g.matrix.entries();
                let matrix = match spec.model() {
                    Model::H2 => e.iter().map(|z| z.re).collect(),
                    Model::H3 => e.iter().flat_map(|z| [z.re, z.im]).collect(),
                };
                GeneratorEntry { label: g.label.clone(), matrix }
            })
            .collect();
        GroupFile {
            name: spec.name().to_string(),
            model: spec.model(),
            generators,
            certification: spec.certification().mode().into(),
        }
    }

    pub fn to_spec(&self) -> Result<GroupSpec> {
        let generators = self
            .generators
            .iter()
            .map(|g| {
                let m = match (self.model, g.matrix.as_slice()) {
                    (Model::H2, [a, b, c, d]) => MoebiusMap::real(*a, *b, *c, *d)?,
                    (Model::H3, [ar, ai, br, bi, cr, ci, dr, di]) => MoebiusMap::complex(
                        Complex64::new(*ar, *ai),
                        Complex64::new(*br, *bi),
                        Complex64::new(*cr, *ci),
                        Complex64::new(*dr, *di),
                    )?,
                    (model, m) => {
                        return Err(Error::InvalidGroup(format!(
                            "generator {}: {} numbers for a {model} matrix",
                            g.label,
                            m.len()
                        )))
                    }
                };
                Ok(Generator::new(g.label.clone(), m))
            })
            .collect::<Result<Vec<_>>>()?;
        GroupSpec::new(self.name.clone(), self.model, generators, self.certification.into())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<GroupSpec> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)?.to_spec()
    }

    pub fn write(spec: &GroupSpec, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, Self::from_spec(spec).to_json()?)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{builtin, gamma2};

    #[test]
    fn round_trip_is_bit_exact() {
        for name in ["gamma2", "schottky_h2(6)", "schottky_h3(6)", "modular"] {
            let spec = builtin(name).unwrap();
            let file = GroupFile::from_spec(&spec);
            let text = file.to_json().unwrap();
            let back = GroupFile::from_json(&text).unwrap();
            assert_eq!(back, file);
            for (x, y) in back.generators.iter().zip(&file.generators) {
                for (p, q) in x.matrix.iter().zip(&y.matrix) {
                    assert_eq!(p.to_bits(), q.to_bits());
                }
            }
            let respec = back.to_spec().unwrap();
            assert_eq!(respec.generators(), spec.generators());
            assert_eq!(GroupFile::from_spec(&respec).to_json().unwrap(), text);
        }
    }

    #[test]
    fn rejects_wrong_arity_and_forged_builtin() {
        let mut f = GroupFile::from_spec(&gamma2());
        f.generators[0].matrix.pop();
        assert!(matches!(f.to_spec(), Err(Error::InvalidGroup(_))));

        let mut forged = GroupFile::from_spec(&gamma2());
        forged.generators[0].matrix = vec![1.0, 3.0, 0.0, 1.0];
        assert!(forged.to_spec().is_err());
    }

    #[test]
    fn parses_handwritten_file() {
        let text = r#"{
            "name": "mine", "model": "H2", "certification": "generic",
            "generators": [ {"label": "S", "matrix": [0, -1, 1, 0]},
                            {"label": "T", "matrix": [1, 1, 0, 1]} ]
        }"#;
        let spec = GroupFile::from_json(text).unwrap().to_spec().unwrap();
        assert_eq!(spec.rank(), 2);
        assert!(!spec.is_certified());
    }
}

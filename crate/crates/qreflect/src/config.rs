//! Material library loading.
//!
//! The built-in set ships embedded in the binary (the same file lives at
//! `data/materials.toml` in the repository). Setting the environment variable
//! named by [`MATERIALS_ENV`] to a TOML file path loads additional entries;
//! entries with a known name override the built-ins.

use crate::error::{Error, Result};
use crate::material::{MaterialKind, MaterialModel, Oscillator};
use serde::Deserialize;
use std::path::{Path, PathBuf};

/// Environment variable holding the path of an extra material config file.
pub const MATERIALS_ENV: &str = "QREFLECT_MATERIALS";

const BUILTIN_TOML: &str = include_str!("../data/materials.toml");

#[derive(Debug, Deserialize)]
struct MaterialFile {
    #[serde(default)]
    material: Vec<MaterialEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MaterialEntry {
    name: String,
    kind: String,
    #[serde(default)]
    porosity: f64,
    #[serde(default)]
    oscillators: Vec<OscillatorEntry>,
    #[serde(default)]
    notes: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct OscillatorEntry {
    strength: f64,
    resonance_ev: f64,
    #[serde(default)]
    damping_ev: f64,
}

#[derive(Debug, Clone)]
pub struct MaterialRecord {
    pub model: MaterialModel,
    pub notes: String,
}

/// The resolved set of material definitions and where they came from.
#[derive(Debug, Clone)]
pub struct MaterialLibrary {
    records: Vec<MaterialRecord>,
    searched: String,
}

impl MaterialLibrary {
    /// Only the embedded defaults.
    pub fn builtin() -> Self {
        let records = parse_toml(BUILTIN_TOML, None)
            .expect("embedded materials.toml must parse and validate");
        MaterialLibrary {
            records,
            searched: "built-in data/materials.toml".to_string(),
        }
    }

    /// Built-ins plus, when the env var is set, the file it points to.
    pub fn load_default() -> Result<Self> {
        let mut lib = Self::builtin();
        if let Some(path) = std::env::var_os(MATERIALS_ENV) {
            let path = PathBuf::from(path);
            lib.merge_file(&path)?;
        }
        Ok(lib)
    }

    /// Merge entries from a TOML file, overriding built-ins by name.
    pub fn merge_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config {
            path: Some(path.to_path_buf()),
            message: e.to_string(),
        })?;
        let extra = parse_toml(&text, Some(path))?;
        for rec in extra {
            if let Some(slot) = self
                .records
                .iter_mut()
                .find(|r| r.model.name == rec.model.name)
            {
                *slot = rec;
            } else {
                self.records.push(rec);
            }
        }
        self.searched = format!("{} and {}", self.searched, path.display());
        Ok(())
    }

    pub fn names(&self) -> Vec<&str> {
        self.records.iter().map(|r| r.model.name.as_str()).collect()
    }

    pub fn records(&self) -> &[MaterialRecord] {
        &self.records
    }

    pub fn searched(&self) -> &str {
        &self.searched
    }

    pub fn get(&self, name: &str) -> Result<&MaterialModel> {
        self.records
            .iter()
            .find(|r| r.model.name == name)
            .map(|r| &r.model)
            .ok_or_else(|| Error::UnknownMaterial {
                name: name.to_string(),
                searched: self.searched.clone(),
            })
    }

    /// A copy of `name` with its porosity replaced.
    pub fn get_with_porosity(&self, name: &str, porosity: f64) -> Result<MaterialModel> {
        let mut model = self.get(name)?.clone();
        model.porosity = porosity;
        model.validate()?;
        Ok(model)
    }
}

fn parse_toml(text: &str, path: Option<&Path>) -> Result<Vec<MaterialRecord>> {
    let file: MaterialFile = toml::from_str(text).map_err(|e| Error::Config {
        path: path.map(|p| p.to_path_buf()),
        // toml errors carry line/column context in their Display output
        message: e.to_string(),
    })?;
    let mut records = Vec::with_capacity(file.material.len());
    for entry in file.material {
        let kind = match entry.kind.as_str() {
            "perfect" => MaterialKind::PerfectMirror,
            "oscillator" => MaterialKind::Oscillator,
            other => {
                return Err(Error::Config {
                    path: path.map(|p| p.to_path_buf()),
                    message: format!(
                        "material '{}': unknown kind '{}' (expected 'perfect' or 'oscillator')",
                        entry.name, other
                    ),
                })
            }
        };
        let model = MaterialModel {
            name: entry.name,
            kind,
            oscillators: entry
                .oscillators
                .iter()
                .map(|o| Oscillator {
                    strength: o.strength,
                    resonance_ev: o.resonance_ev,
                    damping_ev: o.damping_ev,
                })
                .collect(),
            porosity: entry.porosity,
        };
        model.validate().map_err(|e| Error::Config {
            path: path.map(|p| p.to_path_buf()),
            message: e.to_string(),
        })?;
        records.push(MaterialRecord {
            model,
            notes: entry.notes.unwrap_or_default(),
        });
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_library_has_table_materials() {
        let lib = MaterialLibrary::builtin();
        for name in ["perfect", "silicon", "silica", "aerogel50", "aerogel90", "aerogel98"] {
            assert!(lib.get(name).is_ok(), "missing {name}");
        }
        assert!(lib.get("unobtainium").is_err());
    }

    #[test]
    fn aerogels_are_porous_silica() {
        let lib = MaterialLibrary::builtin();
        let a98 = lib.get("aerogel98").unwrap();
        assert_eq!(a98.porosity, 0.98);
        let eps = a98.epsilon_imaginary(0.0).unwrap();
        assert!(eps > 1.0 && eps < 1.05, "eps_eff(0) = {eps}");
    }

    #[test]
    fn parse_error_reports_line() {
        let bad = "[[material]]\nname = \"x\"\nkind = \"oscillator\"\nporosity = \"not a number\"\n";
        let err = parse_toml(bad, None).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line"), "no line info in: {msg}");
    }

    #[test]
    fn unknown_field_is_rejected() {
        let bad = "[[material]]\nname = \"x\"\nkind = \"perfect\"\nresonance = 3\n";
        assert!(parse_toml(bad, None).is_err());
    }
}

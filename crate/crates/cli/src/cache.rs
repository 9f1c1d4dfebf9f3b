//! Append-only JSON-lines cache of KL basis elements.
//!
//! The first line is a header `{"format": "soergel-kl-cache", "version": 1}`;
//! every further line is a record `{system, element, hecke, version}`.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use soergel_core::{CoxeterSystem, Element, Error, HeckeAlgebra, HeckeElt, Result, Word};

pub const FORMAT: &str = "soergel-kl-cache";
pub const SCHEMA: u64 = 1;

pub struct Cache {
    path: PathBuf,
    /// (system, element word) -> serialized Hecke element.
    records: BTreeMap<(String, String), String>,
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Parse(format!("cache {}: {e}", path.display()))
}

impl Cache {
    /// Opens the cache, creating it with a header if missing.
    pub fn open(path: &Path) -> Result<Cache> {
        let mut records = BTreeMap::new();
        if path.exists() {
            let file = File::open(path).map_err(|e| io_error(path, e))?;
            let mut lines = BufReader::new(file).lines();
            let header: Value = match lines.next() {
                Some(line) => serde_json::from_str(&line.map_err(|e| io_error(path, e))?)
                    .map_err(|e| Error::Parse(format!("cache header: {e}")))?,
                None => Value::Null,
            };
            if !header.is_null() && (header["format"] != FORMAT || header["version"] != SCHEMA) {
                return Err(Error::Parse(format!(
                    "{} is not a version {SCHEMA} KL cache",
                    path.display()
                )));
            }
            for (n, line) in lines.enumerate() {
                let line = line.map_err(|e| io_error(path, e))?;
                if line.trim().is_empty() {
                    continue;
                }
                let rec: Value = serde_json::from_str(&line)
                    .map_err(|e| Error::Parse(format!("cache line {}: {e}", n + 2)))?;
                let field = |k: &str| {
                    rec[k]
                        .as_str()
                        .map(str::to_string)
                        .ok_or_else(|| Error::Parse(format!("cache line {}: missing `{k}`", n + 2)))
                };
                records.insert(
                    (field("system")?, field("element")?),
                    rec["hecke"].to_string(),
                );
            }
        }
        if !path.exists()
            || std::fs::metadata(path)
                .map(|m| m.len() == 0)
                .unwrap_or(true)
        {
            let mut f = File::create(path).map_err(|e| io_error(path, e))?;
            writeln!(f, "{}", json!({"format": FORMAT, "version": SCHEMA}))
                .map_err(|e| io_error(path, e))?;
        }
        Ok(Cache {
            path: path.to_path_buf(),
            records,
        })
    }

    fn for_system<'a>(
        &'a self,
        system: &CoxeterSystem,
    ) -> impl Iterator<Item = (&'a String, &'a String)> {
        let key = system.spec().to_string();
        self.records
            .iter()
            .filter(move |((s, _), _)| *s == key)
            .map(|((_, w), h)| (w, h))
    }

    /// Seeds the algebra's memo with every record of its system.
    pub fn seed(&self, hecke: &HeckeAlgebra) -> Result<usize> {
        let system = hecke.system();
        let mut n = 0;
        for (word, text) in self.for_system(system) {
            let x = system.evaluate(&word.parse::<Word>()?)?;
            let value: Value =
                serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
            hecke.insert_kl(&x, HeckeElt::from_json(system, &value)?)?;
            n += 1;
        }
        Ok(n)
    }

    /// Recomputes every record of the system and compares the serializations.
    pub fn verify(&self, system: &CoxeterSystem) -> Result<usize> {
        let fresh = HeckeAlgebra::new(*system);
        let mut n = 0;
        for (word, text) in self.for_system(system) {
            let x = system.evaluate(&word.parse::<Word>()?)?;
            let recomputed = fresh.kl_basis(&x)?.to_json().to_string();
            if &recomputed != text {
                return Err(Error::Internal(format!(
                    "cached b_{word} in {} differs from recomputation",
                    system.spec()
                )));
            }
            n += 1;
        }
        Ok(n)
    }

    /// Appends records for elements not yet cached.
    pub fn store(&mut self, hecke: &HeckeAlgebra, elements: &[Element]) -> Result<()> {
        let system = hecke.system().spec().to_string();
        let mut file = OpenOptions::new()
            .append(true)
            .open(&self.path)
            .map_err(|e| io_error(&self.path, e))?;
        for x in elements {
            let key = (system.clone(), x.canonical_word().to_string());
            if self.records.contains_key(&key) {
                continue;
            }
            let hecke_json = hecke.kl_basis(x)?.to_json();
            let rec = json!({
                "system": key.0,
                "element": key.1,
                "hecke": hecke_json,
                "version": env!("CARGO_PKG_VERSION"),
            });
            writeln!(file, "{rec}").map_err(|e| io_error(&self.path, e))?;
            self.records.insert(key, hecke_json.to_string());
        }
        Ok(())
    }
}

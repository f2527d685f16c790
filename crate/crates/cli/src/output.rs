//! Output directory handling and provenance stamping.

use std::path::{Path, PathBuf};

use fracstab::io;
use serde_json::{json, Map, Value};

use crate::error::{config_err, CliResult};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Where a command writes and what it records about itself.
pub struct Context {
    pub command: &'static str,
    /// The config file as read, echoed into every sidecar.
    pub config: Value,
    pub config_dir: PathBuf,
    pub seed: u64,
    out: PathBuf,
}

impl Context {
    pub fn new(command: &'static str, config: Value, config_dir: PathBuf, seed: u64, out: PathBuf) -> CliResult<Self> {
        std::fs::create_dir_all(&out).map_err(|e| config_err(format!("cannot create {}: {e}", out.display())))?;
        Ok(Self { command, config, config_dir, seed, out })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.out.join(name)
    }

    /// Input paths in a config are relative to the config file.
    pub fn resolve(&self, p: &str) -> PathBuf {
        let p = Path::new(p);
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.config_dir.join(p)
        }
    }

    fn provenance(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command));
        m.insert("config".into(), self.config.clone());
        m.insert("seed".into(), json!(self.seed));
        m.insert("version".into(), json!(VERSION));
        m
    }

    /// Writes `body` (an object) to `name` with the provenance fields added.
    pub fn write_json(&self, name: &str, body: Value) -> CliResult<PathBuf> {
        let path = self.path(name);
        io::write_json(&path, &self.stamp(body))?;
        Ok(path)
    }

    /// Adds the provenance fields to the sidecar of a table already written.
    pub fn stamp_sidecar(&self, table: &Path) -> CliResult<()> {
        let side = io::sidecar_path(table);
        let body = io::read_json(&side).unwrap_or_else(|_| json!({}));
        io::write_json(&side, &self.stamp(body))?;
        Ok(())
    }

    /// Table plus a sidecar holding `meta` and the provenance fields.
    pub fn write_table(&self, name: &str, header: &[String], rows: &[Vec<f64>], meta: Value) -> CliResult<PathBuf> {
        let path = self.path(name);
        io::write_csv(&path, header, rows)?;
        io::write_json(&io::sidecar_path(&path), &self.stamp(meta))?;
        Ok(path)
    }

    fn stamp(&self, body: Value) -> Value {
        let mut obj = match body {
            Value::Object(m) => m,
            other => {
                let mut m = Map::new();
                m.insert("result".into(), other);
                m
            }
        };
        obj.extend(self.provenance());
        Value::Object(obj)
    }
}

pub fn headers(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

//! On-disk result cache keyed by a SHA-256 of the request.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use sha2::{Digest, Sha256};

use crate::record::RunRecord;

pub const ENV_VAR: &str = "SRGSEP_CACHE_DIR";

pub struct Cache {
    dir: PathBuf,
}

/// Stable key over the command, the family or graph identity, its
/// parameters and the major version.
pub fn key(command: &str, subject: &str, params: &str) -> String {
    let major = env!("CARGO_PKG_VERSION").split('.').next().unwrap_or("0");
    let mut h = Sha256::new();
    for part in [crate::record::SCHEMA, major, command, subject, params] {
        h.update(part.as_bytes());
        h.update([0u8]);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

impl Cache {
    pub fn open(dir: &Path) -> Result<Cache> {
        fs::create_dir_all(dir).with_context(|| format!("creating cache directory {}", dir.display()))?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A final cached record, if present. Unreadable entries are skipped
    /// with a warning.
    pub fn get(&self, key: &str) -> Option<RunRecord> {
        let path = self.path(key);
        let text = fs::read_to_string(&path).ok()?;
        match serde_json::from_str::<RunRecord>(&text) {
            Ok(rec) if rec.is_final() => Some(rec),
            Ok(_) => None,
            Err(e) => {
                eprintln!("warning: ignoring corrupt cache entry {}: {e}", path.display());
                None
            }
        }
    }

    pub fn put(&self, key: &str, rec: &RunRecord) -> Result<()> {
        let path = self.path(key);
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string_pretty(rec)?)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }
}

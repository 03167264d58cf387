//! Content-addressed JSON cache for power sums and Anderson–Thakur
//! polynomials.
//!
//! An entry lives at `<dir>/<sha256(version, kind, key)>.json`. Readers never
//! see partial files because writers rename a finished temporary file into
//! place. Unreadable entries and entries from another version are ignored.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use ffzeta_core::store::Store;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const CACHE_VERSION: &str = "ffzeta-cache-1";

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    version: String,
    kind: String,
    key: String,
    payload: Value,
}

pub struct FileCache {
    dir: PathBuf,
    version: String,
}

impl FileCache {
    pub fn open(dir: &Path) -> std::io::Result<FileCache> {
        FileCache::with_version(dir, CACHE_VERSION)
    }

    pub fn with_version(dir: &Path, version: &str) -> std::io::Result<FileCache> {
        fs::create_dir_all(dir)?;
        Ok(FileCache {
            dir: dir.to_path_buf(),
            version: version.to_string(),
        })
    }

    pub fn path_for(&self, kind: &str, key: &str) -> PathBuf {
        let mut h = Sha256::new();
        for part in [self.version.as_str(), kind, key] {
            h.update(part.as_bytes());
            h.update([0u8]);
        }
        self.dir.join(format!("{}.json", hex::encode(h.finalize())))
    }

    fn write(&self, path: &Path, entry: &CacheEntry) -> std::io::Result<()> {
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, entry)?;
        tmp.flush()?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }
}

impl Store for FileCache {
    fn load(&self, kind: &str, key: &str) -> Option<Value> {
        let path = self.path_for(kind, key);
        let text = fs::read_to_string(&path).ok()?;
        match serde_json::from_str::<CacheEntry>(&text) {
            Ok(e) if e.version == self.version && e.kind == kind && e.key == key => Some(e.payload),
            Ok(_) => {
                log::warn!("ignoring cache entry {} from another version", path.display());
                None
            }
            Err(err) => {
                log::warn!("ignoring corrupted cache entry {}: {err}", path.display());
                None
            }
        }
    }

    fn save(&self, kind: &str, key: &str, payload: &Value) {
        let entry = CacheEntry {
            version: self.version.clone(),
            kind: kind.to_string(),
            key: key.to_string(),
            payload: payload.clone(),
        };
        let path = self.path_for(kind, key);
        if let Err(e) = self.write(&path, &entry) {
            log::warn!("could not write cache entry {}: {e}", path.display());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_invalidation() {
        let dir = tempfile::tempdir().unwrap();
        let c = FileCache::open(dir.path()).unwrap();
        let v = serde_json::json!({"num": [1], "den": [0, 1]});
        assert!(c.load("power_sum", "k").is_none());
        c.save("power_sum", "k", &v);
        assert_eq!(c.load("power_sum", "k"), Some(v.clone()));
        assert!(c.load("at_poly", "k").is_none());

        // a different version addresses different files and rejects stale ones
        let bumped = FileCache::with_version(dir.path(), "ffzeta-cache-0").unwrap();
        assert!(bumped.load("power_sum", "k").is_none());
        fs::copy(c.path_for("power_sum", "k"), bumped.path_for("power_sum", "k")).unwrap();
        assert!(bumped.load("power_sum", "k").is_none());

        fs::write(c.path_for("power_sum", "k"), "{not json").unwrap();
        assert!(c.load("power_sum", "k").is_none());
        c.save("power_sum", "k", &v);
        assert_eq!(c.load("power_sum", "k"), Some(v));
    }
}

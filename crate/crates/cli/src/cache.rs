//! On-disk result cache, content-addressed by the SHA-256 of a canonical key.
//!
//! Directory: `--cache-dir`, else `$JETDIFF_CACHE_DIR`, else
//! `$XDG_CACHE_HOME/jetdiff`, else `$HOME/.cache/jetdiff`, else
//! `.jetdiff-cache`. Writes go through a temporary file and a rename, so a
//! concurrent reader sees either nothing or a complete entry.

use std::fs;
use std::path::{Path, PathBuf};

use jetdiff::poly::Poly;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::output::{poly_from_json, poly_json};

pub const ENV_VAR: &str = "JETDIFF_CACHE_DIR";

pub fn default_dir() -> PathBuf {
    if let Some(p) = std::env::var_os(ENV_VAR) {
        return PathBuf::from(p);
    }
    if let Some(p) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(p).join("jetdiff");
    }
    if let Some(p) = std::env::var_os("HOME") {
        return PathBuf::from(p).join(".cache").join("jetdiff");
    }
    PathBuf::from(".jetdiff-cache")
}

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: PathBuf) -> Self {
        Cache { dir: Some(dir) }
    }

    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    fn path(dir: &Path, key: &str) -> PathBuf {
        let digest = Sha256::digest(key.as_bytes());
        dir.join(format!("{}.json", hex::encode(digest)))
    }

    pub fn get(&self, key: &str) -> Option<Poly> {
        let dir = self.dir.as_ref()?;
        let text = fs::read_to_string(Self::path(dir, key)).ok()?;
        let v: Value = serde_json::from_str(&text).ok()?;
        // A digest collision or a stale format is treated as a miss.
        if v.get("key")?.as_str()? != key {
            return None;
        }
        poly_from_json(v.get("value")?)
    }

    /// Best effort: a failed write only costs recomputation later.
    pub fn put(&self, key: &str, value: &Poly) {
        let Some(dir) = self.dir.as_ref() else { return };
        if fs::create_dir_all(dir).is_err() {
            return;
        }
        let path = Self::path(dir, key);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let body = serde_json::to_string(&json!({ "key": key, "value": poly_json(value) }))
            .expect("serializable");
        if fs::write(&tmp, body).is_ok() {
            let _ = fs::rename(&tmp, &path);
        }
    }

    pub fn get_or_compute<E>(
        &self,
        key: &str,
        f: impl FnOnce() -> Result<Poly, E>,
    ) -> Result<Poly, E> {
        if let Some(v) = self.get(key) {
            return Ok(v);
        }
        let v = f()?;
        self.put(key, &v);
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use jetdiff::poly::parse_poly;

    #[test]
    fn round_trip_and_miss() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(dir.path().to_path_buf());
        assert!(c.get("k").is_none());
        let p = parse_poly("1/3*d^2 - d").unwrap();
        c.put("k", &p);
        assert_eq!(c.get("k").unwrap(), p);
        assert!(c.get("other").is_none());
        let got = c
            .get_or_compute::<()>("k", || panic!("should hit"))
            .unwrap();
        assert_eq!(got, p);
        assert!(Cache::disabled().get("k").is_none());
    }
}

//! On-disk cache for [`MeshTables`], keyed by a hash of the control set.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use super::MeshTables;
use crate::control_set::ControlSet;

pub const CACHE_VERSION: u32 = 1;
const CACHE_FORMAT: &str = "meshplan-tables";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache i/o: {0}")]
    Io(#[from] io::Error),
    #[error("cache is not a valid tables file: {0}")]
    Format(#[from] serde_json::Error),
    #[error("cache format {found:?} version {version} is not supported")]
    Version { found: String, version: u32 },
    #[error("cache was built for control set {found}, expected {expected}")]
    HashMismatch { expected: String, found: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Built,
    /// An existing cache could not be used and was replaced.
    Rebuilt(String),
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format: String,
    version: u32,
    control_set_sha256: String,
    tables: MeshTables,
}

/// SHA-256 (hex) of the control set's saved form.
pub fn control_set_hash(cs: &ControlSet) -> String {
    let digest = Sha256::digest(cs.save().as_bytes());
    digest.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

pub fn write_cache(path: &Path, cs: &ControlSet, tables: &MeshTables) -> Result<(), CacheError> {
    let file = CacheFile {
        format: CACHE_FORMAT.to_string(),
        version: CACHE_VERSION,
        control_set_sha256: control_set_hash(cs),
        tables: tables.clone(),
    };
    fs::write(path, serde_json::to_vec(&file)?)?;
    Ok(())
}

/// Read a cache and check that it belongs to `cs`.
pub fn read_cache(path: &Path, cs: &ControlSet) -> Result<MeshTables, CacheError> {
    let bytes = fs::read(path)?;
    let file: CacheFile = serde_json::from_slice(&bytes)?;
    if file.format != CACHE_FORMAT || file.version != CACHE_VERSION {
        return Err(CacheError::Version {
            found: file.format,
            version: file.version,
        });
    }
    let expected = control_set_hash(cs);
    if file.control_set_sha256 != expected {
        return Err(CacheError::HashMismatch {
            expected,
            found: file.control_set_sha256,
        });
    }
    Ok(file.tables)
}

/// Use the cache at `path` when it matches `cs`; otherwise build the tables
/// and (re)write the cache.
pub fn load_or_build(
    path: &Path,
    cs: &ControlSet,
) -> Result<(MeshTables, CacheStatus), CacheError> {
    let status = match read_cache(path, cs) {
        Ok(tables) => return Ok((tables, CacheStatus::Hit)),
        Err(CacheError::Io(e)) if e.kind() == io::ErrorKind::NotFound => CacheStatus::Built,
        Err(e) => CacheStatus::Rebuilt(e.to_string()),
    };
    let tables = MeshTables::build(cs);
    write_cache(path, cs, &tables)?;
    Ok((tables, status))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::control_set::toy2;

    #[test]
    fn cache_roundtrip_and_recovery() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("toy2.tables.json");
        let cs = toy2();

        let (built, status) = load_or_build(&path, &cs).unwrap();
        assert_eq!(status, CacheStatus::Built);
        let first = fs::read(&path).unwrap();

        let (hit, status) = load_or_build(&path, &cs).unwrap();
        assert_eq!(status, CacheStatus::Hit);
        assert_eq!(hit, built);
        assert_eq!(fs::read(&path).unwrap(), first);

        fs::write(&path, b"{ not json").unwrap();
        let (_, status) = load_or_build(&path, &cs).unwrap();
        assert!(matches!(status, CacheStatus::Rebuilt(_)));
        assert_eq!(fs::read(&path).unwrap(), first);

        let mut other = cs.clone();
        other.primitives[0].cost = 2.5;
        assert!(matches!(
            read_cache(&path, &other),
            Err(CacheError::HashMismatch { .. })
        ));
    }
}

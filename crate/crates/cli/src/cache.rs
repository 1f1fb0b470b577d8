//! On-disk cache of result tables, keyed by a content hash of the job.

use crate::config::{dim_key, Job, RelationSpec};
use crate::table::ResultTable;
use crate::CliError;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Serialize)]
struct KeyMaterial<'a> {
    arrows: &'a [Vec<u32>],
    relations: &'a [RelationSpec],
    provider: String,
    provider_table: BTreeMap<String, Vec<String>>,
    bound: String,
}

/// Hash of the quiver, relations, provider values on the box, and bound.
pub fn cache_key(job: &Job) -> Result<String, CliError> {
    let material = KeyMaterial {
        arrows: job.quiver.arrows(),
        relations: &job.relation_specs,
        provider: format!("{:?}", job.provider_kind),
        provider_table: job.provider_table()?,
        bound: dim_key(job.bound.upper()),
    };
    let text = serde_json::to_string(&material).expect("key material serializes");
    Ok(sha256_hex(text.as_bytes()))
}

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    checksum: String,
    payload: String,
}

#[derive(Debug)]
pub enum Lookup {
    Hit(ResultTable),
    Miss,
    /// The entry exists but cannot be trusted; the reason is included.
    Corrupt(String),
}

fn entry_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.json"))
}

pub fn load(dir: &Path, key: &str) -> Lookup {
    let path = entry_path(dir, key);
    let Ok(text) = std::fs::read_to_string(&path) else { return Lookup::Miss };
    let entry: Entry = match serde_json::from_str(&text) {
        Ok(e) => e,
        Err(e) => return Lookup::Corrupt(format!("{}: unreadable entry ({e})", path.display())),
    };
    if entry.key != key || sha256_hex(entry.payload.as_bytes()) != entry.checksum {
        return Lookup::Corrupt(format!("{}: checksum mismatch", path.display()));
    }
    match serde_json::from_str(&entry.payload) {
        Ok(t) => Lookup::Hit(t),
        Err(e) => Lookup::Corrupt(format!("{}: unreadable table ({e})", path.display())),
    }
}

/// Writes the entry to a temporary file in `dir` and renames it into place.
pub fn store(dir: &Path, key: &str, table: &ResultTable) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("cache {}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    let payload = serde_json::to_string(table).expect("tables serialize");
    let entry = Entry { key: key.to_string(), checksum: sha256_hex(payload.as_bytes()), payload };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(serde_json::to_string(&entry).expect("entries serialize").as_bytes()).map_err(io)?;
    tmp.persist(entry_path(dir, key)).map_err(|e| io(e.error))?;
    Ok(())
}

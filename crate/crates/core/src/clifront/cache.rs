//! On-disk cache of invariant vectors keyed by the normalized link text.
//!
//! Entries are written to a temporary file and renamed into place. A
//! missing, truncated or tampered entry is treated as a miss.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::render::{invariants_from_json, invariants_json, serialize_word};
use crate::stringlink::{ColoredStringLink, InvariantVector};
use crate::Int;

pub const CACHE_ENV: &str = "LINKHOM_CACHE_DIR";
const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Entry {
    version: u32,
    key: String,
    checksum: String,
    payload: String,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Cache key of a link: the hash of its normalized document text.
pub fn cache_key(a: &ColoredStringLink) -> String {
    sha256_hex(serialize_word(a.ambient(), a.word()).as_bytes())
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// The cache named by `LINKHOM_CACHE_DIR`, if set and non-empty.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(Cache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn load(&self, a: &ColoredStringLink) -> Option<InvariantVector<Int>> {
        let key = cache_key(a);
        let text = fs::read_to_string(self.path(&key)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        if entry.version != FORMAT_VERSION || entry.key != key || entry.checksum != sha256_hex(entry.payload.as_bytes()) {
            return None;
        }
        let v = invariants_from_json(&entry.payload).ok()?;
        (v.ambient() == a.ambient()).then_some(v)
    }

    pub fn store(&self, a: &ColoredStringLink, v: &InvariantVector<Int>) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let key = cache_key(a);
        let payload = invariants_json(v);
        let entry = Entry { version: FORMAT_VERSION, key: key.clone(), checksum: sha256_hex(payload.as_bytes()), payload };
        let text = serde_json::to_string(&entry).expect("serializable");
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        let result = (|| {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(text.as_bytes())?;
            f.sync_all()?;
            fs::rename(&tmp, self.path(&key))
        })();
        if result.is_err() {
            let _ = fs::remove_file(&tmp);
        }
        result
    }
}

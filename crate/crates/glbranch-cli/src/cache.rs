//! JSON-lines result cache keyed by the SHA-256 of the canonical query.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;
use std::sync::Mutex;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub fn key(canonical: &str) -> String {
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

pub struct Cache {
    path: PathBuf,
    known: HashMap<String, Value>,
    fresh: Mutex<Vec<(String, String, Value)>>,
}

impl Cache {
    /// Load an existing cache file; a missing file is an empty cache.
    /// Unreadable lines are skipped.
    pub fn open(path: PathBuf) -> std::io::Result<Cache> {
        let mut known = HashMap::new();
        match File::open(&path) {
            Ok(f) => {
                for line in BufReader::new(f).lines() {
                    let line = line?;
                    if let Ok(v) = serde_json::from_str::<Value>(&line) {
                        if let (Some(h), Some(r)) = (v["h"].as_str(), v.get("r")) {
                            known.insert(h.to_string(), r.clone());
                        }
                    }
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => return Err(e),
        }
        Ok(Cache { path, known, fresh: Mutex::new(Vec::new()) })
    }

    pub fn get(&self, h: &str) -> Option<Value> {
        self.known.get(h).cloned()
    }

    pub fn put(&self, h: String, q: String, r: Value) {
        self.fresh.lock().expect("cache lock").push((h, q, r));
    }

    /// Append the new entries, skipping duplicates within this run.
    pub fn flush(self) -> std::io::Result<()> {
        let fresh = self.fresh.into_inner().expect("cache lock");
        if fresh.is_empty() {
            return Ok(());
        }
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        let mut written = std::collections::HashSet::new();
        for (h, q, r) in fresh {
            if self.known.contains_key(&h) || !written.insert(h.clone()) {
                continue;
            }
            writeln!(f, "{}", json!({ "h": h, "q": q, "r": r }))?;
        }
        Ok(())
    }
}

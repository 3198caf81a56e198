//! Append-only JSON-lines store of computed indices, keyed by canonical
//! graph6. Unreadable lines are skipped with a warning so an interrupted
//! sweep never poisons later runs.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub g6: String,
    pub dprime: u32,
    pub od_minus: u32,
    /// Absent when the scan did not need it.
    pub od_plus: Option<u32>,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

impl CacheRecord {
    pub fn new(g6: String, dprime: u32, od_minus: u32, od_plus: Option<u32>) -> Self {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        CacheRecord {
            g6,
            dprime,
            od_minus,
            od_plus,
            timestamp,
        }
    }

    /// Same values, ignoring when they were computed.
    pub fn same_values(&self, other: &CacheRecord) -> bool {
        self.g6 == other.g6
            && self.dprime == other.dprime
            && self.od_minus == other.od_minus
            && self.od_plus == other.od_plus
    }
}

pub struct Cache {
    path: PathBuf,
    records: Mutex<HashMap<String, CacheRecord>>,
    writer: Mutex<File>,
    bad_lines: usize,
}

impl Cache {
    /// Opens `path` for appending, loading whatever it already holds. Later
    /// lines win over earlier ones for the same key.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut records = HashMap::new();
        let mut bad_lines = 0;
        if path.exists() {
            let reader = BufReader::new(File::open(&path)?);
            for (i, line) in reader.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<CacheRecord>(&line) {
                    Ok(r) => {
                        records.insert(r.g6.clone(), r);
                    }
                    Err(e) => {
                        bad_lines += 1;
                        log::warn!("{}:{}: skipping unreadable cache line: {e}", path.display(), i + 1);
                    }
                }
            }
        }
        let mut writer = OpenOptions::new().create(true).append(true).open(&path)?;
        // a torn final line must not swallow the next record
        let len = writer.metadata()?.len();
        if len > 0 && !std::fs::read(&path)?.ends_with(b"\n") {
            writeln!(writer)?;
        }
        Ok(Cache {
            path,
            records: Mutex::new(records),
            writer: Mutex::new(writer),
            bad_lines,
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn bad_lines(&self) -> usize {
        self.bad_lines
    }

    pub fn len(&self) -> usize {
        self.records.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, g6: &str) -> Option<CacheRecord> {
        self.records.lock().expect("cache lock").get(g6).cloned()
    }

    /// All records, sorted by key.
    pub fn records(&self) -> Vec<CacheRecord> {
        let mut all: Vec<CacheRecord> = self.records.lock().expect("cache lock").values().cloned().collect();
        all.sort_by(|a, b| a.g6.cmp(&b.g6));
        all
    }

    /// Appends one line and flushes, so a crash loses at most the record in
    /// flight.
    pub fn put(&self, record: CacheRecord) -> Result<()> {
        let line = serde_json::to_string(&record)?;
        {
            let mut w = self.writer.lock().expect("cache lock");
            writeln!(w, "{line}")?;
            w.flush()?;
        }
        self.records.lock().expect("cache lock").insert(record.g6.clone(), record);
        Ok(())
    }
}

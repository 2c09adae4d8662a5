//! Newline-delimited JSON cache of [`CountResult`] records.

use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use crate::counting::CountResult;

#[derive(Debug, Default)]
pub struct Cache {
    path: Option<PathBuf>,
    records: Vec<CountResult>,
}

impl Cache {
    /// A cache that remembers nothing.
    pub fn disabled() -> Self {
        Cache::default()
    }

    /// Loads `path`; a missing file is an empty cache.
    pub fn open(path: &Path) -> io::Result<Self> {
        let mut records = Vec::new();
        match File::open(path) {
            Ok(file) => {
                for (i, line) in BufReader::new(file).lines().enumerate() {
                    let line = line?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    let record = serde_json::from_str(&line).map_err(|e| {
                        io::Error::new(
                            io::ErrorKind::InvalidData,
                            format!("{}:{}: {e}", path.display(), i + 1),
                        )
                    })?;
                    records.push(record);
                }
            }
            Err(e) if e.kind() == io::ErrorKind::NotFound => {}
            Err(e) => return Err(e),
        }
        Ok(Cache {
            path: Some(path.to_path_buf()),
            records,
        })
    }

    pub fn lookup(&self, q: u64, field: &str) -> Option<&CountResult> {
        self.records.iter().find(|r| r.q == q && r.field == field)
    }

    pub fn insert(&mut self, record: CountResult) -> io::Result<()> {
        if let Some(path) = &self.path {
            let mut file = OpenOptions::new().create(true).append(true).open(path)?;
            writeln!(file, "{}", record.to_json())?;
        }
        self.records.push(record);
        Ok(())
    }
}

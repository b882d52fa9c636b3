//! Content-addressed file cache for syzygy computations.
//!
//! An entry lives at `DIR/ab/cdef...` where `abcdef...` is the SHA-256 of
//! the tool version and the key. The file stores the full key followed by
//! the value, so a hash collision reads as a miss. Readers take a shared
//! lock on `DIR/.lock`, writers an exclusive one; writes go through a
//! temporary file and a rename.

use std::fs::{self, File, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;
use sha2::{Digest, Sha256};
use torsionlab_core::ring::ComputationCache;

pub const CACHE_ENV: &str = "TORSIONLAB_CACHE";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub writes: u64,
}

#[derive(Debug)]
pub struct FileCache {
    dir: PathBuf,
    hits: AtomicU64,
    misses: AtomicU64,
    writes: AtomicU64,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

impl FileCache {
    pub fn open(dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(FileCache { dir, hits: AtomicU64::new(0), misses: AtomicU64::new(0), writes: AtomicU64::new(0) })
    }

    /// `--cache DIR`, then `$TORSIONLAB_CACHE`, then the user cache directory.
    pub fn default_dir(explicit: Option<&Path>) -> PathBuf {
        if let Some(d) = explicit {
            return d.to_path_buf();
        }
        if let Some(d) = std::env::var_os(CACHE_ENV).filter(|d| !d.is_empty()) {
            return PathBuf::from(d);
        }
        let base = std::env::var_os("XDG_CACHE_HOME")
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))
            .unwrap_or_else(std::env::temp_dir);
        base.join("torsionlab")
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            writes: self.writes.load(Ordering::Relaxed),
        }
    }

    fn digest(key: &str) -> String {
        let mut h = Sha256::new();
        h.update(env!("CARGO_PKG_VERSION").as_bytes());
        h.update([0]);
        h.update(key.as_bytes());
        format!("{:x}", h.finalize())
    }

    fn entry_path(&self, key: &str) -> PathBuf {
        let d = Self::digest(key);
        self.dir.join(&d[..2]).join(&d[2..])
    }

    fn lock_file(&self) -> io::Result<File> {
        OpenOptions::new().create(true).truncate(false).read(true).write(true).open(self.dir.join(".lock"))
    }

    fn read(&self, key: &str) -> io::Result<Option<String>> {
        let lock = self.lock_file()?;
        lock.lock_shared()?;
        let text = match fs::read_to_string(self.entry_path(key)) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e),
        };
        let Some((len, rest)) = text.split_once('\n') else { return Ok(None) };
        let Ok(len) = len.parse::<usize>() else { return Ok(None) };
        if rest.len() < len || !rest.is_char_boundary(len) || &rest[..len] != key {
            return Ok(None);
        }
        Ok(Some(rest[len..].to_string()))
    }

    fn write(&self, key: &str, value: &str) -> io::Result<()> {
        let path = self.entry_path(key);
        let parent = path.parent().expect("entries live in a subdirectory");
        fs::create_dir_all(parent)?;
        let tmp = parent.join(format!(
            ".tmp-{}-{}",
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        {
            let mut f = File::create(&tmp)?;
            write!(f, "{}\n{key}{value}", key.len())?;
            f.sync_all()?;
        }
        let lock = self.lock_file()?;
        lock.lock()?;
        fs::rename(&tmp, &path)
    }
}

impl ComputationCache for FileCache {
    fn get(&self, key: &str) -> Option<String> {
        match self.read(key) {
            Ok(Some(v)) => {
                self.hits.fetch_add(1, Ordering::Relaxed);
                Some(v)
            }
            _ => {
                self.misses.fetch_add(1, Ordering::Relaxed);
                None
            }
        }
    }

    fn put(&self, key: &str, value: &str) {
        if self.write(key, value).is_ok() {
            self.writes.fetch_add(1, Ordering::Relaxed);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_miss() {
        let dir = tempfile::tempdir().unwrap();
        let c = FileCache::open(dir.path()).unwrap();
        assert_eq!(c.get("k"), None);
        c.put("k", "value\nwith lines");
        assert_eq!(c.get("k").as_deref(), Some("value\nwith lines"));
        let again = FileCache::open(dir.path()).unwrap();
        assert_eq!(again.get("k").as_deref(), Some("value\nwith lines"));
        assert_eq!(c.stats(), CacheStats { hits: 1, misses: 1, writes: 1 });
    }

    #[test]
    fn mismatched_key_is_a_miss() {
        let dir = tempfile::tempdir().unwrap();
        let c = FileCache::open(dir.path()).unwrap();
        c.put("k", "v");
        let path = c.entry_path("k");
        fs::write(&path, "1\nzv").unwrap();
        assert_eq!(c.get("k"), None);
    }
}

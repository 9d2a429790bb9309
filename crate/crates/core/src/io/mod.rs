//! Content-addressed cache and run configuration.
//!
//! An entry lives at `<root>/<version>/<key[0:2]>/<key>` where the key is
//! the SHA-256 of the version and a descriptor string. The file holds a JSON
//! envelope with the payload and its checksum; a checksum mismatch reads as
//! a miss.

use crate::cohomology::{cohomology_of, stable_cohomology_of};
use crate::enumerate::{enumerate_basis, ChainBasis, ComplexSpec, Limits};
use crate::linalg::{DimReport, RankOptions};
use crate::stable::{enumerate_stable_basis, StableBasis, StableSpec};
use crate::Error;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

mod table;
pub use table::{weight1_columns, weight1_table, Cell, Table, TableRow};

/// Bumped whenever a cached payload changes meaning.
pub const CACHE_VERSION: &str = "v1";

pub const CACHE_ENV: &str = "GRAPHCX_CACHE";
pub const DEFAULT_CACHE_DIR: &str = ".graphcx-cache";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Config {
    pub cache_dir: PathBuf,
    /// `None` leaves the pool size to rayon.
    pub threads: Option<usize>,
    pub seed: u64,
    pub limits: Limits,
    pub format: OutputFormat,
    pub use_cache: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            cache_dir: PathBuf::from(DEFAULT_CACHE_DIR),
            threads: None,
            seed: RankOptions::default().seed,
            limits: Limits::default(),
            format: OutputFormat::Text,
            use_cache: true,
        }
    }
}

impl Config {
    pub fn rank_options(&self) -> RankOptions {
        RankOptions { seed: self.seed, ..RankOptions::default() }
    }
}

/// Flag, then environment, then the default.
pub fn resolve_cache_dir(flag: Option<&Path>, env: Option<&str>) -> PathBuf {
    match (flag, env) {
        (Some(p), _) => p.to_path_buf(),
        (None, Some(e)) if !e.is_empty() => PathBuf::from(e),
        _ => PathBuf::from(DEFAULT_CACHE_DIR),
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache i/o at {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cache serialization: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Serialize, Deserialize)]
struct Envelope {
    version: String,
    descriptor: String,
    checksum: String,
    payload: String,
}

#[derive(Debug)]
pub struct Cache {
    root: PathBuf,
    hits: AtomicUsize,
    misses: AtomicUsize,
}

fn sha_hex(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p.as_bytes());
    }
    hex::encode(h.finalize())
}

impl Cache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Cache { root: root.into(), hits: AtomicUsize::new(0), misses: AtomicUsize::new(0) }
    }

    pub fn key(descriptor: &str) -> String {
        sha_hex(&[CACHE_VERSION, descriptor])
    }

    pub fn path_for(&self, descriptor: &str) -> PathBuf {
        let key = Self::key(descriptor);
        self.root.join(CACHE_VERSION).join(&key[..2]).join(key)
    }

    pub fn hits(&self) -> usize {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> usize {
        self.misses.load(Ordering::Relaxed)
    }

    pub fn get<T: DeserializeOwned>(&self, descriptor: &str) -> Option<T> {
        let found = fs::read_to_string(self.path_for(descriptor))
            .ok()
            .and_then(|s| serde_json::from_str::<Envelope>(&s).ok())
            .filter(|e| e.descriptor == descriptor && e.version == CACHE_VERSION)
            .filter(|e| sha_hex(&[&e.payload]) == e.checksum)
            .and_then(|e| serde_json::from_str(&e.payload).ok());
        let counter = if found.is_some() { &self.hits } else { &self.misses };
        counter.fetch_add(1, Ordering::Relaxed);
        found
    }

    /// Writes to a temporary file in the target directory, then renames it
    /// into place.
    pub fn put<T: Serialize>(&self, descriptor: &str, value: &T) -> Result<PathBuf, CacheError> {
        let path = self.path_for(descriptor);
        let dir = path.parent().expect("cache paths have a parent");
        let io = |source| CacheError::Io { path: path.clone(), source };
        fs::create_dir_all(dir).map_err(io)?;
        let payload = serde_json::to_string(value)?;
        let env = Envelope { version: CACHE_VERSION.into(), descriptor: descriptor.into(), checksum: sha_hex(&[&payload]), payload };
        let nanos = std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map_or(0, |d| d.as_nanos());
        let tmp = dir.join(format!(".{}.{}.{nanos}.tmp", path.file_name().unwrap().to_string_lossy(), std::process::id()));
        let mut f = fs::File::create(&tmp).map_err(io)?;
        f.write_all(serde_json::to_string(&env)?.as_bytes()).map_err(io)?;
        f.sync_all().map_err(io)?;
        fs::rename(&tmp, &path).map_err(io)?;
        Ok(path)
    }

    /// Cached value for `descriptor`, computing and storing it on a miss.
    /// A failed write is not an error; the value is still returned.
    pub fn get_or<T, E>(&self, descriptor: &str, compute: impl FnOnce() -> Result<T, E>) -> Result<T, E>
    where
        T: Serialize + DeserializeOwned,
    {
        if let Some(v) = self.get(descriptor) {
            return Ok(v);
        }
        let v = compute()?;
        let _ = self.put(descriptor, &v);
        Ok(v)
    }
}

/// Computes through an optional cache.
pub struct Store<'a> {
    pub cache: Option<&'a Cache>,
    pub limits: Limits,
    pub opts: RankOptions,
}

impl<'a> Store<'a> {
    pub fn new(cache: Option<&'a Cache>, config: &Config) -> Self {
        Store { cache, limits: config.limits, opts: config.rank_options() }
    }

    pub fn uncached() -> Store<'static> {
        Store { cache: None, limits: Limits::default(), opts: RankOptions::default() }
    }

    fn through<T: Serialize + DeserializeOwned>(&self, desc: String, f: impl FnOnce() -> Result<T, Error>) -> Result<T, Error> {
        match self.cache {
            Some(c) => c.get_or(&desc, f),
            None => f(),
        }
    }

    pub fn basis(&self, spec: ComplexSpec) -> Result<ChainBasis, Error> {
        self.through(format!("basis/{}", spec.label()), || Ok(enumerate_basis(spec, &self.limits)?))
    }

    pub fn cohomology(&self, spec: ComplexSpec) -> Result<DimReport, Error> {
        self.through(format!("cohomology/{}/seed={}", spec.label(), self.opts.seed), || cohomology_of(&self.basis(spec)?, &self.opts))
    }

    pub fn stable_basis(&self, spec: StableSpec) -> Result<StableBasis, Error> {
        self.through(format!("stable-basis/{}", spec.label()), || Ok(enumerate_stable_basis(spec, &self.limits)?))
    }

    pub fn stable_cohomology(&self, spec: StableSpec) -> Result<DimReport, Error> {
        self.through(format!("stable-cohomology/{}/seed={}", spec.label(), self.opts.seed), || {
            stable_cohomology_of(&self.stable_basis(spec)?, &self.opts)
        })
    }
}

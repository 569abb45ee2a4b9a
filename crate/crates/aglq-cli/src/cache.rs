//! Versioned JSON cache for catalogs and Moebius tables.
//!
//! Envelopes carry a fingerprint of every canonical choice (p, n, modulus,
//! generator); a mismatch or version bump silently invalidates the cache
//! and triggers a rebuild.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use aglq_core::agl_mobius::MuTableJson;
use aglq_core::subgroups::CatalogJson;
use aglq_core::Field;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub p: u64,
    pub n: u32,
    pub modulus: Vec<u64>,
    /// Generator as a coefficient vector, constant term first.
    pub gamma: Vec<u64>,
}

impl Fingerprint {
    pub fn of(field: &Field) -> Fingerprint {
        Fingerprint {
            p: field.p(),
            n: field.n(),
            modulus: field.modulus().to_vec(),
            gamma: field.coeffs(field.generator()),
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CachePayload {
    Catalog(CatalogJson),
    Table(MuTableJson),
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct CacheEnvelope {
    pub schema_version: u32,
    pub fingerprint: Fingerprint,
    pub payload: CachePayload,
}

impl CacheEnvelope {
    pub fn new(field: &Field, payload: CachePayload) -> CacheEnvelope {
        CacheEnvelope {
            schema_version: SCHEMA_VERSION,
            fingerprint: Fingerprint::of(field),
            payload,
        }
    }

    pub fn save(&self, path: &Path) -> io::Result<()> {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        let mut text = serde_json::to_string(self).expect("cache serialization");
        text.push('\n');
        fs::write(path, text)
    }

    /// Loads an envelope if the file exists, parses, and matches both the
    /// schema version and the field fingerprint; anything else means
    /// "rebuild", not an error.
    pub fn load_if_valid(path: &Path, field: &Field) -> Option<CacheEnvelope> {
        let text = fs::read_to_string(path).ok()?;
        let envelope: CacheEnvelope = serde_json::from_str(&text).ok()?;
        if envelope.schema_version != SCHEMA_VERSION {
            return None;
        }
        if envelope.fingerprint != Fingerprint::of(field) {
            return None;
        }
        Some(envelope)
    }
}

pub fn catalog_path(dir: &Path, q: u64) -> PathBuf {
    dir.join(format!("q{}.catalog.json", q))
}

pub fn table_path(dir: &Path, q: u64) -> PathBuf {
    dir.join(format!("q{}.table.json", q))
}

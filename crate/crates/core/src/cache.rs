//! On-disk verdict cache, keyed by the two presentations, the bound and
//! the tool version. Enabled by pointing `CPT_CACHE_DIR` at a directory.
//!
//! Cached certificates are re-verified on load, so a stale or tampered
//! entry can cost a search but never produce a wrong answer.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::iso::{self, SearchVerdict};
use crate::json;
use crate::tower::RingPresentation;

pub const ENV_VAR: &str = "CPT_CACHE_DIR";

#[derive(Clone, Debug)]
pub struct VerdictCache {
    dir: PathBuf,
    version: String,
}

impl VerdictCache {
    pub fn new(dir: impl Into<PathBuf>, version: impl Into<String>) -> Self {
        VerdictCache { dir: dir.into(), version: version.into() }
    }

    /// The cache named by `CPT_CACHE_DIR`, if set and non-empty.
    pub fn from_env(version: &str) -> Option<Self> {
        std::env::var_os(ENV_VAR).filter(|v| !v.is_empty()).map(|d| Self::new(d, version))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn key(&self, a: &RingPresentation, b: &RingPresentation, bound: u32) -> String {
        let mut h = Sha256::new();
        for part in [
            self.version.clone(),
            json::presentation_to_json(a, false, None).to_string(),
            json::presentation_to_json(b, false, None).to_string(),
            bound.to_string(),
        ] {
            h.update(part.as_bytes());
            h.update([0u8]);
        }
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, a: &RingPresentation, b: &RingPresentation, bound: u32) -> Option<SearchVerdict> {
        let text = fs::read_to_string(self.path(&self.key(a, b, bound))).ok()?;
        let value: serde_json::Value = serde_json::from_str(&text).ok()?;
        let verdict = json::verdict_from_json(&value).ok()?;
        match &verdict {
            SearchVerdict::Found(c) => iso::verify(c, a, b).ok().filter(|ok| *ok).map(|_| verdict),
            SearchVerdict::NoneWithinBound { bound: b0, .. } => (*b0 == bound).then_some(verdict),
        }
    }

    pub fn put(&self, a: &RingPresentation, b: &RingPresentation, bound: u32, v: &SearchVerdict) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let key = self.key(a, b, bound);
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        fs::write(&tmp, json::verdict_to_json(v).to_string())?;
        fs::rename(tmp, self.path(&key))
    }

    /// Cached search; write failures are ignored (the cache is optional).
    pub fn search(&self, a: &RingPresentation, b: &RingPresentation, bound: u32, jobs: usize) -> SearchVerdict {
        if let Some(v) = self.get(a, b, bound) {
            return v;
        }
        let v = iso::search_with_jobs(a, b, bound, jobs);
        let _ = self.put(a, b, bound, &v);
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn pres(rels: &[&str]) -> RingPresentation {
        RingPresentation::from_relations(vec![1, 1], rels.iter().map(|r| Poly::parse(r, 2).unwrap()).collect()).unwrap()
    }

    #[test]
    fn stores_and_reverifies() {
        let dir = tempfile::tempdir().unwrap();
        let cache = VerdictCache::new(dir.path(), "test");
        let (a, b) = (pres(&["x^2", "y^2"]), pres(&["x^2", "y^2 + 2*x*y"]));
        assert!(cache.get(&a, &b, 2).is_none());
        let v = cache.search(&a, &b, 2, 1);
        assert_eq!(cache.get(&a, &b, 2), Some(v.clone()));
        assert!(cache.get(&a, &b, 3).is_none());
        assert!(VerdictCache::new(dir.path(), "other").get(&a, &b, 2).is_none());

        // a corrupted certificate is ignored rather than trusted
        let key = cache.key(&a, &b, 2);
        let bogus = json::verdict_to_json(&SearchVerdict::Found(crate::iso::IsoCertificate::identity(2)));
        fs::write(cache.path(&key), bogus.to_string()).unwrap();
        assert!(cache.get(&a, &b, 2).is_none());
        assert_eq!(cache.search(&a, &b, 2, 1), v);
    }
}

//! On-disk cache of solved octal quotients, one JSON file per code and
//! request.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::algebra::{BipartiteMonoid, Element, IDENTITY};
use crate::games::{Alphabet, OctalCode};
use crate::heaps::Period;
use crate::solver::{Candidate, QuotientSolution};

/// Overrides the cache directory.
pub const CACHE_DIR_ENV: &str = "MISERE_CACHE_DIR";

const FORMAT: u32 = 1;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("cache record: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cache record does not rebuild: {0}")]
    Rebuild(String),
}

/// A converged quotient as stored on disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub format: u32,
    pub version: String,
    pub code: String,
    pub request: String,
    pub heaps: usize,
    pub order: usize,
    /// Row-major product table; element 0 is the identity.
    pub table: Vec<Element>,
    pub p: Vec<Element>,
    pub phi: Vec<Element>,
    pub orders: Vec<usize>,
    pub period: Option<Period>,
    /// SHA-256 of the record with this field empty.
    pub hash: String,
}

impl CacheRecord {
    fn from_solution(code: &OctalCode, request: &str, sol: &QuotientSolution) -> Self {
        let m = sol.candidate.monoid();
        let mut rec = CacheRecord {
            format: FORMAT,
            version: env!("CARGO_PKG_VERSION").to_string(),
            code: code.to_string(),
            request: request.to_string(),
            heaps: sol.solved,
            order: m.order(),
            table: m.table().to_vec(),
            p: m.p_elements(),
            phi: sol.candidate.phi().to_vec(),
            orders: sol.orders.clone(),
            period: sol.period,
            hash: String::new(),
        };
        rec.hash = rec.content_hash();
        rec
    }

    fn content_hash(&self) -> String {
        let bare = CacheRecord {
            hash: String::new(),
            ..self.clone()
        };
        let bytes = serde_json::to_vec(&bare).expect("serializable");
        hex::encode(Sha256::digest(&bytes))
    }

    fn is_valid_for(&self, code: &OctalCode, request: &str) -> bool {
        self.format == FORMAT
            && self.version == env!("CARGO_PKG_VERSION")
            && self.code == code.to_string()
            && self.request == request
            && self.hash == self.content_hash()
    }

    fn to_solution(&self, code: &OctalCode) -> Result<QuotientSolution, CacheError> {
        let bad = |e: String| CacheError::Rebuild(e);
        let mut mask = vec![false; self.order];
        for &x in &self.p {
            *mask.get_mut(x as usize).ok_or_else(|| bad("P index out of range".into()))? = true;
        }
        let labels: Vec<String> = (1..=self.heaps).map(|k| format!("H{k}")).collect();
        let m = BipartiteMonoid::from_table(
            self.order,
            self.table.clone(),
            IDENTITY,
            self.phi.clone(),
            labels.clone(),
            mask,
        )
        .map_err(|e| bad(e.to_string()))?;
        let candidate = Candidate::new(m, &Alphabet::for_code(code, self.heaps)).map_err(|e| bad(e.to_string()))?;
        Ok(QuotientSolution {
            labels,
            candidate,
            solved: self.heaps,
            converged: true,
            stop_reason: None,
            orders: self.orders.clone(),
            trace: Vec::new(),
            period: self.period,
        })
    }
}

#[derive(Clone, Debug)]
pub struct QuotientCache {
    dir: PathBuf,
}

impl QuotientCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        QuotientCache { dir: dir.into() }
    }

    /// `dir` if given, else the directory named by [`CACHE_DIR_ENV`].
    pub fn locate(dir: Option<&Path>) -> Option<Self> {
        dir.map(Path::to_path_buf)
            .or_else(|| std::env::var_os(CACHE_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
            .map(Self::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, code: &OctalCode, request: &str) -> PathBuf {
        let key = Sha256::digest(format!("{code}\n{request}").as_bytes());
        self.dir.join(format!("{}.json", &hex::encode(key)[..24]))
    }

    /// A cached solution, or `None` for a missing, stale or corrupt record.
    pub fn load(&self, code: &OctalCode, request: &str) -> Option<QuotientSolution> {
        let text = fs::read(self.path(code, request)).ok()?;
        let rec: CacheRecord = serde_json::from_slice(&text).ok()?;
        if !rec.is_valid_for(code, request) {
            return None;
        }
        rec.to_solution(code).ok()
    }

    /// Stores a converged solution by writing a temporary file and renaming
    /// it into place.
    pub fn store(&self, code: &OctalCode, request: &str, sol: &QuotientSolution) -> Result<(), CacheError> {
        if !sol.converged {
            return Ok(());
        }
        fs::create_dir_all(&self.dir)?;
        let rec = CacheRecord::from_solution(code, request, sol);
        let target = self.path(code, request);
        let tmp = target.with_extension(format!("tmp{}", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(&serde_json::to_vec(&rec)?)?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &target)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::parse_octal_code;
    use crate::heaps::{solve_octal, OctalLimits};
    use crate::solver::SolverConfig;

    #[test]
    fn round_trip_and_invalidation() {
        let dir = std::env::temp_dir().join(format!("misere-cache-test-{}", std::process::id()));
        let cache = QuotientCache::new(&dir);
        let code = parse_octal_code("0.75").unwrap();
        let sol = solve_octal(&code, OctalLimits::heaps(13), &SolverConfig::default());
        assert!(cache.load(&code, "heaps=13").is_none());
        cache.store(&code, "heaps=13", &sol).unwrap();
        let back = cache.load(&code, "heaps=13").unwrap();
        assert_eq!(back.candidate, sol.candidate);
        assert_eq!(back.orders, sol.orders);
        assert_eq!(back.period, sol.period);
        assert!(cache.load(&code, "heaps=12").is_none());

        let path = cache.path(&code, "heaps=13");
        let text = fs::read_to_string(&path).unwrap().replacen("\"order\":8", "\"order\":9", 1);
        fs::write(&path, text).unwrap();
        assert!(cache.load(&code, "heaps=13").is_none());
        fs::remove_dir_all(&dir).unwrap();
    }
}

//! Registry persistence. A cache directory holds one JSON snapshot per
//! algebra, named by the SHA-256 of its canonical text and the seed, so a
//! repeated run starts with every module class already decomposed.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use findim_core::decomp::{IsoRegistry, RegistrySnapshot};
use findim_core::homology::{Caps, Session};
use sha2::{Digest, Sha256};

use crate::spec::Loaded;

pub struct Cache {
    dir: PathBuf,
}

/// Content hash of the algebra part of a spec together with the seed.
pub fn key(loaded: &Loaded, seed: u64) -> String {
    let mut h = Sha256::new();
    h.update(loaded.spec.canonical().as_bytes());
    h.update(format!("seed {seed}\n").as_bytes());
    hex::encode(h.finalize())
}

impl Cache {
    pub fn new(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).with_context(|| format!("creating cache directory {}", dir.display()))?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    pub fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A session seeded from the cached registry when one exists. A file
    /// that fails to parse or validate is ignored (with a warning) and
    /// overwritten later.
    pub fn session(&self, loaded: &Loaded, seed: u64, caps: Caps) -> Session {
        let path = self.path(&key(loaded, seed));
        if let Ok(text) = fs::read_to_string(&path) {
            let restored = serde_json::from_str::<RegistrySnapshot>(&text)
                .map_err(anyhow::Error::from)
                .and_then(|snap| Ok(IsoRegistry::restore(&loaded.algebra, seed, snap)?));
            match restored {
                Ok(reg) => return Session::with_registry(reg, caps),
                Err(e) => eprintln!("warning: ignoring cache file {}: {e:#}", path.display()),
            }
        }
        Session::new(&loaded.algebra, seed, caps)
    }

    /// Writes the registry through a temporary file so readers never see a
    /// partial snapshot.
    pub fn store(&self, loaded: &Loaded, seed: u64, session: &Session) -> Result<()> {
        let path = self.path(&key(loaded, seed));
        let tmp = path.with_extension("json.tmp");
        let text = serde_json::to_string(&session.registry.snapshot())?;
        fs::write(&tmp, text).with_context(|| format!("writing {}", tmp.display()))?;
        fs::rename(&tmp, &path).with_context(|| format!("writing {}", path.display()))?;
        Ok(())
    }
}

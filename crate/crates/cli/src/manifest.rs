//! Run manifests: the resolved configuration plus a SHA-256 per output file.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::run::{produce, Artifact, RunConfig};

pub const MANIFEST: &str = "manifest.json";
const MANIFEST_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
pub struct OutputRecord {
    pub file: String,
    pub sha256: String,
    pub bytes: u64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Manifest {
    pub schema_version: u32,
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
    pub outputs: Vec<OutputRecord>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn manifest_for(cfg: &RunConfig, arts: &[Artifact]) -> Manifest {
    Manifest {
        schema_version: MANIFEST_VERSION,
        tool: "zerodist".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        config: cfg.clone(),
        outputs: arts
            .iter()
            .map(|a| OutputRecord { file: a.name.into(), sha256: sha256_hex(&a.bytes), bytes: a.bytes.len() as u64 })
            .collect(),
    }
}

/// Writes every artifact and then the manifest into `out`.
pub fn write_run(out: &Path, cfg: &RunConfig, arts: &[Artifact]) -> Result<(), CliError> {
    std::fs::create_dir_all(out).map_err(|e| CliError::io(out, e))?;
    for a in arts {
        let p = out.join(a.name);
        std::fs::write(&p, &a.bytes).map_err(|e| CliError::io(&p, e))?;
    }
    let mut m = serde_json::to_vec_pretty(&manifest_for(cfg, arts)).expect("manifest serializes");
    m.push(b'\n');
    let p = out.join(MANIFEST);
    std::fs::write(&p, m).map_err(|e| CliError::io(&p, e))
}

/// Re-runs the recorded configuration and compares both the files on disk
/// and the regenerated bytes against the recorded hashes.
pub fn verify(dir: &Path) -> Result<(), CliError> {
    let path = dir.join(MANIFEST);
    let raw = std::fs::read(&path).map_err(|e| CliError::input(&path, e))?;
    let manifest: Manifest =
        serde_json::from_slice(&raw).map_err(|e| CliError::input(&path, format!("malformed manifest: {e}")))?;
    let (arts, _) = produce(&manifest.config)?;

    let mut bad = 0;
    for rec in &manifest.outputs {
        let on_disk = std::fs::read(dir.join(&rec.file)).map(|b| sha256_hex(&b));
        let fresh = arts.iter().find(|a| a.name == rec.file).map(|a| sha256_hex(&a.bytes));
        let status = match (&on_disk, &fresh) {
            (Err(e), _) => format!("unreadable on disk ({e})"),
            (_, None) => "no longer produced".into(),
            (Ok(d), _) if *d != rec.sha256 => "file on disk differs from manifest".into(),
            (_, Some(h)) if *h != rec.sha256 => "re-run output differs from manifest".into(),
            _ => String::new(),
        };
        if status.is_empty() {
            println!("ok        {}", rec.file);
        } else {
            bad += 1;
            println!("MISMATCH  {}: {status}", rec.file);
        }
    }
    for a in arts.iter().filter(|a| !manifest.outputs.iter().any(|r| r.file == a.name)) {
        bad += 1;
        println!("MISMATCH  {}: produced but not recorded", a.name);
    }
    if bad > 0 {
        return Err(CliError::Mismatch(bad));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sha256_of_known_strings() {
        assert_eq!(sha256_hex(b""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
        assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}

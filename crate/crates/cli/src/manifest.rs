//! Run provenance attached to every JSON report.

use std::path::Path;

use chrono::{SecondsFormat, Utc};
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Everything needed to reproduce a run. Two manifests that agree outside
/// `started_at` / `finished_at` produce identical numeric output.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub args: serde_json::Value,
    pub seed: u64,
    /// Named sub-seeds, each `derive_seed(seed, stream)`.
    pub derived_seeds: Vec<(String, u64)>,
    pub threads: usize,
    pub version: String,
    pub started_at: String,
    pub finished_at: String,
    pub inputs: Vec<InputDigest>,
}

fn now() -> String {
    Utc::now().to_rfc3339_opts(SecondsFormat::Millis, true)
}

impl RunManifest {
    pub fn start(command: &str, args: &impl Serialize, seed: u64, threads: usize) -> anyhow::Result<Self> {
        Ok(RunManifest {
            command: command.to_owned(),
            args: serde_json::to_value(args)?,
            seed,
            derived_seeds: Vec::new(),
            threads,
            version: env!("CARGO_PKG_VERSION").to_owned(),
            started_at: now(),
            finished_at: String::new(),
            inputs: Vec::new(),
        })
    }

    pub fn record_input(&mut self, path: &Path, bytes: &[u8]) {
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
        });
    }

    pub fn record_seed(&mut self, name: &str, value: u64) {
        self.derived_seeds.push((name.to_owned(), value));
    }

    pub fn finish(&mut self) {
        self.finished_at = now();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_sha256_hex() {
        let mut m = RunManifest::start("count", &serde_json::json!({}), 7, 1).unwrap();
        m.record_input(Path::new("g.g6"), b"abc");
        assert_eq!(m.inputs[0].sha256, "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}

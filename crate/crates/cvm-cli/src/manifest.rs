//! Every artifact directory carries a manifest sufficient to reproduce the
//! run: tool version, subcommand, seed, thread count, the canonical resolved
//! configuration, and its hash.

use anyhow::{Context, Result};
use sha2::{Digest, Sha256};
use std::path::Path;

pub struct Manifest {
    subcommand: String,
    seed: Option<u64>,
    threads: usize,
    config_text: String,
    artifacts: Vec<String>,
}

impl Manifest {
    pub fn new(subcommand: &str, config_text: String, seed: Option<u64>) -> Manifest {
        Manifest {
            subcommand: subcommand.to_string(),
            seed,
            threads: rayon::current_num_threads(),
            config_text,
            artifacts: Vec::new(),
        }
    }

    pub fn add_artifact(&mut self, name: &str) {
        self.artifacts.push(name.to_string());
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        let mut hasher = Sha256::new();
        hasher.update(self.config_text.as_bytes());
        let digest = hasher.finalize();
        let mut text = String::new();
        text.push_str(&format!(
            "tool = cvm {}\nsubcommand = {}\n",
            env!("CARGO_PKG_VERSION"),
            self.subcommand
        ));
        if let Some(seed) = self.seed {
            text.push_str(&format!("seed = {seed}\n"));
        }
        text.push_str(&format!("threads = {}\n", self.threads));
        text.push_str(&format!("config-sha256 = {digest:x}\n"));
        for a in &self.artifacts {
            text.push_str(&format!("artifact = {a}\n"));
        }
        text.push_str("config-begin\n");
        text.push_str(&self.config_text);
        text.push_str("config-end\n");
        let path = dir.join("manifest.txt");
        std::fs::write(&path, text)
            .with_context(|| format!("cannot write {}", path.display()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_contains_recipe() {
        let dir = tempfile::tempdir().unwrap();
        let mut m = Manifest::new("consensus", "model.f = 3\n".into(), Some(42));
        m.add_artifact("consensus.csv");
        m.write(dir.path()).unwrap();
        let text = std::fs::read_to_string(dir.path().join("manifest.txt")).unwrap();
        assert!(text.contains("subcommand = consensus"));
        assert!(text.contains("seed = 42"));
        assert!(text.contains("artifact = consensus.csv"));
        assert!(text.contains("config-sha256 = "));
        assert!(text.contains("model.f = 3"));
    }
}

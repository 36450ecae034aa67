//! Run manifests: enough to reproduce a run byte for byte.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Arguments after the program name, with defaults that affect the
    /// output made explicit.
    pub args: Vec<String>,
    /// Parsed configuration, for reading rather than replay.
    pub config: serde_json::Value,
    pub outputs: Vec<PathBuf>,
}

impl Manifest {
    pub fn write(&self, path: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        fs::write(path, text).with_context(|| format!("writing manifest {}", path.display()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading manifest {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing manifest {}", path.display()))
    }
}

/// `path` with `suffix` appended to its file name.
pub fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

/// Drops every occurrence of `--flag VALUE` and `--flag=VALUE`.
pub fn strip_flag(args: &[String], flag: &str) -> Vec<String> {
    let prefix = format!("{flag}=");
    let mut out = Vec::with_capacity(args.len());
    let mut iter = args.iter();
    while let Some(a) = iter.next() {
        if a == flag {
            iter.next();
        } else if !a.starts_with(&prefix) {
            out.push(a.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strips_both_spellings() {
        let args: Vec<String> = ["construct", "--out", "a", "-m", "4", "--out=b"].map(String::from).to_vec();
        assert_eq!(strip_flag(&args, "--out"), vec!["construct", "-m", "4"]);
    }

    #[test]
    fn sidecar_appends() {
        assert_eq!(sidecar(Path::new("x/code.txt"), ".trace"), PathBuf::from("x/code.txt.trace"));
    }
}

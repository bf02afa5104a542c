use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::args::Command;
use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: PathBuf,
    pub sha256: String,
}

impl FileDigest {
    pub fn of(path: &Path) -> CliResult<Self> {
        let bytes =
            fs::read(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
        let digest = Sha256::digest(&bytes);
        Ok(FileDigest {
            path: path.to_path_buf(),
            sha256: digest.iter().map(|b| format!("{b:02x}")).collect(),
        })
    }
}

/// Everything needed to re-run a command and check that it reproduces.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    /// Arguments after the program name, as typed.
    pub argv: Vec<String>,
    /// Relative paths in `argv` resolve against this directory.
    pub working_dir: PathBuf,
    pub resolved: Command,
    pub seeds: BTreeMap<String, u64>,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
}

impl RunManifest {
    pub fn write(&self, path: &Path) -> CliResult<()> {
        let text = serde_json::to_string_pretty(self).expect("manifest serializes");
        fs::write(path, text + "\n").map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
        parse_manifest(&text)
    }
}

pub fn parse_manifest(text: &str) -> CliResult<RunManifest> {
    serde_json::from_str(text).map_err(|e| CliError::Data(format!("bad manifest: {e}")))
}

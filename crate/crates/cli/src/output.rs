use std::io::Write;
use std::path::Path;

use tempfile::NamedTempFile;

use crate::error::CliError;

pub struct Artifact {
    pub name: &'static str,
    pub bytes: Vec<u8>,
}

impl Artifact {
    pub fn new(name: &'static str, bytes: impl Into<Vec<u8>>) -> Self {
        Self {
            name,
            bytes: bytes.into(),
        }
    }
}

/// Writes each artifact to a temp file in `dir` and renames it into place, so readers
/// never observe a half-written file.
pub fn write_atomically(dir: &Path, artifacts: &[Artifact]) -> Result<(), CliError> {
    let io_err = |path: &Path| {
        let path = path.to_path_buf();
        move |source| CliError::Io { path, source }
    };
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    for artifact in artifacts {
        let target = dir.join(artifact.name);
        let mut tmp = NamedTempFile::new_in(dir).map_err(io_err(dir))?;
        tmp.write_all(&artifact.bytes).map_err(io_err(&target))?;
        tmp.as_file().sync_all().map_err(io_err(&target))?;
        tmp.persist(&target).map_err(|e| CliError::Io {
            path: target.clone(),
            source: e.error,
        })?;
    }
    Ok(())
}

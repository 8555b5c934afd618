use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::Context;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::{Cli, Failure};

/// Provenance written beside every `--out` file. The data file itself never
/// contains the timestamp, so identical configuration and input give
/// identical data bytes.
#[derive(Debug, Serialize)]
pub struct RunManifest<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: &'a Cli,
    pub input_sha256: Option<String>,
    pub timestamp_unix: u64,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn sidecar_path(out: &Path, suffix: &str) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(Failure::Data)
}

/// Sends `data` to `--out` (plus manifest) or stdout.
pub fn emit(cli: &Cli, data: &[u8], input_sha256: Option<String>) -> Result<(), Failure> {
    match &cli.global.out {
        Some(path) => {
            write_file(path, data)?;
            write_manifest(cli, path, input_sha256)
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(data)
                .and_then(|_| stdout.flush())
                .context("writing stdout")
                .map_err(Failure::Data)
        }
    }
}

pub fn write_manifest(cli: &Cli, out: &Path, input_sha256: Option<String>) -> Result<(), Failure> {
    let manifest = RunManifest {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        config: cli,
        input_sha256,
        timestamp_unix: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
    };
    let mut json = serde_json::to_vec_pretty(&manifest).map_err(|e| Failure::Data(e.into()))?;
    json.push(b'\n');
    write_file(&sidecar_path(out, ".manifest.json"), &json)
}

pub fn json_line<T: Serialize>(value: &T) -> Result<Vec<u8>, Failure> {
    let mut v = serde_json::to_vec(value).map_err(|e| Failure::Data(e.into()))?;
    v.push(b'\n');
    Ok(v)
}

use std::path::{Path, PathBuf};

use log::info;
use sha2::{Digest, Sha256};

use crate::data::parse_dataset;
use crate::error::{Error, Result};

pub const DATA_URL: &str =
    "https://archive.ics.uci.edu/ml/machine-learning-databases/dermatology/dermatology.data";
pub const DATA_FILE: &str = "dermatology.data";

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Downloads the dermatology data into `dir`, checks that it parses, and
/// checksums it. If `dir` already holds `dermatology.data.sha256` the
/// download must match it; otherwise the digest is written there.
pub fn fetch_data(dir: &Path) -> Result<PathBuf> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    info!("downloading {DATA_URL}");
    let response = reqwest::blocking::get(DATA_URL)
        .and_then(|r| r.error_for_status())
        .map_err(|e| Error::Fetch(e.to_string()))?;
    let bytes = response.bytes().map_err(|e| Error::Fetch(e.to_string()))?;
    let text = std::str::from_utf8(&bytes).map_err(|e| Error::Fetch(e.to_string()))?;
    let dataset = parse_dataset(text, DATA_URL)?;
    let digest = sha256_hex(&bytes);

    let sum_path = dir.join(format!("{DATA_FILE}.sha256"));
    if sum_path.exists() {
        let expected = std::fs::read_to_string(&sum_path).map_err(|e| Error::io(&sum_path, e))?;
        let expected = expected.split_whitespace().next().unwrap_or("");
        if !expected.eq_ignore_ascii_case(&digest) {
            return Err(Error::Fetch(format!(
                "checksum mismatch: expected {expected}, got {digest}"
            )));
        }
    } else {
        std::fs::write(&sum_path, format!("{digest}  {DATA_FILE}\n"))
            .map_err(|e| Error::io(&sum_path, e))?;
    }
    let path = dir.join(DATA_FILE);
    std::fs::write(&path, &bytes).map_err(|e| Error::io(&path, e))?;
    info!("{} instances, sha256 {digest}", dataset.len());
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_digest() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}

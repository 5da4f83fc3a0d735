//! On-disk coefficient caches: CSV tables next to a SHA-256 sidecar.
//! Caches are built on demand; a checksum mismatch is a hard error, never
//! a silent rebuild.

use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::modform::{qexp_newform, HeckeEigenform};

/// Cache directory: `$SYMUNIV_CACHE`, or `./symuniv-cache`.
pub fn default_cache_dir() -> PathBuf {
    std::env::var_os("SYMUNIV_CACHE")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("symuniv-cache"))
}

pub fn coeff_file_name(weight: u32, n: usize) -> String {
    format!("coeffs_k{weight}_n{n}.csv")
}

fn sha_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

fn checksum_path(path: &Path) -> PathBuf {
    let mut os = path.as_os_str().to_owned();
    os.push(".sha256");
    PathBuf::from(os)
}

/// Write the coefficient table and its checksum sidecar.
pub fn write_form(dir: &Path, form: &HeckeEigenform) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(coeff_file_name(form.weight(), form.truncation()));
    let mut buf = Vec::new();
    form.write_csv(&mut buf)?;
    fs::write(&path, &buf)?;
    fs::write(checksum_path(&path), sha_hex(&buf))?;
    Ok(path)
}

/// Load a cached table, validating the checksum sidecar first.
pub fn load_form(path: &Path, weight: u32) -> Result<HeckeEigenform> {
    let bytes = fs::read(path)?;
    let sidecar = checksum_path(path);
    let expected = fs::read_to_string(&sidecar).map_err(|_| Error::CacheCorrupt {
        path: path.to_path_buf(),
        reason: "missing checksum sidecar".into(),
    })?;
    let actual = sha_hex(&bytes);
    if expected.trim() != actual {
        return Err(Error::CacheCorrupt {
            path: path.to_path_buf(),
            reason: format!("checksum mismatch: stored {}, actual {actual}", expected.trim()),
        });
    }
    HeckeEigenform::read_csv(weight, BufReader::new(&bytes[..]))
}

/// Load the table for `(weight, n)` from the cache, or build and store it.
pub fn load_or_build(dir: &Path, weight: u32, n: usize) -> Result<HeckeEigenform> {
    let path = dir.join(coeff_file_name(weight, n));
    if path.exists() {
        let form = load_form(&path, weight)?;
        if form.truncation() != n {
            return Err(Error::CacheCorrupt {
                path,
                reason: format!("expected {n} rows, found {}", form.truncation()),
            });
        }
        return Ok(form);
    }
    let form = qexp_newform(weight, n)?;
    write_form(dir, &form)?;
    Ok(form)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_checksum() {
        let dir = tempfile::tempdir().unwrap();
        let form = load_or_build(dir.path(), 12, 64).unwrap();
        assert_eq!(form.truncation(), 64);
        // second load hits the cache
        let again = load_or_build(dir.path(), 12, 64).unwrap();
        assert_eq!(form.exact_coeff(64), again.exact_coeff(64));
        // flip a byte: checksum must catch it
        let path = dir.path().join(coeff_file_name(12, 64));
        let mut bytes = fs::read(&path).unwrap();
        let pos = bytes.len() / 2;
        bytes[pos] = if bytes[pos] == b'3' { b'4' } else { b'3' };
        fs::write(&path, &bytes).unwrap();
        assert!(matches!(
            load_form(&path, 12),
            Err(Error::CacheCorrupt { .. })
        ));
    }
}

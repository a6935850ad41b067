use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex64;
use serde::de::DeserializeOwned;

use crate::error::CliError;

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, &e))
}

/// Parse a JSON file, reporting syntax and schema errors with their location.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::parse(path, &e))
}

/// Write through a sibling temporary file and rename it into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let mut tmp = PathBuf::from(path);
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".into());
    tmp.set_file_name(format!(".{name}.tmp{}", std::process::id()));
    let result = fs::File::create(&tmp)
        .and_then(|mut f| {
            f.write_all(contents.as_bytes())?;
            f.sync_all()
        })
        .and_then(|_| fs::rename(&tmp, path));
    if let Err(e) = result {
        let _ = fs::remove_file(&tmp);
        return Err(CliError::io(path, &e));
    }
    Ok(())
}

/// `2`, `-0.5i`, `3+1i`, `1.5-2i`.
pub fn parse_complex(text: &str) -> Result<Complex64, CliError> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let z = Complex64::from_str(&t).map_err(|_| CliError::input(format!("cannot parse complex number {text:?}")))?;
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(CliError::input(format!("complex number {text:?} is not finite")));
    }
    Ok(z)
}

/// Comma-separated list; repeated flags are concatenated.
pub fn parse_complex_list(items: &[String]) -> Result<Vec<Complex64>, CliError> {
    items
        .iter()
        .flat_map(|s| s.split(','))
        .filter(|s| !s.trim().is_empty())
        .map(parse_complex)
        .collect()
}

/// `3`, `1..5` (inclusive) or `1,2,4`.
pub fn parse_powers(text: &str) -> Result<Vec<u32>, CliError> {
    let bad = || CliError::input(format!("cannot parse power list {text:?}; expected e.g. 3, 1..5 or 1,2,4"));
    let t = text.trim();
    if let Some((a, b)) = t.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let lo: u32 = a.trim().parse().map_err(|_| bad())?;
        let hi: u32 = b.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    t.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect()
}

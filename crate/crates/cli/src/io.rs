//! Vector files: plain text (one value per line, `#` comments) or binary
//! (`FHK1`, little-endian `u64` count, then the `f64` values).

use std::fs;
use std::path::Path;

use thiserror::Error;

pub const MAGIC: &[u8; 4] = b"FHK1";
const HEADER_LEN: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Binary,
}

#[derive(Debug, Error)]
pub enum ReadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: cannot parse {text:?} as a number")]
    BadNumber { line: usize, text: String },
    #[error("missing FHK1 header")]
    BadMagic,
    #[error("header announces {expected} values but the payload holds {got} bytes")]
    BadLength { expected: u64, got: usize },
}

/// Parses the text format. Blank lines are skipped and everything after a
/// `#` is ignored.
pub fn parse_text(text: &str) -> Result<Vec<f64>, ReadError> {
    let mut values = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let value = body.parse::<f64>().map_err(|_| ReadError::BadNumber {
            line: i + 1,
            text: body.to_string(),
        })?;
        values.push(value);
    }
    Ok(values)
}

pub fn parse_binary(bytes: &[u8]) -> Result<Vec<f64>, ReadError> {
    if bytes.len() < HEADER_LEN || &bytes[..4] != MAGIC {
        return Err(ReadError::BadMagic);
    }
    let count = u64::from_le_bytes(bytes[4..HEADER_LEN].try_into().expect("8-byte slice"));
    let payload = &bytes[HEADER_LEN..];
    if count.checked_mul(8) != Some(payload.len() as u64) {
        return Err(ReadError::BadLength {
            expected: count,
            got: payload.len(),
        });
    }
    Ok(payload
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("8-byte chunk")))
        .collect())
}

/// One value per line in shortest round-trip form.
pub fn encode_text(values: &[f64]) -> String {
    let mut out = String::with_capacity(values.len() * 24);
    for v in values {
        out.push_str(&format!("{v:?}\n"));
    }
    out
}

pub fn encode_binary(values: &[f64]) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + 8 * values.len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&(values.len() as u64).to_le_bytes());
    for v in values {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

pub fn decode(bytes: &[u8], format: Format) -> Result<Vec<f64>, ReadError> {
    match format {
        Format::Binary => parse_binary(bytes),
        Format::Text => {
            let text = std::str::from_utf8(bytes).map_err(|_| ReadError::BadNumber {
                line: 0,
                text: "<not UTF-8>".to_string(),
            })?;
            parse_text(text)
        }
    }
}

pub fn encode(values: &[f64], format: Format) -> Vec<u8> {
    match format {
        Format::Text => encode_text(values).into_bytes(),
        Format::Binary => encode_binary(values),
    }
}

pub fn read_vector(path: &Path, format: Format) -> Result<Vec<f64>, ReadError> {
    let bytes = fs::read(path).map_err(|source| ReadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    decode(&bytes, format)
}

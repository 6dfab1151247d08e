use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Metadata, SerialError};
use crate::image::ComplexField;

/// Leading bytes of every field file.
pub const HGI_MAGIC: &[u8; 4] = b"HGI1";

#[derive(Serialize, Deserialize)]
struct Header {
    width: usize,
    height: usize,
    checksum: u32,
    metadata: Metadata,
}

/// Header contents of a field file plus the outcome of the checksum test.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldInfo {
    pub width: usize,
    pub height: usize,
    pub checksum: u32,
    pub checksum_ok: bool,
    pub metadata: Metadata,
}

fn encode_payload(field: &ComplexField) -> Vec<u8> {
    let mut out = Vec::with_capacity(field.data().len() * 16);
    for z in field.data() {
        out.extend_from_slice(&z.re.to_le_bytes());
        out.extend_from_slice(&z.im.to_le_bytes());
    }
    out
}

/// Writes `field` and `meta` to `path`: magic, little-endian header length,
/// JSON header, then interleaved little-endian `f64` real/imaginary pairs.
pub fn save_field(path: impl AsRef<Path>, field: &ComplexField, meta: &Metadata) -> Result<(), SerialError> {
    let payload = encode_payload(field);
    let header = Header {
        width: field.width(),
        height: field.height(),
        checksum: crc32fast::hash(&payload),
        metadata: meta.clone(),
    };
    let header = serde_json::to_vec(&header).map_err(|e| SerialError::Malformed(e.to_string()))?;
    let header_len = u32::try_from(header.len()).map_err(|_| SerialError::Malformed("header too large".into()))?;
    let mut bytes = Vec::with_capacity(8 + header.len() + payload.len());
    bytes.extend_from_slice(HGI_MAGIC);
    bytes.extend_from_slice(&header_len.to_le_bytes());
    bytes.extend_from_slice(&header);
    bytes.extend_from_slice(&payload);
    fs::write(path, bytes)?;
    Ok(())
}

fn split(bytes: &[u8]) -> Result<(Header, &[u8]), SerialError> {
    if bytes.len() < 8 || &bytes[..4] != HGI_MAGIC {
        return Err(SerialError::BadMagic);
    }
    let header_len = u32::from_le_bytes(bytes[4..8].try_into().expect("4 bytes")) as usize;
    let body = &bytes[8..];
    if body.len() < header_len {
        return Err(SerialError::Malformed("header extends past end of file".into()));
    }
    let header: Header =
        serde_json::from_slice(&body[..header_len]).map_err(|e| SerialError::Malformed(e.to_string()))?;
    if header.width == 0 || header.height == 0 {
        return Err(SerialError::Malformed("zero dimension".into()));
    }
    let payload = &body[header_len..];
    let expected = header
        .width
        .checked_mul(header.height)
        .and_then(|n| n.checked_mul(16))
        .ok_or_else(|| SerialError::Malformed("dimensions overflow".into()))?;
    if payload.len() < expected {
        return Err(SerialError::TruncatedPayload {
            expected,
            actual: payload.len(),
        });
    }
    if payload.len() > expected {
        return Err(SerialError::Malformed(format!(
            "{} trailing bytes after payload",
            payload.len() - expected
        )));
    }
    Ok((header, payload))
}

/// Reads the header and verifies the checksum without rejecting a mismatch.
pub fn inspect_field(path: impl AsRef<Path>) -> Result<FieldInfo, SerialError> {
    let bytes = fs::read(path)?;
    let (header, payload) = split(&bytes)?;
    Ok(FieldInfo {
        width: header.width,
        height: header.height,
        checksum: header.checksum,
        checksum_ok: crc32fast::hash(payload) == header.checksum,
        metadata: header.metadata,
    })
}

/// Loads a field file; the payload is reproduced bit for bit.
pub fn load_field(path: impl AsRef<Path>) -> Result<(ComplexField, Metadata), SerialError> {
    let bytes = fs::read(path)?;
    let (header, payload) = split(&bytes)?;
    let computed = crc32fast::hash(payload);
    if computed != header.checksum {
        return Err(SerialError::ChecksumMismatch {
            stored: header.checksum,
            computed,
        });
    }
    let f64_at = |i: usize| f64::from_le_bytes(payload[i..i + 8].try_into().expect("8 bytes"));
    let data = (0..header.width * header.height)
        .map(|k| Complex64::new(f64_at(16 * k), f64_at(16 * k + 8)))
        .collect();
    let field = ComplexField::new(header.width, header.height, data)
        .map_err(|e| SerialError::Malformed(e.to_string()))?;
    Ok((field, header.metadata))
}

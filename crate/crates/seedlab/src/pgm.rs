//! Binary portable graymap (P5) encoding of fields and label grids.
//!
//! The format is deliberately primitive: a fixed header and one byte per
//! pixel, so outputs can be compared byte for byte and membership survives a
//! round trip exactly.

use thiserror::Error;

use crate::connectivity::LabelField;
use crate::raster::EscapeField;

/// Gray value of one pixel: members are black (0); escaped pixels carry their
/// iteration count folded into 64..=255 for visual context.
#[inline]
pub fn shade(member: bool, iterations: u32) -> u8 {
    if member {
        0
    } else {
        64 + (iterations % 192) as u8
    }
}

/// Encodes a field as a P5 graymap (maxval 255), row 0 of the file being the
/// top image row. Thresholding the bytes at 0 recovers the membership mask.
pub fn encode_field(field: &EscapeField) -> Vec<u8> {
    let mut out = header(field.cols(), field.rows());
    out.extend(
        field
            .mask()
            .iter()
            .zip(field.iterations())
            .map(|(&member, &iterations)| shade(member, iterations)),
    );
    out
}

/// Encodes a label grid as a P5 graymap: background white, each component in
/// a gray stripe cycling over ids. Mostly useful for eyeballing splits.
pub fn encode_labels(labels: &LabelField) -> Vec<u8> {
    let mut out = header(labels.cols(), labels.rows());
    out.extend(labels.labels().iter().map(|&id| {
        if id == 0 {
            255u8
        } else {
            ((id - 1) % 13 * 16) as u8
        }
    }));
    out
}

fn header(cols: usize, rows: usize) -> Vec<u8> {
    format!("P5\n{cols} {rows}\n255\n").into_bytes()
}

/// A decoded graymap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graymap {
    pub cols: usize,
    pub rows: usize,
    pub pixels: Vec<u8>,
}

impl Graymap {
    /// Membership mask recovered by thresholding at 0.
    pub fn membership_mask(&self) -> Vec<bool> {
        self.pixels.iter().map(|&v| v == 0).collect()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PgmError {
    #[error("not a binary graymap: missing P5 magic")]
    BadMagic,
    #[error("malformed graymap header")]
    BadHeader,
    #[error("graymap maxval {0} out of the supported 1..=255 range")]
    BadMaxval(u64),
    #[error("pixel payload truncated: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
}

/// Decodes a P5 graymap with maxval ≤ 255, tolerating `#` comments in the
/// header as the format allows.
pub fn decode(bytes: &[u8]) -> Result<Graymap, PgmError> {
    if bytes.len() < 2 || &bytes[..2] != b"P5" {
        return Err(PgmError::BadMagic);
    }
    let mut pos = 2;
    let cols = read_header_number(bytes, &mut pos)?;
    let rows = read_header_number(bytes, &mut pos)?;
    let maxval = read_header_number(bytes, &mut pos)?;
    if maxval == 0 || maxval > 255 {
        return Err(PgmError::BadMaxval(maxval));
    }
    // exactly one whitespace byte separates the header from the payload
    if pos >= bytes.len() || !bytes[pos].is_ascii_whitespace() {
        return Err(PgmError::BadHeader);
    }
    pos += 1;
    let expected = (cols as usize)
        .checked_mul(rows as usize)
        .ok_or(PgmError::BadHeader)?;
    let payload = &bytes[pos..];
    if payload.len() < expected {
        return Err(PgmError::Truncated {
            expected,
            found: payload.len(),
        });
    }
    Ok(Graymap {
        cols: cols as usize,
        rows: rows as usize,
        pixels: payload[..expected].to_vec(),
    })
}

fn read_header_number(bytes: &[u8], pos: &mut usize) -> Result<u64, PgmError> {
    // skip whitespace and comments
    loop {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
        if *pos < bytes.len() && bytes[*pos] == b'#' {
            while *pos < bytes.len() && bytes[*pos] != b'\n' {
                *pos += 1;
            }
        } else {
            break;
        }
    }
    let start = *pos;
    while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if *pos == start {
        return Err(PgmError::BadHeader);
    }
    std::str::from_utf8(&bytes[start..*pos])
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or(PgmError::BadHeader)
}

//! Output formats for integral matrices and the ERI list.
//!
//! Matrices are text: a `# <name> <dimension>` header, then `i j value`
//! for the lower triangle (1-based, row by row). ERIs are written either as
//! text, `i j k l value` per line under a `# eri <dimension>` header, or as
//! binary:
//!
//! | bytes | content |
//! |-------|---------|
//! | 4 | magic `GINT` |
//! | 1 | format version (1) |
//! | 8 | record count, u64 little-endian |
//! | 24 per record | `i j k l` as u32 little-endian (1-based), value as f64 little-endian |
//!
//! Records are canonical (`i >= j`, `k >= l`, `(ij) >= (kl)`) and sorted by
//! compound index. Values carry 17 significant digits in text so both
//! formats decode to the same numbers.

use std::fmt::Write as _;

use gaussint_core::eri::EriRecord;
use gaussint_core::one_electron::SymmetricMatrix;

use crate::Error;

pub const BINARY_MAGIC: &[u8; 4] = b"GINT";
pub const BINARY_VERSION: u8 = 1;
const RECORD_BYTES: usize = 24;

/// Text rendering of a symmetric matrix.
pub fn matrix_text(name: &str, m: &SymmetricMatrix) -> String {
    let n = m.dimension();
    let mut out = String::with_capacity(40 * n * (n + 1) / 2 + 32);
    let _ = writeln!(out, "# {name} {n}");
    for i in 0..n {
        for j in 0..=i {
            let _ = writeln!(out, "{} {} {:.16e}", i + 1, j + 1, m.get(i, j));
        }
    }
    out
}

/// Parses [`matrix_text`] output back into a name and matrix.
pub fn parse_matrix_text(text: &str) -> Result<(String, SymmetricMatrix), Error> {
    let err = |line: usize, msg: &str| Error::parse("matrix", line, msg);
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| err(1, "empty file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != "#" {
        return Err(err(1, "expected `# <name> <dimension>`"));
    }
    let n: usize = toks[2].parse().map_err(|_| err(1, "invalid dimension"))?;
    let mut m = SymmetricMatrix::zeros(n);
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(err(ln, "expected `i j value`"));
        }
        let i: usize = toks[0].parse().map_err(|_| err(ln, "invalid index"))?;
        let j: usize = toks[1].parse().map_err(|_| err(ln, "invalid index"))?;
        let v: f64 = toks[2].parse().map_err(|_| err(ln, "invalid value"))?;
        if i == 0 || j == 0 || i > n || j > i {
            return Err(err(ln, "index outside the lower triangle"));
        }
        m.set(i - 1, j - 1, v);
    }
    Ok((toks[1].to_string(), m))
}

/// Text rendering of the ERI list.
pub fn eri_text(dimension: usize, records: &[EriRecord]) -> String {
    let mut out = String::with_capacity(48 * records.len() + 16);
    let _ = writeln!(out, "# eri {dimension}");
    for r in records {
        let [i, j, k, l] = r.indices.map(|x| x + 1);
        let _ = writeln!(out, "{i} {j} {k} {l} {:.16e}", r.value);
    }
    out
}

/// Parses [`eri_text`] output into 0-based records.
pub fn parse_eri_text(text: &str) -> Result<Vec<EriRecord>, Error> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate().map(|(i, l)| (i + 1, l)) {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 5 {
            return Err(Error::parse("eri", ln, "expected `i j k l value`"));
        }
        let mut idx = [0u32; 4];
        for (x, t) in idx.iter_mut().zip(&toks[..4]) {
            *x = t.parse::<u32>().ok().filter(|&v| v > 0).ok_or_else(|| Error::parse("eri", ln, "invalid index"))? - 1;
        }
        let value = toks[4].parse().map_err(|_| Error::parse("eri", ln, "invalid value"))?;
        out.push(EriRecord { indices: idx, value });
    }
    Ok(out)
}

/// Binary encoding of the ERI list.
pub fn eri_binary(records: &[EriRecord]) -> Vec<u8> {
    let mut out = Vec::with_capacity(13 + RECORD_BYTES * records.len());
    out.extend_from_slice(BINARY_MAGIC);
    out.push(BINARY_VERSION);
    out.extend_from_slice(&(records.len() as u64).to_le_bytes());
    for r in records {
        for i in r.indices {
            out.extend_from_slice(&(i + 1).to_le_bytes());
        }
        out.extend_from_slice(&r.value.to_le_bytes());
    }
    out
}

/// Decodes [`eri_binary`] output into 0-based records.
pub fn decode_eri_binary(bytes: &[u8]) -> Result<Vec<EriRecord>, Error> {
    if bytes.len() < 13 || &bytes[..4] != BINARY_MAGIC {
        return Err(Error::Binary("missing GINT header".into()));
    }
    if bytes[4] != BINARY_VERSION {
        return Err(Error::Binary(format!("unsupported version {}", bytes[4])));
    }
    let count = u64::from_le_bytes(bytes[5..13].try_into().expect("8 bytes")) as usize;
    let body = &bytes[13..];
    if count.checked_mul(RECORD_BYTES) != Some(body.len()) {
        return Err(Error::Binary(format!("header declares {count} records but the body has {} bytes", body.len())));
    }
    let mut out = Vec::with_capacity(count);
    for rec in body.chunks_exact(RECORD_BYTES) {
        let mut idx = [0u32; 4];
        for (k, x) in idx.iter_mut().enumerate() {
            let v = u32::from_le_bytes(rec[4 * k..4 * k + 4].try_into().expect("4 bytes"));
            if v == 0 {
                return Err(Error::Binary("index 0 in a 1-based record".into()));
            }
            *x = v - 1;
        }
        let value = f64::from_le_bytes(rec[16..24].try_into().expect("8 bytes"));
        out.push(EriRecord { indices: idx, value });
    }
    Ok(out)
}

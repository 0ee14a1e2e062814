//! Little-endian framing shared by every serializable structure.

use std::io::{Read, Write};

use crate::error::{Error, Result};

pub(crate) fn put_u64(w: &mut impl Write, v: u64) -> Result<()> {
    w.write_all(&v.to_le_bytes())?;
    Ok(())
}

pub(crate) fn put_usize(w: &mut impl Write, v: usize) -> Result<()> {
    put_u64(w, v as u64)
}

pub(crate) fn get_u64(r: &mut impl Read) -> Result<u64> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(u64::from_le_bytes(buf))
}

pub(crate) fn get_usize(r: &mut impl Read) -> Result<usize> {
    let v = get_u64(r)?;
    usize::try_from(v).map_err(|_| Error::Format(format!("value {v} does not fit in usize")))
}

pub(crate) fn put_words(w: &mut impl Write, words: &[u64]) -> Result<()> {
    put_usize(w, words.len())?;
    for &x in words {
        put_u64(w, x)?;
    }
    Ok(())
}

/// Reads a length-prefixed word array, refusing lengths above `max`.
pub(crate) fn get_words(r: &mut impl Read, max: usize) -> Result<Vec<u64>> {
    let len = get_usize(r)?;
    if len > max {
        return Err(Error::Format(format!("array length {len} exceeds limit {max}")));
    }
    (0..len).map(|_| get_u64(r)).collect()
}

pub(crate) fn put_bytes(w: &mut impl Write, bytes: &[u8]) -> Result<()> {
    put_usize(w, bytes.len())?;
    w.write_all(bytes)?;
    Ok(())
}

pub(crate) fn get_bytes(r: &mut impl Read, max: usize) -> Result<Vec<u8>> {
    let len = get_usize(r)?;
    if len > max {
        return Err(Error::Format(format!("byte string length {len} exceeds limit {max}")));
    }
    let mut buf = Vec::new();
    r.take(len as u64).read_to_end(&mut buf)?;
    if buf.len() != len {
        return Err(Error::Format("truncated byte string".into()));
    }
    Ok(buf)
}

pub(crate) fn expect_magic(r: &mut impl Read, magic: &[u8; 4]) -> Result<()> {
    let mut buf = [0u8; 4];
    r.read_exact(&mut buf)?;
    if &buf != magic {
        return Err(Error::Format(format!(
            "bad magic {:?}, expected {:?}",
            String::from_utf8_lossy(&buf),
            String::from_utf8_lossy(magic)
        )));
    }
    Ok(())
}

/// Upper bound on any serialized array we are willing to allocate.
pub(crate) const MAX_LEN: usize = 1 << 40;

//! On-disk cache of the per-degree reduced relation rows (pivot rows).
//!
//! One JSON file per `(k, n, d)`: a header plus base64-encoded bitpacked
//! rows (little-endian `u64` words). Anything unexpected is treated as a miss.

use std::fs;
use std::path::{Path, PathBuf};

use base64::engine::general_purpose::STANDARD;
use base64::Engine;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2_algebra::BitVec;

pub const FORMAT_VERSION: u32 = 1;
pub const MONOMIAL_ORDER: &str = "lex-v1";

#[derive(Serialize, Deserialize)]
struct Entry {
    k: usize,
    n: usize,
    d: u32,
    monomial_order: String,
    format_version: u32,
    /// Number of pivot rows.
    rank: usize,
    /// Row width: the number of candidate monomials in this degree.
    width: usize,
    rows: Vec<String>,
}

pub fn path_for(dir: &Path, k: usize, n: usize, d: u32) -> PathBuf {
    dir.join(format!("gr_k{k}_n{n}_d{d}.json"))
}

pub fn load(dir: &Path, k: usize, n: usize, d: u32) -> Result<Option<Vec<BitVec>>> {
    let path = path_for(dir, k, n, d);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(Error::Cache(format!("{}: {e}", path.display()))),
    };
    let entry: Entry =
        serde_json::from_str(&text).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
    if (entry.k, entry.n, entry.d) != (k, n, d)
        || entry.monomial_order != MONOMIAL_ORDER
        || entry.format_version != FORMAT_VERSION
        || entry.rows.len() != entry.rank
    {
        return Ok(None);
    }
    let words_per_row = entry.width.div_ceil(64);
    entry
        .rows
        .iter()
        .map(|r| {
            let bytes = STANDARD
                .decode(r)
                .map_err(|e| Error::Cache(format!("bad base64: {e}")))?;
            if bytes.len() != words_per_row * 8 {
                return Err(Error::Cache("row length mismatch".into()));
            }
            let words = bytes
                .chunks_exact(8)
                .map(|c| u64::from_le_bytes(c.try_into().expect("8 bytes")))
                .collect();
            Ok(BitVec::from_words(entry.width, words))
        })
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

pub fn store(dir: &Path, k: usize, n: usize, d: u32, rows: &[BitVec], width: usize) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::Cache(e.to_string()))?;
    let entry = Entry {
        k,
        n,
        d,
        monomial_order: MONOMIAL_ORDER.into(),
        format_version: FORMAT_VERSION,
        rank: rows.len(),
        width,
        rows: rows
            .iter()
            .map(|r| {
                let bytes: Vec<u8> = r.words().iter().flat_map(|w| w.to_le_bytes()).collect();
                STANDARD.encode(bytes)
            })
            .collect(),
    };
    let text = serde_json::to_string(&entry).map_err(|e| Error::Cache(e.to_string()))?;
    // write-then-rename so concurrent readers never see a partial file
    let path = path_for(dir, k, n, d);
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, text).map_err(|e| Error::Cache(e.to_string()))?;
    fs::rename(&tmp, &path).map_err(|e| Error::Cache(e.to_string()))
}

//! On-disk cache of sigma matrices, keyed by case and tool version.
//!
//! Entries are sparse `(row, col, value)` triples with values stored as
//! canonical strings. A stale or unreadable entry is ignored and rewritten.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use qsigma_core::linalg::QqMatrix;
use qsigma_core::scalar::LaurentFraction;
use qsigma_core::sigma::{sigma_matrix, SigmaMatrix};
use qsigma_core::tangent::TangentSpace;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::report::TOOL_VERSION;

#[derive(Debug, Serialize, Deserialize)]
struct CacheEntry {
    tool_version: String,
    case: String,
    node: usize,
    basis: Vec<String>,
    entries: Vec<(usize, usize, LaurentFraction)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    Disabled,
    Hit,
    Miss,
}

fn entry_path(dir: &Path, t: &TangentSpace) -> PathBuf {
    dir.join(format!("sigma-{}-x{}-v{}.json", t.cartan().label(), t.node() + 1, TOOL_VERSION))
}

fn basis_labels(t: &TangentSpace) -> Vec<String> {
    t.basis().iter().map(|b| b.label()).collect()
}

fn load(path: &Path, t: &Arc<TangentSpace>) -> Option<SigmaMatrix> {
    let text = fs::read_to_string(path).ok()?;
    let entry: CacheEntry = serde_json::from_str(&text).ok()?;
    if entry.tool_version != TOOL_VERSION
        || entry.case != t.cartan().label()
        || entry.node != t.node() + 1
        || entry.basis != basis_labels(t)
    {
        return None;
    }
    let n = t.dim() * t.dim();
    let mut m = QqMatrix::zeros(n, n);
    for (r, c, v) in entry.entries {
        if r >= n || c >= n {
            return None;
        }
        m.set(r, c, v);
    }
    SigmaMatrix::new(t.clone(), m).ok()
}

fn store(path: &Path, t: &TangentSpace, sigma: &SigmaMatrix) -> std::io::Result<()> {
    let m = sigma.matrix();
    let mut entries = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if !m.get(r, c).is_zero() {
                entries.push((r, c, m.get(r, c).clone()));
            }
        }
    }
    let entry = CacheEntry {
        tool_version: TOOL_VERSION.to_string(),
        case: t.cartan().label(),
        node: t.node() + 1,
        basis: basis_labels(t),
        entries,
    };
    let json = serde_json::to_string(&entry).map_err(std::io::Error::other)?;
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    let mut f = fs::File::create(&tmp)?;
    f.write_all(json.as_bytes())?;
    f.sync_all()?;
    fs::rename(&tmp, path)
}

/// Returns the sigma matrix for `t`, reading and populating the cache when
/// a directory is given.
pub fn sigma_cached(t: Arc<TangentSpace>, dir: Option<&Path>) -> Result<(SigmaMatrix, CacheStatus), CliError> {
    let Some(dir) = dir else {
        return Ok((sigma_matrix(t)?, CacheStatus::Disabled));
    };
    let path = entry_path(dir, &t);
    if let Some(s) = load(&path, &t) {
        return Ok((s, CacheStatus::Hit));
    }
    let sigma = sigma_matrix(t.clone())?;
    fs::create_dir_all(dir)
        .and_then(|_| store(&path, &t, &sigma))
        .map_err(|e| CliError::Internal(format!("cannot write cache entry {}: {e}", path.display())))?;
    Ok((sigma, CacheStatus::Miss))
}

//! Global dimension bounds.
//!
//! `PARASTAT_MAX_DIM` caps dense matrices (default 4096). Sparse tensor-product
//! spaces used by the Green ansatz are capped separately by
//! `PARASTAT_MAX_SPARSE_DIM` (default 2^21).

use std::sync::OnceLock;

use crate::{Error, Result};

pub const DEFAULT_MAX_DIM: usize = 4096;
pub const DEFAULT_MAX_SPARSE_DIM: usize = 1 << 21;
pub const DEFAULT_MAX_GROUP_ORDER: usize = 64;
pub const DEFAULT_MAX_BICHARACTERS: usize = 1 << 16;

fn env_usize(key: &str, default: usize) -> usize {
    std::env::var(key)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&v: &usize| v > 0)
        .unwrap_or(default)
}

pub fn max_dense_dim() -> usize {
    static CELL: OnceLock<usize> = OnceLock::new();
    *CELL.get_or_init(|| env_usize("PARASTAT_MAX_DIM", DEFAULT_MAX_DIM))
}

pub fn max_sparse_dim() -> usize {
    static CELL: OnceLock<usize> = OnceLock::new();
    *CELL.get_or_init(|| env_usize("PARASTAT_MAX_SPARSE_DIM", DEFAULT_MAX_SPARSE_DIM))
}

pub fn check(what: &str, requested: usize, max: usize) -> Result<()> {
    if requested > max {
        return Err(Error::Sizing {
            what: what.to_string(),
            requested,
            max,
        });
    }
    Ok(())
}

/// Product of dimensions, failing on overflow or when above `max`.
pub fn checked_product(what: &str, dims: &[usize], max: usize) -> Result<usize> {
    let mut total: usize = 1;
    for &d in dims {
        total = total.checked_mul(d).ok_or_else(|| Error::Sizing {
            what: what.to_string(),
            requested: usize::MAX,
            max,
        })?;
    }
    check(what, total, max)?;
    Ok(total)
}

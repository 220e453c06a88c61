//! Files in and out: CSV bins, TOML configuration, JSON reports and plot
//! data. Every output goes through [`write_atomic`], so a failed run never
//! leaves a partial file behind.

mod config;
mod input;
mod plot;
mod report;

use std::io::Write;
use std::path::Path;

use crate::error::Result;

pub use config::{load_config, parse_config, ConfigFile};
pub use input::{load_distribution, read_series, LoadOptions};
pub use plot::{plot_csv, PLOT_COLUMNS};
pub use report::{ParameterBlock, PeakBlock, ReportDocument, SegmentBlock, FORMAT_VERSION};

/// Writes `bytes` to a temporary file next to `path` and renames it into
/// place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// 1-based line of a byte offset.
pub(crate) fn line_of(text: &str, offset: usize) -> u64 {
    1 + text.as_bytes()[..offset.min(text.len())].iter().filter(|&&b| b == b'\n').count() as u64
}

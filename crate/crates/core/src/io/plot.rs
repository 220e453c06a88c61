use crate::error::Result;
use crate::fit::FitReport;

pub const PLOT_COLUMNS: [&str; 6] = [
    "omega",
    "benefit",
    "nu_observed",
    "nu_smoothed",
    "nu_fitted",
    "segment_id",
];

fn number(v: f64) -> String {
    format!("{v:e}")
}

/// One row per bin; absent fitted values and bins outside every segment
/// leave the field empty.
pub fn plot_csv(report: &FitReport) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(PLOT_COLUMNS).map_err(std::io::Error::from)?;
    for p in &report.curve {
        w.write_record([
            number(p.omega),
            number(p.benefit),
            number(p.nu_observed),
            number(p.nu_smoothed),
            p.nu_fitted.map(number).unwrap_or_default(),
            p.segment.map(|s| s.to_string()).unwrap_or_default(),
        ])
        .map_err(std::io::Error::from)?;
    }
    Ok(w.into_inner().map_err(|e| e.into_error())?)
}

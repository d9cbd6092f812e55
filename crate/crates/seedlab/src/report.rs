//! Deterministic CSV serialization of connectivity records.
//!
//! Data rows never carry run metadata or timestamps; everything environmental
//! lives in one leading `#` comment line, so a fixed configuration always
//! produces the same bytes.

use crate::connectivity::{Connectivity, ConnectivityRecord};
use crate::raster::Viewport;
use crate::sweep::SweepReport;

/// Column header shared by every report.
pub const CSV_COLUMNS: &str =
    "step,seed_re,seed_im,member_pixels,component_count,largest_fraction,disconnectivity,empty";

/// The `#` metadata line. Path endpoints are not recorded here: the seeds in
/// the data rows already describe them canonically, and reports of
/// sign-flipped paths must stay byte-identical.
pub fn csv_metadata(
    viewport: &Viewport,
    max_iter: u32,
    connectivity: Connectivity,
    steps: usize,
) -> String {
    format!(
        "# seedlab grid={}x{} center={} width={} height={} max_iter={} connectivity={} steps={}\n",
        viewport.cols(),
        viewport.rows(),
        viewport.center(),
        viewport.width(),
        viewport.height(),
        max_iter,
        connectivity,
        steps
    )
}

/// One data row, LF-terminated, `.` decimal separator.
pub fn csv_row(step: usize, record: &ConnectivityRecord) -> String {
    format!(
        "{},{},{},{},{},{},{},{}\n",
        step,
        record.seed.re,
        record.seed.im,
        record.member_pixels,
        record.component_count,
        record.largest_fraction,
        record.disconnectivity,
        record.empty
    )
}

/// Full CSV for a sweep report: metadata comment, column header, one row per
/// step in step order.
pub fn report_csv(report: &SweepReport) -> String {
    let mut out = csv_metadata(
        &report.viewport,
        report.max_iter,
        report.connectivity,
        report.records.len(),
    );
    out.push_str(CSV_COLUMNS);
    out.push('\n');
    for (step, record) in report.records.iter().enumerate() {
        out.push_str(&csv_row(step, record));
    }
    out
}

/// CSV for a single render: same shape as a one-step sweep.
pub fn single_record_csv(
    record: &ConnectivityRecord,
    viewport: &Viewport,
    max_iter: u32,
    connectivity: Connectivity,
) -> String {
    let mut out = csv_metadata(viewport, max_iter, connectivity, 1);
    out.push_str(CSV_COLUMNS);
    out.push('\n');
    out.push_str(&csv_row(0, record));
    out
}

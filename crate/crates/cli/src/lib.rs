//! Batch runs of the angle spectrum: generator files, JSON and CSV reports,
//! SVG pictures of the half-plane.

pub mod groupfile;
pub mod report;
pub mod run;
pub mod svg;

pub use groupfile::{format_group, parse_group_file, parse_group_str, write_group_file, GroupFileError};
pub use report::{records_csv, report_json, report_value, to_json_string, CSV_HEADER};
pub use run::{load_group, run_spectrum, summary_table, CliError, GroupSource, RunConfig, RunOutcome};
pub use svg::{render_svg, svg_string, SvgError, Viewport};

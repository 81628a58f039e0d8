//! Text formats, net rendering and census output.

mod census;
mod format;
mod render;

pub use census::{census_csv, CSV_HEADER};
pub use format::{
    parse_any, parse_compact, parse_kmt, parse_smt, serialize_kmt, serialize_smt, to_compact, FormatError,
};
pub use render::{boundary_pairs, render, render_ascii, render_svg, FaceSide, Style};
